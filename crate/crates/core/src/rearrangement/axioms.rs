//! Seeded randomized check of the F-norm axioms and submultiplicativity of
//! the log norm on pairs of step functions over a common partition.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

use super::profile::{step_norm, NormMode};
use super::step::{add_same_partition, mul_same_partition, StepCell, StepFunction};
use crate::{Error, Result};

/// Additive slack allowed in every inequality.
pub const AXIOM_TOL: f64 = 1e-9;
/// Scalar used for the continuity-at-zero check.
pub const SMALL_SCALAR: f64 = 1e-8;
/// Bound `‖SMALL_SCALAR · T‖` must stay below.
pub const SMALL_NORM_BOUND: f64 = 1e-6;
/// Exponents `j` of the scalars `10^{-j}` in the decay sequence.
pub const DECAY_STEPS: i32 = 16;

pub const MAX_CELLS: usize = 32;
pub const MAX_MASS: f64 = 10.0;
pub const MAX_MODULUS: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomProperty {
    /// (a) `‖T‖ > 0 ⇒ T ≠ 0`, together with `‖0‖ = 0`.
    Positivity,
    /// (b) `‖αT‖ ≤ ‖T‖` for `|α| ≤ 1`.
    Scaling,
    /// (c) `‖αT‖ → 0` as `α → 0`, probed at `α = SMALL_SCALAR`.
    ContinuityAtZero,
    /// (d) `‖S + T‖ ≤ ‖S‖ + ‖T‖`.
    Subadditivity,
    /// (e) `‖S · T‖ ≤ ‖S‖ + ‖T‖`.
    Submultiplicativity,
}

impl AxiomProperty {
    pub const ALL: [AxiomProperty; 5] = [
        AxiomProperty::Positivity,
        AxiomProperty::Scaling,
        AxiomProperty::ContinuityAtZero,
        AxiomProperty::Subadditivity,
        AxiomProperty::Submultiplicativity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AxiomProperty::Positivity => "a",
            AxiomProperty::Scaling => "b",
            AxiomProperty::ContinuityAtZero => "c",
            AxiomProperty::Subadditivity => "d",
            AxiomProperty::Submultiplicativity => "e",
        }
    }
}

impl fmt::Display for AxiomProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairInput {
    pub s: StepFunction,
    pub t: StepFunction,
    /// Scalar with `|alpha| ≤ 1` for the scaling check.
    pub alpha: Complex64,
}

/// A failed inequality `lhs ≤ rhs` (or `lhs < rhs` for the strict checks).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breach {
    pub property: AxiomProperty,
    pub lhs: f64,
    pub rhs: f64,
}

/// All norms evaluated for one pair, plus the breaches among them.
#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    pub norm_s: f64,
    pub norm_t: f64,
    pub norm_zero: f64,
    pub norm_alpha_t: f64,
    pub norm_small_t: f64,
    pub norm_sum: f64,
    pub norm_product: f64,
    /// `‖10^{-j} T‖` is non-increasing in `j` and ends below
    /// [`SMALL_NORM_BOUND`].
    pub decays: bool,
    pub breaches: Vec<Breach>,
}

pub fn check_pair(input: &PairInput, mode: NormMode) -> Result<PairOutcome> {
    if input.alpha.norm() > 1.0 {
        return Err(Error::input("scaling check needs |alpha| ≤ 1"));
    }
    let PairInput { s, t, alpha } = input;
    let norm = |f: &StepFunction| step_norm(f, mode);

    let norm_s = norm(s);
    let norm_t = norm(t);
    let norm_zero = norm(&t.zero_like());
    let norm_alpha_t = norm(&t.scale(*alpha));
    let norm_small_t = norm(&t.scale(Complex64::new(SMALL_SCALAR, 0.0)));
    let norm_sum = norm(&add_same_partition(s, t)?);
    let norm_product = norm(&mul_same_partition(s, t)?);

    let mut breaches = Vec::new();
    let mut breach = |property, lhs: f64, rhs: f64| breaches.push(Breach { property, lhs, rhs });

    if norm_zero != 0.0 {
        breach(AxiomProperty::Positivity, norm_zero, 0.0);
    }
    if norm_t > 0.0 && t.is_zero() {
        breach(AxiomProperty::Positivity, norm_t, 0.0);
    }
    if norm_alpha_t > norm_t + AXIOM_TOL {
        breach(AxiomProperty::Scaling, norm_alpha_t, norm_t);
    }
    if norm_small_t >= SMALL_NORM_BOUND {
        breach(AxiomProperty::ContinuityAtZero, norm_small_t, SMALL_NORM_BOUND);
    }
    if norm_sum > norm_s + norm_t + AXIOM_TOL {
        breach(AxiomProperty::Subadditivity, norm_sum, norm_s + norm_t);
    }
    if norm_product > norm_s + norm_t + AXIOM_TOL {
        breach(AxiomProperty::Submultiplicativity, norm_product, norm_s + norm_t);
    }

    let mut decays = true;
    let mut previous = norm_t;
    for j in 1..=DECAY_STEPS {
        let current = norm(&t.scale(Complex64::new(10f64.powi(-j), 0.0)));
        if current > previous + AXIOM_TOL {
            decays = false;
        }
        previous = current;
    }
    decays &= previous < SMALL_NORM_BOUND;

    Ok(PairOutcome {
        norm_s,
        norm_t,
        norm_zero,
        norm_alpha_t,
        norm_small_t,
        norm_sum,
        norm_product,
        decays,
        breaches,
    })
}

/// Independent generator for one trial: the seed and trial index are mixed
/// through SplitMix64 and expanded into a xoshiro256++ state.
pub fn trial_rng(seed: u64, trial: u64) -> Xoshiro256PlusPlus {
    let mut mixer = SplitMix64::seed_from_u64(seed ^ trial.wrapping_mul(0xD1B5_4A32_D192_ED03));
    let first = mixer.next_u64();
    Xoshiro256PlusPlus::seed_from_u64(first ^ trial)
}

fn random_value<R: Rng>(rng: &mut R) -> Complex64 {
    // One cell in eight is exactly zero so disjoint supports occur.
    if rng.random_range(0..8) == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let modulus = rng.random_range(0.0..=MAX_MODULUS);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(modulus, phase)
}

/// The pair examined by trial `trial` of a run seeded with `seed`.
pub fn random_pair(seed: u64, trial: u64) -> PairInput {
    let mut rng = trial_rng(seed, trial);
    let cells = rng.random_range(1..=MAX_CELLS);
    // (0, MAX_MASS]
    let masses: Vec<f64> = (0..cells)
        .map(|_| MAX_MASS - rng.random_range(0.0..MAX_MASS))
        .collect();
    let build = |rng: &mut Xoshiro256PlusPlus| {
        let cells = masses
            .iter()
            .map(|&mass| StepCell {
                mass,
                value: random_value(rng),
            })
            .collect();
        StepFunction::new(cells).expect("generated cells are valid")
    };
    let s = build(&mut rng);
    let t = build(&mut rng);
    let alpha = Complex64::from_polar(
        rng.random_range(0.0..=1.0),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    PairInput { s, t, alpha }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub trial: u64,
    pub breach: Breach,
    pub input: PairInput,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: u64,
    pub mode: NormMode,
    pub violations: Vec<AxiomViolation>,
    /// Trials whose decay sequence `‖10^{-j} T‖` failed to fall monotonically
    /// below [`SMALL_NORM_BOUND`].
    pub decay_failures: u64,
}

impl AxiomReport {
    pub fn count(&self, property: AxiomProperty) -> usize {
        self.violations
            .iter()
            .filter(|v| v.breach.property == property)
            .count()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `trials` seeded random pairs and collects every breach.
pub fn check_axioms(seed: u64, trials: u64, mode: NormMode) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let mut violations = Vec::new();
    let mut decay_failures = 0;
    for trial in 0..trials {
        let input = random_pair(seed, trial);
        let outcome = check_pair(&input, mode)?;
        if !outcome.decays {
            decay_failures += 1;
        }
        for breach in outcome.breaches {
            violations.push(AxiomViolation {
                trial,
                breach,
                input: input.clone(),
            });
        }
    }
    Ok(AxiomReport {
        seed,
        trials,
        mode,
        violations,
        decay_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn zero_operand_has_zero_norm() {
        let t = StepFunction::from_real(&[(1.0, 0.0)]).unwrap();
        let input = PairInput {
            s: t.clone(),
            t,
            alpha: Complex64::new(0.5, 0.0),
        };
        let out = check_pair(&input, NormMode::Semifinite).unwrap();
        assert_eq!(out.norm_t, 0.0);
        assert_eq!(out.norm_zero, 0.0);
        assert!(out.breaches.is_empty());
    }

    #[test]
    fn forced_product_example() {
        let s = StepFunction::from_real(&[(1.0, E - 1.0)]).unwrap();
        let input = PairInput {
            s: s.clone(),
            t: s,
            alpha: Complex64::new(1.0, 0.0),
        };
        let out = check_pair(&input, NormMode::Semifinite).unwrap();
        let expected = (1.0 + (E - 1.0) * (E - 1.0)).ln();
        assert!((out.norm_product - expected).abs() < 1e-14);
        assert!((out.norm_product - 1.374_346_377_895_375_7).abs() < 1e-12);
        assert!((out.norm_s + out.norm_t - 2.0).abs() < 1e-15);
        assert!(out.breaches.is_empty());
    }

    #[test]
    fn pairs_are_reproducible_and_distinct() {
        assert_eq!(random_pair(42, 7), random_pair(42, 7));
        assert_ne!(random_pair(42, 7), random_pair(42, 8));
        assert_ne!(random_pair(42, 7), random_pair(43, 7));
    }

    #[test]
    fn generated_pairs_respect_ranges() {
        for trial in 0..200 {
            let p = random_pair(1, trial);
            assert!(p.alpha.norm() <= 1.0 + 1e-15);
            let n = p.s.cells().len();
            assert!((1..=MAX_CELLS).contains(&n));
            for (a, b) in p.s.cells().iter().zip(p.t.cells()) {
                assert_eq!(a.mass, b.mass);
                assert!(a.mass > 0.0 && a.mass <= MAX_MASS);
                assert!(a.value.norm() <= MAX_MODULUS * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn inequalities_hold_on_a_small_run() {
        for mode in [NormMode::Finite, NormMode::Semifinite] {
            let report = check_axioms(3, 300, mode).unwrap();
            for p in [
                AxiomProperty::Positivity,
                AxiomProperty::Scaling,
                AxiomProperty::Subadditivity,
                AxiomProperty::Submultiplicativity,
            ] {
                assert_eq!(report.count(p), 0, "{mode} {p}");
            }
            assert_eq!(report.decay_failures, 0);
        }
    }

    #[test]
    fn rejects_large_alpha_and_zero_trials() {
        let t = StepFunction::from_real(&[(1.0, 1.0)]).unwrap();
        let input = PairInput {
            s: t.clone(),
            t,
            alpha: Complex64::new(2.0, 0.0),
        };
        assert!(check_pair(&input, NormMode::Finite).is_err());
        assert!(check_axioms(0, 0, NormMode::Finite).is_err());
    }
}
