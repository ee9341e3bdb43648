//! Comparison of two faithful traces through their Radon-Nikodym derivative.
//!
//! A [`TracePair`] holds a [`CellModel`]: cell masses describe `μ` and the
//! cell values `h = dν/dμ` describe `ν`. The log-integrable classes satisfy
//! `L_log(μ) ⊆ L_log(ν)` exactly when `h` is essentially bounded, and the
//! reverse inclusion exactly when `1/h` is. When `h` is unbounded,
//! [`build_counterexample`] produces an element that is log-integrable for
//! `μ` but not for `ν`, and [`certify_divergence`] checks its partial sums.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::measure::{doubling_witness, CellModel, ClosedForm, WITNESS_THRESHOLD};
use crate::numeric::{floor_rational, fsum, ln_bigint, ln_rational, log_sum_exp, rational_to_f64};
use crate::rearrangement::{log_norm_scaled, rearrange_scaled, NormMode, ScaledCell, ScaledStepFunction};
use crate::{Error, Result};

/// Number of tail cells examined while building a counterexample.
pub const SCAN_LIMIT: u64 = 10_000_000;

/// Agreement required between the two evaluations of the `μ` partial sum.
pub const CERTIFICATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePair {
    model: CellModel,
}

impl TracePair {
    pub fn new(model: CellModel) -> Self {
        TracePair { model }
    }

    pub fn model(&self) -> &CellModel {
        &self.model
    }

    /// The pair with the roles of `μ` and `ν` exchanged on the same cells,
    /// expressed through `h ↦ 1/h`.
    pub fn swapped(&self) -> TracePair {
        TracePair {
            model: self.model.inverted(),
        }
    }
}

/// Whether `h` itself or `1/h` is examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    Forward,
    Inverse,
}

/// Inclusion to decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    MuInNu,
    NuInMu,
}

impl Direction {
    pub fn which(self) -> Which {
        match self {
            Direction::MuInNu => Which::Forward,
            Direction::NuInMu => Which::Inverse,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::MuInNu => "mu-in-nu",
            Direction::NuInMu => "nu-in-mu",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu-in-nu" => Ok(Direction::MuInNu),
            "nu-in-mu" => Ok(Direction::NuInMu),
            other => Err(Error::input(format!("unknown direction {other:?}"))),
        }
    }
}

/// A cell on which the examined function exceeds [`WITNESS_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub cell: u64,
    /// Natural logarithm of the examined value on that cell.
    pub ln_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub which: Which,
    pub bounded: bool,
    /// Supremum of the examined function when bounded.
    pub bound: Option<f64>,
    /// A large value, when unbounded and one lies below index `2^64`.
    pub witness: Option<Witness>,
}

impl Decision {
    pub fn label(&self) -> &'static str {
        match (self.which, self.bounded) {
            (Which::Forward, true) => "h bounded",
            (Which::Forward, false) => "h unbounded",
            (Which::Inverse, true) => "h inverse bounded",
            (Which::Inverse, false) => "h inverse unbounded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    /// One decision per examined function, in the order forward, inverse.
    pub decisions: Vec<Decision>,
}

impl Verdict {
    /// Label of the first failing decision, or of all decisions when the
    /// verdict holds.
    pub fn reason(&self) -> String {
        if let Some(d) = self.decisions.iter().find(|d| !d.bounded) {
            return d.label().to_string();
        }
        self.decisions
            .iter()
            .map(Decision::label)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn essentially_bounded(tp: &TracePair, which: Which) -> Result<Decision> {
    let model = match which {
        Which::Forward => tp.model.clone(),
        Which::Inverse => tp.model.inverted(),
    };
    let prefix_max = model.prefix().iter().map(|c| &c.h).max().cloned();
    let threshold = WITNESS_THRESHOLD.ln();
    let prefix_witness = model
        .prefix()
        .iter()
        .position(|c| rational_to_f64(&c.h) > WITNESS_THRESHOLD)
        .map(|i| Witness {
            cell: i as u64 + 1,
            ln_value: ln_rational(&model.prefix()[i].h),
        });
    let prefix_sup = prefix_max.as_ref().map(rational_to_f64).unwrap_or(0.0);

    let Some(tail) = model.tail() else {
        return Ok(Decision {
            which,
            bounded: true,
            bound: Some(prefix_sup),
            witness: None,
        });
    };
    if tail.h.is_bounded() {
        let tail_sup = tail.h.supremum()?.unwrap_or(0.0);
        return Ok(Decision {
            which,
            bounded: true,
            bound: Some(prefix_sup.max(tail_sup)),
            witness: None,
        });
    }
    let witness = prefix_witness.or_else(|| {
        doubling_witness(|m| tail.h.ln_at(m) > threshold).map(|m| Witness {
            cell: model.prefix_len() + m,
            ln_value: tail.h.ln_at(m),
        })
    });
    Ok(Decision {
        which,
        bounded: false,
        bound: None,
        witness,
    })
}

pub fn decide_inclusion(tp: &TracePair, direction: Direction) -> Result<Verdict> {
    let d = essentially_bounded(tp, direction.which())?;
    Ok(Verdict {
        holds: d.bounded,
        decisions: vec![d],
    })
}

pub fn decide_coincidence(tp: &TracePair) -> Result<Verdict> {
    let forward = essentially_bounded(tp, Which::Forward)?;
    let inverse = essentially_bounded(tp, Which::Inverse)?;
    Ok(Verdict {
        holds: forward.bounded && inverse.bounded,
        decisions: vec![forward, inverse],
    })
}

/// Cells with `⌊h⌋ = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub n: BigInt,
    /// Global cell indices, increasing.
    pub cells: Vec<u64>,
    /// `ln μ` of each cell, aligned with `cells`.
    pub cell_ln_masses: Vec<f64>,
    /// `ln μ(M_n)`.
    pub ln_mass: f64,
}

impl Group {
    pub fn mass(&self) -> f64 {
        self.ln_mass.exp()
    }
}

/// First `K` non-empty level groups with the element `f = e^g - 1`,
/// where `g = 1 / (k² μ(M_{n_k}))` on group `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub groups: Vec<Group>,
    /// `ln g_k`, aligned with `groups`.
    pub ln_g: Vec<f64>,
}

impl Counterexample {
    pub fn terms(&self) -> usize {
        self.groups.len()
    }

    /// `g_k` for `k = 1..=K`; may be infinite when `ln g_k` exceeds the
    /// range of `f64`.
    pub fn g_value(&self, k: usize) -> f64 {
        self.ln_g[k - 1].exp()
    }

    /// `f_k = e^{g_k} - 1`.
    pub fn f_value(&self, k: usize) -> f64 {
        self.g_value(k).exp_m1()
    }

    /// `f` restricted to the retained groups, one cell per model cell.
    pub fn truncated_element(&self) -> ScaledStepFunction {
        let cells = self
            .groups
            .iter()
            .zip(&self.ln_g)
            .flat_map(|(group, &ln_g)| {
                group.cell_ln_masses.iter().map(move |&ln_mass| ScaledCell {
                    ln_mass,
                    ln_log_level: ln_g,
                })
            })
            .collect();
        ScaledStepFunction { cells }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceCertificate {
    pub terms: usize,
    /// `∫ log(1 + |f|) dμ` over the retained groups, from the norm of `f`.
    pub mu_partial: f64,
    /// `Σ_{k ≤ K} 1/k²`.
    pub mu_partial_closed_form: f64,
    /// `Σ_{k ≤ K} n_k / k²`.
    pub nu_partial_lower: f64,
    /// `Σ_{k ≤ K} (n_k + 1) / k²`.
    pub nu_partial_upper: f64,
    /// `Σ_{k ≤ K} 1/k`.
    pub harmonic_lower: f64,
}

/// Groups cells by `⌊h⌋ = n ≥ 1` and keeps the `K` smallest non-empty
/// levels. At most [`SCAN_LIMIT`] tail cells are examined.
pub fn build_counterexample(tp: &TracePair, terms: usize) -> Result<Counterexample> {
    if terms == 0 {
        return Err(Error::input("the number of terms must be positive"));
    }
    let model = &tp.model;
    let mut scan = GroupScan::new(terms);
    for (i, cell) in model.prefix().iter().enumerate() {
        let n = level(floor_rational(&cell.h));
        scan.add(n, i as u64 + 1, ln_rational(&cell.mass));
    }
    if let Some(tail) = model.tail() {
        scan_tail(&mut scan, model.prefix_len(), &tail.mass, &tail.h)?;
    }
    scan.finish()
}

fn scan_tail(scan: &mut GroupScan, offset: u64, mass: &ClosedForm, h: &ClosedForm) -> Result<()> {
    if h.p().is_zero() && h.q().is_one() {
        if level(floor_rational(h.c())).is_some() {
            return Err(Error::input(
                "a constant tail h ≥ 1 places infinitely many cells in one group",
            ));
        }
        return Ok(());
    }
    let increasing = !h.is_bounded();
    let monotone_from = monotone_start(h);
    for m in 1..=SCAN_LIMIT {
        let n = floor_tail(h, m)?;
        let done = m >= monotone_from
            && if increasing {
                match (&n, scan.kth_level()) {
                    (Some(n), Some(kth)) => n > kth,
                    _ => false,
                }
            } else {
                n.is_none()
            };
        scan.add(n, offset + m, mass.ln_at(m));
        if done {
            break;
        }
    }
    Ok(())
}

/// Index from which `c m^p q^m` is monotone in `m`.
fn monotone_start(h: &ClosedForm) -> u64 {
    let p = rational_to_f64(h.p());
    let ln_q = rational_to_f64(h.q()).ln();
    let critical = -p / ln_q;
    if critical.is_finite() && critical > 0.0 {
        critical.ceil() as u64 + 1
    } else {
        1
    }
}

/// The level of a cell, `None` when `h < 1`.
fn level(floor: BigInt) -> Option<BigInt> {
    (floor >= BigInt::one()).then_some(floor)
}

fn floor_tail(h: &ClosedForm, m: u64) -> Result<Option<BigInt>> {
    let ln = h.ln_at(m);
    if ln < -1e-9 {
        return Ok(None);
    }
    let v = h.eval(m)?;
    let nearest = v.round();
    if (v - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        if let Some(exact) = h.eval_exact_if_cheap(m) {
            return Ok(level(floor_rational(&exact)));
        }
    }
    let n = BigInt::from_f64(v.floor())
        .ok_or_else(|| Error::Range(format!("h at tail cell {m} is not finite")))?;
    Ok(level(n))
}

struct GroupScan {
    terms: usize,
    groups: BTreeMap<BigInt, Group>,
    kth: Option<BigInt>,
}

impl GroupScan {
    fn new(terms: usize) -> Self {
        GroupScan {
            terms,
            groups: BTreeMap::new(),
            kth: None,
        }
    }

    fn add(&mut self, n: Option<BigInt>, cell: u64, ln_mass: f64) {
        let Some(n) = n else { return };
        let refresh = self.kth.as_ref().is_none_or(|k| &n < k) && !self.groups.contains_key(&n);
        let group = self.groups.entry(n.clone()).or_insert_with(|| Group {
            n,
            cells: Vec::new(),
            cell_ln_masses: Vec::new(),
            ln_mass: f64::NEG_INFINITY,
        });
        group.cells.push(cell);
        group.cell_ln_masses.push(ln_mass);
        if refresh {
            self.kth = self.groups.keys().nth(self.terms - 1).cloned();
        }
    }

    fn kth_level(&self) -> Option<&BigInt> {
        self.kth.as_ref()
    }

    fn finish(self) -> Result<Counterexample> {
        let found = self.groups.len();
        if found < self.terms {
            return Err(Error::InsufficientGroups {
                found,
                requested: self.terms,
            });
        }
        let mut groups: Vec<Group> = self.groups.into_values().take(self.terms).collect();
        let mut ln_g = Vec::with_capacity(groups.len());
        for (i, group) in groups.iter_mut().enumerate() {
            group.ln_mass = log_sum_exp(&group.cell_ln_masses);
            let k = (i + 1) as f64;
            ln_g.push(-(2.0 * k.ln() + group.ln_mass));
        }
        Ok(Counterexample { groups, ln_g })
    }
}

/// Evaluates the partial sums behind the divergence argument and checks
/// them against each other.
pub fn certify_divergence(ce: &Counterexample, tp: &TracePair) -> Result<DivergenceCertificate> {
    if ce.groups.is_empty() || ce.groups.len() != ce.ln_g.len() {
        return Err(Error::input("counterexample has no groups"));
    }
    check_membership(ce, tp)?;
    let ks = || (1..=ce.terms()).map(|k| k as f64);
    let mu_partial_closed_form = fsum(ks().map(|k| 1.0 / (k * k)));
    let harmonic_lower = fsum(ks().map(|k| 1.0 / k));
    let level = |g: &Group| g.n.to_f64().unwrap_or(f64::INFINITY);
    let nu_partial_lower = fsum(ce.groups.iter().zip(ks()).map(|(g, k)| level(g) / (k * k)));
    let nu_partial_upper = fsum(
        ce.groups
            .iter()
            .zip(ks())
            .map(|(g, k)| (level(g) + 1.0) / (k * k)),
    );
    let mu_partial = log_norm_scaled(&rearrange_scaled(&ce.truncated_element()), NormMode::Semifinite);

    if (mu_partial - mu_partial_closed_form).abs() > CERTIFICATE_TOL {
        return Err(Error::Numeric(format!(
            "norm of f gives {mu_partial}, the series gives {mu_partial_closed_form}"
        )));
    }
    let basel = std::f64::consts::PI.powi(2) / 6.0;
    if mu_partial > basel + CERTIFICATE_TOL {
        return Err(Error::Numeric(format!("muPartial {mu_partial} exceeds π²/6")));
    }
    if nu_partial_lower < harmonic_lower - CERTIFICATE_TOL {
        return Err(Error::Numeric(format!(
            "nuPartialLower {nu_partial_lower} is below the harmonic sum {harmonic_lower}"
        )));
    }
    Ok(DivergenceCertificate {
        terms: ce.terms(),
        mu_partial,
        mu_partial_closed_form,
        nu_partial_lower,
        nu_partial_upper,
        harmonic_lower,
    })
}

fn check_membership(ce: &Counterexample, tp: &TracePair) -> Result<()> {
    let mut previous = BigInt::zero();
    for group in &ce.groups {
        if group.n <= previous {
            return Err(Error::input("group levels must increase strictly"));
        }
        previous = group.n.clone();
        let lo = ln_bigint(&group.n) - 1e-12;
        let hi = ln_bigint(&(&group.n + 1u32)) + 1e-12;
        for &cell in &group.cells {
            let ln_h = tp
                .model
                .ln_h(cell)
                .ok_or_else(|| Error::input(format!("cell {cell} is not in the model")))?;
            if !(lo..=hi).contains(&ln_h) {
                return Err(Error::input(format!(
                    "cell {cell} does not belong to level {}",
                    group.n
                )));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Forward => "forward",
            Which::Inverse => "inverse",
        })
    }
}
