use std::fmt;
use std::str::FromStr;

use super::step::{MatrixStepFunction, StepFunction};
use super::svd::singular_values;
use crate::numeric::fsum;
use crate::{Error, Result};

/// Which of the two integrals defines the F-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormMode {
    /// `∫_0^1 log(1 + μ_x(T)) dx`.
    Finite,
    /// `∫_0^∞ log(1 + μ_x(T)) dx`.
    Semifinite,
}

impl NormMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMode::Finite => "finite",
            NormMode::Semifinite => "semifinite",
        }
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finite" => Ok(NormMode::Finite),
            "semifinite" => Ok(NormMode::Semifinite),
            other => Err(Error::input(format!("unknown norm mode '{other}'"))),
        }
    }
}

/// A constant piece `[x, x + length)` of the rearrangement at `level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub length: f64,
    pub level: f64,
}

/// The decreasing rearrangement `x ↦ μ_x(T)` of a simple element: positive
/// levels, strictly decreasing, each held on an interval of positive length.
/// The zero level is not stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RearrangementProfile {
    segments: Vec<Segment>,
}

impl RearrangementProfile {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        fsum(self.segments.iter().map(|s| s.length))
    }

    /// `μ_x` at a point, right-continuous.
    pub fn value_at(&self, x: f64) -> f64 {
        let mut start = 0.0;
        for s in &self.segments {
            if x < start + s.length {
                return s.level;
            }
            start += s.length;
        }
        0.0
    }

    /// Total length on which the profile exceeds `t`.
    pub fn distribution(&self, t: f64) -> f64 {
        fsum(self.segments.iter().filter(|s| s.level > t).map(|s| s.length))
    }

    /// Builds a profile from `(level, mass)` pairs: zero levels dropped,
    /// levels sorted decreasingly, equal levels merged. Masses of a level are
    /// summed with a correctly rounded sum, so the profile depends only on the
    /// multiset of pairs.
    fn from_pairs(mut pairs: Vec<(f64, f64)>) -> Self {
        pairs.retain(|&(level, _)| level > 0.0);
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)));
        let mut segments = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let level = pairs[i].0;
            let mut j = i;
            while j < pairs.len() && pairs[j].0 == level {
                j += 1;
            }
            segments.push(Segment {
                length: fsum(pairs[i..j].iter().map(|p| p.1)),
                level,
            });
            i = j;
        }
        RearrangementProfile { segments }
    }
}

/// Decreasing rearrangement of `|f|`.
pub fn rearrange(f: &StepFunction) -> RearrangementProfile {
    RearrangementProfile::from_pairs(f.cells().iter().map(|c| (c.value.norm(), c.mass)).collect())
}

/// Decreasing rearrangement of a matrix-valued step function under
/// `μ ⊗ Tr`: each cell of mass `m` contributes its `n` singular values, each
/// on mass `m`.
pub fn rearrange_matrix(f: &MatrixStepFunction) -> Result<RearrangementProfile> {
    let mut pairs = Vec::with_capacity(f.cells().len() * f.size());
    for cell in f.cells() {
        for sigma in singular_values(&cell.value)? {
            pairs.push((sigma, cell.mass));
        }
    }
    Ok(RearrangementProfile::from_pairs(pairs))
}

/// The scalar step function carrying the singular values of each cell.
pub fn scalar_expansion(f: &MatrixStepFunction) -> Result<StepFunction> {
    let mut cells = Vec::new();
    for cell in f.cells() {
        for sigma in singular_values(&cell.value)? {
            cells.push(super::step::StepCell {
                mass: cell.mass,
                value: num_complex::Complex64::new(sigma, 0.0),
            });
        }
    }
    StepFunction::new(cells)
}

/// The log F-norm `∫ log(1 + μ_x(T)) dx` over `[0, ∞)` or `[0, 1]`.
pub fn log_norm(profile: &RearrangementProfile, mode: NormMode) -> f64 {
    match mode {
        NormMode::Semifinite => fsum(profile.segments.iter().map(|s| s.length * s.level.ln_1p())),
        NormMode::Finite => {
            let mut covered = 0.0;
            let mut terms = Vec::new();
            for s in &profile.segments {
                let remaining = 1.0 - covered;
                if remaining <= 0.0 {
                    break;
                }
                let take = s.length.min(remaining);
                terms.push(take * s.level.ln_1p());
                covered += take;
            }
            fsum(terms)
        }
    }
}

/// `‖f‖_log` of a scalar step function.
pub fn step_norm(f: &StepFunction, mode: NormMode) -> f64 {
    log_norm(&rearrange(f), mode)
}
