//! Step functions whose masses and levels are carried as logarithms.
//!
//! Elements built from geometric masses (for instance `2^{-k}` for `k` in the
//! thousands) have masses below the smallest double and values `e^g - 1`
//! far above the largest one, while their norm contributions stay moderate.
//! Cells here store `ln(mass)` and `ln(log(1 + |value|))`; a contribution to
//! the norm is `exp(ln_mass + ln_log_level)`.

use super::profile::NormMode;
use super::step::StepFunction;
use crate::numeric::{fsum, log_sum_exp};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCell {
    pub ln_mass: f64,
    /// `ln(log(1 + |value|))`; `-inf` encodes the value zero.
    pub ln_log_level: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScaledStepFunction {
    pub cells: Vec<ScaledCell>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSegment {
    pub ln_length: f64,
    pub ln_log_level: f64,
}

/// Decreasing rearrangement in log coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScaledProfile {
    pub segments: Vec<ScaledSegment>,
}

impl ScaledStepFunction {
    pub fn from_step_function(f: &StepFunction) -> Self {
        ScaledStepFunction {
            cells: f
                .cells()
                .iter()
                .map(|c| ScaledCell {
                    ln_mass: c.mass.ln(),
                    ln_log_level: c.value.norm().ln_1p().ln(),
                })
                .collect(),
        }
    }
}

/// Same ordering and coalescing rules as the linear-scale rearrangement:
/// `log(1 + t)` is increasing, so sorting by it sorts by modulus.
pub fn rearrange_scaled(f: &ScaledStepFunction) -> ScaledProfile {
    let mut cells: Vec<ScaledCell> = f
        .cells
        .iter()
        .copied()
        .filter(|c| c.ln_log_level > f64::NEG_INFINITY)
        .collect();
    cells.sort_by(|a, b| {
        b.ln_log_level
            .total_cmp(&a.ln_log_level)
            .then(a.ln_mass.total_cmp(&b.ln_mass))
    });
    let mut segments = Vec::new();
    let mut i = 0;
    while i < cells.len() {
        let level = cells[i].ln_log_level;
        let mut j = i;
        while j < cells.len() && cells[j].ln_log_level == level {
            j += 1;
        }
        let masses: Vec<f64> = cells[i..j].iter().map(|c| c.ln_mass).collect();
        segments.push(ScaledSegment {
            ln_length: log_sum_exp(&masses),
            ln_log_level: level,
        });
        i = j;
    }
    ScaledProfile { segments }
}

pub fn log_norm_scaled(profile: &ScaledProfile, mode: NormMode) -> f64 {
    match mode {
        NormMode::Semifinite => fsum(
            profile
                .segments
                .iter()
                .map(|s| (s.ln_length + s.ln_log_level).exp()),
        ),
        NormMode::Finite => {
            let mut covered = 0.0;
            let mut terms = Vec::new();
            for s in &profile.segments {
                let remaining = 1.0 - covered;
                if remaining <= 0.0 {
                    break;
                }
                let length = s.ln_length.exp();
                let take = length.min(remaining);
                terms.push(take * s.ln_log_level.exp());
                covered += take;
            }
            fsum(terms)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rearrangement::step_norm;

    #[test]
    fn agrees_with_linear_scale_norm() {
        let f = StepFunction::from_real(&[(0.25, 3.0), (2.0, 0.0), (1.5, 7.5), (0.125, 3.0), (4.0, 0.01)])
            .unwrap();
        let scaled = ScaledStepFunction::from_step_function(&f);
        for mode in [NormMode::Finite, NormMode::Semifinite] {
            let a = step_norm(&f, mode);
            let b = log_norm_scaled(&rearrange_scaled(&scaled), mode);
            assert!((a - b).abs() < 1e-13, "{mode}: {a} vs {b}");
        }
    }

    #[test]
    fn handles_masses_and_levels_outside_double_range() {
        // mass 2^-5000 carrying log(1 + f) = 2^5000: contributes exactly 1.
        let ln2 = std::f64::consts::LN_2;
        let f = ScaledStepFunction {
            cells: vec![ScaledCell {
                ln_mass: -5000.0 * ln2,
                ln_log_level: 5000.0 * ln2,
            }],
        };
        let n = log_norm_scaled(&rearrange_scaled(&f), NormMode::Semifinite);
        assert!((n - 1.0).abs() < 1e-9);
    }
}
