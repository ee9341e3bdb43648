//! Passport of a direct sum of measure algebras.
//!
//! Homogeneous components of equal weight combine into one component whose
//! measure is the sum of the parts; a component with infinite measure stays
//! infinite. Infinite lines are only combined when their affine tails run
//! through the same residue class, so the result is again affine.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::cardinal::Cardinal;
use super::closed_form::ClosedFormSum;
use super::passport::{AffineTail, Passport, PassportLine};
use super::sequence::SeqSpec;
use crate::{Error, Result};

#[derive(Debug, Clone)]
enum Mass {
    Infinite,
    Finite(BigRational),
}

impl Mass {
    fn add(self, other: Mass) -> Mass {
        match (self, other) {
            (Mass::Finite(a), Mass::Finite(b)) => Mass::Finite(a + b),
            _ => Mass::Infinite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Progression {
    start: i64,
    step: i64,
}

impl Progression {
    fn from_tail(t: AffineTail) -> Self {
        Progression {
            start: t.first(),
            step: t.b1,
        }
    }

    fn to_tail(self) -> AffineTail {
        AffineTail::new(self.start - self.step, self.step)
    }

    fn contains(&self, w: i64) -> bool {
        self.to_tail().contains(w)
    }

    fn same_class(&self, other: &Progression) -> bool {
        self.step == other.step && (self.start - other.start).rem_euclid(self.step) == 0
    }

    fn meets(&self, other: &Progression) -> bool {
        self.to_tail().meets(&other.to_tail())
    }
}

#[derive(Debug, Clone)]
struct MeasuredTail {
    weights: Progression,
    measures: ClosedFormSum,
}

impl MeasuredTail {
    /// Removes the first component, returning its weight and exact measure.
    fn pop(&mut self) -> Result<(i64, BigRational)> {
        let value = self
            .measures
            .eval_exact(1)
            .expect("a closed form is rational at n = 1");
        self.measures = self.measures.shifted(1).ok_or_else(|| {
            Error::UnsupportedMerge(
                "measure tail with a non-integral or negative exponent cannot be re-indexed".into(),
            )
        })?;
        let w = self.weights.start;
        self.weights.start += self.weights.step;
        Ok((w, value))
    }
}

/// Passport unpacked into explicitly listed components plus aligned tails.
#[derive(Debug, Clone, Default)]
struct Components {
    explicit: BTreeMap<i64, Mass>,
    s_tail: Option<Progression>,
    u_tail: Option<MeasuredTail>,
}

impl Components {
    fn insert(&mut self, w: i64, m: Mass) {
        let merged = match self.explicit.remove(&w) {
            Some(old) => old.add(m),
            None => m,
        };
        self.explicit.insert(w, merged);
    }

    fn from_passport(p: &Passport) -> Result<Self> {
        let mut out = Components::default();
        for c in &p.s_line.prefix {
            out.insert(c.aleph_index() as i64, Mass::Infinite);
        }
        out.s_tail = p.s_line.tail.map(Progression::from_tail);

        let measures = &p.u_measures;
        match (&p.u_line.tail, &measures.tail) {
            (None, None) => {
                for (c, m) in p.u_line.prefix.iter().zip(&measures.prefix) {
                    out.insert(c.aleph_index() as i64, Mass::Finite(m.clone()));
                }
            }
            (Some(_), Some(measure_tail)) => {
                let line = p.u_line.canonical();
                let line_tail = line.tail.expect("canonical form keeps the tail");
                let lp = line.prefix.len();
                let lm = measures.prefix.len();
                for (i, m) in measures.prefix.iter().enumerate() {
                    let w = line.index_at(i as u64 + 1).expect("infinite line");
                    out.insert(w, Mass::Finite(m.clone()));
                }
                let tail = if lp <= lm {
                    let start = line.index_at(lm as u64 + 1).expect("infinite line");
                    MeasuredTail {
                        weights: Progression {
                            start,
                            step: line_tail.b1,
                        },
                        measures: measure_tail.clone(),
                    }
                } else {
                    // Line prefix entries past the measure prefix read the
                    // measure tail; peel them off one by one.
                    let mut peeled = MeasuredTail {
                        weights: Progression::from_tail(line_tail),
                        measures: measure_tail.clone(),
                    };
                    for i in lm..lp {
                        let value = peeled.measures.eval_exact(1).expect("rational at n = 1");
                        peeled.measures = peeled.measures.shifted(1).ok_or_else(|| {
                            Error::UnsupportedMerge(
                                "uLine prefix longer than uMeasures prefix with a non-shiftable tail".into(),
                            )
                        })?;
                        let w = line.prefix[i].aleph_index() as i64;
                        out.insert(w, Mass::Finite(value));
                    }
                    peeled
                };
                out.u_tail = Some(tail);
            }
            _ => return Err(Error::input("uLine and uMeasures have different lengths")),
        }
        Ok(out)
    }

    fn into_passport(self) -> Result<Passport> {
        let to_cardinal = |w: i64| -> Result<Cardinal> {
            u32::try_from(w)
                .map(Cardinal::aleph)
                .map_err(|_| Error::UnsupportedMerge(format!("aleph index {w} out of range")))
        };
        let mut s_prefix = Vec::new();
        let mut u_prefix = Vec::new();
        let mut u_values = Vec::new();
        for (w, m) in self.explicit {
            match m {
                Mass::Infinite => s_prefix.push(to_cardinal(w)?),
                Mass::Finite(v) => {
                    u_prefix.push(to_cardinal(w)?);
                    u_values.push(v);
                }
            }
        }
        let s_line = PassportLine {
            prefix: s_prefix,
            tail: self.s_tail.map(Progression::to_tail),
        };
        let (u_tail, m_tail) = match self.u_tail {
            Some(t) => (Some(t.weights.to_tail()), Some(t.measures)),
            None => (None, None),
        };
        Ok(Passport {
            s_line,
            u_line: PassportLine {
                prefix: u_prefix,
                tail: u_tail,
            },
            u_measures: SeqSpec {
                prefix: u_values,
                tail: m_tail,
            },
        })
    }
}

/// Passport of the direct sum of the given measure algebras.
///
/// Errors with [`Error::UnsupportedMerge`] when infinite tails cannot be
/// combined into a single affine tail with a closed-form measure sequence.
pub fn merge_passports(passports: &[Passport]) -> Result<Passport> {
    let first = passports
        .first()
        .ok_or_else(|| Error::input("merge needs at least one passport"))?;
    for (i, p) in passports.iter().enumerate() {
        let report = p.validate();
        if !report.is_valid() {
            return Err(Error::input(format!(
                "passport {i} is invalid: {}",
                report.violations[0].message
            )));
        }
    }
    if passports.len() == 1 {
        return Ok(first.clone());
    }

    let parts = passports
        .iter()
        .map(Components::from_passport)
        .collect::<Result<Vec<_>>>()?;

    let mut out = Components::default();
    let mut u_tails = Vec::new();
    for part in parts {
        for (w, m) in part.explicit {
            out.insert(w, m);
        }
        if let Some(s) = part.s_tail {
            out.s_tail = Some(match out.s_tail {
                None => s,
                Some(prev) if prev.same_class(&s) => Progression {
                    start: prev.start.min(s.start),
                    step: s.step,
                },
                Some(prev) => {
                    return Err(Error::UnsupportedMerge(format!(
                        "sLine tails ℵ_({} + {}m) and ℵ_({} + {}m) are not index-aligned",
                        prev.start - prev.step,
                        prev.step,
                        s.start - s.step,
                        s.step
                    )))
                }
            });
        }
        if let Some(u) = part.u_tail {
            u_tails.push(u);
        }
    }

    if let Some(first_tail) = u_tails.first() {
        let class = first_tail.weights;
        if let Some(bad) = u_tails.iter().find(|t| !t.weights.same_class(&class)) {
            return Err(Error::UnsupportedMerge(format!(
                "uLine tails ℵ_({} + {}m) and ℵ_({} + {}m) are not index-aligned",
                class.start - class.step,
                class.step,
                bad.weights.start - bad.weights.step,
                bad.weights.step
            )));
        }
        let target = u_tails.iter().map(|t| t.weights.start).max().expect("non-empty");
        let mut combined: Option<MeasuredTail> = None;
        for mut t in u_tails {
            while t.weights.start < target {
                let (w, v) = t.pop()?;
                out.insert(w, Mass::Finite(v));
            }
            combined = Some(match combined {
                None => t,
                Some(acc) => MeasuredTail {
                    weights: acc.weights,
                    measures: acc.measures.add(&t.measures),
                },
            });
        }
        out.u_tail = combined;
    }

    if let (Some(s), true) = (out.s_tail, out.u_tail.is_some()) {
        let mut u = out.u_tail.take().expect("checked above");
        if s.same_class(&u.weights) {
            while u.weights.start < s.start {
                let (w, v) = u.pop()?;
                out.insert(w, Mass::Finite(v));
            }
        } else if s.meets(&u.weights) {
            return Err(Error::UnsupportedMerge(
                "sLine and uLine tails overlap without being index-aligned".into(),
            ));
        } else {
            out.u_tail = Some(u);
        }
    }

    // Components swallowed by the infinite-measure tail.
    if let Some(s) = out.s_tail {
        out.explicit.retain(|w, _| !s.contains(*w));
    }

    // Every finite explicit component, and every explicit component that
    // lands on the measured tail, must precede the tail.
    if let Some(u) = out.u_tail.as_mut() {
        let threshold = out
            .explicit
            .iter()
            .filter(|(w, m)| matches!(m, Mass::Finite(_)) || u.weights.contains(**w))
            .map(|(w, _)| *w)
            .max();
        if let Some(threshold) = threshold {
            while u.weights.start <= threshold {
                let (w, v) = u.pop()?;
                let merged = match out.explicit.remove(&w) {
                    Some(old) => old.add(Mass::Finite(v)),
                    None => Mass::Finite(v),
                };
                out.explicit.insert(w, merged);
            }
        }
    }
    if let Some(s) = out.s_tail.as_mut() {
        let threshold = out
            .explicit
            .iter()
            .filter(|(_, m)| matches!(m, Mass::Infinite))
            .map(|(w, _)| *w)
            .max();
        if let Some(threshold) = threshold {
            while s.start <= threshold {
                out.explicit.insert(s.start, Mass::Infinite);
                s.start += s.step;
            }
        }
    }

    let merged = out.into_passport()?;
    debug_assert!(merged.is_valid(), "merge produced {merged:?}");
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::ClosedForm;
    use crate::numeric::ratio;

    fn finite_u(weights: &[u32], measures: &[i64]) -> Passport {
        Passport::new(
            PassportLine::default(),
            PassportLine::finite(weights),
            SeqSpec::finite(measures.iter().map(|&m| ratio(m, 1)).collect()),
        )
    }

    fn geometric_tail(q: i64) -> Passport {
        Passport::new(
            PassportLine::default(),
            PassportLine::with_tail(&[], 0, 1),
            SeqSpec::with_tail(vec![], ClosedForm::from_ratios((1, 1), (0, 1), (q, 1)).unwrap()),
        )
    }

    #[test]
    fn equal_weights_add_measures() {
        let p = finite_u(&[0], &[1]);
        let merged = merge_passports(&[p.clone(), p]).unwrap();
        assert_eq!(merged, finite_u(&[0], &[2]));
    }

    #[test]
    fn infinite_component_absorbs_finite() {
        let p1 = Passport::new(
            PassportLine::finite(&[1]),
            PassportLine::default(),
            SeqSpec::default(),
        );
        let p2 = finite_u(&[1], &[3]);
        let merged = merge_passports(&[p1, p2]).unwrap();
        assert_eq!(merged.s_line, PassportLine::finite(&[1]));
        assert!(merged.u_line.is_empty());
        assert!(merged.u_measures.is_empty());
    }

    #[test]
    fn single_passport_is_identity() {
        let p = Passport::new(
            PassportLine::with_tail(&[0], 0, 2),
            PassportLine::with_tail(&[], 1, 2),
            SeqSpec::with_tail(
                vec![ratio(1, 3)],
                ClosedForm::from_ratios((1, 1), (1, 2), (1, 1)).unwrap(),
            ),
        );
        assert_eq!(merge_passports(std::slice::from_ref(&p)).unwrap(), p);
    }

    #[test]
    fn tails_of_equal_shape_add_as_closed_form_sums() {
        let merged = merge_passports(&[geometric_tail(1), geometric_tail(2)]).unwrap();
        let tail = merged.u_measures.tail.as_ref().unwrap();
        assert_eq!(tail.terms().len(), 2);
        assert_eq!(tail.eval_exact(3).unwrap(), ratio(9, 1));
        let swapped = merge_passports(&[geometric_tail(2), geometric_tail(1)]).unwrap();
        assert_eq!(merged, swapped);
    }

    #[test]
    fn misaligned_tails_are_unsupported() {
        let mut other = geometric_tail(1);
        other.u_line = PassportLine::with_tail(&[], 0, 2);
        let err = merge_passports(&[geometric_tail(1), other]).unwrap_err();
        assert!(matches!(err, Error::UnsupportedMerge(_)));
    }

    #[test]
    fn explicit_component_inside_tail_is_peeled_off() {
        // ℵ_3 with measure 10 lands on the tail ℵ_1, ℵ_2, … with measures 2^m.
        let merged = merge_passports(&[finite_u(&[3], &[10]), geometric_tail(2)]).unwrap();
        assert!(merged.is_valid());
        assert_eq!(merged.u_line, PassportLine::with_tail(&[1, 2, 3], 3, 1));
        assert_eq!(
            merged.u_measures.prefix,
            vec![ratio(2, 1), ratio(4, 1), ratio(18, 1)]
        );
        assert_eq!(merged.u_measures.value(4).unwrap().unwrap(), 16.0);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(merge_passports(&[]).is_err());
    }
}
