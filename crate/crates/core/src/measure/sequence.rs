use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Signed;

use super::closed_form::{ClosedForm, ClosedFormSum};
use crate::numeric::{as_i64, ln_rational, pow_rational, rational_to_f64};
use crate::{Error, Result};

/// Threshold a witness ratio (or value) must exceed.
pub const WITNESS_THRESHOLD: f64 = 1e6;

/// A positive sequence indexed from 1: an explicit prefix followed by an
/// optional closed-form tail. Global index `n = prefix.len() + m` reads the
/// tail at `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeqSpec {
    pub prefix: Vec<BigRational>,
    pub tail: Option<ClosedFormSum>,
}

impl SeqSpec {
    pub fn finite(prefix: Vec<BigRational>) -> Self {
        SeqSpec { prefix, tail: None }
    }

    pub fn with_tail(prefix: Vec<BigRational>, tail: ClosedForm) -> Self {
        SeqSpec {
            prefix,
            tail: Some(ClosedFormSum::single(tail)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    /// Number of entries, `None` for an infinite sequence.
    pub fn len(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Indices of non-positive prefix entries.
    pub fn non_positive_entries(&self) -> Vec<usize> {
        self.prefix
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    /// `ln a(n)` for `n ≥ 1` inside the sequence.
    pub fn ln_at(&self, n: u64) -> Option<f64> {
        if n == 0 {
            return None;
        }
        let len = self.prefix.len() as u64;
        if n >= 1 && n <= len {
            return Some(ln_rational(&self.prefix[(n - 1) as usize]));
        }
        self.tail.as_ref().map(|t| t.ln_at(n - len))
    }

    pub fn value(&self, n: u64) -> Option<Result<f64>> {
        if n == 0 {
            return None;
        }
        let len = self.prefix.len() as u64;
        if n >= 1 && n <= len {
            return Some(Ok(rational_to_f64(&self.prefix[(n - 1) as usize])));
        }
        self.tail.as_ref().map(|t| t.eval(n - len))
    }

    /// `a(n)` as an exact rational when it is cheap to compute.
    pub fn exact_at(&self, n: u64) -> Option<BigRational> {
        let len = self.prefix.len() as u64;
        match n {
            0 => None,
            n if n <= len => Some(self.prefix[(n - 1) as usize].clone()),
            n => self.tail.as_ref()?.eval_exact_if_cheap(n - len),
        }
    }

    fn single_tail_at(&self, n: u64) -> Option<(&ClosedForm, u64)> {
        let len = self.prefix.len() as u64;
        let form = self.tail.as_ref()?.as_single()?;
        (n > len).then_some((form, n - len))
    }

    fn same_length_class(&self, other: &SeqSpec) -> bool {
        match (self.len(), other.len()) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// Outcome of an exact boundedness decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioDecision {
    pub bounded: bool,
    /// An index whose ratio exceeds [`WITNESS_THRESHOLD`] (unbounded case).
    pub witness_index: Option<u64>,
}

/// Decides `sup_n a(n)/b(n) < ∞`.
///
/// Finite sequences always have a finite supremum. For infinite sequences
/// only the dominant tail terms matter: the ratio behaves like
/// `(c_a/c_b) · n^{p_a - p_b} · (q_a/q_b)^n`, which is bounded exactly when
/// `q_a < q_b`, or `q_a = q_b` and `p_a ≤ p_b`.
pub fn ratio_bounded(a: &SeqSpec, b: &SeqSpec) -> Result<RatioDecision> {
    if !a.same_length_class(b) {
        return Err(Error::input(format!(
            "ratio of sequences with different lengths ({} vs {})",
            describe_len(a),
            describe_len(b)
        )));
    }
    let (ta, tb) = match (&a.tail, &b.tail) {
        (Some(ta), Some(tb)) => (ta, tb),
        _ => {
            return Ok(RatioDecision {
                bounded: true,
                witness_index: None,
            })
        }
    };
    if ta.growth_cmp(tb) != Ordering::Greater {
        return Ok(RatioDecision {
            bounded: true,
            witness_index: None,
        });
    }
    let threshold = WITNESS_THRESHOLD.ln();
    let witness = doubling_witness(|n| {
        let la = a.ln_at(n).unwrap_or(f64::NEG_INFINITY);
        let lb = b.ln_at(n).unwrap_or(f64::INFINITY);
        let diff = la - lb;
        if (diff - threshold).abs() < 1e-9 {
            if let Some(r) = exact_ratio(a, b, n) {
                return r > BigRational::from_float(WITNESS_THRESHOLD).expect("finite");
            }
        }
        diff > threshold
    });
    Ok(RatioDecision {
        bounded: false,
        witness_index: witness,
    })
}

/// `a(n)/b(n)` exactly, either from exact values or, for single tail terms
/// with a common `q`, from the reduced form in which the powers of `q`
/// cancel.
fn exact_ratio(a: &SeqSpec, b: &SeqSpec, n: u64) -> Option<BigRational> {
    if let (Some(x), Some(y)) = (a.exact_at(n), b.exact_at(n)) {
        return Some(x / y);
    }
    let (fa, ma) = a.single_tail_at(n)?;
    let (fb, mb) = b.single_tail_at(n)?;
    if fa.q() != fb.q() {
        return None;
    }
    let (pa, pb) = (as_i64(fa.p())?, as_i64(fb.p())?);
    let index = |m: u64| BigRational::from_integer(m.into());
    Some(
        fa.c() / fb.c() * pow_rational(&index(ma), pa) / pow_rational(&index(mb), pb)
            * pow_rational(fa.q(), ma as i64 - mb as i64),
    )
}

fn describe_len(s: &SeqSpec) -> String {
    match s.len() {
        Some(n) => n.to_string(),
        None => "infinite".to_string(),
    }
}

/// Smallest-found index `n ≥ 1` with `exceeds(n)`: doubling `n = 1, 2, 4, …`
/// for at most 64 steps, then bisection inside the last bracket. The result
/// always satisfies `exceeds`.
pub fn doubling_witness(exceeds: impl Fn(u64) -> bool) -> Option<u64> {
    let mut prev = 0u64;
    let mut n = 1u64;
    for _ in 0..64 {
        if exceeds(n) {
            let (mut lo, mut hi) = (prev, n);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if exceeds(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi);
        }
        prev = n;
        n = n.checked_mul(2)?;
    }
    None
}
