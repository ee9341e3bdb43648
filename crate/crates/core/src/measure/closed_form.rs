use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{as_i64, binomial, ln_rational, log_sum_exp, pow_rational, rational_to_f64};
use crate::{Error, Result};

/// Largest total bit size of `q^n` for which evaluation stays exact.
const EXACT_BIT_BUDGET: u64 = 4096;

/// Positive sequence `a(n) = c · n^p · q^n` for `n ≥ 1` with rational
/// parameters, `c > 0` and `q > 0`.
#[derive(Clone)]
pub struct ClosedForm {
    c: BigRational,
    p: BigRational,
    q: BigRational,
    approx: Approx,
}

#[derive(Clone, Copy, Debug)]
struct Approx {
    c: f64,
    ln_c: f64,
    p: f64,
    q: f64,
    ln_q: f64,
}

impl ClosedForm {
    pub fn new(c: BigRational, p: BigRational, q: BigRational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::input(format!("closed form needs c > 0, got {c}")));
        }
        if !q.is_positive() {
            return Err(Error::input(format!("closed form needs q > 0, got {q}")));
        }
        let approx = Approx {
            c: rational_to_f64(&c),
            ln_c: ln_rational(&c),
            p: rational_to_f64(&p),
            q: rational_to_f64(&q),
            ln_q: ln_rational(&q),
        };
        Ok(ClosedForm { c, p, q, approx })
    }

    /// Convenience constructor from small integer ratios `(cn/cd, pn/pd, qn/qd)`.
    pub fn from_ratios(c: (i64, i64), p: (i64, i64), q: (i64, i64)) -> Result<Self> {
        let r = |(n, d): (i64, i64)| -> Result<BigRational> {
            if d == 0 {
                return Err(Error::input("zero denominator"));
            }
            Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
        };
        ClosedForm::new(r(c)?, r(p)?, r(q)?)
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// The pointwise reciprocal `1/a(n) = (1/c) · n^{-p} · (1/q)^n`.
    pub fn reciprocal(&self) -> ClosedForm {
        ClosedForm::new(self.c.recip(), -self.p.clone(), self.q.recip())
            .expect("reciprocal of a valid closed form is valid")
    }

    /// `ln a(n)`, finite for every `n ≥ 1`.
    pub fn ln_at(&self, n: u64) -> f64 {
        let a = &self.approx;
        let nf = n as f64;
        let poly = if a.p == 0.0 { 0.0 } else { a.p * nf.ln() };
        let geo = if a.ln_q == 0.0 { 0.0 } else { nf * a.ln_q };
        a.ln_c + poly + geo
    }

    /// Exact `a(n)` when it is rational, i.e. when `p` is an integer or `n = 1`.
    pub fn eval_exact(&self, n: u64) -> Option<BigRational> {
        assert!(n >= 1, "closed forms are indexed from 1");
        let nr = BigRational::from_integer(BigInt::from(n));
        let poly = if n == 1 {
            BigRational::one()
        } else {
            pow_rational(&nr, as_i64(&self.p)?)
        };
        let geo = pow_rational(&self.q, i64::try_from(n).ok()?);
        Some(&self.c * poly * geo)
    }

    /// Exact `a(n)` when `p` is an integer and `q^n` stays small enough to
    /// compute quickly.
    pub fn eval_exact_if_cheap(&self, n: u64) -> Option<BigRational> {
        if self.exact_cost_bits(n) > EXACT_BIT_BUDGET {
            return None;
        }
        self.eval_exact(n)
    }

    fn exact_cost_bits(&self, n: u64) -> u64 {
        let per = self.q.numer().bits() + self.q.denom().bits();
        if self.q.is_one() {
            0
        } else {
            n.saturating_mul(per)
        }
    }

    /// `a(n)` in double precision. Overflow is a range error.
    ///
    /// Non-negative integer exponents are evaluated exactly and rounded once,
    /// as long as `q^n` stays within a few thousand bits.
    pub fn eval(&self, n: u64) -> Result<f64> {
        assert!(n >= 1, "closed forms are indexed from 1");
        let ln = self.ln_at(n);
        if ln > f64::MAX.ln() + 1.0 {
            return Err(self.overflow(n));
        }
        let integral = as_i64(&self.p).is_some_and(|p| p >= 0);
        if integral && self.exact_cost_bits(n) <= EXACT_BIT_BUDGET {
            if let Some(exact) = self.eval_exact(n) {
                let v = rational_to_f64(&exact);
                return if v.is_finite() {
                    Ok(v)
                } else {
                    Err(self.overflow(n))
                };
            }
        }
        let a = &self.approx;
        let nf = n as f64;
        let direct = a.c * nf.powf(a.p) * a.q.powf(nf);
        if direct.is_finite() && direct > 0.0 {
            return Ok(direct);
        }
        let v = ln.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.overflow(n))
        }
    }

    fn overflow(&self, n: u64) -> Error {
        Error::Range(format!("{self} at n = {n} exceeds the double range"))
    }

    /// `sup_n a(n) < ∞`, decided exactly: `q < 1`, or `q = 1` and `p ≤ 0`.
    pub fn is_bounded(&self) -> bool {
        match self.q.cmp(&BigRational::one()) {
            Ordering::Less => true,
            Ordering::Equal => !self.p.is_positive(),
            Ordering::Greater => false,
        }
    }

    /// Compares asymptotic growth: by `q` first, then by `p`. Equal growth
    /// means the ratio of the two sequences tends to a positive constant.
    pub fn growth_cmp(&self, other: &ClosedForm) -> Ordering {
        self.q.cmp(&other.q).then_with(|| self.p.cmp(&other.p))
    }

    /// For `q < 1` and `p > 0`, the real maximiser `p / ln(1/q)` of `a`.
    pub fn turning_point(&self) -> Option<f64> {
        if self.q < BigRational::one() && self.p.is_positive() {
            Some(self.approx.p / -self.approx.ln_q)
        } else {
            None
        }
    }

    /// `sup_n a(n)` for a bounded form; `None` when unbounded.
    ///
    /// `ln a` is concave (p ≥ 0) or monotone (p < 0, q ≤ 1) in the real
    /// variable, so the integer maximum sits next to the real one.
    pub fn supremum(&self) -> Result<Option<f64>> {
        if !self.is_bounded() {
            return Ok(None);
        }
        let mut candidates = vec![1u64];
        if let Some(t) = self.turning_point() {
            let lo = t.floor().max(1.0);
            candidates.push(lo as u64);
            candidates.push((lo + 1.0) as u64);
        }
        let mut best = 0.0f64;
        for n in candidates {
            best = best.max(self.eval(n)?);
        }
        Ok(Some(best))
    }

    /// Index shift `a(n + k)` as a sum of closed forms. Requires a
    /// non-negative integer exponent (binomial expansion of `(n + k)^p`).
    pub fn shifted(&self, k: u64) -> Option<ClosedFormSum> {
        if k == 0 {
            return Some(ClosedFormSum::single(self.clone()));
        }
        let p = as_i64(&self.p)?;
        if p < 0 {
            return None;
        }
        let p = p as u64;
        let kq = pow_rational(&self.q, i64::try_from(k).ok()?);
        let kr = BigRational::from_integer(BigInt::from(k));
        let mut terms = Vec::new();
        for j in 0..=p {
            let coeff =
                BigRational::from_integer(binomial(p, j)) * pow_rational(&kr, (p - j) as i64) * &kq * &self.c;
            if coeff.is_zero() {
                continue;
            }
            let exponent = BigRational::from_integer(BigInt::from(j));
            terms.push(ClosedForm::new(coeff, exponent, self.q.clone()).ok()?);
        }
        ClosedFormSum::new(terms).ok()
    }

    fn same_shape(&self, other: &ClosedForm) -> bool {
        self.p == other.p && self.q == other.q
    }
}

impl PartialEq for ClosedForm {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.p == other.p && self.q == other.q
    }
}

impl Eq for ClosedForm {}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedForm({self})")
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·n^({})·({})^n", self.c, self.p, self.q)
    }
}

/// A finite sum of closed forms, kept canonical: terms with equal `(p, q)`
/// are combined and the list is sorted from fastest to slowest growth.
///
/// Sums arise from merging passports whose same-weight components add their
/// measures. Positive coefficients rule out cancellation, so the fastest
/// term decides every asymptotic question.
#[derive(Clone, PartialEq, Eq)]
pub struct ClosedFormSum {
    terms: Vec<ClosedForm>,
}

impl ClosedFormSum {
    pub fn new(terms: Vec<ClosedForm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::input("a closed-form sum needs at least one term"));
        }
        let mut merged: Vec<ClosedForm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|m| m.same_shape(&t)) {
                Some(m) => {
                    let c = &m.c + &t.c;
                    *m = ClosedForm::new(c, t.p.clone(), t.q.clone())?;
                }
                None => merged.push(t),
            }
        }
        merged.sort_by(|a, b| b.growth_cmp(a));
        Ok(ClosedFormSum { terms: merged })
    }

    pub fn single(form: ClosedForm) -> Self {
        ClosedFormSum { terms: vec![form] }
    }

    pub fn terms(&self) -> &[ClosedForm] {
        &self.terms
    }

    pub fn as_single(&self) -> Option<&ClosedForm> {
        match self.terms.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }

    /// The asymptotically dominant term.
    pub fn dominant(&self) -> &ClosedForm {
        &self.terms[0]
    }

    pub fn is_bounded(&self) -> bool {
        self.terms.iter().all(ClosedForm::is_bounded)
    }

    pub fn ln_at(&self, n: u64) -> f64 {
        if let [one] = self.terms.as_slice() {
            return one.ln_at(n);
        }
        let logs: Vec<f64> = self.terms.iter().map(|t| t.ln_at(n)).collect();
        log_sum_exp(&logs)
    }

    pub fn eval(&self, n: u64) -> Result<f64> {
        let mut parts = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            parts.push(t.eval(n)?);
        }
        let v = crate::numeric::fsum(parts);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Range(format!(
                "closed-form sum at n = {n} exceeds the double range"
            )))
        }
    }

    pub fn eval_exact(&self, n: u64) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for t in &self.terms {
            acc += t.eval_exact(n)?;
        }
        Some(acc)
    }

    pub fn eval_exact_if_cheap(&self, n: u64) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for t in &self.terms {
            acc += t.eval_exact_if_cheap(n)?;
        }
        Some(acc)
    }

    pub fn add(&self, other: &ClosedFormSum) -> ClosedFormSum {
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        ClosedFormSum::new(terms).expect("non-empty")
    }

    pub fn shifted(&self, k: u64) -> Option<ClosedFormSum> {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.extend(t.shifted(k)?.terms);
        }
        ClosedFormSum::new(terms).ok()
    }

    /// Growth comparison of the dominant terms.
    pub fn growth_cmp(&self, other: &ClosedFormSum) -> Ordering {
        self.dominant().growth_cmp(other.dominant())
    }

    pub fn p_is_integral(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.p.is_integer() && t.p.to_i64().is_some())
    }
}

impl fmt::Debug for ClosedFormSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedFormSum(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}
