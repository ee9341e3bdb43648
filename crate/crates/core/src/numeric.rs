//! Small numeric helpers shared by the modules: correctly rounded summation,
//! log-domain arithmetic and exact-rational conveniences.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Correctly rounded sum of finite doubles (Shewchuk partials with the final
/// half-way correction). The result depends only on the multiset of inputs,
/// so it is invariant under reordering.
pub fn fsum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    let mut special = 0.0f64;
    for mut x in values {
        if !x.is_finite() {
            special += x;
            continue;
        }
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }
    if special != 0.0 || special.is_nan() {
        return special;
    }

    let mut n = partials.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        let yr = x - hi;
        if y == yr {
            hi = x;
        }
    }
    hi
}

/// `ln(Σ exp(x_i))` without overflow; `-inf` for an empty input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + fsum(values.iter().map(|v| (v - max).exp())).ln()
}

/// Natural logarithm of a positive big integer, valid far beyond `f64` range.
pub fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.sign() == Sign::Plus);
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    debug_assert!(r.is_positive());
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Nearest double to a rational (correctly rounded by `num-rational`).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn rational_from_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer value of `r`, if it is an integer that fits in `i64`.
pub fn as_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// `base^exp` for a (possibly negative) integer exponent. `base` must be
/// non-zero when `exp < 0`.
pub fn pow_rational(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let magnitude = exp.unsigned_abs();
    let numer = num_traits::pow::Pow::pow(base.numer(), magnitude);
    let denom = num_traits::pow::Pow::pow(base.denom(), magnitude);
    if exp > 0 {
        BigRational::new(numer, denom)
    } else {
        BigRational::new(denom, numer)
    }
}

/// `⌊r⌋` as a big integer.
pub fn floor_rational(r: &BigRational) -> BigInt {
    let (q, _) = r.numer().div_mod_floor(r.denom());
    q
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fsum_is_exact_on_cancellation() {
        assert_eq!(fsum([1e100, 1.0, -1e100]), 1.0);
        assert_eq!(fsum([0.1; 10]), 1.0);
        assert_eq!(fsum(std::iter::empty()), 0.0);
    }

    #[test]
    fn fsum_order_invariant() {
        let a = [0.3, 1e-17, 2.5e8, -7.25, 1.0 / 3.0];
        let mut b = a;
        b.reverse();
        assert_eq!(fsum(a), fsum(b));
    }

    #[test]
    fn ln_of_huge_rationals() {
        let two = ratio(2, 1);
        let big = pow_rational(&two, 5000);
        let expected = 5000.0 * std::f64::consts::LN_2;
        assert!((ln_rational(&big) - expected).abs() < 1e-9);
        let small = pow_rational(&two, -5000);
        assert!((ln_rational(&small) + expected).abs() < 1e-9);
    }

    #[test]
    fn log_sum_exp_matches_direct() {
        let v = [0.0, 1.0, -2.0];
        let direct = (1.0f64 + 1.0f64.exp() + (-2.0f64).exp()).ln();
        assert!((log_sum_exp(&v) - direct).abs() < 1e-15);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn floors_and_binomials() {
        assert_eq!(floor_rational(&ratio(-7, 2)), BigInt::from(-4));
        assert_eq!(floor_rational(&ratio(7, 2)), BigInt::from(3));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
