//! Rigorous fixed-point enclosures of natural logarithms of primes.
//!
//! A value `x` is enclosed as integers `lo <= x * 2^scale <= hi`. Logarithms
//! are evaluated through `ln m = 2 atanh((m - 1) / (m + 1))` after pulling out
//! the power of two, so every series argument lies in `[0, 1/3)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Closed enclosure of a real number in units of `2^-scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl FixedInterval {
    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }
}

/// `2^scale * atanh(num/den)` enclosed as `[sum, sum + err]`, for
/// `0 <= num/den <= 1/3`.
///
/// Every floor in the recurrence loses less than one unit, so each summed term
/// is low by less than two units. Summation stops once the running power
/// underflows, at which point the remaining tail is below `2 (terms + 1)`
/// units because the ratio between consecutive powers is at most `1/9`.
fn atanh_scaled(num: &BigInt, den: &BigInt, scale: u32) -> (BigInt, BigInt) {
    debug_assert!(!num.is_negative() && den.is_positive());
    debug_assert!(num * 3 <= *den);
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let num_sq = num * num;
    let den_sq = den * den;
    let mut power = (num << scale as usize).div_floor(den);
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let k = BigInt::from(2 * terms + 1);
        sum += power.div_floor(&k);
        power = (&power * &num_sq).div_floor(&den_sq);
        terms += 1;
    }
    let err = BigInt::from(4 * terms + 4);
    (sum, err)
}

/// Enclosure of `ln 2` at the given scale.
pub fn ln2(scale: u32) -> FixedInterval {
    let (s, e) = atanh_scaled(&BigInt::from(1), &BigInt::from(3), scale);
    FixedInterval {
        lo: &s * 2,
        hi: (s + e) * 2,
        scale,
    }
}

/// Enclosure of `ln n` for `n >= 1`.
pub fn ln_u64(n: u64, scale: u32) -> FixedInterval {
    assert!(n >= 1, "logarithm of zero");
    let k = 63 - n.leading_zeros();
    let base = 1u64 << k;
    let num = BigInt::from(n - base);
    let den = BigInt::from(n) + BigInt::from(base);
    let (s, e) = atanh_scaled(&num, &den, scale);
    let l2 = ln2(scale);
    let k = BigInt::from(k);
    FixedInterval {
        lo: &k * &l2.lo + &s * 2,
        hi: &k * &l2.hi + (s + e) * 2,
        scale,
    }
}

/// Enclosure of `(a/b) * x` given an enclosure of `x` (`b > 0`).
pub fn scale_by_ratio(x: &FixedInterval, a: &BigInt, b: &BigInt) -> FixedInterval {
    debug_assert!(b.is_positive());
    let (lo, hi) = if a.is_negative() {
        ((a * &x.hi).div_floor(b), ceil_div(&(a * &x.lo), b))
    } else {
        ((a * &x.lo).div_floor(b), ceil_div(&(a * &x.hi), b))
    };
    FixedInterval {
        lo,
        hi,
        scale: x.scale,
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn as_f64(x: &BigInt, scale: u32) -> f64 {
        x.to_f64().unwrap() / 2f64.powi(scale as i32)
    }

    #[test]
    fn ln2_encloses_float_value() {
        for scale in [16u32, 64, 200] {
            let e = ln2(scale);
            let lo = as_f64(&e.lo, scale);
            let hi = as_f64(&e.hi, scale);
            assert!(lo <= std::f64::consts::LN_2 + 1e-15, "{lo}");
            assert!(hi >= std::f64::consts::LN_2 - 1e-15, "{hi}");
        }
    }

    #[test]
    fn enclosure_width_shrinks_with_scale() {
        let narrow = ln_u64(5, 256);
        assert!(narrow.width().bits() < 16);
        let hi_scale = ln_u64(31, 512);
        assert!(hi_scale.lo < hi_scale.hi);
    }

    #[test]
    fn ln_of_one_is_zero() {
        let e = ln_u64(1, 64);
        assert!(e.lo.is_zero() && e.hi.is_zero());
    }

    #[test]
    fn small_primes_match_float_logs() {
        for p in [2u64, 3, 5, 7, 11, 13, 6329, 1_000_003] {
            let e = ln_u64(p, 80);
            let lo = as_f64(&e.lo, 80);
            let hi = as_f64(&e.hi, 80);
            let f = (p as f64).ln();
            assert!(
                lo <= f + 1e-12 && f - 1e-12 <= hi,
                "p = {p}: [{lo}, {hi}] vs {f}"
            );
        }
    }

    #[test]
    fn negative_ratio_swaps_endpoints() {
        let x = FixedInterval {
            lo: BigInt::from(10),
            hi: BigInt::from(12),
            scale: 0,
        };
        let y = scale_by_ratio(&x, &BigInt::from(-1), &BigInt::from(3));
        assert_eq!(y.lo, BigInt::from(-4));
        assert_eq!(y.hi, BigInt::from(-3));
    }
}
