//! Exact multiplicative arithmetic on positive reals `∏ p^e` with rational
//! exponents.
//!
//! Every discriminant inequality in the replay is an instance of
//! [`FactoredReal::compare`]. Values are kept in a canonical form (prime
//! keys, nonzero exponents) so equality is structural. Comparisons of
//! irrational values are decided by enclosing `Σ e_p ln p` in fixed-point
//! intervals whose precision doubles until the sign is certain; the
//! logarithms of distinct primes are linearly independent over `ℚ`, so this
//! terminates whenever the two values differ.

pub mod logs;
pub mod primes;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactoredRealError {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("value must be positive, got {0}")]
    NonPositive(String),
    #[error("integer {0} is too large to factor")]
    TooLarge(String),
}

/// Shorthand for `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"31.645"`, `"-2"`, `"23/20"` or `"1e-3"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, FactoredRealError> {
    let err = |reason: &str| FactoredRealError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp10) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err("bad exponent"))?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err("not a decimal"));
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().unwrap() / 10;
    let shift = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if shift >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Controls the interval refinement used by [`FactoredReal::compare_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparePolicy {
    /// Fractional bits of the first attempt.
    pub start_bits: u32,
    /// Precision is multiplied by this factor after each inconclusive attempt.
    pub growth_factor: u32,
}

impl Default for ComparePolicy {
    fn default() -> Self {
        ComparePolicy {
            start_bits: 64,
            growth_factor: 2,
        }
    }
}

/// Positive real number `∏ p^e` with `p` prime and `e` rational.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FactoredReal {
    factors: BTreeMap<u64, Rational>,
}

impl FactoredReal {
    pub fn one() -> Self {
        Self::default()
    }

    /// `base^exp` for any `base >= 1`; composite bases are split into primes.
    pub fn power(base: u64, exp: Rational) -> Self {
        assert!(base >= 1, "base must be positive");
        let mut out = Self::one();
        for (p, k) in primes::factorize(base) {
            out.accumulate(p, &exp * BigInt::from(k));
        }
        out
    }

    pub fn power_frac(base: u64, num: i64, den: i64) -> Self {
        Self::power(base, ratio(num, den))
    }

    pub fn from_integer(n: u64) -> Self {
        Self::power(n, int(1))
    }

    /// Exact conversion of a positive rational.
    pub fn from_rational(r: &Rational) -> Result<Self, FactoredRealError> {
        if !r.is_positive() {
            return Err(FactoredRealError::NonPositive(r.to_string()));
        }
        let to_u64 = |n: &BigInt| {
            n.to_u64()
                .ok_or_else(|| FactoredRealError::TooLarge(n.to_string()))
        };
        let num = to_u64(r.numer())?;
        let den = to_u64(r.denom())?;
        Ok(Self::from_integer(num).div(&Self::from_integer(den)))
    }

    /// Build from `(prime, exponent)` pairs. Panics if a key is not prime.
    pub fn from_prime_exponents<I: IntoIterator<Item = (u64, Rational)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (p, e) in pairs {
            assert!(primes::is_prime(p), "{p} is not prime");
            out.accumulate(p, e);
        }
        out
    }

    fn accumulate(&mut self, p: u64, e: Rational) {
        if e.is_zero() {
            return;
        }
        let slot = self.factors.entry(p).or_insert_with(Rational::zero);
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(&p);
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero when absent).
    pub fn exponent(&self, p: u64) -> Rational {
        self.factors.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.factors.iter().map(|(p, e)| (*p, e))
    }

    pub fn support(&self) -> Vec<u64> {
        self.factors.keys().copied().collect()
    }

    /// The part of `self` supported at the single prime `p`.
    pub fn local_part(&self, p: u64) -> Self {
        let mut out = Self::one();
        if let Some(e) = self.factors.get(&p) {
            out.factors.insert(p, e.clone());
        }
        out
    }

    /// True when every exponent is an integer, i.e. the value is rational.
    pub fn is_rational(&self) -> bool {
        self.factors.values().all(|e| e.is_integer())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in &other.factors {
            out.accumulate(*p, e.clone());
        }
        out
    }

    pub fn inverse(&self) -> Self {
        FactoredReal {
            factors: self.factors.iter().map(|(p, e)| (*p, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::one();
        }
        FactoredReal {
            factors: self.factors.iter().map(|(p, e)| (*p, e * r)).collect(),
        }
    }

    /// Exact order comparison with the default policy.
    pub fn compare(&self, other: &Self) -> Ordering {
        self.compare_with(other, ComparePolicy::default())
    }

    pub fn compare_with(&self, other: &Self, policy: ComparePolicy) -> Ordering {
        let q = self.div(other);
        if q.is_one() {
            return Ordering::Equal;
        }
        if q.factors.len() == 1 {
            let (_, e) = q.factors.iter().next().unwrap();
            return if e.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        q.log_sign(policy)
    }

    /// Sign of `ln self` for `self != 1`, by interval refinement.
    fn log_sign(&self, policy: ComparePolicy) -> Ordering {
        let growth = policy.growth_factor.max(2);
        let mut bits = policy.start_bits.max(8);
        loop {
            let enc = self.log_enclosure(bits);
            if enc.lo.is_positive() {
                return Ordering::Greater;
            }
            if enc.hi.is_negative() {
                return Ordering::Less;
            }
            bits = bits.saturating_mul(growth);
        }
    }

    /// Enclosure of `ln self` scaled by `2^(bits + 16)`.
    pub fn log_enclosure(&self, bits: u32) -> logs::FixedInterval {
        let scale = bits + 16;
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (p, e) in &self.factors {
            let l = logs::ln_u64(*p, scale);
            let t = logs::scale_by_ratio(&l, e.numer(), e.denom());
            lo += t.lo;
            hi += t.hi;
        }
        logs::FixedInterval { lo, hi, scale }
    }

    /// `self | other` in the exponent-wise sense: `v_p(self) <= v_p(other)`
    /// for every prime.
    pub fn exponent_divides(&self, other: &Self) -> bool {
        self.factors
            .keys()
            .chain(other.factors.keys())
            .all(|p| self.exponent(*p) <= other.exponent(*p))
    }

    /// Rational enclosure of the value with `upper - lower <= width`.
    ///
    /// Writes the value as `(N / M)^(1/D)` with integers `N`, `M` and bisects
    /// with exact integer power comparisons.
    pub fn decimal_interval(&self, width: &Rational) -> DecimalInterval {
        assert!(width.is_positive(), "interval width must be positive");
        let denom = self
            .factors
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let d = denom.to_usize().expect("exponent denominator too large");
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.factors {
            let k = (e * Rational::from_integer(denom.clone())).to_integer();
            let k_abs = k.abs().to_usize().expect("exponent too large");
            let pk = num_traits::pow(BigUint::from(*p), k_abs);
            if k.is_positive() {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        if d == 1 {
            let v = Rational::new(BigInt::from(num), BigInt::from(den));
            return DecimalInterval::new(v.clone(), v);
        }
        // Compare x^d against N/M exactly.
        let cmp = |x: &Rational| -> Ordering {
            let xn = x.numer().to_biguint().unwrap();
            let xd = x.denom().to_biguint().unwrap();
            (num_traits::pow(xn, d) * &den).cmp(&(num_traits::pow(xd, d) * &num))
        };
        let (mut lo, mut hi) = self.initial_bracket();
        while cmp(&lo) == Ordering::Greater {
            lo /= int(2);
        }
        while cmp(&hi) == Ordering::Less {
            hi *= int(2);
        }
        let two = int(2);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            match cmp(&mid) {
                Ordering::Less => lo = mid,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return DecimalInterval::new(mid.clone(), mid),
            }
        }
        DecimalInterval::new(lo, hi)
    }

    /// Float-guided starting bracket; validity is re-checked exactly by the caller.
    fn initial_bracket(&self) -> (Rational, Rational) {
        let ln = self.ln_f64();
        if ln.abs() < 600.0 {
            let est = ln.exp();
            let lo = Rational::from_float(est * (1.0 - 1e-9)).unwrap_or_else(|| int(1));
            let hi = Rational::from_float(est * (1.0 + 1e-9)).unwrap_or_else(|| int(1));
            if lo.is_positive() {
                return (lo, hi);
            }
        }
        let k = (ln / std::f64::consts::LN_2).round() as i64;
        let pow2 = |k: i64| {
            if k >= 0 {
                Rational::from_integer(BigInt::one() << k as usize)
            } else {
                Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
            }
        };
        (pow2(k - 2), pow2(k + 2))
    }

    fn ln_f64(&self) -> f64 {
        self.factors
            .iter()
            .map(|(p, e)| e.to_f64().unwrap_or(0.0) * (*p as f64).ln())
            .sum()
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.ln_f64().exp()
    }
}

impl fmt::Display for FactoredReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredReal({self})")
    }
}

/// Parses `5^23/20 * 6^4/5`, `2^-1/2`, `1`, or a plain decimal such as `31.645`.
impl FromStr for FactoredReal {
    type Err = FactoredRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| FactoredRealError::Parse {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if !t.contains('^') && !t.contains('*') {
            let r = parse_rational(t)?;
            return FactoredReal::from_rational(&r);
        }
        let mut out = FactoredReal::one();
        for term in t.split('*') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    (b.trim(), parse_rational(e)?)
                }
                None => (term, int(1)),
            };
            let base: u64 = base
                .parse()
                .map_err(|_| err(format!("bad base `{base}`")))?;
            if base == 0 {
                return Err(FactoredRealError::NonPositive(term.to_string()));
            }
            out = out.mul(&FactoredReal::power(base, exp));
        }
        Ok(out)
    }
}

impl Serialize for FactoredReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FactoredReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Closed rational interval `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalInterval {
    pub lower: Rational,
    pub upper: Rational,
}

impl DecimalInterval {
    pub fn new(lower: Rational, upper: Rational) -> Self {
        assert!(lower <= upper, "empty interval");
        DecimalInterval { lower, upper }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// Render both endpoints with `digits` decimals, rounding outward.
    pub fn render(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            format_decimal(&self.lower, digits, false),
            format_decimal(&self.upper, digits, true)
        )
    }
}

impl fmt::Display for DecimalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(6))
    }
}

/// Decimal rendering of `r` with `digits` fractional digits, rounded down or up.
pub fn format_decimal(r: &Rational, digits: usize, round_up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let n = if round_up {
        scaled.ceil()
    } else {
        scaled.floor()
    }
    .to_integer();
    let neg = n.is_negative();
    let (q, rem) = n.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{:0>width$}", rem.to_string(), width = digits)
    }
}

/// Serde adapter storing a [`Rational`] as a string such as `"23/20"`.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(s: &str) -> FactoredReal {
        s.parse().unwrap()
    }

    #[test]
    fn composite_bases_normalize() {
        assert_eq!(fr("6^4/5"), fr("2^4/5 * 3^4/5"));
        assert_eq!(fr("576^1/5"), fr("2^6/5 * 3^2/5"));
        assert_eq!(fr("5^23/20 * 6^4/5").to_string(), "2^4/5 * 3^4/5 * 5^23/20");
    }

    #[test]
    fn multiplication_examples() {
        let a = fr("5^23/20 * 2^4/5 * 3^4/5");
        assert_eq!(a.mul(&fr("5^1/20")), fr("5^6/5 * 2^4/5 * 3^4/5"));
        assert_eq!(a.mul(&FactoredReal::one()), a);
        assert!(fr("2^1/2").mul(&fr("2^-1/2")).is_one());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(fr("5^5").pow(&ratio(1, 100)), fr("5^1/20"));
        let x = fr("7^2/3 * 11");
        assert_eq!(x.pow(&int(1)), x);
        assert_eq!(fr("3^54").pow(&ratio(1, 162)), fr("3^1/3"));
        assert!(x.pow(&int(0)).is_one());
    }

    #[test]
    fn compare_examples() {
        let fontaine = fr("5^5/4 * 2^4/5 * 3^4/5");
        assert_eq!(fontaine.compare(&fr("31.645")), Ordering::Less);
        assert_eq!(fontaine.compare(&fontaine), Ordering::Equal);
        let n10 = fr("3^3/2 * 2^2/3 * 5^2/3");
        assert_eq!(n10.compare(&fr("24.118")), Ordering::Greater);
        assert_eq!(n10.compare(&fr("24.119")), Ordering::Less);
    }

    #[test]
    fn single_prime_ratio_is_decided_exactly() {
        assert_eq!(fr("5^23/20").compare(&fr("5^5/4")), Ordering::Less);
        assert_eq!(fr("2^3 * 3").compare(&fr("3 * 2^5/2")), Ordering::Greater);
    }

    #[test]
    fn exponent_divisibility() {
        let a = fr("5^23/20 * 2^4/5 * 3^4/5");
        let b = fr("5^5/4 * 2^4/5 * 3^4/5");
        assert!(a.exponent_divides(&b));
        assert!(!b.exponent_divides(&a));
        assert!(a.exponent_divides(&a));
        assert!(!fr("2").exponent_divides(&fr("3")));
    }

    #[test]
    fn decimal_interval_examples() {
        let w = ratio(1, 1000);
        // Oracle values from a 30-digit logarithm evaluation.
        let a = fr("5^5/4 * 2^4/5 * 3^4/5").decimal_interval(&w);
        assert!(a.contains(&parse_rational("31.3497084101").unwrap()));
        assert!(a.contains(&parse_rational("31.3497084102").unwrap()));
        assert!(a.width() <= w);
        assert_eq!(
            FactoredReal::one().decimal_interval(&w),
            DecimalInterval::new(int(1), int(1))
        );
        let b = fr("3^3/2 * 2^2/3 * 5^2/3").decimal_interval(&w);
        assert!(b.contains(&parse_rational("24.1184030629").unwrap()));
        assert!(b.contains(&parse_rational("24.1184030630").unwrap()));
    }

    #[test]
    fn decimal_interval_of_tiny_and_huge_values() {
        let w = ratio(1, 1_000_000);
        let tiny = fr("2^-1/3 * 3^-5/2").decimal_interval(&w);
        let v = 2f64.powf(-1.0 / 3.0) * 3f64.powf(-2.5);
        assert!(tiny.lower.to_f64().unwrap() <= v + 1e-12);
        assert!(tiny.upper.to_f64().unwrap() >= v - 1e-12);
        assert!(tiny.width() <= w);
        let huge = fr("2^1001/2").decimal_interval(&int(1));
        assert!(huge.width() <= int(1));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("31.645").unwrap(), ratio(31645, 1000));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("23/20").unwrap(), ratio(23, 20));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("0^2".parse::<FactoredReal>().is_err());
        assert!("x^2".parse::<FactoredReal>().is_err());
        assert!("-3".parse::<FactoredReal>().is_err());
        assert_eq!("1".parse::<FactoredReal>().unwrap(), FactoredReal::one());
    }

    #[test]
    fn display_round_trips() {
        let x = fr("5^23/20 * 6^4/5 * 7^-2");
        assert_eq!(x.to_string().parse::<FactoredReal>().unwrap(), x);
    }

    #[test]
    fn decimal_formatting_rounds_outward() {
        let x = ratio(314159, 100000);
        assert_eq!(format_decimal(&x, 3, false), "3.141");
        assert_eq!(format_decimal(&x, 3, true), "3.142");
        assert_eq!(format_decimal(&ratio(-1, 8), 2, false), "-0.13");
        assert_eq!(format_decimal(&int(7), 0, true), "7");
    }
}
