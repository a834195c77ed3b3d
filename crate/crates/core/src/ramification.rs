//! Different, discriminant and conductor bookkeeping.
//!
//! Different valuations are normalized so that `v(p) = 1`. With that
//! normalization the `p`-part of a root discriminant is simply
//! `p^(different valuation)`, and Fontaine's bound reads
//! `v(D) < 1 + 1/(ℓ - 1)`.
//!
//! Ideals over a base other than `ℚ` are modelled as [`FormalIdeal`]s: products
//! of named prime symbols whose absolute norms are declared, so that norms down
//! to `ℚ` are exponent arithmetic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factored_real::{int, primes, serde_rational, FactoredReal, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamificationError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field `{field}`: at p = {prime}, e*f*g = {product} but the degree is {degree}")]
    InconsistentDegree {
        field: String,
        prime: u64,
        product: u64,
        degree: u64,
    },
    #[error("field `{field}`: at p = {prime}, {reason}")]
    BadLocalData {
        field: String,
        prime: u64,
        reason: String,
    },
    #[error(
        "field `{field}`: declared root discriminant {declared} differs from local data {computed}"
    )]
    RootDiscMismatch {
        field: String,
        declared: FactoredReal,
        computed: FactoredReal,
    },
    #[error("invalid ramification filtration {orders:?}: {reason}")]
    BadFiltration { orders: Vec<u64>, reason: String },
    #[error("discriminant exponent {disc} is not divisible by {characters}")]
    NotDivisible { disc: i64, characters: i64 },
    #[error("{0}")]
    Precondition(String),
    #[error("unknown formal prime `{0}`")]
    UnknownSymbol(String),
}

/// `1 + 1/(ℓ - 1)`, the strict upper bound on the different valuation of a
/// field cut out by a finite flat group scheme over `ℤ_ℓ` killed by `ℓ`.
pub fn fontaine_exponent_bound(ell: u64) -> Result<Rational, RamificationError> {
    if !primes::is_prime(ell) {
        return Err(RamificationError::NotPrime(ell));
    }
    Ok(int(1) + Rational::new(BigInt::one(), BigInt::from(ell - 1)))
}

/// Upper bound on the root discriminant of a field unramified outside
/// `{ℓ} ∪ tame`, with the Fontaine bound at `ℓ` and inertia of order `ℓ` at
/// each tame prime: `ℓ^(1 + 1/(ℓ-1)) · ∏ p^(1 - 1/ℓ)`.
pub fn fontaine_product_bound(ell: u64, tame: &[u64]) -> Result<FactoredReal, RamificationError> {
    let mut out = FactoredReal::power(ell, fontaine_exponent_bound(ell)?);
    let tame_exp = int(1) - Rational::new(BigInt::one(), BigInt::from(ell));
    for p in tame {
        if !primes::is_prime(*p) {
            return Err(RamificationError::NotPrime(*p));
        }
        out = out.mul(&FactoredReal::power(*p, tame_exp.clone()));
    }
    Ok(out)
}

/// Exponent of a prime in the different of a tamely ramified extension.
pub fn tame_different_exponent(e: u64) -> u64 {
    assert!(e >= 1, "ramification index must be positive");
    e - 1
}

/// Orders `|Γ_0|, |Γ_1|, …` of the lower-numbering ramification groups;
/// trailing trivial groups may be omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationFiltration {
    orders: Vec<u64>,
}

impl RamificationFiltration {
    pub fn new(orders: Vec<u64>) -> Result<Self, RamificationError> {
        let bad = |reason: &str| RamificationError::BadFiltration {
            orders: orders.clone(),
            reason: reason.into(),
        };
        if orders.is_empty() {
            return Err(bad("empty"));
        }
        if orders.contains(&0) {
            return Err(bad("orders must be positive"));
        }
        for w in orders.windows(2) {
            if w[0] % w[1] != 0 {
                return Err(bad("each group must be a subgroup of the previous one"));
            }
        }
        // Γ_1 onward is a p-group for the residue characteristic p.
        let wild: Vec<u64> = orders[1..].iter().copied().filter(|&n| n > 1).collect();
        if let Some(&first) = wild.first() {
            let p = primes::factorize(first)[0].0;
            if wild
                .iter()
                .any(|&n| primes::factorize(n).iter().any(|(q, _)| *q != p))
            {
                return Err(bad(
                    "higher ramification groups must be p-groups for one prime p",
                ));
            }
        }
        Ok(RamificationFiltration { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn is_tame(&self) -> bool {
        self.orders[1..].iter().all(|&n| n == 1)
    }
}

/// `Σ (|Γ_i| - 1)`, the valuation of the different at the upper prime.
pub fn wild_different_valuation(filt: &RamificationFiltration) -> u64 {
    filt.orders.iter().map(|n| n - 1).sum()
}

/// Different exponents compatible with a cyclic degree-`ℓ` extension whose
/// ramification groups all have order `ℓ` or `1`: multiples of `ℓ - 1`
/// exceeding `e - 1`, below `strict_upper`, and at least `2(ℓ - 1)` when the
/// ramification is wild (`ℓ | e`).
pub fn wild_candidate_exponents(ell: u64, e: u64, strict_upper: u64) -> BTreeSet<u64> {
    let step = ell - 1;
    let wild = e.is_multiple_of(ell);
    (0..strict_upper)
        .filter(|v| v % step == 0)
        .filter(|&v| v + 1 > e)
        .filter(|&v| !wild || v >= 2 * step)
        .collect()
}

/// Local data at one rational prime `p` of a Galois number field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeLocalData {
    pub residue_prime: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    /// Valuation of the different at each prime above `p`, normalized `v(p) = 1`.
    #[serde(with = "serde_rational")]
    pub different_valuation: Rational,
}

impl PrimeLocalData {
    pub fn is_tame(&self) -> bool {
        !self.e.is_multiple_of(self.residue_prime)
    }

    /// `(e - 1)/e`, the different valuation of a tame prime.
    pub fn tame_valuation(&self) -> Rational {
        Rational::new(BigInt::from(self.e - 1), BigInt::from(self.e))
    }

    /// Whether the different valuation is below Fontaine's bound for `ℓ = p`.
    pub fn within_fontaine_bound(&self) -> bool {
        match fontaine_exponent_bound(self.residue_prime) {
            Ok(b) => self.different_valuation < b,
            Err(_) => false,
        }
    }

    /// Exponent of `p` in the absolute discriminant: `g f e v`.
    pub fn discriminant_exponent(&self) -> Rational {
        &self.different_valuation * BigInt::from(self.g * self.f * self.e)
    }
}

/// A formal prime symbol's declared absolute norm and how many conjugate
/// primes it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalPrime {
    pub norm: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub id: String,
    pub degree: u64,
    pub local_data: Vec<PrimeLocalData>,
    pub declared_root_disc: FactoredReal,
    #[serde(default)]
    pub defining_polynomial: Vec<i64>,
    #[serde(default)]
    pub formal_primes: BTreeMap<String, FormalPrime>,
}

impl FieldDescriptor {
    pub fn local(&self, p: u64) -> Option<&PrimeLocalData> {
        self.local_data.iter().find(|d| d.residue_prime == p)
    }

    /// Internal consistency of each local record (not including the root
    /// discriminant cross-check).
    pub fn validate_local(&self) -> Result<(), RamificationError> {
        let mut seen = BTreeSet::new();
        for d in &self.local_data {
            let bad = |reason: String| RamificationError::BadLocalData {
                field: self.id.clone(),
                prime: d.residue_prime,
                reason,
            };
            if !primes::is_prime(d.residue_prime) {
                return Err(bad("residue characteristic is not prime".into()));
            }
            if !seen.insert(d.residue_prime) {
                return Err(bad("duplicate record".into()));
            }
            if d.e == 0 || d.f == 0 || d.g == 0 {
                return Err(bad("e, f, g must be positive".into()));
            }
            let product = d.e * d.f * d.g;
            if product != self.degree {
                return Err(RamificationError::InconsistentDegree {
                    field: self.id.clone(),
                    prime: d.residue_prime,
                    product,
                    degree: self.degree,
                });
            }
            let tame = d.tame_valuation();
            if d.is_tame() && d.different_valuation != tame {
                return Err(bad(format!("tame prime needs different valuation {tame}")));
            }
            if !d.is_tame() && d.different_valuation <= tame {
                return Err(bad(format!(
                    "wild prime needs different valuation above {tame}"
                )));
            }
            // The different exponent e·v at each upper prime is an integer.
            if !(&d.different_valuation * BigInt::from(d.e)).is_integer() {
                return Err(bad(
                    "e times the different valuation must be an integer".into()
                ));
            }
        }
        Ok(())
    }

    /// Norm of a formal ideal using this field's declared prime symbols.
    pub fn norm(&self, ideal: &FormalIdeal) -> Result<FactoredReal, RamificationError> {
        ideal.norm(&self.formal_primes)
    }
}

/// `∏_p p^(g f e v / n)` over the ramified primes.
pub fn root_disc_from_local_data(fd: &FieldDescriptor) -> Result<FactoredReal, RamificationError> {
    let mut out = FactoredReal::one();
    for d in &fd.local_data {
        let product = d.e * d.f * d.g;
        if product != fd.degree {
            return Err(RamificationError::InconsistentDegree {
                field: fd.id.clone(),
                prime: d.residue_prime,
                product,
                degree: fd.degree,
            });
        }
        let exp = d.discriminant_exponent() / BigInt::from(fd.degree);
        out = out.mul(&FactoredReal::power(d.residue_prime, exp));
    }
    Ok(out)
}

/// Full validation of a descriptor, including the root discriminant check.
pub fn validate_field(fd: &FieldDescriptor) -> Result<(), RamificationError> {
    fd.validate_local()?;
    let computed = root_disc_from_local_data(fd)?;
    if computed != fd.declared_root_disc {
        return Err(RamificationError::RootDiscMismatch {
            field: fd.id.clone(),
            declared: fd.declared_root_disc.clone(),
            computed,
        });
    }
    Ok(())
}

/// `δ_L = δ_K · N_{K/ℚ}(Δ_{L/K})^(1/[L:ℚ])`.
pub fn root_disc_transitive(
    delta_k: &FactoredReal,
    norm_disc: &FactoredReal,
    degree_l: u64,
) -> FactoredReal {
    assert!(degree_l >= 1, "degree must be positive");
    delta_k.mul(&norm_disc.pow(&Rational::new(BigInt::one(), BigInt::from(degree_l))))
}

/// Conductor exponent of a cyclic extension whose `characters` nontrivial
/// characters are all faithful and share one conductor.
pub fn conductor_from_cyclic_disc(
    disc_exponent: i64,
    characters: i64,
) -> Result<i64, RamificationError> {
    if characters < 1 {
        return Err(RamificationError::Precondition(
            "need at least one nontrivial character".into(),
        ));
    }
    if disc_exponent % characters != 0 {
        return Err(RamificationError::NotDivisible {
            disc: disc_exponent,
            characters,
        });
    }
    Ok(disc_exponent / characters)
}

/// Product of named prime ideals with integer exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormalIdeal {
    exponents: BTreeMap<String, i64>,
}

impl FormalIdeal {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn prime_power(symbol: &str, exp: i64) -> Self {
        let mut out = Self::unit();
        out.accumulate(symbol, exp);
        out
    }

    /// `(π_1 ⋯ π_count)^exp` for a symbol standing for `count` conjugate primes.
    /// Individual conjugates are named `symbol.1`, …, `symbol.count`; a symbol
    /// with `count = 1` names its single prime.
    pub fn conjugate_product(symbol: &str, count: u64, exp: i64) -> Self {
        let mut out = Self::unit();
        for name in conjugate_names(symbol, count) {
            out.accumulate(&name, exp);
        }
        out
    }

    fn accumulate(&mut self, symbol: &str, exp: i64) {
        if exp == 0 {
            return;
        }
        let slot = self.exponents.entry(symbol.to_string()).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.exponents.remove(symbol);
        }
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, symbol: &str) -> i64 {
        self.exponents.get(symbol).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, e) in &other.exponents {
            out.accumulate(s, *e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut out = Self::unit();
        for (s, e) in &self.exponents {
            out.accumulate(s, e * k);
        }
        out
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exponents
            .keys()
            .chain(other.exponents.keys())
            .all(|s| self.exponent(s) <= other.exponent(s))
    }

    /// Least common multiple (exponent-wise maximum).
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = Self::unit();
        for s in self.exponents.keys().chain(other.exponents.keys()) {
            let m = self.exponent(s).max(other.exponent(s));
            out.exponents.insert(s.clone(), m);
        }
        out.exponents.retain(|_, e| *e != 0);
        out
    }

    /// Absolute norm, resolving `symbol.i` through the declared symbol `symbol`.
    pub fn norm(
        &self,
        registry: &BTreeMap<String, FormalPrime>,
    ) -> Result<FactoredReal, RamificationError> {
        let mut out = FactoredReal::one();
        for (s, e) in &self.exponents {
            let base = match registry.get(s) {
                Some(fp) if fp.count == 1 => fp,
                _ => {
                    let (root, idx) = s
                        .rsplit_once('.')
                        .ok_or_else(|| RamificationError::UnknownSymbol(s.clone()))?;
                    let fp = registry
                        .get(root)
                        .ok_or_else(|| RamificationError::UnknownSymbol(s.clone()))?;
                    match idx.parse::<u64>() {
                        Ok(i) if (1..=fp.count).contains(&i) => fp,
                        _ => return Err(RamificationError::UnknownSymbol(s.clone())),
                    }
                }
            };
            out = out.mul(&FactoredReal::power(base.norm, int(*e)));
        }
        Ok(out)
    }
}

fn conjugate_names(symbol: &str, count: u64) -> Vec<String> {
    if count == 1 {
        vec![symbol.to_string()]
    } else {
        (1..=count).map(|i| format!("{symbol}.{i}")).collect()
    }
}

impl fmt::Display for FormalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.clone()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

impl fmt::Debug for FormalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalIdeal({self})")
    }
}

/// Relative discriminant of an abelian extension as the product of its
/// character conductors. The list must contain the trivial character.
pub fn conductor_discriminant(
    conductors: &[FormalIdeal],
) -> Result<FormalIdeal, RamificationError> {
    if !conductors.iter().any(FormalIdeal::is_unit) {
        return Err(RamificationError::Precondition(
            "character list must include the trivial character".into(),
        ));
    }
    Ok(conductors
        .iter()
        .fold(FormalIdeal::unit(), |acc, c| acc.mul(c)))
}

/// Whether `e_p(E/J) = 1` is forced when `e_p(E/J)` divides the product of
/// `e_upper_factors` (and `extension_degree`, when known) and is not divisible
/// by `forbidden_divisor`. Decided by enumerating divisors.
pub fn unramified_degree_constraint(
    extension_degree: Option<u64>,
    e_upper_factors: &[u64],
    forbidden_divisor: u64,
) -> bool {
    let product: u64 = e_upper_factors.iter().product();
    primes::divisors(product)
        .into_iter()
        .filter(|c| extension_degree.is_none_or(|n| n % c == 0))
        .filter(|c| forbidden_divisor <= 1 || c.gcd(&forbidden_divisor) == 1)
        .all(|c| c == 1)
}

/// Exponent of `p` in `norm`, as an integer when it is one.
pub fn integral_exponent(norm: &FactoredReal, p: u64) -> Option<BigInt> {
    let e = norm.exponent(p);
    if e.is_integer() {
        Some(e.to_integer())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored_real::ratio;

    fn fr(s: &str) -> FactoredReal {
        s.parse().unwrap()
    }

    fn local(p: u64, e: u64, f: u64, g: u64, v: Rational) -> PrimeLocalData {
        PrimeLocalData {
            residue_prime: p,
            e,
            f,
            g,
            different_valuation: v,
        }
    }

    fn k_n6() -> FieldDescriptor {
        FieldDescriptor {
            id: "K".into(),
            degree: 100,
            local_data: vec![
                local(2, 5, 4, 5, ratio(4, 5)),
                local(3, 5, 4, 5, ratio(4, 5)),
                local(5, 20, 1, 5, ratio(23, 20)),
            ],
            declared_root_disc: fr("5^23/20 * 6^4/5"),
            defining_polynomial: vec![],
            formal_primes: BTreeMap::from([(
                "pi_K".to_string(),
                FormalPrime { norm: 5, count: 5 },
            )]),
        }
    }

    #[test]
    fn fontaine_bounds() {
        assert_eq!(fontaine_exponent_bound(5).unwrap(), ratio(5, 4));
        assert_eq!(fontaine_exponent_bound(3).unwrap(), ratio(3, 2));
        assert_eq!(fontaine_exponent_bound(2).unwrap(), int(2));
        assert_eq!(
            fontaine_exponent_bound(4),
            Err(RamificationError::NotPrime(4))
        );
        assert_eq!(
            fontaine_product_bound(5, &[2, 3]).unwrap(),
            fr("5^5/4 * 6^4/5")
        );
        assert_eq!(
            fontaine_product_bound(3, &[2, 5]).unwrap(),
            fr("3^3/2 * 10^2/3")
        );
    }

    #[test]
    fn tame_exponents() {
        assert_eq!(tame_different_exponent(5), 4);
        assert_eq!(tame_different_exponent(1), 0);
        assert_eq!(tame_different_exponent(12), 11);
    }

    #[test]
    fn filtration_sums() {
        let f = |v: Vec<u64>| wild_different_valuation(&RamificationFiltration::new(v).unwrap());
        assert_eq!(f(vec![5, 5]), 8);
        assert_eq!(f(vec![1]), 0);
        assert_eq!(f(vec![5]), 4);
        assert_eq!(f(vec![5]), tame_different_exponent(5));
        assert_eq!(f(vec![12, 3, 3]), 15);
    }

    #[test]
    fn filtration_validation() {
        assert!(RamificationFiltration::new(vec![]).is_err());
        assert!(RamificationFiltration::new(vec![5, 3]).is_err());
        assert!(RamificationFiltration::new(vec![12, 6]).is_err());
        assert!(RamificationFiltration::new(vec![4, 5]).is_err());
        assert!(RamificationFiltration::new(vec![20, 5, 5, 1]).is_ok());
        assert!(RamificationFiltration::new(vec![5]).unwrap().is_tame());
        assert!(!RamificationFiltration::new(vec![5, 5]).unwrap().is_tame());
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(wild_candidate_exponents(5, 5, 10), BTreeSet::from([8]));
        assert!(wild_candidate_exponents(5, 5, 5).is_empty());
        assert_eq!(
            wild_candidate_exponents(3, 3, 10),
            BTreeSet::from([4, 6, 8])
        );
    }

    #[test]
    fn root_disc_of_n6_field() {
        let k = k_n6();
        assert_eq!(
            root_disc_from_local_data(&k).unwrap(),
            fr("5^23/20 * 2^4/5 * 3^4/5")
        );
        validate_field(&k).unwrap();
        assert!(k.local(5).unwrap().within_fontaine_bound());
    }

    #[test]
    fn root_disc_of_rationals_is_one() {
        let q = FieldDescriptor {
            id: "Q".into(),
            degree: 1,
            local_data: vec![],
            declared_root_disc: FactoredReal::one(),
            defining_polynomial: vec![0, 1],
            formal_primes: BTreeMap::new(),
        };
        assert!(root_disc_from_local_data(&q).unwrap().is_one());
    }

    #[test]
    fn tame_kummer_field() {
        let d = FieldDescriptor {
            id: "Q(zeta5, 24^(1/5))".into(),
            degree: 20,
            local_data: vec![
                local(2, 5, 4, 1, ratio(4, 5)),
                local(3, 5, 4, 1, ratio(4, 5)),
                local(5, 4, 1, 5, ratio(3, 4)),
            ],
            declared_root_disc: fr("5^3/4 * 6^4/5"),
            defining_polynomial: vec![],
            formal_primes: BTreeMap::new(),
        };
        assert_eq!(
            root_disc_from_local_data(&d).unwrap(),
            fr("5^3/4 * 2^4/5 * 3^4/5")
        );
    }

    #[test]
    fn local_data_errors() {
        let mut k = k_n6();
        k.local_data[0].g = 4;
        assert!(matches!(
            root_disc_from_local_data(&k),
            Err(RamificationError::InconsistentDegree { prime: 2, .. })
        ));
        let mut k = k_n6();
        k.local_data[0].different_valuation = ratio(9, 10);
        assert!(matches!(
            k.validate_local(),
            Err(RamificationError::BadLocalData { prime: 2, .. })
        ));
        let mut k = k_n6();
        k.local_data[2].different_valuation = ratio(19, 20);
        assert!(matches!(
            k.validate_local(),
            Err(RamificationError::BadLocalData { prime: 5, .. })
        ));
        let mut k = k_n6();
        k.declared_root_disc = fr("5^5/4 * 6^4/5");
        assert!(matches!(
            validate_field(&k),
            Err(RamificationError::RootDiscMismatch { .. })
        ));
    }

    #[test]
    fn transitivity_examples() {
        let l = root_disc_transitive(&fr("5^23/20 * 6^4/5"), &fr("5^5"), 100);
        assert_eq!(l, fr("5^6/5 * 2^4/5 * 3^4/5"));
        assert_eq!(l.compare(&fr("28.926")), std::cmp::Ordering::Less);
        assert_eq!(l.compare(&fr("28.924")), std::cmp::Ordering::Greater);
        let x = fr("7^1/3");
        assert_eq!(root_disc_transitive(&x, &FactoredReal::one(), 9), x);
        let n10 = root_disc_transitive(&fr("3^7/6 * 10^2/3"), &fr("3^63"), 216);
        assert_eq!(n10, fr("3^35/24 * 10^2/3"));
        let iv = n10.decimal_interval(&ratio(1, 1000));
        assert!(iv.lower > crate::factored_real::parse_rational("23.038").unwrap());
        assert!(iv.upper < crate::factored_real::parse_rational("23.041").unwrap());
    }

    #[test]
    fn conductor_exponents() {
        assert_eq!(conductor_from_cyclic_disc(8, 4), Ok(2));
        assert_eq!(conductor_from_cyclic_disc(0, 7), Ok(0));
        assert_eq!(conductor_from_cyclic_disc(4, 2), Ok(2));
        assert!(matches!(
            conductor_from_cyclic_disc(6, 4),
            Err(RamificationError::NotDivisible { .. })
        ));
        assert!(conductor_from_cyclic_disc(6, 0).is_err());
    }

    #[test]
    fn conductor_discriminant_products() {
        let pi2 = FormalIdeal::prime_power("pi_D", 2);
        let mut chars = vec![FormalIdeal::unit()];
        chars.extend(std::iter::repeat_n(pi2, 4));
        assert_eq!(
            conductor_discriminant(&chars).unwrap(),
            FormalIdeal::prime_power("pi_D", 8)
        );
        let trivial = vec![FormalIdeal::unit(); 5];
        assert!(conductor_discriminant(&trivial).unwrap().is_unit());
        assert!(conductor_discriminant(&[FormalIdeal::prime_power("x", 1)]).is_err());
    }

    #[test]
    fn formal_norms() {
        let k = k_n6();
        let disc = FormalIdeal::conjugate_product("pi_K", 5, 8);
        assert_eq!(k.norm(&disc).unwrap(), fr("5^40"));
        assert!(k.norm(&FormalIdeal::prime_power("pi_K.6", 1)).is_err());
        assert!(k.norm(&FormalIdeal::prime_power("rho", 1)).is_err());
        assert_eq!(
            disc.to_string(),
            "pi_K.1^8 * pi_K.2^8 * pi_K.3^8 * pi_K.4^8 * pi_K.5^8"
        );
    }

    #[test]
    fn unramified_constraint_examples() {
        assert!(unramified_degree_constraint(None, &[1, 5], 5));
        assert!(unramified_degree_constraint(None, &[1], 7));
        assert!(!unramified_degree_constraint(None, &[6], 5));
        assert!(!unramified_degree_constraint(Some(4), &[6], 5));
        assert!(unramified_degree_constraint(Some(5), &[6], 5));
    }

    #[test]
    fn integral_exponents() {
        assert_eq!(integral_exponent(&fr("3^63"), 3), Some(BigInt::from(63)));
        assert_eq!(integral_exponent(&fr("3^1/2"), 3), None);
    }
}
