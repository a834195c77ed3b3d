//! Matrix groups generated by explicit matrices, enumerated by closure.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use crate::factored_real::primes;
use crate::linalg::{Matrix, Subspace};

use super::GroupError;

/// Default element cap for closure enumeration.
pub const CLOSURE_CAP: usize = 1_000_000;

/// Result of a capped closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure<T> {
    Complete(Vec<T>),
    /// More than `limit` elements were found.
    Exceeded {
        limit: usize,
    },
}

/// Breadth-first closure of `gens` under right multiplication, stopping as
/// soon as more than `limit` elements are known.
pub fn closure_within<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    limit: usize,
) -> Closure<T> {
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Closure::Exceeded { limit };
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Closure::Complete(order)
}

/// All elements of the group generated by invertible matrices over `𝔽_ℓ`.
pub fn matrix_group_closure(gens: &[Matrix], cap: usize) -> Result<Vec<Matrix>, GroupError> {
    let first = gens
        .first()
        .ok_or_else(|| GroupError::Precondition("no generators".into()))?;
    if gens
        .iter()
        .any(|g| !g.is_invertible() || g.rows != first.rows || g.ell != first.ell)
    {
        return Err(GroupError::Precondition(
            "generators must be invertible of equal size".into(),
        ));
    }
    match closure_within(
        Matrix::identity(first.ell, first.rows),
        gens,
        |a, b| a.mul(b),
        cap,
    ) {
        Closure::Complete(v) => Ok(v),
        Closure::Exceeded { limit } => Err(GroupError::CapExceeded(limit)),
    }
}

/// Number of nonzero vectors fixed by every generator of an `ℓ`-group.
pub fn ell_group_fixed_points(gens: &[Matrix]) -> Result<u64, GroupError> {
    let elems = matrix_group_closure(gens, CLOSURE_CAP)?;
    let ell = gens[0].ell;
    let mut n = elems.len();
    while n % ell as usize == 0 {
        n /= ell as usize;
    }
    if n != 1 {
        return Err(GroupError::NotAnEllGroup {
            order: elems.len(),
            ell,
        });
    }
    let dim = gens[0].rows;
    let fixed = gens.iter().fold(Subspace::full(ell, dim), |acc, g| {
        acc.intersection(&g.minus_identity().kernel())
    });
    Ok(fixed.cardinality() - 1)
}

/// Element of `𝔽_q[a]/(a^k)` as coefficients of `1, a, …, a^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl TruncatedPoly {
    pub fn new(q: u64, k: usize, coeffs: &[i64]) -> Self {
        assert!(primes::is_prime(q), "{q} is not prime");
        assert!(k >= 1 && coeffs.len() <= k, "need 1 <= len <= k");
        let mut c = vec![0u64; k];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = x.rem_euclid(q as i64) as u64;
        }
        TruncatedPoly { q, coeffs: c }
    }

    pub fn constant(q: u64, k: usize, x: i64) -> Self {
        Self::new(q, k, &[x])
    }

    /// The residue class of `a` (zero when `k = 1`).
    pub fn indeterminate(q: u64, k: usize) -> Self {
        if k == 1 {
            Self::constant(q, 1, 0)
        } else {
            Self::new(q, k, &[0, 1])
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| (a + b) % self.q)
            .collect();
        TruncatedPoly { q: self.q, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| (self.q - a) % self.q).collect();
        TruncatedPoly { q: self.q, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.coeffs.len();
        let mut coeffs = vec![0u64; k];
        for i in 0..k {
            for j in 0..k - i {
                coeffs[i + j] = (coeffs[i + j] + self.coeffs[i] * o.coeffs[j]) % self.q;
            }
        }
        TruncatedPoly { q: self.q, coeffs }
    }

    /// Inverse of a unit via `u⁻¹ = c⁻¹ Σ (-n)^i` with `u = c(1 + n)`, `n` nilpotent.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let k = self.coeffs.len();
        let q = self.q;
        let c_inv = (1..q).find(|x| x * self.coeffs[0] % q == 1)?;
        let scaled = self.mul(&Self::constant(q, k, c_inv as i64));
        let n = scaled.sub(&Self::constant(q, k, 1));
        let mut term = Self::constant(q, k, 1);
        let mut sum = Self::constant(q, k, 0);
        for _ in 0..k {
            sum = sum.add(&term);
            term = term.mul(&n.neg());
        }
        Some(sum.mul(&Self::constant(q, k, c_inv as i64)))
    }

    /// Every element of the ring.
    pub fn all(q: u64, k: usize) -> Vec<Self> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..q as i64).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.iter().map(|c| Self::new(q, k, c)).collect()
    }
}

/// `2×2` matrix over `𝔽_q[a]/(a^k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPolyMatrix {
    pub entries: [[TruncatedPoly; 2]; 2],
}

impl TruncatedPolyMatrix {
    pub fn new(a: TruncatedPoly, b: TruncatedPoly, c: TruncatedPoly, d: TruncatedPoly) -> Self {
        TruncatedPolyMatrix {
            entries: [[a, b], [c, d]],
        }
    }

    pub fn identity(q: u64, k: usize) -> Self {
        let one = TruncatedPoly::constant(q, k, 1);
        let zero = TruncatedPoly::constant(q, k, 0);
        Self::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.entries[i][0]
                .mul(&o.entries[0][j])
                .add(&self.entries[i][1].mul(&o.entries[1][j]))
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn det(&self) -> TruncatedPoly {
        let [[a, b], [c, d]] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn inverse(&self) -> Option<Self> {
        let di = self.det().inverse()?;
        let [[a, b], [c, d]] = &self.entries;
        Some(Self::new(
            d.mul(&di),
            b.neg().mul(&di),
            c.neg().mul(&di),
            a.mul(&di),
        ))
    }
}

/// `σ = [[1, x], [0, 1]]` and `τ = [[1, 0], [1, 1]]`.
fn sigma_tau(q: u64, k: usize, x: &TruncatedPoly) -> (TruncatedPolyMatrix, TruncatedPolyMatrix) {
    let one = TruncatedPoly::constant(q, k, 1);
    let zero = TruncatedPoly::constant(q, k, 0);
    let sigma = TruncatedPolyMatrix::new(one.clone(), x.clone(), zero.clone(), one.clone());
    let tau = TruncatedPolyMatrix::new(one.clone(), zero, one.clone(), one);
    (sigma, tau)
}

/// Order of `⟨σ, τ⟩ ⊆ GL_2(𝔽_q[a]/(a^k))` with `σ = [[1, a], [0, 1]]`,
/// `τ = [[1, 0], [1, 1]]`.
pub fn nilpotent_pair_group_order(q: u64, k: usize) -> Result<usize, GroupError> {
    nilpotent_pair_group_order_with_cap(q, k, CLOSURE_CAP)
}

pub fn nilpotent_pair_group_order_with_cap(
    q: u64,
    k: usize,
    cap: usize,
) -> Result<usize, GroupError> {
    if !primes::is_prime(q) || k == 0 {
        return Err(GroupError::Precondition("need a prime q and k >= 1".into()));
    }
    let (sigma, tau) = sigma_tau(q, k, &TruncatedPoly::indeterminate(q, k));
    match closure_within(
        TruncatedPolyMatrix::identity(q, k),
        &[sigma, tau],
        |a, b| a.mul(b),
        cap,
    ) {
        Closure::Complete(v) => Ok(v.len()),
        Closure::Exceeded { limit } => Err(GroupError::CapExceeded(limit)),
    }
}

/// Whether `[σ, τ] σ = σ [σ, τ]` for `σ = [[1, x], [0, 1]]`,
/// `τ = [[1, 0], [1, 1]]`, with `[σ, τ] = σ τ σ⁻¹ τ⁻¹`.
pub fn commutation_relation_holds(x: &TruncatedPoly) -> bool {
    let k = x.coeffs().len();
    let (sigma, tau) = sigma_tau(x.q, k, x);
    let comm = sigma
        .mul(&tau)
        .mul(&sigma.inverse().expect("unipotent"))
        .mul(&tau.inverse().expect("unipotent"));
    comm.mul(&sigma) == sigma.mul(&comm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_pair_orders() {
        assert_eq!(nilpotent_pair_group_order(3, 1).unwrap(), 3);
        for k in 2..=3 {
            let n = nilpotent_pair_group_order(3, k).unwrap();
            assert_ne!(27 % n, 0, "k = {k}, order {n}");
        }
        assert!(matches!(
            nilpotent_pair_group_order_with_cap(3, 3, 100),
            Err(GroupError::CapExceeded(100))
        ));
    }

    #[test]
    fn truncated_ring_arithmetic() {
        let a = TruncatedPoly::indeterminate(3, 3);
        let a3 = a.mul(&a).mul(&a);
        assert!(a3.is_zero());
        assert!(a.inverse().is_none());
        for u in TruncatedPoly::all(3, 3)
            .into_iter()
            .filter(TruncatedPoly::is_unit)
        {
            let v = u.inverse().unwrap();
            assert_eq!(u.mul(&v), TruncatedPoly::constant(3, 3, 1));
        }
    }

    #[test]
    fn commutation_scalars() {
        for x in 0..3 {
            assert_eq!(
                commutation_relation_holds(&TruncatedPoly::constant(3, 1, x)),
                x == 0
            );
        }
    }

    #[test]
    fn commutation_indeterminate() {
        // a^2 survives from k = 3 on, and there the relation forces a = 0.
        for k in 1..=5 {
            let holds = commutation_relation_holds(&TruncatedPoly::indeterminate(3, k));
            assert_eq!(holds, k <= 2, "k = {k}");
        }
    }

    #[test]
    fn commutation_solutions_square_to_zero() {
        for k in 1..=5 {
            for x in TruncatedPoly::all(3, k) {
                let square_zero = x.mul(&x).is_zero();
                assert_eq!(
                    commutation_relation_holds(&x),
                    square_zero,
                    "k = {k}, x = {:?}",
                    x.coeffs()
                );
            }
        }
    }

    #[test]
    fn fixed_points() {
        let id = Matrix::identity(5, 2);
        assert_eq!(ell_group_fixed_points(&[id]).unwrap(), 24);
        let j = Matrix::from_rows(5, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(ell_group_fixed_points(&[j]).unwrap(), 4);
        let bad = Matrix::from_rows(5, &[vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            ell_group_fixed_points(&[bad]),
            Err(GroupError::NotAnEllGroup { order: 4, ell: 5 })
        ));
    }
}
