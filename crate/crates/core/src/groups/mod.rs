//! Finite groups as validated multiplication tables, with the exhaustive
//! checks the proofs need: automorphism counts, abelianizations, normal and
//! Sylow subgroups, surjections and isomorphism.
//!
//! Subgroups are bitmasks over element indices, which caps tabled groups at
//! 128 elements. Matrix groups too large for a table live in [`matrix`].

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::factored_real::primes;

pub mod library;
pub mod matrix;

pub use library::group_library;
pub use matrix::{
    commutation_relation_holds, ell_group_fixed_points, matrix_group_closure,
    nilpotent_pair_group_order, Closure, TruncatedPoly, TruncatedPolyMatrix,
};

/// Largest order a tabled group may have.
pub const MAX_TABLE_ORDER: usize = 128;

/// Subgroup as a set of element indices.
pub type Subgroup = u128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group order {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("no shipped presentations for order {0}")]
    UnsupportedOrder(u64),
    #[error("{0}")]
    Precondition(String),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generated group has order {order}, not a power of {ell}")]
    NotAnEllGroup { order: usize, ell: u64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u8>,
    inverses: Vec<u8>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FiniteGroup {
    /// Validates shape, identity at index 0, inverses and associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |s: String| Err(GroupError::InvalidTable(s));
        if n == 0 {
            return bad("empty table".into());
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if table.iter().any(|r| r.len() != n) {
            return bad("table is not square".into());
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("entry out of range".into());
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return bad("element 0 is not the identity".into());
            }
        }
        let mut inverses = vec![0u8; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == 0) {
                Some(j) if table[j][i] == 0 => inverses[i] = j as u8,
                _ => return bad(format!("element {i} has no two-sided inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            n,
            table: table.into_iter().flatten().map(|x| x as u8).collect(),
            inverses,
        })
    }

    /// Table of a concrete group given by its elements (identity first) and
    /// multiplication; the elements must be closed under `mul`.
    pub fn from_elements<T: Clone + Eq + Hash>(
        name: impl Into<String>,
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != elements.len() {
            return Err(GroupError::InvalidTable("repeated element".into()));
        }
        let mut table = vec![vec![0usize; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                table[i][j] = *index.get(&c).ok_or_else(|| {
                    GroupError::InvalidTable("elements not closed under multiplication".into())
                })?;
            }
        }
        Self::from_table(name, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subgroup {
        self.mask_of((0..self.n).filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a))))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn full(&self) -> Subgroup {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    pub fn trivial(&self) -> Subgroup {
        1
    }

    fn mask_of(&self, elems: impl IntoIterator<Item = usize>) -> Subgroup {
        elems.into_iter().fold(0, |m, e| m | (1u128 << e))
    }

    pub fn elements_of(&self, h: Subgroup) -> Vec<usize> {
        (0..self.n).filter(|&i| h >> i & 1 == 1).collect()
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut mask: Subgroup = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if mask >> y & 1 == 0 {
                    mask |= 1 << y;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    fn join(&self, a: Subgroup, b: Subgroup) -> Subgroup {
        let mut gens = self.elements_of(a);
        gens.extend(self.elements_of(b));
        self.generate(&gens)
    }

    /// Every subgroup, found by closing the cyclic subgroups under joins.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<Subgroup> = (0..self.n).map(|a| self.generate(&[a])).collect();
        cyclic.sort_unstable();
        cyclic.dedup();
        let mut seen: std::collections::HashSet<Subgroup> = cyclic.iter().copied().collect();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &h in &frontier {
                for &c in &cyclic {
                    if h & c != c {
                        let j = self.join(h, c);
                        if seen.insert(j) {
                            next.push(j);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = seen.into_iter().collect();
        out.sort_by_key(|h| (h.count_ones(), *h));
        out
    }

    pub fn is_normal(&self, h: Subgroup) -> bool {
        let elems = self.elements_of(h);
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            elems
                .iter()
                .all(|&x| h >> self.mul(self.mul(g, x), gi) & 1 == 1)
        })
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let comms: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.generate(&comms)
    }

    /// `G / N` for a normal subgroup `N`; coset `gN` is numbered by first
    /// appearance of its smallest element.
    pub fn quotient(&self, normal: Subgroup) -> Result<FiniteGroup, GroupError> {
        if normal & 1 == 0 || !self.is_normal(normal) {
            return Err(GroupError::Precondition(
                "quotient needs a normal subgroup".into(),
            ));
        }
        let n_elems = self.elements_of(normal);
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset_of[g] == usize::MAX {
                for &x in &n_elems {
                    coset_of[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(format!("{}/N", self.name), table)
    }

    /// A subgroup as a group in its own right.
    pub fn subgroup_as_group(&self, h: Subgroup) -> Result<FiniteGroup, GroupError> {
        let elems = self.elements_of(h);
        if elems.first() != Some(&0) {
            return Err(GroupError::Precondition("not a subgroup".into()));
        }
        FiniteGroup::from_elements(format!("sub({})", self.name), &elems, |a, b| {
            self.mul(*a, *b)
        })
    }

    /// Invariant factors `d_1 | d_2 | …` of an abelian group; empty for the
    /// trivial group.
    pub fn abelian_invariants(&self) -> Result<Vec<u64>, GroupError> {
        if !self.is_abelian() {
            return Err(GroupError::Precondition(format!(
                "{} is not abelian",
                self.name
            )));
        }
        let orders: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        for (p, a) in primes::factorize(self.n as u64) {
            // log_p #{x : x^{p^k} = 1} = Σ_i min(k, λ_i).
            let mut logs = vec![0u32];
            for k in 1..=a {
                let pk = p.pow(k) as usize;
                let c = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                logs.push(ilog(c, p));
            }
            let at_least: Vec<u32> = (1..=a as usize).map(|k| logs[k] - logs[k - 1]).collect();
            let mut parts = Vec::new();
            for k in 1..=a as usize {
                let next = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..at_least[k - 1] - next {
                    parts.push(p.pow(k as u32));
                }
            }
            parts.sort_unstable_by(|x, y| y.cmp(x));
            by_prime.push(parts);
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut out: Vec<u64> = (0..len)
            .map(|i| {
                by_prime
                    .iter()
                    .map(|ps| ps.get(i).copied().unwrap_or(1))
                    .product()
            })
            .collect();
        out.reverse();
        Ok(out)
    }

    /// Invariant factors of `G / [G, G]`.
    pub fn abelianization(&self) -> Vec<u64> {
        self.quotient(self.derived_subgroup())
            .and_then(|q| q.abelian_invariants())
            .expect("the derived subgroup is normal with abelian quotient")
    }

    pub fn has_normal_subgroup_of_order(&self, n: usize) -> Result<bool, GroupError> {
        if n == 0 || !self.n.is_multiple_of(n) {
            return Err(GroupError::Precondition(format!(
                "{n} does not divide {}",
                self.n
            )));
        }
        Ok(self
            .all_subgroups()
            .into_iter()
            .any(|h| h.count_ones() as usize == n && self.is_normal(h)))
    }

    /// Whether the Sylow `p`-subgroup is unique.
    pub fn unique_sylow_check(&self, p: u64) -> Result<bool, GroupError> {
        if !primes::is_prime(p) || !(self.n as u64).is_multiple_of(p) {
            return Err(GroupError::Precondition(format!(
                "{p} is not a prime divisor of {}",
                self.n
            )));
        }
        let mut sylow = 1usize;
        while self.n.is_multiple_of(sylow * p as usize) {
            sylow *= p as usize;
        }
        let count = self
            .all_subgroups()
            .into_iter()
            .filter(|h| h.count_ones() as usize == sylow)
            .count();
        Ok(count == 1)
    }

    /// A generating set chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut h: Subgroup = 1;
        for a in by_order {
            if h == self.full() {
                break;
            }
            if h >> a & 1 == 0 {
                gens.push(a);
                h = self.generate(&gens);
            }
        }
        gens
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism into `target`, if one
    /// exists. `gens` must generate `self`.
    pub fn extend_hom(
        &self,
        gens: &[usize],
        images: &[usize],
        target: &FiniteGroup,
    ) -> Option<Vec<usize>> {
        let mut phi = vec![usize::MAX; self.n];
        phi[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let val = target.mul(phi[x], img);
                if phi[y] == usize::MAX {
                    phi[y] = val;
                    queue.push_back(y);
                } else if phi[y] != val {
                    return None;
                }
            }
        }
        debug_assert!(
            phi.iter().all(|&v| v != usize::MAX),
            "generators do not generate"
        );
        Some(phi)
    }

    /// Calls `visit` on every homomorphism `self → target` until it returns
    /// `true`; returns whether any call did.
    fn search_homs(&self, target: &FiniteGroup, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..target.n)
                    .filter(|&t| o.is_multiple_of(target.element_order(t)))
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; gens.len()];
        if candidates.iter().any(Vec::is_empty) {
            return false;
        }
        loop {
            let images: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(phi) = self.extend_hom(&gens, &images, target) {
                if visit(&phi) {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < candidates[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// Whether some homomorphism onto `target` exists.
    pub fn surjects_onto(&self, target: &FiniteGroup) -> bool {
        if !self.n.is_multiple_of(target.n) {
            return false;
        }
        if target.n == 1 {
            return true;
        }
        self.search_homs(target, |phi| {
            let mut img: Subgroup = 0;
            for &v in phi {
                img |= 1 << v;
            }
            img == target.full()
        })
    }

    /// Number of automorphisms; brute force, so limited to order 12.
    pub fn automorphism_count(&self) -> Result<u64, GroupError> {
        if self.n > 12 {
            return Err(GroupError::Precondition(format!(
                "automorphism enumeration is limited to order 12 (got {})",
                self.n
            )));
        }
        let mut count = 0u64;
        self.search_homs(self, |phi| {
            let mut img: Subgroup = 0;
            for &v in phi {
                img |= 1 << v;
            }
            if img == self.full() {
                count += 1;
            }
            false
        });
        Ok(count)
    }

    /// Cheap isomorphism invariants.
    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut orders = BTreeMap::new();
        for a in 0..self.n {
            *orders.entry(self.element_order(a)).or_insert(0usize) += 1;
        }
        let squares = self
            .mask_of((0..self.n).map(|a| self.mul(a, a)))
            .count_ones() as usize;
        GroupFingerprint {
            order: self.n,
            element_orders: orders.into_iter().collect(),
            center: self.center().count_ones() as usize,
            derived: self.derived_subgroup().count_ones() as usize,
            abelianization: self.abelianization(),
            squares,
        }
    }

    /// Invariants first, then a search for a bijective homomorphism.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.fingerprint() != other.fingerprint() {
            return false;
        }
        self.search_homs(other, |phi| {
            let mut img: Subgroup = 0;
            for &v in phi {
                img |= 1 << v;
            }
            img == other.full()
        })
    }

    /// Whether `self` has a normal subgroup isomorphic to `kernel` with
    /// quotient isomorphic to `quotient`.
    pub fn is_extension_of(&self, kernel: &FiniteGroup, quotient: &FiniteGroup) -> bool {
        if kernel.n * quotient.n != self.n {
            return false;
        }
        self.all_subgroups().into_iter().any(|h| {
            h.count_ones() as usize == kernel.n
                && self.is_normal(h)
                && self
                    .subgroup_as_group(h)
                    .is_ok_and(|s| s.is_isomorphic(kernel))
                && self.quotient(h).is_ok_and(|q| q.is_isomorphic(quotient))
        })
    }

    /// Direct product with pairs `(a, b)` numbered `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let elems: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|a| (0..other.n).map(move |b| (a, b)))
            .collect();
        FiniteGroup::from_elements(format!("{} x {}", self.name, other.name), &elems, |x, y| {
            (self.mul(x.0, y.0), other.mul(x.1, y.1))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub element_orders: Vec<(usize, usize)>,
    pub center: usize,
    pub derived: usize,
    pub abelianization: Vec<u64>,
    pub squares: usize,
}

fn ilog(mut c: u64, p: u64) -> u32 {
    let mut k = 0;
    while c > 1 {
        debug_assert!(c.is_multiple_of(p));
        c /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("e", vec![]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![1]]).is_err());
        // Latin square with identity but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", loop5),
            Err(GroupError::InvalidTable(_))
        ));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(alternating4().abelianization(), vec![3]);
        assert_eq!(dihedral(3).abelianization(), vec![2]);
        assert_eq!(cyclic(12).abelianization(), vec![12]);
        assert_eq!(abelian(&[2, 6]).abelianization(), vec![2, 6]);
        assert_eq!(
            abelian(&[4, 2, 3]).abelian_invariants().unwrap(),
            vec![2, 12]
        );
        assert_eq!(quaternion(8).abelianization(), vec![2, 2]);
        assert_eq!(cyclic(1).abelianization(), Vec::<u64>::new());
        assert!(dihedral(4).abelian_invariants().is_err());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(cyclic(5).automorphism_count().unwrap(), 4);
        assert_eq!(abelian(&[2, 2]).automorphism_count().unwrap(), 6);
        assert_eq!(dihedral(3).automorphism_count().unwrap(), 6);
        assert_eq!(quaternion(8).automorphism_count().unwrap(), 24);
        assert_eq!(alternating4().automorphism_count().unwrap(), 24);
        assert!(cyclic(13).automorphism_count().is_err());
    }

    #[test]
    fn normal_subgroups_of_a4() {
        let a4 = alternating4();
        assert!(!a4.has_normal_subgroup_of_order(6).unwrap());
        assert!(!a4.has_normal_subgroup_of_order(3).unwrap());
        assert!(a4.has_normal_subgroup_of_order(4).unwrap());
        assert!(a4.has_normal_subgroup_of_order(12).unwrap());
        assert!(a4.has_normal_subgroup_of_order(5).is_err());
        assert_eq!(a4.all_subgroups().len(), 10);
    }

    #[test]
    fn sylow_uniqueness() {
        assert!(alternating4().unique_sylow_check(2).unwrap());
        assert!(!alternating4().unique_sylow_check(3).unwrap());
        assert!(dihedral(3).unique_sylow_check(3).unwrap());
        assert!(!dihedral(3).unique_sylow_check(2).unwrap());
        assert!(cyclic(6).unique_sylow_check(5).is_err());
    }

    #[test]
    fn surjections() {
        let z5 = cyclic(5);
        let z5sq = abelian(&[5, 5]);
        assert!(cyclic(10).surjects_onto(&z5));
        assert!(!dihedral(5).surjects_onto(&z5));
        assert!(dihedral(5).surjects_onto(&cyclic(2)));
        assert!(heisenberg(5).surjects_onto(&z5sq));
        assert!(!cyclic(125).surjects_onto(&z5sq));
        assert!(cyclic(7).surjects_onto(&cyclic(1)));
    }

    #[test]
    fn isomorphism_and_extensions() {
        assert!(cyclic(6).is_isomorphic(&abelian(&[2, 3])));
        assert!(!cyclic(4).is_isomorphic(&abelian(&[2, 2])));
        assert!(dihedral(3).is_isomorphic(&metacyclic(3, 2, 0, 2)));
        assert!(heisenberg(5).is_extension_of(&abelian(&[5, 5]), &cyclic(5)));
        assert!(!cyclic(125).is_extension_of(&abelian(&[5, 5]), &cyclic(5)));
    }
}
