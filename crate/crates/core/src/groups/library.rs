//! Compiled-in presentations for every group of order 1 to 20, 25, 27 and 125.

use super::{FiniteGroup, GroupError};

fn build<T: Clone + Eq + std::hash::Hash>(
    name: String,
    elems: Vec<T>,
    mul: impl Fn(&T, &T) -> T,
) -> FiniteGroup {
    FiniteGroup::from_elements(name, &elems, mul).expect("shipped presentation is a group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    build(format!("Z{n}"), (0..n).collect(), |a, b| (a + b) % n)
}

/// `ℤ/m_1 × ⋯ × ℤ/m_k`.
pub fn abelian(moduli: &[usize]) -> FiniteGroup {
    let name = moduli
        .iter()
        .map(|m| format!("Z{m}"))
        .collect::<Vec<_>>()
        .join(" x ");
    build(name, coordinate_vectors(moduli), |a, b| {
        a.iter()
            .zip(b)
            .zip(moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    })
}

fn coordinate_vectors(moduli: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `⟨a, b | a^m = 1, b^n = a^s, b a b⁻¹ = a^r⟩`, elements `a^i b^j`.
pub fn metacyclic(m: usize, n: usize, s: usize, r: usize) -> FiniteGroup {
    let elems: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rpow: Vec<usize> = (0..n)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * r % m;
            Some(cur)
        })
        .collect();
    build(
        format!("<a,b | a^{m}, b^{n}=a^{s}, bab^-1=a^{r}>"),
        elems,
        move |x, y| {
            let (i, j) = *x;
            let (k, l) = *y;
            let mut e = i + k * rpow[j];
            let mut f = j + l;
            if f >= n {
                f -= n;
                e += s;
            }
            (e % m, f)
        },
    )
}

/// `(ℤ/m_1 × ⋯ × ℤ/m_k) ⋊ ℤ/n`, the generator of `ℤ/n` acting by the integer
/// matrix `action` on coordinates.
pub fn semidirect(moduli: &[usize], action: &[Vec<usize>], n: usize) -> FiniteGroup {
    let k = moduli.len();
    let apply = |v: &[usize]| -> Vec<usize> {
        (0..k)
            .map(|i| (0..k).map(|j| action[i][j] * v[j]).sum::<usize>() % moduli[i])
            .collect()
    };
    // powers[j] = action^j applied as a function, tabulated on every vector.
    let vectors = coordinate_vectors(moduli);
    let mut powers: Vec<std::collections::HashMap<Vec<usize>, Vec<usize>>> = Vec::new();
    let mut current: std::collections::HashMap<Vec<usize>, Vec<usize>> =
        vectors.iter().map(|v| (v.clone(), v.clone())).collect();
    for _ in 0..n {
        powers.push(current.clone());
        current = current.into_iter().map(|(v, w)| (v, apply(&w))).collect();
    }
    let elems: Vec<(Vec<usize>, usize)> = vectors
        .iter()
        .flat_map(|v| (0..n).map(move |j| (v.clone(), j)))
        .collect();
    let base = moduli
        .iter()
        .map(|m| format!("Z{m}"))
        .collect::<Vec<_>>()
        .join(" x ");
    build(format!("({base}) : Z{n}"), elems, move |x, y| {
        let twisted = &powers[x.1][&y.0];
        let v =
            x.0.iter()
                .zip(twisted)
                .zip(moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
        (v, (x.1 + y.1) % n)
    })
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, 0, n - 1).with_name(format!("D{}", 2 * n))
}

/// Dicyclic group of order `order` (`Q8`, `Dic3`, `Q16`, `Dic5`).
pub fn quaternion(order: usize) -> FiniteGroup {
    let m = order / 2;
    let name = if order.is_power_of_two() {
        format!("Q{order}")
    } else {
        format!("Dic{}", m / 2)
    };
    metacyclic(m, 2, m / 2, m - 1).with_name(name)
}

pub fn alternating4() -> FiniteGroup {
    semidirect(&[2, 2], &[vec![0, 1], vec![1, 1]], 3).with_name("A4")
}

/// Upper unitriangular `3×3` matrices over `𝔽_p`, as `ℤ/p² ⋊ ℤ/p`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    semidirect(&[p, p], &[vec![1, 1], vec![0, 1]], p).with_name(format!("Heis({p})"))
}

fn product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup {
    a.direct_product(&b).expect("direct product of groups")
}

/// Orders [`group_library`] covers.
pub fn supported_orders() -> Vec<u64> {
    (1..=20).chain([25, 27, 125]).collect()
}

/// One representative of every isomorphism class of the given order.
pub fn group_library(order: u64) -> Result<Vec<FiniteGroup>, GroupError> {
    let n = order as usize;
    let groups = match order {
        1 | 2 | 3 | 5 | 7 | 11 | 13 | 15 | 17 | 19 => vec![cyclic(n)],
        4 | 9 | 25 => vec![cyclic(n), abelian(&[prime_root(n), prime_root(n)])],
        6 | 10 | 14 => vec![cyclic(n), dihedral(n / 2)],
        8 => vec![
            cyclic(8),
            abelian(&[4, 2]),
            abelian(&[2, 2, 2]),
            dihedral(4),
            quaternion(8),
        ],
        12 => vec![
            cyclic(12),
            abelian(&[6, 2]),
            alternating4(),
            dihedral(6),
            quaternion(12),
        ],
        16 => vec![
            cyclic(16),
            abelian(&[4, 4]),
            abelian(&[8, 2]),
            abelian(&[4, 2, 2]),
            abelian(&[2, 2, 2, 2]),
            product(dihedral(4), cyclic(2)),
            product(quaternion(8), cyclic(2)),
            dihedral(8),
            metacyclic(8, 2, 0, 3).with_name("SD16"),
            quaternion(16),
            metacyclic(8, 2, 0, 5).with_name("M16"),
            metacyclic(4, 4, 0, 3).with_name("Z4 : Z4"),
            semidirect(&[4, 2], &[vec![1, 0], vec![1, 1]], 2).with_name("(Z4 x Z2) : Z2"),
            semidirect(&[4, 2], &[vec![1, 2], vec![0, 1]], 2).with_name("Pauli"),
        ],
        18 => vec![
            cyclic(18),
            abelian(&[6, 3]),
            dihedral(9),
            product(dihedral(3), cyclic(3)),
            semidirect(&[3, 3], &[vec![2, 0], vec![0, 2]], 2).with_name("(Z3 x Z3) : Z2"),
        ],
        20 => vec![
            cyclic(20),
            abelian(&[10, 2]),
            dihedral(10),
            quaternion(20),
            metacyclic(5, 4, 0, 2).with_name("F20"),
        ],
        27 => vec![
            cyclic(27),
            abelian(&[9, 3]),
            abelian(&[3, 3, 3]),
            heisenberg(3),
            metacyclic(9, 3, 0, 4).with_name("Z9 : Z3"),
        ],
        125 => vec![
            cyclic(125),
            abelian(&[25, 5]),
            abelian(&[5, 5, 5]),
            heisenberg(5),
            metacyclic(25, 5, 0, 6).with_name("Z25 : Z5"),
        ],
        _ => return Err(GroupError::UnsupportedOrder(order)),
    };
    Ok(groups)
}

fn prime_root(n: usize) -> usize {
    (2..=n).find(|p| p * p == n).expect("square of a prime")
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTS: [usize; 20] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5];

    fn assert_complete(order: u64, expected: usize) {
        let gs = group_library(order).unwrap();
        assert_eq!(gs.len(), expected, "order {order}");
        for g in &gs {
            assert_eq!(g.order() as u64, order, "{g}");
        }
        for i in 0..gs.len() {
            for j in 0..i {
                assert!(!gs[i].is_isomorphic(&gs[j]), "{} ~ {}", gs[i], gs[j]);
            }
        }
    }

    #[test]
    fn counts_and_pairwise_distinct_small() {
        for (i, &c) in COUNTS.iter().enumerate() {
            assert_complete(i as u64 + 1, c);
        }
    }

    #[test]
    fn counts_and_pairwise_distinct_prime_cubes() {
        assert_complete(27, 5);
        assert_complete(125, 5);
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(group_library(21), Err(GroupError::UnsupportedOrder(21)));
        assert!(group_library(0).is_err());
    }

    #[test]
    fn order_twelve_nonabelian_with_three_group_abelianization_is_a4() {
        let hits: Vec<_> = group_library(12)
            .unwrap()
            .into_iter()
            .filter(|g| !g.is_abelian() && g.abelianization() == vec![3])
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].name(), "A4");
    }

    #[test]
    fn order_125_quotients_onto_z5_squared() {
        let z5sq = abelian(&[5, 5]);
        let z5 = cyclic(5);
        let gs = group_library(125).unwrap();
        let surjectors: Vec<&str> = gs
            .iter()
            .filter(|g| g.surjects_onto(&z5sq))
            .map(|g| g.name())
            .collect();
        // Only the cyclic group fails: every noncyclic group of order p^3 has a
        // Frattini quotient of rank at least 2.
        assert_eq!(
            surjectors,
            vec!["Z25 x Z5", "Z5 x Z5 x Z5", "Heis(5)", "Z25 : Z5"]
        );
        for g in gs.iter().filter(|g| g.surjects_onto(&z5sq)) {
            assert!(g.is_extension_of(&z5sq, &z5), "{g}");
        }
    }
}
