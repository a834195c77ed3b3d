//! Small-integer prime utilities. Every integer this crate factors is a
//! literal from a data file or a script, so trial division is enough.

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, multiplicity)` pairs in increasing order.
/// `factorize(1)` is empty. Panics on zero.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "cannot factor zero");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, k) in factorize(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_numbers() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(6), vec![(2, 1), (3, 1)]);
        assert_eq!(factorize(576), vec![(2, 6), (3, 2)]);
        assert_eq!(factorize(6329), vec![(6329, 1)]);
        assert_eq!(factorize(1000), vec![(2, 3), (5, 3)]);
    }

    #[test]
    fn primality_agrees_with_factorization() {
        for n in 2..2000u64 {
            let f = factorize(n);
            assert_eq!(is_prime(n), f.len() == 1 && f[0].1 == 1, "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(25), vec![1, 5, 25]);
    }
}
