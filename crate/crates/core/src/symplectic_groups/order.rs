use num_bigint::BigUint;
use num_traits::One;

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `|Sp(2g, F_q)| = q^(g^2) · Π_{i=1..g} (q^(2i) - 1)`.
pub fn sp_order_finite_field(genus: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = q.pow(genus * genus);
    for i in 1..=genus {
        acc *= q.pow(2 * i) - BigUint::one();
    }
    acc
}

/// `|Sp(2g, Z/n)|`, multiplicative over the prime-power factors of `n`, with
/// `|Sp(2g, Z/p^k)| = |Sp(2g, F_p)| · p^((k-1)·g(2g+1))`.
pub fn sp_group_order(genus: u32, modulus: u64) -> BigUint {
    assert!(genus >= 1 && modulus >= 2, "need genus >= 1 and modulus >= 2");
    factorize(modulus)
        .into_iter()
        .map(|(p, k)| {
            sp_order_finite_field(genus, p) * BigUint::from(p).pow((k - 1) * genus * (2 * genus + 1))
        })
        .product()
}

/// The `q`-part of `n`.
pub fn prime_part(n: &BigUint, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut n = n.clone();
    let mut part = BigUint::one();
    while (&n % &q) == BigUint::from(0u32) {
        n /= &q;
        part *= &q;
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_orders() {
        assert_eq!(sp_group_order(1, 3), BigUint::from(24u32));
        assert_eq!(sp_group_order(2, 2), BigUint::from(720u32));
        assert_eq!(sp_group_order(2, 3), BigUint::from(51_840u32));
        assert_eq!(sp_group_order(2, 5), BigUint::from(9_360_000u32));
        assert_eq!(sp_group_order(2, 7), BigUint::from(276_595_200u32));
    }

    #[test]
    fn prime_power_lift() {
        // |SL(2, Z/4)| = 48
        assert_eq!(sp_group_order(1, 4), BigUint::from(48u32));
        // level-2 kernel in Sp(4, Z/4) has order 2^10
        assert_eq!(sp_group_order(2, 4), BigUint::from(720u32 * 1024));
    }

    #[test]
    fn factorization_and_parts() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        let n = BigUint::from(51_840u32);
        assert_eq!(prime_part(&n, 2), BigUint::from(128u32));
        assert_eq!(prime_part(&n, 3), BigUint::from(81u32));
        assert_eq!(prime_part(&n, 7), BigUint::from(1u32));
    }

    /// Counts matrices over F_p whose columns realize the standard form,
    /// choosing one column at a time.
    fn brute_sp_order(genus: usize, p: i64) -> u64 {
        let d = 2 * genus;
        let lambda = |i: usize, j: usize| -> i64 {
            if j == i + genus {
                1
            } else if i == j + genus {
                -1
            } else {
                0
            }
        };
        let pair = |x: &[i64], y: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..genus {
                s += x[i] * y[i + genus] - x[i + genus] * y[i];
            }
            s.rem_euclid(p)
        };
        let vectors: Vec<Vec<i64>> = (0..p.pow(d as u32))
            .map(|mut k| {
                (0..d)
                    .map(|_| {
                        let r = k % p;
                        k /= p;
                        r
                    })
                    .collect()
            })
            .collect();
        fn go(
            cols: &mut Vec<usize>,
            d: usize,
            vectors: &[Vec<i64>],
            ok: &dyn Fn(&[i64], &[i64], usize, usize) -> bool,
        ) -> u64 {
            let k = cols.len();
            if k == d {
                return 1;
            }
            let mut n = 0;
            for (idx, v) in vectors.iter().enumerate() {
                if cols.iter().enumerate().all(|(j, &c)| ok(&vectors[c], v, j, k)) {
                    cols.push(idx);
                    n += go(cols, d, vectors, ok);
                    cols.pop();
                }
            }
            n
        }
        let ok = |x: &[i64], y: &[i64], i: usize, j: usize| pair(x, y) == lambda(i, j).rem_euclid(p);
        go(&mut Vec::new(), d, &vectors, &ok)
    }

    #[test]
    fn formula_matches_enumeration() {
        assert_eq!(brute_sp_order(1, 3), 24);
        assert_eq!(brute_sp_order(1, 5), 120);
        assert_eq!(brute_sp_order(2, 2), 720);
        assert_eq!(brute_sp_order(2, 3), 51_840);
        for (g, p) in [(1u32, 3u64), (1, 5), (2, 2), (2, 3)] {
            assert_eq!(
                sp_group_order(g, p),
                BigUint::from(brute_sp_order(g as usize, p as i64))
            );
        }
    }
}
