//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;

/// `U · A · V = D`, with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_r` followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `D`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }

    /// Checks the defining identities against the original matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if &(&self.u * a) * &self.v != self.d {
            return false;
        }
        if self.u.determinant().abs() != BigInt::one() || self.v.determinant().abs() != BigInt::one()
        {
            return false;
        }
        let r = self.d.rows().min(self.d.cols());
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<&BigInt> = (0..r).map(|i| self.d.get(i, i)).collect();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        for w in diag.windows(2) {
            if w[0].is_zero() {
                if !w[1].is_zero() {
                    return false;
                }
            } else if !(w[1] % w[0]).is_zero() {
                return false;
            }
        }
        true
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let t = self.a.get(i, c).clone();
            self.a.set(i, c, self.a.get(j, c).clone());
            self.a.set(j, c, t);
        }
        for c in 0..self.u.cols() {
            let t = self.u.get(i, c).clone();
            self.u.set(i, c, self.u.get(j, c).clone());
            self.u.set(j, c, t);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let t = self.a.get(r, i).clone();
            self.a.set(r, i, self.a.get(r, j).clone());
            self.a.set(r, j, t);
        }
        for r in 0..self.v.rows() {
            let t = self.v.get(r, i).clone();
            self.v.set(r, i, self.v.get(r, j).clone());
            self.v.set(r, j, t);
        }
    }

    /// row_dst += f * row_src
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.a.cols() {
            let x = self.a.get(src, c) * f;
            *self.a.entry_mut(dst, c) += x;
        }
        for c in 0..self.u.cols() {
            let x = self.u.get(src, c) * f;
            *self.u.entry_mut(dst, c) += x;
        }
    }

    /// (row_i, row_j) <- (p row_i + q row_j, r row_i + s row_j), with ps - qr = 1.
    fn mix_rows(&mut self, i: usize, j: usize, [p, q, r, s]: &[BigInt; 4]) {
        fn mix(m: &mut IntMatrix, i: usize, j: usize, k: &[&BigInt; 4]) {
            for c in 0..m.cols() {
                let (x, y) = (m.get(i, c).clone(), m.get(j, c).clone());
                m.set(i, c, k[0] * &x + k[1] * &y);
                m.set(j, c, k[2] * &x + k[3] * &y);
            }
        }
        mix(&mut self.a, i, j, &[p, q, r, s]);
        mix(&mut self.u, i, j, &[p, q, r, s]);
    }

    /// Column analogue of `mix_rows`.
    fn mix_cols(&mut self, i: usize, j: usize, [p, q, r, s]: &[BigInt; 4]) {
        fn mix(m: &mut IntMatrix, i: usize, j: usize, k: &[&BigInt; 4]) {
            for row in 0..m.rows() {
                let (x, y) = (m.get(row, i).clone(), m.get(row, j).clone());
                m.set(row, i, k[0] * &x + k[1] * &y);
                m.set(row, j, k[2] * &x + k[3] * &y);
            }
        }
        mix(&mut self.a, i, j, &[p, q, r, s]);
        mix(&mut self.v, i, j, &[p, q, r, s]);
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            let x = -self.a.get(i, c);
            self.a.set(i, c, x);
        }
        for c in 0..self.u.cols() {
            let x = -self.u.get(i, c);
            self.u.set(i, c, x);
        }
    }
}

/// Unimodular 2x2 block taking `(x, y)` to `(gcd, 0)`; `None` if `y` is already 0.
/// When `x | y` this is a plain elimination, which keeps entries small.
fn bezout(x: &BigInt, y: &BigInt) -> Option<[BigInt; 4]> {
    if y.is_zero() {
        return None;
    }
    if !x.is_zero() && (y % x).is_zero() {
        return Some([BigInt::one(), BigInt::zero(), -(y / x), BigInt::one()]);
    }
    let e = x.extended_gcd(y);
    Some([e.x, e.y, -(y / &e.gcd), x / &e.gcd])
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = w.a.get(i, j);
                if !x.is_zero()
                    && best.map_or(true, |(bi, bj)| x.abs() < w.a.get(bi, bj).abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                if let Some(k) = bezout(w.a.get(t, t), w.a.get(i, t)) {
                    w.mix_rows(t, i, &k);
                }
            }
            let mut dirty = false;
            for j in t + 1..n {
                if let Some(k) = bezout(w.a.get(t, t), w.a.get(t, j)) {
                    w.mix_cols(t, j, &k);
                    dirty = true;
                }
            }
            // column ops may refill column t
            if dirty && (t + 1..m).any(|i| !w.a.get(i, t).is_zero()) {
                continue;
            }
            // Row and column t are clear; enforce divisibility on the rest.
            let pivot = w.a.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(w.a.get(i, j) % &pivot).is_zero());
            match offender {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    SnfResult {
        u: w.u,
        d: w.a,
        v: w.v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(a: &IntMatrix) -> Vec<i64> {
        let r = smith_normal_form(a);
        assert!(r.verify(a), "failed reconstruction for {a}");
        r.elementary_divisors()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity() {
        assert_eq!(divisors(&IntMatrix::identity(2)), vec![1, 1]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        // hand reduction: diag(2,3) ~ diag(1,6)
        assert_eq!(divisors(&IntMatrix::diagonal(&[2, 3])), vec![1, 6]);
    }

    #[test]
    fn single_column() {
        let a = IntMatrix::from_rows(&[vec![1i64], vec![1]]).unwrap();
        let r = smith_normal_form(&a);
        assert!(r.verify(&a));
        assert_eq!(r.d, IntMatrix::from_rows(&[vec![1i64], vec![0]]).unwrap());
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(2, 3);
        let r = smith_normal_form(&z);
        assert!(r.verify(&z));
        assert_eq!(r.rank(), 0);
        let e = IntMatrix::zeros(2, 0);
        assert!(smith_normal_form(&e).verify(&e));
    }

    #[test]
    fn negative_and_nontrivial() {
        let a = IntMatrix::from_rows(&[vec![-4i64, 6], vec![10, -4]]).unwrap();
        // det = 16 - 60 = -44, gcd of entries 2 → (2, 22)
        assert_eq!(divisors(&a), vec![2, 22]);
    }

    #[test]
    fn dense_five_by_five_stays_small() {
        // used to blow up to 50-digit intermediate entries
        let a = IntMatrix::from_rows(&[
            vec![-100i64, 15, 33, 54, -88],
            vec![46, -67, -53, 30, 21],
            vec![19, 100, 83, 98, -39],
            vec![42, -32, 66, 99, -93],
            vec![42, -6, 67, -50, 12],
        ])
        .unwrap();
        let r = smith_normal_form(&a);
        assert!(r.verify(&a));
        assert_eq!(r.elementary_divisors().last().unwrap(), &a.determinant().abs());
    }
}
