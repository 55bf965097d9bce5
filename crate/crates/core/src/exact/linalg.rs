//! Exact linear algebra over `ℤ` and `ℚ`: determinants, kernels, Hermite
//! reduction and integral LLL.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel over `ℚ`.
pub fn kernel_rational(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the lattice `ker(A) ∩ ℤ^n` for an integer matrix with `n` columns.
pub fn kernel_int(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    // columns of the augmented matrix [A; I], manipulated by unimodular column operations
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = (0..m).map(|i| a[i][j].clone()).collect();
            c.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut r = 0;
    for i in 0..m {
        if r == n {
            break;
        }
        for j in r + 1..n {
            if cols[j][i].is_zero() {
                continue;
            }
            if cols[r][i].is_zero() {
                cols.swap(r, j);
                continue;
            }
            let a0 = cols[r][i].clone();
            let b0 = cols[j][i].clone();
            let e = a0.extended_gcd(&b0);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let ag = &a0 / &g;
            let bg = &b0 / &g;
            let new_r: Vec<BigInt> =
                cols[r].iter().zip(&cols[j]).map(|(u, v)| &x * u + &y * v).collect();
            let new_j: Vec<BigInt> =
                cols[r].iter().zip(&cols[j]).map(|(u, v)| -&bg * u + &ag * v).collect();
            cols[r] = new_r;
            cols[j] = new_j;
        }
        if !cols[r][i].is_zero() {
            r += 1;
        }
    }
    let basis: Vec<Vec<BigInt>> = cols[r..].iter().map(|c| c[m..].to_vec()).collect();
    hermite_rows(basis)
}

/// Row echelon (Hermite) form of a set of linearly independent integer row vectors:
/// pivots strictly increase, pivot entries are positive, entries above pivots are reduced.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].len();
    let k = rows.len();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        for i in r + 1..k {
            if rows[i][c].is_zero() {
                continue;
            }
            if rows[r][c].is_zero() {
                rows.swap(r, i);
                continue;
            }
            let a0 = rows[r][c].clone();
            let b0 = rows[i][c].clone();
            let e = a0.extended_gcd(&b0);
            let ag = &a0 / &e.gcd;
            let bg = &b0 / &e.gcd;
            let nr: Vec<BigInt> = rows[r].iter().zip(&rows[i]).map(|(u, v)| &e.x * u + &e.y * v).collect();
            let ni: Vec<BigInt> = rows[r].iter().zip(&rows[i]).map(|(u, v)| -&bg * u + &ag * v).collect();
            rows[r] = nr;
            rows[i] = ni;
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            rows[r] = rows[r].iter().map(|x| -x).collect();
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                let sub: Vec<BigInt> = rows[i].iter().zip(&rows[r]).map(|(u, v)| u - &q * v).collect();
                rows[i] = sub;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Result of integral LLL reduction.
pub struct LllOutput {
    pub basis: Vec<Vec<BigInt>>,
    /// Squared Gram–Schmidt norms as exact rationals.
    pub gs_norms_sq: Vec<BigRational>,
}

/// Integral LLL reduction (δ = 3/4) of linearly independent integer row vectors.
pub fn lll(basis: Vec<Vec<BigInt>>) -> LllOutput {
    let n = basis.len();
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // 1-based indexing mirrors the textbook presentation.
    let mut b: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(basis).collect();
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    if n == 0 {
        return LllOutput { basis: Vec::new(), gs_norms_sq: Vec::new() };
    }
    d[0] = BigInt::one();
    d[1] = dot(&b[1], &b[1]);
    let mut k = 2;
    let mut kmax = 1;

    fn red(k: usize, l: usize, b: &mut [Vec<BigInt>], d: &[BigInt], lam: &mut [Vec<BigInt>]) {
        let two_l: BigInt = &lam[k][l] << 1u32;
        if two_l.abs() > d[l] {
            // nearest integer to lam[k][l] / d[l]
            let q = (&two_l + &d[l]).div_floor(&(&d[l] << 1u32));
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * &d[l];
            for i in 1..l {
                let v = &q * &lam[l][i];
                lam[k][i] -= v;
            }
        }
    }

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input vectors are linearly dependent");
                    d[k] = u;
                }
            }
        }
        loop {
            red(k, k - 1, &mut b, &d, &mut lam);
            let lhs: BigInt = BigInt::from(4) * &d[k] * &d[k - 2];
            let rhs: BigInt = BigInt::from(3) * &d[k - 1] * &d[k - 1] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                b.swap(k, k - 1);
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
                continue;
            }
            for l in (1..k - 1).rev() {
                red(k, l, &mut b, &d, &mut lam);
            }
            k += 1;
            break;
        }
    }
    let gs = (1..=n).map(|i| BigRational::new(d[i].clone(), d[i - 1].clone())).collect();
    LllOutput { basis: b.into_iter().skip(1).collect(), gs_norms_sq: gs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![bi(&[2, -1, 0]), bi(&[1, 3, 4]), bi(&[0, 5, -2])];
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2 = -54
        assert_eq!(det_int(m), BigInt::from(-54));
        let sing = vec![bi(&[1, 2]), bi(&[2, 4])];
        assert!(det_int(sing).is_zero());
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // x + 2y + 3z = 0 has kernel lattice of index 1
        let a = vec![bi(&[2, 4, 6])];
        let k = kernel_int(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        let rows: Vec<Vec<BigRational>> = k
            .iter()
            .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        assert_eq!(rank(&rows), 2);
        // the 2x2 minors have gcd 1 exactly when the lattice is saturated
        let minors = [(0, 1), (0, 2), (1, 2)].map(|(i, j)| &k[0][i] * &k[1][j] - &k[0][j] * &k[1][i]);
        let g = minors.iter().fold(BigInt::zero(), |g, m| g.gcd(m));
        assert_eq!(g, BigInt::one());
    }

    #[test]
    fn lll_finds_short_relation() {
        // relation 1*3 - 3*1 = 0 among (3, 1) scaled
        let basis = vec![bi(&[1, 0, 3000]), bi(&[0, 1, 1000])];
        let out = lll(basis);
        let first = &out.basis[0];
        assert_eq!(first[2], BigInt::zero());
        assert_eq!(first[0].abs(), BigInt::one());
        assert_eq!(first[1].abs(), BigInt::from(3));
    }
}
