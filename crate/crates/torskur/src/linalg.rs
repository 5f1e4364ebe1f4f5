//! Exact linear algebra over ℤ, ℚ and F_p: rank, Hermite and Smith normal
//! forms, lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn cols_of(m: &IntMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = cols_of(a);
    assert_eq!(k, b.len(), "dimension mismatch");
    let c = cols_of(b);
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            s += &row[t] * &b[t][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn row_combine(m: &mut IntMatrix, i: usize, k: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    // (row_i, row_k) <- (s row_i + t row_k, u row_i + v row_k)
    let (ri, rk) = (m[i].clone(), m[k].clone());
    m[i] = ri.iter().zip(&rk).map(|(a, b)| s * a + t * b).collect();
    m[k] = ri.iter().zip(&rk).map(|(a, b)| u * a + v * b).collect();
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q * row_src
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular,
/// `H = U·m`, pivots positive, entries above each pivot in `[0, pivot)`,
/// zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = cols_of(m);
    let mut h = m.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        for k in r + 1..rows {
            if h[k][j].is_zero() {
                continue;
            }
            let a = h[r][j].clone();
            let b = h[k][j].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (uu, vv) = (-(&b / &g), &a / &g);
            row_combine(&mut h, r, k, &s, &t, &uu, &vv);
            row_combine(&mut u, r, k, &s, &t, &uu, &vv);
        }
        if h[r][j].is_zero() {
            continue;
        }
        if h[r][j].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..r {
            let q = h[i][j].div_floor(&h[r][j]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the HNF: a canonical basis of the row lattice.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Smith normal form: `(D, U, V)` with `D = U·m·V` diagonal, `d_i | d_{i+1}`, `d_i ≥ 0`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = cols_of(m);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let swap_cols = |a: &mut IntMatrix, i: usize, j: usize| a.iter_mut().for_each(|r| r.swap(i, j));
    let col_axpy = |a: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
        for r in a.iter_mut() {
            let s = r[src].clone();
            r[dst] -= q * s;
        }
    };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t
            let piv = d[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            d[t].iter_mut().for_each(|x| *x = -&*x);
            u[t].iter_mut().for_each(|x| *x = -&*x);
        }
    }
    (d, u, v)
}

pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(m);
    (0..d.len().min(cols_of(&d))).map(|i| d[i][i].clone()).filter(|x| !x.is_zero()).collect()
}

/// Integer coefficients `a` with `a·basis = target`, if they exist.
pub fn lattice_membership(basis: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    assert_eq!(cols_of(basis), target.len(), "length mismatch");
    let (h, u) = hermite_normal_form(basis);
    let mut residual: Vec<BigInt> = target.to_vec();
    let mut a = vec![BigInt::zero(); h.len()];
    for (i, row) in h.iter().enumerate() {
        let Some(j) = row.iter().position(|x| !x.is_zero()) else {
            break;
        };
        if residual[j].is_zero() {
            continue;
        }
        let (q, r) = residual[j].div_rem(&row[j]);
        if !r.is_zero() {
            return None;
        }
        for (res, x) in residual.iter_mut().zip(row) {
            *res -= &q * x;
        }
        a[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let coeffs = (0..basis.len()).map(|k| a.iter().zip(&u).map(|(ai, urow)| ai * &urow[k]).sum()).collect();
    Some(coeffs)
}

/// Rank of an integer matrix modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()).collect();
    rank_u64(&mut a, p)
}

fn rank_u64(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut r = 0;
    for j in 0..cols {
        let Some(pi) = (r..rows).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(r, pi);
        let inv = powmod(a[r][j], p - 2);
        for i in r + 1..rows {
            if a[i][j] == 0 {
                continue;
            }
            let f = mulmod(a[i][j], inv);
            for k in j..cols {
                let sub = mulmod(f, a[r][k]);
                a[i][k] = (a[i][k] + p - sub) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank_z(m: &IntMatrix) -> usize {
    let rows = m.len();
    let cols = cols_of(m);
    // a large prime gives a lower bound; equal to the maximum possible means done
    const P: u64 = 2305843009213693951;
    let lower = rank_mod_p(m, P);
    if lower == rows.min(cols) {
        return lower;
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for j in 0..cols {
        let Some(pi) = (r..rows).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(r, pi);
        for i in r + 1..rows {
            for k in j + 1..cols {
                a[i][k] = (&a[r][j] * &a[i][k] - &a[i][j] * &a[r][k]) / &prev;
            }
            a[i][j] = BigInt::zero();
        }
        prev = a[r][j].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Clear denominators row by row.
pub fn integerize(m: &[Vec<BigRational>]) -> IntMatrix {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Rank over a field (ℚ or F_p). Over ℤ the caller must choose ℚ or use HNF.
pub fn rank(m: &[Vec<BigRational>], coeff: Coeff) -> Result<usize> {
    match coeff {
        Coeff::Z => Err(Error::Invalid("rank over Z is not defined here; embed in Q or use HNF".into())),
        Coeff::Q => Ok(rank_z(&integerize(m))),
        Coeff::Fp(p) => {
            let red: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| residue(x, p)).collect()).collect();
            let mut red = red;
            Ok(rank_u64(&mut red, p))
        }
    }
}

fn residue(x: &BigRational, p: u64) -> u64 {
    let v = Coeff::Fp(p).normalize(x.clone());
    v.to_integer().to_u64().unwrap()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_example() {
        let m = from_i64(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(matmul(&u, &m), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn hnf_trivial() {
        let i = identity(3);
        assert_eq!(hermite_normal_form(&i), (i.clone(), i.clone()));
        let z = from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(hermite_normal_form(&z), (z.clone(), identity(2)));
    }

    #[test]
    fn snf_examples() {
        let m = from_i64(&[&[2, 4], &[6, 8]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(d, from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(matmul(&matmul(&u, &m), &v), d);
        assert_eq!(smith_normal_form(&from_i64(&[&[0]])).0, from_i64(&[&[0]]));
    }

    #[test]
    fn membership() {
        let b = from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(lattice_membership(&b, &[BigInt::from(1), BigInt::from(0)]), None);
        assert_eq!(lattice_membership(&b, &[BigInt::from(2), BigInt::from(3)]), Some(vec![BigInt::from(1), BigInt::from(3)]));
    }

    #[test]
    fn ranks() {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let i3: Vec<Vec<BigRational>> = (0..3).map(|i| (0..3).map(|j| q((i == j) as i64)).collect()).collect();
        assert_eq!(rank(&i3, Coeff::Q).unwrap(), 3);
        let ones = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(rank(&ones, Coeff::Fp(2)).unwrap(), 1);
        assert!(rank(&ones, Coeff::Z).is_err());
        // rank deficiency hidden from small primes but not from Q
        let m = from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_z(&m), 2);
    }
}
