//! Finite even-graded commutative Frobenius algebras and the rings
//! `P_n(F) = k[x1..xn] ⊗ F^{⊗n}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poly::{Flavor, Mono, Poly, Ring};
use crate::scalar::{format_scalar, int, parse_scalar, Coeff};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    pub labels: Vec<String>,
    /// actual degrees (even)
    pub degrees: Vec<u32>,
    pub unit: usize,
    /// `mult[i][j][k]`: coefficient of `b_k` in `b_i b_j`
    pub mult: Vec<Vec<Vec<BigRational>>>,
    pub pairing: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FrobeniusJson {
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub pairing: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub ok: bool,
    pub failure: Option<String>,
}

impl FrobeniusAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `k` with `σ(1,1) = 1`.
    pub fn trivial() -> FrobeniusAlgebra {
        FrobeniusAlgebra {
            labels: vec!["1".into()],
            degrees: vec![0],
            unit: 0,
            mult: vec![vec![vec![int(1)]]],
            pairing: vec![vec![int(1)]],
        }
    }

    /// `H^*(P^1) = k[c]/c^2`, `deg c = 2`, `σ(1,c) = 1`.
    pub fn p1() -> FrobeniusAlgebra {
        FrobeniusAlgebra::p1_with_pairing(int(0), int(1), int(0))
    }

    pub fn p1_with_pairing(s11: BigRational, s1c: BigRational, scc: BigRational) -> FrobeniusAlgebra {
        let z = BigRational::zero;
        FrobeniusAlgebra {
            labels: vec!["1".into(), "c".into()],
            degrees: vec![0, 2],
            unit: 0,
            mult: vec![vec![vec![int(1), z()], vec![z(), int(1)]], vec![vec![z(), int(1)], vec![z(), z()]]],
            pairing: vec![vec![s11, s1c.clone()], vec![s1c, scc]],
        }
    }

    pub fn product(&self, i: usize, j: usize) -> &[BigRational] {
        &self.mult[i][j]
    }

    fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Validation {
        let fail = |s: String| Validation { ok: false, failure: Some(s) };
        let d = self.dim();
        if self.degrees.len() != d || self.mult.len() != d || self.pairing.len() != d || self.unit >= d {
            return fail("table sizes do not match the basis".into());
        }
        if self.degrees.iter().any(|g| g % 2 != 0) {
            return fail("odd degree present".into());
        }
        for i in 0..d {
            if self.mult[i].len() != d || self.mult[i].iter().any(|r| r.len() != d) || self.pairing[i].len() != d {
                return fail("table sizes do not match the basis".into());
            }
        }
        let e = |k: usize| (0..d).map(|t| if t == k { int(1) } else { int(0) }).collect::<Vec<_>>();
        for i in 0..d {
            if self.mult[self.unit][i] != e(i) || self.mult[i][self.unit] != e(i) {
                return fail(format!("unit fails on {}", self.labels[i]));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() && self.degrees[i] + self.degrees[j] != self.degrees[k] {
                        return fail(format!("grading: {}·{} has a {} component", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
                if self.mult[i][j] != self.mult[j][i] {
                    return fail(format!("commutativity: {}·{}", self.labels[i], self.labels[j]));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let l = self.mul_vec(&self.mul_vec(&e(i), &e(j)), &e(k));
                    let r = self.mul_vec(&e(i), &self.mul_vec(&e(j), &e(k)));
                    if l != r {
                        return fail(format!("associativity: ({}{}){}", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
        }
        let top = self.top_degree();
        for i in 0..d {
            for j in 0..d {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return fail(format!("pairing not symmetric at ({}, {})", self.labels[i], self.labels[j]));
                }
                if !self.pairing[i][j].is_zero() && self.degrees[i] + self.degrees[j] != top {
                    return fail(format!("pairing not graded at ({}, {})", self.labels[i], self.labels[j]));
                }
            }
        }
        if self.pairing_inverse().is_none() {
            return fail("pairing is degenerate".into());
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let l = self.sigma(&self.mul_vec(&e(i), &e(j)), &e(k));
                    let r = self.sigma(&e(i), &self.mul_vec(&e(j), &e(k)));
                    if l != r {
                        return fail(format!("invariance σ(fg,h) = σ(f,gh) fails at ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
        }
        Validation { ok: true, failure: None }
    }

    pub fn mul_vec(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.dim();
        let mut out = vec![BigRational::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] += &a[i] * &b[j] * &self.mult[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn sigma(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += &a[i] * &b[j] * &self.pairing[i][j];
            }
        }
        s
    }

    fn pairing_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        let d = self.dim();
        let mut a: Vec<Vec<BigRational>> = self.pairing.clone();
        let mut inv: Vec<Vec<BigRational>> = (0..d).map(|i| (0..d).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let pv = a[c][c].clone();
            for t in 0..d {
                a[c][t] = &a[c][t] / &pv;
                inv[c][t] = &inv[c][t] / &pv;
            }
            for r in 0..d {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for t in 0..d {
                        let (x, y) = (&a[c][t] * &f, &inv[c][t] * &f);
                        a[r][t] -= x;
                        inv[r][t] -= y;
                    }
                }
            }
        }
        Some(inv)
    }

    /// `Δ(1) = Σ b_i ⊗ b_i^*` as the coefficient matrix `D[p][q]` of `b_p ⊗ b_q`.
    pub fn coproduct_unit(&self) -> Result<Vec<Vec<BigRational>>> {
        let inv = self.pairing_inverse().ok_or_else(|| Error::Invalid("singular pairing".into()))?;
        // b_k^* = Σ_j inv[j][k] b_j
        let d = self.dim();
        Ok((0..d).map(|k| (0..d).map(|j| inv[j][k].clone()).collect()).collect())
    }

    pub fn to_json(&self) -> FrobeniusJson {
        let d = self.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() {
                        mult.push((i, j, k, format_scalar(&self.mult[i][j][k])));
                    }
                }
            }
        }
        FrobeniusJson {
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            mult,
            pairing: self.pairing.iter().map(|r| r.iter().map(format_scalar).collect()).collect(),
        }
    }

    pub fn from_json(j: &FrobeniusJson) -> Result<FrobeniusAlgebra> {
        let d = j.labels.len();
        let mut mult = vec![vec![vec![BigRational::zero(); d]; d]; d];
        for (a, b, c, v) in &j.mult {
            if *a >= d || *b >= d || *c >= d {
                return Err(Error::Parse("multiplication index out of range".into()));
            }
            mult[*a][*b][*c] = parse_scalar(v)?;
        }
        let pairing = j.pairing.iter().map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let unit = j.degrees.iter().position(|&g| g == 0).ok_or_else(|| Error::Parse("no degree-0 basis element".into()))?;
        Ok(FrobeniusAlgebra { labels: j.labels.clone(), degrees: j.degrees.clone(), unit, mult, pairing })
    }
}

/// Element of `P_n(F)`: map `(x exponents, slot labels) -> coefficient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnF {
    pub n: usize,
    pub f: Arc<FrobeniusAlgebra>,
    pub coeff: Coeff,
    terms: BTreeMap<(Vec<u8>, Vec<usize>), BigRational>,
}

impl PnF {
    pub fn zero(n: usize, f: Arc<FrobeniusAlgebra>, coeff: Coeff) -> PnF {
        PnF { n, f, coeff, terms: BTreeMap::new() }
    }

    pub fn basis_element(n: usize, f: Arc<FrobeniusAlgebra>, coeff: Coeff, x: Vec<u8>, labels: Vec<usize>) -> PnF {
        let mut p = PnF::zero(n, f, coeff);
        p.add_term(x, labels, BigRational::one());
        p
    }

    pub fn one(n: usize, f: Arc<FrobeniusAlgebra>, coeff: Coeff) -> PnF {
        let u = f.unit;
        PnF::basis_element(n, f, coeff, vec![0; n], vec![u; n])
    }

    pub fn add_term(&mut self, x: Vec<u8>, labels: Vec<usize>, c: BigRational) {
        let key = (x, labels);
        let v = self.coeff.normalize(self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero) + c);
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u8>, Vec<usize>), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PnF) -> PnF {
        let mut p = self.clone();
        for ((x, l), c) in &other.terms {
            p.add_term(x.clone(), l.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &PnF) -> PnF {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> PnF {
        let mut p = PnF::zero(self.n, self.f.clone(), self.coeff);
        for ((x, l), c) in &self.terms {
            p.add_term(x.clone(), l.clone(), c * s);
        }
        p
    }

    pub fn mul_x(&self, i: usize) -> PnF {
        let mut p = PnF::zero(self.n, self.f.clone(), self.coeff);
        for ((x, l), c) in &self.terms {
            let mut x = x.clone();
            x[i] += 1;
            p.add_term(x, l.clone(), c.clone());
        }
        p
    }

    /// Multiply by `b_label` placed in `slot`.
    pub fn mul_slot(&self, slot: usize, label: usize) -> PnF {
        let mut p = PnF::zero(self.n, self.f.clone(), self.coeff);
        for ((x, l), c) in &self.terms {
            for (k, m) in self.f.product(l[slot], label).iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let mut l2 = l.clone();
                l2[slot] = k;
                p.add_term(x.clone(), l2, c * m);
            }
        }
        p
    }

    /// Multiply by `Δ_{i,j}`, the coproduct of 1 placed in slots `i`, `j`.
    pub fn mul_delta(&self, i: usize, j: usize) -> PnF {
        let d = self.f.coproduct_unit().expect("validated Frobenius algebra");
        let mut acc = PnF::zero(self.n, self.f.clone(), self.coeff);
        for (p, row) in d.iter().enumerate() {
            for (q, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&self.mul_slot(i, p).mul_slot(j, q).scale(c));
                }
            }
        }
        acc
    }

    /// Permutation acting on x's and, when `diagonal`, also on slots.
    pub fn permute(&self, w: &Perm, diagonal: bool) -> PnF {
        let mut p = PnF::zero(self.n, self.f.clone(), self.coeff);
        for ((x, l), c) in &self.terms {
            let mut x2 = vec![0; self.n];
            let mut l2 = l.clone();
            for i in 0..self.n {
                x2[w.apply(i)] = x[i];
                if diagonal {
                    l2[w.apply(i)] = l[i];
                }
            }
            p.add_term(x2, l2, c.clone());
        }
        p
    }

    pub fn swap(&self, i: usize, diagonal: bool) -> PnF {
        self.permute(&Perm::transposition(self.n, i), diagonal)
    }

    /// x-only Demazure operator `∂^X_i`, exact per label vector.
    pub fn demazure_x(&self, i: usize) -> PnF {
        let num = self.sub(&self.swap(i, false));
        let mut by_label: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
        let ring = Ring { flavor: Flavor::Plain, n: self.n, coeff: self.coeff };
        for ((x, l), c) in &num.terms {
            by_label.entry(l.clone()).or_insert_with(|| Poly::zero(ring)).add_term(Mono(x.clone()), c.clone());
        }
        let mut out = PnF::zero(self.n, self.f.clone(), self.coeff);
        for (l, p) in by_label {
            let q = p.div_linear(i, i + 1).expect("x-only numerator is antisymmetric");
            for (m, c) in q.terms() {
                out.add_term(m.0.clone(), l.clone(), c.clone());
            }
        }
        out
    }

    pub fn degree_of(&self, key: &(Vec<u8>, Vec<usize>)) -> u32 {
        2 * key.0.iter().map(|&e| e as u32).sum::<u32>() + key.1.iter().map(|&l| self.f.degrees[l]).sum::<u32>()
    }

    /// Identify `P_n(k[c]/c^2)` with the curve ring (labels 0 = 1, 1 = c).
    pub fn to_curve(&self) -> Poly {
        let ring = Ring::curve(self.n).with_coeff(self.coeff);
        let mut p = Poly::zero(ring);
        for ((x, l), c) in &self.terms {
            let mut e = x.clone();
            e.extend(l.iter().map(|&k| k as u8));
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    pub fn from_curve(p: &Poly, f: Arc<FrobeniusAlgebra>) -> PnF {
        let n = p.ring().n;
        let mut out = PnF::zero(n, f, p.ring().coeff);
        for (m, c) in p.terms() {
            out.add_term(m.0[..n].to_vec(), m.0[n..].iter().map(|&e| e as usize).collect(), c.clone());
        }
        out
    }
}

/// All basis keys `(x exponents, labels)` of `P_n(F)` of the given actual degree.
pub fn pnf_basis(n: usize, f: &FrobeniusAlgebra, degree: u32) -> Vec<(Vec<u8>, Vec<usize>)> {
    let mut out = Vec::new();
    fn labels_rec(n: usize, f: &FrobeniusAlgebra, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..f.dim() {
            cur.push(l);
            labels_rec(n, f, cur, out);
            cur.pop();
        }
    }
    let mut all_labels = Vec::new();
    labels_rec(n, f, &mut Vec::new(), &mut all_labels);
    for l in all_labels {
        let fd: u32 = l.iter().map(|&k| f.degrees[k]).sum();
        if fd > degree || (degree - fd) % 2 != 0 {
            continue;
        }
        let w = ((degree - fd) / 2) as usize;
        for m in crate::poly::monomials(Ring::plain(n), w) {
            out.push((m.0, l.clone()));
        }
    }
    out.sort();
    out
}

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        assert!(FrobeniusAlgebra::p1().validate().ok);
        assert!(FrobeniusAlgebra::trivial().validate().ok);
    }

    #[test]
    fn bad_tables_fail() {
        let mut f = FrobeniusAlgebra::p1();
        f.mult[1][1] = vec![int(1), int(0)];
        assert!(!f.validate().ok);
        // σ(c,c) = 1 pairs degree 4 against a top degree of 2
        let g = FrobeniusAlgebra::p1_with_pairing(int(0), int(1), int(1));
        let v = g.validate();
        assert!(!v.ok);
        assert!(v.failure.unwrap().contains("graded"));
    }

    #[test]
    fn coproducts() {
        let f = FrobeniusAlgebra::p1();
        let d = f.coproduct_unit().unwrap();
        // c⊗1 + 1⊗c
        assert_eq!(d, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let t = FrobeniusAlgebra::trivial().coproduct_unit().unwrap();
        assert_eq!(t, vec![vec![int(1)]]);
        let g = FrobeniusAlgebra::p1_with_pairing(int(0), int(1), int(1));
        assert_eq!(g.coproduct_unit().unwrap(), vec![vec![int(-1), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn duality_identity() {
        for f in [FrobeniusAlgebra::p1(), FrobeniusAlgebra::trivial(), FrobeniusAlgebra::p1_with_pairing(int(0), int(1), int(1))] {
            let d = f.coproduct_unit().unwrap();
            for b in 0..f.dim() {
                // (σ⊗id)(b ⊗ Δ(1)) = Σ_{p,q} D[p][q] σ(b, b_p) b_q
                let mut out = vec![BigRational::zero(); f.dim()];
                for p in 0..f.dim() {
                    for q in 0..f.dim() {
                        out[q] += &d[p][q] * &f.pairing[b][p];
                    }
                }
                let e: Vec<_> = (0..f.dim()).map(|k| if k == b { int(1) } else { int(0) }).collect();
                assert_eq!(out, e);
            }
            // flip symmetry
            for p in 0..f.dim() {
                for q in 0..f.dim() {
                    assert_eq!(d[p][q], d[q][p]);
                }
            }
        }
    }

    #[test]
    fn delta_placement() {
        let f = Arc::new(FrobeniusAlgebra::p1());
        let one = PnF::one(3, f.clone(), Coeff::Z);
        let d13 = one.mul_delta(0, 2).to_curve();
        assert_eq!(d13, Poly::parse(Ring::curve(3), "c1+c3").unwrap());
        let t = Arc::new(FrobeniusAlgebra::trivial());
        assert_eq!(PnF::one(2, t.clone(), Coeff::Z).mul_delta(0, 1), PnF::one(2, t, Coeff::Z));
    }

    #[test]
    fn json_roundtrip() {
        let f = FrobeniusAlgebra::p1();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: FrobeniusJson = serde_json::from_str(&j).unwrap();
        assert_eq!(FrobeniusAlgebra::from_json(&back).unwrap(), f);
    }
}
