//! The affinized symmetric algebra `Wr_n(F)` on `P_n(F)`, and its zigzag
//! specialization `F = k[c]/c^2`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::frobenius::{pnf_basis, FrobeniusAlgebra, PnF};
use crate::perm::{Composition, Perm};
use crate::report::{inconclusive, Report};
use crate::scalar::Coeff;
use crate::schur;
use crate::schur::rank_q;

/// `τ_i = s_i - Δ_{i,i+1} ∂^X_i`, `i` 0-based.
pub fn tau_apply(p: &PnF, i: usize) -> Result<PnF> {
    if i + 1 >= p.n {
        return Err(Error::Invalid(format!("τ_{} out of range for n = {}", i + 1, p.n)));
    }
    Ok(p.swap(i, true).sub(&p.demazure_x(i).mul_delta(i, i + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WreathGen {
    X { i: usize },
    F { slot: usize, label: usize },
    Delta { i: usize, j: usize },
    Tau { i: usize },
}

/// Algebra product `g_1 g_2 ... g_k`; the rightmost factor acts first.
pub type WreathWord = Vec<WreathGen>;

/// A `ℚ`-linear combination of words.
pub type WreathExpr = Vec<(BigRational, WreathWord)>;

pub fn gen_apply(g: &WreathGen, p: &PnF) -> Result<PnF> {
    let n = p.n;
    let chk = |i: usize| if i < n { Ok(()) } else { Err(Error::Invalid(format!("index {} out of range for n = {n}", i + 1))) };
    match *g {
        WreathGen::X { i } => {
            chk(i)?;
            Ok(p.mul_x(i))
        }
        WreathGen::F { slot, label } => {
            chk(slot)?;
            if label >= p.f.dim() {
                return Err(Error::Invalid(format!("label {label} not in F")));
            }
            Ok(p.mul_slot(slot, label))
        }
        WreathGen::Delta { i, j } => {
            chk(i)?;
            chk(j)?;
            if i == j {
                return Err(Error::Invalid("Δ_{i,i} is not defined".into()));
            }
            Ok(p.mul_delta(i, j))
        }
        WreathGen::Tau { i } => tau_apply(p, i),
    }
}

pub fn word_apply(word: &[WreathGen], p: &PnF) -> Result<PnF> {
    let mut q = p.clone();
    for g in word.iter().rev() {
        q = gen_apply(g, &q)?;
    }
    Ok(q)
}

pub fn expr_apply(e: &WreathExpr, p: &PnF) -> Result<PnF> {
    let mut acc = PnF::zero(p.n, p.f.clone(), p.coeff);
    for (c, w) in e {
        acc = acc.add(&word_apply(w, p)?.scale(c));
    }
    Ok(acc)
}

/// Reduced word of `w` as a product of τ's.
pub fn tau_word(w: &Perm) -> WreathWord {
    w.reduced_word().into_iter().map(|i| WreathGen::Tau { i }).collect()
}

fn one(w: WreathWord) -> WreathExpr {
    vec![(BigRational::one(), w)]
}

/// All inputs of `P_n(F)` of degree at most `max_deg`.
pub fn inputs(n: usize, f: &Arc<FrobeniusAlgebra>, coeff: Coeff, max_deg: u32) -> Vec<PnF> {
    (0..=max_deg)
        .step_by(2)
        .flat_map(|d| pnf_basis(n, f, d))
        .map(|(x, l)| PnF::basis_element(n, f.clone(), coeff, x, l))
        .collect()
}

fn describe(p: &PnF) -> String {
    if p.f.dim() == 2 && p.f.degrees == [0, 2] {
        p.to_curve().to_string()
    } else {
        let parts: Vec<String> = p.terms().map(|((x, l), c)| format!("{c}*x^{x:?}*f{l:?}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Compare two expressions on every input; `Err` carries the first witness.
pub fn check_identity(lhs: &WreathExpr, rhs: &WreathExpr, ins: &[PnF]) -> std::result::Result<(), String> {
    let bad = ins.par_iter().find_first(|p| match (expr_apply(lhs, p), expr_apply(rhs, p)) {
        (Ok(a), Ok(b)) => a != b,
        _ => true,
    });
    match bad {
        None => Ok(()),
        Some(p) => Err(format!("input {}", describe(p))),
    }
}

/// The defining relations of `Wr_n(F)`, plus the zigzag list when `F = k[c]/c^2`.
pub fn relations(n: usize, f: &FrobeniusAlgebra) -> Vec<(String, WreathExpr, WreathExpr)> {
    use WreathGen::*;
    let mut rels = Vec::new();
    let neg = -BigRational::one();
    for i in 0..n.saturating_sub(1) {
        rels.push((format!("tau{}^2", i + 1), one(vec![Tau { i }, Tau { i }]), one(vec![])));
        if i + 2 < n {
            rels.push((
                format!("braid{}", i + 1),
                one(vec![Tau { i }, Tau { i: i + 1 }, Tau { i }]),
                one(vec![Tau { i: i + 1 }, Tau { i }, Tau { i: i + 1 }]),
            ));
        }
        for k in i + 2..n.saturating_sub(1) {
            rels.push((format!("far{}_{}", i + 1, k + 1), one(vec![Tau { i }, Tau { i: k }]), one(vec![Tau { i: k }, Tau { i }])));
        }
        for j in 0..n {
            let sj = Perm::transposition(n, i).apply(j);
            let mut rhs = one(vec![X { i: sj }, Tau { i }]);
            if j == i {
                rhs.push((neg.clone(), vec![Delta { i, j: i + 1 }]));
            } else if j == i + 1 {
                rhs.push((BigRational::one(), vec![Delta { i, j: i + 1 }]));
            }
            rels.push((format!("tau{}x{}", i + 1, j + 1), one(vec![Tau { i }, X { i: j }]), rhs));
            for label in 0..f.dim() {
                if label == f.unit {
                    continue;
                }
                rels.push((
                    format!("tau{}f{}_{}", i + 1, f.labels[label], j + 1),
                    one(vec![Tau { i }, F { slot: j, label }]),
                    one(vec![F { slot: sj, label }, Tau { i }]),
                ));
            }
        }
        if f.dim() == 2 && f.degrees == [0, 2] {
            let dk = vec![(neg.clone(), vec![F { slot: i, label: 1 }]), (neg.clone(), vec![F { slot: i + 1, label: 1 }])];
            rels.push((
                format!("zigzag{}_left", i + 1),
                vec![(BigRational::one(), vec![Tau { i }, X { i }]), (neg.clone(), vec![X { i: i + 1 }, Tau { i }])],
                dk.clone(),
            ));
            rels.push((
                format!("zigzag{}_right", i + 1),
                vec![(BigRational::one(), vec![X { i }, Tau { i }]), (neg.clone(), vec![Tau { i }, X { i: i + 1 }])],
                dk,
            ));
        }
    }
    for i in 0..n {
        for label in 0..f.dim() {
            if label != f.unit {
                rels.push((format!("x{}f{}_{}", i + 1, f.labels[label], i + 1), one(vec![X { i }, F { slot: i, label }]), one(vec![F { slot: i, label }, X { i }])));
            }
        }
    }
    rels
}

pub fn relation_suite(n: usize, f: Arc<FrobeniusAlgebra>, max_deg: u32) -> Report {
    let mut r = Report::new("wreath").param("n", n).param("max_deg", max_deg).param("F", f.labels.clone());
    let v = f.validate();
    if !v.ok {
        r.run("frobenius", || Err(v.failure.clone().unwrap_or_default()));
        return r;
    }
    let ins = inputs(n, &f, Coeff::Z, max_deg);
    for (id, lhs, rhs) in relations(n, &f) {
        r.run(id, || check_identity(&lhs, &rhs, &ins).map(|_| None));
    }
    r
}

/// `τ_i` against the thin curve crossing minus the identity.
pub fn tau_vs_crossing(n: usize, max_deg: u32) -> std::result::Result<(), String> {
    let f = Arc::new(FrobeniusAlgebra::p1());
    let thin = Composition::thin(n);
    for p in inputs(n, &f, Coeff::Z, max_deg) {
        let cp = p.to_curve();
        for i in 0..n.saturating_sub(1) {
            let tau = tau_apply(&p, i).map_err(|e| e.to_string())?.to_curve();
            let (rc, _) = schur::crossing_apply(&cp, &thin, i).map_err(|e| e.to_string())?;
            if tau != &rc - &cp {
                return Err(format!("i = {}, input {cp}: τ gives {tau}, R - 1 gives {}", i + 1, &rc - &cp));
            }
        }
    }
    Ok(())
}

/// Coefficients of `t^0, t^2, ..., t^max_deg` in `n! (P_t(F)/(1-t^2))^n`.
pub fn expected_dims(n: usize, f: &FrobeniusAlgebra, max_deg: u32) -> Vec<u64> {
    let len = (max_deg / 2 + 1) as usize;
    let mut pt = vec![0u64; len];
    for &d in &f.degrees {
        if ((d / 2) as usize) < len {
            pt[(d / 2) as usize] += 1;
        }
    }
    let mut base = vec![0u64; len];
    for k in 0..len {
        base[k] = pt[..=k].iter().sum();
    }
    let mut acc = vec![0u64; len];
    acc[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; len];
        for i in 0..len {
            for j in 0..len - i {
                next[i + j] += acc[i] * base[j];
            }
        }
        acc = next;
    }
    let fact: u64 = (1..=n as u64).product();
    acc.into_iter().map(|c| c * fact).collect()
}

/// Basis words `τ_w x^a f` of exact degree `d`.
pub fn basis_words(n: usize, f: &FrobeniusAlgebra, d: u32) -> Vec<WreathWord> {
    let mut out = Vec::new();
    for w in Perm::all(n) {
        for (x, l) in pnf_basis(n, f, d) {
            let mut word = tau_word(&w);
            for (i, &e) in x.iter().enumerate() {
                for _ in 0..e {
                    word.push(WreathGen::X { i });
                }
            }
            for (slot, &label) in l.iter().enumerate() {
                if label != f.unit {
                    word.push(WreathGen::F { slot, label });
                }
            }
            out.push(word);
        }
    }
    out
}

/// Rank of the basis words of degree `d` acting on inputs of degree `<= window`.
pub fn basis_rank(n: usize, f: &Arc<FrobeniusAlgebra>, d: u32, window: u32) -> Result<(usize, usize)> {
    let words = basis_words(n, f, d);
    let ins = inputs(n, f, Coeff::Z, window);
    let outs: Vec<Vec<crate::poly::Poly>> = words
        .par_iter()
        .map(|w| ins.iter().map(|p| word_apply(w, p).map(|q| pnf_as_poly(&q))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((rank_q(&schur::stack_columns(&outs)), words.len()))
}

/// Flatten an element of `P_n(F)` into a plain polynomial ring with one extra
/// variable per (slot, non-unit label); only used for coordinates.
fn pnf_as_poly(p: &PnF) -> crate::poly::Poly {
    let dim = p.f.dim();
    let ring = crate::poly::Ring::plain(p.n + p.n * dim);
    let mut out = crate::poly::Poly::zero(ring);
    for ((x, l), c) in p.terms() {
        let mut e = x.clone();
        e.resize(p.n + p.n * dim, 0);
        for (slot, &label) in l.iter().enumerate() {
            e[p.n + slot * dim + label] = 1;
        }
        out.add_term(crate::poly::Mono(e), c.clone());
    }
    out
}

pub fn graded_dimension_check(n: usize, f: Arc<FrobeniusAlgebra>, max_deg: u32) -> Report {
    let mut r = Report::new("wreath-dim").param("n", n).param("max_deg", max_deg).param("F", f.labels.clone());
    let expected = expected_dims(n, &f, max_deg);
    for (k, &want) in expected.iter().enumerate() {
        let d = 2 * k as u32;
        let id = format!("deg{d}");
        let mut window = d + 2;
        let limit = max_deg + d + 2 + 4;
        loop {
            match basis_rank(n, &f, d, window) {
                Ok((rank, count)) if rank == count && count as u64 == want => {
                    r.run(id.clone(), || Ok(Some(json!({"rank": rank, "count": count, "expected": want, "window": window}))));
                    break;
                }
                Ok((_, count)) if count as u64 != want => {
                    r.run(id.clone(), || Err(format!("{count} basis words but the series gives {want}")));
                    break;
                }
                Ok((rank, count)) => {
                    if window >= limit {
                        r.push(inconclusive(id.clone(), format!("rank {rank} < {count} at window {window}")));
                        break;
                    }
                    window += 2;
                }
                Err(e) => {
                    r.run(id.clone(), || Err(e.to_string()));
                    break;
                }
            }
        }
    }
    r
}

pub fn zigzag_f() -> Arc<FrobeniusAlgebra> {
    Arc::new(FrobeniusAlgebra::p1())
}

pub fn trivial_f() -> Arc<FrobeniusAlgebra> {
    Arc::new(FrobeniusAlgebra::trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, Ring};

    fn pc(s: &str, n: usize) -> PnF {
        PnF::from_curve(&Poly::parse(Ring::curve(n), s).unwrap(), zigzag_f())
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_apply(&pc("1", 2), 0).unwrap(), pc("1", 2));
        assert_eq!(tau_apply(&pc("x1", 2), 0).unwrap(), pc("x2-c1-c2", 2));
        assert_eq!(tau_apply(&pc("c1", 2), 0).unwrap(), pc("c2", 2));
    }

    #[test]
    fn small_suites() {
        assert_eq!(relation_suite(2, zigzag_f(), 6).status(), crate::report::Status::Pass);
        assert_eq!(relation_suite(3, trivial_f(), 4).status(), crate::report::Status::Pass);
    }

    #[test]
    fn series() {
        assert_eq!(expected_dims(1, &FrobeniusAlgebra::p1(), 6), vec![1, 2, 2, 2]);
        assert_eq!(expected_dims(2, &FrobeniusAlgebra::p1(), 2)[0], 2);
        assert_eq!(expected_dims(1, &FrobeniusAlgebra::trivial(), 4), vec![1, 1, 1]);
    }

    #[test]
    fn crossing_identity_small() {
        tau_vs_crossing(2, 6).unwrap();
    }
}
