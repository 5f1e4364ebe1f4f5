//! KLR algebra of the Kronecker quiver on its polynomial representation
//! `Pol_α = ⊕_i Pol_m 1_i`, divided powers and the thick calculus on `Poll_n`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::perm::{w0, w0ab, Composition, Perm};
use crate::poly::{invariant_basis, monomials, Act, Flavor, Poly, Ring};
use crate::report::{inconclusive, Report};
use crate::schur::{rank_q, stack_columns};

pub type ColorSeq = Vec<u8>;

/// One-sided exponents `h_{ij}` in `P_{ij}(u, v) = (u - v)^{h_{ij}}`. The
/// Kronecker quiver `1 ⇉ 0` has `h10 = 2`, `h01 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlrConfig {
    pub h01: u32,
    pub h10: u32,
}

impl Default for KlrConfig {
    fn default() -> Self {
        KlrConfig { h01: 0, h10: 2 }
    }
}

impl KlrConfig {
    pub fn h(&self, i: u8, j: u8) -> u32 {
        match (i, j) {
            (0, 1) => self.h01,
            (1, 0) => self.h10,
            _ => 0,
        }
    }
}

/// `Σ_i f_i 1_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolAlpha {
    pub m: usize,
    pub comps: BTreeMap<ColorSeq, Poly>,
}

impl PolAlpha {
    pub fn zero(m: usize) -> PolAlpha {
        PolAlpha { m, comps: BTreeMap::new() }
    }

    pub fn single(i: ColorSeq, f: Poly) -> PolAlpha {
        let mut p = PolAlpha::zero(i.len());
        p.add(i, f);
        p
    }

    pub fn add(&mut self, i: ColorSeq, f: Poly) {
        let e = self.comps.entry(i.clone()).or_insert_with(|| Poly::zero(f.ring()));
        *e = &*e + &f;
        if e.is_zero() {
            self.comps.remove(&i);
        }
    }

    pub fn plus(&self, other: &PolAlpha) -> PolAlpha {
        let mut p = self.clone();
        for (i, f) in &other.comps {
            p.add(i.clone(), f.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigRational) -> PolAlpha {
        let mut p = PolAlpha::zero(self.m);
        for (i, f) in &self.comps {
            p.add(i.clone(), f.scale(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
}

impl std::fmt::Display for PolAlpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.comps.iter().map(|(i, p)| format!("({p})1_{i:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn yvar(m: usize, r: usize) -> Poly {
    Poly::var(Ring::plain(m), r)
}

/// `ψ_r` (0-based `r`).
pub fn psi_apply(p: &PolAlpha, r: usize, cfg: KlrConfig) -> Result<PolAlpha> {
    if r + 1 >= p.m {
        return Err(Error::Invalid(format!("ψ_{} out of range for m = {}", r + 1, p.m)));
    }
    let mut out = PolAlpha::zero(p.m);
    for (i, f) in &p.comps {
        if i[r] == i[r + 1] {
            out.add(i.clone(), f.demazure(r, Act::First)?.scale_int(-1));
        } else {
            let factor = (&yvar(p.m, r) - &yvar(p.m, r + 1)).pow(cfg.h(i[r], i[r + 1]));
            let mut j = i.clone();
            j.swap(r, r + 1);
            out.add(j, &factor * &f.swap(r, Act::First));
        }
    }
    Ok(out)
}

pub fn dot_apply(p: &PolAlpha, r: usize) -> Result<PolAlpha> {
    if r >= p.m {
        return Err(Error::Invalid(format!("y_{} out of range for m = {}", r + 1, p.m)));
    }
    let y = yvar(p.m, r);
    let mut out = PolAlpha::zero(p.m);
    for (i, f) in &p.comps {
        out.add(i.clone(), f * &y);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KlrGen {
    Idem { seq: ColorSeq },
    Dot { r: usize },
    Psi { r: usize },
}

/// Generators listed bottom to top: the first one acts first.
pub type KlrWord = Vec<KlrGen>;

pub fn gen_apply(g: &KlrGen, p: &PolAlpha, cfg: KlrConfig) -> Result<PolAlpha> {
    match g {
        KlrGen::Idem { seq } => {
            let mut out = PolAlpha::zero(p.m);
            if let Some(f) = p.comps.get(seq) {
                out.add(seq.clone(), f.clone());
            }
            Ok(out)
        }
        KlrGen::Dot { r } => dot_apply(p, *r),
        KlrGen::Psi { r } => psi_apply(p, *r, cfg),
    }
}

pub fn word_apply(word: &[KlrGen], p: &PolAlpha, cfg: KlrConfig) -> Result<PolAlpha> {
    let mut q = p.clone();
    for g in word {
        q = gen_apply(g, &q, cfg)?;
    }
    Ok(q)
}

pub type KlrExpr = Vec<(BigRational, KlrWord)>;

pub fn expr_apply(e: &KlrExpr, p: &PolAlpha, cfg: KlrConfig) -> Result<PolAlpha> {
    let mut acc = PolAlpha::zero(p.m);
    for (c, w) in e {
        acc = acc.plus(&word_apply(w, p, cfg)?.scale(c));
    }
    Ok(acc)
}

/// Color sequence after a word, following the strands.
pub fn word_target(word: &[KlrGen], src: &[u8]) -> ColorSeq {
    let mut s = src.to_vec();
    for g in word {
        if let KlrGen::Psi { r } = g {
            s.swap(*r, r + 1);
        }
    }
    s
}

/// All sequences with `n0` zeros and `n1` ones, lexicographic.
pub fn color_sequences(n0: usize, n1: usize) -> Vec<ColorSeq> {
    let m = n0 + n1;
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == n1 {
            out.push((0..m).rev().map(|b| ((mask >> b) & 1) as u8).collect());
        }
    }
    out.sort();
    out
}

/// Some prefix has strictly more ones than zeros.
pub fn noncuspidal(i: &[u8]) -> bool {
    let mut bal = 0i64;
    for &c in i {
        bal += if c == 1 { 1 } else { -1 };
        if bal > 0 {
            return true;
        }
    }
    false
}

fn inputs(n0: usize, n1: usize, max_weight: usize) -> Vec<PolAlpha> {
    let m = n0 + n1;
    let mut out = Vec::new();
    for i in color_sequences(n0, n1) {
        for w in 0..=max_weight {
            for mono in monomials(Ring::plain(m), w) {
                out.push(PolAlpha::single(i.clone(), Poly::monomial(Ring::plain(m), mono, BigRational::one())));
            }
        }
    }
    out
}

fn check_identity(lhs: &KlrExpr, rhs: &KlrExpr, ins: &[PolAlpha], cfg: KlrConfig) -> std::result::Result<(), String> {
    let bad = ins.par_iter().find_first(|p| match (expr_apply(lhs, p, cfg), expr_apply(rhs, p, cfg)) {
        (Ok(a), Ok(b)) => a != b,
        _ => true,
    });
    match bad {
        None => Ok(()),
        Some(p) => {
            let a = expr_apply(lhs, p, cfg).map(|q| q.to_string()).unwrap_or_else(|e| e.to_string());
            let b = expr_apply(rhs, p, cfg).map(|q| q.to_string()).unwrap_or_else(|e| e.to_string());
            Err(format!("input {p}: {a} vs {b}"))
        }
    }
}

fn w1(w: KlrWord) -> KlrExpr {
    vec![(BigRational::one(), w)]
}

/// Relations KLR1-5 for every color sequence of `α = (n0, n1)`, as identities
/// of operators restricted to `1_i`.
pub fn relations(n0: usize, n1: usize) -> Vec<(String, KlrExpr, KlrExpr)> {
    use KlrGen::*;
    let m = n0 + n1;
    let neg = -BigRational::one();
    let mut rels = Vec::new();
    for i in color_sequences(n0, n1) {
        let id = |s: &ColorSeq| Idem { seq: s.clone() };
        let tag: String = i.iter().map(|c| char::from(b'0' + c)).collect();
        for r in 0..m.saturating_sub(1) {
            let e = id(&i);
            // operator words: bottom to top
            let y_psi = vec![e.clone(), Psi { r }, Dot { r }];
            let psi_y1 = vec![e.clone(), Dot { r: r + 1 }, Psi { r }];
            let psi_y = vec![e.clone(), Dot { r }, Psi { r }];
            let y1_psi = vec![e.clone(), Psi { r }, Dot { r: r + 1 }];
            if i[r] != i[r + 1] {
                rels.push((format!("klr1/{tag}/r{}a", r + 1), w1(y_psi), w1(psi_y1)));
                rels.push((format!("klr1/{tag}/r{}b", r + 1), w1(y1_psi), w1(psi_y)));
                // ψ_r^2 = Q(y_r, y_{r+1}) = (y_r - y_{r+1})^2
                let sq = vec![e.clone(), Psi { r }, Psi { r }];
                let q = vec![
                    (BigRational::one(), vec![e.clone(), Dot { r }, Dot { r }]),
                    (BigRational::from_integer((-2).into()), vec![e.clone(), Dot { r }, Dot { r: r + 1 }]),
                    (BigRational::one(), vec![e.clone(), Dot { r: r + 1 }, Dot { r: r + 1 }]),
                ];
                rels.push((format!("klr3/{tag}/r{}", r + 1), w1(sq), q));
            } else {
                rels.push((format!("klr2/{tag}/r{}a", r + 1), w1(y_psi), vec![(BigRational::one(), psi_y1), (neg.clone(), vec![e.clone()])]));
                rels.push((format!("klr2/{tag}/r{}b", r + 1), w1(psi_y), vec![(BigRational::one(), y1_psi), (neg.clone(), vec![e.clone()])]));
                rels.push((format!("klr3/{tag}/r{}", r + 1), w1(vec![e.clone(), Psi { r }, Psi { r }]), vec![]));
            }
            for t in r + 2..m.saturating_sub(1) {
                rels.push((format!("far/{tag}/r{}t{}", r + 1, t + 1), w1(vec![e.clone(), Psi { r }, Psi { r: t }]), w1(vec![e.clone(), Psi { r: t }, Psi { r }])));
            }
            for t in 0..m {
                if t != r && t != r + 1 {
                    rels.push((format!("dotfar/{tag}/r{}y{}", r + 1, t + 1), w1(vec![e.clone(), Dot { r: t }, Psi { r }]), w1(vec![e.clone(), Psi { r }, Dot { r: t }])));
                }
            }
            if r + 2 < m {
                // ψ_r ψ_{r+1} ψ_r (bottom ψ_r first) against ψ_{r+1} ψ_r ψ_{r+1}
                let lhs = w1(vec![e.clone(), Psi { r }, Psi { r: r + 1 }, Psi { r }]);
                let mut rhs = w1(vec![e.clone(), Psi { r: r + 1 }, Psi { r }, Psi { r: r + 1 }]);
                if i[r] == i[r + 2] && i[r] != i[r + 1] {
                    rhs.push((neg.clone(), vec![e.clone(), Dot { r }]));
                    rhs.push((BigRational::from_integer(2.into()), vec![e.clone(), Dot { r: r + 1 }]));
                    rhs.push((neg.clone(), vec![e.clone(), Dot { r: r + 2 }]));
                    rels.push((format!("klr5/{tag}/r{}", r + 1), lhs, rhs));
                } else {
                    rels.push((format!("klr4/{tag}/r{}", r + 1), lhs, rhs));
                }
            }
        }
    }
    rels
}

pub fn relation_suite(n0: usize, n1: usize, max_deg: usize, cfg: KlrConfig) -> Report {
    let mut r = Report::new("klr").param("alpha", [n0, n1]).param("max_deg", max_deg).param("h", [cfg.h01, cfg.h10]);
    let ins = inputs(n0, n1, max_deg / 2);
    for (id, lhs, rhs) in relations(n0, n1) {
        r.run(id, || check_identity(&lhs, &rhs, &ins, cfg).map(|_| None));
    }
    r
}

/// `1_{i^{(n)}} = ψ_{w0} y_0` on `Pol_n`: `P ↦ (-1)^{ℓ(w0)} ∂_{w0}(y_2 y_3^2 ... y_n^{n-1} P)`.
pub fn divided_idempotent_apply(p: &Poly) -> Result<Poly> {
    let n = p.ring().n;
    if p.ring().flavor != Flavor::Plain {
        return Err(Error::RingMismatch("divided idempotent acts on a plain ring".into()));
    }
    divided_block(p, 0, n)
}

/// Divided idempotent on variables `off..off+len` of a plain ring.
fn divided_block(p: &Poly, off: usize, len: usize) -> Result<Poly> {
    if len <= 1 {
        return Ok(p.clone());
    }
    let mut e = vec![0u8; p.ring().nvars()];
    for (k, slot) in e[off..off + len].iter_mut().enumerate() {
        *slot = k as u8;
    }
    let (_, word) = w0(len);
    let shifted: Vec<usize> = word.iter().map(|&r| r + off).collect();
    let q = p.mul_mono(&e).demazure_word(&shifted, Act::First)?;
    Ok(if word.len() % 2 == 0 { q } else { q.scale_int(-1) })
}

/// Thin color sequence of the divided sequence `i_λ = (0^{(λ1)}, 1^{(λ1)}, 0^{(λ2)}, ...)`.
pub fn thin_sequence(lambda: &Composition) -> ColorSeq {
    let mut s = Vec::new();
    for &a in lambda.parts() {
        s.extend(std::iter::repeat(0).take(a));
        s.extend(std::iter::repeat(1).take(a));
    }
    s
}

/// Variable of `Poll_n` (`u_j` is `j`, `v_j` is `n + j`) carried by each thin position.
pub fn position_vars(lambda: &Composition) -> Vec<usize> {
    let n = lambda.n();
    let mut out = Vec::new();
    for (k, &a) in lambda.parts().iter().enumerate() {
        let off = lambda.offsets()[k];
        out.extend(off..off + a);
        out.extend(n + off..n + off + a);
    }
    out
}

/// `Poll_n` element to the thin `Pol_{2n}` component of `i_λ`.
pub fn to_thin(p: &Poly, lambda: &Composition) -> Result<PolAlpha> {
    let n = lambda.n();
    if p.ring().flavor != Flavor::Quiver || p.ring().n != n {
        return Err(Error::RingMismatch(format!("{} is not Poll_{n}", p.ring())));
    }
    let ring = Ring::plain(2 * n).with_coeff(p.ring().coeff);
    let pos = position_vars(lambda);
    let mut images = vec![Poly::zero(ring); 2 * n];
    for (q, &v) in pos.iter().enumerate() {
        images[v] = Poly::var(ring, q);
    }
    Ok(PolAlpha::single(thin_sequence(lambda), p.substitute(ring, &images)))
}

pub fn from_thin(p: &PolAlpha, lambda: &Composition, coeff: crate::scalar::Coeff) -> Result<Poly> {
    let n = lambda.n();
    let seq = thin_sequence(lambda);
    let ring = Ring::quiver(n).with_coeff(coeff);
    for (i, f) in &p.comps {
        if *i != seq && !f.is_zero() {
            return Err(Error::SlotMismatch(format!("output has a component on {i:?}, expected only {seq:?}")));
        }
    }
    let Some(f) = p.comps.get(&seq) else {
        return Ok(Poly::zero(ring));
    };
    let pos = position_vars(lambda);
    let images: Vec<Poly> = pos.iter().map(|&v| Poly::var(ring, v)).collect();
    Ok(f.substitute(ring, &images))
}

/// Divided idempotent of `i_λ` acting on its thin component.
pub fn divided_slot_idempotent(p: &PolAlpha, lambda: &Composition) -> Result<PolAlpha> {
    let seq = thin_sequence(lambda);
    let mut out = PolAlpha::zero(p.m);
    if let Some(f) = p.comps.get(&seq) {
        let mut q = f.clone();
        let mut off = 0;
        for &a in lambda.parts() {
            q = divided_block(&q, off, a)?;
            q = divided_block(&q, off + a, a)?;
            off += 2 * a;
        }
        out.add(seq, q);
    }
    Ok(out)
}

/// `(𝔖_λ)^2`-invariance on `Poll_n`.
pub fn is_slot_invariant(p: &Poly, lambda: &Composition) -> bool {
    p.is_invariant(lambda, Act::First) && p.is_invariant(lambda, Act::Second)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThickKind {
    Split,
    Merge,
    Crossing,
}

/// A thick generator compiled to a thin word between divided slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickWord {
    pub src: Composition,
    pub dst: Composition,
    pub thin: KlrWord,
}

/// Bottom-to-top list of ψ's moving a block of `a` strands starting at `off`
/// to the right past the following `b` strands.
fn block_cross(off: usize, a: usize, b: usize) -> KlrWord {
    let (w, word) = w0ab(a, b);
    debug_assert_eq!(w.length(), a * b);
    word.iter().rev().map(|&r| KlrGen::Psi { r: r + off }).collect()
}

/// Thin compilation. Merge `(a, b) -> (a+b)` at part `pos`: move `1^a` past `0^b`,
/// then the longest `(a, b)`-shuffle crossing on each color. Split
/// `(a+b) -> (a, b)`: move `0^b` back past `1^a`. Crossing: merge then split.
pub fn thick_generator(kind: ThickKind, lambda: &Composition, pos: usize, a: usize) -> Result<ThickWord> {
    match kind {
        ThickKind::Merge => {
            let dst = lambda.merge_at(pos)?;
            let (a, b) = (lambda.parts()[pos], lambda.parts()[pos + 1]);
            let off = 2 * lambda.offsets()[pos];
            let mut thin = block_cross(off + a, a, b);
            thin.extend(block_cross(off, a, b));
            thin.extend(block_cross(off + a + b, a, b));
            Ok(ThickWord { src: lambda.clone(), dst, thin })
        }
        ThickKind::Split => {
            let dst = lambda.split_at(pos, a)?;
            let b = lambda.parts()[pos] - a;
            let off = 2 * lambda.offsets()[pos];
            // 0^a 0^b 1^a 1^b: move the 0^b block right past 1^a
            let thin = block_cross(off + a, b, a);
            Ok(ThickWord { src: lambda.clone(), dst, thin })
        }
        ThickKind::Crossing => {
            let m = thick_generator(ThickKind::Merge, lambda, pos, 0)?;
            let s = thick_generator(ThickKind::Split, &m.dst, pos, lambda.parts()[pos + 1])?;
            let mut thin = m.thin;
            thin.extend(s.thin);
            Ok(ThickWord { src: lambda.clone(), dst: s.dst, thin })
        }
    }
}

impl ThickWord {
    /// Thin color sequences met between consecutive ψ's.
    pub fn intermediate_sequences(&self) -> Vec<ColorSeq> {
        let mut s = thin_sequence(&self.src);
        let mut out = vec![s.clone()];
        for g in &self.thin {
            if let KlrGen::Psi { r } = g {
                s.swap(*r, r + 1);
                out.push(s.clone());
            }
        }
        out
    }

    pub fn noncuspidal_layers(&self) -> Vec<ColorSeq> {
        self.intermediate_sequences().into_iter().filter(|s| noncuspidal(s)).collect()
    }

    pub fn then(&self, next: &ThickWord) -> Result<ThickWord> {
        if self.dst != next.src {
            return Err(Error::SlotMismatch(format!("{} then {}", self.dst, next.src)));
        }
        let mut thin = self.thin.clone();
        thin.extend(next.thin.iter().cloned());
        Ok(ThickWord { src: self.src.clone(), dst: next.dst.clone(), thin })
    }
}

/// Divided-slot action: embed in the thin slot, sandwich the thin word between
/// the divided idempotents of `src` and `dst`, read back, check invariance.
pub fn divided_apply(word: &KlrWord, src: &Composition, dst: &Composition, p: &Poly, cfg: KlrConfig) -> Result<Poly> {
    if !is_slot_invariant(p, src) {
        return Err(Error::NotInvariant(format!("{p} is not (S_{src})^2-invariant")));
    }
    let mut q = divided_slot_idempotent(&to_thin(p, src)?, src)?;
    q = word_apply(word, &q, cfg)?;
    q = divided_slot_idempotent(&q, dst)?;
    let out = from_thin(&q, dst, p.ring().coeff)?;
    if !is_slot_invariant(&out, dst) {
        return Err(Error::NotInvariant(format!("output {out} is not (S_{dst})^2-invariant")));
    }
    Ok(out)
}

pub fn thick_apply(t: &ThickWord, p: &Poly, cfg: KlrConfig) -> Result<Poly> {
    divided_apply(&t.thin, &t.src, &t.dst, p, cfg)
}

/// Closed form `∂^u_{w0,a,b} ∂^v_{w0,a,b}(P ∏_{i ≤ a < j} (v_i - u_j)^2)` on the
/// block at part `pos` of `lambda`.
pub fn merge_closed_form(p: &Poly, lambda: &Composition, pos: usize) -> Result<Poly> {
    let ring = p.ring();
    let off = lambda.offsets()[pos];
    let (a, b) = (lambda.parts()[pos], lambda.parts()[pos + 1]);
    let mut f = p.clone();
    for i in off..off + a {
        for j in off + a..off + a + b {
            f = &f * &(&Poly::second(ring, i) - &Poly::first(ring, j)).pow(2);
        }
    }
    let (_, word) = w0ab(a, b);
    let shifted: Vec<usize> = word.iter().map(|&r| r + off).collect();
    f.demazure_word(&shifted, Act::First)?.demazure_word(&shifted, Act::Second)
}

/// Thin basis `{ψ_w y^a 1_i}` with `|a| = weight`, grouped by source sequence,
/// against the inputs of weight `<= window`; returns `(rank, count)` per block.
pub fn thin_basis_rank(n0: usize, n1: usize, weight: usize, window: usize, cfg: KlrConfig) -> Result<Vec<(ColorSeq, usize, usize)>> {
    let m = n0 + n1;
    let mut out = Vec::new();
    for i in color_sequences(n0, n1) {
        let ins: Vec<PolAlpha> = (0..=window)
            .flat_map(|w| monomials(Ring::plain(m), w))
            .map(|mono| PolAlpha::single(i.clone(), Poly::monomial(Ring::plain(m), mono, BigRational::one())))
            .collect();
        let mut words = Vec::new();
        for w in Perm::all(m) {
            for mono in monomials(Ring::plain(m), weight) {
                let mut word = vec![KlrGen::Idem { seq: i.clone() }];
                for (r, &e) in mono.exps().iter().enumerate() {
                    for _ in 0..e {
                        word.push(KlrGen::Dot { r });
                    }
                }
                word.extend(w.reduced_word().into_iter().rev().map(|r| KlrGen::Psi { r }));
                words.push(word);
            }
        }
        let outs: Vec<Vec<Poly>> = words
            .par_iter()
            .map(|w| {
                ins.iter()
                    .map(|p| {
                        let q = word_apply(w, p, cfg)?;
                        Ok(flatten(&q))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((i, rank_q(&stack_columns(&outs)), words.len()));
    }
    Ok(out)
}

/// Put all components into one plain ring with a marker variable per sequence.
fn flatten(p: &PolAlpha) -> Poly {
    let m = p.m;
    let ring = Ring::plain(m + (1 << m));
    let mut out = Poly::zero(ring);
    for (i, f) in &p.comps {
        let idx = i.iter().fold(0usize, |acc, &c| 2 * acc + c as usize);
        for (mono, c) in f.terms() {
            let mut e = mono.exps().to_vec();
            e.resize(m + (1 << m), 0);
            e[m + idx] = 1;
            out.add_term(crate::poly::Mono(e), c.clone());
        }
    }
    out
}

pub fn thin_basis_suite(n0: usize, n1: usize, max_deg: usize, cfg: KlrConfig) -> Report {
    let mut r = Report::new("klr-basis").param("alpha", [n0, n1]).param("max_deg", max_deg);
    let m = n0 + n1;
    for weight in 0..=max_deg / 2 {
        let mut window = weight + m * (m.saturating_sub(1)) / 2;
        let limit = window + 4;
        loop {
            match thin_basis_rank(n0, n1, weight, window, cfg) {
                Ok(blocks) => {
                    let short: Vec<_> = blocks.iter().filter(|(_, rk, c)| rk < c).collect();
                    if short.is_empty() {
                        let total: usize = blocks.iter().map(|b| b.2).sum();
                        r.run(format!("deg{}", 2 * weight), || Ok(Some(json!({"words": total, "window": 2 * window}))));
                        break;
                    }
                    if window >= limit {
                        let (i, rk, c) = short[0];
                        r.push(inconclusive(format!("deg{}", 2 * weight), format!("1_{i:?}: rank {rk} < {c} at window {}", 2 * window)));
                        break;
                    }
                    window += 1;
                }
                Err(e) => {
                    r.run(format!("deg{}", 2 * weight), || Err(e.to_string()));
                    break;
                }
            }
        }
    }
    r
}

/// Idempotency and image of `1_{i^{(n)}}` on `Pol_n`, inputs of weight `<= max_weight`.
pub fn divided_suite(n: usize, max_weight: usize) -> Report {
    let mut r = Report::new("divided").param("n", n).param("max_weight", max_weight);
    let ring = Ring::plain(n);
    let ins: Vec<Poly> = (0..=max_weight).flat_map(|w| monomials(ring, w)).map(|m| Poly::monomial(ring, m, BigRational::one())).collect();
    let full = Composition::single(n.max(1));
    r.run("idempotent", || {
        for p in &ins {
            let e = divided_idempotent_apply(p).map_err(|e| e.to_string())?;
            let ee = divided_idempotent_apply(&e).map_err(|e| e.to_string())?;
            if e != ee {
                return Err(format!("input {p}"));
            }
            if n > 0 && !e.is_invariant(&full, Act::First) {
                return Err(format!("image of {p} is {e}, not symmetric"));
            }
        }
        Ok(None)
    });
    r.run("fixes-invariants", || {
        for w in 0..=max_weight {
            for p in invariant_basis(ring, &full, Act::First, w) {
                let e = divided_idempotent_apply(&p).map_err(|e| e.to_string())?;
                if e != p {
                    return Err(format!("{p} maps to {e}"));
                }
            }
        }
        Ok(None)
    });
    r
}

/// `ψ_r Q 1_i = -∂_r(Q) 1_i` whenever `i_r = i_{r+1}`.
pub fn same_color_check(n0: usize, n1: usize, max_weight: usize, cfg: KlrConfig) -> std::result::Result<(), String> {
    for p in inputs(n0, n1, max_weight) {
        let (i, f) = p.comps.iter().next().unwrap();
        for r in 0..p.m.saturating_sub(1) {
            if i[r] == i[r + 1] {
                let got = psi_apply(&p, r, cfg).map_err(|e| e.to_string())?;
                let want = PolAlpha::single(i.clone(), f.demazure(r, Act::First).map_err(|e| e.to_string())?.scale_int(-1));
                let want = if want.comps.values().all(|q| q.is_zero()) { PolAlpha::zero(p.m) } else { want };
                if got != want {
                    return Err(format!("r = {}, input {p}", r + 1));
                }
            }
        }
    }
    Ok(())
}

/// All elementary thick generators on slots of `n`.
pub fn elementary_thick(n: usize) -> Result<Vec<(ThickKind, Composition, usize, usize, ThickWord)>> {
    let mut out = Vec::new();
    for lambda in Composition::all(n) {
        for pos in 0..lambda.len() {
            for a in 1..lambda.parts()[pos] {
                out.push((ThickKind::Split, lambda.clone(), pos, a, thick_generator(ThickKind::Split, &lambda, pos, a)?));
            }
            if pos + 1 < lambda.len() {
                out.push((ThickKind::Merge, lambda.clone(), pos, 0, thick_generator(ThickKind::Merge, &lambda, pos, 0)?));
                out.push((ThickKind::Crossing, lambda.clone(), pos, 0, thick_generator(ThickKind::Crossing, &lambda, pos, 0)?));
            }
        }
    }
    Ok(out)
}

/// Orbit-sum basis of the weight-`weight` part of `Poll_n^{(𝔖_λ)^2}`.
pub fn slot_basis(lambda: &Composition, weight: usize) -> Vec<Poly> {
    let ring = Ring::quiver(lambda.n());
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for m in monomials(ring, weight) {
        if seen.contains(&m) {
            continue;
        }
        let sym = symmetrize_slot(&Poly::monomial(ring, m, BigRational::one()), lambda);
        for (mm, _) in sym.terms() {
            seen.insert(mm.clone());
        }
        out.push(sym);
    }
    out
}

/// Slot basis elements of weight `<= max_weight`.
pub fn slot_inputs(lambda: &Composition, max_weight: usize) -> Vec<Poly> {
    (0..=max_weight).flat_map(|w| slot_basis(lambda, w)).collect()
}

/// Orbit sum of a monomial under `(𝔖_λ)^2`.
fn symmetrize_slot(p: &Poly, lambda: &Composition) -> Poly {
    let (mono, _) = p.terms().next().unwrap();
    let mut seen = std::collections::BTreeSet::new();
    let ring = p.ring();
    let mut acc = Poly::zero(ring);
    for g in crate::poly::parabolic_elements(lambda) {
        for h in crate::poly::parabolic_elements(lambda) {
            let q = Poly::monomial(ring, mono.clone(), BigRational::one()).permute(&g, Act::First).permute(&h, Act::Second);
            let (m2, _) = q.terms().next().unwrap();
            if seen.insert(m2.clone()) {
                acc = &acc + &q;
            }
        }
    }
    acc
}

/// Thick suite on the quiver side: split/merge closed forms and associativity.
pub fn thick_suite(max_n: usize, max_deg: usize, cfg: KlrConfig) -> Report {
    let mut r = Report::new("thick").param("max_n", max_n).param("max_deg", max_deg).param("h", [cfg.h01, cfg.h10]);
    let wt = max_deg / 2;
    for n in 2..=max_n {
        for lambda in Composition::all(n) {
            for pos in 0..lambda.len().saturating_sub(1) {
                let id = format!("merge-closed-form/{lambda}/{pos}");
                r.run(id, || {
                    let t = thick_generator(ThickKind::Merge, &lambda, pos, 0).map_err(|e| e.to_string())?;
                    for p in slot_inputs(&lambda, wt) {
                        let got = thick_apply(&t, &p, cfg).map_err(|e| e.to_string())?;
                        let want = merge_closed_form(&p, &lambda, pos).map_err(|e| e.to_string())?;
                        if got != want {
                            return Err(format!("input {p}: thin {got}, closed form {want}"));
                        }
                    }
                    Ok(None)
                });
            }
            for pos in 0..lambda.len() {
                for a in 1..lambda.parts()[pos] {
                    let id = format!("split-inclusion/{lambda}/{pos}/{a}");
                    r.run(id, || {
                        let t = thick_generator(ThickKind::Split, &lambda, pos, a).map_err(|e| e.to_string())?;
                        for p in slot_inputs(&lambda, wt) {
                            let got = thick_apply(&t, &p, cfg).map_err(|e| e.to_string())?;
                            if got != p {
                                return Err(format!("input {p}: {got}"));
                            }
                        }
                        Ok(None)
                    });
                }
            }
        }
        // associativity: (a,b,c) merged left-first vs right-first, and the split analogue
        for lambda in Composition::all(n).into_iter().filter(|l| l.len() == 3) {
            let id = format!("assoc/{lambda}");
            r.run(id, || {
                let left = thick_generator(ThickKind::Merge, &lambda, 0, 0)
                    .and_then(|t| Ok(t.clone().then(&thick_generator(ThickKind::Merge, &t.dst, 0, 0)?)?))
                    .map_err(|e| e.to_string())?;
                let right = thick_generator(ThickKind::Merge, &lambda, 1, 0)
                    .and_then(|t| Ok(t.clone().then(&thick_generator(ThickKind::Merge, &t.dst, 0, 0)?)?))
                    .map_err(|e| e.to_string())?;
                for p in slot_inputs(&lambda, wt) {
                    let a = thick_apply(&left, &p, cfg).map_err(|e| e.to_string())?;
                    let b = thick_apply(&right, &p, cfg).map_err(|e| e.to_string())?;
                    if a != b {
                        return Err(format!("merge input {p}: {a} vs {b}"));
                    }
                }
                let top = Composition::single(n);
                let (x, y) = (lambda.parts()[0], lambda.parts()[1]);
                let s_left = thick_generator(ThickKind::Split, &top, 0, x + y)
                    .and_then(|t| Ok(t.clone().then(&thick_generator(ThickKind::Split, &t.dst, 0, x)?)?))
                    .map_err(|e| e.to_string())?;
                let s_right = thick_generator(ThickKind::Split, &top, 0, x)
                    .and_then(|t| Ok(t.clone().then(&thick_generator(ThickKind::Split, &t.dst, 1, y)?)?))
                    .map_err(|e| e.to_string())?;
                for p in slot_inputs(&top, wt) {
                    let a = thick_apply(&s_left, &p, cfg).map_err(|e| e.to_string())?;
                    let b = thick_apply(&s_right, &p, cfg).map_err(|e| e.to_string())?;
                    if a != b {
                        return Err(format!("split input {p}: {a} vs {b}"));
                    }
                }
                Ok(None)
            });
        }
    }
    r.run("noncuspidal-layers", || {
        let mut flagged = Vec::new();
        for n in 1..=max_n {
            for (kind, lambda, pos, a, t) in elementary_thick(n).map_err(|e| e.to_string())? {
                let bad = t.noncuspidal_layers();
                if !bad.is_empty() {
                    flagged.push(json!({"kind": kind, "lambda": lambda.parts(), "pos": pos, "a": a, "layers": bad.len()}));
                }
            }
        }
        Ok(Some(json!({"flagged": flagged})))
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn y(m: usize, s: &str) -> Poly {
        Poly::parse(Ring::plain(m), s).unwrap()
    }

    #[test]
    fn psi_examples() {
        let cfg = KlrConfig::default();
        let p = PolAlpha::single(vec![0, 0], y(2, "y1"));
        assert_eq!(psi_apply(&p, 0, cfg).unwrap(), PolAlpha::single(vec![0, 0], y(2, "-1")));
        let s = PolAlpha::single(vec![0, 0], y(2, "y1+y2"));
        assert!(psi_apply(&s, 0, cfg).unwrap().is_zero());
        let q = PolAlpha::single(vec![1, 0], y(2, "1"));
        let sq = psi_apply(&psi_apply(&q, 0, cfg).unwrap(), 0, cfg).unwrap();
        assert_eq!(sq, PolAlpha::single(vec![1, 0], y(2, "(y1-y2)^2")));
    }

    #[test]
    fn relations_small() {
        for (n0, n1) in [(1, 0), (1, 1), (2, 1), (1, 2)] {
            let rep = relation_suite(n0, n1, 4, KlrConfig::default());
            assert_eq!(rep.status(), Status::Pass, "{}", rep.to_json());
        }
        let other = KlrConfig { h01: 2, h10: 0 };
        assert_eq!(relation_suite(2, 1, 4, other).status(), Status::Pass);
    }

    #[test]
    fn divided_examples() {
        assert_eq!(divided_idempotent_apply(&y(2, "y1+y2")).unwrap(), y(2, "y1+y2"));
        assert!(divided_idempotent_apply(&y(2, "y1")).unwrap().is_zero());
        assert_eq!(divided_idempotent_apply(&y(1, "y1^3")).unwrap(), y(1, "y1^3"));
        assert_eq!(divided_suite(3, 4).status(), Status::Pass);
    }

    #[test]
    fn noncuspidal_examples() {
        assert!(!noncuspidal(&[0, 1, 0, 1]));
        assert!(noncuspidal(&[1, 0]));
        assert!(noncuspidal(&[0, 1, 1, 0]));
    }

    #[test]
    fn thick_n2() {
        let lambda = Composition::thin(2);
        let t = thick_generator(ThickKind::Merge, &lambda, 0, 0).unwrap();
        let ring = Ring::quiver(2);
        let got = thick_apply(&t, &Poly::one(ring), KlrConfig::default()).unwrap();
        assert_eq!(got, Poly::int(ring, 2));
        let rep = thick_suite(2, 4, KlrConfig::default());
        assert_eq!(rep.status(), Status::Pass, "{}", rep.to_json());
    }
}
