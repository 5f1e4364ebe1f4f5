//! The curve Schur algebra of P1 on its polynomial representation
//! `⊕_λ P_n^{S_λ}`, with `P_n = k[x, c]/(c_i^2)`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::perm::{coset_reps, double_coset_reps, w0ab, Composition, DoubleCoset, Perm};
use crate::poly::{invariant_basis, Act, Flavor, Mono, Poly, PolyJson, Ring};
use crate::report::{inconclusive, Report};

pub fn check_slot(p: &Poly, lambda: &Composition) -> Result<()> {
    if p.ring().flavor != Flavor::Curve || p.ring().n != lambda.n() {
        return Err(Error::SlotMismatch(format!("{} is not the curve ring for {lambda}", p.ring())));
    }
    if !p.is_invariant(lambda, Act::Diagonal) {
        return Err(Error::NotInvariant(format!("{p} is not S_{lambda}-invariant")));
    }
    Ok(())
}

/// Split: inclusion of invariants.
pub fn split_apply(p: &Poly, lambda: &Composition, lambda_prime: &Composition) -> Result<Poly> {
    if !lambda_prime.refines(lambda) {
        return Err(Error::SlotMismatch(format!("{lambda_prime} does not refine {lambda}")));
    }
    check_slot(p, lambda)?;
    Ok(p.clone())
}

fn block_perm(n: usize, offset: usize, local: &Perm) -> Perm {
    let mut img: Vec<usize> = (0..n).collect();
    for (i, &w) in local.images().iter().enumerate() {
        img[offset + i] = offset + w;
    }
    Perm::new(img).unwrap()
}

fn sign(w: &Perm) -> i64 {
    if w.length() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Elementary merge of parts `k`, `k+1` of `fine`: the coset sum
/// `Σ_w w(P ∏ (x_j - x_i + c_i + c_j)/(x_j - x_i))` over `i` in the first part,
/// `j` in the second, evaluated over the common denominator `∏_{i<j}(x_j - x_i)`
/// of the block and divided exactly.
pub fn merge_elementary(p: &Poly, fine: &Composition, k: usize) -> Result<Poly> {
    check_slot(p, fine)?;
    let ring = p.ring();
    let n = ring.n;
    let coarse = fine.merge_at(k)?;
    let off = fine.offsets()[k];
    let (a, b) = (fine.parts()[k], fine.parts()[k + 1]);
    let first: Vec<usize> = (off..off + a).collect();
    let second: Vec<usize> = (off + a..off + a + b).collect();
    let x = |i: usize| Poly::first(ring, i);
    let c = |i: usize| Poly::second(ring, i);
    let mut num = p.clone();
    for &i in &first {
        for &j in &second {
            num = &num * &(&(&(&x(j) - &x(i)) + &c(i)) + &c(j));
        }
    }
    // cofactor completing the cross pairs to the full block Vandermonde
    for grp in [&first, &second] {
        for (s, &i) in grp.iter().enumerate() {
            for &j in &grp[s + 1..] {
                num = &num * &(&x(j) - &x(i));
            }
        }
    }
    let local_big = Composition::single(a + b);
    let local_fine = Composition::new(vec![a, b])?;
    let mut total = Poly::zero(ring);
    for w in coset_reps(&local_big, &local_fine)? {
        let g = block_perm(n, off, &w);
        total = &total + &num.permute(&g, Act::Diagonal).scale_int(sign(&w));
    }
    for s in 0..a + b {
        for t in s + 1..a + b {
            total = total.div_linear(off + t, off + s)?;
        }
    }
    if !total.is_invariant(&coarse, Act::Diagonal) {
        return Err(Error::NotInvariant(format!("merge output {total} not S_{coarse}-invariant")));
    }
    Ok(total)
}

/// The same merge written as `∂_{w0,a,b}(P ∏ (x_i - x_j - c_i - c_j))` with diagonal
/// Demazure operators, used as an independent cross-check.
pub fn merge_demazure_form(p: &Poly, fine: &Composition, k: usize) -> Result<Poly> {
    check_slot(p, fine)?;
    let ring = p.ring();
    let off = fine.offsets()[k];
    let (a, b) = (fine.parts()[k], fine.parts()[k + 1]);
    let mut f = p.clone();
    for i in off..off + a {
        for j in off + a..off + a + b {
            let factor = &(&(&Poly::first(ring, i) - &Poly::first(ring, j)) - &Poly::second(ring, i)) - &Poly::second(ring, j);
            f = &f * &factor;
        }
    }
    let (_, word) = w0ab(a, b);
    let shifted: Vec<usize> = word.iter().map(|&r| r + off).collect();
    f.demazure_word(&shifted, Act::Diagonal)
}

/// General merge `fine -> coarse` as a chain of elementary merges, leftmost block first.
pub fn merge_apply(p: &Poly, fine: &Composition, coarse: &Composition) -> Result<Poly> {
    if !fine.refines(coarse) {
        return Err(Error::SlotMismatch(format!("{fine} does not refine {coarse}")));
    }
    check_slot(p, fine)?;
    let mut cur = fine.clone();
    let mut q = p.clone();
    let mut k = 0;
    while cur != *coarse {
        if cur.parts()[k] == coarse.parts()[k] {
            k += 1;
            continue;
        }
        q = merge_elementary(&q, &cur, k)?;
        cur = cur.merge_at(k)?;
    }
    Ok(q)
}

/// Crossing `R`: merge parts `k`, `k+1`, then split them in swapped order.
pub fn crossing_apply(p: &Poly, lambda: &Composition, k: usize) -> Result<(Poly, Composition)> {
    let merged = merge_elementary(p, lambda, k)?;
    let target = lambda.swap_at(k)?;
    Ok((merged, target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchurGen {
    /// multiply by an `S_λ`-invariant polynomial in the current slot
    Poly(Poly),
    /// split part `pos` of the current slot into `(a, part - a)`
    Split { pos: usize, a: usize },
    /// merge parts `pos`, `pos+1`
    Merge { pos: usize },
    /// crossing of parts `pos`, `pos+1`
    Cross { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWord {
    pub source: Composition,
    /// applied left to right
    pub gens: Vec<SchurGen>,
}

impl SchurWord {
    pub fn identity(source: Composition) -> SchurWord {
        SchurWord { source, gens: Vec::new() }
    }

    pub fn target(&self) -> Result<Composition> {
        let mut cur = self.source.clone();
        for g in &self.gens {
            cur = match g {
                SchurGen::Poly(_) => cur,
                SchurGen::Split { pos, a } => cur.split_at(*pos, *a)?,
                SchurGen::Merge { pos } => cur.merge_at(*pos)?,
                SchurGen::Cross { pos } => cur.swap_at(*pos)?,
            };
        }
        Ok(cur)
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let mut cur = self.source.clone();
        check_slot(p, &cur)?;
        let mut q = p.clone();
        for g in &self.gens {
            match g {
                SchurGen::Poly(f) => {
                    check_slot(f, &cur)?;
                    q = &q * f;
                }
                SchurGen::Split { pos, a } => {
                    let next = cur.split_at(*pos, *a)?;
                    q = split_apply(&q, &cur, &next)?;
                    cur = next;
                }
                SchurGen::Merge { pos } => {
                    q = merge_elementary(&q, &cur, *pos)?;
                    cur = cur.merge_at(*pos)?;
                }
                SchurGen::Cross { pos } => {
                    let (r, t) = crossing_apply(&q, &cur, *pos)?;
                    q = r;
                    cur = t;
                }
            }
        }
        Ok(q)
    }

    /// Append the elementary splits taking `self.target()` to the refinement `fine`.
    pub fn push_split_to(&mut self, fine: &Composition) -> Result<()> {
        let mut cur = self.target()?;
        if !fine.refines(&cur) {
            return Err(Error::SlotMismatch(format!("{fine} does not refine {cur}")));
        }
        let mut k = 0;
        while cur != *fine {
            if cur.parts()[k] == fine.parts()[k] {
                k += 1;
                continue;
            }
            let a = fine.parts()[k];
            self.gens.push(SchurGen::Split { pos: k, a });
            cur = cur.split_at(k, a)?;
        }
        Ok(())
    }

    /// Append the elementary merges taking `self.target()` to `coarse`.
    pub fn push_merge_to(&mut self, coarse: &Composition) -> Result<()> {
        let mut cur = self.target()?;
        if !cur.refines(coarse) {
            return Err(Error::SlotMismatch(format!("{cur} does not refine {coarse}")));
        }
        let mut k = 0;
        while cur != *coarse {
            if cur.parts()[k] == coarse.parts()[k] {
                k += 1;
                continue;
            }
            self.gens.push(SchurGen::Merge { pos: k });
            cur = cur.merge_at(k)?;
        }
        Ok(())
    }
}

/// `Ψ_g^P = M_{μ'}^μ R_{λ'}^{μ'}(w) P S_λ^{λ'}` as a word from `λ` to `μ`.
pub fn psi_word(mu: &Composition, lambda: &Composition, d: &DoubleCoset, p: &Poly) -> Result<SchurWord> {
    let mut word = SchurWord::identity(lambda.clone());
    word.push_split_to(&d.lambda_prime)?;
    check_slot(p, &d.lambda_prime)?;
    if *p != Poly::one(p.ring()) {
        word.gens.push(SchurGen::Poly(p.clone()));
    }
    for &k in d.w_word.iter().rev() {
        word.gens.push(SchurGen::Cross { pos: k });
    }
    if word.target()? != d.mu_prime {
        return Err(Error::Invalid(format!("crossings end at {} instead of {}", word.target()?, d.mu_prime)));
    }
    word.push_merge_to(mu)?;
    Ok(word)
}

/// Columns: actions of `ops` on each input, flattened over a shared monomial index.
pub fn operator_matrix<F>(ops: &[F], inputs: &[Poly]) -> Result<Vec<Vec<BigRational>>>
where
    F: Fn(&Poly) -> Result<Poly>,
{
    let outs: Vec<Vec<Poly>> = ops.iter().map(|op| inputs.iter().map(op).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(stack_columns(&outs))
}

/// `outs[col][input]` to a dense row-major matrix with rows indexed by `(input, monomial)`.
pub fn stack_columns(outs: &[Vec<Poly>]) -> Vec<Vec<BigRational>> {
    let mut index: std::collections::BTreeMap<(usize, Mono), usize> = std::collections::BTreeMap::new();
    for col in outs {
        for (i, p) in col.iter().enumerate() {
            for (m, _) in p.terms() {
                let len = index.len();
                index.entry((i, m.clone())).or_insert(len);
            }
        }
    }
    let mut rows = vec![vec![BigRational::from_integer(0.into()); outs.len()]; index.len()];
    for (j, col) in outs.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                rows[index[&(i, m.clone())]][j] = c.clone();
            }
        }
    }
    rows
}

/// Matrix of words (all from the same source slot) on the canonical basis of the
/// weight-`weight` invariants of the source slot.
pub fn graded_matrix(words: &[SchurWord], ring: Ring, weight: usize) -> Result<Vec<Vec<BigRational>>> {
    let Some(first) = words.first() else {
        return Ok(Vec::new());
    };
    let src = first.source.clone();
    let tgt = first.target()?;
    for w in words {
        if w.source != src || w.target()? != tgt {
            return Err(Error::SlotMismatch("words do not share slots".into()));
        }
    }
    let inputs = invariant_basis(ring, &src, Act::Diagonal, weight);
    let ops: Vec<_> = words.iter().map(|w| move |p: &Poly| w.apply(p)).collect();
    operator_matrix(&ops, &inputs)
}

/// Rank over ℚ of a rational matrix.
pub fn rank_q(m: &[Vec<BigRational>]) -> usize {
    linalg::rank_z(&linalg::integerize(m))
}

/// All `Ψ_g^P` words from `λ` to `μ` with `P` of the given weight.
pub fn psi_set(mu: &Composition, lambda: &Composition, weight: usize, ring: Ring) -> Result<Vec<SchurWord>> {
    let mut words = Vec::new();
    for d in double_coset_reps(mu, lambda)? {
        for p in invariant_basis(ring, &d.lambda_prime, Act::Diagonal, weight) {
            words.push(psi_word(mu, lambda, &d, &p)?);
        }
    }
    Ok(words)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SchurGenJson {
    pub kind: String,
    pub lambda: Vec<usize>,
    pub pos: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poly: Option<PolyJson>,
}

/// Parse a JSON word; each record names the slot it acts on.
pub fn word_from_json(gens: &[SchurGenJson]) -> Result<SchurWord> {
    let Some(first) = gens.first() else {
        return Err(Error::Parse("empty word has no source slot; supply the slot separately".into()));
    };
    let source = Composition::new(first.lambda.clone())?;
    let mut word = SchurWord::identity(source);
    for g in gens {
        let cur = word.target()?;
        if cur.parts() != g.lambda.as_slice() {
            return Err(Error::SlotMismatch(format!("generator expects slot {:?} but the word is at {cur}", g.lambda)));
        }
        let gen = match g.kind.as_str() {
            "split" => SchurGen::Split { pos: g.pos, a: g.a.ok_or_else(|| Error::Parse("split needs field a".into()))? },
            "merge" => SchurGen::Merge { pos: g.pos },
            "cross" => SchurGen::Cross { pos: g.pos },
            "poly" => SchurGen::Poly(Poly::from_json(g.poly.as_ref().ok_or_else(|| Error::Parse("poly generator needs field poly".into()))?)?),
            other => return Err(Error::Parse(format!("unknown generator kind {other:?}"))),
        };
        word.gens.push(gen);
        word.target()?;
    }
    Ok(word)
}

/// General merge `fine -> coarse` straight from the coset sum over `S_coarse / S_fine`,
/// over the common denominator of the coarse-block Vandermonde.
pub fn merge_direct(p: &Poly, fine: &Composition, coarse: &Composition) -> Result<Poly> {
    if !fine.refines(coarse) {
        return Err(Error::SlotMismatch(format!("{fine} does not refine {coarse}")));
    }
    check_slot(p, fine)?;
    let ring = p.ring();
    let n = ring.n;
    let block_of = |l: &Composition| -> Vec<usize> { l.parts().iter().enumerate().flat_map(|(b, &k)| std::iter::repeat(b).take(k)).collect() };
    let (fb, cb) = (block_of(fine), block_of(coarse));
    let fine_block = |i: usize| fb[i];
    let coarse_block = |i: usize| cb[i];
    let x = |i: usize| Poly::first(ring, i);
    let c = |i: usize| Poly::second(ring, i);
    let mut num = p.clone();
    for i in 0..n {
        for j in i + 1..n {
            if coarse_block(i) != coarse_block(j) {
                continue;
            }
            let d = &x(j) - &x(i);
            num = if fine_block(i) == fine_block(j) { &num * &d } else { &num * &(&(&d + &c(i)) + &c(j)) };
        }
    }
    let mut total = Poly::zero(ring);
    for w in coset_reps(coarse, fine)? {
        total = &total + &num.permute(&w, Act::Diagonal).scale_int(sign(&w));
    }
    for i in 0..n {
        for j in i + 1..n {
            if coarse_block(i) == coarse_block(j) {
                total = total.div_linear(j, i)?;
            }
        }
    }
    if !total.is_invariant(coarse, Act::Diagonal) {
        return Err(Error::NotInvariant(format!("merge output {total} not S_{coarse}-invariant")));
    }
    Ok(total)
}

fn slot_window(ring: Ring, lambda: &Composition, max_weight: usize) -> Vec<Poly> {
    (0..=max_weight).flat_map(|w| invariant_basis(ring, lambda, Act::Diagonal, w)).collect()
}

/// Split and merge associativity for every chain `λ'' ⊂ λ' ⊂ λ` of compositions of `n`.
pub fn smassoc(n: usize, max_deg: usize) -> std::result::Result<usize, String> {
    let ring = Ring::curve(n);
    let comps = Composition::all(n);
    let e = |e: Error| e.to_string();
    let mut checked = 0;
    for l2 in &comps {
        let coarser: Vec<&Composition> = comps.iter().filter(|l| l2.refines(l) && *l != l2).collect();
        for p in slot_window(ring, l2, max_deg / 2) {
            let direct: Vec<Poly> = coarser.iter().map(|l| merge_direct(&p, l2, l)).collect::<Result<_>>().map_err(e)?;
            for (a, l1) in coarser.iter().enumerate() {
                if merge_apply(&p, l2, l1).map_err(e)? != direct[a] {
                    return Err(format!("elementary chain {l2} -> {l1} differs on {p}"));
                }
                for (b, l0) in coarser.iter().enumerate() {
                    if l1.refines(l0) && l1 != l0 {
                        if merge_direct(&direct[a], l1, l0).map_err(e)? != direct[b] {
                            return Err(format!("merges {l2} -> {l1} -> {l0} differ on {p}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
        for l0 in &coarser {
            for p in slot_window(ring, l0, max_deg / 2) {
                for l1 in coarser.iter().filter(|l1| l1.refines(l0) && l1 != &l0) {
                    let two = split_apply(&split_apply(&p, l0, l1).map_err(e)?, l1, l2).map_err(e)?;
                    if two != split_apply(&p, l0, l2).map_err(e)? {
                        return Err(format!("splits {l0} -> {l1} -> {l2} on {p}"));
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// The thin merge `M = (1 + s_1) - (c_1 + c_2) ∂_1` on `P_2`, plus the two
/// commutation relations of `S`, `M` with symmetric polynomials.
pub fn n2_relations(max_deg: usize) -> std::result::Result<usize, String> {
    let ring = Ring::curve(2);
    let thin = Composition::thin(2);
    let top = Composition::single(2);
    let e = |e: Error| e.to_string();
    let qs = slot_window(ring, &thin, max_deg / 2);
    let ps = slot_window(ring, &top, max_deg / 2);
    let mut checked = 0;
    for q in &qs {
        let m = merge_elementary(q, &thin, 0).map_err(e)?;
        let want = &(q + &q.swap(0, Act::Diagonal)) - &q.delta_demazure(0).map_err(e)?;
        if m != want {
            return Err(format!("S Q M on {q}: {m}, expected {want}"));
        }
        checked += 1;
    }
    for p in &ps {
        if split_apply(p, &top, &thin).map_err(e)? != *p {
            return Err(format!("P S != S f(P) for {p}"));
        }
        for q in qs.iter().filter(|q| q.max_weight().unwrap_or(0) + p.max_weight().unwrap_or(0) <= max_deg / 2) {
            let lhs = merge_elementary(&(p * q), &thin, 0).map_err(e)?;
            let rhs = p * &merge_elementary(q, &thin, 0).map_err(e)?;
            if lhs != rhs {
                return Err(format!("M f(P) != P M for P = {p}, Q = {q}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

const RANK_PRIME: u64 = 2305843009213693951;

/// Rank of the operators `words` on the window of source-slot invariants of weight
/// `<= window`. A rank mod a large prime is a lower bound for the rank over ℚ.
fn window_rank(words: &[SchurWord], ring: Ring, window: usize) -> Result<usize> {
    let Some(first) = words.first() else { return Ok(0) };
    let inputs = slot_window(ring, &first.source, window);
    let outs: Vec<Vec<Poly>> = words.iter().map(|w| inputs.iter().map(|p| w.apply(p)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let cols = stack_columns(&outs);
    let rows = linalg::transpose(&cols);
    let m = linalg::integerize(&rows);
    Ok(linalg::rank_mod_p(&m, RANK_PRIME))
}

/// The `Ψ_g^P` words from `λ` to `μ` with `P` of weight `dw` act by linearly independent
/// operators. The window of inputs grows until the rank is full or the bound is hit.
pub fn psi_rank_check(mu: &Composition, lambda: &Composition, dw: usize) -> std::result::Result<Option<serde_json::Value>, (bool, String)> {
    let ring = Ring::curve(lambda.n());
    let words = psi_set(mu, lambda, dw, ring).map_err(|e| (false, e.to_string()))?;
    let expected: usize = double_coset_reps(mu, lambda)
        .map_err(|e| (false, e.to_string()))?
        .iter()
        .map(|d| invariant_basis(ring, &d.lambda_prime, Act::Diagonal, dw).len())
        .sum();
    if words.len() != expected {
        return Err((false, format!("{} words, expected {expected}", words.len())));
    }
    let limit = dw + lambda.n() * (lambda.n() - 1) / 2 + 2;
    let mut window = 0;
    loop {
        let rk = window_rank(&words, ring, window).map_err(|e| (false, e.to_string()))?;
        if rk == expected {
            return Ok(Some(serde_json::json!({"columns": expected, "window_degree": 2 * window})));
        }
        if window >= limit {
            return Err((true, format!("rank {rk} of {expected} on inputs of degree <= {}", 2 * window)));
        }
        window += 1;
    }
}

pub fn schur_suite(max_n: usize, max_deg: usize) -> Report {
    let mut r = Report::new("schur").param("max_n", max_n).param("max_deg", max_deg);
    for n in 1..=max_n.min(4) {
        r.run(format!("smassoc/n{n}"), || smassoc(n, max_deg).map(|k| Some(serde_json::json!({"checked": k}))));
    }
    if max_n >= 2 {
        r.run("n2-relations", || n2_relations(max_deg.min(6)).map(|k| Some(serde_json::json!({"checked": k}))));
        r.run("merge-demazure-form", || {
            for n in 2..=max_n.min(3) {
                let ring = Ring::curve(n);
                for fine in Composition::all(n).into_iter().filter(|c| c.len() >= 2) {
                    for k in 0..fine.len() - 1 {
                        for p in slot_window(ring, &fine, (max_deg / 2).min(3)) {
                            let a = merge_elementary(&p, &fine, k).map_err(|e| e.to_string())?;
                            let b = merge_demazure_form(&p, &fine, k).map_err(|e| e.to_string())?;
                            if a != b {
                                return Err(format!("{fine} at {k} on {p}: {a} vs {b}"));
                            }
                        }
                    }
                }
            }
            Ok(None)
        });
    }
    r
}

pub fn psi_basis_suite(max_n: usize, max_deg: usize) -> Report {
    let mut r = Report::new("psi-basis").param("max_n", max_n).param("max_deg", max_deg);
    for n in 1..=max_n {
        for mu in Composition::all(n) {
            for lambda in Composition::all(n) {
                for dw in 0..=max_deg / 2 {
                    let id = format!("{mu}<-{lambda}/deg{}", 2 * dw);
                    match psi_rank_check(&mu, &lambda, dw) {
                        Ok(detail) => r.run(id, || Ok(detail)),
                        Err((true, why)) => r.push(inconclusive(id, why)),
                        Err((false, why)) => r.run(id, || Err(why)),
                    }
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Ring {
        Ring::curve(2)
    }
    fn p(s: &str) -> Poly {
        Poly::parse(r2(), s).unwrap()
    }

    #[test]
    fn merge_examples() {
        let thin = Composition::thin(2);
        assert_eq!(merge_elementary(&p("1"), &thin, 0).unwrap(), p("2"));
        assert_eq!(merge_elementary(&p("c1"), &thin, 0).unwrap(), p("c1+c2"));
        assert_eq!(merge_elementary(&p("x1"), &thin, 0).unwrap(), p("x1+x2-c1-c2"));
    }

    #[test]
    fn split_requires_invariance() {
        let one = Composition::single(2);
        let thin = Composition::thin(2);
        assert_eq!(split_apply(&p("x1+x2"), &one, &thin).unwrap(), p("x1+x2"));
        assert!(matches!(split_apply(&p("x1"), &one, &thin), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn demazure_form_agrees_small() {
        let thin = Composition::thin(2);
        for s in ["1", "x1", "c1", "x1^2*c2", "x1*x2^3 - c1*x2"] {
            assert_eq!(merge_elementary(&p(s), &thin, 0).unwrap(), merge_demazure_form(&p(s), &thin, 0).unwrap());
        }
    }

    #[test]
    fn merge_then_split_doubles() {
        let one = Composition::single(2);
        let mut w = SchurWord::identity(one.clone());
        w.gens.push(SchurGen::Split { pos: 0, a: 1 });
        w.gens.push(SchurGen::Merge { pos: 0 });
        assert_eq!(w.apply(&p("x1*x2 + c1 + c2")).unwrap(), p("2*x1*x2 + 2*c1 + 2*c2"));
    }

    #[test]
    fn worked_psi_example() {
        let lambda = Composition::new(vec![3, 1]).unwrap();
        let mu = Composition::new(vec![2, 2]).unwrap();
        let d = double_coset_reps(&mu, &lambda).unwrap().into_iter().find(|d| d.g.one_based() == vec![1, 3, 4, 2]).unwrap();
        let ring = Ring::curve(4);
        let pp = Poly::parse(ring, "x1^2*x2*x3").unwrap();
        let word = psi_word(&mu, &lambda, &d, &pp).unwrap();
        assert_eq!(word.target().unwrap(), mu);
        assert!(matches!(word.gens[0], SchurGen::Split { pos: 0, a: 1 }));
    }

    #[test]
    fn direct_merge_matches_elementary() {
        let thin = Composition::thin(2);
        for s in ["1", "x1", "c1", "x1^2*c2"] {
            assert_eq!(merge_direct(&p(s), &thin, &Composition::single(2)).unwrap(), merge_elementary(&p(s), &thin, 0).unwrap());
        }
        assert!(smassoc(3, 4).is_ok());
        assert!(n2_relations(4).is_ok());
    }

    #[test]
    fn psi_rank_small() {
        let thin = Composition::thin(2);
        for dw in 0..=2 {
            assert!(psi_rank_check(&thin, &thin, dw).is_ok());
        }
    }
}
