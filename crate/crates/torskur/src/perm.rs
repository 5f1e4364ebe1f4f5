//! Permutations, reduced words, compositions and (double) coset representatives.
//!
//! Positions are 0-based internally. A permutation `w` acts on variables by
//! `x_i -> x_{w(i)}`, which makes `(v*w)(x_i) = v(w(x_i))` a left action.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// From 0-based one-line notation.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based one-line notation, as the permutations are usually written.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::Invalid("one-based permutation contains 0".into()));
        }
        Perm::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn transposition(n: usize, r: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(r, r + 1);
        Perm(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &w) in self.0.iter().enumerate() {
            inv[w] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &w)| i == w)
    }

    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.0[i] > self.0[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Lexicographically smallest reduced word `[k1,..,kr]` (0-based) with
    /// `self = s_{k1} ... s_{kr}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while !w.is_identity() {
            let pos = w.inverse();
            // left descent k: value k+1 sits before value k
            let k = (0..w.n() - 1).find(|&k| pos.0[k] > pos.0[k + 1]).unwrap();
            word.push(k);
            w = Perm::transposition(w.n(), k).compose(&w);
        }
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        let mut w = Perm::identity(n);
        for &k in word {
            w = w.compose(&Perm::transposition(n, k));
        }
        w
    }

    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn is_reduced(n: usize, word: &[usize]) -> bool {
    Perm::from_word(n, word).length() == word.len()
}

/// The block swap `w_{0,a,b}`: `i -> i+b` on the first `a` positions and
/// `i -> i-a` on the last `b`, with its lexicographically smallest reduced word.
pub fn w0ab(a: usize, b: usize) -> (Perm, Vec<usize>) {
    let n = a + b;
    let images = (0..n).map(|i| if i < a { i + b } else { i - a }).collect();
    let w = Perm(images);
    let word = w.reduced_word();
    (w, word)
}

/// Longest element of `S_n`.
pub fn w0(n: usize) -> (Perm, Vec<usize>) {
    let w = Perm((0..n).rev().collect());
    let word = w.reduced_word();
    (w, word)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("composition with zero part: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn thin(n: usize) -> Composition {
        Composition(vec![1; n])
    }

    pub fn single(n: usize) -> Composition {
        if n == 0 {
            Composition(vec![])
        } else {
            Composition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Start offset of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&p| {
                let o = acc;
                acc += p;
                o
            })
            .collect()
    }

    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        self.offsets().into_iter().zip(&self.0).map(|(o, &p)| o..o + p).collect()
    }

    /// Simple reflections `s_r` generating `S_lambda`.
    pub fn generators(&self) -> Vec<usize> {
        self.blocks().into_iter().flat_map(|b| b.start..b.end.saturating_sub(1)).collect()
    }

    /// Is `self` a refinement of `coarse`?
    pub fn refines(&self, coarse: &Composition) -> bool {
        if self.n() != coarse.n() {
            return false;
        }
        let mut it = self.0.iter();
        for &c in &coarse.0 {
            let mut s = 0;
            while s < c {
                match it.next() {
                    Some(&p) => s += p,
                    None => return false,
                }
            }
            if s != c {
                return false;
            }
        }
        it.next().is_none()
    }

    /// Split part `k` into `(a, part-a)`.
    pub fn split_at(&self, k: usize, a: usize) -> Result<Composition> {
        let p = *self.0.get(k).ok_or_else(|| Error::Invalid("split position out of range".into()))?;
        if a == 0 || a >= p {
            return Err(Error::Invalid(format!("cannot split part {p} as ({a},{})", p.saturating_sub(a))));
        }
        let mut v = self.0.clone();
        v[k] = a;
        v.insert(k + 1, p - a);
        Ok(Composition(v))
    }

    /// Merge parts `k` and `k+1`.
    pub fn merge_at(&self, k: usize) -> Result<Composition> {
        if k + 1 >= self.len() {
            return Err(Error::Invalid("merge position out of range".into()));
        }
        let mut v = self.0.clone();
        let b = v.remove(k + 1);
        v[k] += b;
        Ok(Composition(v))
    }

    pub fn swap_at(&self, k: usize) -> Result<Composition> {
        if k + 1 >= self.len() {
            return Err(Error::Invalid("crossing position out of range".into()));
        }
        let mut v = self.0.clone();
        v.swap(k, k + 1);
        Ok(Composition(v))
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered set partitions of `items` into pieces of the given sizes, each
/// piece kept increasing. Lexicographic in the concatenated output.
fn shuffles(items: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    if sizes.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let k = sizes[0];
    for chosen in combinations(items, k) {
        let rest: Vec<usize> = items.iter().copied().filter(|i| !chosen.contains(i)).collect();
        for tail in shuffles(&rest, &sizes[1..]) {
            let mut v = chosen.clone();
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimal length representatives of `S_lambda / S_mu` for `mu` refining `lambda`:
/// the elements of `S_lambda` increasing on every block of `mu`.
pub fn coset_reps(lambda: &Composition, mu: &Composition) -> Result<Vec<Perm>> {
    if !mu.refines(lambda) {
        return Err(Error::Invalid(format!("{mu} does not refine {lambda}")));
    }
    let n = lambda.n();
    let mut per_block: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut mu_iter = mu.parts().iter();
    for block in lambda.blocks() {
        let mut sizes = Vec::new();
        let mut s = 0;
        while s < block.len() {
            let p = *mu_iter.next().unwrap();
            sizes.push(p);
            s += p;
        }
        let items: Vec<usize> = block.clone().collect();
        per_block.push(shuffles(&items, &sizes));
    }
    let mut out = vec![Vec::with_capacity(n)];
    for options in per_block {
        let mut next = Vec::new();
        for prefix in &out {
            for o in &options {
                let mut v: Vec<usize> = prefix.clone();
                v.extend(o);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(Perm).collect())
}

/// A minimal double coset representative `g` of `S_mu \ S_n / S_lambda`
/// together with the induced refinements and block permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Contingency matrix: rows indexed by parts of `mu`, columns by parts of `lambda`.
    pub matrix: Vec<Vec<usize>>,
    pub g: Perm,
    /// `S_{lambda'} = S_lambda ∩ g^{-1} S_mu g`
    pub lambda_prime: Composition,
    pub mu_prime: Composition,
    /// Block permutation taking the parts of `lambda'` to those of `mu'`.
    pub w: Perm,
    pub w_word: Vec<usize>,
}

fn contingency(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    // fill row by row, lexicographically
    fn rec(rows: &[usize], col_left: &mut Vec<usize>, i: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == rows.len() {
            if col_left.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut row = vec![0; col_left.len()];
        fill(rows, col_left, i, 0, rows[i], &mut row, cur, out);
    }
    #[allow(clippy::too_many_arguments)]
    fn fill(
        rows: &[usize],
        col_left: &mut Vec<usize>,
        i: usize,
        j: usize,
        left: usize,
        row: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if j == col_left.len() {
            if left == 0 {
                cur.push(row.clone());
                rec(rows, col_left, i + 1, cur, out);
                cur.pop();
            }
            return;
        }
        let hi = left.min(col_left[j]);
        for a in (0..=hi).rev() {
            row[j] = a;
            col_left[j] -= a;
            fill(rows, col_left, i, j + 1, left - a, row, cur, out);
            col_left[j] += a;
        }
        row[j] = 0;
    }
    let mut out = Vec::new();
    rec(rows, &mut cols.to_vec(), 0, &mut Vec::new(), &mut out);
    out
}

pub fn double_coset_reps(mu: &Composition, lambda: &Composition) -> Result<Vec<DoubleCoset>> {
    if mu.n() != lambda.n() {
        return Err(Error::Invalid(format!("size mismatch {mu} vs {lambda}")));
    }
    let n = mu.n();
    let (r, c) = (mu.len(), lambda.len());
    let mu_off = mu.offsets();
    let lam_off = lambda.offsets();
    let mut out = Vec::new();
    for a in contingency(mu.parts(), lambda.parts()) {
        // lambda' column-major, mu' row-major
        let mut lp = Vec::new();
        let mut lp_cells = Vec::new();
        for j in 0..c {
            for (i, row) in a.iter().enumerate() {
                if row[j] > 0 {
                    lp.push(row[j]);
                    lp_cells.push((i, j));
                }
            }
        }
        let mut mp = Vec::new();
        let mut mp_cells = Vec::new();
        for (i, row) in a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > 0 {
                    mp.push(v);
                    mp_cells.push((i, j));
                }
            }
        }
        // start of cell (i,j) inside lambda block j and mu block i
        let mut g = vec![0; n];
        for (i, j) in &lp_cells {
            let lstart = lam_off[*j] + (0..*i).map(|ii| a[ii][*j]).sum::<usize>();
            let mstart = mu_off[*i] + (0..*j).map(|jj| a[*i][jj]).sum::<usize>();
            for t in 0..a[*i][*j] {
                g[lstart + t] = mstart + t;
            }
        }
        let w_images: Vec<usize> = lp_cells.iter().map(|cell| mp_cells.iter().position(|m| m == cell).unwrap()).collect();
        let w = Perm(w_images);
        let w_word = w.reduced_word();
        let _ = r;
        out.push(DoubleCoset {
            matrix: a,
            g: Perm(g),
            lambda_prime: Composition(lp),
            mu_prime: Composition(mp),
            w,
            w_word,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w0ab_examples() {
        let (w, word) = w0ab(1, 1);
        assert_eq!(w.one_based(), vec![2, 1]);
        assert_eq!(word, vec![0]);
        let (w, word) = w0ab(2, 1);
        assert_eq!(w.one_based(), vec![2, 3, 1]);
        assert_eq!(word.len(), 2);
        assert_eq!(Perm::from_word(3, &word), w);
        assert_eq!(w0ab(2, 2).1.len(), 4);
    }

    #[test]
    fn reduced_word_roundtrip() {
        for n in 1..=5 {
            for w in Perm::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Perm::from_word(n, &word), w);
            }
        }
    }

    #[test]
    fn cosets() {
        let l = Composition::new(vec![3]).unwrap();
        let m = Composition::new(vec![2, 1]).unwrap();
        assert_eq!(coset_reps(&l, &m).unwrap().len(), 3);
        let l = Composition::new(vec![2, 1]).unwrap();
        let reps = coset_reps(&l, &Composition::thin(3)).unwrap();
        assert_eq!(reps, vec![Perm::identity(3), Perm::transposition(3, 0)]);
    }

    #[test]
    fn double_coset_worked_example() {
        let lambda = Composition::new(vec![3, 1]).unwrap();
        let mu = Composition::new(vec![2, 2]).unwrap();
        let reps = double_coset_reps(&mu, &lambda).unwrap();
        assert_eq!(reps.len(), 2);
        let d = reps.iter().find(|d| d.g.one_based() == vec![1, 3, 4, 2]).unwrap();
        assert_eq!(d.lambda_prime.parts(), &[1, 2, 1]);
        assert_eq!(d.mu_prime.parts(), &[1, 1, 2]);
        assert_eq!(d.w.one_based(), vec![1, 3, 2]);
    }

    #[test]
    fn double_coset_counts_match_orbit_count() {
        // number of double cosets = number of S_mu x S_lambda orbits on S_n
        for n in 1..=4 {
            for mu in Composition::all(n) {
                for lambda in Composition::all(n) {
                    let reps = double_coset_reps(&mu, &lambda).unwrap();
                    let mut seen = std::collections::BTreeSet::new();
                    for w in Perm::all(n) {
                        // canonical form: contingency matrix of w
                        let mut m = vec![vec![0; lambda.len()]; mu.len()];
                        let mb = mu.blocks();
                        let lb = lambda.blocks();
                        for (j, b) in lb.iter().enumerate() {
                            for p in b.clone() {
                                let i = mb.iter().position(|r| r.contains(&w.apply(p))).unwrap();
                                m[i][j] += 1;
                            }
                        }
                        seen.insert(m);
                    }
                    assert_eq!(seen.len(), reps.len());
                    for d in &reps {
                        // g is minimal: increasing on lambda blocks and g^{-1} increasing on mu blocks
                        for b in lambda.blocks() {
                            for p in b.start..b.end.saturating_sub(1) {
                                assert!(d.g.apply(p) < d.g.apply(p + 1));
                            }
                        }
                        let gi = d.g.inverse();
                        for b in mu.blocks() {
                            for p in b.start..b.end.saturating_sub(1) {
                                assert!(gi.apply(p) < gi.apply(p + 1));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn refinement() {
        let a = Composition::new(vec![1, 1, 2]).unwrap();
        let b = Composition::new(vec![2, 2]).unwrap();
        assert!(a.refines(&b));
        assert!(!b.refines(&a));
        assert!(!Composition::new(vec![1, 2, 1]).unwrap().refines(&b));
    }
}
