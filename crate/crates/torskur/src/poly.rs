//! Exact polynomials in the three ring flavors:
//!
//! * `Curve(n)`: `k[x1..xn, c1..cn]/(ci^2)`
//! * `Quiver(n)`: `k[u1..un, v1..vn]`
//! * `Plain(m)`: `k[y1..ym]`
//!
//! Variables are numbered `0..nvars`, first family then second family.
//! Every variable has degree 2.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Composition, Perm};
use crate::scalar::{format_scalar, int, parse_scalar, Coeff};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Curve,
    Quiver,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ring {
    pub flavor: Flavor,
    pub n: usize,
    pub coeff: Coeff,
}

impl Ring {
    pub fn curve(n: usize) -> Ring {
        Ring { flavor: Flavor::Curve, n, coeff: Coeff::Z }
    }
    pub fn quiver(n: usize) -> Ring {
        Ring { flavor: Flavor::Quiver, n, coeff: Coeff::Z }
    }
    pub fn plain(m: usize) -> Ring {
        Ring { flavor: Flavor::Plain, n: m, coeff: Coeff::Z }
    }
    pub fn with_coeff(self, coeff: Coeff) -> Ring {
        Ring { coeff, ..self }
    }

    pub fn nvars(&self) -> usize {
        match self.flavor {
            Flavor::Plain => self.n,
            _ => 2 * self.n,
        }
    }

    fn is_nilpotent_var(&self, v: usize) -> bool {
        self.flavor == Flavor::Curve && v >= self.n
    }

    pub fn var_name(&self, v: usize) -> String {
        let (fam, i) = match self.flavor {
            Flavor::Curve => (if v < self.n { "x" } else { "c" }, v % self.n.max(1)),
            Flavor::Quiver => (if v < self.n { "u" } else { "v" }, v % self.n.max(1)),
            Flavor::Plain => ("y", v),
        };
        format!("{fam}{}", i + 1)
    }

    pub fn family_names(&self) -> (&'static str, &'static str) {
        match self.flavor {
            Flavor::Curve => ("x", "c"),
            Flavor::Quiver => ("u", "v"),
            Flavor::Plain => ("y", ""),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}) over {}", self.flavor, self.n, self.coeff)
    }
}

/// Which variables a permutation moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Act {
    /// both families at once (the only mode for `Plain`)
    Diagonal,
    /// `x`/`u`/`y` only
    First,
    /// `c`/`v` only
    Second,
}

/// Exponent vector. Ordered graded-lexicographically: lower total degree
/// first, then lexicographically larger exponent vectors first
/// (`x1 > x2 > .. > c1 > ..`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u8>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
    pub fn exps(&self) -> &[u8] {
        &self.0
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Mono, BigRational>,
}

fn accumulate(map: &mut BTreeMap<Mono, BigRational>, coeff: Coeff, m: Mono, c: BigRational) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            let c = coeff.normalize(c);
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let c = coeff.normalize(e.get() + c);
            if c.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = c;
            }
        }
    }
}

impl Poly {
    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: BigRational) -> Poly {
        let mut p = Poly::zero(ring);
        accumulate(&mut p.terms, ring.coeff, Mono::one(ring.nvars()), c);
        p
    }

    pub fn one(ring: Ring) -> Poly {
        Poly::constant(ring, BigRational::one())
    }

    pub fn int(ring: Ring, c: i64) -> Poly {
        Poly::constant(ring, int(c))
    }

    /// Variable by absolute index.
    pub fn var(ring: Ring, v: usize) -> Poly {
        assert!(v < ring.nvars(), "variable {v} out of range for {ring}");
        let mut e = vec![0; ring.nvars()];
        e[v] = 1;
        Poly::monomial(ring, Mono(e), BigRational::one())
    }

    /// First-family variable `x_i`/`u_i`/`y_i` (0-based).
    pub fn first(ring: Ring, i: usize) -> Poly {
        Poly::var(ring, i)
    }

    /// Second-family variable `c_i`/`v_i` (0-based).
    pub fn second(ring: Ring, i: usize) -> Poly {
        assert!(ring.flavor != Flavor::Plain);
        Poly::var(ring, ring.n + i)
    }

    pub fn monomial(ring: Ring, m: Mono, c: BigRational) -> Poly {
        assert_eq!(m.0.len(), ring.nvars());
        let mut p = Poly::zero(ring);
        if ring.flavor == Flavor::Curve && m.0[ring.n..].iter().any(|&e| e > 1) {
            return p;
        }
        accumulate(&mut p.terms, ring.coeff, m, c);
        p
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        assert_eq!(m.0.len(), self.ring.nvars());
        if self.ring.flavor == Flavor::Curve && m.0[self.ring.n..].iter().any(|&e| e > 1) {
            return;
        }
        accumulate(&mut self.terms, self.ring.coeff, m, c);
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total weight (number of variables counted with multiplicity); degree is twice this.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(Mono::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(Mono::weight);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    pub fn homogeneous_part(&self, weight: usize) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().filter(|(m, _)| m.weight() == weight).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly::zero(self.ring);
        for (m, a) in &self.terms {
            accumulate(&mut p.terms, self.ring.coeff, m.clone(), a * c);
        }
        p
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&int(c))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.ring);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Multiply by the monomial with exponent `e` (no coefficient).
    pub fn mul_mono(&self, e: &[u8]) -> Poly {
        let mut p = Poly::zero(self.ring);
        for (m, c) in &self.terms {
            let exps: Vec<u8> = m.0.iter().zip(e).map(|(a, b)| a + b).collect();
            p.add_term(Mono(exps), c.clone());
        }
        p
    }

    pub fn change_coeff(&self, coeff: Coeff) -> Poly {
        Poly::from_terms(self.ring.with_coeff(coeff), self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn var_map(&self, w: &Perm, act: Act) -> Vec<usize> {
        let n = self.ring.n;
        assert_eq!(w.n(), n, "permutation size mismatch");
        (0..self.ring.nvars())
            .map(|v| match (self.ring.flavor, act) {
                (Flavor::Plain, _) => w.apply(v),
                (_, Act::Diagonal) => {
                    if v < n {
                        w.apply(v)
                    } else {
                        n + w.apply(v - n)
                    }
                }
                (_, Act::First) => {
                    if v < n {
                        w.apply(v)
                    } else {
                        v
                    }
                }
                (_, Act::Second) => {
                    if v < n {
                        v
                    } else {
                        n + w.apply(v - n)
                    }
                }
            })
            .collect()
    }

    /// Ring automorphism `x_i -> x_{w(i)}` on the chosen families.
    pub fn permute(&self, w: &Perm, act: Act) -> Poly {
        let map = self.var_map(w, act);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u8; m.0.len()];
            for (v, &x) in m.0.iter().enumerate() {
                e[map[v]] = x;
            }
            terms.insert(Mono(e), c.clone());
        }
        Poly { ring: self.ring, terms }
    }

    pub fn swap(&self, r: usize, act: Act) -> Poly {
        self.permute(&Perm::transposition(self.ring.n, r), act)
    }

    pub fn is_invariant(&self, lambda: &Composition, act: Act) -> bool {
        lambda.generators().into_iter().all(|r| self.swap(r, act) == *self)
    }

    /// Exact division by `(var_a - var_b)` via back-substitution in `var_a`.
    pub fn div_linear(&self, a: usize, b: usize) -> Result<Poly> {
        assert!(!self.ring.is_nilpotent_var(a) && !self.ring.is_nilpotent_var(b), "cannot divide by nilpotent variables");
        assert_ne!(a, b);
        if self.is_zero() {
            return Ok(self.clone());
        }
        let coeff = self.ring.coeff;
        let mut layers: BTreeMap<u8, HashMap<Vec<u8>, BigRational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[a];
            e[a] = 0;
            layers.entry(k).or_default().insert(e, c.clone());
        }
        let top = *layers.keys().next_back().unwrap();
        let mut quotient = Poly::zero(self.ring);
        let mut q: HashMap<Vec<u8>, BigRational> = HashMap::new();
        let shift_b = |q: &HashMap<Vec<u8>, BigRational>| -> HashMap<Vec<u8>, BigRational> {
            q.iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[b] += 1;
                    (e, c.clone())
                })
                .collect()
        };
        // Q_{k-1} = A_k + x_b Q_k
        for k in (0..=top).rev() {
            let mut next = shift_b(&q);
            if let Some(layer) = layers.get(&k) {
                for (e, c) in layer {
                    let entry = next.entry(e.clone()).or_insert_with(BigRational::zero);
                    *entry = coeff.normalize(&*entry + c);
                }
            }
            next.retain(|_, c| !c.is_zero());
            if k == 0 {
                if !next.is_empty() {
                    return Err(Error::NotDivisible(format!(
                        "{} by ({} - {})",
                        self,
                        self.ring.var_name(a),
                        self.ring.var_name(b)
                    )));
                }
            } else {
                for (e, c) in &next {
                    let mut e = e.clone();
                    e[a] = k - 1;
                    accumulate(&mut quotient.terms, coeff, Mono(e), c.clone());
                }
            }
            q = next;
        }
        Ok(quotient)
    }

    fn family_vars(&self, r: usize, act: Act) -> Result<(usize, usize)> {
        let n = self.ring.n;
        if r + 1 >= n {
            return Err(Error::Invalid(format!("Demazure index {r} out of range for n = {n}")));
        }
        match (self.ring.flavor, act) {
            (Flavor::Plain, _) => Ok((r, r + 1)),
            (Flavor::Quiver, Act::First) => Ok((r, r + 1)),
            (Flavor::Quiver, Act::Second) => Ok((n + r, n + r + 1)),
            (Flavor::Curve, Act::Diagonal) => Ok((r, r + 1)),
            (Flavor::Curve, _) => Err(Error::Invalid("single-family Demazure on the curve ring; use delta_demazure".into())),
            (Flavor::Quiver, Act::Diagonal) => Err(Error::Invalid("diagonal Demazure on the quiver ring".into())),
        }
    }

    /// `(p - s_r p)/(z_r - z_{r+1})` where `s_r` swaps the named family.
    /// On the curve ring only the diagonal swap is allowed, and exactness is
    /// input dependent (an error is returned when it fails).
    pub fn demazure(&self, r: usize, act: Act) -> Result<Poly> {
        let (a, b) = self.family_vars(r, act)?;
        let num = self - &self.swap(r, act);
        num.div_linear(a, b)
    }

    /// `∂_w = ∂_{k1} .. ∂_{kr}` for `word = [k1, .., kr]` (rightmost applied first).
    pub fn demazure_word(&self, word: &[usize], act: Act) -> Result<Poly> {
        let mut p = self.clone();
        for &k in word.iter().rev() {
            p = p.demazure(k, act)?;
        }
        Ok(p)
    }

    /// `(c_r + c_{r+1})(p - s_r p)/(x_r - x_{r+1})` with the diagonal swap.
    pub fn delta_demazure(&self, r: usize) -> Result<Poly> {
        if self.ring.flavor != Flavor::Curve {
            return Err(Error::Invalid("delta_demazure needs the curve ring".into()));
        }
        let n = self.ring.n;
        if r + 1 >= n {
            return Err(Error::Invalid(format!("index {r} out of range for n = {n}")));
        }
        let delta = &Poly::second(self.ring, r) + &Poly::second(self.ring, r + 1);
        let num = &delta * &(self - &self.swap(r, Act::Diagonal));
        num.div_linear(r, r + 1)
    }

    /// Ring homomorphism sending variable `v` to `images[v]`.
    pub fn substitute(&self, target: Ring, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: HashMap<(usize, u8), Poly> = HashMap::new();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((v, e)).or_insert_with(|| images[v].pow(e as u32)).clone();
                t = &t * &pw;
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coordinates against a list of monomials; `None` if a term falls outside.
    pub fn coords(&self, basis: &[Mono]) -> Option<Vec<BigRational>> {
        let idx: HashMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[*idx.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Relabel into a ring with the same number of variables (flavor change).
    pub fn reinterpret(&self, target: Ring) -> Poly {
        assert_eq!(target.nvars(), self.ring.nvars());
        Poly::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Embed into a larger ring of the same flavor, shifting indices by `offset`.
    pub fn embed(&self, target: Ring, offset: usize) -> Poly {
        let n = self.ring.n;
        let tn = target.n;
        assert!(offset + n <= tn);
        let mut p = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u8; target.nvars()];
            for (v, &x) in m.0.iter().enumerate() {
                let t = if self.ring.flavor != Flavor::Plain && v >= n { tn + offset + (v - n) } else { offset + v };
                e[t] = x;
            }
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    pub fn to_json(&self) -> PolyJson {
        let (f, s) = self.ring.family_names();
        let n = self.ring.n;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (a, b) = if self.ring.flavor == Flavor::Plain { (m.0.clone(), vec![]) } else { (m.0[..n].to_vec(), m.0[n..].to_vec()) };
                let mut t = TermJson { coeff: format_scalar(c), ..Default::default() };
                match (f, s) {
                    ("x", _) => {
                        t.x = Some(a);
                        t.c = Some(b);
                    }
                    ("u", _) => {
                        t.u = Some(a);
                        t.v = Some(b);
                    }
                    _ => t.y = Some(a),
                }
                t
            })
            .collect();
        PolyJson { ring: RingJson { flavor: self.ring.flavor, n, coeff: self.ring.coeff }, terms }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let ring = Ring { flavor: j.ring.flavor, n: j.ring.n, coeff: j.ring.coeff };
        let n = ring.n;
        let mut p = Poly::zero(ring);
        for t in &j.terms {
            let (a, b) = match ring.flavor {
                Flavor::Curve => (t.x.clone(), t.c.clone()),
                Flavor::Quiver => (t.u.clone(), t.v.clone()),
                Flavor::Plain => (t.y.clone(), Some(vec![])),
            };
            let a = a.unwrap_or_else(|| vec![0; n]);
            let b = b.unwrap_or_else(|| if ring.flavor == Flavor::Plain { vec![] } else { vec![0; n] });
            if a.len() != n || (ring.flavor != Flavor::Plain && b.len() != n) {
                return Err(Error::Parse("exponent vector length does not match the ring".into()));
            }
            if ring.flavor == Flavor::Curve && b.iter().any(|&e| e > 1) {
                return Err(Error::Parse("c exponent above 1".into()));
            }
            let mut e = a;
            e.extend(b);
            p.add_term(Mono(e), parse_scalar(&t.coeff)?);
        }
        Ok(p)
    }

    /// Parse an expression such as `x1^2*c2 - 3/2*(x1+x2)` in the given ring.
    pub fn parse(ring: Ring, s: &str) -> Result<Poly> {
        let mut p = ExprParser { ring, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let r = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected input at position {} in {s:?}", p.pos)));
        }
        Ok(r)
    }
}

struct ExprParser {
    ring: Ring,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }
    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(ch) = self.peek() {
            match ch {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while let Some(ch) = self.peek() {
            match ch {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                '(' | 'x' | 'c' | 'u' | 'v' | 'y' => acc = &acc * &self.power()?,
                _ => break,
            }
        }
        Ok(acc)
    }
    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent {e}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
    fn number(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at position {start}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut s = self.number()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    s = format!("{s}/{}", self.number()?);
                }
                Ok(Poly::constant(self.ring, parse_scalar(&s)?))
            }
            Some(c @ ('x' | 'c' | 'u' | 'v' | 'y')) => {
                self.pos += 1;
                let i: usize = self.number()?.parse().map_err(|_| Error::Parse("bad index".into()))?;
                let (f, s) = self.ring.family_names();
                let name = c.to_string();
                if i == 0 || i > self.ring.n {
                    return Err(Error::Parse(format!("variable {c}{i} out of range")));
                }
                if name == f {
                    Ok(Poly::first(self.ring, i - 1))
                } else if name == s {
                    Ok(Poly::second(self.ring, i - 1))
                } else {
                    Err(Error::Parse(format!("variable {c}{i} not in {}", self.ring)))
                }
            }
            other => Err(Error::Parse(format!("unexpected {other:?} at position {}", self.pos))),
        }
    }
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, other: &'a Poly) -> Poly {
        self.check_ring(other);
        let mut p = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut p.terms, self.ring.coeff, m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, other: &'a Poly) -> Poly {
        self.check_ring(other);
        let mut p = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut p.terms, self.ring.coeff, m.clone(), -c);
        }
        p
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, other: &'a Poly) -> Poly {
        self.check_ring(other);
        let ring = self.ring;
        let n = ring.n;
        let curve = ring.flavor == Flavor::Curve;
        let mut acc: HashMap<Vec<u8>, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            'inner: for (mb, cb) in &other.terms {
                let mut e = Vec::with_capacity(ma.0.len());
                for (v, (a, b)) in ma.0.iter().zip(&mb.0).enumerate() {
                    let s = a + b;
                    if curve && v >= n && s > 1 {
                        continue 'inner;
                    }
                    e.push(s);
                }
                let entry = acc.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        let mut p = Poly::zero(ring);
        for (e, c) in acc {
            let c = ring.coeff.normalize(c);
            if !c.is_zero() {
                p.terms.insert(Mono(e), c);
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, other: Poly) -> Poly {
                (&self).$f(&other)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for Poly {
    /// Highest degree first, for reading.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { self.ring.var_name(v) } else { format!("{}^{e}", self.ring.var_name(v)) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_scalar(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub flavor: Flavor,
    pub n: usize,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<Vec<u8>>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: RingJson,
    pub terms: Vec<TermJson>,
}

/// All monomials of the ring with the given total weight, in canonical order.
pub fn monomials(ring: Ring, weight: usize) -> Vec<Mono> {
    let nv = ring.nvars();
    let mut out = Vec::new();
    fn rec(ring: &Ring, v: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Mono>) {
        let nv = ring.nvars();
        if v == nv {
            if left == 0 {
                out.push(Mono(cur.clone()));
            }
            return;
        }
        let cap = if ring.is_nilpotent_var(v) { left.min(1) } else { left };
        for e in (0..=cap).rev() {
            cur.push(e as u8);
            rec(ring, v + 1, left - e, cur, out);
            cur.pop();
        }
    }
    if nv == 0 {
        if weight == 0 {
            out.push(Mono(vec![]));
        }
        return out;
    }
    rec(&ring, 0, weight, &mut Vec::with_capacity(nv), &mut out);
    out.sort();
    out
}

/// Orbit sums of monomials of the given weight under `S_lambda` (acting as
/// `act`), a basis of the invariants in that weight. Sorted by leading monomial.
pub fn invariant_basis(ring: Ring, lambda: &Composition, act: Act, weight: usize) -> Vec<Poly> {
    let group: Vec<Perm> = parabolic_elements(lambda);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for m in monomials(ring, weight) {
        if seen.contains(&m) {
            continue;
        }
        let base = Poly::monomial(ring, m.clone(), BigRational::one());
        let mut orbit = std::collections::BTreeSet::new();
        for w in &group {
            let img = base.permute(w, act);
            if let Some((mm, _)) = img.terms().next() {
                orbit.insert(mm.clone());
            };
        }
        let mut p = Poly::zero(ring);
        for mm in &orbit {
            seen.insert(mm.clone());
            p.add_term(mm.clone(), BigRational::one());
        }
        out.push(p);
    }
    out
}

/// All elements of the parabolic subgroup `S_lambda`.
pub fn parabolic_elements(lambda: &Composition) -> Vec<Perm> {
    let n = lambda.n();
    let mut out = vec![Perm::identity(n)];
    for block in lambda.blocks() {
        let k = block.len();
        let local = Perm::all(k);
        let mut next = Vec::new();
        for w in &out {
            for l in &local {
                let mut img = w.images().to_vec();
                for (i, &li) in l.images().iter().enumerate() {
                    img[block.start + i] = block.start + li;
                }
                next.push(Perm::new(img).unwrap());
            }
        }
        out = next;
    }
    out
}

/// `σ_k` in the first (`second = false`) or second family of an `n`-variable window starting at 0.
pub fn elementary_symmetric(ring: Ring, k: usize, second: bool, n: usize) -> Result<Poly> {
    if k > n || n > ring.n {
        return Err(Error::Invalid(format!("σ_{k} on {n} variables")));
    }
    let mut p = Poly::zero(ring);
    for s in crate::perm::combinations(&(0..n).collect::<Vec<_>>(), k) {
        let mut e = vec![0u8; ring.nvars()];
        for i in s {
            e[if second { ring.n + i } else { i }] = 1;
        }
        p.add_term(Mono(e), BigRational::one());
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Ring {
        Ring::curve(2)
    }

    #[test]
    fn truncation() {
        let r = c2();
        let c1 = Poly::parse(r, "c1").unwrap();
        assert!((&c1 * &c1).is_zero());
        assert_eq!(Poly::parse(r, "(x1+c1)*(x1-c1)").unwrap(), Poly::parse(r, "x1^2").unwrap());
        assert_eq!(Poly::parse(r, "(c1+c2)^2").unwrap(), Poly::parse(r, "2*c1*c2").unwrap());
    }

    #[test]
    fn actions() {
        let r = c2();
        let p = Poly::parse(r, "x1*c2").unwrap();
        assert_eq!(p.swap(0, Act::Diagonal), Poly::parse(r, "x2*c1").unwrap());
        assert_eq!(p.swap(0, Act::First), Poly::parse(r, "x2*c2").unwrap());
        let q = Ring::quiver(2);
        assert_eq!(Poly::parse(q, "u1*v1").unwrap().swap(0, Act::First), Poly::parse(q, "u2*v1").unwrap());
    }

    #[test]
    fn demazure_examples() {
        let r = Ring::plain(2);
        let y = |s: &str| Poly::parse(r, s).unwrap();
        assert_eq!(y("y1").demazure(0, Act::First).unwrap(), y("1"));
        assert!(y("y1*y2").demazure(0, Act::First).unwrap().is_zero());
        assert_eq!(y("y1^2").demazure(0, Act::First).unwrap(), y("y1+y2"));
        let r3 = Ring::plain(3);
        let p = Poly::parse(r3, "y1^2*y2").unwrap();
        assert_eq!(p.demazure_word(&[0, 1, 0], Act::First).unwrap(), p.demazure_word(&[1, 0, 1], Act::First).unwrap());
    }

    #[test]
    fn delta_demazure_examples() {
        let r = c2();
        let p = |s: &str| Poly::parse(r, s).unwrap();
        assert!(p("c1").delta_demazure(0).unwrap().is_zero());
        assert_eq!(p("x1").delta_demazure(0).unwrap(), p("c1+c2"));
        assert!(p("1").delta_demazure(0).unwrap().is_zero());
    }

    #[test]
    fn not_divisible_is_error() {
        let r = c2();
        let p = Poly::parse(r, "c1").unwrap();
        assert!(p.demazure(0, Act::Diagonal).is_err());
        assert!(p.demazure(0, Act::First).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let r = c2().with_coeff(Coeff::Q);
        let p = Poly::parse(r, "1/2*x1^2*c2 - 3*x2 + 7").unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Poly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn invariant_bases() {
        let r = c2();
        let lam = Composition::single(2);
        // weight 1: x1+x2, c1+c2
        assert_eq!(invariant_basis(r, &lam, Act::Diagonal, 1).len(), 2);
        // weight 2: x1^2+x2^2, x1x2, x1c1+x2c2, x1c2+x2c1, c1c2
        assert_eq!(invariant_basis(r, &lam, Act::Diagonal, 2).len(), 5);
    }

    #[test]
    fn elementary() {
        let r = Ring::quiver(3);
        assert_eq!(elementary_symmetric(r, 2, true, 3).unwrap(), Poly::parse(r, "v1*v2+v1*v3+v2*v3").unwrap());
        assert_eq!(elementary_symmetric(r, 0, true, 3).unwrap(), Poly::one(r));
    }
}
