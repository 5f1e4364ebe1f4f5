//! Divided-difference identities on `k[y_1..y_n]`.

use serde_json::json;

use crate::perm::{coset_reps, w0, w0ab, Composition};
use crate::poly::{invariant_basis, monomials, Act, Poly, Ring};
use crate::report::Report;

fn all_polys(n: usize, max_weight: usize) -> Vec<Poly> {
    let ring = Ring::plain(n);
    (0..=max_weight).flat_map(|w| monomials(ring, w)).map(|m| Poly::monomial(ring, m, num_traits::One::one())).collect()
}

fn d(p: &Poly, r: usize) -> Result<Poly, String> {
    p.demazure(r, Act::First).map_err(|e| e.to_string())
}

/// `∂_r^2 = 0`, far commutation and the braid relation on every monomial.
pub fn relations(n: usize, max_weight: usize) -> Result<usize, String> {
    let mut checked = 0;
    for p in all_polys(n, max_weight) {
        for r in 0..n.saturating_sub(1) {
            let once = d(&p, r)?;
            if !d(&once, r)?.is_zero() {
                return Err(format!("∂_{}^2 {p} != 0", r + 1));
            }
            if (once.is_zero()) != (p.swap(r, Act::First) == p) {
                return Err(format!("∂_{} {p} vanishing disagrees with s_{}-invariance", r + 1, r + 1));
            }
            for t in r + 2..n - 1 {
                if d(&once, t)? != d(&d(&p, t)?, r)? {
                    return Err(format!("∂_{}∂_{} != ∂_{}∂_{} on {p}", r + 1, t + 1, t + 1, r + 1));
                }
            }
            if r + 2 < n {
                let lhs = d(&d(&once, r + 1)?, r)?;
                let rhs = d(&d(&d(&p, r + 1)?, r)?, r + 1)?;
                if lhs != rhs {
                    return Err(format!("braid relation fails at {} on {p}", r + 1));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `∂_{w_0}(P)` is symmetric.
pub fn image_symmetric(n: usize, max_weight: usize) -> Result<usize, String> {
    let (_, word) = w0(n);
    let full = Composition::single(n);
    let mut checked = 0;
    for p in all_polys(n, max_weight) {
        let q = p.demazure_word(&word, Act::First).map_err(|e| e.to_string())?;
        if !q.is_invariant(&full, Act::First) {
            return Err(format!("∂_w0 {p} = {q} is not symmetric"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `Σ_{w ∈ S_n/(S_a × S_b)} w(P / ∏_{i ≤ a < j}(y_i - y_j))` over the common
/// denominator `∏_{i<j}(y_i - y_j)`.
pub fn coset_fraction_sum(p: &Poly, a: usize, b: usize) -> Result<Poly, String> {
    let n = a + b;
    let ring = p.ring();
    let y = |i: usize| Poly::first(ring, i);
    let mut num = p.clone();
    for i in 0..n {
        for j in i + 1..n {
            if (i < a) == (j < a) {
                num = &num * &(&y(i) - &y(j));
            }
        }
    }
    let fine = Composition::new(vec![a, b]).map_err(|e| e.to_string())?;
    let mut total = Poly::zero(ring);
    for w in coset_reps(&Composition::single(n), &fine).map_err(|e| e.to_string())? {
        let s = if w.length() % 2 == 0 { 1 } else { -1 };
        total = &total + &num.permute(&w, Act::First).scale_int(s);
    }
    for i in 0..n {
        for j in i + 1..n {
            total = total.div_linear(i, j).map_err(|e| e.to_string())?;
        }
    }
    Ok(total)
}

pub fn dem_ab(a: usize, b: usize, max_weight: usize) -> Result<usize, String> {
    let n = a + b;
    let ring = Ring::plain(n);
    let (_, word) = w0ab(a, b);
    let fine = Composition::new(vec![a, b]).map_err(|e| e.to_string())?;
    let full = Composition::single(n);
    let mut checked = 0;
    for w in 0..=max_weight {
        for p in invariant_basis(ring, &fine, Act::First, w) {
            let lhs = p.demazure_word(&word, Act::First).map_err(|e| e.to_string())?;
            if !lhs.is_invariant(&full, Act::First) {
                return Err(format!("∂_w0ab {p} = {lhs} is not symmetric"));
            }
            let rhs = coset_fraction_sum(&p, a, b)?;
            if lhs != rhs {
                return Err(format!("({a},{b}) on {p}: Demazure {lhs}, coset sum {rhs}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn demazure_suite(max_vars: usize, max_deg: usize) -> Report {
    let w = max_deg / 2;
    let mut r = Report::new("demazure").param("max_vars", max_vars).param("max_deg", max_deg);
    for n in 2..=max_vars {
        r.run(format!("relations/n{n}"), || relations(n, w).map(|k| Some(json!({"checked": k}))));
        r.run(format!("image-symmetric/n{n}"), || image_symmetric(n, w).map(|k| Some(json!({"checked": k}))));
    }
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        if a + b <= max_vars.max(2) {
            r.run(format!("dem-ab/{a},{b}"), || dem_ab(a, b, w).map(|k| Some(json!({"checked": k}))));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn small_examples() {
        let r = Ring::plain(2);
        let p = |s: &str| Poly::parse(r, s).unwrap();
        assert_eq!(d(&p("y1"), 0).unwrap(), p("1"));
        assert_eq!(d(&p("y1*y2"), 0).unwrap(), p("0"));
        assert_eq!(d(&p("y1^2"), 0).unwrap(), p("y1+y2"));
        assert_eq!(coset_fraction_sum(&p("1"), 1, 1).unwrap(), p("0"));
        assert_eq!(coset_fraction_sum(&p("y1"), 1, 1).unwrap(), p("1"));
    }

    #[test]
    fn suite_passes() {
        assert_eq!(demazure_suite(4, 6).status(), Status::Pass);
    }
}
