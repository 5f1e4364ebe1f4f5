//! wasm-bindgen entry points for the static demo page in `www/`.
//! Each returns the result as text, or an `error: ...` line.

use std::sync::Arc;

use torskur::frobenius::{FrobeniusAlgebra, PnF};
use torskur::perm::Composition;
use torskur::phi;
use torskur::poly::{Poly, Ring};
use torskur::schur;
use torskur::wreath::{self, WreathGen};
use wasm_bindgen::prelude::*;

fn parse_slot(s: &str) -> torskur::Result<Composition> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    Composition::new(parts.map_err(|e| torskur::Error::Parse(format!("slot: {e}")))?)
}

fn show(r: torskur::Result<String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

/// Merge parts `pos`, `pos+1` of the curve slot `slot` (e.g. "1,1").
#[wasm_bindgen]
pub fn curve_merge(poly: &str, slot: &str, pos: usize) -> String {
    show((|| {
        let lambda = parse_slot(slot)?;
        let p = Poly::parse(Ring::curve(lambda.n()), poly)?;
        let q = schur::merge_elementary(&p, &lambda, pos)?;
        Ok(format!("{q}    in slot {}", lambda.merge_at(pos)?))
    })())
}

/// Apply `τ_i` (1-based) of the zigzag wreath algebra on `n` strands.
#[wasm_bindgen]
pub fn zigzag_tau(poly: &str, n: usize, i: usize) -> String {
    show((|| {
        if i == 0 {
            return Err(torskur::Error::Invalid("indices start at 1".into()));
        }
        let p = Poly::parse(Ring::curve(n), poly)?;
        let x = PnF::from_curve(&p, Arc::new(FrobeniusAlgebra::p1()));
        Ok(wreath::word_apply(&[WreathGen::Tau { i: i - 1 }], &x)?.to_curve().to_string())
    })())
}

/// Is the curve polynomial in `Im φ` for the thin slot, and if so with which lattice coordinates?
#[wasm_bindgen]
pub fn im_phi_membership(poly: &str, n: usize) -> String {
    show((|| {
        let p = Poly::parse(Ring::curve(n), poly)?;
        let w = p.max_weight().unwrap_or(0);
        if p.homogeneous_part(w) != p {
            return Err(torskur::Error::Invalid("enter a homogeneous polynomial".into()));
        }
        let lat = phi::im_phi_lattice(&Composition::thin(n), 2 * w)?;
        Ok(match lat.lattice_coords(&p)? {
            Some(c) => format!("in Im φ (lattice rank {}), coordinates {:?}", lat.rank(), c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            None => format!("not in Im φ (lattice rank {})", lat.rank()),
        })
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_operations() {
        assert_eq!(curve_merge("c1", "1,1", 0), "c2 + c1    in slot (2)");
        assert_eq!(zigzag_tau("x1", 2, 1), "-c2 - c1 + x2");
        assert!(im_phi_membership("x1 + c1", 1).starts_with("in Im"));
        assert!(zigzag_tau("x1", 2, 0).starts_with("error"));
    }
}
