use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use torskur::klr::{self, KlrConfig};
use torskur::linalg::{det, hermite_normal_form, lattice_membership, matmul, rank_z, smith_normal_form, IntMatrix};
use torskur::perm::{Composition, Perm};
use torskur::phi;
use torskur::poly::{Act, Mono, Poly, Ring};
use torskur::schur;
use torskur::frobenius::{FrobeniusAlgebra, PnF};
use torskur::wreath::tau_apply;

fn poly_in(ring: Ring, max_exp: u8, max_terms: usize) -> impl Strategy<Value = Poly> {
    let nv = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, nv), -4i64..=4), 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(ring, terms.into_iter().map(|(e, c)| (Mono(e), BigRational::from_integer(c.into()))))
    })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows).prop_map(|m| m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

fn symmetrize(p: &Poly, lambda: &Composition, act: Act) -> Poly {
    let mut acc = Poly::zero(p.ring());
    for w in Perm::all(p.ring().n) {
        if lambda.blocks().iter().all(|b| b.clone().all(|i| b.contains(&w.images()[i]))) {
            acc = &acc + &p.permute(&w, act);
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn curve_ring_axioms(a in poly_in(Ring::curve(3), 2, 4), b in poly_in(Ring::curve(3), 2, 4), c in poly_in(Ring::curve(3), 2, 4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn permutations_are_automorphisms(a in poly_in(Ring::quiver(3), 2, 4), b in poly_in(Ring::quiver(3), 2, 4), k in 0usize..6) {
        let w = &Perm::all(3)[k];
        for act in [Act::First, Act::Second, Act::Diagonal] {
            prop_assert_eq!((&a * &b).permute(w, act), &a.permute(w, act) * &b.permute(w, act));
        }
    }

    #[test]
    fn demazure_kernel_is_invariants(p in poly_in(Ring::plain(4), 3, 5), r in 0usize..3) {
        let d = p.demazure(r, Act::First).unwrap();
        prop_assert_eq!(d.is_zero(), p.swap(r, Act::First) == p);
        prop_assert!(d.demazure(r, Act::First).unwrap().is_zero());
        let s = &p + &p.swap(r, Act::First);
        prop_assert!(s.demazure(r, Act::First).unwrap().is_zero());
    }

    #[test]
    fn hnf_is_unimodular(m in int_matrix(4, 5)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(matmul(&u, &m), h);
        prop_assert_eq!(det(&u).abs(), BigInt::from(1));
    }

    #[test]
    fn snf_divisibility(m in int_matrix(4, 4)) {
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(matmul(&matmul(&u, &m), &v), d.clone());
        let diag: Vec<BigInt> = (0..4).map(|i| d[i][i].clone()).collect();
        for i in 0..3 {
            if !diag[i].is_zero() {
                prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
            } else {
                prop_assert!(diag[i + 1].is_zero());
            }
        }
        prop_assert_eq!(rank_z(&m), diag.iter().filter(|x| !x.is_zero()).count());
    }

    #[test]
    fn membership_recombines(m in int_matrix(3, 4), coeffs in prop::collection::vec(-5i64..=5, 3)) {
        let target: Vec<BigInt> = (0..4).map(|j| (0..3).map(|i| &m[i][j] * BigInt::from(coeffs[i])).sum()).collect();
        let x = lattice_membership(&m, &target).expect("combination of rows is in the lattice");
        let back: Vec<BigInt> = (0..4).map(|j| (0..m.len()).map(|i| &m[i][j] * &x[i]).sum()).collect();
        prop_assert_eq!(back, target);
    }

    #[test]
    fn merge_forms_agree(p in poly_in(Ring::curve(3), 2, 3)) {
        let fine = Composition::new(vec![2, 1]).unwrap();
        let q = symmetrize(&p, &fine, Act::Diagonal);
        let a = schur::merge_elementary(&q, &fine, 0).unwrap();
        prop_assert_eq!(&a, &schur::merge_demazure_form(&q, &fine, 0).unwrap());
        prop_assert!(a.is_invariant(&Composition::single(3), Act::Diagonal));
    }

    #[test]
    fn tau_is_crossing_minus_one(p in poly_in(Ring::curve(3), 2, 4), i in 0usize..2) {
        let f = std::sync::Arc::new(FrobeniusAlgebra::p1());
        let x = PnF::from_curve(&p, f);
        let tau = tau_apply(&x, i).unwrap().to_curve();
        let (r, _) = schur::crossing_apply(&p, &Composition::thin(3), i).unwrap();
        prop_assert_eq!(tau, &r - &p);
    }

    #[test]
    fn shuffle_klr_is_symmetric_output(p in poly_in(Ring::quiver(1), 3, 3), q in poly_in(Ring::quiver(2), 2, 3)) {
        let two = Composition::single(2);
        let q = symmetrize(&symmetrize(&q, &two, Act::First), &two, Act::Second);
        let s = phi::shuffle_klr(&p, &q).unwrap();
        prop_assert!(klr::is_slot_invariant(&s, &Composition::single(3)));
        let lhs = phi::phi_apply(&s).unwrap();
        let rhs = phi::shuffle_curve(&phi::phi_apply(&q).unwrap(), &phi::phi_apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn thick_merge_intertwines(p in poly_in(Ring::quiver(3), 2, 3)) {
        let lambda = Composition::new(vec![1, 2]).unwrap();
        let q = symmetrize(&symmetrize(&p, &lambda, Act::First), &lambda, Act::Second);
        let t = klr::thick_generator(klr::ThickKind::Merge, &lambda, 0, 0).unwrap();
        let lhs = phi::phi_slot(&klr::thick_apply(&t, &q, KlrConfig::default()).unwrap(), &t.dst).unwrap();
        let rhs = schur::merge_elementary(&phi::phi_slot(&q, &lambda).unwrap(), &phi::curve_slot(&lambda), 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
