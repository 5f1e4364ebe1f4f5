use num_bigint::BigInt;

use torskur::linalg::{from_i64, hermite_normal_form, lattice_membership, rank_mod_p, smith_normal_form};
use torskur::perm::{coset_reps, double_coset_reps, w0ab, Composition, Perm};
use torskur::poly::{elementary_symmetric, Act, Poly, Ring};

fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

#[test]
fn normal_forms() {
    let m = from_i64(&[&[2, 4], &[6, 8]]);
    let (h, _) = hermite_normal_form(&m);
    assert_eq!(h, from_i64(&[&[2, 0], &[0, 4]]));
    let (d, _, _) = smith_normal_form(&m);
    assert_eq!(d, from_i64(&[&[2, 0], &[0, 4]]));
    assert_eq!(rank_mod_p(&from_i64(&[&[1, 1], &[1, 1]]), 2), 1);
    let basis = from_i64(&[&[2, 0], &[0, 1]]);
    assert_eq!(lattice_membership(&basis, &[BigInt::from(1), BigInt::from(0)]), None);
    assert_eq!(lattice_membership(&basis, &[BigInt::from(2), BigInt::from(3)]), Some(vec![BigInt::from(1), BigInt::from(3)]));
}

#[test]
fn ring_arithmetic() {
    let r = Ring::curve(2);
    let p = |s: &str| Poly::parse(r, s).unwrap();
    assert!((&p("c1") * &p("c1")).is_zero());
    assert_eq!(&p("x1+c1") * &p("x1-c1"), p("x1^2"));
    assert_eq!(&p("c1+c2") * &p("c1+c2"), p("2*c1*c2"));
    let s1 = Perm::transposition(2, 0);
    assert_eq!(p("x1*c2").permute(&s1, Act::Diagonal), p("x2*c1"));
    assert_eq!(p("x1*c2").permute(&s1, Act::First), p("x2*c2"));
    let q = Ring::quiver(2);
    assert_eq!(Poly::parse(q, "u1*v1").unwrap().permute(&s1, Act::First), Poly::parse(q, "u2*v1").unwrap());
    assert!(p("c1").delta_demazure(0).unwrap().is_zero());
    assert_eq!(p("x1").delta_demazure(0).unwrap(), p("c1+c2"));
    assert_eq!(elementary_symmetric(Ring::quiver(3), 2, true, 3).unwrap(), Poly::parse(Ring::quiver(3), "v1*v2+v1*v3+v2*v3").unwrap());
}

#[test]
fn demazure_words() {
    let r = Ring::plain(3);
    let p = |s: &str| Poly::parse(r, s).unwrap();
    let f = p("y1^2*y2");
    assert_eq!(f.demazure_word(&[0, 1, 0], Act::First).unwrap(), f.demazure_word(&[1, 0, 1], Act::First).unwrap());
    assert!(f.demazure_word(&[0, 0], Act::First).unwrap().is_zero());
    let (_, w) = w0ab(1, 1);
    assert_eq!(Poly::parse(Ring::plain(2), "y1").unwrap().demazure_word(&w, Act::First).unwrap(), Poly::int(Ring::plain(2), 1));
}

#[test]
fn permutations() {
    assert_eq!(w0ab(1, 1).1, vec![0]);
    let (w, word) = w0ab(2, 1);
    assert_eq!(w.one_based(), vec![2, 3, 1]);
    assert_eq!(word.len(), 2);
    assert_eq!(w0ab(2, 2).1.len(), 4);
    assert_eq!(coset_reps(&comp(&[2]), &comp(&[1, 1])).unwrap().len(), 2);
    assert_eq!(coset_reps(&comp(&[3]), &comp(&[2, 1])).unwrap().len(), 3);
    assert_eq!(coset_reps(&comp(&[2, 1]), &comp(&[1, 1, 1])).unwrap().len(), 2);
    assert_eq!(double_coset_reps(&comp(&[2, 2]), &comp(&[3, 1])).unwrap().len(), 2);
    assert_eq!(double_coset_reps(&comp(&[1, 1]), &comp(&[1, 1])).unwrap().len(), 2);
    assert_eq!(double_coset_reps(&comp(&[3]), &comp(&[3])).unwrap().len(), 1);
}
