use std::sync::Arc;

use proptest::prelude::*;
use sktorus::qcoeff::LaurentScalar;
use sktorus::qtorus::{frobenius, reflection, weyl_product, AntiSymMatrix, SymElement, Torus};

fn torus(u: [i64; 3], scale: i64) -> Arc<Torus> {
    let m = AntiSymMatrix::from_entries(
        &["a", "b", "c"],
        &[("a", "b", u[0]), ("a", "c", u[1]), ("b", "c", u[2])],
    )
    .unwrap();
    Torus::plain(m.scaled(scale))
}

fn element(t: &Arc<Torus>, terms: &[([i64; 3], i64, i64)]) -> SymElement {
    let mut e = SymElement::zero(t, &());
    for (k, c, s) in terms {
        e.add_term(k.to_vec(), LaurentScalar::monomial(*c, *s));
    }
    e
}

fn terms() -> impl Strategy<Value = Vec<([i64; 3], i64, i64)>> {
    prop::collection::vec(([-2i64..=2, -2..=2, -2..=2], 1i64..=3, -3i64..=3), 1..=3)
}

fn matrix() -> impl Strategy<Value = [i64; 3]> {
    [-2i64..=2, -2..=2, -2..=2]
}

#[test]
fn generators_q_commute() {
    let t = torus([1, -2, 3], 1);
    let a = SymElement::generator(&t, &(), "a").unwrap();
    let c = SymElement::generator(&t, &(), "c").unwrap();
    // ac = q^{U_ac} ca = t^{2 U_ac} ca
    assert_eq!(a.mul(&c), c.mul(&a).shift(-4));
}

#[test]
fn weyl_product_of_commuting_pair_is_plain_product() {
    let t = torus([0, 1, 1], 1);
    let a = SymElement::generator(&t, &(), "a").unwrap();
    let b = SymElement::generator(&t, &(), "b").unwrap();
    assert_eq!(weyl_product(&[a.clone(), b.clone()]).unwrap(), a.mul(&b));
}

proptest! {
    #[test]
    fn multiplication_is_associative(u in matrix(), x in terms(), y in terms(), z in terms()) {
        let t = torus(u, 1);
        let (x, y, z) = (element(&t, &x), element(&t, &y), element(&t, &z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn reflection_is_an_anti_involution(u in matrix(), x in terms(), y in terms()) {
        let t = torus(u, 1);
        let (x, y) = (element(&t, &x), element(&t, &y));
        prop_assert_eq!(reflection(&reflection(&x)), x.clone());
        prop_assert_eq!(reflection(&x.mul(&y)), reflection(&y).mul(&reflection(&x)));
    }

    #[test]
    fn frobenius_is_multiplicative(u in matrix(), n in 1u32..=3, x in terms(), y in terms()) {
        let src = torus(u, i64::from(n * n));
        let dst = torus(u, 1);
        let (x, y) = (element(&src, &x), element(&src, &y));
        let f = |e: &SymElement| frobenius(e, n, &dst).unwrap();
        prop_assert_eq!(f(&x.mul(&y)), f(&x).mul(&f(&y)));
        prop_assert_eq!(f(&x.add(&y)), f(&x).add(&f(&y)));
    }

    #[test]
    fn weyl_product_ignores_order(u in matrix(), k in [-2i64..=2, -2..=2, -2..=2], n in [-2i64..=2, -2..=2, -2..=2]) {
        let t = torus(u, 1);
        let x = SymElement::monomial(&t, &(), k.to_vec()).unwrap();
        let y = SymElement::monomial(&t, &(), n.to_vec()).unwrap();
        prop_assert_eq!(weyl_product(&[x.clone(), y.clone()]).unwrap(), weyl_product(&[y, x]).unwrap());
    }
}
