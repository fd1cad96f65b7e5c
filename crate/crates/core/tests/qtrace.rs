use sktorus::qcoeff::LaurentScalar;
use sktorus::qtorus::{reflection, AntiSymMatrix, SymElement};
use sktorus::qtrace::*;
use sktorus::surface::*;

#[test]
fn chekhov_fock_of_single_triangle() {
    let q = AntiSymMatrix::from_entries(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)]).unwrap();
    let cf = chekhov_fock(&q);
    assert_eq!(cf.matrix().get("a", "b").unwrap(), -2);
    assert_eq!(cf.matrix().get("b", "a").unwrap(), 2);
    let z = chekhov_fock(&AntiSymMatrix::zero(vec!["a".into(), "b".into()]));
    assert!(z.matrix().rows.iter().flatten().all(|&x| x == 0));
}

#[test]
fn annulus_core_colorings() {
    let t = fixture("annulus").unwrap();
    let k = annulus_core_knot();
    let cols = admissible_colorings(&k, &t).unwrap();
    let pairs: Vec<(i8, i8)> = cols.iter().map(|c| (c["a"], c["b"])).collect();
    assert_eq!(pairs, vec![(1, 1), (-1, -1)]);
    assert!(cols.iter().all(|c| c["c"] == 0 && c["d"] == 0));
    // brute-force filter over {±1}^2
    let mut brute = 0;
    for ca in [1, -1] {
        for cb in [1, -1] {
            if (ca, cb) != (-1, 1) && (cb, ca) != (-1, 1) {
                brute += 1;
            }
        }
    }
    assert_eq!(cols.len(), brute);
    let rev: Vec<_> = admissible_colorings(&k.reversed(), &t).unwrap();
    assert_eq!(rev, cols);
}

#[test]
fn annulus_core_trace() {
    let t = fixture("annulus").unwrap();
    let k = annulus_core_knot();
    let tr = quantum_trace(&k, &t).unwrap();
    assert_eq!(tr.len(), admissible_colorings(&k, &t).unwrap().len());
    let cf = chekhov_fock(&t.face_matrix().unwrap());
    let want = SymElement::word(&cf, &(), &[("a", 1), ("b", 1)])
        .unwrap()
        .add(&SymElement::word(&cf, &(), &[("a", -1), ("b", -1)]).unwrap());
    assert_eq!(tr, want);
    assert_eq!(reflection(&tr), tr);
    assert!(tr
        .terms()
        .all(|(k, c)| k.iter().all(|x| x.abs() <= 1) && *c == LaurentScalar::one()));
    assert_eq!(quantum_trace(&k.reversed(), &t).unwrap(), tr);
}

#[test]
fn empty_knot_has_one_coloring() {
    let t = fixture("annulus").unwrap();
    let k = DeltaSimpleKnot::default();
    assert_eq!(admissible_colorings(&k, &t).unwrap().len(), 1);
    assert_eq!(quantum_trace(&k, &t).unwrap().len(), 1);
}

#[test]
fn invalid_knots_rejected() {
    let t = fixture("annulus").unwrap();
    let mut k = annulus_core_knot();
    k.steps[1].exit = "d".into();
    assert!(k.validate(&t).is_err());
    let twice = DeltaSimpleKnot {
        steps: vec![
            KnotStep {
                triangle: 0,
                entry: "a".into(),
                exit: "b".into(),
            },
            KnotStep {
                triangle: 1,
                entry: "b".into(),
                exit: "a".into(),
            },
            KnotStep {
                triangle: 0,
                entry: "a".into(),
                exit: "b".into(),
            },
            KnotStep {
                triangle: 1,
                entry: "b".into(),
                exit: "a".into(),
            },
        ],
    };
    assert!(twice.validate(&t).is_err());
    assert!(admissible_colorings(&annulus_core_knot(), &fixture("eye").unwrap()).is_err());
}

#[test]
fn shear_to_skein_on_square_by_hand() {
    let t = fixture("square").unwrap();
    let img = shear_to_skein(&[2], &t).unwrap();
    let want = SymElement::word(
        &t.muller_torus().unwrap(),
        &(),
        &[("a", 2), ("b", -2), ("c", 2), ("d", -2)],
    )
    .unwrap();
    assert_eq!(img, want);
    assert_eq!(
        shear_to_skein(&[0], &t).unwrap(),
        SymElement::one(&t.muller_torus().unwrap(), &())
    );
    assert!(shear_to_skein(&[1, 1], &t).is_err());
}

#[test]
fn shear_to_skein_injective_on_small_range() {
    let t = fixture("pentagon").unwrap();
    let mut seen = std::collections::BTreeMap::new();
    for a in -3..=3 {
        for b in -3..=3 {
            let img = shear_to_skein(&[a, b], &t).unwrap();
            let (k, _) = img.as_monomial().unwrap();
            assert!(seen.insert(k.clone(), (a, b)).is_none());
        }
    }
}

#[test]
fn shear_pairing_is_twice_chekhov_fock() {
    for name in ["annulus", "square", "pentagon"] {
        let t = fixture(name).unwrap();
        for ((a, b), cf, sk) in shear_pairings(&t).unwrap() {
            assert_eq!(sk, 2 * cf, "{name} {a} {b}");
        }
    }
    // multiplicativity against the doubled Chekhov-Fock torus
    let t = fixture("pentagon").unwrap();
    let (inner, _) = shear_matrix(&t).unwrap();
    let q = t.face_matrix().unwrap().restrict(&inner).unwrap();
    for k in [[1i64, 0], [0, 1], [2, -1], [1, 1]] {
        for n in [[1i64, 0], [0, 1], [-1, 3]] {
            let lhs = shear_to_skein(&k, &t).unwrap().mul(&shear_to_skein(&n, &t).unwrap());
            let kn = [k[0] + n[0], k[1] + n[1]];
            let e = 2 * q.scaled(-2).pairing(&k, &n).unwrap();
            assert_eq!(lhs, shear_to_skein(&kn, &t).unwrap().shift(e));
        }
    }
}
