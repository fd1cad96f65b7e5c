use sktorus::qcoeff::{CycContext, CycScalar, LaurentScalar};
use sktorus::qtorus::TorusElement;
use sktorus::statesum::*;

fn sym_grid(n: usize, m: usize) -> GridTotal<LaurentScalar> {
    grid_total::<LaurentScalar>(&DiskGridDiagram::new(n, m, Over::X).unwrap(), &(), DEFAULT_BUDGET).unwrap()
}

#[test]
fn one_by_one_grid_is_q_bd_plus_inverse_q_ac() {
    let g = sym_grid(1, 1);
    let mut want = TorusElement::zero(&grid_torus(), &());
    want.add_term(vec![0, 1, 0, 1, 0, 0], LaurentScalar::t_pow(2));
    want.add_term(vec![1, 0, 1, 0, 0, 0], LaurentScalar::t_pow(-2));
    assert_eq!(g.total, want);
}

#[test]
fn single_smoothings_give_the_two_arc_pairs() {
    let d = DiskGridDiagram::new(1, 1, Over::X).unwrap();
    assert_eq!(d.resolve(&[1]).unwrap().arc_counts(), vec![0, 1, 0, 1, 0, 0]);
    assert_eq!(d.resolve(&[-1]).unwrap().arc_counts(), vec![1, 0, 1, 0, 0, 0]);
}

#[test]
fn grid_matches_closed_form_symbolic() {
    for n in 1..=3 {
        assert_eq!(sym_grid(n, n).total, closed_form::<LaurentScalar>(n, &()), "n = {n}");
    }
}

#[test]
fn pruned_and_exhaustive_enumerations_agree() {
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (1, 4)] {
        let d = DiskGridDiagram::new(n, m, Over::X).unwrap();
        let ex = grid_total_exhaustive::<LaurentScalar>(&d, &()).unwrap();
        assert_eq!(sym_grid(n, m).total, ex, "{n}x{m}");
        let dy = DiskGridDiagram::new(n, m, Over::Y).unwrap();
        let py = grid_total::<LaurentScalar>(&dy, &(), DEFAULT_BUDGET).unwrap().total;
        assert_eq!(py, grid_total_exhaustive::<LaurentScalar>(&dy, &()).unwrap());
    }
}

#[test]
fn survivor_counts_and_trivial_arcs() {
    // Brute force over all states, classifying without pruning.
    for (n, want) in [(1usize, 2usize), (2, 7), (3, 56)] {
        let d = DiskGridDiagram::new(n, n, Over::X).unwrap();
        let k = n * n;
        let mut alive = 0;
        for bits in 0u64..(1 << k) {
            let s: Vec<i8> = (0..k).map(|b| if bits >> b & 1 == 1 { -1 } else { 1 }).collect();
            let r = d.resolve(&s).unwrap();
            let val = d.evaluate_state::<LaurentScalar>(&s, &()).unwrap();
            assert_eq!(val.is_none(), r.has_trivial_arc());
            alive += usize::from(val.is_some());
        }
        assert_eq!(alive, want);
        assert_eq!(sym_grid(n, n).surviving.len(), want);
    }
    let d = DiskGridDiagram::new(3, 3, Over::X).unwrap();
    let all_plus = d.resolve(&[1; 9]).unwrap();
    assert_eq!(all_plus.loops, 0);
    assert!(!all_plus.has_trivial_arc());
}

#[test]
fn loops_carry_the_trivial_loop_factor() {
    let d = DiskGridDiagram::new(2, 2, Over::X).unwrap();
    let s = [-1, 1, 1, -1];
    let r = d.resolve(&s).unwrap();
    assert_eq!(r.loops, 1);
    let (c, _) = d.evaluate_state::<LaurentScalar>(&s, &()).unwrap().unwrap();
    assert_eq!(c, trivial_loop_scalar().shift(d.height_exponent()));
}

#[test]
fn four_by_four_at_roots_matches_closed_form() {
    for m in [8u64, 24, 40] {
        let ctx = CycContext::new(m).unwrap();
        let d = DiskGridDiagram::new(4, 4, Over::X).unwrap();
        let g = grid_total::<CycScalar>(&d, &ctx, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.total, closed_form::<CycScalar>(4, &ctx), "m = {m}");
    }
}

#[test]
fn corollary_at_matching_roots() {
    for m in [24u64, 32] {
        let ctx = CycContext::new(m).unwrap();
        let n = ctx.big_n() as usize;
        let d = DiskGridDiagram::new(n, n, Over::X).unwrap();
        let g = grid_total::<CycScalar>(&d, &ctx, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.total, corollary_value(&ctx), "m = {m}");
    }
}

#[test]
fn transparency_follows_xi_2n() {
    let mut seen = [false; 2];
    for m in 1..=48u64 {
        let ctx = CycContext::new(m).unwrap();
        let (v, over, under) = transparency_check(&ctx).unwrap();
        assert_eq!(v, expected_transparency(&ctx), "m = {m}");
        let factor = CycScalar::t_pow(&ctx, 4 * ctx.big_n() as i64);
        assert_eq!(over, under.scale(&factor), "m = {m}");
        seen[usize::from(v == Transparency::Skew)] = true;
    }
    assert!(seen[0] && seen[1]);
}

#[test]
fn trivial_loop_identity_all_roots() {
    for m in 1..=48u64 {
        let ctx = CycContext::new(m).unwrap();
        assert_eq!(trivial_loop_value(&ctx), (true, true), "m = {m}");
    }
}

#[test]
fn budget_is_enforced() {
    let d = DiskGridDiagram::new(3, 3, Over::X).unwrap();
    assert!(grid_total::<LaurentScalar>(&d, &(), 10).is_err());
}
