//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sktorus::cheby::{chebyshev_of_ke, chebyshev_t, cnrj, generalized_demoivre, torus_ke};
use sktorus::cli::{
    cmd_center, cmd_flip_coherence, cmd_frobenius_annulus, cmd_gauss_criterion, gamma_brute_force, Scalars, Status,
};
use sktorus::curves::{monoid_closure_check, primitivity_check, IdealTriangulationShape};
use sktorus::qcoeff::{CycContext, CycScalar, LaurentScalar};
use sktorus::qtorus::{newton_vertices, AntiSymMatrix, SymElement, Torus};
use sktorus::statesum::{closed_form, corollary_value, grid_total, transparency_check, DiskGridDiagram, Over};
use sktorus::surface::fixture;

type Outcome = Result<String, String>;

fn contexts() -> Vec<Arc<CycContext>> {
    (1..=48).map(|m| CycContext::new(m).expect("context")).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    for n in 1..=8 {
        let a = generalized_demoivre(n).map_err(|e| e.to_string())?;
        let b = chebyshev_of_ke(n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("n={n}: {:?}", a.first_difference(&b)))?;
    }
    Ok("n=1..8 symbolic".into())
}

fn c2() -> Outcome {
    let t = torus_ke();
    let mut checked = 0;
    for ctx in contexts() {
        let n = ctx.order_of_t_power(4);
        if !(2..=6).contains(&n) {
            continue;
        }
        let ni = n as i64;
        let lhs = chebyshev_of_ke(n as u32).map_err(|e| e.to_string())?.specialize(&ctx);
        let rhs = SymElement::word(&t, &(), &[("K", ni)])
            .and_then(|a| Ok(a.add(&SymElement::word(&t, &(), &[("K", -ni)])?)))
            .and_then(|a| Ok(a.add(&SymElement::word(&t, &(), &[("E", ni)])?)))
            .map_err(|e| e.to_string())?
            .specialize(&ctx);
        ensure(lhs == rhs, || format!("m={} n={n}", ctx.m()))?;
        checked += 1;
    }
    ensure(checked > 0, || "no contexts".into())?;
    Ok(format!("{checked} contexts"))
}

fn c3() -> Outcome {
    let mut count = 0;
    for n in 2..=8 {
        for r in 1..n {
            for j in 0..=(n - r) {
                let c = cnrj(n, r, j).map_err(|e| e.to_string())?;
                ensure(c.all_nonnegative(), || format!("c({n},{r},{j}) = {}", c.canonical()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} coefficients"))
}

fn frob_expected(ctx: &CycContext, n: u64) -> bool {
    n == 1 || ctx.order_of_t_power(8) == n
}

fn report_ok(r: &sktorus::cli::VerificationReport) -> Result<(), String> {
    ensure(r.status == Status::Pass, || r.line())
}

fn c4() -> Outcome {
    let mut witnesses = 0;
    for n in 1..=5u32 {
        let r = cmd_gauss_criterion(&Scalars::Symbolic, n).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        ensure(r.computed == Some(n == 1), || r.line())?;
        witnesses += usize::from(r.witness.is_some());
        for m in 1..=48 {
            let s = Scalars::root(m).map_err(|e| e.to_string())?;
            let Scalars::Root(ctx) = &s else { unreachable!() };
            let r = cmd_gauss_criterion(&s, n).map_err(|e| e.to_string())?;
            report_ok(&r)?;
            ensure(r.computed == Some(frob_expected(ctx, u64::from(n))), || r.line())?;
            ensure(r.computed == Some(true) || r.witness.is_some(), || {
                format!("{}: no witness", r.line())
            })?;
        }
    }
    Ok(format!("N=1..5, m<=48, {witnesses} symbolic witnesses"))
}

fn c5() -> Outcome {
    let mut count = 0;
    for ctx in contexts() {
        let n = ctx.big_n();
        if ![1, 2, 3, 5].contains(&n) {
            continue;
        }
        let s = Scalars::root(ctx.m()).map_err(|e| e.to_string())?;
        let r = cmd_frobenius_annulus(&s, n as u32).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Pass && r.computed == Some(true), || r.line())?;
        count += 1;
    }
    let r = cmd_frobenius_annulus(&Scalars::Symbolic, 2).map_err(|e| e.to_string())?;
    ensure(r.computed == Some(false) && r.witness.is_some(), || r.line())?;
    Ok(format!(
        "{count} roots; symbolic N=2 witness {}",
        r.witness.unwrap_or_default()
    ))
}

fn c6() -> Outcome {
    let square = fixture("square").map_err(|e| e.to_string())?;
    let mut count = 0;
    for n in [2u32, 3] {
        let r = cmd_flip_coherence(&square, "x", "x", &Scalars::Symbolic, n).map_err(|e| e.to_string())?;
        ensure(r.computed == Some(false), || r.line())?;
        for ctx in contexts() {
            let s = Scalars::Root(ctx.clone());
            let r = cmd_flip_coherence(&square, "x", "x", &s, n).map_err(|e| e.to_string())?;
            ensure(r.computed == Some(ctx.order_of_t_power(8) == u64::from(n)), || r.line())?;
            count += 1;
        }
    }
    Ok(format!("{count} root checks plus symbolic"))
}

fn c7() -> Outcome {
    let budget = 1 << 25;
    for n in 1..=3 {
        let d = DiskGridDiagram::new(n, n, Over::X).map_err(|e| e.to_string())?;
        ensure(1u64 << d.crossings() == [2, 16, 512][n - 1], || {
            format!("N={n}: {} crossings", d.crossings())
        })?;
        let g = grid_total::<LaurentScalar>(&d, &(), budget).map_err(|e| e.to_string())?;
        ensure(g.total == closed_form(n, &()), || format!("N={n} symbolic"))?;
    }
    for m in [8u64, 24, 40] {
        let ctx = CycContext::new(m).map_err(|e| e.to_string())?;
        let d = DiskGridDiagram::new(4, 4, Over::X).map_err(|e| e.to_string())?;
        ensure(1u64 << d.crossings() == 65_536, || "4x4 state count".into())?;
        let g = grid_total::<CycScalar>(&d, &ctx, budget).map_err(|e| e.to_string())?;
        ensure(g.total == closed_form(4, &ctx), || format!("4x4 at m={m}"))?;
    }
    let mut cor = Vec::new();
    for ctx in contexts() {
        let n = ctx.big_n() as usize;
        if !(1..=4).contains(&n) {
            continue;
        }
        let d = DiskGridDiagram::new(n, n, Over::X).map_err(|e| e.to_string())?;
        let g = grid_total::<CycScalar>(&d, &ctx, budget).map_err(|e| e.to_string())?;
        ensure(g.total == corollary_value(&ctx), || {
            format!("corollary at m={}", ctx.m())
        })?;
        cor.push(ctx.m());
    }
    Ok(format!(
        "N=M<=3 symbolic, 4x4 at m=8,24,40, corollary at {} roots",
        cor.len()
    ))
}

fn c8() -> Outcome {
    for ctx in contexts() {
        let n = ctx.big_n() as i64;
        let (_, over, under) = transparency_check(&ctx).map_err(|e| e.to_string())?;
        let x = CycScalar::t_pow(&ctx, 4 * n);
        let one = CycScalar::int(&ctx, 1);
        if x == one {
            ensure(over == under, || format!("m={}: not equal", ctx.m()))?;
        } else if x == one.neg() {
            ensure(over == under.neg(), || format!("m={}: not negatives", ctx.m()))?;
        } else {
            return Err(format!("m={}: xi^(2N) is not +-1", ctx.m()));
        }
    }
    Ok("m=1..48".into())
}

fn c9() -> Outcome {
    for name in ["annulus", "square", "eye"] {
        let r = cmd_center(&fixture(name).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Pass, || r.line())?;
    }
    let mut tori = 0;
    for d in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| ((i + 1)..d).map(move |j| (i, j))).collect();
        let total = 5usize.pow(pairs.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0i64; d]; d];
            let mut c = code;
            for &(i, j) in &pairs {
                let v = (c % 5) as i64 - 2;
                c /= 5;
                rows[i][j] = v;
                rows[j][i] = -v;
            }
            let names = (0..d).map(|i| format!("x{i}")).collect();
            let u = AntiSymMatrix::new(names, rows).map_err(|e| e.to_string())?;
            for n in 1..=4 {
                let (ok, basis) = gamma_brute_force(&u, n, 3).map_err(|e| e.to_string())?;
                ensure(ok, || format!("U={:?} N={n} basis={basis:?}", u.rows))?;
            }
            tori += 1;
        }
    }
    Ok(format!("kernels on 3 fixtures; Gamma_N on {tori} tori x N=1..4"))
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn on_segment(p: &[i64], a: &[i64], b: &[i64]) -> bool {
    cross(a, b, p) == 0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Extreme points of a planar set: `p` is kept unless it lies in a triangle or segment of other points.
fn oracle_vertices(pts: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    let v: Vec<&Vec<i64>> = pts.iter().collect();
    let mut out = BTreeSet::new();
    'outer: for (i, p) in v.iter().enumerate() {
        let others: Vec<&Vec<i64>> = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| *q).collect();
        for a in 0..others.len() {
            for b in (a + 1)..others.len() {
                if on_segment(p, others[a], others[b]) {
                    continue 'outer;
                }
                for c in (b + 1)..others.len() {
                    let (x, y, z) = (
                        cross(others[a], others[b], p),
                        cross(others[b], others[c], p),
                        cross(others[c], others[a], p),
                    );
                    let inside = (x >= 0 && y >= 0 && z >= 0) || (x <= 0 && y <= 0 && z <= 0);
                    if inside && cross(others[a], others[b], others[c]) != 0 {
                        continue 'outer;
                    }
                }
            }
        }
        out.insert((*p).clone());
    }
    out
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..200 {
        let u = rng.gen_range(-3..=3);
        let t = Torus::plain(AntiSymMatrix::from_entries(&["x", "y"], &[("x", "y", u)]).map_err(|e| e.to_string())?);
        let random = |rng: &mut ChaCha8Rng| {
            let mut e = SymElement::zero(&t, &());
            while e.is_empty() {
                for _ in 0..rng.gen_range(1..=4) {
                    let k = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
                    let c = loop {
                        let c = rng.gen_range(-5..=5);
                        if c != 0 {
                            break c;
                        }
                    };
                    e.add_term(k, LaurentScalar::monomial(c, rng.gen_range(-4..=4)));
                }
            }
            e
        };
        let (x, y) = (random(&mut rng), random(&mut rng));
        let sums: BTreeSet<Vec<i64>> = x
            .terms()
            .flat_map(|(a, _)| y.terms().map(move |(b, _)| vec![a[0] + b[0], a[1] + b[1]]))
            .collect();
        let want = oracle_vertices(&sums);
        let got: BTreeSet<Vec<i64>> = newton_vertices(&x.mul(&y))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(got == want, || format!("trial {trial}: {got:?} vs {want:?}"))?;
    }
    Ok("200 random pairs".into())
}

fn c11() -> Outcome {
    for ctx in contexts() {
        let n = ctx.big_n();
        let e = 2 * (n * n) as i64;
        let z = CycScalar::t_pow(&ctx, 4).add(&CycScalar::t_pow(&ctx, -4)).neg();
        let lhs = chebyshev_t(n as u32).eval::<CycScalar>(&ctx, &z);
        let rhs = CycScalar::t_pow(&ctx, 2 * e).add(&CycScalar::t_pow(&ctx, -2 * e)).neg();
        ensure(lhs == rhs, || format!("m={}", ctx.m()))?;
        ensure(CycScalar::t_pow(&ctx, 4 * e) == CycScalar::int(&ctx, 1), || {
            format!("eps^4 at m={}", ctx.m())
        })?;
    }
    Ok("m=1..48".into())
}

fn c12() -> Outcome {
    for (name, shape) in [
        ("triangle", IdealTriangulationShape::single_triangle()),
        ("square", IdealTriangulationShape::square()),
    ] {
        ensure(monoid_closure_check(&shape, 4).map_err(|e| e.to_string())?, || {
            format!("{name}: closure")
        })?;
        ensure(primitivity_check(&shape, 4).map_err(|e| e.to_string())?, || {
            format!("{name}: primitivity")
        })?;
    }
    Ok("1- and 2-triangle shapes, coordinates <= 4".into())
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        (1, "generalized DeMoivre closed form", 5, c1),
        (2, "Chebyshev collapse at ord(q^2)=n", 5, c2),
        (3, "c(n,r,j) positivity", 1, c3),
        (4, "Gauss criterion", 5, c4),
        (5, "annulus Chebyshev-Frobenius", 10, c5),
        (6, "flip coherence", 5, c6),
        (7, "grid state sum closed form", 60, c7),
        (8, "transparency", 10, c8),
        (9, "center lattices", 10, c9),
        (10, "Newton polygon multiplicativity", 10, c10),
        (11, "trivial loop under T_N", 1, c11),
        (12, "edge-coordinate monoid", 10, c12),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let el = start.elapsed();
        let timely = el <= Duration::from_secs(limit);
        let pass = outcome.is_ok() && timely;
        failed += usize::from(!pass);
        let detail = match &outcome {
            Ok(s) if timely => s.clone(),
            Ok(s) => format!("{s}; over the {limit} s limit"),
            Err(e) => e.clone(),
        };
        println!(
            "{} {id:>2} {name} [{:.3} s / {limit} s] {detail}",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
