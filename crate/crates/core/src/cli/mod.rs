//! Command-line front end and the end-to-end verification commands.

mod config;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use config::Config;
pub use verify::{
    annulus_alpha, cmd_center, cmd_flip_coherence, cmd_frobenius_annulus, cmd_gauss_criterion, difference_witness,
    gamma_brute_force, gauss_torus, Scalars, Status, VerificationReport,
};

use crate::cheby::{chebyshev_of_ke, generalized_demoivre};
use crate::curves::IdealTriangulationShape;
use crate::error::{Error, Result};
use crate::qtorus::{AntiSymMatrix, SymElement};
use crate::qtrace::{annulus_core_knot, quantum_trace, DeltaSimpleKnot};
use crate::statesum::{
    closed_form, corollary_value, expected_transparency, grid_total, transparency_check, trivial_loop_value,
    DiskGridDiagram, Over,
};
use crate::surface::{fixture, fixture_names, flip, surgery_plug_hole, Quasitriangulation};

#[derive(Debug, Parser)]
#[command(name = "sktorus", version, about = "Exact quantum-torus and skein computations")]
pub struct Cli {
    /// Work in Z[t]/Phi_m with t a primitive m-th root of unity.
    #[arg(long, global = true, env = "SKTORUS_ROOT", conflicts_with = "symbolic")]
    pub root: Option<u64>,
    /// Work with symbolic q.
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Enumeration budget; 0 skips enumerative checks.
    #[arg(long, global = true, env = "SKTORUS_BUDGET")]
    pub budget: Option<u64>,
    /// `key = value` configuration file.
    #[arg(long, global = true, env = "SKTORUS_CONFIG")]
    pub config: Option<PathBuf>,
    /// Directory searched for fixture files.
    #[arg(long, global = true, env = "SKTORUS_FIXTURE_DIR")]
    pub fixture_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chebyshev closed forms.
    Cheby {
        #[command(subcommand)]
        cmd: ChebyCmd,
    },
    /// Quasitriangulation matrices, flips and surgeries.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Edge-coordinate admissibility.
    Curves {
        #[command(subcommand)]
        cmd: CurvesCmd,
    },
    /// Quantum trace of a simple knot.
    Qtrace {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        knot: String,
    },
    /// Crossing-grid state sums.
    Statesum {
        #[command(subcommand)]
        cmd: StatesumCmd,
    },
    /// End-to-end verifications.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChebyCmd {
    /// Closed form of T_n(K + K^-1 + E).
    Expand {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// Vertex matrix P.
    VertexMatrix { file: String },
    /// Face matrix Q.
    FaceMatrix { file: String },
    /// Flip an edge; prints the new quasitriangulation and the image of the edge.
    Flip {
        file: String,
        #[arg(long)]
        edge: String,
    },
    /// Plug the hole of an unmarked component.
    Plug {
        file: String,
        #[arg(long)]
        component: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CurvesCmd {
    /// Admissibility of an edge-coordinate vector.
    Admissible {
        #[arg(long)]
        shape: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        vector: Vec<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum StatesumCmd {
    /// Total of the N x M crossing grid, compared with the closed form when N = M.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Over/under totals of the N x 1 grid at the root given by --root.
    Transparency {
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// F_N(alpha) against T_N(alpha) on the annulus.
    FrobeniusAnnulus {
        #[arg(long)]
        n: Option<u32>,
    },
    /// (X+Y)^N against X^N + Y^N.
    Gauss {
        #[arg(long)]
        n: u32,
    },
    /// Frobenius against the flip transfer map.
    Flip {
        #[arg(long, default_value = "square")]
        fixture: String,
        #[arg(long, default_value = "x")]
        edge: String,
        /// Generator whose images are compared; defaults to the flipped edge.
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Center lattice of a fixture.
    Center {
        #[arg(long, default_value = "annulus")]
        fixture: String,
        /// Report Gamma_N instead of the generic kernel.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Every check in a fixed order.
    RunAll,
}

/// Resolved global settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub scalars: Scalars,
    pub json: bool,
    pub budget: u64,
    pub fixture_dir: Option<PathBuf>,
}

impl Settings {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let cfg = match &cli.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        let root = if cli.symbolic { None } else { cli.root.or(cfg.root) };
        Ok(Self {
            scalars: match root {
                Some(m) => Scalars::root(m)?,
                None => Scalars::Symbolic,
            },
            json: cli.json,
            budget: cli.budget.unwrap_or(cfg.budget),
            fixture_dir: cli.fixture_dir.clone().or(cfg.fixture_dir),
        })
    }

    fn read_source(&self, name: &str) -> Result<Option<String>> {
        let mut candidates = vec![PathBuf::from(name)];
        if let Some(d) = &self.fixture_dir {
            candidates.push(d.join(name));
            candidates.push(d.join(format!("{name}.json")));
        }
        for c in candidates {
            if c.is_file() {
                return std::fs::read_to_string(&c)
                    .map(Some)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", c.display())));
            }
        }
        Ok(None)
    }

    /// A quasitriangulation from a file, the fixture directory, or the bundled set.
    pub fn quasitriangulation(&self, name: &str) -> Result<Quasitriangulation> {
        match self.read_source(name)? {
            Some(text) => Quasitriangulation::from_json(&text),
            None => fixture(name),
        }
    }

    fn shape(&self, name: &str) -> Result<IdealTriangulationShape> {
        match name {
            "triangle" => Ok(IdealTriangulationShape::single_triangle()),
            "square" => Ok(IdealTriangulationShape::square()),
            "punctured-torus" => Ok(IdealTriangulationShape::punctured_torus()),
            _ => match self.read_source(name)? {
                Some(text) => IdealTriangulationShape::from_json(&text),
                None => Err(Error::UnknownName(name.to_string())),
            },
        }
    }

    fn knot(&self, name: &str) -> Result<DeltaSimpleKnot> {
        match name {
            "annulus-core" => Ok(annulus_core_knot()),
            _ => match self.read_source(name)? {
                Some(text) => DeltaSimpleKnot::from_json(&text),
                None => Err(Error::UnknownName(name.to_string())),
            },
        }
    }

    fn element_json(&self, x: &SymElement) -> Value {
        match &self.scalars {
            Scalars::Symbolic => x.to_json(),
            Scalars::Root(ctx) => x.specialize(ctx).to_json(),
        }
    }
}

fn matrix_json(m: &AntiSymMatrix) -> Value {
    json!({ "index": m.index, "rows": m.rows })
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?).map_err(|e| Error::Invalid(e.to_string()))
}

fn emit_reports(out: &mut dyn Write, s: &Settings, reports: &[VerificationReport]) -> Result<i32> {
    if s.json {
        emit(out, &serde_json::to_value(reports)?)?;
    } else {
        for r in reports {
            writeln!(out, "{}", r.line()).map_err(|e| Error::Invalid(e.to_string()))?;
        }
    }
    Ok(i32::from(reports.iter().any(|r| r.status == Status::Fail)))
}

fn default_n(s: &Settings, n: Option<u32>) -> Result<u32> {
    match (n, s.scalars.big_n()) {
        (Some(n), _) => Ok(n),
        (None, Some(b)) => u32::try_from(b).map_err(|_| Error::Invalid("N too large".into())),
        (None, None) => Ok(2),
    }
}

/// Every verification in a fixed order.
pub fn run_all(s: &Settings) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let sym = Scalars::Symbolic;
    for n in 1..=8 {
        let start = std::time::Instant::now();
        let w = difference_witness(&generalized_demoivre(n)?, &chebyshev_of_ke(n)?, &sym);
        let mut r = VerificationReport::skipped(&format!("demoivre n={n}"), "symbolic", "");
        r.status = if w.is_none() { Status::Pass } else { Status::Fail };
        r.expected = Some(true);
        r.computed = Some(w.is_none());
        r.witness = w;
        r.detail = None;
        r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        out.push(r);
    }
    out.push(cmd_frobenius_annulus(&sym, 2)?);
    for m in [8u64, 16, 24, 40] {
        let sc = Scalars::root(m)?;
        let n = sc.big_n().expect("root") as u32;
        out.push(cmd_frobenius_annulus(&sc, n)?);
    }
    out.push(cmd_frobenius_annulus(&Scalars::root(24)?, 2)?);
    for n in 1..=5 {
        out.push(cmd_gauss_criterion(&sym, n)?);
        for m in [16u64, 24, 32, 40] {
            out.push(cmd_gauss_criterion(&Scalars::root(m)?, n)?);
        }
    }
    let square = fixture("square")?;
    for (sc, n) in [
        (sym.clone(), 2),
        (sym.clone(), 3),
        (Scalars::root(16)?, 2),
        (Scalars::root(24)?, 3),
        (Scalars::root(24)?, 2),
    ] {
        out.push(cmd_flip_coherence(&square, "x", "x", &sc, n)?);
    }
    out.push(cmd_flip_coherence(&square, "x", "a", &sym, 2)?);
    for name in fixture_names() {
        out.push(cmd_center(&fixture(name)?, None)?);
    }
    if s.budget == 0 {
        out.push(VerificationReport::skipped("center annulus Gamma_2", "m=4", "budget 0"));
        out.push(VerificationReport::skipped("statesum", "-", "budget 0"));
        return Ok(out);
    }
    out.push(cmd_center(&fixture("annulus")?, Some(2))?);
    for n in 1..=3usize {
        let start = std::time::Instant::now();
        let d = DiskGridDiagram::new(n, n, Over::X)?;
        let name = format!("statesum grid {n}x{n}");
        match grid_total::<crate::qcoeff::LaurentScalar>(&d, &(), s.budget) {
            Ok(g) => {
                let w = difference_witness(&g.total, &closed_form(n, &()), &sym);
                let mut r = VerificationReport::skipped(&name, "symbolic", "");
                r.status = if w.is_none() { Status::Pass } else { Status::Fail };
                r.expected = Some(true);
                r.computed = Some(w.is_none());
                r.witness = w;
                r.detail = Some(format!("{} surviving states", g.surviving.len()));
                r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
                out.push(r);
            }
            Err(Error::Budget(b)) => out.push(VerificationReport::skipped(
                &name,
                "symbolic",
                &format!("budget {b} exceeded"),
            )),
            Err(e) => return Err(e),
        }
    }
    for m in [16u64, 24, 40] {
        let sc = Scalars::root(m)?;
        let Scalars::Root(ctx) = &sc else { unreachable!() };
        let start = std::time::Instant::now();
        let (v, _, _) = transparency_check(ctx)?;
        let want = expected_transparency(ctx);
        let mut r = VerificationReport::skipped("statesum transparency", &sc.to_string(), "");
        r.status = if v == want { Status::Pass } else { Status::Fail };
        r.witness = (v != want).then(|| format!("computed {v:?}, expected {want:?}"));
        r.detail = Some(format!("{v:?}"));
        r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        out.push(r);
        let n = ctx.big_n() as usize;
        if n <= 4 {
            let start = std::time::Instant::now();
            let d = DiskGridDiagram::new(n, n, Over::X)?;
            let g = grid_total::<crate::qcoeff::CycScalar>(&d, ctx, s.budget)?;
            let ok = g.total == corollary_value(ctx);
            let mut r = VerificationReport::skipped(&format!("statesum corollary N={n}"), &sc.to_string(), "");
            r.status = if ok { Status::Pass } else { Status::Fail };
            r.witness = (!ok).then(|| "grid total differs from the two-term value".to_string());
            r.detail = None;
            r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            out.push(r);
        }
    }
    let bad: Vec<u64> = (1..=48u64)
        .filter(|&m| {
            crate::qcoeff::CycContext::new(m)
                .map(|c| trivial_loop_value(&c) != (true, true))
                .unwrap_or(true)
        })
        .collect();
    let mut r = VerificationReport::skipped("trivial loop identity m<=48", "m=1..48", "");
    r.status = if bad.is_empty() { Status::Pass } else { Status::Fail };
    r.witness = (!bad.is_empty()).then(|| format!("fails at m = {bad:?}"));
    r.detail = None;
    out.push(r);
    Ok(out)
}

fn dispatch(cli: &Cli, s: &Settings, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Cheby {
            cmd: ChebyCmd::Expand { n },
        } => {
            emit(out, &s.element_json(&generalized_demoivre(*n)?))?;
            Ok(0)
        }
        Command::Surface { cmd } => {
            let v = match cmd {
                SurfaceCmd::VertexMatrix { file } => matrix_json(&s.quasitriangulation(file)?.vertex_matrix()?),
                SurfaceCmd::FaceMatrix { file } => matrix_json(&s.quasitriangulation(file)?.face_matrix()?),
                SurfaceCmd::Flip { file, edge } => {
                    let f = flip(&s.quasitriangulation(file)?, edge)?;
                    let theta = f.transfer_on_generator(edge)?;
                    json!({ "quasitriangulation": serde_json::to_value(&f.target)?, "theta": s.element_json(&theta) })
                }
                SurfaceCmd::Plug { file, component } => {
                    let sm = surgery_plug_hole(&s.quasitriangulation(file)?, component)?;
                    let images: serde_json::Map<String, Value> = sm
                        .map
                        .images
                        .iter()
                        .map(|(k, v)| (k.clone(), s.element_json(v)))
                        .collect();
                    json!({
                        "quasitriangulation": serde_json::to_value(&sm.target)?,
                        "images": images,
                        "kernel": sm.kernel.iter().map(|e| format!("{e:?}")).collect::<Vec<_>>(),
                    })
                }
            };
            emit(out, &v)?;
            Ok(0)
        }
        Command::Curves {
            cmd: CurvesCmd::Admissible { shape, vector },
        } => {
            let sh = s.shape(shape)?;
            let ok = sh.is_admissible(vector)?;
            emit(
                out,
                &json!({ "vector": vector, "admissible": ok, "in_group_completion": sh.in_group_completion(vector)? }),
            )?;
            Ok(0)
        }
        Command::Qtrace { shape, knot } => {
            let t = s.quasitriangulation(shape)?;
            let k = s.knot(knot)?;
            emit(out, &s.element_json(&quantum_trace(&k, &t)?))?;
            Ok(0)
        }
        Command::Statesum {
            cmd: StatesumCmd::Grid { n, m },
        } => {
            let d = DiskGridDiagram::new(*n, *m, Over::X)?;
            let g = grid_total::<crate::qcoeff::LaurentScalar>(&d, &(), s.budget)?;
            emit(out, &s.element_json(&g.total))?;
            if n == m {
                let w = difference_witness(&g.total, &closed_form(*n, &()), &s.scalars);
                writeln!(out, "closed form: {}", w.as_deref().unwrap_or("match"))
                    .map_err(|e| Error::Invalid(e.to_string()))?;
                return Ok(i32::from(w.is_some()));
            }
            Ok(0)
        }
        Command::Statesum {
            cmd: StatesumCmd::Transparency { n },
        } => {
            let Scalars::Root(ctx) = &s.scalars else {
                return Err(Error::Invalid("transparency needs --root".into()));
            };
            if let Some(n) = n {
                if *n != ctx.big_n() {
                    return Err(Error::Invalid(format!("--n must equal ord(xi^4) = {}", ctx.big_n())));
                }
            }
            let (v, over, _) = transparency_check(ctx)?;
            let want = expected_transparency(ctx);
            emit(out, &over.to_json())?;
            writeln!(out, "verdict: {v:?} (expected {want:?})").map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(i32::from(v != want))
        }
        Command::Verify { cmd } => {
            let reports = match cmd {
                VerifyCmd::FrobeniusAnnulus { n } => vec![cmd_frobenius_annulus(&s.scalars, default_n(s, *n)?)?],
                VerifyCmd::Gauss { n } => vec![cmd_gauss_criterion(&s.scalars, *n)?],
                VerifyCmd::Flip {
                    fixture,
                    edge,
                    generator,
                    n,
                } => {
                    let t = s.quasitriangulation(fixture)?;
                    let x = generator.as_deref().unwrap_or(edge);
                    vec![cmd_flip_coherence(&t, edge, x, &s.scalars, default_n(s, *n)?)?]
                }
                VerifyCmd::Center { fixture, n } => vec![cmd_center(&s.quasitriangulation(fixture)?, *n)?],
                VerifyCmd::RunAll => run_all(s)?,
            };
            emit_reports(out, s, &reports)
        }
    }
}

/// Parses arguments, runs the command and returns the exit code: 0 pass, 1 fail, 2 input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = Settings::from_cli(&cli).and_then(|s| dispatch(&cli, &s, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
