//! Command-line front end. `run` parses arguments, writes reports and returns the exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{Base, FamilySpec, parse_window};
use crate::lattice_lift::{
    IntMatrix, LatticePairReport, build_pair_for_automorphism, build_quadrant_pair, eight_matrices,
};
use crate::oracle::{brute_is_cominimal, naive_sumset};
use crate::refinement::{refine_greedy, removal_is_certified_safe};
use crate::sumset::sumset;
use crate::verifiers::{
    ClaimResult, Truncation, check_claims_st_with, check_claims_uv_with,
    check_self_cominimal_cyclic, check_uv_finiteness_with, verify_complement_window,
    verify_element_necessity_a, verify_minimality,
};
use crate::window::{IntegerWindow, LatticeWindow, WindowedSet};

pub const SCHEMA: &str = "1";
pub const THREADS_ENV: &str = "COMINIMAL_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cominimal",
    version,
    about = "Co-minimal pairs of integer sets: generate, verify, refine, lift"
)]
pub struct Cli {
    /// JSON file pinning truncations, horizons and budgets. Flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Materialize a family on a window.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite and emit one JSON line per claim.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = BaseArg::S)]
        base: BaseArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Greedily drop removable elements from a prefix of S or U.
    Refine {
        #[arg(long, value_enum, ignore_case = true)]
        base: BaseArg,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and check a lattice pair `(A, σ(A))`.
    Lift {
        #[arg(
            long,
            conflicts_with = "quadrant",
            required_unless_present = "quadrant"
        )]
        matrix: Option<String>,
        #[arg(long)]
        quadrant: Option<usize>,
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Oracle equivalences and the claim suites, with known deviations marked XFAIL.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Runs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    StClaims,
    UvClaims,
    UvFiniteness,
    Complement,
    Minimality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    S,
    U,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Base {
        match b {
            BaseArg::S => Base::S,
            BaseArg::U => Base::U,
        }
    }
}

/// Optional pins read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Truncation for the structural claim suites.
    pub truncation: Option<Truncation>,
    /// Largest block index in the finiteness check.
    pub finiteness_max_index: Option<u32>,
    /// Refinement budget when `--budget` is absent.
    pub budget: Option<usize>,
    /// Default window for complement and minimality suites.
    pub window: Option<IntegerWindow>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    configure_threads();
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Io(m)) => {
            let _ = writeln!(err, "io error: {m}");
            EXIT_IO
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    let Some(p) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(p).map_err(|e| io_err(p, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let cfg = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Generate {
            family,
            window,
            out: path,
            format,
        } => {
            let spec = FamilySpec::parse(family)?;
            let w = parse_window(window)?;
            let set = spec.materialize(w)?;
            let body = match format {
                Format::Json => set.to_json(),
                Format::Runs => set.to_runs_json(),
            };
            let mut line = with_schema(&body)?;
            line.as_object_mut()
                .expect("object")
                .insert("family".into(), Value::String(spec.to_string()));
            emit(&[line], path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            n,
            window,
            base,
            report,
        } => {
            let results = run_suite(
                *suite,
                n.as_deref(),
                window.as_deref(),
                (*base).into(),
                &cfg,
            )?;
            let lines = results
                .iter()
                .map(with_schema)
                .collect::<CliResult<Vec<_>>>()?;
            emit(&lines, report.as_deref(), out)?;
            let failed = results.iter().filter(|r| !r.holds).count();
            let _ = writeln!(err, "{} claims, {failed} failed", results.len());
            Ok(if failed == 0 {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAILED
            })
        }
        Command::Refine {
            base,
            budget,
            report,
        } => {
            let b: Base = (*base).into();
            let budget = budget.or(cfg.budget).unwrap_or(200);
            let reach = crate::refinement::base_prefix(b, budget)?
                .last()
                .map_or(1, |x| x.unsigned_abs() as i64);
            let r = refine_greedy(
                &b.spec(),
                &b.partner(),
                budget,
                IntegerWindow::new(-reach, reach)?,
            )?;
            emit(&[with_schema(&r)?], report.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Lift {
            matrix,
            quadrant,
            bounds,
            report,
        } => {
            let r = match (matrix, quadrant) {
                (Some(m), _) => {
                    let m: IntMatrix = serde_json::from_str(m)
                        .map_err(|e| CliError::Usage(format!("--matrix: {e}")))?;
                    let w = parse_box(bounds.as_deref(), m.n())?;
                    build_pair_for_automorphism(&m, &w)?
                }
                (None, Some(d)) => {
                    let w = parse_box(bounds.as_deref(), 2 * d)?;
                    build_quadrant_pair(*d, &w)?
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --matrix or --quadrant is required".into(),
                    ));
                }
            };
            emit(&[with_schema(&r)?], report.as_deref(), out)?;
            Ok(if r.passes() {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAILED
            })
        }
        Command::Selftest => selftest(out),
    }
}

fn with_schema<T: Serialize>(v: &T) -> CliResult<Value> {
    let mut j = serde_json::to_value(v).map_err(|e| CliError::Usage(e.to_string()))?;
    match j.as_object_mut() {
        Some(o) => {
            o.insert("schema".into(), Value::String(SCHEMA.into()));
            Ok(j)
        }
        None => Err(CliError::Usage("report is not a JSON object".into())),
    }
}

/// Writes JSON lines to `path`, or to `out` when no path is given.
fn emit(lines: &[Value], path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let mut text = String::new();
    for l in lines {
        text.push_str(&l.to_string());
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn parse_range(text: Option<&str>, default: (u32, u32)) -> CliResult<(u32, u32)> {
    let Some(t) = text else { return Ok(default) };
    let bad = || CliError::Usage(format!("expected LO..HI, got {t:?}"));
    let (a, b) = t.split_once("..").ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// `lo..hi,lo..hi,…`; a single range is repeated on every axis. Defaults to `-64..64`.
pub fn parse_box(text: Option<&str>, dim: usize) -> crate::Result<LatticeWindow> {
    let axes: Vec<IntegerWindow> = text
        .unwrap_or("-64..64")
        .split(',')
        .map(parse_window)
        .collect::<crate::Result<_>>()?;
    match axes.len() {
        1 => LatticeWindow::new(vec![axes[0]; dim]),
        n if n == dim => LatticeWindow::new(axes),
        n => Err(crate::Error::Dimension(dim, n)),
    }
}

fn run_suite(
    suite: Suite,
    n: Option<&str>,
    window: Option<&str>,
    base: Base,
    cfg: &Config,
) -> CliResult<Vec<ClaimResult>> {
    let w = match window {
        Some(t) => parse_window(t)?,
        None => cfg.window.unwrap_or(IntegerWindow::new(-4096, 4096)?),
    };
    Ok(match suite {
        Suite::StClaims => {
            let (lo, hi) = parse_range(n, (3, 10))?;
            check_claims_st_with(lo, hi, cfg.truncation.unwrap_or(Truncation::st_default(hi)))?
        }
        Suite::UvClaims => {
            let (lo, hi) = parse_range(n, (2, 10))?;
            check_claims_uv_with(lo, hi, cfg.truncation.unwrap_or(Truncation::uv_default(hi)))?
        }
        Suite::UvFiniteness => {
            let (lo, hi) = parse_range(n, (4, 10))?;
            check_uv_finiteness_with(lo, hi, cfg.finiteness_max_index.unwrap_or(hi + 6))?
        }
        Suite::Complement => vec![verify_complement_window(&base.spec(), &base.partner(), w)?],
        Suite::Minimality => {
            let (lo, hi) = parse_range(n, (3, 8))?;
            minimality_suite(base, lo, hi, w)?
        }
    })
}

/// One result per named element: the partner's powers, then the structured side's anchors.
fn minimality_suite(base: Base, lo: u32, hi: u32, w: IntegerWindow) -> CliResult<Vec<ClaimResult>> {
    let (a, b) = (base.spec(), base.partner());
    let (powers, anchors): (Vec<i64>, Vec<i64>) = match base {
        Base::S => {
            let mut p = vec![1, 2];
            p.extend((lo.max(3)..=hi).map(|n| 1i64 << (n - 1)));
            (p, vec![-2, -4])
        }
        Base::U => {
            let mut p = vec![1, 2, -1, -2, -4];
            for n in lo.max(6)..=hi {
                p.extend([1i64 << (n - 3), -(1i64 << (n - 3))]);
            }
            (p, vec![-1, -2, -39, -40])
        }
    };
    let mut powers_dedup = powers.clone();
    powers_dedup.sort_unstable();
    powers_dedup.dedup();
    let rep = verify_minimality(&a, &b, &powers_dedup, w)?;
    let mut out = Vec::new();
    for p in powers {
        let wit = rep.entries.get(&p);
        let mut r = ClaimResult::new(
            &format!("minimality.{}", side_name(&b)),
            None,
            None,
            None,
            match wit {
                Some(x) => format!("removing {p} loses {}", x.target),
                None => format!("no target in {w} is lost when {p} is removed"),
            },
        );
        r.holds = wit.is_some();
        r.counterexample = wit.is_none().then_some(p);
        r.certification = rep.certification;
        out.push(r);
    }
    for av in anchors {
        let wit = verify_element_necessity_a(&a, &b, av, w)?;
        let mut r = ClaimResult::new(
            &format!("minimality.{}", side_name(&a)),
            None,
            None,
            None,
            match &wit {
                Some(x) => format!("removing {av} loses {}", x.target),
                None => format!("no target in {w} is lost when {av} is removed"),
            },
        );
        r.holds = wit.is_some();
        r.counterexample = wit.is_none().then_some(av);
        r.certification = crate::verifiers::Certification::WindowTail;
        out.push(r);
    }
    Ok(out)
}

fn side_name(f: &FamilySpec) -> String {
    f.to_string()
}

/// Outcome of one selftest step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    /// A documented deviation observed exactly as recorded.
    XFail(String),
    Fail(String),
}

fn line(out: &mut dyn Write, name: &str, c: &Check) -> CliResult<()> {
    let s = match c {
        Check::Pass => format!("PASS  {name}"),
        Check::XFail(why) => format!("XFAIL {name}: {why}"),
        Check::Fail(why) => format!("FAIL  {name}: {why}"),
    };
    writeln!(out, "{s}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn ok_if(cond: bool, why: impl FnOnce() -> String) -> Check {
    if cond {
        Check::Pass
    } else {
        Check::Fail(why())
    }
}

type Step = (&'static str, fn() -> crate::Result<Check>);

/// Runs every step, printing one line each. Exit 0 unless some step FAILs.
fn selftest(out: &mut dyn Write) -> CliResult<i32> {
    let steps: Vec<Step> = vec![
        (
            "sumset matches naive oracle (300 random cases)",
            st_sumset_oracle,
        ),
        (
            "cyclic characterization matches brute force (m <= 8)",
            st_cyclic,
        ),
        ("S + T covers [-4096, 4096]", || complement_step(Base::S)),
        ("U + V covers [-4096, 4096]", || complement_step(Base::U)),
        ("S/T structural claims, n = 3..10", st_claims_step),
        ("U/V structural claims, n = 2..10", uv_claims_step),
        ("U/V finiteness, n = 4..10", st_finiteness),
        (
            "minimality witnesses for 1, 2 in T and -2, -4 in S",
            st_minimality,
        ),
        ("refinement of S, budget 200", st_refine),
        ("eight plane automorphism pairs on [-32, 32]^2", st_lattice),
    ];
    let mut failed = 0;
    for (name, f) in steps {
        let c = f().unwrap_or_else(|e| Check::Fail(e.to_string()));
        if matches!(c, Check::Fail(_)) {
            failed += 1;
        }
        line(out, name, &c)?;
    }
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    })
}

fn st_sumset_oracle() -> crate::Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..300 {
        let span = rng.random_range(1..400i64);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            let k = rng.random_range(0..60usize);
            (0..k).map(|_| rng.random_range(-span..=span)).collect()
        };
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let w = IntegerWindow::new(-span, span)?;
        let t = IntegerWindow::new(-2 * span + rng.random_range(0..span), 2 * span)?;
        let fast = sumset(
            &WindowedSet::from_elements(w, a.clone())?,
            &WindowedSet::from_elements(w, b.clone())?,
            t,
        );
        if !fast.same_members(&naive_sumset(&a, &b, t)) {
            return Ok(Check::Fail(format!("case {case} differs")));
        }
    }
    Ok(Check::Pass)
}

fn st_cyclic() -> crate::Result<Check> {
    for m in 1..=8usize {
        for mask in 1u32..(1 << m) {
            let a: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            if check_self_cominimal_cyclic(&a, m)? != brute_is_cominimal(&a, &a, m) {
                return Ok(Check::Fail(format!("disagree at m = {m}, A = {a:?}")));
            }
        }
    }
    Ok(Check::Pass)
}

fn complement_step(base: Base) -> crate::Result<Check> {
    let r = verify_complement_window(
        &base.spec(),
        &base.partner(),
        IntegerWindow::new(-4096, 4096)?,
    )?;
    Ok(ok_if(r.holds, || {
        format!("first gap {:?}", r.counterexample)
    }))
}

fn st_claims_step() -> crate::Result<Check> {
    let r = check_claims_st_with(3, 10, Truncation::st_default(10))?;
    let bad: Vec<_> = r
        .iter()
        .filter(|c| !c.holds)
        .map(|c| (c.claim.clone(), c.n))
        .collect();
    Ok(ok_if(bad.is_empty(), || format!("{bad:?}")))
}

fn uv_claims_step() -> crate::Result<Check> {
    let r = check_claims_uv_with(2, 10, Truncation::uv_default(10))?;
    let bad: Vec<_> = r
        .iter()
        .filter(|c| !c.holds)
        .map(|c| (c.claim.as_str(), c.n, c.counterexample))
        .collect();
    Ok(
        if bad == [("uv.positive_power_forced", Some(5), Some(-35))] {
            Check::XFail(
                "at n = 5, -35 = -19 + (-16) with -19 in U_3; every other claim holds".into(),
            )
        } else {
            ok_if(bad.is_empty(), || format!("{bad:?}"))
        },
    )
}

fn st_finiteness() -> crate::Result<Check> {
    let r = check_uv_finiteness_with(4, 10, 16)?;
    Ok(ok_if(r.iter().all(|c| c.holds), || {
        "disjointness fails".into()
    }))
}

fn st_minimality() -> crate::Result<Check> {
    let w = IntegerWindow::new(-4096, 4096)?;
    let rep = verify_minimality(&FamilySpec::S, &FamilySpec::T, &[1, 2], w)?;
    let targets: Vec<Option<i64>> = [1, 2]
        .iter()
        .map(|p| rep.entries.get(p).map(|x| x.target))
        .collect();
    let a2 = verify_element_necessity_a(&FamilySpec::S, &FamilySpec::T, -2, w)?.map(|x| x.target);
    let a4 = verify_element_necessity_a(&FamilySpec::S, &FamilySpec::T, -4, w)?.map(|x| x.target);
    let got = (targets[0], targets[1], a2, a4);
    Ok(if got == (Some(-1), Some(-37), Some(-1), Some(-3)) {
        Check::XFail("removing 2 loses -37; -38 = -39 + 1 keeps a representation".into())
    } else {
        ok_if(got == (Some(-1), Some(-38), Some(-1), Some(-3)), || {
            format!("{got:?}")
        })
    })
}

fn st_refine() -> crate::Result<Check> {
    let r = crate::refinement::refine_greedy_default(Base::S, 200)?;
    let again = crate::refinement::refine_greedy_default(Base::S, 200)?;
    let safe = removal_is_certified_safe(&|x: i64| FamilySpec::S.member(x), -135, &FamilySpec::T)?;
    let spec = r.family()?;
    let cov = verify_complement_window(&spec, &FamilySpec::T, IntegerWindow::new(-2048, 2048)?)?;
    Ok(ok_if(
        r == again && r.retained.contains(&-2) && r.retained.contains(&-4) && safe && cov.holds,
        || "refinement differs from its reference behaviour".into(),
    ))
}

fn st_lattice() -> crate::Result<Check> {
    let w = LatticeWindow::cube(2, -32, 32)?;
    let bad: Vec<String> = eight_matrices()
        .iter()
        .map(|m| {
            build_pair_for_automorphism(m, &w)
                .map(|r: LatticePairReport| (m.to_string(), r.passes()))
        })
        .collect::<crate::Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(m, _)| m)
        .collect();
    Ok(ok_if(bad.is_empty(), || {
        format!("failing matrices {bad:?}")
    }))
}
