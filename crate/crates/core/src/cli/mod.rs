//! JSON formats, report emission, and the `sympi1` command-line driver.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input
//! error, 3 a cap or budget was exhausted.

mod emit;
pub mod formats;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::Number;

pub use emit::{emit_report, OutputFormat, RunConfig};
use formats::{
    big_number, int_json, mod_json, read_json, GammaSpecJson, GroupJson, HkwJson, MatrixJson,
};

use crate::engine::{center, closure, sylow_subgroup, GroupContext, DEFAULT_SYLOW_BUDGET};
use crate::error::{Error, Result};
use crate::exact_algebra::{smith_normal_form, IntMatrix};
use crate::pipeline::{
    pi_quotient, verify_thm31, verify_thm33_witness, verify_thm34, Caps, ExternalMatrices, GammaSpec, Step,
    Thm31Options, VerificationReport,
};
use crate::symplectic_groups::{prime_part, GeneratorSet};
use crate::toric::{toric_pi1, Fan};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (report schema 1.0)");

#[derive(Parser, Debug)]
#[command(name = "sympi1", version = VERSION, about = "Finite-level certificates for Π(Γ) = Γ/Υ and toric π₁")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Maximum number of enumerated group elements.
    #[arg(long, global = true, default_value_t = crate::engine::DEFAULT_CLOSURE_CAP,
          value_parser = positive)]
    closure_cap: usize,
    /// Maximum quotient index for coset computations.
    #[arg(long, global = true, default_value_t = crate::engine::DEFAULT_QUOTIENT_CAP,
          value_parser = positive)]
    quotient_cap: usize,
    /// Override the sample count of sampled steps.
    #[arg(long, global = true, value_parser = positive)]
    samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Packaged verifications.
    #[command(subcommand)]
    Verify(Verify),
    /// Image of Π(Γ) at a working modulus.
    PiQuotient {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Enumerate the group generated by matrices mod n.
    Closure {
        #[arg(long)]
        group: PathBuf,
    },
    /// Sylow q-subgroup of a generated group.
    Sylow {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// π₁ of a toric variety from its fan.
    ToricPi1 {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Π(Γ(l)) surjects onto a Sylow q-subgroup of Sp(4, F_p).
    Thm31 {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Accept p = 2 (needs l odd).
        #[arg(long)]
        allow_p2: bool,
    },
    /// The extra element M0' for (1,p) polarisations.
    Thm33 {
        #[arg(long)]
        p: u64,
    },
    /// Γ̃⁰/Υ̃ ≅ Z/2 × Z/2 for the (1,3) polarisation with level-2 structure.
    Thm34 {
        /// JSON file with matrices M0 ... M4.
        #[arg(long)]
        hkw: Option<PathBuf>,
        /// Also run the exact level-12 enumeration.
        #[arg(long)]
        full_quotient: bool,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. }
        | Error::GroupTooLarge { .. }
        | Error::BudgetExceeded(_)
        | Error::NotFound(_)
        | Error::IndexTooLarge { .. }
        | Error::EnumerationCap { .. }
        | Error::NoFiniteScaling(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

/// Runs the driver, printing to the process streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the driver with explicit output streams.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let cfg = RunConfig {
        seed: cli.global.seed,
        caps: Caps {
            closure_cap: cli.global.closure_cap,
            quotient_cap: cli.global.quotient_cap,
            samples: cli.global.samples,
        },
        format: cli.global.format,
        out: cli.global.out.clone(),
    };
    let result = execute(&cli.command, &cfg).and_then(|r| {
        let text = emit_report(&r, &cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(r.passed())
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe_error(&e, &cli.command));
            exit_code(&e)
        }
    }
}

fn describe_error(e: &Error, cmd: &Command) -> String {
    match (e, cmd) {
        (Error::GroupTooLarge { order, cap }, Command::Verify(Verify::Thm31 { p, .. })) => format!(
            "p = {p} exceeds the enumeration caps: Sp(4, F_{p}) has order {order} > closure cap {cap}"
        ),
        _ => e.to_string(),
    }
}

/// Runs one verb and returns its report.
fn execute(cmd: &Command, cfg: &RunConfig) -> Result<VerificationReport> {
    let caps = &cfg.caps;
    match cmd {
        Command::Verify(Verify::Thm31 { l, p, q, allow_p2 }) => verify_thm31(
            *l,
            *p,
            *q,
            cfg.seed,
            caps,
            &Thm31Options { allow_p2: *allow_p2 },
        ),
        Command::Verify(Verify::Thm33 { p }) => verify_thm33_witness(*p).map(|mut r| {
            r.seed = cfg.seed;
            r.caps = caps.clone();
            r
        }),
        Command::Verify(Verify::Thm34 { hkw, full_quotient }) => {
            let external = hkw.as_deref().map(load_external).transpose()?;
            verify_thm34(caps, external.as_ref(), *full_quotient, cfg.seed)
        }
        Command::PiQuotient { spec } => run_pi_quotient(spec, cfg),
        Command::Closure { group } => run_closure(group, cfg),
        Command::Sylow { group, q } => run_sylow(group, *q, cfg),
        Command::ToricPi1 { fan } => run_toric(fan, cfg),
        Command::Snf { matrix } => run_snf(matrix, cfg),
    }
}

fn parameters(r: &mut VerificationReport, input: &Path) {
    let name = input.file_name().map_or_else(|| input.display().to_string(), |n| n.to_string_lossy().into_owned());
    r.param("input", name);
}

fn load_external(path: &Path) -> Result<ExternalMatrices> {
    let j: HkwJson = read_json(path)?;
    let conv = |m: &Option<MatrixJson>| m.as_ref().map(MatrixJson::to_int).transpose();
    Ok(ExternalMatrices {
        m0: conv(&j.m0)?,
        m1: conv(&j.m1)?,
        m2: conv(&j.m2)?,
        m3: conv(&j.m3)?,
        m4: conv(&j.m4)?,
    })
}

/// Converts the JSON form of a spec.
pub fn gamma_spec_from_json(j: &GammaSpecJson) -> Result<GammaSpec> {
    let pattern = j.pattern.to_pattern()?;
    let mut spec = GammaSpec::new(pattern.clone(), j.boundaries.clone(), j.working_modulus);
    if let Some(gens) = &j.generators {
        let elems = gens.iter().map(MatrixJson::to_int).collect::<Result<Vec<_>>>()?;
        spec.explicit_generators = Some(GeneratorSet::new("supplied", elems, pattern.form().clone())?);
    }
    spec.extra_normal = j.extra_normal.iter().map(MatrixJson::to_int).collect::<Result<_>>()?;
    Ok(spec)
}

fn run_pi_quotient(path: &Path, cfg: &RunConfig) -> Result<VerificationReport> {
    let j: GammaSpecJson = read_json(path)?;
    let spec = gamma_spec_from_json(&j)?;
    let pq = pi_quotient(&spec, &cfg.caps)?;
    let mut r = VerificationReport::new("pi-quotient", "finite-level image of Π(Γ) = Γ/Υ", cfg.seed, &cfg.caps);
    parameters(&mut r, path);
    r.param("working_modulus", spec.working_modulus);
    r.param("boundaries", serde_json::to_value(&spec.boundaries).expect("serializable"));
    let mut step = Step::new(1, "Γ image, Υ image and their quotient", "Υ is the subgroup generated by U(F)∩Γ");
    if let serde_json::Value::Object(m) = pq.summary() {
        step.evidence.extend(m);
    }
    r.push(step.pass_if(true));
    r.notes.push(crate::pipeline::BOUND_NOTE.into());
    Ok(r)
}

fn load_group(path: &Path, cfg: &RunConfig) -> Result<(GroupContext, crate::engine::ElementTable)> {
    let j: GroupJson = read_json(path)?;
    let ctx = GroupContext::new(j.form()?, j.modulus)?;
    let gens = j.generators_mod()?;
    for g in &gens {
        ctx.check_element(g)?;
    }
    let table = closure(&ctx, &gens, cfg.caps.closure_cap)?;
    Ok((ctx, table))
}

fn run_closure(path: &Path, cfg: &RunConfig) -> Result<VerificationReport> {
    let (ctx, table) = load_group(path, cfg)?;
    let mut r = VerificationReport::new("closure", "order of a generated matrix group", cfg.seed, &cfg.caps);
    parameters(&mut r, path);
    r.param("modulus", ctx.modulus());
    r.param("dim", ctx.dim());
    let z = center(&table);
    r.push(
        Step::new(1, "closure under multiplication", "the group generated by the given matrices")
            .with("order", table.len())
            .with("generators", table.generators().map_or(0, <[_]>::len))
            .with("center_order", z.len())
            .pass_if(true),
    );
    Ok(r)
}

fn run_sylow(path: &Path, q: u64, cfg: &RunConfig) -> Result<VerificationReport> {
    if !crate::exact_algebra::is_prime(q) {
        return Err(Error::Input(format!("q = {q} is not prime")));
    }
    let (ctx, table) = load_group(path, cfg)?;
    let sylow = sylow_subgroup(&table, q, cfg.seed, DEFAULT_SYLOW_BUDGET)?;
    let q_part = prime_part(&BigUint::from(table.len()), q);
    let mut r = VerificationReport::new("sylow", &format!("Sylow {q}-subgroup"), cfg.seed, &cfg.caps);
    parameters(&mut r, path);
    r.param("modulus", ctx.modulus());
    r.param("q", q);
    let gens: Vec<_> = sylow.generators().unwrap_or_default().iter().map(mod_json).collect();
    r.push(
        Step::new(1, "subgroup order equals the q-part of the group order", "a Sylow q-subgroup")
            .with("group_order", table.len())
            .with("q_part", big_number(&q_part))
            .with("order", sylow.len())
            .with("generators", gens)
            .pass_if(BigUint::from(sylow.len()) == q_part),
    );
    Ok(r)
}

fn run_toric(path: &Path, cfg: &RunConfig) -> Result<VerificationReport> {
    let fan: Fan = read_json(path)?;
    let g = toric_pi1(&fan)?;
    let mut r = VerificationReport::new("toric-pi1", "π₁ of the toric variety of a fan", cfg.seed, &cfg.caps);
    parameters(&mut r, path);
    r.param("rank", fan.rank);
    r.param("cones", fan.cones.len());
    r.push(
        Step::new(
            1,
            "N modulo the lattice points of the cones",
            "consists of the classes of the loops s ↦ exp{2πis⟨ ,n⟩} for n ∈ N",
        )
        .with("free_rank", g.free_rank)
        .with("torsion", g.torsion.clone())
        .with("group", g.to_string())
        .pass_if(true),
    );
    Ok(r)
}

/// Rectangular integer matrix, `{"entries": [[...], ...]}`.
#[derive(Deserialize)]
struct RowsJson {
    entries: Vec<Vec<Number>>,
}

fn run_snf(path: &Path, cfg: &RunConfig) -> Result<VerificationReport> {
    let j: RowsJson = read_json(path)?;
    let rows = j
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|n| n.to_string().parse::<num_bigint::BigInt>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Input(format!("matrix entry is not an integer: {e}")))?;
    let a = IntMatrix::from_rows(&rows)?;
    let snf = smith_normal_form(&a);
    let mut r = VerificationReport::new("snf", "Smith normal form", cfg.seed, &cfg.caps);
    parameters(&mut r, path);
    r.param("rows", a.rows());
    r.param("cols", a.cols());
    let divisors: Vec<_> = snf.elementary_divisors().iter().map(big_number).collect();
    r.push(
        Step::new(1, "U·A·V = D with U, V unimodular and divisibility chain", "Smith normal form")
            .with("elementary_divisors", divisors)
            .with("D", int_json(&snf.d))
            .with("U", int_json(&snf.u))
            .with("V", int_json(&snf.v))
            .pass_if(snf.verify(&a)),
    );
    Ok(r)
}

/// The schema version string printed by `--version`.
pub fn version() -> &'static str {
    VERSION
}
