//! Job plumbing behind the `madlie` binary: argument model, input loading with
//! digesting, dispatch, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use madlie::chevalley::{algebra, Algebra, GroupElement, GroupElementJson, LieElement, LieElementJson};
use madlie::conjugacy::{self, witness_json, Status};
use madlie::diagnostics::{self, MadCandidate, MadCandidateJson};
use madlie::instances;
use madlie::rings::module::min_generators;
use madlie::rings::{Rational, Ring, RingSpec};
use madlie::rootdata::CartanMatrix;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CheckDiag,
    Regular,
    Traces,
    Eigenmodules,
    Conjugate,
    Mad,
    Lift,
    QuadricDemo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckDiag => "check-diag",
            Command::Regular => "regular",
            Command::Traces => "traces",
            Command::Eigenmodules => "eigenmodules",
            Command::Conjugate => "conjugate",
            Command::Mad => "mad",
            Command::Lift => "lift",
            Command::QuadricDemo => "quadric-demo",
        }
    }
}

/// Exact analyses of Lie algebra elements over commutative rings.
#[derive(Debug, Parser)]
#[command(name = "madlie", version)]
pub struct Args {
    pub command: Command,
    /// Ring description (JSON).
    #[arg(long)]
    pub ring: Option<PathBuf>,
    /// Cartan matrix, `{"type":"A","rank":2}` or `{"matrix":[[...]]}`.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub element: Option<PathBuf>,
    #[arg(long)]
    pub candidate: Option<PathBuf>,
    /// Target element `p0` for `conjugate` and `lift`.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Reduced witness over ℚ for `lift`.
    #[arg(long)]
    pub pbar: Option<PathBuf>,
    /// Largest trace power; defaults to twice the dimension.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub m_max: Option<u32>,
    /// Rational point such as `t=1` or `a=1,b=0,c=0`; repeatable.
    #[arg(long)]
    pub point: Vec<String>,
    /// Number of seeded random points added to the explicit ones.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1000))]
    pub samples: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit wall-clock time so reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Input { message: String, line: Option<usize>, column: Option<usize> },
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError::Input { message: message.into(), line: None, column: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Resource(_) => 3,
            CliError::Internal(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Input { .. } => "input",
            CliError::Resource(_) => "resource_limit",
            CliError::Internal(_) => "internal",
        };
        let mut v = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Input { line: Some(l), column: Some(c), .. } = self {
            v["line"] = json!(l);
            v["column"] = json!(c);
        }
        v
    }
}

impl From<madlie::Error> for CliError {
    fn from(e: madlie::Error) -> Self {
        match e {
            madlie::Error::ResourceLimit(_) => CliError::Resource(e.to_string()),
            madlie::Error::Invariant(_) => CliError::Internal(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Reads inputs and folds their bytes into the job digest.
struct Loader {
    hasher: Sha256,
}

impl Loader {
    fn new(args: &Args) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(args.command.name().as_bytes());
        let options = json!({
            "m_max": args.m_max,
            "point": args.point,
            "samples": args.samples,
            "seed": args.seed,
        });
        hasher.update(options.to_string().as_bytes());
        Loader { hasher }
    }

    fn read(&mut self, role: &str, path: Option<&Path>) -> CliResult<String> {
        let path = path.ok_or_else(|| CliError::input(format!("--{role} is required for this command")))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {role} file {}: {e}", path.display())))?;
        self.hasher.update(role.as_bytes());
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn parse<T: serde::de::DeserializeOwned>(&mut self, role: &str, path: Option<&Path>) -> CliResult<T> {
        let text = self.read(role, path)?;
        // serde_json reports line 0 for errors raised after parsing, such as
        // a Cartan matrix of infinite type
        serde_json::from_str(&text).map_err(|e| CliError::Input {
            message: format!("{role}: {e}"),
            line: (e.line() > 0).then(|| e.line()),
            column: (e.line() > 0).then(|| e.column()),
        })
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

struct Context {
    ring: Ring,
    alg: Algebra,
}

fn context(args: &Args, loader: &mut Loader) -> CliResult<Context> {
    let spec: RingSpec = loader.parse("ring", args.ring.as_deref())?;
    let ring = Ring::new(spec)?;
    let cartan: CartanMatrix = loader.parse("algebra", args.algebra.as_deref())?;
    Ok(Context { ring, alg: algebra(&cartan)? })
}

fn element(ctx: &Context, loader: &mut Loader, role: &str, path: Option<&Path>) -> CliResult<LieElement> {
    let js: LieElementJson = loader.parse(role, path)?;
    Ok(LieElement::from_json(&ctx.alg, &ctx.ring, &js)?)
}

fn points(args: &Args, ring: &Ring) -> CliResult<Vec<Vec<Rational>>> {
    let mut out = args.point.iter().map(|s| ring.parse_point(s)).collect::<madlie::Result<Vec<_>>>()?;
    let mut rng = instances::rng(args.seed);
    for _ in 0..args.samples {
        let pt = instances::random_point(&mut rng, ring)
            .ok_or_else(|| CliError::input("cannot sample rational points of this ring"))?;
        out.push(pt);
    }
    Ok(out)
}

fn fmt_point(ring: &Ring, pt: &[Rational]) -> String {
    ring.var_names().iter().zip(pt).map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(",")
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn check_diag(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let d = diagnostics::is_k_diagonalizable(&p)?;
    let mut v = json!({
        "diagonalizable": d.is_diagonalizable,
        "eigenvalues": strings(&d.eigenvalues),
        "min_poly": strings(&d.min_poly),
        "char_poly": d.char_poly.iter().map(|c| ctx.ring.format(c)).collect::<Vec<_>>(),
    });
    if let Some(r) = d.failure_reason {
        v["failure_reason"] = json!(r);
    }
    let mut at = Vec::new();
    for pt in points(args, &ctx.ring)? {
        let px = diagnostics::evaluate_element(&p, &pt)?;
        let dx = diagnostics::is_k_diagonalizable(&px)?;
        at.push(json!({ "point": fmt_point(&ctx.ring, &pt), "diagonalizable": dx.is_diagonalizable }));
    }
    if !at.is_empty() {
        v["at_points"] = json!(at);
    }
    Ok(v)
}

fn regular(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let r = diagnostics::regularity(&p)?;
    let mut v = json!({ "f_reg": ctx.ring.format(&r.f_reg_value), "regular": r.is_regular });
    let mut at = Vec::new();
    for pt in points(args, &ctx.ring)? {
        let fx = ctx.ring.eval_point(&r.f_reg_value, &pt)?;
        let px = diagnostics::evaluate_element(&p, &pt)?;
        let direct = diagnostics::f_reg(&px)?;
        let direct = if direct.is_zero() { Rational::zero() } else { direct.constant_term() };
        at.push(json!({
            "point": fmt_point(&ctx.ring, &pt),
            "f_reg_evaluated": fx.to_string(),
            "f_reg_of_evaluation": direct.to_string(),
            "agree": fx == direct,
        }));
    }
    if !at.is_empty() {
        v["at_points"] = json!(at);
    }
    Ok(v)
}

fn traces(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let m_max = args.m_max.map_or(2 * ctx.alg.dim(), |m| m as usize);
    let t = diagnostics::trace_invariants(&p, m_max)?;
    let mut v = json!({
        "m_max": m_max,
        "traces": t.traces.iter().map(|c| ctx.ring.format(c)).collect::<Vec<_>>(),
        "constant": t.constant,
    });
    let pts = points(args, &ctx.ring)?;
    if let Some((x0, rest)) = pts.split_first() {
        let same = diagnostics::residue_conjugacy_check(&p, x0, rest, m_max)?;
        v["residue_check"] = json!({
            "base_point": fmt_point(&ctx.ring, x0),
            "points": rest.iter().map(|x| fmt_point(&ctx.ring, x)).collect::<Vec<_>>(),
            "char_polys_agree": same,
        });
    }
    Ok(v)
}

fn eigenmodule_report(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let d = diagnostics::is_k_diagonalizable(&p)?;
    if !d.is_diagonalizable {
        return Ok(json!({ "diagonalizable": false, "failure_reason": d.failure_reason }));
    }
    let mut modules = Vec::new();
    for em in conjugacy::eigenmodules(&p)? {
        let cert = conjugacy::freeness_certificate(&p, &em.eigenvalue)?;
        modules.push(json!({
            "eigenvalue": em.eigenvalue.to_string(),
            "generators": em.module.to_strings(),
            "min_gens": min_generators(&em.module)?.count,
            "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
        }));
    }
    Ok(json!({ "diagonalizable": true, "eigenmodules": modules }))
}

/// `group_act(witness, x) − target`, rendered with a zero flag.
fn verification(witness: &GroupElement, pairs: &[(&LieElement, &LieElement)]) -> CliResult<Value> {
    let mut items = Vec::new();
    let mut all = true;
    for (x, target) in pairs {
        let image = witness.act(x)?;
        let diff = image.sub(target)?;
        all &= diff.is_zero();
        items.push(json!({ "image": image.to_json(), "difference": diff.to_json(), "zero": diff.is_zero() }));
    }
    Ok(json!({ "checks": items, "all_zero": all }))
}

fn conjugate(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let p0 = element(&ctx, loader, "target", args.target.as_deref())?;
    let res = conjugacy::conjugate_regular(&p, &p0)?;
    let mut v = res.to_json();
    if let (Status::Solved, Some(w)) = (res.status, &res.witness) {
        v["verification"] = verification(w, &[(&p, &p0)])?;
    }
    Ok(v)
}

fn mad(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let js: MadCandidateJson = loader.parse("candidate", args.candidate.as_deref())?;
    let c = MadCandidate::from_json(&ctx.alg, &ctx.ring, &js)?;
    let report = diagnostics::mad_check(&c)?;
    let mut v = json!({ "check": serde_json::to_value(&report).expect("report serializes") });
    if ctx.ring.is_univariate_laurent() {
        let out = conjugacy::mad_conjugate(&c)?;
        let mut conj = out.result.to_json();
        conj["levi_steps"] = serde_json::to_value(&out.steps).expect("steps serialize");
        conj["spans_cartan"] = json!(out.spans_cartan);
        if let Some(w) = &out.result.witness {
            let images = c.elements.iter().map(|x| w.act(x)).collect::<madlie::Result<Vec<_>>>()?;
            conj["verification"] = json!({
                "images": images.iter().map(LieElement::to_json).collect::<Vec<_>>(),
                "all_in_cartan": images.iter().all(LieElement::in_cartan),
            });
        }
        v["conjugation"] = conj;
    }
    Ok(v)
}

fn lift(args: &Args, loader: &mut Loader) -> CliResult<Value> {
    let ctx = context(args, loader)?;
    let p = element(&ctx, loader, "element", args.element.as_deref())?;
    let q = Ring::rationals();
    let p0js: LieElementJson = loader.parse("target", args.target.as_deref())?;
    let p0 = LieElement::from_json(&ctx.alg, &q, &p0js)?;
    let pbar_js: GroupElementJson = loader.parse("pbar", args.pbar.as_deref())?;
    let pbar = GroupElement::from_json(&ctx.alg, &q, &pbar_js)?;
    let out = conjugacy::nilpotent_lift(&p, &p0, &pbar)?;
    let p0r = p0.lift_constant(&ctx.ring)?;
    Ok(json!({
        "status": Status::Solved,
        "rounds": out.rounds,
        "corrections": out.corrections,
        "witness": witness_json(&out.witness),
        "verification": verification(&out.witness, &[(&p, &p0r)])?,
    }))
}

/// Runs a job and returns the full report.
pub fn run(args: &Args) -> CliResult<Value> {
    let start = Instant::now();
    let mut loader = Loader::new(args);
    let result = match args.command {
        Command::CheckDiag => check_diag(args, &mut loader),
        Command::Regular => regular(args, &mut loader),
        Command::Traces => traces(args, &mut loader),
        Command::Eigenmodules => eigenmodule_report(args, &mut loader),
        Command::Conjugate => conjugate(args, &mut loader),
        Command::Mad => mad(args, &mut loader),
        Command::Lift => lift(args, &mut loader),
        Command::QuadricDemo => Ok(madlie::demo::quadric_demo()?),
    }?;
    let mut report = json!({
        "command": args.command.name(),
        "input_digest": loader.digest(),
        "seed": args.seed,
        "result": result,
    });
    if !args.no_timing {
        report["wall_clock_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Report text and exit code for a job; failures become an error document.
pub fn execute(args: &Args) -> (i32, String) {
    match run(args) {
        Ok(v) => (0, serde_json::to_string_pretty(&v).expect("report serializes") + "\n"),
        Err(e) => {
            let v = json!({ "command": args.command.name(), "error": e.to_json() });
            (e.exit_code(), serde_json::to_string_pretty(&v).expect("report serializes") + "\n")
        }
    }
}
