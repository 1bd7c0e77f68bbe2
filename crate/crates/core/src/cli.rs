//! The `suralg` command line.
//!
//! Exit status is 0 on success, 1 when a verification fails (the report goes to
//! standard output as JSON) and 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::hierarchy::{build_stage, verify_claims, Algebra, Stage, DEFAULT_STAGE_LIMIT};
use crate::io::{
    from_document, load_document, render_document, stage_document, to_document, to_dot,
    write_atomic, eval_expr, parse_expr, IoError, Loaded, Value,
};
use crate::sigma::{
    check_axioms, check_morphism, search_morphisms, AxiomReport, Morphism, MorphismKind,
    SearchLimits, Structure, Verdict,
};
use crate::surreal::no_stage;
use crate::universal::{canonical_into, cut_algebra, pushout_plus, UniversalError};

#[derive(Debug, Parser)]
#[command(name = "suralg", version, about = "Finite surreal algebras, checked exhaustively")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a finite stage and optionally export it.
    Stage {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the axioms of a structure document, or the stage claims with `--claims`.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        claims: bool,
        #[arg(long, value_enum, default_value = "psur")]
        kind: VerifyKind,
    },
    /// Search for morphisms between two documents.
    Morphism(MorphismArgs),
    /// Write the cut algebra of a document.
    CutAlgebra {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the one-step pushout of a document.
    Pushout {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tc: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a surreal expression.
    Eval {
        expr: String,
        #[arg(long)]
        dyadic: bool,
    },
}

#[derive(Debug, Args)]
struct MorphismArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long, value_enum)]
    kind: SearchKind,
    #[arg(long, conflicts_with = "canonical")]
    enumerate: bool,
    #[arg(long)]
    canonical: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Sa,
    St,
    No,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyKind {
    Sur,
    Psur,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SearchKind {
    Psur,
    Fpsur,
}

impl From<SearchKind> for MorphismKind {
    fn from(k: SearchKind) -> Self {
        match k {
            SearchKind::Psur => MorphismKind::Psur,
            SearchKind::Fpsur => MorphismKind::Fpsur,
        }
    }
}

/// Outcome of a subcommand before it becomes an exit status.
enum Failure {
    /// A check failed; the report is printed.
    Verification(Json),
    /// Bad input or an environment problem.
    Usage(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::InvariantViolation { invariant, witness } => Failure::Verification(json!({
                "passed": false,
                "error": "invariant violation",
                "invariant": invariant,
                "witness": witness,
            })),
            IoError::Sigma(e) => Failure::Verification(json!({
                "passed": false,
                "error": e.to_string(),
            })),
            IoError::Hierarchy(e) => Failure::Verification(json!({
                "passed": false,
                "error": e.to_string(),
            })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<UniversalError> for Failure {
    fn from(e: UniversalError) -> Self {
        Failure::Verification(json!({ "passed": false, "error": e.to_string() }))
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<Json, Failure>;

/// Runs one invocation, writing to `out` and `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    if let Command::Eval { expr, dyadic } = &cli.command {
        return eval(expr, *dyadic, out, err);
    }
    let result = match cli.command {
        Command::Stage {
            algebra,
            alpha,
            json,
            dot,
        } => stage(algebra, alpha, json.as_deref(), dot.as_deref()),
        Command::Verify { input, claims, kind } => verify(&input, claims, kind),
        Command::Morphism(args) => morphism(&args),
        Command::CutAlgebra { input, out } => cut_algebra_cmd(&input, &out),
        Command::Pushout { input, tc, out } => pushout_cmd(&input, tc, &out),
        Command::Eval { .. } => unreachable!("handled above"),
    };
    match result {
        Ok(report) => {
            print_json(out, &report);
            if report.get("passed") == Some(&Json::Bool(false)) {
                1
            } else {
                0
            }
        }
        Err(Failure::Verification(report)) => {
            print_json(out, &report);
            1
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "suralg: {message}");
            2
        }
    }
}

fn print_json(out: &mut dyn Write, v: &Json) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    Ok(from_document(&load_document(path)?)?)
}

fn stage(algebra: AlgebraArg, alpha: usize, json_out: Option<&Path>, dot_out: Option<&Path>) -> Outcome {
    let (structure, doc) = match algebra {
        AlgebraArg::No => {
            let s = no_stage(alpha).map_err(usage)?;
            let mut doc = to_document(&s);
            doc.algebra = Some("no".into());
            (s, doc)
        }
        AlgebraArg::Sa | AlgebraArg::St => {
            let a = if matches!(algebra, AlgebraArg::Sa) { Algebra::Sa } else { Algebra::St };
            let st = build_stage(a, alpha, DEFAULT_STAGE_LIMIT).map_err(usage)?;
            let doc = stage_document(&st);
            (st.structure().clone(), doc)
        }
    };
    if let Some(path) = json_out {
        write_atomic(path, &render_document(&doc))?;
    }
    if let Some(path) = dot_out {
        write_atomic(path, &to_dot(&structure))?;
    }
    Ok(json!({
        "algebra": doc.algebra,
        "alpha": alpha,
        "elements": structure.len(),
        "lt": doc.lt.len(),
    }))
}

/// The verdicts `kind` asks for.
fn relevant(report: &AxiomReport, kind: VerifyKind) -> Vec<&Verdict> {
    report
        .verdicts
        .iter()
        .filter(|v| matches!(kind, VerifyKind::Sur) || v.name.starts_with("pS"))
        .collect()
}

fn verify(input: &Path, claims: bool, kind: VerifyKind) -> Outcome {
    let loaded = load(input)?;
    let report = check_axioms(&loaded.structure);
    let axioms_ok = match kind {
        VerifyKind::Psur => report.is_psur(),
        VerifyKind::Sur => report.is_sur(),
    };
    let verdicts = relevant(&report, kind);
    if !claims {
        return Ok(json!({ "passed": axioms_ok, "verdicts": verdicts }));
    }
    let stage = loaded
        .stage
        .as_ref()
        .ok_or_else(|| usage("--claims needs a stage document with algebra and rank"))?;
    let claims = verify_claims(stage).map_err(|e| Failure::Verification(json!({
        "passed": false,
        "error": e.to_string(),
    })))?;
    let passed = axioms_ok && claims.failures().next().is_none();
    Ok(json!({
        "passed": passed,
        "verdicts": verdicts,
        "claims": claims.verdicts,
    }))
}

fn morphism_json(h: &Morphism) -> Json {
    let mut pairs = h.label_pairs();
    pairs.sort();
    json!({ "kind": h.kind(), "pairs": pairs })
}

fn morphism(args: &MorphismArgs) -> Outcome {
    let from = load(&args.from)?;
    let to = load(&args.to)?;
    let kind = MorphismKind::from(args.kind);
    if args.canonical {
        let stage: &Stage = from
            .stage
            .as_ref()
            .ok_or_else(|| usage("--canonical needs a stage document as --from"))?;
        let h = canonical_into(stage, &to.structure)?.with_kind(kind);
        let report = check_morphism(&h);
        return Ok(json!({
            "passed": report.passed(),
            "morphism": morphism_json(&h),
            "verdicts": report.verdicts,
        }));
    }
    let limits = SearchLimits {
        max_results: if args.enumerate { None } else { Some(1) },
        ..SearchLimits::default()
    };
    let found = search_morphisms(&from.structure, &to.structure, kind, &[], limits).map_err(usage)?;
    let morphisms: Vec<Json> = found.morphisms.iter().map(morphism_json).collect();
    if args.enumerate {
        return Ok(json!({ "count": morphisms.len(), "nodes": found.nodes, "morphisms": morphisms }));
    }
    Ok(json!({ "passed": !morphisms.is_empty(), "morphism": morphisms.first() }))
}

fn cut_algebra_cmd(input: &Path, out: &Path) -> Outcome {
    let loaded = load(input)?;
    let ca = cut_algebra(&loaded.structure)?;
    write_atomic(out, &render_document(&to_document(&ca.structure)))?;
    let report = check_morphism(&ca.t_map);
    Ok(json!({
        "passed": report.passed(),
        "elements": ca.structure.len(),
        "t_morphism": report.verdicts,
    }))
}

fn pushout_cmd(input: &Path, tc: bool, out: &Path) -> Outcome {
    let loaded = load(input)?;
    let p = pushout_plus(&loaded.structure, tc)?;
    let s: &Arc<Structure> = &p.structure;
    write_atomic(out, &render_document(&to_document(s)))?;
    Ok(json!({
        "elements": s.len(),
        "new": p.new_elements().count(),
        "transitive": tc,
    }))
}

fn eval(text: &str, dyadic_only: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let value = parse_expr(text)
        .map_err(Into::into)
        .and_then(|e| eval_expr(&e));
    match value {
        Ok(Value::Number(x)) => {
            let _ = writeln!(out, "{}", x.to_big_dyadic());
            if !dyadic_only {
                let _ = writeln!(out, "{x}");
            }
            0
        }
        Ok(Value::Truth(b)) => {
            let _ = writeln!(out, "{b}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "suralg: {e}");
            2
        }
    }
}
