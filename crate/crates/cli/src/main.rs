//! Command-line interface: classify, solve, check, reduce, verify, catalog,
//! table and generate.
//!
//! Exit codes: 0 for yes / success, 1 for no / failed verification, 2 for
//! errors.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relmod::classifier::{classify, landscape, Setting};
use relmod::generate::{random_formula_with_pattern, random_structure, vocabulary_for};
use relmod::logic::{formula_catalog, model_check, parse_formula};
use relmod::modification::{apply, norm, validate};
use relmod::reductions::{
    verify_exhaustive, HarnessLimits, HarnessReport, ReduceOptions, Reduction, SourceInstance,
};
use relmod::solvers::{solve_with, Limits, SolveRequest, SolverName, DEFAULT_NODE_BUDGET};
use relmod::{Formula, Modulator, OperationKind, Pattern, Structure, StructureType};

#[derive(Parser)]
#[command(
    name = "relmod",
    version,
    about = "Relation modification problems for first-order sentences"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    /// Node budget for exponential searches.
    #[arg(long, global = true, env = "RELMOD_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: u64,

    /// Wall-clock budget in milliseconds (unlimited when unset).
    #[arg(long, global = true, env = "RELMOD_TIME_BUDGET_MS",
          value_parser = clap::value_parser!(u64).range(1..))]
    time_budget_ms: Option<u64>,

    /// Seed for the random generators.
    #[arg(long, global = true, env = "RELMOD_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity verdict for a structure type and quantifier pattern.
    Classify(ClassifyArgs),
    /// Decide a modification instance.
    Solve(SolveArgs),
    /// Re-validate a witness modulator.
    Check(CheckArgs),
    /// Build a reduction target from a source instance.
    Reduce(ReduceArgs),
    /// Exhaustively verify a reduction on all small source instances.
    Verify(VerifyArgs),
    /// List the named sentences.
    Catalog(CatalogArgs),
    /// Print the complexity landscape.
    Table(TableArgs),
    /// Random structure, and optionally a random sentence, from the seed.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct FormulaInput {
    /// File containing a prenex sentence.
    #[arg(long, group = "formula_source")]
    formula: Option<PathBuf>,
    /// A prenex sentence given inline.
    #[arg(long, group = "formula_source")]
    formula_text: Option<String>,
    /// Name of a catalogued sentence.
    #[arg(long, group = "formula_source")]
    catalog: Option<String>,
}

impl FormulaInput {
    fn given(&self) -> bool {
        self.formula.is_some() || self.formula_text.is_some() || self.catalog.is_some()
    }

    fn load(&self) -> Result<Formula> {
        if let Some(path) = &self.formula {
            return Ok(parse_formula(read(path)?.trim())?);
        }
        if let Some(text) = &self.formula_text {
            return Ok(parse_formula(text)?);
        }
        if let Some(name) = &self.catalog {
            return relmod::logic::catalog::lookup(name)
                .map(|e| e.formula.clone())
                .ok_or_else(|| anyhow!("no catalogued sentence named `{name}`"));
        }
        bail!("one of --formula, --formula-text or --catalog is required")
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "type")]
    structure_type: StructureType,
    /// classical or param(eterized).
    #[arg(long, default_value = "classical")]
    setting: Setting,
    /// Operation; the landscape does not depend on it.
    #[arg(long, default_value = "edit")]
    op: OperationKind,
    /// Quantifier pattern over {a, e}.
    #[arg(long)]
    pattern: Option<String>,
    #[command(flatten)]
    input: FormulaInput,
}

#[derive(Args)]
struct InstanceArgs {
    /// Structure JSON file.
    #[arg(long)]
    structure: PathBuf,
    #[command(flatten)]
    input: FormulaInput,
    /// Modification budget.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    kind: OperationKind,
    #[arg(long = "type")]
    structure_type: StructureType,
}

impl InstanceArgs {
    fn request(&self) -> Result<SolveRequest> {
        let structure = Structure::from_json(&read_json(&self.structure)?)?;
        Ok(SolveRequest::new(
            structure,
            self.structure_type,
            self.input.load()?,
            self.k,
            self.kind,
        ))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Solver to use instead of automatic dispatch.
    #[arg(long, default_value = "auto")]
    solver: SolverName,
    /// Also write the witness modulator to this file on a yes answer.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Modulator JSON file.
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Args)]
struct GadgetArgs {
    /// Directed adaptation of a Set-Cover gadget.
    #[arg(long)]
    directed: bool,
    /// Radius bound of the eae gadget.
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Operation of the Majority aa gadget.
    #[arg(long)]
    kind: Option<OperationKind>,
}

impl GadgetArgs {
    fn options(&self) -> ReduceOptions {
        ReduceOptions {
            directed: self.directed,
            radius: self.radius,
            kind: self.kind,
        }
    }
}

#[derive(Args)]
struct ReduceArgs {
    /// Reduction name, e.g. ae_undir or majority_monadic_del.
    name: String,
    /// Source instance JSON file.
    #[arg(long)]
    source: PathBuf,
    /// Output directory for structure.json, formula.fo and meta.json.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    gadget: GadgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reduction name.
    name: String,
    #[arg(long, default_value_t = 3)]
    max_sets: usize,
    #[arg(long, default_value_t = 2)]
    max_universe: usize,
    #[arg(long, default_value_t = 1)]
    max_k: usize,
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    #[arg(long, default_value_t = 6)]
    max_bits: usize,
    /// Include every instance in the report, not only failures.
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    gadget: GadgetArgs,
}

#[derive(Args)]
struct CatalogArgs {
    /// Show a single entry.
    name: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    /// Longest pattern to include.
    #[arg(long, default_value_t = 3)]
    max_len: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "type")]
    structure_type: StructureType,
    /// Universe size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Probability of each candidate tuple.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Also emit a random sentence with this quantifier pattern.
    #[arg(long)]
    pattern: Option<Pattern>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Prints to stdout; a closed pipe is not an error.
fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Text => text(),
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let limits = Limits {
        node_budget: cli.node_budget,
        time_budget: cli.time_budget_ms.map(Duration::from_millis),
    };
    match &cli.command {
        Command::Classify(a) => cmd_classify(cli.format, a),
        Command::Solve(a) => cmd_solve(cli.format, a, limits),
        Command::Check(a) => cmd_check(cli.format, a),
        Command::Reduce(a) => cmd_reduce(cli.format, a),
        Command::Verify(a) => cmd_verify(cli.format, a, limits),
        Command::Catalog(a) => cmd_catalog(cli.format, a),
        Command::Table(a) => cmd_table(cli.format, a),
        Command::Generate(a) => cmd_generate(cli.format, a, cli.seed),
    }
}

fn cmd_classify(format: Format, a: &ClassifyArgs) -> Result<u8> {
    let pattern = match (&a.pattern, a.input.given()) {
        (Some(p), false) => p.parse::<Pattern>()?,
        (None, true) => a.input.load()?.pattern(),
        _ => bail!("give exactly one of --pattern or a formula"),
    };
    let verdict = classify(a.structure_type, a.setting, &pattern);
    let mut value = verdict.to_json();
    value["pattern"] = json!(pattern.as_str());
    value["structure_type"] = json!(a.structure_type.name());
    value["op"] = json!(a.op.name());
    emit(format, &value, || {
        format!(
            "{} {} {}: {verdict}",
            a.structure_type,
            pattern.as_str(),
            a.op
        )
    });
    Ok(0)
}

fn cmd_solve(format: Format, a: &SolveArgs, limits: Limits) -> Result<u8> {
    let req = a.instance.request()?;
    let res = solve_with(a.solver, &req, limits)?;
    let witness_norm = res.witness.as_ref().map(|m| norm(m, req.structure_type));
    if let (Some(path), Some(w)) = (&a.witness_out, &res.witness) {
        fs::write(path, serde_json::to_string_pretty(&w.to_json())? + "\n")?;
    }
    let value = json!({
        "decision": res.decision,
        "solver_used": res.solver_used,
        "nodes_explored": res.nodes_explored,
        "witness": res.witness.as_ref().map(Modulator::to_json),
        "norm": witness_norm,
        "pattern": req.pattern().as_str(),
        "structure_type": req.structure_type.name(),
        "kind": req.kind.name(),
        "budget": req.budget,
    });
    emit(format, &value, || {
        let mut s = format!(
            "{} (solver {}, {} nodes)",
            if res.decision { "yes" } else { "no" },
            res.solver_used,
            res.nodes_explored
        );
        if let Some(w) = &res.witness {
            for (sym, tuples) in &w.relations {
                for t in tuples {
                    s.push_str(&format!("\n  toggle {sym}{t:?}"));
                }
            }
        }
        s
    });
    Ok(if res.decision { 0 } else { 1 })
}

/// Independent of the solvers: validate, measure, apply, model check.
fn cmd_check(format: Format, a: &CheckArgs) -> Result<u8> {
    let req = a.instance.request()?;
    req.compile()?;
    let witness: Modulator = serde_json::from_value(read_json(&a.witness)?)?;
    let valid = validate(&req.structure, &witness, req.kind, req.structure_type);
    let witness_norm = norm(&witness, req.structure_type);
    let models = valid
        && model_check(
            &apply(&req.structure, &witness)?,
            &req.formula,
            &HashMap::new(),
        )?;
    let accepted = valid && witness_norm <= req.budget && models;
    let value = json!({
        "accepted": accepted,
        "valid": valid,
        "norm": witness_norm,
        "budget": req.budget,
        "models": models,
    });
    emit(format, &value, || {
        format!(
            "{} (valid {valid}, norm {witness_norm} of {}, models {models})",
            if accepted { "accepted" } else { "rejected" },
            req.budget
        )
    });
    Ok(if accepted { 0 } else { 1 })
}

fn cmd_reduce(format: Format, a: &ReduceArgs) -> Result<u8> {
    let reduction: Reduction = a.name.parse()?;
    let source = SourceInstance::from_json(reduction.source_problem(), &read_json(&a.source)?)?;
    let out = reduction.build(&source, &a.gadget.options())?;
    out.write_to(&a.out)?;
    let s = &out.target.structure;
    let pairs = (0..s.universe() as u32)
        .flat_map(|u| (u..s.universe() as u32).map(move |v| (u, v)))
        .filter(|&(u, v)| s.vocabulary().is_graph() && (s.holds(0, &[u, v]) || s.holds(0, &[v, u])))
        .count();
    let mut value = out.meta_json();
    value.as_object_mut().expect("object").remove("labels");
    value["edges"] = json!(pairs);
    value["out"] = json!(a.out.display().to_string());
    emit(format, &value, || {
        format!(
            "{}: {} vertices, {} adjacent pairs, budget {}, kinds {}, written to {}",
            reduction,
            s.universe(),
            pairs,
            out.target.budget,
            out.kinds
                .iter()
                .map(|k| k.name())
                .collect::<Vec<_>>()
                .join(","),
            a.out.display()
        )
    });
    Ok(0)
}

fn cmd_verify(format: Format, a: &VerifyArgs, limits: Limits) -> Result<u8> {
    let reduction: Reduction = a.name.parse()?;
    let sizes = HarnessLimits {
        max_sets: a.max_sets,
        max_universe: a.max_universe,
        max_k: a.max_k,
        max_vertices: a.max_vertices,
        max_bits: a.max_bits,
    };
    let report = verify_exhaustive(reduction, &a.gadget.options(), &sizes, limits)?;
    let value = verify_json(&report, a.all);
    emit(format, &value, || verify_text(&report, a.all));
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn verify_json(report: &HarnessReport, all: bool) -> Value {
    let rows: Vec<Value> = report
        .reports
        .iter()
        .filter(|r| all || !r.passed())
        .map(|r| serde_json::to_value(r).expect("serializable"))
        .collect();
    json!({
        "reduction": report.reduction,
        "directed": report.directed,
        "flagged": report.flagged,
        "instances": report.instances,
        "passed": report.passed,
        "failed": report.failed,
        "inconclusive": report.inconclusive,
        "all_passed": report.all_passed(),
        (if all { "reports" } else { "failures" }): rows,
    })
}

fn verify_text(report: &HarnessReport, all: bool) -> String {
    let mark = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    };
    let mut lines = Vec::new();
    for r in report.reports.iter().filter(|r| all || !r.passed()) {
        let cells: Vec<String> = r
            .kinds
            .iter()
            .map(|k| {
                let status = match k.equivalent {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "inconclusive",
                };
                format!(
                    "{}: {} -> {} {status}",
                    k.kind,
                    mark(k.source),
                    mark(k.target)
                )
            })
            .collect();
        lines.push(format!("{}  {}", r.source, cells.join("  ")));
    }
    lines.push(format!(
        "{}{}: {} instances, {} passed, {} failed, {} inconclusive",
        report.reduction,
        if report.directed { " (directed)" } else { "" },
        report.instances,
        report.passed,
        report.failed,
        report.inconclusive
    ));
    lines.join("\n")
}

fn cmd_catalog(format: Format, a: &CatalogArgs) -> Result<u8> {
    let entries: Vec<_> = formula_catalog()
        .iter()
        .filter(|e| a.name.as_deref().is_none_or(|n| n == e.name))
        .collect();
    if entries.is_empty() {
        bail!(
            "no catalogued sentence named `{}`",
            a.name.as_deref().unwrap_or_default()
        );
    }
    let value = json!(entries
        .iter()
        .map(|e| json!({
            "name": e.name,
            "formula": e.formula.to_string(),
            "pattern": e.formula.pattern().as_str(),
            "origin": e.origin,
        }))
        .collect::<Vec<_>>());
    emit(format, &value, || {
        entries
            .iter()
            .map(|e| {
                format!(
                    "{:<22} {:<7} {}",
                    e.name,
                    e.formula.pattern().as_str(),
                    e.formula
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(0)
}

fn cmd_table(format: Format, a: &TableArgs) -> Result<u8> {
    let rows = landscape(a.max_len);
    let value = serde_json::to_value(&rows)?;
    emit(format, &value, || {
        let mut lines = vec![format!(
            "{:<8} {:<6} {:<18} {}",
            "pattern", "type", "classical", "parameterized"
        )];
        for r in &rows {
            let p = if r.pattern.is_empty() {
                "-"
            } else {
                r.pattern.as_str()
            };
            lines.push(format!(
                "{:<8} {:<6} {:<18} {}",
                p,
                r.structure_type.name(),
                r.classical.name(),
                r.parameterized.name()
            ));
        }
        lines.join("\n")
    });
    Ok(0)
}

fn cmd_generate(format: Format, a: &GenerateArgs, seed: u64) -> Result<u8> {
    if !(0.0..=1.0).contains(&a.density) {
        bail!("density must lie in [0, 1]");
    }
    if a.pattern.as_ref().is_some_and(|p| p.len() > 6) {
        bail!("patterns longer than 6 are not supported by the generator");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocab = vocabulary_for(a.structure_type);
    let s = random_structure(&mut rng, &vocab, a.structure_type, a.n as usize, a.density);
    let f = a
        .pattern
        .as_ref()
        .map(|p| random_formula_with_pattern(&mut rng, &vocab, p, 3));
    let mut value = json!({ "seed": seed, "structure": s.to_json() });
    if let Some(f) = &f {
        value["formula"] = json!(f.to_string());
    }
    emit(format, &value, || {
        let mut text = s.to_json().to_string();
        if let Some(f) = &f {
            text.push('\n');
            text.push_str(&f.to_string());
        }
        text
    });
    Ok(0)
}
