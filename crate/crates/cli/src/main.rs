use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperlab::axioms::{check_law_id, check_ring_axioms, AxiomResult, Law, RingAxiom};
use hyperlab::classify::{
    check_hypermodule, classify_single, classify_two_op, ClassificationReport,
};
use hyperlab::dorroh::{associativity_probe, ProbeReport};
use hyperlab::enumerate::{check_catalog, enumerate, EnumerationJob, GoldenCatalog, GoldenReport};
use hyperlab::model::format::parse;
use hyperlab::model::json::{parse_json, to_json};
use hyperlab::search::SearchConfig;
use hyperlab::theorems::{verify_id, VerificationReport, VerifyOptions};
use hyperlab::{bundled, Model};

#[derive(Parser)]
#[command(
    name = "hyperlab",
    version,
    about = "Finite hypercompositional algebra laboratory"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Accepted for randomized commands; every sweep here is deterministic
    /// and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct JsonFlag {
    /// Same as `--format json`.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check laws or ring axioms on a model file.
    Check {
        model: PathBuf,
        /// Comma-separated law or ring-axiom ids.
        #[arg(long, value_delimiter = ',', required = true)]
        laws: Vec<String>,
        /// Operation the laws apply to (default: the first one).
        #[arg(long)]
        op: Option<String>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Report every structure a model satisfies, with evidence.
    Classify {
        model: PathBuf,
        /// Classify one operation of the model as a single table.
        #[arg(long)]
        op: Option<String>,
        /// Hypermodules: read axiom (ii) in its weak form.
        #[arg(long)]
        weak: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Generate every model of a constraint set at one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, conflicts_with = "laws")]
        structure: Option<String>,
        /// Comma-separated law, structure or ring-axiom ids.
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        zero: Option<usize>,
        #[arg(long)]
        one: Option<usize>,
        /// Write the models here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Sweep a theorem exhaustively at one order.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        order: usize,
        /// Also look for a model of each dropped premise.
        #[arg(long)]
        drop_premises: bool,
        #[arg(long)]
        oracle: bool,
        /// Add commutativity to the polysymmetrical premise sets.
        #[arg(long)]
        commutative: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Probe the multiplication of the Dorroh extension of a hyperring.
    Dorroh {
        /// Base hyperring (default: the Krasner hyperfield).
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        range: u32,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Re-run the committed enumeration catalog (or another one) and compare counts.
    GoldenCheck {
        catalog: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
}

struct Ctx {
    json: bool,
    cfg: SearchConfig,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // clap's first paragraph, folded onto one line
            let text = e.render().to_string();
            let line = text
                .trim_start()
                .split("\n\n")
                .next()
                .unwrap_or("usage error")
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// `Ok(false)` for a negative result: a counterexample, a failed check.
fn run(cli: Cli) -> Result<bool> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        bail!("--workers must be at least 1");
    }
    let ctx = |flag: &JsonFlag| Ctx {
        json: flag.json || cli.format == Format::Json,
        cfg: SearchConfig::new(workers),
    };
    match &cli.command {
        Command::Check {
            model,
            laws,
            op,
            json,
        } => check(&ctx(json), model, laws, op.as_deref()),
        Command::Classify {
            model,
            op,
            weak,
            json,
        } => classify(&ctx(json), model, op.as_deref(), *weak),
        Command::Enumerate {
            order,
            structure,
            laws,
            up_to_iso,
            zero,
            one,
            out,
            oracle,
            json,
        } => {
            let mut constraints = laws.clone();
            constraints.extend(structure.iter().cloned());
            let job = EnumerationJob {
                order: *order,
                constraints,
                up_to_iso: *up_to_iso,
                zero: *zero,
                one: *one,
                oracle: *oracle,
            };
            run_enumerate(&ctx(json), &job, out.as_deref())
        }
        Command::Verify {
            theorem,
            order,
            drop_premises,
            oracle,
            commutative,
            json,
        } => {
            let opts = VerifyOptions {
                drop_premises: *drop_premises,
                oracle: *oracle,
                commutative: *commutative,
                workers,
            };
            let report = verify_id(theorem, *order, &opts)?;
            let c = ctx(json);
            if c.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_verification(&report);
            }
            Ok(report.conclusion_holds)
        }
        Command::Dorroh { base, range, json } => {
            let (name, model) = match base {
                Some(p) => (p.display().to_string(), read_model(p)?),
                None => (
                    "krasner".to_string(),
                    bundled::model("krasner").expect("bundled"),
                ),
            };
            let Model::TwoOp { model, .. } = model else {
                bail!("the base must be a two-operation model");
            };
            let c = ctx(json);
            let report = associativity_probe(&model, &name, *range, c.cfg)?;
            if c.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_probe(&report);
            }
            Ok(report.inclusion_ok && report.canonical_window_ok && report.negation_consistent)
        }
        Command::GoldenCheck { catalog, json } => {
            let c = ctx(json);
            let cat: GoldenCatalog = match catalog {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .with_context(|| format!("cannot read {}", p.display()))?;
                    serde_json::from_str(&text)
                        .with_context(|| format!("corrupt catalog {}", p.display()))?
                }
                None => {
                    serde_json::from_str(hyperlab::enumerate::CATALOG).context("bundled catalog")?
                }
            };
            let report = check_catalog(&cat, c.cfg)?;
            if c.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_golden(&report);
            }
            Ok(report.pass)
        }
    }
}

fn read_model(path: &Path) -> Result<Model> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "json") {
        Ok(parse_json(&text).with_context(|| format!("{}", path.display()))?)
    } else {
        Ok(parse(&text).with_context(|| format!("{}", path.display()))?)
    }
}

fn result_json(id: &str, r: &AxiomResult) -> Value {
    let mut v = json!({ "axiom": id, "holds": r.holds });
    if let Some(w) = &r.witness {
        v["witness"] = serde_json::to_value(w).expect("witness serializes");
    }
    v
}

fn check(ctx: &Ctx, path: &Path, laws: &[String], op: Option<&str>) -> Result<bool> {
    let model = read_model(path)?;
    let ops = model.ops();
    let (op_name, table) = match op {
        Some(name) => ops
            .iter()
            .find(|(n, _)| *n == name)
            .copied()
            .with_context(|| format!("no operation `{name}`"))?,
        None => ops[0],
    };
    let mut results = Vec::new();
    for id in laws {
        let r = if id.parse::<Law>().is_ok() {
            check_law_id(table, id)?
        } else if let Ok(a) = id.parse::<RingAxiom>() {
            let m = match &model {
                Model::TwoOp { model, .. } => *model,
                Model::Hypermodule { model, .. } => *model.scalars(),
                Model::Table { .. } => bail!("`{id}` needs a two-operation model"),
            };
            check_ring_axioms(&m, a)?
        } else {
            bail!("unknown law or axiom `{id}`");
        };
        results.push((id.clone(), r));
    }
    let all = results.iter().all(|(_, r)| r.holds);
    if ctx.json {
        let v = json!({
            "op": op_name,
            "results": results.iter().map(|(id, r)| result_json(id, r)).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        for (id, r) in &results {
            match &r.witness {
                None => println!("{id}: holds"),
                Some(w) => println!("{id}: fails {}", serde_json::to_string(w)?),
            }
        }
    }
    Ok(all)
}

fn classify(ctx: &Ctx, path: &Path, op: Option<&str>, weak: bool) -> Result<bool> {
    let model = read_model(path)?;
    let report: ClassificationReport = match (op, &model) {
        (Some(name), _) => {
            let t = model
                .op(name)
                .with_context(|| format!("no operation `{name}`"))?;
            classify_single(t)
        }
        (None, Model::Table { table, .. }) => classify_single(table),
        (None, Model::TwoOp { model, .. }) => classify_two_op(model),
        (None, Model::Hypermodule { model, .. }) => check_hypermodule(model, weak)?,
    };
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let labels: Vec<&str> = report.labels.iter().map(String::as_str).collect();
        println!(
            "labels: {}",
            if labels.is_empty() {
                "(none)".to_string()
            } else {
                labels.join(", ")
            }
        );
        for (k, v) in &report.constants {
            println!("{k}: {v}");
        }
        for (s, verdicts) in &report.evidence {
            if report.labels.contains(s) {
                continue;
            }
            if let Some(v) = verdicts.iter().find(|v| !v.holds) {
                let w = v
                    .witness
                    .as_ref()
                    .map(|w| serde_json::to_string(w).expect("serializes"))
                    .unwrap_or_default();
                println!("not {s}: {} fails {w}", v.axiom);
            }
        }
    }
    Ok(!report.labels.is_empty())
}

fn run_enumerate(ctx: &Ctx, job: &EnumerationJob, out: Option<&Path>) -> Result<bool> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    };
    let mut models = Vec::new();
    let mut emit = |m: &Model| models.push(m.clone());
    let summary = enumerate(job, ctx.cfg, Some(&mut emit))?;
    if ctx.json {
        let arr: Vec<Value> = models.iter().map(to_json).collect();
        writeln!(sink, "{}", serde_json::to_string_pretty(&arr)?)?;
    } else {
        for (i, m) in models.iter().enumerate() {
            if i > 0 {
                writeln!(sink)?;
            }
            write!(sink, "{}", m.to_text())?;
        }
    }
    sink.flush()?;
    eprintln!("{}", serde_json::to_string(&summary)?);
    Ok(true)
}

fn print_verification(r: &VerificationReport) {
    println!(
        "{} at order {} ({:?}): {}",
        r.theorem, r.order, r.mode, r.statement
    );
    println!(
        "space: {}  premise models: {}",
        r.space_size, r.premise_models
    );
    match &r.counterexample {
        None => println!("conclusion holds"),
        Some(c) => {
            println!(
                "counterexample: {}",
                serde_json::to_string(&c.witness).expect("serializes")
            );
            print!("{}", c.model);
        }
    }
    for i in &r.independence_witnesses {
        match (&i.model, i.none_at_order, &i.not_searched) {
            (Some(c), _, _) => println!(
                "without {}: {}",
                i.dropped,
                serde_json::to_string(&c.witness).expect("serializes")
            ),
            (None, Some(n), _) => println!("without {}: no model at order {n}", i.dropped),
            (None, None, Some(why)) => println!("without {}: not searched ({why})", i.dropped),
            _ => println!("without {}: no result", i.dropped),
        }
    }
    for (k, v) in &r.details {
        println!("{k}: {v}");
    }
}

fn print_probe(r: &ProbeReport) {
    println!(
        "base {} window {}: {} triples",
        r.base, r.window, r.triples_checked
    );
    println!(
        "associative on {}  weakly associative on {}",
        r.assoc_equal_count, r.weak_assoc_ok_count
    );
    println!(
        "inclusion_ok {}  canonical_window_ok {}  negation_consistent {}",
        r.inclusion_ok, r.canonical_window_ok, r.negation_consistent
    );
    if let Some(v) = &r.first_assoc_violation {
        let [p, q, s] = &v.triple;
        println!(
            "first violation: ({p}{q}){s} = {}  {p}({q}{s}) = {}",
            v.left, v.right
        );
    }
    if let Some(v) = &r.first_inclusion_violation {
        let [p, q, s] = &v.triple;
        println!(
            "inclusion fails at {p} {q} {s}: {} outside {}",
            v.left, v.right
        );
    }
}

fn print_golden(r: &GoldenReport) {
    for x in &r.results {
        let verdict = if x.pass { "pass" } else { "FAIL" };
        println!(
            "{verdict} {} [{}] expected {:?} got {:?}",
            x.name, x.mode, x.expected, x.actual
        );
    }
    println!(
        "{}",
        if r.pass {
            "catalog matches"
        } else {
            "catalog mismatch"
        }
    );
}
