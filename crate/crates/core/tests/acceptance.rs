//! The acceptance run: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

use hyperlab::classify::{classify_single, classify_two_op};
use hyperlab::dorroh::associativity_probe;
use hyperlab::enumerate::{
    check_catalog, default_jobs, enumerate, EnumerationJob, GoldenCatalog, GoldenEntry, CATALOG,
};
use hyperlab::model::json::to_json;
use hyperlab::search::SearchConfig;
use hyperlab::theorems::{verify, Theorem, VerificationReport, VerifyOptions};
use hyperlab::{bundled, Model};

const COMMITTED_PROBE: &str = include_str!("../data/dorroh_krasner_n2.json");

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Err(format!($($why)+));
        }
    };
}

fn opts(workers: usize) -> VerifyOptions {
    VerifyOptions {
        workers,
        ..VerifyOptions::default()
    }
}

fn run(t: Theorem, n: usize, o: &VerifyOptions) -> Result<VerificationReport, String> {
    verify(t, n, o).map_err(|e| format!("{t} order {n}: {e}"))
}

fn holds(r: &VerificationReport) -> Verdict {
    match &r.counterexample {
        None => Ok(String::new()),
        Some(c) => Err(format!(
            "{} order {}: counterexample {}",
            r.theorem,
            r.order,
            serde_json::to_string(&c.witness).unwrap()
        )),
    }
}

fn catalog() -> GoldenCatalog {
    serde_json::from_str(CATALOG).expect("committed catalog parses")
}

fn entry(name: &str) -> Result<GoldenEntry, String> {
    catalog()
        .entries
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| format!("catalog has no entry {name}"))
}

fn c1() -> Verdict {
    let start = Instant::now();
    let r = run(
        Theorem::T3,
        2,
        &VerifyOptions {
            oracle: true,
            drop_premises: true,
            ..opts(1)
        },
    )?;
    let took = start.elapsed();
    ensure!(r.space_size == 256, "space {}", r.space_size);
    holds(&r)?;
    ensure!(
        !r.independence_witnesses.is_empty(),
        "no independence entries"
    );
    for i in &r.independence_witnesses {
        ensure!(i.model.is_some(), "no model without {}", i.dropped);
    }
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!(
        "256 tables, {} premise models, {} independence models, {took:.2?}",
        r.premise_models,
        r.independence_witnesses.len()
    ))
}

fn c2() -> Verdict {
    let start = Instant::now();
    let r = run(Theorem::T3, 3, &opts(8))?;
    let took = start.elapsed();
    holds(&r)?;
    let e = entry("n3:hypergroup:iso")?;
    ensure!(
        e.certified_by == "oracle",
        "catalog entry not oracle-certified"
    );
    ensure!(
        r.premise_models == e.raw_count,
        "premise models {} vs oracle count {}",
        r.premise_models,
        e.raw_count
    );
    ensure!(took < Duration::from_secs(600), "took {took:?}");
    Ok(format!(
        "{} premise models = oracle count, {took:.2?}",
        r.premise_models
    ))
}

fn c3() -> Verdict {
    let mut counts = Vec::new();
    for t in [Theorem::T7, Theorem::T9, Theorem::T11] {
        for n in 2..=3 {
            let r = run(t, n, &opts(8))?;
            holds(&r)?;
            if t == Theorem::T11 {
                // both directions: every reproductive table has non-empty
                // divisions and conversely, so the branch counts agree
                let b = &r.details["branch_models"];
                ensure!(
                    b["reproductive"] == b["divisions-nonempty"],
                    "T11 order {n}: branches {b}"
                );
            }
            counts.push(format!("{t}/{n}:{}", r.premise_models));
        }
    }
    Ok(counts.join(" "))
}

fn c4() -> Verdict {
    let start = Instant::now();
    let r = run(Theorem::T2, 3, &opts(8))?;
    let took = start.elapsed();
    ensure!(r.space_size == 3u128.pow(9), "space {}", r.space_size);
    holds(&r)?;
    ensure!(took < Duration::from_secs(5), "took {took:?}");
    Ok(format!(
        "3^9 tables, {} associative, {took:.2?}",
        r.premise_models
    ))
}

fn c5() -> Verdict {
    let mut out = Vec::new();
    for n in 1..=3 {
        for t in [Theorem::T13, Theorem::T24, Theorem::QmpSuite] {
            let r = run(t, n, &opts(8))?;
            holds(&r)?;
            if t == Theorem::QmpSuite {
                let g = &r.details["group_tables"];
                ensure!(
                    g["total"] == g["among_models"],
                    "order {n}: group tables {g}"
                );
                out.push(format!(
                    "order {n}: {} models, {} groups",
                    r.premise_models, g["total"]
                ));
            }
        }
    }
    Ok(out.join("; "))
}

fn c6() -> Verdict {
    let mut out = Vec::new();
    for t in [Theorem::T25, Theorem::T26, Theorem::T27] {
        for n in 1..=3 {
            let r = run(t, n, &opts(8))?;
            holds(&r)?;
            ensure!(
                r.details.contains_key("premises"),
                "{t} order {n}: premise set not reported"
            );
            if t == Theorem::T27 {
                let z = &r.details["with_zero_scalar"];
                ensure!(
                    z["conclusion_holds"] == true,
                    "T27 order {n} with zero: {z}"
                );
            }
        }
        out.push(t.to_string());
    }
    Ok(format!("{} hold at orders 1-3", out.join(", ")))
}

fn c7() -> Verdict {
    let cfg = SearchConfig::new(8);
    let mut out = Vec::new();
    for n in 2..=3usize {
        let r = run(Theorem::T28, n, &opts(8))?;
        holds(&r)?;
        ensure!(
            r.details["model_sets_identical"] == true,
            "order {n}: model sets differ"
        );
        let e = entry(&format!("n{n}:hyperfield:zero=0:one=1:iso"))?;
        let oracle =
            enumerate(&e.job.clone().oracle(true), cfg, None).map_err(|x| x.to_string())?;
        ensure!(
            (oracle.raw_count, oracle.canonical_count) == (e.raw_count, e.canonical_count),
            "order {n}: oracle {:?} vs catalog {:?}",
            (oracle.raw_count, oracle.canonical_count),
            (e.raw_count, e.canonical_count)
        );
        // T28 lets zero and one range over all ordered pairs of distinct points
        let expected = (n * (n - 1)) as u64 * e.raw_count;
        ensure!(
            r.details["def14_models"] == expected,
            "order {n}: {} models with reversibility assumed, expected {expected}",
            r.details["def14_models"]
        );
        let sub = GoldenCatalog {
            entries: catalog()
                .entries
                .into_iter()
                .filter(|x| x.job.order == n && x.name.contains("hyperfield"))
                .collect(),
        };
        let report = check_catalog(&sub, cfg).map_err(|x| x.to_string())?;
        ensure!(report.pass, "catalog mismatch at order {n}");
        out.push(format!("order {n}: {expected} models"));
    }
    Ok(out.join("; "))
}

fn labels(model: &str, op: Option<&str>) -> Vec<String> {
    let m = bundled::model(model).expect("bundled model");
    let r = match (&m, op) {
        (_, Some(op)) => classify_single(m.op(op).expect("operation")),
        (Model::Table { table, .. }, None) => classify_single(table),
        (Model::TwoOp { model, .. }, None) => classify_two_op(model),
        _ => unreachable!(),
    };
    r.labels.into_iter().collect()
}

fn c8() -> Verdict {
    let k = labels("krasner", None);
    ensure!(
        k == [
            "hyperfield",
            "hyperfield-def15",
            "krasner-hyperring",
            "unitary-hyperring"
        ],
        "krasner: {k:?}"
    );
    let add = labels("krasner", Some("add"));
    ensure!(
        add.iter().any(|l| l == "canonical-hypergroup"),
        "krasner add: {add:?}"
    );
    let d = labels("degenerate2", None);
    ensure!(d == ["partial-hypergroupoid"], "degenerate: {d:?}");
    let t = labels("total2", None);
    for want in [
        "hypergroupoid",
        "semihypergroup",
        "quasihypergroup",
        "hypergroup",
        "hv-group",
        "la-hypergroup",
        "ra-hypergroup",
    ] {
        ensure!(t.iter().any(|l| l == want), "total lacks {want}: {t:?}");
    }
    for unwanted in ["group", "canonical-hypergroup"] {
        ensure!(!t.iter().any(|l| l == unwanted), "total has {unwanted}");
    }
    Ok(format!("krasner {k:?}, total {} labels", t.len()))
}

fn c9() -> Verdict {
    let start = Instant::now();
    let r = associativity_probe(&bundled::krasner(), "krasner", 2, SearchConfig::new(8))
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure!(r.canonical_window_ok, "window addition not canonical");
    ensure!(r.inclusion_ok, "inclusion fails");
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    let committed: Value = serde_json::from_str(COMMITTED_PROBE).unwrap();
    ensure!(
        serde_json::to_value(&r).unwrap() == committed,
        "report differs from the committed one"
    );
    Ok(format!(
        "{} triples, {} associative, {took:.2?}",
        r.triples_checked, r.assoc_equal_count
    ))
}

fn c10() -> Verdict {
    for (name, prop) in support::PROPERTIES {
        prop(&mut support::runner()).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} properties x {} cases",
        support::PROPERTIES.len(),
        support::CASES
    ))
}

fn enumeration_json(job: &EnumerationJob, workers: usize) -> Result<String, String> {
    let mut models = Vec::new();
    let mut emit = |m: &Model| models.push(to_json(m));
    let s =
        enumerate(job, SearchConfig::new(workers), Some(&mut emit)).map_err(|e| e.to_string())?;
    let mut s = serde_json::to_value(s).unwrap();
    s.as_object_mut().unwrap().remove("wall_time");
    Ok(serde_json::to_string(&(s, models)).unwrap())
}

fn c11() -> Verdict {
    let mut sweeps = 0;
    for t in Theorem::ALL {
        for n in 1..=3 {
            let o = |w| VerifyOptions {
                drop_premises: true,
                ..opts(w)
            };
            let a = run(t, n, &o(1))?.stable_json();
            let b = run(t, n, &o(8))?.stable_json();
            ensure!(a == b, "{t} order {n} differs between 1 and 8 workers");
            sweeps += 1;
        }
    }
    let jobs = default_jobs();
    let jobs: Vec<_> = jobs.iter().filter(|(_, j)| j.order <= 3).collect();
    for (name, job) in &jobs {
        ensure!(
            enumeration_json(job, 1)? == enumeration_json(job, 8)?,
            "{name} differs between 1 and 8 workers"
        );
    }
    let probe = |w| {
        let r =
            associativity_probe(&bundled::krasner(), "krasner", 2, SearchConfig::new(w)).unwrap();
        serde_json::to_string(&r).unwrap()
    };
    ensure!(probe(1) == probe(8), "dorroh probe differs");
    Ok(format!(
        "{sweeps} sweeps, {} enumerations, 1 probe",
        jobs.len()
    ))
}

type Criterion = fn() -> Verdict;

const CRITERIA: [(&str, Criterion); 11] = [
    ("T3 order 2, oracle", c1),
    ("T3 order 3, pruned", c2),
    ("T7, T9, T11 at orders 2 and 3", c3),
    ("T2 order 3", c4),
    ("T13, T24 and P14-P23 at orders 1-3", c5),
    ("T25, T26, T27 at orders 1-3", c6),
    ("T28 at orders 2 and 3 against the catalog", c7),
    ("bundled classification", c8),
    ("Dorroh probe over K, N = 2", c9),
    ("property suite", c10),
    ("determinism at 1 and 8 workers", c11),
];

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let k = i + 1;
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        match v {
            Ok(detail) => println!("criterion {k:2} PASS  {name}: {detail} [{took:.1?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:2} FAIL  {name}: {why} [{took:.1?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
