use std::time::Instant;

use serde_json::{json, Value};
use topcoh::formulas::RankRow;
use topcoh::homology::HomologyReport;

use crate::config::{OutputFormat, RunConfig};
use crate::verify::{Status, VerificationOutcome};

/// A command failure with its exit code: 1 check failure, 2 usage or precondition,
/// 3 resource cap.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn check(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

/// Prints a command result in the configured format. Structured output is one document
/// holding the configuration, seed, duration and result; CSV exists only for tables and
/// other commands fall back to text.
pub fn emit(config: &RunConfig, command: &str, params: Value, start: Instant, result: Value, text: &str, csv: Option<&str>) {
    match config.format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Csv => print!("{}", csv.unwrap_or(text)),
        OutputFormat::Json => {
            let doc = json!({
                "tool": "topcoh",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "config": config,
                "params": params,
                "seed": config.seed,
                "duration_ms": start.elapsed().as_secs_f64() * 1e3,
                "result": result,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
}

pub fn ranks_csv(rows: &[RankRow]) -> String {
    let mut out = String::from("n,t,t_prime,steinberg,lower_bound\n");
    for r in rows {
        let lb = r.lower_bound.as_ref().map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{lb}\n", r.n, r.t, r.t_prime, r.steinberg));
    }
    out
}

pub fn ranks_text(p: u64, rows: &[RankRow]) -> String {
    let mut out = format!("p = {p}\n");
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.t.to_string(),
                r.t_prime.to_string(),
                r.steinberg.to_string(),
                r.lower_bound.as_ref().map_or("-".into(), |v| v.to_string()),
            ]
        })
        .collect();
    let header = ["n", "t_n", "t'_n", "steinberg", "lower_bound"];
    let widths: Vec<usize> = (0..5)
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |c: &[&str]| -> String {
        c.iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            + "\n"
    };
    out.push_str(&line(&header));
    for c in &cells {
        out.push_str(&line(&c.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}

pub fn homology_text(r: &HomologyReport) -> String {
    let mut out = format!("{} homology\n", if r.reduced { "reduced" } else { "unreduced" });
    for (i, b) in r.betti.iter().enumerate() {
        let d = r.first_degree + i as i64;
        let torsion = match r.torsion_at(d) {
            Some([]) => " torsion-free".to_string(),
            Some(t) => format!(" torsion {}", t.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" ")),
            None => String::new(),
        };
        out.push_str(&format!("degree {d}: betti {b}{torsion}\n"));
    }
    out.push_str(&format!("euler {}\nmethod {} seed {}\n", r.euler, r.method.name(), r.seed));
    out
}

pub fn verify_text(outcomes: &[VerificationOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        out.push_str(&format!("{tag} {} ({:.0} ms)", o.id, o.duration_ms));
        if o.status != Status::Pass {
            out.push_str(&format!(": observed {:?}, expected {:?}", o.observed, o.expected));
            if let Some(r) = &o.reason {
                out.push_str(&format!(" [{r}]"));
            }
        }
        out.push('\n');
    }
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
    out
}
