use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use trace_repair::gf::Field;
use trace_repair::search::{
    oracle_lemma5_lemma6, verify_counterexample, verify_lemma10, verify_lemma7, verify_theorem1,
    verify_theorem2, verify_theorem3, SearchParams,
};
use trace_repair::Error;

use crate::{json_text, Format, Outcome};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Which {
    Thm1,
    Thm2,
    Thm3,
    Lemma5,
    Lemma6,
    Lemma7,
    Lemma10,
    Counterexample,
}

#[derive(Args)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// r = q^m for the construction checks.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Redundancy n - k for the exhaustive checks.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// 1-based target position.
    #[arg(long, default_value_t = 1)]
    jstar: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Random bases tried on top of the reference basis.
    #[arg(long, default_value_t = 5)]
    random_bases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Report wall-clock time (kept out of the report data).
    #[arg(long)]
    timing: bool,
}

struct Done {
    json: Value,
    text: String,
    violations: usize,
}

fn done<T: Serialize>(r: &T, text: String, violations: usize) -> Done {
    Done {
        json: serde_json::to_value(r).expect("reports serialize"),
        text,
        violations,
    }
}

fn lines(v: &[String]) -> String {
    v.iter().map(|s| format!("  {s}\n")).collect()
}

pub(crate) fn run(a: VerifyArgs) -> Result<Outcome, Error> {
    if a.jstar == 0 {
        return Err(Error::PositionOutOfRange {
            pos: usize::MAX,
            n: 0,
        });
    }
    let target = a.jstar - 1;
    let params = SearchParams::new(a.q, a.ell, a.r)
        .at(target)
        .workers(a.workers.max(1));
    let start = Instant::now();
    let d = match a.which {
        Which::Thm1 => {
            let r = verify_theorem1(a.q, a.ell, a.m, target, a.random_bases, a.seed)?;
            let ios: Vec<usize> = r.cases.iter().map(|c| c.io).collect();
            let text = format!(
                "rotational: {}, column dimension: {}, bandwidth: {}\nio per basis: {:?}, expected {}\nviolations: {}\n{}",
                r.rotational,
                r.column_dimension,
                r.bandwidth,
                ios,
                r.expected_io,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
        Which::Thm2 => {
            let r = verify_theorem2(a.q, a.ell, a.m)?;
            let text = format!(
                "symmetric: {}, ordered bases per node: {}, average io: {}, expected {}\nviolations: {}\n{}",
                r.symmetric,
                r.ordered_bases_per_node,
                r.average,
                r.expected,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
        Which::Thm3 => {
            let r = verify_theorem3(&params)?;
            let mut text = format!(
                "classes: {}, valid: {}, optimal bandwidth: {}\n{}\n",
                r.counts.classes,
                r.counts.valid,
                r.counts.optimal_bandwidth,
                r.summary()
            );
            if let Some(s) = &r.basis_sweep {
                text.push_str(&format!(
                    "basis sweep: {} bases, {} pairs, {} mismatches\n",
                    s.bases, s.pairs, s.mismatches
                ));
            }
            text.push_str(&lines(&r.violations));
            if !r.findings.is_empty() {
                text.push_str("findings (exploratory, not asserted):\n");
                text.push_str(&lines(&r.findings));
            }
            done(&r, text, r.violations.len())
        }
        Which::Lemma5 | Which::Lemma6 => {
            let fld = Field::prime_extension(a.q, a.ell)?;
            let r = oracle_lemma5_lemma6(&fld)?;
            let text = format!(
                "tuples: {}, primitives: {}, violations: {}\n{}",
                r.tuples,
                r.primitives,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
        Which::Lemma7 => {
            let r = verify_lemma7(&params)?;
            let text = format!(
                "checked: {}, rotational: {}, criterion agrees: {}, violations: {}\n{}",
                r.checked,
                r.rotational,
                r.agree,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
        Which::Lemma10 => {
            let r = verify_lemma10(&params)?;
            let c = &r.counts;
            let text = format!(
                "classes: {}, valid: {}, optimal bandwidth: {} (expected {}), optimal classes: {}, violations: {}\n{}",
                c.classes,
                c.valid,
                c.optimal_bandwidth,
                c.expected_bandwidth,
                c.optimal_classes,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
        Which::Counterexample => {
            let r = verify_counterexample()?;
            let text = format!(
                "mds: {} (d = {}), valid: {}, column dims: {:?}, bandwidth: {}, rotational: {}\nviolations: {}\n{}",
                r.mds,
                r.min_distance,
                r.valid,
                r.column_dims,
                r.bandwidth,
                r.rotational,
                r.violations.len(),
                lines(&r.violations)
            );
            done(&r, text, r.violations.len())
        }
    };
    let secs = start.elapsed().as_secs_f64();
    let bad = d.violations > 0;
    let text = match a.format {
        Format::Table | Format::Csv => {
            let mut t = d.text;
            if a.timing {
                t.push_str(&format!("wall_time: {secs:.3} s\n"));
            }
            t
        }
        Format::Json => {
            let mut v = d.json;
            if a.timing {
                v["wall_time"] = serde_json::json!(secs);
            }
            json_text(&v)
        }
    };
    Ok(Outcome::checked(text, bad))
}
