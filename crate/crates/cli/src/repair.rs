use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use trace_repair::code::{Codeword, LinearCode, RsCode};
use trace_repair::gf::{Field, Gf, Poly, SubfieldBasis};
use trace_repair::repair::{execute_repair, RepairScheme, SchemeCode};
use trace_repair::sim::{simulate_repair, Cluster, HelperTranscript, RepairTranscript};
use trace_repair::{serial, Error};

use crate::{json_text, read_file, Format, Outcome, RepairCmd};

fn random_rs(code: &RsCode, rng: &mut ChaCha8Rng) -> Result<Codeword, Error> {
    let fld = code.field();
    let coeffs = (0..code.k())
        .map(|_| Gf(rng.gen_range(0..fld.order())))
        .collect();
    code.encode(&Poly::new(coeffs))
}

fn random_linear(code: &LinearCode, rng: &mut ChaCha8Rng) -> Result<Codeword, Error> {
    let fld = code.field();
    let msg: Vec<Gf> = (0..code.k())
        .map(|_| Gf(rng.gen_range(0..fld.order())))
        .collect();
    code.encode(&msg)
}

fn repair_one(scheme: &RepairScheme, cw: &Codeword) -> Result<RepairTranscript, Error> {
    match scheme.code() {
        SchemeCode::Rs(code) => {
            let mut cluster = Cluster::new(code.clone(), None, cw)?;
            cluster.fail(scheme.target())?;
            simulate_repair(&mut cluster, scheme)
        }
        SchemeCode::Linear(code) => {
            if !code.contains(cw.symbols()) {
                return Err(Error::InvalidCode("stored word is not a codeword".into()));
            }
            let fld = scheme.field().clone();
            let b = SubfieldBasis::standard(&fld);
            let t = scheme.target();
            let (got, log) = execute_repair(scheme, &cw.erase(t)?, &b)?;
            log.check_against(&scheme.io_cost(&b))?;
            Ok(RepairTranscript {
                failed: t + 1,
                helpers: log
                    .helpers
                    .iter()
                    .map(|h| HelperTranscript {
                        node: h.node + 1,
                        reads: h.read_positions.len(),
                        read_positions: h.read_positions.iter().map(|p| p + 1).collect(),
                        transferred: h.traces.len(),
                    })
                    .collect(),
                total_reads: log.total_reads(),
                total_transferred: log.total_transferred(),
                recovered: fld.digits(got),
                success: got == cw.symbols()[t],
            })
        }
    }
}

pub(crate) fn run(cmd: RepairCmd) -> Result<Outcome, Error> {
    let RepairCmd::Run {
        scheme,
        codeword,
        random,
        seed,
        format,
    } = cmd;
    let s = serial::scheme_from_json(&read_file(&scheme)?)?;
    let words: Vec<Codeword> = match codeword {
        Some(p) => {
            let (f, cw): (Field, Codeword) = serial::codeword_from_json(&read_file(&p)?)?;
            if &f != s.field().as_ref() {
                return Err(Error::MixedFields);
            }
            vec![cw]
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..random.unwrap_or(1))
                .map(|_| match s.code() {
                    SchemeCode::Rs(c) => random_rs(c, &mut rng),
                    SchemeCode::Linear(c) => random_linear(c, &mut rng),
                })
                .collect::<Result<_, _>>()?
        }
    };
    let transcripts = words
        .iter()
        .map(|cw| repair_one(&s, cw))
        .collect::<Result<Vec<_>, _>>()?;
    let failures = transcripts.iter().filter(|t| !t.success).count();
    let text = match format {
        Format::Json => json_text(&json!({
            "trials": transcripts.len(),
            "failures": failures,
            "transcripts": transcripts,
        })),
        Format::Csv => {
            let mut out = String::from("trial,failed,total_reads,total_transferred,success\n");
            for (i, t) in transcripts.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i + 1,
                    t.failed,
                    t.total_reads,
                    t.total_transferred,
                    t.success
                ));
            }
            out
        }
        Format::Table if transcripts.len() == 1 => transcripts[0].to_table(),
        Format::Table => {
            let t = &transcripts[0];
            format!(
                "{} repairs of node {}: {} recovered, reads {} and transferred {} each\n",
                transcripts.len(),
                t.failed,
                transcripts.len() - failures,
                t.total_reads,
                t.total_transferred
            )
        }
    };
    Ok(Outcome::checked(text, failures > 0))
}
