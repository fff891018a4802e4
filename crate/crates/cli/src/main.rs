use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trace_repair::code::RsCode;
use trace_repair::construct::{
    average_io, construction_iii, default_w, naive_scheme, redundancy_exponent, AvgMode,
    SchemeCollection,
};
use trace_repair::gf::{Field, Gf, SubfieldBasis};
use trace_repair::subspace::Subspace;
use trace_repair::{serial, Error};

mod repair;
mod verify;

#[derive(Parser)]
#[command(
    name = "trace-repair",
    version,
    about = "Trace repair of Reed-Solomon codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or inspect extension fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Build, cost and check repair schemes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Build per-node scheme collections.
    #[command(subcommand)]
    Collection(CollectionCmd),
    /// Run repairs on a simulated cluster.
    #[command(subcommand)]
    Repair(RepairCmd),
    /// Run an exhaustive or randomized verifier.
    Verify(verify::VerifyArgs),
    /// Nondominated (bandwidth, io) pairs over all scheme classes.
    Pareto(ParetoArgs),
    /// Average I/O of a collection, minimized over a basis per node.
    Avgio(AvgioArgs),
}

#[derive(Args, Clone)]
struct FieldParams {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// Modulus digits, low to high, comma separated (default: least irreducible).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldParams {
    fn build(&self) -> Result<Field, Error> {
        Field::new(self.p, self.d, self.ell, self.modulus.as_deref())
    }
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Write a field descriptor.
    Build {
        #[command(flatten)]
        params: FieldParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a field's parameters and element table.
    Show {
        #[arg(long, conflicts_with_all = ["p", "d", "ell", "modulus"])]
        field: Option<PathBuf>,
        #[command(flatten)]
        params: FieldParams,
        /// List elements even for large fields.
        #[arg(long)]
        all: bool,
    },
    /// Write a basis file: the reference basis, a seeded random one, or a
    /// trace-dual.
    Basis {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, conflicts_with = "dual_of")]
        seed: Option<u64>,
        #[arg(long)]
        dual_of: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Iii,
    Naive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CodeParams {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// r = q^m redundancy.
    #[arg(long, conflicts_with = "k")]
    m: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
}

impl CodeParams {
    fn code(&self) -> Result<RsCode, Error> {
        let fld = Arc::new(Field::prime_extension(self.q, self.ell)?);
        let n = fld.order() as usize;
        let k = match (self.k, self.m) {
            (Some(k), _) => k,
            (None, m) => {
                let r = (self.q as usize)
                    .checked_pow(m.unwrap_or(1))
                    .filter(|&r| r <= n)
                    .ok_or_else(|| Error::InvalidCode(format!("q^m exceeds n = {n}")))?;
                n - r
            }
        };
        RsCode::full_length(fld, k)
    }
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Write a scheme file for a full-length RS code.
    Build {
        #[arg(long, value_enum, default_value = "iii")]
        construction: Construction,
        #[command(flatten)]
        code: CodeParams,
        /// 1-based target position.
        #[arg(long, default_value_t = 1)]
        jstar: usize,
        /// Spanning elements of W as integers (default: 1, x, ..., x^(m-1)).
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<u32>>,
        /// Basis file for the construction (default: reference basis).
        #[arg(long)]
        basis: Option<PathBuf>,
        /// 1-based helper positions for the naive scheme (default: the
        /// first k non-target positions).
        #[arg(long, value_delimiter = ',')]
        helpers: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bandwidth and disk reads per helper.
    Cost {
        #[arg(long)]
        scheme: PathBuf,
        /// `default` or a basis file.
        #[arg(long, default_value = "default")]
        basis: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Validate a scheme or collection and report its structure.
    Check {
        #[arg(long, required_unless_present = "collection")]
        scheme: Option<PathBuf>,
        #[arg(long, conflicts_with = "scheme")]
        collection: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CollectionCmd {
    /// The subspace-polynomial construction at every position.
    Build {
        #[command(flatten)]
        code: CodeParams,
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<u32>>,
        /// Attach per-node bases chosen by this minimization.
        #[arg(long, value_enum)]
        with_bases: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RepairCmd {
    /// Fail the scheme's target node and repair it.
    Run {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, conflicts_with = "random")]
        codeword: Option<PathBuf>,
        /// Number of random codewords to repair.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args)]
struct ParetoArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    jstar: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
}

impl From<ModeArg> for AvgMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => AvgMode::Exact,
            ModeArg::Heuristic => AvgMode::Heuristic,
        }
    }
}

#[derive(Args)]
struct AvgioArgs {
    #[arg(long)]
    collection: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

/// What a command produced: text to print and whether it found violations.
pub(crate) struct Outcome {
    text: String,
    violations: bool,
}

impl Outcome {
    pub(crate) fn ok(text: String) -> Self {
        Outcome {
            text,
            violations: false,
        }
    }

    pub(crate) fn checked(text: String, violations: bool) -> Self {
        Outcome { text, violations }
    }
}

pub(crate) fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<Outcome, Error> {
    match out {
        Some(p) => {
            fs::write(p, text)
                .map_err(|e| Error::Unsupported(format!("cannot write {}: {e}", p.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn position(one_based: usize, n: usize) -> Result<usize, Error> {
    if one_based == 0 || one_based > n {
        return Err(Error::PositionOutOfRange {
            pos: one_based.wrapping_sub(1),
            n,
        });
    }
    Ok(one_based - 1)
}

pub(crate) fn load_basis(fld: &Field, path: &Path) -> Result<SubfieldBasis, Error> {
    let (bf, b) = serial::basis_from_json(&read_file(path)?)?;
    if &bf != fld {
        return Err(Error::MixedFields);
    }
    Ok(b)
}

fn w_space(fld: &Field, m: usize, w: &Option<Vec<u32>>) -> Result<Subspace, Error> {
    match w {
        None => default_w(fld, m),
        Some(vals) => {
            let gens = vals
                .iter()
                .map(|&v| fld.element(v))
                .collect::<Result<Vec<Gf>, _>>()?;
            Ok(Subspace::span(fld, &gens))
        }
    }
}

fn field_show(fld: &Field, all: bool) -> String {
    let mut s = format!(
        "GF({}^{}) over GF({}), order {}\nmodulus (low to high): {:?}\nprimitive: {}\n",
        fld.q(),
        fld.ell(),
        fld.q(),
        fld.order(),
        fld.modulus(),
        fld.format(fld.primitive())
    );
    if fld.order() > 64 && !all {
        s.push_str("(element table omitted, pass --all)\n");
        return s;
    }
    s.push_str("value  digits  log  trace\n");
    for a in fld.elements() {
        let log = fld.log(a).map_or("-".to_string(), |l| l.to_string());
        s.push_str(&format!(
            "{:>5}  {:<6}  {:>3}  {:>5}\n",
            a.0,
            fld.format(a),
            log,
            fld.trace(a).0
        ));
    }
    s
}

fn run_field(cmd: FieldCmd) -> Result<Outcome, Error> {
    match cmd {
        FieldCmd::Build { params, out } => emit(&out, serial::field_to_json(&params.build()?)),
        FieldCmd::Show { field, params, all } => {
            let fld = match field {
                Some(p) => serial::field_from_json(&read_file(&p)?)?,
                None => params.build()?,
            };
            Ok(Outcome::ok(field_show(&fld, all)))
        }
        FieldCmd::Basis {
            field,
            seed,
            dual_of,
            out,
        } => {
            let fld = serial::field_from_json(&read_file(&field)?)?;
            let b = match (seed, dual_of) {
                (Some(s), _) => {
                    use rand::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
                    SubfieldBasis::random(&fld, &mut rng)
                }
                (None, Some(p)) => load_basis(&fld, &p)?.dual_basis(),
                (None, None) => SubfieldBasis::standard(&fld),
            };
            emit(&out, serial::basis_to_json(&fld, &b))
        }
    }
}

fn run_scheme(cmd: SchemeCmd) -> Result<Outcome, Error> {
    match cmd {
        SchemeCmd::Build {
            construction,
            code,
            jstar,
            w,
            basis,
            helpers,
            out,
        } => {
            let code = code.code()?;
            let fld = code.field().clone();
            let target = position(jstar, code.n())?;
            let scheme = match construction {
                Construction::Iii => {
                    let m = redundancy_exponent(code.r(), fld.q()).ok_or(
                        Error::RedundancyNotPowerOfQ {
                            r: code.r(),
                            q: fld.q(),
                        },
                    )?;
                    let b = match &basis {
                        Some(p) => load_basis(&fld, p)?,
                        None => SubfieldBasis::standard(&fld),
                    };
                    construction_iii(&code, &w_space(&fld, m, &w)?, &b, target)?
                }
                Construction::Naive => {
                    let hs = match helpers {
                        Some(h) => h
                            .iter()
                            .map(|&p| position(p, code.n()))
                            .collect::<Result<Vec<_>, _>>()?,
                        None => (0..code.n())
                            .filter(|&j| j != target)
                            .take(code.k())
                            .collect(),
                    };
                    naive_scheme(&code, target, &hs)?
                }
            };
            emit(&out, serial::scheme_to_json(&scheme))
        }
        SchemeCmd::Cost {
            scheme,
            basis,
            format,
        } => {
            let s = serial::scheme_from_json(&read_file(&scheme)?)?;
            let b = if basis == "default" {
                SubfieldBasis::standard(s.field())
            } else {
                load_basis(s.field(), Path::new(&basis))?
            };
            let report = s.io_cost(&b);
            Ok(Outcome::ok(match format {
                Format::Table => report.to_table(),
                Format::Json => json_text(&report.to_json()),
                Format::Csv => report.to_csv(),
            }))
        }
        SchemeCmd::Check {
            scheme,
            collection,
            format,
        } => match (scheme, collection) {
            (Some(p), _) => check_scheme(&read_file(&p)?, format),
            (None, Some(p)) => check_collection(&read_file(&p)?, format),
            (None, None) => unreachable!("clap requires one of the two"),
        },
    }
}

fn check_scheme(text: &str, format: Format) -> Result<Outcome, Error> {
    let s = serial::scheme_from_json(text)?;
    let fld = s.field().clone();
    let dims: Vec<Value> = s
        .helpers()
        .map(|j| json!({"helper": j + 1, "dim": s.column_dim(j)}))
        .collect();
    let witness = if s.code().is_full_length() {
        trace_repair::repair::is_rotational(&s)?
    } else {
        None
    };
    let rot = witness.as_ref().map(|w| {
        json!({
            "base": w.base.basis().iter().map(|&a| a.0).collect::<Vec<_>>(),
            "multipliers": w.multipliers.iter()
                .map(|(j, rho)| json!({"helper": j + 1, "rho": rho.0}))
                .collect::<Vec<_>>(),
        })
    });
    let v = json!({
        "valid": true,
        "jstar": s.target() + 1,
        "n": s.n(),
        "bandwidth": s.bandwidth(),
        "column_dims": dims,
        "full_length": s.code().is_full_length(),
        "rotational": rot,
    });
    if format != Format::Table {
        return Ok(Outcome::ok(json_text(&v)));
    }
    let mut t = format!(
        "valid scheme for node {} of n = {}, bandwidth {}\n",
        s.target() + 1,
        s.n(),
        s.bandwidth()
    );
    let d: Vec<String> = s.helpers().map(|j| s.column_dim(j).to_string()).collect();
    t.push_str(&format!("column dims: {}\n", d.join(" ")));
    match witness {
        Some(w) => {
            let base: Vec<String> = w.base.basis().iter().map(|&a| fld.format(a)).collect();
            t.push_str(&format!("rotational, S = span{{{}}}\n", base.join(", ")));
            for (j, rho) in &w.multipliers {
                t.push_str(&format!("  helper {}: rho = {}\n", j + 1, fld.format(*rho)));
            }
        }
        None if s.code().is_full_length() => t.push_str("not rotational\n"),
        None => t.push_str("rotationality not defined (code is not full length)\n"),
    }
    Ok(Outcome::ok(t))
}

fn check_collection(text: &str, format: Format) -> Result<Outcome, Error> {
    let c = serial::collection_from_json(text)?;
    let bw: Vec<usize> = c.schemes().iter().map(|s| s.bandwidth()).collect();
    let symmetric = c.is_symmetric();
    if format != Format::Table {
        return Ok(Outcome::ok(json_text(&json!({
            "valid": true,
            "n": c.n(),
            "symmetric": symmetric,
            "bandwidths": bw,
            "has_bases": c.bases().is_some(),
        }))));
    }
    Ok(Outcome::ok(format!(
        "valid collection of {} schemes, symmetric: {symmetric}\nbandwidths: {:?}\n",
        c.n(),
        bw
    )))
}

fn run_collection(cmd: CollectionCmd) -> Result<Outcome, Error> {
    let CollectionCmd::Build {
        code,
        w,
        with_bases,
        out,
    } = cmd;
    let code = code.code()?;
    let fld = code.field().clone();
    let m = redundancy_exponent(code.r(), fld.q()).ok_or(Error::RedundancyNotPowerOfQ {
        r: code.r(),
        q: fld.q(),
    })?;
    let coll = SchemeCollection::construction_iii(
        &code,
        &w_space(&fld, m, &w)?,
        &SubfieldBasis::standard(&fld),
    )?;
    let coll = match with_bases {
        None => coll,
        Some(mode) => {
            let avg = average_io(&coll, mode.into())?;
            let bases = avg.per_node.into_iter().map(|p| p.basis).collect();
            SchemeCollection::new(code, coll.schemes().to_vec(), Some(bases))?
        }
    };
    emit(&out, serial::collection_to_json(&coll))
}

fn run_pareto(a: ParetoArgs) -> Result<Outcome, Error> {
    use trace_repair::search::{pareto_front, ClassSpace};
    use trace_repair::subspace::DEFAULT_BUDGET;
    let fld = Arc::new(Field::prime_extension(a.q, a.ell)?);
    let n = fld.order() as usize;
    if a.r == 0 || a.r > n {
        return Err(Error::InvalidCode(format!("r = {} with n = {n}", a.r)));
    }
    let code = RsCode::full_length(fld.clone(), n - a.r)?;
    let target = position(a.jstar, n)?;
    let space = ClassSpace::new(code, target, DEFAULT_BUDGET)?;
    let front = pareto_front(&space, &SubfieldBasis::standard(&fld), a.workers.max(1));
    Ok(Outcome::ok(match a.format {
        Format::Json => json_text(&json!({
            "parameters": {"q": a.q, "ell": a.ell, "n": n, "k": n - a.r, "r": a.r, "jstar": a.jstar},
            "front": front.iter().map(|p| json!({
                "bandwidth": p.bandwidth,
                "io": p.io,
                "class": p.representative.index,
                "polys": p.representative.polys.iter()
                    .map(|g| g.coeffs().iter().map(|c| c.0).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("bandwidth,io,class\n");
            for p in &front {
                s.push_str(&format!(
                    "{},{},{}\n",
                    p.bandwidth, p.io, p.representative.index
                ));
            }
            s
        }
        Format::Table => {
            let mut s = String::from("bandwidth  io  class\n");
            for p in &front {
                s.push_str(&format!(
                    "{:>9}  {:>2}  {}\n",
                    p.bandwidth, p.io, p.representative.index
                ));
            }
            s
        }
    }))
}

fn run_avgio(a: AvgioArgs) -> Result<Outcome, Error> {
    let coll = serial::collection_from_json(&read_file(&a.collection)?)?;
    let avg = average_io(&coll, a.mode.into())?;
    let (num, den) = avg.as_fraction();
    Ok(Outcome::ok(match a.format {
        Format::Json => json_text(&json!({
            "mode": match a.mode { ModeArg::Exact => "exact", ModeArg::Heuristic => "heuristic" },
            "n": avg.n,
            "total": avg.total,
            "average": format!("{num}/{den}"),
            "upper_bound": avg.upper_bound,
            "ordered_bases_per_node": avg.ordered_bases.map(|c| c.to_string()),
            "per_node": avg.per_node.iter().map(|p| json!({
                "node": p.node + 1,
                "reads": p.reads,
                "floor": p.floor,
                "basis": p.basis.elems().iter().map(|e| e.0).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("node,reads,floor\n");
            for p in &avg.per_node {
                s.push_str(&format!("{},{},{}\n", p.node + 1, p.reads, p.floor));
            }
            s
        }
        Format::Table => {
            let mut s = String::from("node  reads  floor\n");
            for p in &avg.per_node {
                s.push_str(&format!(
                    "{:>4}  {:>5}  {:>5}\n",
                    p.node + 1,
                    p.reads,
                    p.floor
                ));
            }
            let bound = if avg.upper_bound {
                " (upper bound)"
            } else {
                ""
            };
            s.push_str(&format!(
                "total {}, average {num}/{den}{bound}\n",
                avg.total
            ));
            s
        }
    }))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.cmd {
        Cmd::Field(c) => run_field(c),
        Cmd::Scheme(c) => run_scheme(c),
        Cmd::Collection(c) => run_collection(c),
        Cmd::Repair(c) => repair::run(c),
        Cmd::Verify(a) => verify::run(a),
        Cmd::Pareto(a) => run_pareto(a),
        Cmd::Avgio(a) => run_avgio(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.text);
            if o.violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
