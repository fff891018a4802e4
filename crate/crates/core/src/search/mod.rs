//! Exhaustive verification at desk scale.
//!
//! Scheme classes (F-spans of ℓ dual polynomials) are enumerated once and
//! scanned in parallel; every report is identical for any worker count.
//! Each report lists `violations` (failed assertions) separately from
//! `findings` (observations recorded for exploratory parameters).

mod classes;
mod oracle;
mod parallel;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use classes::{ClassEval, ClassSpace, SchemeClass};
pub use oracle::{oracle_lemma5_lemma6, OracleReport};
pub use parallel::par_map;

use crate::code::{LinearCode, RsCode};
use crate::construct::{
    average_io, construction_iii, default_w, for_each_unordered_basis, redundancy_exponent,
    AvgMode, SchemeCollection,
};
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, SubfieldBasis};
use crate::repair::{is_rotational, lemma7_criterion, RepairScheme};
use crate::subspace::DEFAULT_BUDGET;

/// Parameters of an exhaustive run over full-length RS codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub q: u32,
    pub ell: u32,
    pub r: usize,
    /// 0-based target position.
    pub target: usize,
    pub workers: usize,
}

impl SearchParams {
    pub fn new(q: u32, ell: u32, r: usize) -> Self {
        SearchParams {
            q,
            ell,
            r,
            target: 0,
            workers: 1,
        }
    }

    pub fn at(mut self, target: usize) -> Self {
        self.target = target;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn code(&self) -> Result<RsCode> {
        let fld = Arc::new(Field::prime_extension(self.q, self.ell)?);
        let n = fld.order() as usize;
        if self.r == 0 || self.r > n {
            return Err(Error::InvalidCode(format!("r = {} with n = {n}", self.r)));
        }
        RsCode::full_length(fld, n - self.r)
    }

    fn out(&self, n: usize) -> ParamsOut {
        ParamsOut {
            q: self.q,
            ell: self.ell,
            n,
            k: n - self.r,
            r: self.r,
            jstar: Some(self.target + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsOut {
    pub q: u32,
    pub ell: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jstar: Option<usize>,
}

struct Scan {
    space: ClassSpace,
    evals: Vec<ClassEval>,
    classes: usize,
    min_bandwidth: usize,
}

impl Scan {
    fn run(p: &SearchParams, basis: Option<&SubfieldBasis>) -> Result<Self> {
        let code = p.code()?;
        let space = ClassSpace::new(code.clone(), p.target, DEFAULT_BUDGET)?;
        let std = SubfieldBasis::standard(code.field());
        let basis = basis.unwrap_or(&std);
        let evals: Vec<ClassEval> = space.scan(basis, p.workers).into_iter().flatten().collect();
        let min_bandwidth = evals.iter().map(|e| e.bandwidth).min().unwrap_or(0);
        Ok(Scan {
            classes: space.len(),
            space,
            evals,
            min_bandwidth,
        })
    }

    fn optimal(&self) -> impl Iterator<Item = &ClassEval> {
        self.evals
            .iter()
            .filter(move |e| e.bandwidth == self.min_bandwidth)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma10Counts {
    pub classes: usize,
    pub valid: usize,
    pub optimal_bandwidth: usize,
    pub expected_bandwidth: usize,
    pub optimal_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma10Report {
    pub parameters: ParamsOut,
    pub m: usize,
    pub counts: Lemma10Counts,
    pub violations: Vec<String>,
}

/// Every bandwidth-optimal class has all column dimensions ℓ-m, and the
/// optimum is (n-1)(ℓ-m).
pub fn verify_lemma10(p: &SearchParams) -> Result<Lemma10Report> {
    let m = redundancy_exponent(p.r, p.q).ok_or(Error::RedundancyNotPowerOfQ { r: p.r, q: p.q })?;
    let ell = p.ell as usize;
    if m == 0 || m >= ell {
        return Err(Error::InvalidCode(format!(
            "need r = q^m with 1 <= m < {ell}"
        )));
    }
    let scan = Scan::run(p, None)?;
    let n = scan.space.code().n();
    let expected = (n - 1) * (ell - m);
    let mut violations = Vec::new();
    if scan.min_bandwidth != expected {
        violations.push(format!(
            "optimal bandwidth {} differs from (n-1)(l-m) = {expected}",
            scan.min_bandwidth
        ));
    }
    for e in scan.optimal() {
        if e.dims.iter().any(|&d| d != ell - m) {
            violations.push(format!(
                "class {} has column dimensions {:?}",
                e.index, e.dims
            ));
        }
    }
    Ok(Lemma10Report {
        parameters: p.out(n),
        m,
        counts: Lemma10Counts {
            classes: scan.classes,
            valid: scan.evals.len(),
            optimal_bandwidth: scan.min_bandwidth,
            expected_bandwidth: expected,
            optimal_classes: scan.optimal().count(),
        },
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisSweep {
    /// Unordered bases tried (costs do not depend on order).
    pub bases: usize,
    pub pairs: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Counts {
    pub classes: usize,
    pub valid: usize,
    pub optimal_bandwidth: usize,
    pub optimal_classes: usize,
    pub rotational: usize,
    pub lemma7_checked: usize,
    pub lemma7_agree: usize,
    /// io under the reference basis → number of optimal classes.
    pub io_values: BTreeMap<usize, usize>,
    pub expected_io: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Report {
    pub parameters: ParamsOut,
    /// True off q = 2, r = 2, where nothing is asserted.
    pub exploratory: bool,
    pub counts: Theorem3Counts,
    pub basis_sweep: Option<BasisSweep>,
    pub violations: Vec<String>,
    pub findings: Vec<String>,
}

impl Theorem3Report {
    pub fn summary(&self) -> String {
        let c = &self.counts;
        let io = if c.io_values.len() == 1 {
            format!("io={} for all", c.io_values.keys().next().unwrap())
        } else {
            format!("io values {:?}", c.io_values)
        };
        format!(
            "optimal classes: {}, rotational: {}, {io}, violations: {}",
            c.optimal_classes,
            c.rotational,
            self.violations.len()
        )
    }
}

/// Every bandwidth-optimal class is rotational and reads kℓ sub-symbols
/// under the reference basis. Asserted for q = 2, r = 2 only.
pub fn verify_theorem3(p: &SearchParams) -> Result<Theorem3Report> {
    let exploratory = !(p.q == 2 && p.r == 2);
    let scan = Scan::run(p, None)?;
    let code = scan.space.code().clone();
    let n = code.n();
    let ell = p.ell as usize;
    let expected_io = code.k() * ell;
    let optimal: Vec<&ClassEval> = scan.optimal().collect();
    let verdicts = par_map(optimal.len(), p.workers, |i| {
        let s = scan.space.scheme(optimal[i].index).expect("valid class");
        let rot = is_rotational(&s).expect("full length").is_some();
        let l7 = lemma7_criterion(&s).expect("full length");
        (rot, l7)
    });
    let mut io_values = BTreeMap::new();
    let mut not_rotational = Vec::new();
    let mut wrong_io = Vec::new();
    let mut criterion_mismatch = Vec::new();
    let mut rotational = 0;
    let mut lemma7_checked = 0;
    let mut lemma7_agree = 0;
    for (e, (rot, l7)) in optimal.iter().zip(&verdicts) {
        *io_values.entry(e.io).or_insert(0) += 1;
        if *rot {
            rotational += 1;
        } else {
            not_rotational.push(e.index);
        }
        if e.io != expected_io {
            wrong_io.push(e.index);
        }
        if let Some(c) = l7 {
            lemma7_checked += 1;
            if *c == *rot {
                lemma7_agree += 1;
            } else {
                criterion_mismatch.push(e.index);
            }
        }
    }
    let mut found = Vec::new();
    for (list, what) in [
        (&not_rotational, "optimal but not rotational".to_string()),
        (
            &wrong_io,
            format!("optimal with io other than {expected_io}"),
        ),
        (
            &criterion_mismatch,
            "where the hyperplane criterion disagrees".to_string(),
        ),
    ] {
        if !list.is_empty() {
            found.push(format!(
                "{} classes {what}: {}",
                list.len(),
                index_list(list)
            ));
        }
    }
    let basis_sweep = (ell <= 3).then(|| {
        let schemes: Vec<RepairScheme> = optimal
            .iter()
            .map(|e| scan.space.scheme(e.index).expect("valid class"))
            .collect();
        let fld = code.field();
        let mut sweep = BasisSweep {
            bases: 0,
            pairs: 0,
            mismatches: 0,
        };
        for_each_unordered_basis(fld, |elems| {
            let b = SubfieldBasis::new(fld, elems.to_vec()).expect("basis");
            sweep.bases += 1;
            for s in &schemes {
                sweep.pairs += 1;
                if s.total_reads(&b) != expected_io {
                    sweep.mismatches += 1;
                }
            }
        });
        sweep
    });
    let mut findings = Vec::new();
    if let Some(sw) = &basis_sweep {
        if sw.mismatches > 0 {
            findings.push(format!(
                "{} of {} (basis, class) pairs read other than {expected_io}",
                sw.mismatches, sw.pairs
            ));
        }
    }
    let violations = if exploratory {
        findings.extend(found);
        Vec::new()
    } else {
        found
    };
    Ok(Theorem3Report {
        parameters: p.out(n),
        exploratory,
        counts: Theorem3Counts {
            classes: scan.classes,
            valid: scan.evals.len(),
            optimal_bandwidth: scan.min_bandwidth,
            optimal_classes: optimal.len(),
            rotational,
            lemma7_checked,
            lemma7_agree,
            io_values,
            expected_io,
        },
        basis_sweep,
        violations,
        findings,
    })
}

fn index_list(v: &[usize]) -> String {
    let shown: Vec<String> = v.iter().take(8).map(usize::to_string).collect();
    if v.len() > 8 {
        format!("{}, ...", shown.join(", "))
    } else {
        shown.join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma7Report {
    pub parameters: ParamsOut,
    /// Valid classes whose helper columns all have dimension ℓ-1.
    pub checked: usize,
    pub rotational: usize,
    pub agree: usize,
    pub violations: Vec<String>,
}

/// Over every class with all column dimensions ℓ-1: the witness search and
/// the hyperplane-count criterion agree.
pub fn verify_lemma7(p: &SearchParams) -> Result<Lemma7Report> {
    let scan = Scan::run(p, None)?;
    let ell = p.ell as usize;
    let cands: Vec<&ClassEval> = scan
        .evals
        .iter()
        .filter(|e| e.dims.iter().all(|&d| d + 1 == ell))
        .collect();
    let verdicts = par_map(cands.len(), p.workers, |i| {
        let s = scan.space.scheme(cands[i].index).expect("valid class");
        (
            is_rotational(&s).expect("full length").is_some(),
            lemma7_criterion(&s).expect("full length"),
        )
    });
    let mut violations = Vec::new();
    let mut agree = 0;
    for (e, (rot, l7)) in cands.iter().zip(&verdicts) {
        if *l7 == Some(*rot) {
            agree += 1;
        } else {
            violations.push(format!(
                "class {}: criterion {:?}, rotational {rot}",
                e.index, l7
            ));
        }
    }
    Ok(Lemma7Report {
        parameters: p.out(scan.space.code().n()),
        checked: cands.len(),
        rotational: verdicts.iter().filter(|v| v.0).count(),
        agree,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoPoint {
    pub bandwidth: usize,
    pub io: usize,
    pub representative: SchemeClass,
}

/// The nondominated (bandwidth, io) pairs over all valid classes under
/// `basis`, by increasing bandwidth, each with its least-index class.
pub fn pareto_front(space: &ClassSpace, basis: &SubfieldBasis, workers: usize) -> Vec<ParetoPoint> {
    let mut pts: Vec<(usize, usize, usize)> = space
        .scan(basis, workers)
        .into_iter()
        .flatten()
        .map(|e| (e.bandwidth, e.io, e.index))
        .collect();
    pts.sort_unstable();
    let mut front = Vec::new();
    let mut best_io = usize::MAX;
    for (bw, io, idx) in pts {
        if io < best_io {
            best_io = io;
            front.push(ParetoPoint {
                bandwidth: bw,
                io,
                representative: space.class(idx),
            });
        }
    }
    front
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub mds: bool,
    pub min_distance: usize,
    pub valid: bool,
    pub column_dims: Vec<usize>,
    pub bandwidth: usize,
    pub rotational: bool,
    pub violations: Vec<String>,
}

/// The [4,2] code over GF(4) whose dual is spanned by (1,0,1,1) and
/// (ξ,1,0,1): MDS, repairable at position 1 with bandwidth 3, not rotational.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let fld = Arc::new(Field::new(2, 1, 2, Some(&[1, 1, 1]))?);
    let xi = fld.primitive();
    let (o, z) = (Gf::ONE, Gf::ZERO);
    let words = vec![vec![o, z, o, o], vec![xi, o, z, o]];
    let code = LinearCode::from_parity_check(fld, 4, words.clone())?;
    let min_distance = code.min_distance()?;
    let mds = min_distance == code.n() - code.k() + 1;
    let mut violations = Vec::new();
    if !mds {
        violations.push(format!("minimum distance {min_distance}, code is not MDS"));
    }
    let scheme = match RepairScheme::from_words(code, 0, words) {
        Ok(s) => s,
        Err(e) => {
            violations.push(format!("scheme rejected: {e}"));
            return Ok(CounterexampleReport {
                mds,
                min_distance,
                valid: false,
                column_dims: Vec::new(),
                bandwidth: 0,
                rotational: false,
                violations,
            });
        }
    };
    let column_dims: Vec<usize> = scheme.helpers().map(|j| scheme.column_dim(j)).collect();
    let bandwidth = scheme.bandwidth();
    let rotational = is_rotational(&scheme)?.is_some();
    if bandwidth != 3 {
        violations.push(format!("bandwidth {bandwidth}, expected 3"));
    }
    if rotational {
        violations.push("scheme is rotational".into());
    }
    Ok(CounterexampleReport {
        mds,
        min_distance,
        valid: true,
        column_dims,
        bandwidth,
        rotational,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCase {
    pub basis: Vec<u32>,
    pub io: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub parameters: ParamsOut,
    pub m: usize,
    pub column_dimension: usize,
    pub rotational: bool,
    pub bandwidth: usize,
    /// ℓ(q^ℓ - q^(ℓ-s)), which equals kℓ here.
    pub expected_io: usize,
    pub cases: Vec<BasisCase>,
    pub violations: Vec<String>,
}

/// The subspace-polynomial construction with the reference W and basis at `target`: rotational
/// with column dimension ℓ-m, reading ℓ(q^ℓ - q^m) sub-symbols under the
/// reference basis and `random_bases` seeded random ones.
pub fn verify_theorem1(
    q: u32,
    ell: u32,
    m: usize,
    target: usize,
    random_bases: usize,
    seed: u64,
) -> Result<Theorem1Report> {
    let fld = Arc::new(Field::prime_extension(q, ell)?);
    let n = fld.order() as usize;
    let r = (q as usize).pow(m as u32);
    if r >= n {
        return Err(Error::InvalidCode(format!("need m < {ell}")));
    }
    let code = RsCode::full_length(fld.clone(), n - r)?;
    let std = SubfieldBasis::standard(&fld);
    let scheme = construction_iii(&code, &default_w(&fld, m)?, &std, target)?;
    let s = ell as usize - m;
    let expected_io = ell as usize * (n - (q as usize).pow((ell as usize - s) as u32));
    let mut violations = Vec::new();
    let witness = is_rotational(&scheme)?;
    let rotational = witness.is_some();
    match &witness {
        Some(w) if w.base.dim() == s => {}
        Some(w) => violations.push(format!("column dimension {}, expected {s}", w.base.dim())),
        None => violations.push("scheme is not rotational".into()),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = vec![std];
    for _ in 0..random_bases {
        bases.push(SubfieldBasis::random(&fld, &mut rng));
    }
    let cases: Vec<BasisCase> = bases
        .iter()
        .map(|b| BasisCase {
            basis: b.elems().iter().map(|e| e.0).collect(),
            io: scheme.total_reads(b),
        })
        .collect();
    for c in &cases {
        if c.io != expected_io {
            violations.push(format!(
                "basis {:?} reads {}, expected {expected_io}",
                c.basis, c.io
            ));
        }
    }
    Ok(Theorem1Report {
        parameters: ParamsOut {
            q,
            ell,
            n,
            k: n - r,
            r,
            jstar: Some(target + 1),
        },
        m,
        column_dimension: witness.map_or(0, |w| w.base.dim()),
        rotational,
        bandwidth: scheme.bandwidth(),
        expected_io,
        cases,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub parameters: ParamsOut,
    pub m: usize,
    pub symmetric: bool,
    pub ordered_bases_per_node: u128,
    /// Σ_j min_B reads at node j.
    pub total: usize,
    /// total / n as "a/b".
    pub average: String,
    /// kℓ.
    pub expected: usize,
    pub violations: Vec<String>,
}

/// The subspace-polynomial collection is symmetric and its exact average I/O
/// over per-node bases is kℓ.
pub fn verify_theorem2(q: u32, ell: u32, m: usize) -> Result<Theorem2Report> {
    let fld = Arc::new(Field::prime_extension(q, ell)?);
    let n = fld.order() as usize;
    let r = (q as usize).pow(m as u32);
    if r >= n {
        return Err(Error::InvalidCode(format!("need m < {ell}")));
    }
    let code = RsCode::full_length(fld.clone(), n - r)?;
    let coll = SchemeCollection::construction_iii(
        &code,
        &default_w(&fld, m)?,
        &SubfieldBasis::standard(&fld),
    )?;
    let symmetric = coll.is_symmetric();
    let avg = average_io(&coll, AvgMode::Exact)?;
    let expected = code.k() * ell as usize;
    let mut violations = Vec::new();
    if !symmetric {
        violations.push("collection is not symmetric".into());
    }
    if avg.total != expected * n {
        violations.push(format!(
            "average I/O {}/{n}, expected {expected}",
            avg.total
        ));
    }
    let (a, b) = avg.as_fraction();
    Ok(Theorem2Report {
        parameters: ParamsOut {
            q,
            ell,
            n,
            k: code.k(),
            r,
            jstar: None,
        },
        m,
        symmetric,
        ordered_bases_per_node: avg.ordered_bases.unwrap_or(0),
        total: avg.total,
        average: if b == 1 {
            a.to_string()
        } else {
            format!("{a}/{b}")
        },
        expected,
        violations,
    })
}
