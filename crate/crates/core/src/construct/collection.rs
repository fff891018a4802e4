use super::{construction_iii, dual_extension};
use crate::code::RsCode;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, SubfieldBasis};
use crate::linalg;
use crate::repair::{RepairScheme, SchemeCode};
use crate::subspace::Subspace;

/// Cap on ordered bases per node for exact minimization.
pub const BASIS_BUDGET: u128 = 1_000_000;

/// One scheme per position of a full-length RS code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeCollection {
    code: RsCode,
    schemes: Vec<RepairScheme>,
    bases: Option<Vec<SubfieldBasis>>,
}

impl SchemeCollection {
    pub fn new(
        code: RsCode,
        schemes: Vec<RepairScheme>,
        bases: Option<Vec<SubfieldBasis>>,
    ) -> Result<Self> {
        if schemes.len() != code.n() {
            return Err(Error::WrongLength {
                expected: code.n(),
                got: schemes.len(),
            });
        }
        for (t, s) in schemes.iter().enumerate() {
            if s.target() != t {
                return Err(Error::InvalidCode(format!(
                    "scheme {} targets node {}",
                    t + 1,
                    s.target() + 1
                )));
            }
            if s.code() != &SchemeCode::Rs(code.clone()) {
                return Err(Error::InvalidCode(format!(
                    "scheme {} is for a different code",
                    t + 1
                )));
            }
        }
        if let Some(b) = &bases {
            if b.len() != code.n() {
                return Err(Error::WrongLength {
                    expected: code.n(),
                    got: b.len(),
                });
            }
        }
        Ok(SchemeCollection {
            code,
            schemes,
            bases,
        })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn schemes(&self) -> &[RepairScheme] {
        &self.schemes
    }

    pub fn bases(&self) -> Option<&[SubfieldBasis]> {
        self.bases.as_deref()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// S_{j*→j} = S_{j→j*} for all j ≠ j*.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.schemes[a].column_space(b) == self.schemes[b].column_space(a))
        })
    }

    /// The subspace-polynomial construction at every position, same W and basis.
    pub fn construction_iii(code: &RsCode, w: &Subspace, basis: &SubfieldBasis) -> Result<Self> {
        let schemes = (0..code.n())
            .map(|t| construction_iii(code, w, basis, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(code.clone(), schemes, None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvgMode {
    /// Minimize over every basis of E at every node.
    Exact,
    /// Try only the reference basis and the dual-extension bases.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeIo {
    pub node: usize,
    /// Σ_{j*≠j} reads at this node under `basis`.
    pub reads: usize,
    /// Σ_{j*≠j} dim S_{j→j*}, below which no basis can go.
    pub floor: usize,
    pub basis: SubfieldBasis,
}

/// Σ_j min_B Σ_{j*≠j} |supp W^B_{j→j*}|, divided by n on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageIo {
    pub mode: AvgMode,
    pub total: usize,
    pub n: usize,
    pub per_node: Vec<NodeIo>,
    /// Ordered bases each node minimized over (exact mode).
    pub ordered_bases: Option<u128>,
    /// Set when the value is only an upper bound on the true minimum.
    pub upper_bound: bool,
}

impl AverageIo {
    pub fn value(&self) -> f64 {
        self.total as f64 / self.n as f64
    }

    /// total/n in lowest terms.
    pub fn as_fraction(&self) -> (usize, usize) {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.total, self.n).max(1);
        (self.total / g, self.n / g)
    }
}

/// Number of ordered F-bases of E: Π_{i<ℓ} (q^ℓ - q^i).
pub fn ordered_basis_count(fld: &Field) -> u128 {
    let q = fld.q() as u128;
    let ql = q.pow(fld.ell() as u32);
    (0..fld.ell() as u32).map(|i| ql - q.pow(i)).product()
}

/// Calls `f` on each unordered basis as an ascending element tuple.
pub fn for_each_unordered_basis(fld: &Field, mut f: impl FnMut(&[Gf])) {
    fn rec(fld: &Field, start: u32, cur: &mut Vec<Gf>, f: &mut dyn FnMut(&[Gf])) {
        if cur.len() == fld.ell() {
            f(cur);
            return;
        }
        for v in start..fld.order() {
            cur.push(Gf(v));
            if linalg::rank_of_elements(fld, cur) == cur.len() {
                rec(fld, v + 1, cur, f);
            }
            cur.pop();
        }
    }
    rec(fld, 1, &mut Vec::new(), &mut f);
}

pub fn average_io(coll: &SchemeCollection, mode: AvgMode) -> Result<AverageIo> {
    let fld = coll.code.field().clone();
    let n = coll.n();
    let ordered = ordered_basis_count(&fld);
    if mode == AvgMode::Exact && ordered > BASIS_BUDGET {
        return Err(Error::OverBudget {
            count: ordered,
            budget: BASIS_BUDGET,
        });
    }
    let mut per_node = Vec::with_capacity(n);
    for j in 0..n {
        // each β contributes one read per repair whose column space at j
        // is not annihilated by Tr(·β)
        let cols: Vec<Vec<Gf>> = (0..n)
            .filter(|&t| t != j)
            .map(|t| coll.schemes[t].column_values(j))
            .collect();
        let weight = |b: Gf| -> usize {
            cols.iter()
                .filter(|vals| vals.iter().any(|&g| !fld.trace(fld.mul(g, b)).is_zero()))
                .count()
        };
        let cost = |elems: &[Gf]| -> usize { elems.iter().map(|&b| weight(b)).sum() };
        let floor = (0..n)
            .filter(|&t| t != j)
            .map(|t| coll.schemes[t].column_dim(j))
            .sum();
        let (reads, basis) = match mode {
            AvgMode::Exact => {
                let table: Vec<usize> = (0..fld.order()).map(|v| weight(Gf(v))).collect();
                let mut best: Option<(usize, Vec<Gf>)> = None;
                for_each_unordered_basis(&fld, |elems| {
                    let c: usize = elems.iter().map(|b| table[b.0 as usize]).sum();
                    if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                        best = Some((c, elems.to_vec()));
                    }
                });
                let (c, elems) = best.expect("E has a basis");
                (c, SubfieldBasis::new(&fld, elems)?)
            }
            AvgMode::Heuristic => {
                let mut cands = vec![SubfieldBasis::standard(&fld)];
                for t in (0..n).filter(|&t| t != j) {
                    cands.push(dual_extension(
                        &fld,
                        coll.schemes[t].column_space(j).basis(),
                    ));
                }
                let mut best = (usize::MAX, cands[0].clone());
                for b in cands {
                    let c = cost(b.elems());
                    if c < best.0 {
                        best = (c, b);
                    }
                }
                best
            }
        };
        per_node.push(NodeIo {
            node: j,
            reads,
            floor,
            basis,
        });
    }
    Ok(AverageIo {
        mode,
        total: per_node.iter().map(|p| p.reads).sum(),
        n,
        per_node,
        ordered_bases: (mode == AvgMode::Exact).then_some(ordered),
        upper_bound: mode == AvgMode::Heuristic,
    })
}
