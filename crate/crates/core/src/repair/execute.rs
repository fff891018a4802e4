use super::{CostReport, RepairScheme};
use crate::code::ErasedCodeword;
use crate::error::{Error, Result};
use crate::gf::{Gf, SubfieldBasis};
use crate::linalg;

/// Where helpers read their sub-symbols from.
pub trait SubSymbolSource {
    /// Basis the node's symbol is stored under.
    fn basis(&self, node: usize) -> Result<&SubfieldBasis>;
    /// Sub-symbol `pos` of node `node`.
    fn read(&mut self, node: usize, pos: usize) -> Result<Gf>;
}

/// What one helper read and shipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperTransfer {
    pub node: usize,
    pub read_positions: Vec<usize>,
    /// The γ whose traces Tr(γ c_j) were shipped: a basis of S_{j→j*}.
    pub gammas: Vec<Gf>,
    pub traces: Vec<Gf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadLog {
    pub target: usize,
    pub helpers: Vec<HelperTransfer>,
}

impl ReadLog {
    pub fn total_reads(&self) -> usize {
        self.helpers.iter().map(|h| h.read_positions.len()).sum()
    }

    pub fn total_transferred(&self) -> usize {
        self.helpers.iter().map(|h| h.traces.len()).sum()
    }

    /// Fails unless every helper read exactly the predicted positions and
    /// shipped exactly its bandwidth.
    pub fn check_against(&self, report: &CostReport) -> Result<()> {
        if self.helpers.len() != report.helpers.len() {
            return Err(Error::TranscriptMismatch(format!(
                "{} helpers logged, {} predicted",
                self.helpers.len(),
                report.helpers.len()
            )));
        }
        for (h, c) in self.helpers.iter().zip(&report.helpers) {
            if h.node != c.node
                || h.read_positions != c.read_positions
                || h.traces.len() != c.bandwidth
            {
                return Err(Error::TranscriptMismatch(format!(
                    "node {}: read {:?} and shipped {}, predicted {:?} and {}",
                    h.node + 1,
                    h.read_positions,
                    h.traces.len(),
                    c.read_positions,
                    c.bandwidth
                )));
            }
        }
        Ok(())
    }
}

/// Runs the scheme against an arbitrary sub-symbol store and returns the
/// recovered symbol at the target.
pub fn repair_from_source(
    scheme: &RepairScheme,
    src: &mut dyn SubSymbolSource,
) -> Result<(Gf, ReadLog)> {
    let fld = scheme.field().clone();
    let ell = fld.ell();
    // b_i = Σ_{j≠j*} Tr(g^(i)_j c_j) = -Tr(g^(i)_{j*} c_{j*})
    let mut sums = vec![Gf::ZERO; ell];
    let mut helpers = Vec::new();
    for j in scheme.helpers() {
        let values = scheme.column_values(j);

        // helper side: traces of an independent subset, from the fewest reads
        let mut rows: Vec<Vec<Gf>> = Vec::new();
        let mut gammas = Vec::new();
        for &v in &values {
            rows.push(fld.coords(v));
            if linalg::rank(&fld, &rows) == rows.len() {
                gammas.push(v);
            } else {
                rows.pop();
            }
        }
        let basis = src.basis(j)?.clone();
        let read_positions = basis.read_support(&fld, &gammas);
        let mut sub = Vec::with_capacity(read_positions.len());
        for &p in &read_positions {
            sub.push(src.read(j, p)?);
        }
        let traces: Vec<Gf> = gammas
            .iter()
            .map(|&g| {
                let w = basis.w_vector(&fld, g);
                read_positions
                    .iter()
                    .zip(&sub)
                    .fold(Gf::ZERO, |acc, (&p, &a)| fld.add(acc, fld.mul(w[p], a)))
            })
            .collect();

        // collector side: every Tr(g^(i)_j c_j) is an F-combination of the shipped ones
        for (i, &v) in values.iter().enumerate() {
            let lambda = linalg::solve_combination(&fld, &rows, &fld.coords(v))
                .expect("column values lie in the span of the shipped basis");
            let t = lambda
                .iter()
                .zip(&traces)
                .fold(Gf::ZERO, |acc, (&l, &t)| fld.add(acc, fld.mul(l, t)));
            sums[i] = fld.add(sums[i], t);
        }
        helpers.push(HelperTransfer {
            node: j,
            read_positions,
            gammas,
            traces,
        });
    }
    let at_target = SubfieldBasis::new(&fld, scheme.column_values(scheme.target()))?;
    let traces: Vec<Gf> = sums.iter().map(|&b| fld.neg(b)).collect();
    let recovered = at_target.trace_recover(&fld, &traces);
    Ok((
        recovered,
        ReadLog {
            target: scheme.target(),
            helpers,
        },
    ))
}

struct ErasedSource<'a> {
    cw: &'a ErasedCodeword,
    basis: &'a SubfieldBasis,
    fld: &'a crate::gf::Field,
}

impl SubSymbolSource for ErasedSource<'_> {
    fn basis(&self, _node: usize) -> Result<&SubfieldBasis> {
        Ok(self.basis)
    }

    fn read(&mut self, node: usize, pos: usize) -> Result<Gf> {
        let c = self.cw.get(node)?;
        Ok(self.basis.vector_rep(self.fld, c)[pos])
    }
}

/// Repairs the single hole of `damaged`, every node storing its symbol under `b`.
pub fn execute_repair(
    scheme: &RepairScheme,
    damaged: &ErasedCodeword,
    b: &SubfieldBasis,
) -> Result<(Gf, ReadLog)> {
    if damaged.len() != scheme.n() {
        return Err(Error::WrongLength {
            expected: scheme.n(),
            got: damaged.len(),
        });
    }
    let holes = damaged.holes();
    if holes != [scheme.target()] {
        return Err(Error::HoleMismatch {
            scheme: scheme.target(),
            holes,
        });
    }
    let fld = scheme.field().clone();
    let mut src = ErasedSource {
        cw: damaged,
        basis: b,
        fld: &fld,
    };
    repair_from_source(scheme, &mut src)
}
