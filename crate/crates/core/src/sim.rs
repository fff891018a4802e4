//! A toy storage cluster: n nodes, each holding the ℓ sub-symbols of its
//! codeword symbol under its own basis. Repairs count what is read from
//! disk and what crosses the network, and cross-check both against the
//! analytic cost report.

use serde::Serialize;

use crate::code::{Codeword, RsCode};
use crate::error::{Error, Result};
use crate::gf::{Gf, SubfieldBasis};
use crate::repair::{repair_from_source, RepairScheme, SchemeCode, SubSymbolSource};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    code: RsCode,
    bases: Vec<SubfieldBasis>,
    // None for a failed node
    nodes: Vec<Option<Vec<Gf>>>,
}

impl Cluster {
    /// Stores `cw`; `bases` defaults to the reference basis at every node.
    pub fn new(code: RsCode, bases: Option<Vec<SubfieldBasis>>, cw: &Codeword) -> Result<Self> {
        let fld = code.field().clone();
        let bases = bases.unwrap_or_else(|| vec![SubfieldBasis::standard(&fld); code.n()]);
        if bases.len() != code.n() {
            return Err(Error::WrongLength {
                expected: code.n(),
                got: bases.len(),
            });
        }
        if !code.contains(cw.symbols()) {
            return Err(Error::InvalidCode("stored word is not a codeword".into()));
        }
        let nodes = cw
            .symbols()
            .iter()
            .zip(&bases)
            .map(|(&c, b)| Some(b.vector_rep(&fld, c)))
            .collect();
        Ok(Cluster { code, bases, nodes })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn bases(&self) -> &[SubfieldBasis] {
        &self.bases
    }

    pub fn fail(&mut self, node: usize) -> Result<()> {
        let n = self.nodes.len();
        *self
            .nodes
            .get_mut(node)
            .ok_or(Error::PositionOutOfRange { pos: node, n })? = None;
        Ok(())
    }

    pub fn failed(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&j| self.nodes[j].is_none())
            .collect()
    }

    pub fn symbol(&self, node: usize) -> Option<Gf> {
        let sub = self.nodes.get(node)?.as_ref()?;
        Some(self.bases[node].from_rep(self.code.field(), sub))
    }

    /// The stored codeword, if every node is up.
    pub fn codeword(&self) -> Option<Codeword> {
        (0..self.nodes.len())
            .map(|j| self.symbol(j))
            .collect::<Option<Vec<_>>>()
            .map(Codeword::new)
    }

    pub fn is_consistent(&self) -> bool {
        self.codeword()
            .is_some_and(|cw| self.code.contains(cw.symbols()))
    }
}

impl SubSymbolSource for Cluster {
    fn basis(&self, node: usize) -> Result<&SubfieldBasis> {
        self.bases.get(node).ok_or(Error::PositionOutOfRange {
            pos: node,
            n: self.bases.len(),
        })
    }

    fn read(&mut self, node: usize, pos: usize) -> Result<Gf> {
        let sub = self
            .nodes
            .get(node)
            .ok_or(Error::PositionOutOfRange {
                pos: node,
                n: self.nodes.len(),
            })?
            .as_ref()
            .ok_or(Error::NodeUnavailable(node))?;
        Ok(sub[pos])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HelperTranscript {
    /// 1-based.
    pub node: usize,
    pub reads: usize,
    /// 1-based sub-symbol positions.
    pub read_positions: Vec<usize>,
    pub transferred: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairTranscript {
    /// 1-based.
    pub failed: usize,
    pub helpers: Vec<HelperTranscript>,
    pub total_reads: usize,
    pub total_transferred: usize,
    /// Digits of the recovered symbol, low to high.
    pub recovered: Vec<u32>,
    pub success: bool,
}

impl RepairTranscript {
    pub fn to_table(&self) -> String {
        let mut s = format!("repair of node {}\n", self.failed);
        s.push_str("helper  reads  transferred  read_positions\n");
        for h in &self.helpers {
            let pos: Vec<String> = h.read_positions.iter().map(usize::to_string).collect();
            s.push_str(&format!(
                "{:>6}  {:>5}  {:>11}  {{{}}}\n",
                h.node,
                h.reads,
                h.transferred,
                pos.join(",")
            ));
        }
        s.push_str(&format!(
            "total reads {}, total transferred {}, recovered {:?}, success {}\n",
            self.total_reads, self.total_transferred, self.recovered, self.success
        ));
        s
    }
}

/// Repairs the failed node with `scheme`, checks the transcript against the
/// analytic costs under the cluster's bases, and re-installs the symbol.
pub fn simulate_repair(cluster: &mut Cluster, scheme: &RepairScheme) -> Result<RepairTranscript> {
    if scheme.field().as_ref() != cluster.code.field().as_ref() {
        return Err(Error::MixedFields);
    }
    if scheme.code() != &SchemeCode::Rs(cluster.code.clone()) {
        return Err(Error::InvalidCode(
            "scheme was built for a different code".into(),
        ));
    }
    let failed = cluster.failed();
    if failed != [scheme.target()] {
        return Err(Error::HoleMismatch {
            scheme: scheme.target(),
            holes: failed,
        });
    }
    let (recovered, log) = repair_from_source(scheme, cluster)?;
    let report = scheme.io_cost_per_node(&cluster.bases)?;
    log.check_against(&report)?;
    if log.total_reads() != report.total_reads || log.total_transferred() != report.total_bandwidth
    {
        return Err(Error::TranscriptMismatch("totals differ".into()));
    }
    let fld = cluster.code.field().clone();
    let t = scheme.target();
    cluster.nodes[t] = Some(cluster.bases[t].vector_rep(&fld, recovered));
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
        recovered: fld.digits(recovered),
        success: cluster.is_consistent(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construction_iii, default_w, naive_scheme};
    use crate::gf::{Field, Poly};
    use std::sync::Arc;

    fn setup() -> (RsCode, Codeword) {
        let f = Arc::new(Field::prime_extension(2, 2).unwrap());
        let code = RsCode::full_length(f.clone(), 2).unwrap();
        let msg = Poly::new(vec![Gf(2), Gf(3)]);
        let cw = code.encode(&msg).unwrap();
        (code, cw)
    }

    #[test]
    fn optimal_repair_counts() {
        let (code, cw) = setup();
        let f = code.field().clone();
        let s = construction_iii(
            &code,
            &default_w(&f, 1).unwrap(),
            &SubfieldBasis::standard(&f),
            2,
        )
        .unwrap();
        let mut cl = Cluster::new(code, None, &cw).unwrap();
        let snapshot = cl.clone();
        cl.fail(2).unwrap();
        let t = simulate_repair(&mut cl, &s).unwrap();
        assert_eq!(t.total_transferred, 3);
        assert_eq!(t.total_reads, 4);
        assert!(t.success);
        assert_eq!(cl, snapshot);
    }

    #[test]
    fn naive_repair_counts() {
        let (code, cw) = setup();
        let s = naive_scheme(&code, 2, &[0, 1]).unwrap();
        let mut cl = Cluster::new(code, None, &cw).unwrap();
        let snapshot = cl.clone();
        cl.fail(2).unwrap();
        let t = simulate_repair(&mut cl, &s).unwrap();
        assert_eq!((t.total_transferred, t.total_reads), (4, 4));
        assert_eq!(cl, snapshot);
    }

    #[test]
    fn wrong_hole_is_rejected() {
        let (code, cw) = setup();
        let s = naive_scheme(&code, 2, &[0, 1]).unwrap();
        let mut cl = Cluster::new(code, None, &cw).unwrap();
        cl.fail(1).unwrap();
        assert!(matches!(
            simulate_repair(&mut cl, &s),
            Err(Error::HoleMismatch { .. })
        ));
    }
}
