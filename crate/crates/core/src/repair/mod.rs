//! Linear trace repair schemes for a single erased position.
//!
//! A scheme for position j* is a set of ℓ dual codewords g^(1..ℓ) whose
//! values at j* form an F-basis of E. Helper j contributes the traces
//! Tr(g^(i)_j c_j), of which only dim S_{j→j*} are independent, where
//! S_{j→j*} = span_F{g^(i)_j} is the column-space at j.

mod cost;
mod execute;
mod rotational;

use std::sync::Arc;

pub use cost::{CostReport, HelperCost};
pub use execute::{execute_repair, repair_from_source, HelperTransfer, ReadLog, SubSymbolSource};
pub use rotational::{is_rotational, lemma7_criterion, RotationalWitness};

use crate::code::{LinearCode, RsCode};
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, Poly, SubfieldBasis};
use crate::linalg;
use crate::subspace::Subspace;

/// The code a scheme repairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeCode {
    Rs(RsCode),
    Linear(LinearCode),
}

impl SchemeCode {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            SchemeCode::Rs(c) => c.field(),
            SchemeCode::Linear(c) => c.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SchemeCode::Rs(c) => c.n(),
            SchemeCode::Linear(c) => c.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            SchemeCode::Rs(c) => c.k(),
            SchemeCode::Linear(c) => c.k(),
        }
    }

    pub fn is_full_length(&self) -> bool {
        match self {
            SchemeCode::Rs(c) => c.is_full_length(),
            SchemeCode::Linear(c) => c.is_full_length(),
        }
    }

    pub fn contains(&self, word: &[Gf]) -> bool {
        match self {
            SchemeCode::Rs(c) => c.contains(word),
            SchemeCode::Linear(c) => c.contains(word),
        }
    }

    fn dual_contains(&self, word: &[Gf]) -> bool {
        match self {
            SchemeCode::Rs(c) => c.dual_contains(word),
            SchemeCode::Linear(c) => c.dual_contains(word),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairScheme {
    code: SchemeCode,
    target: usize,
    polys: Option<Vec<Poly>>,
    // words[i][j] = g^(i)_j
    words: Vec<Vec<Gf>>,
}

impl RepairScheme {
    /// Scheme for an RS code from ℓ polynomials g_i, with g^(i)_j = g_i(α_j).
    pub fn from_polys(code: RsCode, target: usize, polys: Vec<Poly>) -> Result<Self> {
        let fld = code.field().clone();
        let words = polys
            .iter()
            .map(|g| code.points().iter().map(|&a| g.eval(&fld, a)).collect())
            .collect();
        Self::validated(SchemeCode::Rs(code), target, Some(polys), words)
    }

    /// Scheme for a generic linear code from ℓ dual codewords given verbatim.
    pub fn from_words(code: LinearCode, target: usize, words: Vec<Vec<Gf>>) -> Result<Self> {
        Self::validated(SchemeCode::Linear(code), target, None, words)
    }

    /// Skips dual-membership checks; the caller guarantees them (used by
    /// exhaustive search, where membership holds by construction).
    pub(crate) fn from_polys_trusted(code: RsCode, target: usize, polys: Vec<Poly>) -> Self {
        let fld = code.field().clone();
        let words = polys
            .iter()
            .map(|g| code.points().iter().map(|&a| g.eval(&fld, a)).collect())
            .collect();
        RepairScheme {
            code: SchemeCode::Rs(code),
            target,
            polys: Some(polys),
            words,
        }
    }

    fn validated(
        code: SchemeCode,
        target: usize,
        polys: Option<Vec<Poly>>,
        words: Vec<Vec<Gf>>,
    ) -> Result<Self> {
        let fld = code.field().clone();
        let n = code.n();
        if target >= n {
            return Err(Error::PositionOutOfRange { pos: target, n });
        }
        if words.len() != fld.ell() {
            return Err(Error::WrongLength {
                expected: fld.ell(),
                got: words.len(),
            });
        }
        for (index, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(Error::WrongLength {
                    expected: n,
                    got: w.len(),
                });
            }
            if let Some(&bad) = w.iter().find(|a| a.0 >= fld.order()) {
                return Err(Error::ElementOutOfRange(bad.0));
            }
            if !code.dual_contains(w) {
                return Err(Error::NotDual { index });
            }
        }
        let scheme = RepairScheme {
            code,
            target,
            polys,
            words,
        };
        let rank = linalg::rank_of_elements(&fld, &scheme.column_values(target));
        if rank < fld.ell() {
            return Err(Error::RankDeficient {
                rank,
                needed: fld.ell(),
            });
        }
        Ok(scheme)
    }

    pub fn code(&self) -> &SchemeCode {
        &self.code
    }

    pub fn rs_code(&self) -> Option<&RsCode> {
        match &self.code {
            SchemeCode::Rs(c) => Some(c),
            SchemeCode::Linear(_) => None,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.code.field()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn polys(&self) -> Option<&[Poly]> {
        self.polys.as_deref()
    }

    pub fn words(&self) -> &[Vec<Gf>] {
        &self.words
    }

    pub fn helpers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| j != self.target)
    }

    /// (g^(1)_j, ..., g^(ℓ)_j).
    pub fn column_values(&self, j: usize) -> Vec<Gf> {
        self.words.iter().map(|w| w[j]).collect()
    }

    /// S_{j→j*}; the whole field at j = j*.
    pub fn column_space(&self, j: usize) -> Subspace {
        Subspace::span(self.field(), &self.column_values(j))
    }

    /// Column-spaces at every position, the target included.
    pub fn column_spaces(&self) -> Vec<Subspace> {
        (0..self.n()).map(|j| self.column_space(j)).collect()
    }

    pub fn column_dim(&self, j: usize) -> usize {
        linalg::rank_of_elements(self.field(), &self.column_values(j))
    }

    /// Σ_{j≠j*} dim S_{j→j*}, in sub-symbols.
    pub fn bandwidth(&self) -> usize {
        self.helpers().map(|j| self.column_dim(j)).sum()
    }

    /// Sub-symbol positions read at helper j under basis `b`.
    pub fn read_positions(&self, j: usize, b: &SubfieldBasis) -> Vec<usize> {
        b.read_support(self.field(), &self.column_values(j))
    }

    /// Cost when every node stores its symbol under the same basis.
    pub fn io_cost(&self, b: &SubfieldBasis) -> CostReport {
        CostReport::build(self, |_| b)
    }

    /// Cost with a basis per node (indexed by position).
    pub fn io_cost_per_node(&self, bases: &[SubfieldBasis]) -> Result<CostReport> {
        if bases.len() != self.n() {
            return Err(Error::WrongLength {
                expected: self.n(),
                got: bases.len(),
            });
        }
        Ok(CostReport::build(self, |j| &bases[j]))
    }

    /// Total reads under `b` without building a report.
    pub fn total_reads(&self, b: &SubfieldBasis) -> usize {
        self.helpers()
            .map(|j| self.read_positions(j, b).len())
            .sum()
    }

    /// The equivalent scheme for position 0 (α_1 = 0) with h_i(x) = g_i(x + α_{j*}).
    pub fn translate_to_first(&self) -> Result<RepairScheme> {
        let (Some(code), Some(polys)) = (self.rs_code(), self.polys()) else {
            return Err(Error::Unsupported(
                "translation needs a polynomial scheme on an RS code".into(),
            ));
        };
        if !code.is_full_length() || code.points()[0] != Gf::ZERO {
            return Err(Error::Unsupported(
                "translation needs a full-length code with α_1 = 0".into(),
            ));
        }
        let shift = code.points()[self.target];
        let fld = code.field().clone();
        let shifted = polys.iter().map(|g| g.shift(&fld, shift)).collect();
        RepairScheme::from_polys(code.clone(), 0, shifted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<Field> {
        Arc::new(Field::new(2, 1, 2, Some(&[1, 1, 1])).unwrap())
    }

    #[test]
    fn rejects_invalid_schemes() {
        let f = f4();
        let code = RsCode::full_length(f.clone(), 2).unwrap();
        let same = vec![Poly::constant(Gf::ONE), Poly::constant(Gf::ONE)];
        assert_eq!(
            RepairScheme::from_polys(code.clone(), 0, same),
            Err(Error::RankDeficient { rank: 1, needed: 2 })
        );
        let deg_r = vec![
            Poly::constant(Gf::ONE),
            Poly::new(vec![Gf(0), Gf(0), Gf(1)]),
        ];
        assert_eq!(
            RepairScheme::from_polys(code.clone(), 0, deg_r),
            Err(Error::NotDual { index: 1 })
        );
        let ok = vec![Poly::constant(Gf::ONE), Poly::constant(f.primitive())];
        let s = RepairScheme::from_polys(code.clone(), 0, ok).unwrap();
        // constants: every helper gets the whole field
        assert_eq!(s.bandwidth(), 6);
        assert_eq!(s.column_space(0).dim(), 2);
        assert!(RepairScheme::from_polys(code, 4, vec![]).is_err());
    }
}
