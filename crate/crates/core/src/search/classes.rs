use crate::code::RsCode;
use crate::error::{Error, Result};
use crate::gf::{Gf, Poly, SubfieldBasis};
use crate::linalg;
use crate::repair::RepairScheme;
use crate::subspace::RrefEnumeration;

use super::parallel::par_map;

/// The ℓ-dimensional F-subspaces of the polynomials of degree < r over E.
/// A polynomial is the F-vector of its coefficients' reference coordinates,
/// coefficient-major.
#[derive(Debug, Clone)]
pub struct ClassSpace {
    code: RsCode,
    target: usize,
    enumeration: RrefEnumeration,
}

/// One scheme class: a canonical F-basis of its polynomial span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeClass {
    pub index: usize,
    pub polys: Vec<Poly>,
}

/// Costs of a valid class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEval {
    pub index: usize,
    pub bandwidth: usize,
    pub io: usize,
    /// Column dimension per helper, in helper order.
    pub dims: Vec<usize>,
}

impl ClassSpace {
    pub fn new(code: RsCode, target: usize, budget: u128) -> Result<Self> {
        if !code.is_full_length() {
            return Err(Error::Unsupported(
                "class enumeration is over the dual of a full-length code".into(),
            ));
        }
        if target >= code.n() {
            return Err(Error::PositionOutOfRange {
                pos: target,
                n: code.n(),
            });
        }
        let fld = code.field().clone();
        let enumeration = RrefEnumeration::new(&fld, code.r() * fld.ell(), fld.ell(), budget)?;
        Ok(ClassSpace {
            code,
            target,
            enumeration,
        })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Total classes, valid or not.
    pub fn len(&self) -> usize {
        self.enumeration.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enumeration.is_empty()
    }

    pub fn class(&self, index: usize) -> SchemeClass {
        let fld = self.code.field();
        let ell = fld.ell();
        let polys = self
            .enumeration
            .matrix(fld, index)
            .iter()
            .map(|row| {
                Poly::new(
                    row.chunks(ell)
                        .map(|c| fld.from_coords(c))
                        .collect::<Vec<Gf>>(),
                )
            })
            .collect();
        SchemeClass { index, polys }
    }

    /// The class as a scheme, if its values at the target span E.
    pub fn scheme(&self, index: usize) -> Option<RepairScheme> {
        let class = self.class(index);
        let fld = self.code.field();
        let a = self.code.points()[self.target];
        let at: Vec<Gf> = class.polys.iter().map(|g| g.eval(fld, a)).collect();
        if linalg::rank_of_elements(fld, &at) < fld.ell() {
            return None;
        }
        // every polynomial of degree < r is a dual codeword at full length
        Some(RepairScheme::from_polys_trusted(
            self.code.clone(),
            self.target,
            class.polys,
        ))
    }

    pub fn evaluate(&self, index: usize, basis: &SubfieldBasis) -> Option<ClassEval> {
        let s = self.scheme(index)?;
        let dims: Vec<usize> = s.helpers().map(|j| s.column_dim(j)).collect();
        Some(ClassEval {
            index,
            bandwidth: dims.iter().sum(),
            io: s.total_reads(basis),
            dims,
        })
    }

    /// Evaluates every class, in index order.
    pub fn scan(&self, basis: &SubfieldBasis, workers: usize) -> Vec<Option<ClassEval>> {
        par_map(self.len(), workers, |i| self.evaluate(i, basis))
    }
}
