//! F-linear subspaces of E in canonical form.
//!
//! A [`Subspace`] stores the reduced row-echelon basis of the coordinate
//! vectors (with respect to the field's reference basis) of its elements, so
//! equal subspaces have equal representations.

mod enumerate;

pub use enumerate::{
    enumerate_subspaces, gaussian_binomial, RrefEnumeration, SubspaceStream, DEFAULT_BUDGET,
};

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field_id: u64,
    rows: Vec<Vec<Gf>>,
    // elements of E whose coordinates are `rows`
    basis: Vec<Gf>,
}

impl Subspace {
    fn from_reduced(fld: &Field, rows: Vec<Vec<Gf>>) -> Self {
        let basis = rows.iter().map(|r| fld.from_coords(r)).collect();
        Subspace {
            field_id: fld.id(),
            rows,
            basis,
        }
    }

    /// span_F(gens); the empty list spans {0}.
    pub fn span(fld: &Field, gens: &[Gf]) -> Self {
        let mut rows: Vec<Vec<Gf>> = gens.iter().map(|&g| fld.coords(g)).collect();
        linalg::rref(fld, &mut rows);
        Self::from_reduced(fld, rows)
    }

    pub fn zero(fld: &Field) -> Self {
        Self::from_reduced(fld, Vec::new())
    }

    pub fn full(fld: &Field) -> Self {
        Self::span(fld, fld.default_basis())
    }

    /// Accepts a matrix only if it already is the canonical RREF basis of
    /// its row space with entries in F.
    pub fn from_rref_rows(fld: &Field, rows: Vec<Vec<Gf>>) -> Result<Self> {
        let ell = fld.ell();
        if rows.len() > ell {
            return Err(Error::NonCanonical(format!(
                "{} rows exceed dimension {ell}",
                rows.len()
            )));
        }
        for r in &rows {
            if r.len() != ell {
                return Err(Error::NonCanonical(format!(
                    "row of length {} in a space of dimension {ell}",
                    r.len()
                )));
            }
            if let Some(x) = r.iter().find(|&&x| !fld.in_subfield(x)) {
                return Err(Error::NonCanonical(format!(
                    "entry {} is not in the subfield",
                    x.0
                )));
            }
        }
        let mut reduced = rows.clone();
        linalg::rref(fld, &mut reduced);
        if reduced != rows {
            return Err(Error::NonCanonical(
                "rows are dependent or not in reduced row-echelon form".into(),
            ));
        }
        Ok(Self::from_reduced(fld, rows))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Gf>] {
        &self.rows
    }

    /// The canonical F-basis (elements of E matching the RREF rows).
    pub fn basis(&self) -> &[Gf] {
        &self.basis
    }

    pub fn field_id(&self) -> u64 {
        self.field_id
    }

    fn check_field(&self, fld: &Field) -> Result<()> {
        if self.field_id == fld.id() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn contains(&self, fld: &Field, a: Gf) -> bool {
        let mut rows = self.rows.clone();
        rows.push(fld.coords(a));
        linalg::rank(fld, &rows) == self.rows.len()
    }

    /// All q^dim elements, in the order of their coefficient vectors.
    pub fn elements(&self, fld: &Field) -> Vec<Gf> {
        let scalars = fld.subfield();
        let q = scalars.len();
        let s = self.basis.len();
        let total = q.pow(s as u32);
        (0..total)
            .map(|mut idx| {
                let mut acc = Gf::ZERO;
                for &b in &self.basis {
                    let c = scalars[idx % q];
                    idx /= q;
                    acc = fld.add(acc, fld.mul(c, b));
                }
                acc
            })
            .collect()
    }

    /// ρ·S = {ρv : v ∈ S}.
    pub fn scale(&self, fld: &Field, rho: Gf) -> Result<Self> {
        self.check_field(fld)?;
        if rho.is_zero() {
            return Err(Error::ZeroElement("subspace multiplier"));
        }
        let gens: Vec<Gf> = self.basis.iter().map(|&b| fld.mul(rho, b)).collect();
        Ok(Self::span(fld, &gens))
    }

    /// K/γ = {α : Tr(γα) = 0}, the kernel of the functional Tr(γ·).
    pub fn kernel_quotient(fld: &Field, gamma: Gf) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroElement("kernel_quotient"));
        }
        let w: Vec<Gf> = fld
            .default_basis()
            .iter()
            .map(|&e| fld.trace(fld.mul(gamma, e)))
            .collect();
        let mut rows = linalg::null_space(fld, &[w], fld.ell());
        linalg::rref(fld, &mut rows);
        Ok(Self::from_reduced(fld, rows))
    }

    /// Set intersection. The empty family intersects to the whole field.
    pub fn intersect(fld: &Field, spaces: &[Subspace]) -> Result<Self> {
        let ell = fld.ell();
        let mut annihilators: Vec<Vec<Gf>> = Vec::new();
        for s in spaces {
            s.check_field(fld)?;
            if s.dim() == 0 {
                return Ok(Self::zero(fld));
            }
            annihilators.extend(linalg::null_space(fld, &s.rows, ell));
        }
        if annihilators.is_empty() {
            return Ok(Self::full(fld));
        }
        let mut rows = linalg::null_space(fld, &annihilators, ell);
        linalg::rref(fld, &mut rows);
        Ok(Self::from_reduced(fld, rows))
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subspace_of(&self, fld: &Field, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(fld, b))
    }
}

/// Least nonzero γ (in element order) such that (a_i + γ b_i) is an F-basis
/// of E, together with that basis. `b` must be a basis; `a` must have the
/// same length.
pub fn basis_shift(fld: &Field, a: &[Gf], b: &[Gf]) -> Result<(Gf, Vec<Gf>)> {
    let ell = fld.ell();
    for v in [a, b] {
        if v.len() != ell {
            return Err(Error::WrongLength {
                expected: ell,
                got: v.len(),
            });
        }
    }
    if let Some((index, rank)) = linalg::first_dependent(fld, b) {
        return Err(Error::Dependent { index, rank });
    }
    for gamma in fld.nonzero() {
        let shifted: Vec<Gf> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| fld.add(x, fld.mul(gamma, y)))
            .collect();
        if linalg::rank_of_elements(fld, &shifted) == ell {
            return Ok((gamma, shifted));
        }
    }
    unreachable!("a shift exists for every basis b")
}
