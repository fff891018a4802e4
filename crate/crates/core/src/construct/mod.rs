//! Scheme builders: the subspace-polynomial construction, the naive repair,
//! and per-node basis selection.

mod collection;

pub use collection::{
    average_io, for_each_unordered_basis, ordered_basis_count, AverageIo, AvgMode, NodeIo,
    SchemeCollection, BASIS_BUDGET,
};

use crate::code::RsCode;
use crate::error::{Error, Result};
use crate::gf::{subspace_polynomial, Field, Gf, Poly, SubfieldBasis};
use crate::linalg;
use crate::repair::RepairScheme;
use crate::subspace::Subspace;

/// m with r = q^m, if it exists.
pub fn redundancy_exponent(r: usize, q: u32) -> Option<usize> {
    let q = q as usize;
    let mut m = 0;
    let mut v = 1usize;
    while v < r {
        v = v.checked_mul(q)?;
        m += 1;
    }
    (v == r).then_some(m)
}

/// span_F of the first m reference basis elements (1, x, ..., x^{m-1}).
pub fn default_w(fld: &Field, m: usize) -> Result<Subspace> {
    if m > fld.ell() {
        return Err(Error::DimensionOutOfRange {
            dim: m,
            max: fld.ell(),
        });
    }
    Ok(Subspace::span(fld, &fld.default_basis()[..m]))
}

/// g_i(x) = L_W(β_i (x - α_{j*})) / (x - α_{j*}) for a full-length code with
/// r = q^m and an m-dimensional W.
pub fn construction_iii(
    code: &RsCode,
    w: &Subspace,
    basis: &SubfieldBasis,
    target: usize,
) -> Result<RepairScheme> {
    let fld = code.field().clone();
    if !code.is_full_length() {
        return Err(Error::Unsupported(
            "the construction needs a full-length code".into(),
        ));
    }
    let m = redundancy_exponent(code.r(), fld.q()).ok_or(Error::RedundancyNotPowerOfQ {
        r: code.r(),
        q: fld.q(),
    })?;
    if m == 0 || m >= fld.ell() {
        return Err(Error::InvalidCode(format!(
            "need r = q^m with 1 <= m < {}, got m = {m}",
            fld.ell()
        )));
    }
    if w.field_id() != fld.id() {
        return Err(Error::MixedFields);
    }
    if w.dim() != m {
        return Err(Error::WrongSubspaceDim {
            expected: m,
            got: w.dim(),
        });
    }
    if target >= code.n() {
        return Err(Error::PositionOutOfRange {
            pos: target,
            n: code.n(),
        });
    }
    let a = code.points()[target];
    let l = subspace_polynomial(&fld, w);
    let polys = basis
        .elems()
        .iter()
        .map(|&b| {
            let num = l.compose_affine(&fld, b, fld.neg(fld.mul(b, a)));
            let (quot, rem) = num.div_linear(&fld, a);
            debug_assert!(rem.is_zero());
            quot
        })
        .collect();
    RepairScheme::from_polys(code.clone(), target, polys)
}

/// Reads whole symbols from the k helpers in `helpers`:
/// g_i(x) = β_i Π_{a ∉ helpers ∪ {j*}} (x - α_a) with β the reference basis.
pub fn naive_scheme(code: &RsCode, target: usize, helpers: &[usize]) -> Result<RepairScheme> {
    let fld = code.field().clone();
    let n = code.n();
    if let Some(&pos) = helpers.iter().chain([&target]).find(|&&p| p >= n) {
        return Err(Error::PositionOutOfRange { pos, n });
    }
    let mut sorted = helpers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != code.k() || sorted.contains(&target) {
        return Err(Error::InvalidCode(format!(
            "naive repair needs k = {} distinct helpers other than the target",
            code.k()
        )));
    }
    let vanish = (0..n)
        .filter(|j| *j != target && !sorted.contains(j))
        .fold(Poly::constant(Gf::ONE), |acc, j| {
            acc.mul(&fld, &Poly::linear_root(&fld, code.points()[j]))
        });
    let polys = fld
        .default_basis()
        .iter()
        .map(|&b| vanish.scale(&fld, b))
        .collect();
    RepairScheme::from_polys(code.clone(), target, polys)
}

/// A basis under which helper j reads exactly dim S_{j→j*} sub-symbols:
/// extend a basis of S_{j→j*} by the least field elements that raise the
/// rank, then take the trace-dual.
pub fn optimal_local_basis(scheme: &RepairScheme, j: usize) -> SubfieldBasis {
    let fld = scheme.field();
    let s = scheme.column_space(j);
    dual_extension(fld, s.basis())
}

pub(crate) fn dual_extension(fld: &Field, start: &[Gf]) -> SubfieldBasis {
    let mut elems = start.to_vec();
    for a in fld.nonzero() {
        if elems.len() == fld.ell() {
            break;
        }
        elems.push(a);
        if linalg::rank_of_elements(fld, &elems) < elems.len() {
            elems.pop();
        }
    }
    SubfieldBasis::new(fld, elems)
        .expect("greedy extension is a basis")
        .dual_basis()
}
