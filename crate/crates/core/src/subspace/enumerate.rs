//! Exhaustive enumeration of subspaces of F^N in canonical order.
//!
//! Every s-dimensional subspace has exactly one RREF basis matrix. The
//! enumeration lists those matrices ordered by the matrix read row-major as
//! a base-q integer (first entry most significant, entries ranked by their
//! scalar index in F). The order is materialized once, so the stream can be
//! split into index ranges for parallel consumers.

use super::Subspace;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// Default cap on the number of matrices an enumeration may materialize.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Gaussian binomial [n choose k]_q, or `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// All RREF matrices of shape `dim × ncols` and full rank over F.
#[derive(Debug, Clone)]
pub struct RrefEnumeration {
    ncols: usize,
    dim: usize,
    // scalar indices, one flat dim*ncols block per matrix, sorted
    data: Vec<u32>,
    count: usize,
}

impl RrefEnumeration {
    pub fn new(fld: &Field, ncols: usize, dim: usize, budget: u128) -> Result<Self> {
        if dim > ncols {
            return Err(Error::DimensionOutOfRange { dim, max: ncols });
        }
        let q = fld.q() as u128;
        let count = gaussian_binomial(ncols as u32, dim as u32, q).unwrap_or(u128::MAX);
        if count > budget {
            return Err(Error::OverBudget { count, budget });
        }
        let stride = dim * ncols;
        let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(count as usize);
        let mut pivots: Vec<usize> = (0..dim).collect();
        loop {
            push_pivot_class(&pivots, ncols, fld.q(), &mut blocks);
            if !next_combination(&mut pivots, ncols) {
                break;
            }
        }
        debug_assert_eq!(blocks.len() as u128, count);
        blocks.sort_unstable();
        let mut data = Vec::with_capacity(blocks.len() * stride);
        for b in &blocks {
            data.extend_from_slice(b);
        }
        Ok(RrefEnumeration {
            ncols,
            dim,
            data,
            count: blocks.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The `index`-th matrix as rows of subfield elements.
    pub fn matrix(&self, fld: &Field, index: usize) -> Vec<Vec<Gf>> {
        let stride = self.dim * self.ncols;
        let block = &self.data[index * stride..(index + 1) * stride];
        let scalars = fld.subfield();
        block
            .chunks(self.ncols.max(1))
            .take(self.dim)
            .map(|row| row.iter().map(|&s| scalars[s as usize]).collect())
            .collect()
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn push_pivot_class(pivots: &[usize], ncols: usize, q: u32, out: &mut Vec<Vec<u32>>) {
    let dim = pivots.len();
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| {
            (p + 1..ncols)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (r, c))
        })
        .collect();
    let mut base = vec![0u32; dim * ncols];
    for (r, &p) in pivots.iter().enumerate() {
        base[r * ncols + p] = 1;
    }
    let mut digits = vec![0u32; free.len()];
    loop {
        let mut m = base.clone();
        for (&(r, c), &v) in free.iter().zip(&digits) {
            m[r * ncols + c] = v;
        }
        out.push(m);
        // odometer over q^|free|
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Deterministic stream of all s-dimensional F-subspaces of E.
#[derive(Debug, Clone)]
pub struct SubspaceStream<'a> {
    fld: &'a Field,
    inner: RrefEnumeration,
}

pub fn enumerate_subspaces(fld: &Field, dim: usize) -> Result<SubspaceStream<'_>> {
    if dim > fld.ell() {
        return Err(Error::DimensionOutOfRange {
            dim,
            max: fld.ell(),
        });
    }
    Ok(SubspaceStream {
        fld,
        inner: RrefEnumeration::new(fld, fld.ell(), dim, DEFAULT_BUDGET)?,
    })
}

impl<'a> SubspaceStream<'a> {
    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn get(&self, index: usize) -> Subspace {
        let rows = self.inner.matrix(self.fld, index);
        Subspace::from_reduced(self.fld, rows)
    }

    pub fn range(&self, r: std::ops::Range<usize>) -> impl Iterator<Item = Subspace> + '_ {
        r.map(move |i| self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        self.range(0..self.len())
    }
}
