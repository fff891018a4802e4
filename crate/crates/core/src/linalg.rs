//! Gaussian elimination over a finite field.
//!
//! Every routine works on rows of [`Gf`] values and uses the arithmetic of
//! the supplied [`Field`]. Because F is a subfield of E, the same code serves
//! F-linear algebra (entries in F) and E-linear algebra (arbitrary entries):
//! elimination never leaves the subfield the entries started in.

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// Reduces `rows` in place to reduced row-echelon form, drops zero rows and
/// returns the pivot column of each remaining row.
pub fn rref(fld: &Field, rows: &mut Vec<Vec<Gf>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = fld.inv(rows[r][c]);
        if inv != Gf::ONE {
            for x in rows[r].iter_mut() {
                *x = fld.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let f = rows[i][c];
            if f.is_zero() {
                continue;
            }
            let nf = fld.neg(f);
            for j in c..ncols {
                let v = rows[r][j];
                if !v.is_zero() {
                    rows[i][j] = fld.add(rows[i][j], fld.mul(nf, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(fld: &Field, rows: &[Vec<Gf>]) -> usize {
    let mut m = rows.to_vec();
    rref(fld, &mut m).len()
}

/// Rank over F of a list of elements of E.
pub fn rank_of_elements(fld: &Field, elems: &[Gf]) -> usize {
    let rows: Vec<Vec<Gf>> = elems.iter().map(|&a| fld.coords(a)).collect();
    rank(fld, &rows)
}

/// Index of the first element lying in the F-span of its predecessors,
/// together with the rank of the prefix before it.
pub fn first_dependent(fld: &Field, elems: &[Gf]) -> Option<(usize, usize)> {
    let mut rows: Vec<Vec<Gf>> = Vec::new();
    for (i, &a) in elems.iter().enumerate() {
        rows.push(fld.coords(a));
        if rank(fld, &rows) < rows.len() {
            return Some((i, i));
        }
    }
    None
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(fld: &Field, m: &[Vec<Gf>]) -> Option<Vec<Vec<Gf>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Gf>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Gf::ONE } else { Gf::ZERO }));
            r
        })
        .collect();
    let pivots = rref(fld, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space {x : rows · x = 0} of a matrix with
/// `ncols` columns.
pub fn null_space(fld: &Field, rows: &[Vec<Gf>], ncols: usize) -> Vec<Vec<Gf>> {
    let mut m = rows.to_vec();
    let pivots = rref(fld, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Gf::ZERO; ncols];
            v[f] = Gf::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = fld.neg(m[r][f]);
            }
            v
        })
        .collect()
}

/// Coefficients `a` with Σ a_t · vectors[t] = target, if any exist.
pub fn solve_combination(fld: &Field, vectors: &[Vec<Gf>], target: &[Gf]) -> Option<Vec<Gf>> {
    let k = vectors.len();
    // one equation per coordinate: [v_0 .. v_{k-1} | target]
    let mut aug: Vec<Vec<Gf>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Gf> = vectors.iter().map(|v| v[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let pivots = rref(fld, &mut aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut sol = vec![Gf::ZERO; k];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = aug[r][k];
    }
    Some(sol)
}

/// The trace-dual of an F-basis of E: the elements δ_j with
/// Tr(β_i δ_j) = [i = j]. Computed as M^{-1}·β for the Gram matrix
/// M_ik = Tr(β_i β_k), so it needs nothing but the trace.
pub fn dual_elements(fld: &Field, elems: &[Gf]) -> Result<Vec<Gf>> {
    let ell = fld.ell();
    if elems.len() != ell {
        return Err(Error::WrongLength {
            expected: ell,
            got: elems.len(),
        });
    }
    let gram: Vec<Vec<Gf>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| fld.trace(fld.mul(a, b))).collect())
        .collect();
    let Some(inv) = inverse(fld, &gram) else {
        let (index, rank) = first_dependent(fld, elems).unwrap_or((ell - 1, ell - 1));
        return Err(Error::Dependent { index, rank });
    };
    Ok(inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(elems)
                .fold(Gf::ZERO, |acc, (&c, &b)| fld.add(acc, fld.mul(c, b)))
        })
        .collect())
}
