use std::collections::HashMap;

use super::RepairScheme;
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::subspace::{enumerate_subspaces, Subspace};

/// A common subspace S with S_{j→j*} = ρ_j S, the ρ_j covering E* exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationalWitness {
    pub base: Subspace,
    /// (helper position, ρ_j), in helper order.
    pub multipliers: Vec<(usize, Gf)>,
}

/// Searches for a rotational witness. S is fixed to the first helper's
/// column-space (any valid S is a multiple of it), then helpers are matched
/// to distinct multipliers by augmenting paths.
pub fn is_rotational(scheme: &RepairScheme) -> Result<Option<RotationalWitness>> {
    if !scheme.code().is_full_length() {
        return Err(Error::Unsupported(
            "rotationality is defined for full-length codes".into(),
        ));
    }
    let fld = scheme.field().clone();
    let helpers: Vec<usize> = scheme.helpers().collect();
    let spaces: Vec<Subspace> = helpers.iter().map(|&j| scheme.column_space(j)).collect();
    let base = spaces[0].clone();
    if spaces.iter().any(|s| s.dim() != base.dim()) {
        return Ok(None);
    }
    let units: Vec<Gf> = fld.nonzero().collect();
    let mut by_space: HashMap<Subspace, Vec<usize>> = HashMap::new();
    for (u, &rho) in units.iter().enumerate() {
        by_space.entry(base.scale(&fld, rho)?).or_default().push(u);
    }
    let mut cands: Vec<&[usize]> = Vec::with_capacity(spaces.len());
    for s in &spaces {
        match by_space.get(s) {
            Some(c) => cands.push(c),
            None => return Ok(None),
        }
    }
    let Some(assign) = perfect_matching(&cands, units.len()) else {
        return Ok(None);
    };
    Ok(Some(RotationalWitness {
        base,
        multipliers: helpers
            .iter()
            .zip(assign)
            .map(|(&j, u)| (j, units[u]))
            .collect(),
    }))
}

// Kuhn's algorithm; returns the right vertex matched to each left vertex.
fn perfect_matching(adj: &[&[usize]], nright: usize) -> Option<Vec<usize>> {
    if adj.len() != nright {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; nright];
    fn augment(u: usize, adj: &[&[usize]], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..adj.len() {
        let mut seen = vec![false; nright];
        if !augment(u, adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assign = vec![0; adj.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            assign[*u] = v;
        }
    }
    Some(assign)
}

/// For schemes whose helper column-spaces all have dimension ℓ-1: whether
/// every (ℓ-1)-dimensional subspace occurs exactly q-1 times among them.
/// `None` when some helper has another dimension.
pub fn lemma7_criterion(scheme: &RepairScheme) -> Result<Option<bool>> {
    if !scheme.code().is_full_length() {
        return Err(Error::Unsupported(
            "the hyperplane criterion applies to full-length codes".into(),
        ));
    }
    let fld = scheme.field().clone();
    let ell = fld.ell();
    if ell == 0 {
        return Ok(None);
    }
    let mut counts: HashMap<Subspace, usize> = HashMap::new();
    for j in scheme.helpers() {
        let s = scheme.column_space(j);
        if s.dim() != ell - 1 {
            return Ok(None);
        }
        *counts.entry(s).or_default() += 1;
    }
    let want = fld.q() as usize - 1;
    let hyperplanes = enumerate_subspaces(&fld, ell - 1)?;
    let ok = hyperplanes
        .iter()
        .all(|h| counts.get(&h).copied().unwrap_or(0) == want);
    Ok(Some(ok))
}
