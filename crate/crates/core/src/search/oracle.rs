use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};
use crate::linalg;
use crate::subspace::Subspace;

/// Cap on the number of ordered tuples the oracle walks.
const TUPLE_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub q: u32,
    pub ell: usize,
    /// Ordered F-independent tuples (γ_1, ..., γ_s), 1 ≤ s ≤ ℓ.
    pub tuples: usize,
    /// Primitive elements ξ the indicator sums were taken over.
    pub primitives: usize,
    pub violations: Vec<String>,
}

/// For every ordered independent tuple:
/// dim ∩_t K/γ_t = ℓ-s (by intersection and by counting the common zeros
/// of the functionals), and for each primitive ξ the number of exponents
/// j ∈ [0, q^ℓ-2] with some Tr(γ_t ξ^j) ≠ 0 is q^ℓ - q^(ℓ-s).
pub fn oracle_lemma5_lemma6(fld: &Field) -> Result<OracleReport> {
    let ell = fld.ell();
    let q = fld.q() as u128;
    let order = fld.order() as u128;
    let total: u128 = (1..=ell)
        .map(|s| (0..s as u32).map(|i| order - q.pow(i)).product::<u128>())
        .sum();
    if total > TUPLE_BUDGET {
        return Err(Error::OverBudget {
            count: total,
            budget: TUPLE_BUDGET,
        });
    }
    let primitives: Vec<Gf> = if fld.order() <= 64 {
        fld.nonzero()
            .filter(|&a| brute_order(fld, a) == fld.order() - 1)
            .collect()
    } else {
        vec![fld.primitive()]
    };
    let mut report = OracleReport {
        q: fld.q(),
        ell,
        tuples: 0,
        primitives: primitives.len(),
        violations: Vec::new(),
    };
    let mut tuple = Vec::new();
    walk(fld, &primitives, &mut tuple, &mut report)?;
    Ok(report)
}

fn brute_order(fld: &Field, a: Gf) -> u32 {
    let mut x = a;
    let mut e = 1;
    while x != Gf::ONE {
        x = fld.mul(x, a);
        e += 1;
    }
    e
}

fn walk(
    fld: &Field,
    primitives: &[Gf],
    tuple: &mut Vec<Gf>,
    report: &mut OracleReport,
) -> Result<()> {
    if !tuple.is_empty() {
        check(fld, primitives, tuple, report)?;
    }
    if tuple.len() == fld.ell() {
        return Ok(());
    }
    for g in fld.nonzero() {
        tuple.push(g);
        if linalg::rank_of_elements(fld, tuple) == tuple.len() {
            walk(fld, primitives, tuple, report)?;
        }
        tuple.pop();
    }
    Ok(())
}

fn check(fld: &Field, primitives: &[Gf], gammas: &[Gf], report: &mut OracleReport) -> Result<()> {
    report.tuples += 1;
    let ell = fld.ell();
    let s = gammas.len();
    let q = fld.q() as usize;
    let kernels = gammas
        .iter()
        .map(|&g| Subspace::kernel_quotient(fld, g))
        .collect::<Result<Vec<_>>>()?;
    let dim = Subspace::intersect(fld, &kernels)?.dim();
    let zeros = fld
        .elements()
        .filter(|&a| gammas.iter().all(|&g| fld.trace(fld.mul(g, a)).is_zero()))
        .count();
    let names: Vec<String> = gammas.iter().map(|&g| fld.format(g)).collect();
    if dim != ell - s || zeros != q.pow((ell - s) as u32) {
        report.violations.push(format!(
            "gammas {names:?}: intersection dim {dim}, common zeros {zeros}, expected dim {}",
            ell - s
        ));
    }
    let want = q.pow(ell as u32) - q.pow((ell - s) as u32);
    for &xi in primitives {
        let mut p = Gf::ONE;
        let mut sum = 0;
        for _ in 0..fld.order() - 1 {
            if gammas.iter().any(|&g| !fld.trace(fld.mul(g, p)).is_zero()) {
                sum += 1;
            }
            p = fld.mul(p, xi);
        }
        if sum != want {
            report.violations.push(format!(
                "gammas {names:?}, primitive {}: indicator sum {sum}, expected {want}",
                fld.format(xi)
            ));
        }
    }
    Ok(())
}
