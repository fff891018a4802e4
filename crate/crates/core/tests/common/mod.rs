//! Brute-force oracles shared by the integration tests. They avoid the
//! library's linear algebra: spans are closed by enumeration, traces are
//! sums of Frobenius powers, reads are found by perturbing coordinates.
#![allow(dead_code)]

use std::collections::BTreeSet;

use trace_repair::gf::{Field, Gf, SubfieldBasis};

pub fn trace(fld: &Field, a: Gf) -> Gf {
    let q = fld.q() as u64;
    let mut t = Gf::ZERO;
    let mut e = 1u64;
    for _ in 0..fld.ell() {
        t = fld.add(t, fld.pow(a, e));
        e *= q;
    }
    t
}

/// The F-span of `vals`, by closure.
pub fn span(fld: &Field, vals: &[Gf]) -> BTreeSet<u32> {
    let mut set = BTreeSet::from([0u32]);
    for &v in vals {
        let mut next = BTreeSet::new();
        for &s in &set {
            for &c in fld.subfield() {
                next.insert(fld.add(Gf(s), fld.mul(c, v)).0);
            }
        }
        set = next;
    }
    set
}

pub fn dim(fld: &Field, vals: &[Gf]) -> usize {
    let size = span(fld, vals).len();
    let q = fld.q() as usize;
    let mut d = 0;
    let mut v = 1;
    while v < size {
        v *= q;
        d += 1;
    }
    assert_eq!(v, size, "span size is a power of q");
    d
}

fn combine(fld: &Field, basis: &[Gf], coords: &[Gf]) -> Gf {
    basis
        .iter()
        .zip(coords)
        .fold(Gf::ZERO, |acc, (&b, &c)| fld.add(acc, fld.mul(b, c)))
}

/// Number of stored coordinates (under `basis`) that the traces
/// Tr(γ c), γ ∈ `gammas`, actually depend on.
pub fn reads(fld: &Field, gammas: &[Gf], basis: &SubfieldBasis) -> usize {
    let ell = fld.ell();
    let sub = fld.subfield();
    let b = basis.elems();
    let q = sub.len();
    let total = q.pow(ell as u32);
    let mut needed = vec![false; ell];
    let mut coords = vec![Gf::ZERO; ell];
    for idx in 0..total {
        let mut x = idx;
        for c in coords.iter_mut() {
            *c = sub[x % q];
            x /= q;
        }
        let c = combine(fld, b, &coords);
        let base: Vec<Gf> = gammas.iter().map(|&g| trace(fld, fld.mul(g, c))).collect();
        for t in 0..ell {
            if needed[t] {
                continue;
            }
            let keep = coords[t];
            for &alt in sub {
                coords[t] = alt;
                let c2 = combine(fld, b, &coords);
                if gammas
                    .iter()
                    .zip(&base)
                    .any(|(&g, &v)| trace(fld, fld.mul(g, c2)) != v)
                {
                    needed[t] = true;
                }
            }
            coords[t] = keep;
        }
    }
    needed.iter().filter(|&&x| x).count()
}

/// Every ordered ℓ-tuple of elements spanning E.
pub fn ordered_bases(fld: &Field) -> Vec<Vec<Gf>> {
    let ell = fld.ell();
    let order = fld.order() as usize;
    let mut out = Vec::new();
    let total = order.pow(ell as u32);
    for idx in 0..total {
        let mut x = idx;
        let t: Vec<Gf> = (0..ell)
            .map(|_| {
                let v = Gf((x % order) as u32);
                x /= order;
                v
            })
            .collect();
        if span(fld, &t).len() == order {
            out.push(t);
        }
    }
    out
}

pub fn dot(fld: &Field, a: &[Gf], b: &[Gf]) -> Gf {
    a.iter()
        .zip(b)
        .fold(Gf::ZERO, |acc, (&x, &y)| fld.add(acc, fld.mul(x, y)))
}
