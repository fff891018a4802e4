mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trace_repair::gf::{subspace_polynomial, Field, Gf, SubfieldBasis};
use trace_repair::subspace::Subspace;

/// (p, ℓ) with p^ℓ ≤ 512.
const SMALL: [(u32, u32); 16] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
    (2, 8),
    (2, 9),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 2),
    (5, 3),
    (7, 3),
];

#[test]
fn trace_lands_in_f_and_has_the_right_kernel() {
    for (p, ell) in SMALL {
        let f = Field::prime_extension(p, ell).unwrap();
        let mut kernel = 0usize;
        let mut hit = vec![false; p as usize];
        for a in f.elements() {
            let t = f.trace(a);
            assert_eq!(f.frobenius(t), t, "GF({p}^{ell}): Tr({}) not in F", a.0);
            assert_eq!(t, common::trace(&f, a));
            hit[f.scalar_index(t).unwrap()] = true;
            if t.is_zero() {
                kernel += 1;
            }
        }
        assert!(hit.iter().all(|&h| h), "GF({p}^{ell}): trace not onto F");
        assert_eq!(kernel, (p as usize).pow(ell - 1));
    }
}

/// Minimum number of coordinates of α (under `b`) from which Tr(γα) can
/// be computed, by trying coordinate subsets in order of size.
fn min_coordinates(f: &Field, b: &SubfieldBasis, gamma: Gf) -> usize {
    let ell = f.ell();
    let reps: Vec<(Vec<Gf>, Gf)> = f
        .elements()
        .map(|a| (b.vector_rep(f, a), f.trace(f.mul(gamma, a))))
        .collect();
    let mut best = ell;
    for mask in 0u32..(1 << ell) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let key = |v: &[Gf]| -> Vec<Gf> {
            (0..ell)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| v[t])
                .collect()
        };
        let determined = reps.iter().all(|(v, tr)| {
            reps.iter()
                .filter(|(w, _)| key(w) == key(v))
                .all(|(_, tr2)| tr2 == tr)
        });
        if determined {
            best = size;
        }
    }
    best
}

#[test]
fn w_vector_weight_is_minimal_read_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, ell) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4)] {
        let f = Field::prime_extension(p, ell).unwrap();
        let mut bases = vec![SubfieldBasis::standard(&f)];
        bases.extend((0..3).map(|_| SubfieldBasis::random(&f, &mut rng)));
        for b in &bases {
            for g in f.nonzero() {
                let weight = b.w_vector(&f, g).iter().filter(|c| !c.is_zero()).count();
                assert_eq!(weight, min_coordinates(&f, b, g), "GF({p}^{ell}) γ={}", g.0);
                assert_eq!(b.read_support(&f, &[g]).len(), weight);
            }
        }
    }
}

#[test]
fn subspace_polynomials_are_linear_on_all_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, ell) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4), (2, 6), (3, 3), (7, 2)] {
        let f = Field::prime_extension(p, ell).unwrap();
        if f.order() > 64 {
            continue;
        }
        for m in 0..=ell as usize {
            let w = Subspace::span(&f, &SubfieldBasis::random(&f, &mut rng).elems()[..m]);
            let l = subspace_polynomial(&f, &w);
            let vals: Vec<Gf> = f.elements().map(|a| l.eval(&f, a)).collect();
            for x in f.elements() {
                assert_eq!(vals[x.0 as usize].is_zero(), w.contains(&f, x));
                for y in f.elements() {
                    let s = vals[f.add(x, y).0 as usize];
                    assert_eq!(s, f.add(vals[x.0 as usize], vals[y.0 as usize]));
                }
                for &c in f.subfield() {
                    assert_eq!(vals[f.mul(c, x).0 as usize], f.mul(c, vals[x.0 as usize]));
                }
            }
        }
    }
}

fn field_and_basis() -> impl Strategy<Value = (Field, SubfieldBasis)> {
    (
        prop::sample::select(vec![(2u32, 2u32), (2, 3), (3, 2), (2, 5), (5, 2), (3, 3)]),
        any::<u64>(),
    )
        .prop_map(|((p, ell), seed)| {
            let f = Field::prime_extension(p, ell).unwrap();
            let b = SubfieldBasis::random(&f, &mut ChaCha8Rng::seed_from_u64(seed));
            (f, b)
        })
}

proptest! {
    #[test]
    fn dual_of_dual_is_identity((f, b) in field_and_basis()) {
        let d = b.dual_basis();
        let dd = d.dual_basis();
        prop_assert_eq!(dd.elems(), b.elems());
        for (i, &x) in b.elems().iter().enumerate() {
            for (j, &y) in d.elems().iter().enumerate() {
                let want = if i == j { Gf::ONE } else { Gf::ZERO };
                prop_assert_eq!(common::trace(&f, f.mul(x, y)), want);
            }
        }
    }

    #[test]
    fn vector_rep_round_trips((f, b) in field_and_basis(), v in any::<u32>()) {
        let a = Gf(v % f.order());
        let rep = b.vector_rep(&f, a);
        prop_assert_eq!(b.from_rep(&f, &rep), a);
        let traces: Vec<Gf> = b.dual().iter().map(|&d| f.trace(f.mul(d, a))).collect();
        prop_assert_eq!(traces, rep);
    }
}
