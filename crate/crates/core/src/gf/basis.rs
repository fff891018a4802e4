//! Ordered F-bases of E and their trace-dual bases.

use rand::Rng;

use super::{Field, Gf};
use crate::error::{Error, Result};
use crate::linalg;

/// An ordered F-basis (β_1, ..., β_ℓ) of E, carrying its trace-dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubfieldBasis {
    elems: Vec<Gf>,
    dual: Vec<Gf>,
}

impl SubfieldBasis {
    /// Validates independence and computes the dual basis.
    pub fn new(fld: &Field, elems: Vec<Gf>) -> Result<Self> {
        if let Some(&bad) = elems.iter().find(|a| a.0 >= fld.order()) {
            return Err(Error::ElementOutOfRange(bad.0));
        }
        let dual = linalg::dual_elements(fld, &elems)?;
        Ok(SubfieldBasis { elems, dual })
    }

    /// The reference polynomial basis (1, x, ..., x^{ℓ-1}).
    pub fn standard(fld: &Field) -> Self {
        Self::new(fld, fld.default_basis().to_vec()).expect("reference basis is a basis")
    }

    /// Uniformly random ordered basis (rejection sampling on independence).
    pub fn random<R: Rng + ?Sized>(fld: &Field, rng: &mut R) -> Self {
        loop {
            let elems: Vec<Gf> = (0..fld.ell())
                .map(|_| Gf(rng.gen_range(1..fld.order())))
                .collect();
            if let Ok(b) = Self::new(fld, elems) {
                return b;
            }
        }
    }

    pub fn elems(&self) -> &[Gf] {
        &self.elems
    }

    pub fn dual(&self) -> &[Gf] {
        &self.dual
    }

    /// The dual basis as a basis in its own right; its dual is `self`.
    pub fn dual_basis(&self) -> SubfieldBasis {
        SubfieldBasis {
            elems: self.dual.clone(),
            dual: self.elems.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Coordinates (a_1, ..., a_ℓ) ∈ F^ℓ with α = Σ a_i β_i. Coordinate i is
    /// Tr(β*_i α).
    pub fn vector_rep(&self, fld: &Field, alpha: Gf) -> Vec<Gf> {
        self.dual
            .iter()
            .map(|&d| fld.trace(fld.mul(d, alpha)))
            .collect()
    }

    /// Σ a_i β_i.
    pub fn from_rep(&self, fld: &Field, rep: &[Gf]) -> Gf {
        rep.iter()
            .zip(&self.elems)
            .fold(Gf::ZERO, |acc, (&a, &b)| fld.add(acc, fld.mul(a, b)))
    }

    /// Rebuilds α from the traces (Tr(β_1 α), ..., Tr(β_ℓ α)) as
    /// Σ Tr(β_i α) β*_i.
    pub fn trace_recover(&self, fld: &Field, traces: &[Gf]) -> Gf {
        traces
            .iter()
            .zip(&self.dual)
            .fold(Gf::ZERO, |acc, (&t, &d)| fld.add(acc, fld.mul(t, d)))
    }

    /// w^{γ,B} = (Tr(γβ_1), ..., Tr(γβ_ℓ)); Tr(γα) = w · vector_rep(α).
    pub fn w_vector(&self, fld: &Field, gamma: Gf) -> Vec<Gf> {
        self.elems
            .iter()
            .map(|&b| fld.trace(fld.mul(gamma, b)))
            .collect()
    }

    /// Positions (0-based) of the sub-symbols under this basis needed to
    /// evaluate every functional Tr(γ·) for γ in the span of `gens`.
    pub fn read_support(&self, fld: &Field, gens: &[Gf]) -> Vec<usize> {
        (0..self.elems.len())
            .filter(|&i| {
                gens.iter()
                    .any(|&g| !fld.trace(fld.mul(g, self.elems[i])).is_zero())
            })
            .collect()
    }
}

/// Dot product over F.
pub fn dot(fld: &Field, a: &[Gf], b: &[Gf]) -> Gf {
    a.iter()
        .zip(b)
        .fold(Gf::ZERO, |acc, (&x, &y)| fld.add(acc, fld.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 1, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn dual_of_one_xi() {
        let f = f4();
        let xi = f.primitive();
        let b = SubfieldBasis::new(&f, vec![Gf::ONE, xi]).unwrap();
        assert_eq!(b.dual(), &[f.add(xi, Gf::ONE), Gf::ONE]);
        assert_eq!(b.dual_basis().dual(), b.elems());
    }

    #[test]
    fn self_dual_basis() {
        let f = f4();
        let xi = f.primitive();
        let xi2 = f.mul(xi, xi);
        let b = SubfieldBasis::new(&f, vec![xi, xi2]).unwrap();
        assert_eq!(b.dual(), &[xi, xi2]);
    }

    #[test]
    fn dependent_input_is_rejected() {
        let f = f4();
        assert_eq!(
            SubfieldBasis::new(&f, vec![Gf::ONE, Gf::ONE]),
            Err(Error::Dependent { index: 1, rank: 1 })
        );
        assert_eq!(
            SubfieldBasis::new(&f, vec![Gf::ONE]),
            Err(Error::WrongLength {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn vector_rep_and_recover() {
        let f = f4();
        let xi = f.primitive();
        let b = SubfieldBasis::new(&f, vec![Gf::ONE, xi]).unwrap();
        assert_eq!(b.vector_rep(&f, Gf::ZERO), vec![Gf::ZERO, Gf::ZERO]);
        assert_eq!(b.vector_rep(&f, f.add(xi, Gf::ONE)), vec![Gf::ONE, Gf::ONE]);
        // traces of ξ against (1, ξ) are (1, 1); recovery gives back ξ
        let traces = vec![f.trace(xi), f.trace(f.mul(xi, xi))];
        assert_eq!(traces, vec![Gf::ONE, Gf::ONE]);
        assert_eq!(b.trace_recover(&f, &traces), xi);
        assert_eq!(b.trace_recover(&f, &[Gf::ZERO, Gf::ZERO]), Gf::ZERO);
        assert_eq!(b.w_vector(&f, Gf::ONE), vec![Gf::ZERO, Gf::ONE]);
        assert_eq!(b.w_vector(&f, Gf::ZERO), vec![Gf::ZERO, Gf::ZERO]);
    }

    #[test]
    fn round_trips_in_f8() {
        let f = Field::prime_extension(2, 3).unwrap();
        let b = SubfieldBasis::new(&f, vec![Gf(3), Gf(6), Gf(7)]).unwrap();
        for a in f.elements() {
            assert_eq!(b.from_rep(&f, &b.vector_rep(&f, a)), a);
            let traces: Vec<Gf> = b.elems().iter().map(|&x| f.trace(f.mul(x, a))).collect();
            assert_eq!(b.trace_recover(&f, &traces), a);
        }
    }
}
