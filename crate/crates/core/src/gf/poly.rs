//! Univariate polynomials over E, coefficients low-to-high.

use super::{Field, Gf};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Gf>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Gf) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![Gf::ZERO, Gf::ONE])
    }

    pub fn new(mut coeffs: Vec<Gf>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// x - a
    pub fn linear_root(fld: &Field, a: Gf) -> Self {
        Self::new(vec![fld.neg(a), Gf::ONE])
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, fld: &Field, x: Gf) -> Gf {
        self.coeffs
            .iter()
            .rev()
            .fold(Gf::ZERO, |acc, &c| fld.add(fld.mul(acc, x), c))
    }

    pub fn add(&self, fld: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| fld.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, fld: &Field, c: Gf) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| fld.mul(a, c)).collect())
    }

    pub fn mul(&self, fld: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fld.add(out[i + j], fld.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Synthetic division by (x - a): returns (quotient, remainder).
    pub fn div_linear(&self, fld: &Field, a: Gf) -> (Poly, Gf) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), Gf::ZERO);
        }
        let n = self.coeffs.len();
        let mut q = vec![Gf::ZERO; n - 1];
        let mut carry = Gf::ZERO;
        for i in (0..n).rev() {
            let v = fld.add(self.coeffs[i], fld.mul(carry, a));
            if i == 0 {
                return (Poly::new(q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// p(s·x + t), by Horner's rule over polynomials.
    pub fn compose_affine(&self, fld: &Field, s: Gf, t: Gf) -> Poly {
        let inner = Poly::new(vec![t, s]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(fld, &inner).add(fld, &Poly::constant(c))
        })
    }

    /// p(x + a).
    pub fn shift(&self, fld: &Field, a: Gf) -> Poly {
        self.compose_affine(fld, Gf::ONE, a)
    }
}

/// L_W(x) = Π_{ω ∈ W} (x - ω). Monic of degree q^{dim W}, F-linear as a
/// map E → E, with kernel W.
pub fn subspace_polynomial(fld: &Field, w: &Subspace) -> Poly {
    w.elements(fld)
        .iter()
        .fold(Poly::constant(Gf::ONE), |acc, &om| {
            acc.mul(fld, &Poly::linear_root(fld, om))
        })
}
