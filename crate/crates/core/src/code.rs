//! Reed-Solomon codes, generic linear codes over E, codewords and erasures.
//!
//! Positions are 0-based throughout the library.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Field, Gf, Poly};
use crate::linalg;

/// Largest codeword count `min_distance` will enumerate.
pub const MAX_CODEWORDS: u64 = 1 << 20;

/// RS(A, k) = {(f(α_1), ..., f(α_n)) : deg f < k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCode {
    field: Arc<Field>,
    points: Vec<Gf>,
    k: usize,
}

impl RsCode {
    /// `k = 0` is accepted so that the dual of a `k = n` code exists.
    pub fn new(field: Arc<Field>, points: Vec<Gf>, k: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCode("no evaluation points".into()));
        }
        if let Some(&bad) = points.iter().find(|a| a.0 >= field.order()) {
            return Err(Error::ElementOutOfRange(bad.0));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|a| !seen.insert(**a)) {
            return Err(Error::InvalidCode(format!(
                "evaluation point {} repeated",
                field.format(*dup)
            )));
        }
        if k > points.len() {
            return Err(Error::InvalidCode(format!(
                "k = {k} exceeds n = {}",
                points.len()
            )));
        }
        Ok(RsCode { field, points, k })
    }

    /// The full-length code with points 0, ξ^0, ξ^1, ..., ξ^{q^ℓ-2}.
    pub fn full_length(field: Arc<Field>, k: usize) -> Result<Self> {
        let xi = field.primitive();
        let mut points = vec![Gf::ZERO];
        let mut p = Gf::ONE;
        for _ in 1..field.order() {
            points.push(p);
            p = field.mul(p, xi);
        }
        Self::new(field, points, k)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[Gf] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.n() - self.k
    }

    pub fn is_full_length(&self) -> bool {
        self.n() == self.field.order() as usize
    }

    pub fn position_of(&self, a: Gf) -> Option<usize> {
        self.points.iter().position(|&p| p == a)
    }

    pub fn encode(&self, msg: &Poly) -> Result<Codeword> {
        if let Some(degree) = msg.degree() {
            if degree >= self.k {
                return Err(Error::MessageDegree { degree, k: self.k });
            }
        }
        Ok(Codeword::new(
            self.points
                .iter()
                .map(|&a| msg.eval(&self.field, a))
                .collect(),
        ))
    }

    /// Evaluations of 1, x, ..., x^{k-1}.
    pub fn generator_rows(&self) -> Vec<Vec<Gf>> {
        (0..self.k)
            .map(|i| {
                self.points
                    .iter()
                    .map(|&a| self.field.pow(a, i as u64))
                    .collect()
            })
            .collect()
    }

    /// RS(A, n-k). Only defined here for full-length codes.
    pub fn dual(&self) -> Result<RsCode> {
        if !self.is_full_length() {
            return Err(Error::Unsupported(
                "the dual is an RS code on the same points only at full length".into(),
            ));
        }
        RsCode::new(self.field.clone(), self.points.clone(), self.r())
    }

    pub fn to_linear(&self) -> LinearCode {
        LinearCode::from_generator(self.field.clone(), self.n(), self.generator_rows())
            .expect("RS generator rows are independent")
    }

    /// Whether `word` is orthogonal to every generator row, i.e. lies in the
    /// dual code.
    pub fn dual_contains(&self, word: &[Gf]) -> bool {
        word.len() == self.n()
            && self
                .generator_rows()
                .iter()
                .all(|row| dot_e(&self.field, row, word).is_zero())
    }

    pub fn contains(&self, word: &[Gf]) -> bool {
        self.to_linear().contains(word)
    }
}

fn dot_e(fld: &Field, a: &[Gf], b: &[Gf]) -> Gf {
    a.iter()
        .zip(b)
        .fold(Gf::ZERO, |acc, (&x, &y)| fld.add(acc, fld.mul(x, y)))
}

/// A linear [n, k] code over E given by a generator matrix in RREF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    generator: Vec<Vec<Gf>>,
}

impl LinearCode {
    pub fn from_generator(field: Arc<Field>, n: usize, rows: Vec<Vec<Gf>>) -> Result<Self> {
        check_rows(&field, n, &rows)?;
        let mut g = rows.clone();
        linalg::rref(&field, &mut g);
        if g.len() < rows.len() {
            return Err(Error::InvalidCode(format!(
                "generator has rank {} < {} rows",
                g.len(),
                rows.len()
            )));
        }
        Ok(LinearCode {
            field,
            n,
            generator: g,
        })
    }

    /// The code whose dual is spanned by `rows`.
    pub fn from_parity_check(field: Arc<Field>, n: usize, rows: Vec<Vec<Gf>>) -> Result<Self> {
        check_rows(&field, n, &rows)?;
        let mut g = linalg::null_space(&field, &rows, n);
        linalg::rref(&field, &mut g);
        Ok(LinearCode {
            field,
            n,
            generator: g,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<Gf>] {
        &self.generator
    }

    pub fn is_full_length(&self) -> bool {
        self.n == self.field.order() as usize
    }

    pub fn dual(&self) -> LinearCode {
        let mut g = linalg::null_space(&self.field, &self.generator, self.n);
        linalg::rref(&self.field, &mut g);
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            generator: g,
        }
    }

    pub fn contains(&self, word: &[Gf]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut m = self.generator.clone();
        m.push(word.to_vec());
        linalg::rank(&self.field, &m) == self.generator.len()
    }

    pub fn dual_contains(&self, word: &[Gf]) -> bool {
        word.len() == self.n
            && self
                .generator
                .iter()
                .all(|row| dot_e(&self.field, row, word).is_zero())
    }

    pub fn encode(&self, msg: &[Gf]) -> Result<Codeword> {
        if msg.len() != self.k() {
            return Err(Error::WrongLength {
                expected: self.k(),
                got: msg.len(),
            });
        }
        let mut out = vec![Gf::ZERO; self.n];
        for (&m, row) in msg.iter().zip(&self.generator) {
            for (o, &g) in out.iter_mut().zip(row) {
                *o = self.field.add(*o, self.field.mul(m, g));
            }
        }
        Ok(Codeword::new(out))
    }

    /// Minimum Hamming weight over all nonzero codewords, by enumeration.
    pub fn min_distance(&self) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::InvalidCode(
                "the zero code has no nonzero codewords".into(),
            ));
        }
        let order = self.field.order() as u64;
        let total = order.checked_pow(k as u32).unwrap_or(u64::MAX);
        if total > MAX_CODEWORDS {
            return Err(Error::OverBudget {
                count: total as u128,
                budget: MAX_CODEWORDS as u128,
            });
        }
        let mut best = self.n;
        let mut msg = vec![Gf::ZERO; k];
        for idx in 1..total {
            let mut v = idx;
            for m in msg.iter_mut() {
                *m = Gf((v % order) as u32);
                v /= order;
            }
            let cw = self.encode(&msg)?;
            best = best.min(cw.weight());
        }
        Ok(best)
    }

    pub fn is_mds(&self) -> Result<bool> {
        Ok(self.min_distance()? == self.n - self.k() + 1)
    }
}

fn check_rows(field: &Field, n: usize, rows: &[Vec<Gf>]) -> Result<()> {
    for r in rows {
        if r.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: r.len(),
            });
        }
        if let Some(&bad) = r.iter().find(|a| a.0 >= field.order()) {
            return Err(Error::ElementOutOfRange(bad.0));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    symbols: Vec<Gf>,
}

impl Codeword {
    pub fn new(symbols: Vec<Gf>) -> Self {
        Codeword { symbols }
    }

    pub fn symbols(&self) -> &[Gf] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn erase(&self, pos: usize) -> Result<ErasedCodeword> {
        let mut e = ErasedCodeword {
            symbols: self.symbols.iter().copied().map(Some).collect(),
        };
        e.erase(pos)?;
        Ok(e)
    }
}

/// A codeword with some positions unavailable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasedCodeword {
    symbols: Vec<Option<Gf>>,
}

impl ErasedCodeword {
    /// Marks `pos` unavailable. Erasing twice is a no-op.
    pub fn erase(&mut self, pos: usize) -> Result<()> {
        let n = self.symbols.len();
        let slot = self
            .symbols
            .get_mut(pos)
            .ok_or(Error::PositionOutOfRange { pos, n })?;
        *slot = None;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn holes(&self) -> Vec<usize> {
        (0..self.symbols.len())
            .filter(|&i| self.symbols[i].is_none())
            .collect()
    }

    pub fn get(&self, pos: usize) -> Result<Gf> {
        match self.symbols.get(pos) {
            None => Err(Error::PositionOutOfRange {
                pos,
                n: self.symbols.len(),
            }),
            Some(None) => Err(Error::NodeUnavailable(pos)),
            Some(Some(v)) => Ok(*v),
        }
    }

    pub fn restore(&mut self, pos: usize, value: Gf) -> Result<()> {
        let n = self.symbols.len();
        let slot = self
            .symbols
            .get_mut(pos)
            .ok_or(Error::PositionOutOfRange { pos, n })?;
        *slot = Some(value);
        Ok(())
    }

    /// The full codeword, if no holes remain.
    pub fn complete(&self) -> Option<Codeword> {
        self.symbols
            .iter()
            .copied()
            .collect::<Option<Vec<_>>>()
            .map(Codeword::new)
    }
}
