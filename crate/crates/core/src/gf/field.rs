//! The extension field E = GF(q^ℓ) together with its distinguished subfield
//! F = GF(q), q = p^d.
//!
//! Elements are stored as the integer whose base-p digits are the
//! coefficients of the polynomial representative modulo the defining
//! modulus, constant term least significant. Fields of order up to 2^16 get
//! log/antilog tables and a trace table; larger ones (up to 2^20) fall back
//! to polynomial arithmetic.

use super::prime_poly;
use crate::error::{Error, Result};
use crate::linalg;

/// Largest field order the library accepts.
pub const MAX_ORDER: u64 = 1 << 20;
const TABLE_ORDER: u64 = 1 << 16;

/// A field element, encoded as the base-p integer of its coefficient digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    // exp has length 2N so that log sums never need a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct Field {
    p: u32,
    d: u32,
    ell: u32,
    degree: u32,
    order: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Gf,
    tables: Option<Tables>,
    traces: Option<Vec<Gf>>,
    subfield: Vec<Gf>,
    default_basis: Vec<Gf>,
    default_dual: Vec<Gf>,
    id: u64,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("d", &self.d)
            .field("ell", &self.ell)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.d == other.d
            && self.ell == other.ell
            && self.modulus == other.modulus
            && self.primitive == other.primitive
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF((p^d)^ℓ). When `modulus` is `None` the numerically least
    /// irreducible monic of degree d·ℓ is chosen (lower coefficients read as
    /// a base-p integer, constant term least significant).
    pub fn new(p: u32, d: u32, ell: u32, modulus: Option<&[u32]>) -> Result<Field> {
        Self::build(p, d, ell, modulus, None)
    }

    /// Binary or prime field shortcut: GF(p^ℓ) over GF(p).
    pub fn prime_extension(p: u32, ell: u32) -> Result<Field> {
        Self::new(p, 1, ell, None)
    }

    /// Like [`Field::new`] but with a caller-chosen generator of E*, which
    /// is verified to be primitive.
    pub fn with_primitive(
        p: u32,
        d: u32,
        ell: u32,
        modulus: Option<&[u32]>,
        primitive: u32,
    ) -> Result<Field> {
        Self::build(p, d, ell, modulus, Some(primitive))
    }

    fn build(
        p: u32,
        d: u32,
        ell: u32,
        modulus: Option<&[u32]>,
        primitive: Option<u32>,
    ) -> Result<Field> {
        if !prime_poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 || ell == 0 {
            return Err(Error::FieldParams(format!(
                "degrees must be positive (d = {d}, ell = {ell})"
            )));
        }
        let degree = d
            .checked_mul(ell)
            .ok_or_else(|| Error::FieldParams("degree overflow".into()))?;
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: (p as f64).powi(degree as i32).min(u64::MAX as f64) as u64,
            })?;
        let q = (p as u64).pow(d) as u32;

        let modulus = match modulus {
            Some(m) => {
                validate_modulus(m, p, degree)?;
                if let Some(factor) = prime_poly::find_factor(m, p) {
                    return Err(Error::ReducibleModulus { p, factor });
                }
                m.to_vec()
            }
            None => least_irreducible(p, degree),
        };

        let mut fld = Field {
            p,
            d,
            ell,
            degree,
            order: order as u32,
            q,
            modulus,
            primitive: Gf::ONE,
            tables: None,
            traces: None,
            subfield: Vec::new(),
            default_basis: Vec::new(),
            default_dual: Vec::new(),
            id: 0,
        };

        let n = order - 1;
        let factors = prime_poly::prime_factors(n);
        let is_primitive = |g: u32| {
            g != 0
                && factors
                    .iter()
                    .all(|&r| fld.pow_slow(Gf(g), n / r) != Gf::ONE)
        };
        fld.primitive = match primitive {
            Some(g) => {
                if g as u64 >= order {
                    return Err(Error::ElementOutOfRange(g));
                }
                if !is_primitive(g) {
                    let order_of = fld.order_of_slow(Gf(g));
                    return Err(Error::NotPrimitive {
                        elem: g,
                        order: order_of,
                        expected: n,
                    });
                }
                Gf(g)
            }
            None => Gf((1..order as u32)
                .find(|&g| is_primitive(g))
                .expect("a finite field always has a primitive element")),
        };

        if order <= TABLE_ORDER {
            let n = n as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; order as usize];
            let mut cur = Gf::ONE;
            for (i, slot) in exp.iter_mut().enumerate().take(n) {
                *slot = cur.0;
                log[cur.0 as usize] = i as u32;
                cur = fld.mul_slow(cur, fld.primitive);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            fld.tables = Some(Tables { exp, log });
        }

        fld.subfield = if d == 1 {
            (0..p).map(Gf).collect()
        } else {
            let step = n / (q as u64 - 1);
            let mut s: Vec<Gf> = std::iter::once(Gf::ZERO)
                .chain((0..q as u64 - 1).map(|k| fld.pow(fld.primitive, k * step)))
                .collect();
            s.sort();
            s
        };

        if fld.tables.is_some() {
            let traces = (0..fld.order).map(|a| fld.trace_slow(Gf(a))).collect();
            fld.traces = Some(traces);
        }

        let x = if degree >= 2 { Gf(p) } else { Gf::ONE };
        fld.default_basis = (0..ell).map(|i| fld.pow(x, i as u64)).collect();
        fld.default_dual = linalg::dual_elements(&fld, &fld.default_basis)
            .expect("powers of a generator are independent over the subfield");
        fld.id = fingerprint(p, d, ell, &fld.modulus, fld.primitive);
        Ok(fld)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    /// Degree of E over F.
    pub fn ell(&self) -> usize {
        self.ell as usize
    }
    /// Order of the subfield F.
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Number of elements of E.
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn primitive(&self) -> Gf {
        self.primitive
    }
    /// Opaque identity used to detect values from different fields.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Gf> {
        (1..self.order).map(Gf)
    }

    pub fn element(&self, v: u32) -> Result<Gf> {
        if v < self.order {
            Ok(Gf(v))
        } else {
            Err(Error::ElementOutOfRange(v))
        }
    }

    /// Digits of the polynomial representative, low-to-high, length d·ℓ.
    pub fn digits(&self, a: Gf) -> Vec<u32> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let r = v % self.p;
                v /= self.p;
                r
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Gf> {
        if digits.len() > self.degree as usize {
            return Err(Error::WrongLength {
                expected: self.degree as usize,
                got: digits.len(),
            });
        }
        let mut v = 0u32;
        for &dg in digits.iter().rev() {
            if dg >= self.p {
                return Err(Error::FieldParams(format!(
                    "digit {dg} not below p = {}",
                    self.p
                )));
            }
            v = v * self.p + dg;
        }
        Ok(Gf(v))
    }

    /// Human-readable polynomial form in the generator `x` of the modulus.
    pub fn format(&self, a: Gf) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(format!("{coeff}{mono}"));
        }
        terms.join("+")
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            if x > 0 || y > 0 {
                place *= p;
            }
        }
        Gf(out)
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            if x > 0 {
                place *= p;
            }
        }
        Gf(out)
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse. Panics on zero; use [`Field::try_inv`] when
    /// the argument is not known to be nonzero.
    pub fn inv(&self, a: Gf) -> Gf {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::ZeroElement("inverse"));
        }
        let n = self.order - 1;
        Ok(match &self.tables {
            Some(t) => Gf(t.exp[((n - t.log[a.0 as usize]) % n) as usize]),
            None => self.pow_slow(a, n as u64 - 1),
        })
    }

    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.is_zero() {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u64;
                let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
                Gf(t.exp[l as usize])
            }
            None => self.pow_slow(a, e),
        }
    }

    /// Discrete logarithm to base the primitive element.
    pub fn log(&self, a: Gf) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize]),
            None => {
                let mut cur = Gf::ONE;
                for i in 0..self.order - 1 {
                    if cur == a {
                        return Some(i);
                    }
                    cur = self.mul(cur, self.primitive);
                }
                None
            }
        }
    }

    /// The q-power Frobenius map, whose fixed points are exactly F.
    pub fn frobenius(&self, a: Gf) -> Gf {
        self.pow(a, self.q as u64)
    }

    /// Tr(a) = a + a^q + ... + a^{q^{ℓ-1}}, an element of F.
    pub fn trace(&self, a: Gf) -> Gf {
        match &self.traces {
            Some(t) => t[a.0 as usize],
            None => self.trace_slow(a),
        }
    }

    fn trace_slow(&self, a: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        let mut cur = a;
        for _ in 0..self.ell {
            acc = self.add(acc, cur);
            cur = self.pow_slow_or_table(cur, self.q as u64);
        }
        acc
    }

    fn pow_slow_or_table(&self, a: Gf, e: u64) -> Gf {
        if self.tables.is_some() {
            self.pow(a, e)
        } else {
            self.pow_slow(a, e)
        }
    }

    pub fn in_subfield(&self, a: Gf) -> bool {
        self.subfield.binary_search(&a).is_ok()
    }

    /// Elements of F in ascending order; position = scalar index.
    pub fn subfield(&self) -> &[Gf] {
        &self.subfield
    }

    pub fn scalar_index(&self, a: Gf) -> Option<usize> {
        self.subfield.binary_search(&a).ok()
    }

    /// The reference F-basis (1, x, ..., x^{ℓ-1}).
    pub fn default_basis(&self) -> &[Gf] {
        &self.default_basis
    }

    /// Coordinates over F with respect to the reference basis.
    pub fn coords(&self, a: Gf) -> Vec<Gf> {
        if self.d == 1 {
            self.digits(a).into_iter().map(Gf).collect()
        } else {
            self.default_dual
                .iter()
                .map(|&b| self.trace(self.mul(b, a)))
                .collect()
        }
    }

    /// Inverse of [`Field::coords`]; entries must lie in F.
    pub fn from_coords(&self, c: &[Gf]) -> Gf {
        debug_assert_eq!(c.len(), self.ell as usize);
        if self.d == 1 {
            let mut v = 0u32;
            for x in c.iter().rev() {
                v = v * self.p + x.0;
            }
            Gf(v)
        } else {
            c.iter()
                .zip(&self.default_basis)
                .fold(Gf::ZERO, |acc, (&ci, &b)| self.add(acc, self.mul(ci, b)))
        }
    }

    fn mul_slow(&self, a: Gf, b: Gf) -> Gf {
        let prod = prime_poly::mul(&self.digits(a), &self.digits(b), self.p);
        let r = prime_poly::rem(&prod, &self.modulus, self.p);
        let mut v = 0u32;
        for &dg in r.iter().rev() {
            v = v * self.p + dg;
        }
        Gf(v)
    }

    fn pow_slow(&self, a: Gf, mut e: u64) -> Gf {
        let mut acc = Gf::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn order_of_slow(&self, a: Gf) -> u64 {
        if a.is_zero() {
            return 0;
        }
        let mut cur = a;
        let mut k = 1u64;
        while cur != Gf::ONE {
            cur = self.mul_slow(cur, a);
            k += 1;
        }
        k
    }
}

fn validate_modulus(m: &[u32], p: u32, degree: u32) -> Result<()> {
    if m.len() != degree as usize + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected degree {degree}, got {} coefficients",
            m.len()
        )));
    }
    if *m.last().unwrap() != 1 {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    if let Some(&c) = m.iter().find(|&&c| c >= p) {
        return Err(Error::InvalidModulus(format!(
            "coefficient {c} not below p = {p}"
        )));
    }
    Ok(())
}

fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    (0..count)
        .map(|i| prime_poly::monic_from_index(degree as usize, i, p))
        .find(|f| prime_poly::find_factor(f, p).is_none())
        .expect("irreducible polynomials exist in every degree")
}

fn fingerprint(p: u32, d: u32, ell: u32, modulus: &[u32], primitive: Gf) -> u64 {
    // FNV-1a, stable across runs and platforms
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |v: u32| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    };
    feed(p);
    feed(d);
    feed(ell);
    for &c in modulus {
        feed(c);
    }
    feed(primitive.0);
    h
}
