//! Dense polynomials over the prime field GF(p), coefficients low-to-high.
//!
//! Only what field construction needs: reduction, multiplication modulo a
//! monic modulus and trial-division irreducibility.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, Fermat is fine
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

/// Remainder of `a` modulo `m` (m nonzero, not necessarily monic).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv) % p as u64;
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = dr - dm + i;
                let sub = (c * mc as u64) % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index` (constant term least significant).
pub(crate) fn monic_from_index(deg: usize, mut index: u64, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        c.push((index % p as u64) as u32);
        index /= p as u64;
    }
    c.push(1);
    c
}

/// Returns the lexicographically-first monic factor of degree in
/// `1..=deg/2` if one exists, `None` when `f` is irreducible.
pub(crate) fn find_factor(f: &[u32], p: u32) -> Option<Vec<u32>> {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(d, idx, p);
            if rem(f, &g, p).is_empty() {
                return Some(g);
            }
        }
    }
    None
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
