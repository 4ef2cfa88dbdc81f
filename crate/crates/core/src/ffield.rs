//! Finite fields `F_q`, `q = p^e`, with elements encoded as integers.
//!
//! An element of `F_{p^e}` is a residue polynomial `c_0 + c_1 x + ... +
//! c_{e-1} x^{e-1}` modulo a fixed monic irreducible of degree `e` over `F_p`.
//! It is stored as the code `sum c_i p^i`, so the prime field case is plain
//! residue arithmetic and integer order gives a canonical element order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fqpoly::PolyFq;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, identified by its integer code in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Wraps a raw code. The caller is responsible for `code < q`; use
    /// [`FieldCtx::elem`] for a checked conversion.
    pub const fn from_code(code: u32) -> Self {
        FieldElem(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients over `F_p`, constant term first, length `e + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// Discrete logarithm base `g`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field context. Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.q.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.e)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Builds `F_{p^e}` using the monic irreducible modulus of degree `e` with the
/// smallest coefficient encoding `sum c_i p^i`.
pub fn make_field(p: u64, e: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e < 1 {
        return Err(Error::BadDegree);
    }
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if q > MAX_ORDER as u128 {
        return Err(Error::FieldTooLarge(q));
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        let base = make_field(p as u64, 1)?;
        let mut found = None;
        for code in 0..q {
            let mut coeffs = digits(code, p, e as usize);
            coeffs.push(1);
            let f = PolyFq::new(&base, coeffs.iter().map(|&c| FieldElem(c)).collect());
            if f.is_irreducible()? {
                found = Some(coeffs);
                break;
            }
        }
        found.expect("irreducible polynomials exist in every degree")
    };
    Ok(FieldCtx::with_modulus(p, e, q, modulus))
}

/// Builds `F_q` from its order, rejecting non-prime-powers.
pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, e)
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Schoolbook product of residues modulo `modulus`, used only to build tables.
fn mul_residues(a: u32, b: u32, p: u32, e: usize, modulus: &[u32]) -> u32 {
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // x^e = -(m_0 + ... + m_{e-1} x^{e-1})
        for (i, &m) in modulus[..e].iter().enumerate() {
            let sub = c * m as u64 % p as u64;
            let slot = &mut prod[deg - e + i];
            *slot = (*slot + p as u64 - sub) % p as u64;
        }
        prod[deg] = 0;
    }
    undigits(&prod[..e].iter().map(|&c| c as u32).collect::<Vec<_>>(), p)
}

impl FieldCtx {
    fn with_modulus(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Self {
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        'candidates: for g in 1..q {
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().take(n).enumerate() {
                if i > 0 && x == 1 {
                    continue 'candidates;
                }
                *slot = x;
                x = mul_residues(x, g, p, e as usize, &modulus);
            }
            break;
        }
        if q == 2 {
            exp[0] = 1;
        }
        for i in 0..n {
            exp[i + n] = exp[i];
            log[exp[i] as usize] = i as u32;
        }
        FieldCtx(Arc::new(Inner { p, e, q, modulus, exp, log }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Checked conversion from a code.
    pub fn elem(&self, code: u32) -> Result<FieldElem> {
        if code < self.0.q {
            Ok(FieldElem(code))
        } else {
            Err(Error::Parse(format!("element code {code} not below q = {}", self.0.q)))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let Inner { p, e, .. } = *self.0;
        if p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if e == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let Inner { p, e, .. } = *self.0;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if e == 1 {
            return FieldElem(p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let inner = &*self.0;
        if inner.q == 2 {
            return FieldElem(1);
        }
        let i = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        FieldElem(inner.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        let n = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Ok(FieldElem(inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, k: u64) -> FieldElem {
        if k == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.0;
        let n = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64 * (k % n) % n;
        FieldElem(inner.exp[l as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_modulus_x() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.add(FieldElem(1), FieldElem(1)), FieldElem(0));
    }

    #[test]
    fn f4_modulus_and_product() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f4.mul(FieldElem(2), FieldElem(2)), FieldElem(3));
    }

    #[test]
    fn f9_modulus_is_smallest_irreducible_quadratic() {
        // Oracle: among monic x^2 + b x + c over F_3, pick the smallest c + 3b
        // with no root in F_3.
        let expected = (0..9u32)
            .find(|&code| {
                let (c, b) = (code % 3, code / 3);
                (0..3u32).all(|x| (x * x + b * x + c) % 3 != 0)
            })
            .unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[expected % 3, expected / 3, 1]);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn inverse_in_f5() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(FieldElem(2)).unwrap(), FieldElem(3));
        assert_eq!(f5.inv(FieldElem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::BadDegree);
        assert!(matches!(make_field(2, 17), Err(Error::FieldTooLarge(_))));
        assert_eq!(field_of_order(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(field_of_order(1).unwrap_err(), Error::NotPrimePower(1));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn group_order_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = field_of_order(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q - 1), FieldElem::ONE, "q={q} a={a}");
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
            }
        }
    }

    #[test]
    fn log_tables_match_schoolbook_product() {
        for (p, e) in [(2u64, 3u32), (3, 2), (5, 2), (2, 5)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let slow = mul_residues(a.0, b.0, p as u32, e as usize, f.modulus());
                    assert_eq!(f.mul(a, b).0, slow);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field_and_triple() -> impl Strategy<Value = (u64, u32, u32, u32)> {
            prop::sample::select(vec![2u64, 3, 4, 5, 8, 9, 16, 27, 121, 256, 625])
                .prop_flat_map(|q| (Just(q), 0..q as u32, 0..q as u32, 0..q as u32))
        }

        proptest! {
            #[test]
            fn field_axioms((q, a, b, c) in field_and_triple()) {
                let f = field_of_order(q).unwrap();
                let (a, b, c) = (FieldElem(a), FieldElem(b), FieldElem(c));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}
