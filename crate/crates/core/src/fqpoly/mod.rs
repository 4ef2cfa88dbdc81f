//! Univariate polynomials over `F_q`: Euclidean arithmetic, irreducibility,
//! companion matrices and characteristic polynomials. Smith normal form of
//! polynomial matrices and the invariant factors of partial maps live in
//! [`snf`].

mod snf;

pub use snf::{invariant_factors, pencil_of, PolyMatrix};

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::fqlinalg::MatrixFq;

/// A polynomial over `F_q`, coefficients constant term first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFq {
    field: FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

/// Human form, e.g. `x^3 + x + 1`, with coefficients printed as codes.
impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.code()) {
                (0, k) => write!(f, "{k}")?,
                (1, 1) => f.write_str("x")?,
                (1, k) => write!(f, "{k}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, k) => write!(f, "{k}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PolyFq {
    pub fn new(field: &FieldCtx, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyFq { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldCtx) -> Self {
        PolyFq { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &FieldCtx, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &FieldCtx) -> Self {
        Self::monomial(field, FieldElem::ONE, 1)
    }

    pub fn monomial(field: &FieldCtx, c: FieldElem, deg: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    /// Small integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Parses the comma-separated code list, constant term first.
    pub fn parse_codes(field: &FieldCtx, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::zero(field));
        }
        let coeffs = text
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))).and_then(|c| field.elem(c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    /// Comma-separated code list, constant term first (`x^3 + x + 1` is
    /// `1,1,0,1`).
    pub fn to_codes(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    pub fn eval(&self, a: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn add(&self, other: &PolyFq) -> PolyFq {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> PolyFq {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &PolyFq) -> PolyFq {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElem) -> PolyFq {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &PolyFq) -> PolyFq {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &PolyFq) -> Result<(PolyFq, PolyFq)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let inv_lead = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let slot = &mut rem[i - dd + j];
                *slot = f.sub(*slot, f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, d: &PolyFq) -> Result<PolyFq> {
        Ok(self.divrem(d)?.1)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> PolyFq {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).expect("nonzero leading coefficient"))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &PolyFq) -> Result<PolyFq> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn divides(&self, other: &PolyFq) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &PolyFq) -> Result<PolyFq> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over `F_q` by the Ben-Or criterion: `f` of degree `n`
    /// is irreducible iff `gcd(x^{q^i} - x, f) = 1` for `1 <= i <= n/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let f = self.monic();
        let x = Self::x(&self.field);
        let q = self.field.order() as u64;
        let mut h = x.rem(&f)?;
        for _ in 1..=n / 2 {
            h = h.pow_mod(q, &f)?;
            if !h.sub(&x).gcd(&f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The monic irreducible of degree `n` whose lower coefficients
/// `(c_0, ..., c_{n-1})`, read as a base-`q` integer, are smallest.
pub fn smallest_irreducible(field: &FieldCtx, n: usize) -> Result<PolyFq> {
    if n == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let q = field.order() as u64;
    let mut code = 0u64;
    loop {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push(FieldElem::from_code((c % q) as u32));
            c /= q;
        }
        coeffs.push(FieldElem::ONE);
        let f = PolyFq::new(field, coeffs);
        if f.is_irreducible()? {
            return Ok(f);
        }
        code += 1;
    }
}

/// Companion matrix with ones on the subdiagonal and the negated lower
/// coefficients in the last column, so `e_1 -> e_2 -> ... -> e_n ->
/// -(c_0 e_1 + ... + c_{n-1} e_n)`. Its characteristic polynomial is `f`.
pub fn companion_matrix(f: &PolyFq) -> Result<MatrixFq> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = f.field();
    let mut m = MatrixFq::zeros(field, n, n);
    for i in 1..n {
        m.set(i, i - 1, FieldElem::ONE);
    }
    for i in 0..n {
        m.set(i, n - 1, field.neg(f.coeff(i)));
    }
    Ok(m)
}

/// `det(xI - T)` via reduction to upper Hessenberg form followed by the
/// standard three-term expansion along the subdiagonal.
pub fn char_poly(t: &MatrixFq) -> Result<PolyFq> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.nrows(), cols: t.ncols() });
    }
    let field = t.field();
    let n = t.nrows();
    let mut h = t.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                let (a, b) = (h.get(i, j), h.get(m, j));
                h.set(i, j, b);
                h.set(m, j, a);
            }
            for r in 0..n {
                let (a, b) = (h.get(r, i), h.get(r, m));
                h.set(r, i, b);
                h.set(r, m, a);
            }
        }
        let pivot_inv = field.inv(h.get(m, m - 1))?;
        for i in m + 1..n {
            let u = field.mul(h.get(i, m - 1), pivot_inv);
            if u.is_zero() {
                continue;
            }
            // row_i -= u row_m, then col_m += u col_i (similarity)
            for j in 0..n {
                let v = field.sub(h.get(i, j), field.mul(u, h.get(m, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = field.add(h.get(r, m), field.mul(u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // 1-indexed access into the Hessenberg matrix.
    let at = |i: usize, j: usize| h.get(i - 1, j - 1);
    let x = PolyFq::x(field);
    let mut p: Vec<PolyFq> = vec![PolyFq::one(field)];
    for m in 1..=n {
        let mut pm = x.sub(&PolyFq::constant(field, at(m, m))).mul(&p[m - 1]);
        let mut t = FieldElem::ONE;
        for i in 1..m {
            t = field.mul(t, at(m - i + 1, m - i));
            let c = field.mul(t, at(m - i, m));
            pm = pm.sub(&p[m - i - 1].scale(c));
        }
        p.push(pm);
    }
    Ok(p.pop().expect("p_n"))
}
