use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in the formal variable `q` with exact integer coefficients,
/// constant term first, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial(Vec<BigInt>);

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        QPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        QPolynomial(vec![BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `q^d`.
    pub fn q_pow(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        QPolynomial(coeffs)
    }

    /// `q^d - 1`.
    pub fn q_pow_minus_one(d: usize) -> Self {
        &Self::q_pow(d) - &Self::one()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Division with remainder. The divisor's leading coefficient must be
    /// `+-1` unless every step divides exactly.
    pub fn div_rem(&self, d: &QPolynomial) -> Result<(QPolynomial, QPolynomial)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.leading().expect("nonzero divisor");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (c, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, b) in d.0.iter().enumerate() {
                rem[i - dd + j] -= &c * b;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, d: &QPolynomial) -> Result<QPolynomial> {
        let (quot, rem) = self.div_rem(d)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Multiplies by `q^d`.
    pub fn shift(&self, d: usize) -> QPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.extend_from_slice(&self.0);
        QPolynomial(coeffs)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.0.len().max(rhs.0.len());
        let zero = BigInt::zero();
        QPolynomial::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for QPolynomial {
    fn product<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Human form, highest degree first: `q^2 + q + 1`, `2q^3 - q`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QPolynomial {
    type Err = Error;

    /// Parses the human form written by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad q-polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let (term, tail) = body.split_at(end);
            rest = tail;
            let (c, deg) = match term.find('q') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 { BigInt::one() } else { term[..pos].parse().map_err(|_| bad())? };
                    let after = &term[pos + 1..];
                    let deg = if after.is_empty() {
                        1
                    } else {
                        after.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, deg)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += c * sign;
        }
        Ok(Self::new(coeffs))
    }
}

/// `sign * magnitude` with `sign` in `{+1, -1}`; zero always carries `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedQPolynomial {
    sign: i8,
    magnitude: QPolynomial,
}

impl SignedQPolynomial {
    pub fn new(negative: bool, magnitude: QPolynomial) -> Self {
        let sign = if negative && !magnitude.is_zero() { -1 } else { 1 };
        SignedQPolynomial { sign, magnitude }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn magnitude(&self) -> &QPolynomial {
        &self.magnitude
    }

    pub fn to_poly(&self) -> QPolynomial {
        if self.sign < 0 {
            -&self.magnitude
        } else {
            self.magnitude.clone()
        }
    }
}

/// `q + 1` or `-(q + 1)`.
impl fmt::Display for SignedQPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-({})", self.magnitude)
        } else {
            write!(f, "{}", self.magnitude)
        }
    }
}

impl FromStr for SignedQPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("-(").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => Ok(Self::new(true, inner.parse()?)),
            None => Ok(Self::new(false, s.parse()?)),
        }
    }
}
