//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored constant term first and kept trimmed, so the zero
//! polynomial is the empty vector and every other value has a nonzero leading
//! coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `x + c`
    pub fn linear(c: i64) -> Self {
        Self::from_i64s(&[c, 1])
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Multiplicity of the root 0, i.e. the number of leading zero
    /// coefficients from the constant end. The zero polynomial reports 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Splits `p = x^m * q` with `q(0) != 0`.
    pub fn strip_zero_roots(&self) -> (usize, IntPolynomial) {
        let m = self.zero_root_multiplicity();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (
            m,
            IntPolynomial {
                coeffs: self.coeffs[m..].to_vec(),
            },
        )
    }

    /// Exact division by `x^k`.
    pub fn div_monomial_power(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: Self::monomial(BigInt::one(), k).to_string(),
            });
        }
        Ok(IntPolynomial {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Composition `p(x + c)`.
    pub fn compose_shift(&self, c: &BigInt) -> Self {
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `x^d p(1/x)` where `d = deg p`: the coefficient list reversed.
    pub fn reciprocal(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of `p(x)` computed on the homogenised numerator, without building
    /// rational intermediates.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // sum c_i num^i den^(d-i), accumulated from the top coefficient down
        for c in self.coeffs[..=d].iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // p(x) = acc / den^d
        let s = acc.sign();
        let s = if den.is_negative() && d % 2 == 1 {
            -s
        } else {
            s
        };
        match s {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content, normalising the leading coefficient to be positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder. Returns `r` with `lc(d)^s * self = q * d + r` and the
    /// sign of `lc(d)^s`.
    pub fn pseudo_rem(&self, d: &Self) -> (Self, Ordering) {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(&lc) - &d.scale(&lr).shift_up(rd - dd);
            steps += 1;
        }
        let sign = if lc.is_negative() && steps % 2 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        };
        (r, sign)
    }

    /// Exact quotient over the integers; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: d.to_string(),
        };
        let dd = d.degree().ok_or_else(not_divisible)?;
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return Err(not_divisible());
            }
            let (c, rem) = r.leading().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return Err(not_divisible());
            }
            r = &r - &d.scale(&c).shift_up(rd - dd);
            q[rd - dd] = c;
        }
        Ok(Self::new(q))
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// `p / gcd(p, p')`, primitive, positive leading coefficient.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    pub fn is_square_free(&self) -> bool {
        self.degree().is_none_or(|d| d == 0) || self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Renders in ascending powers, e.g. `2 - 4λ + λ^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("λ"))
    }
}

/// Serialised as a JSON array of decimal strings, constant term first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $f(self, rhs: IntPolynomial) -> IntPolynomial { (&self).$f(&rhs) }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $f(self, rhs: &IntPolynomial) -> IntPolynomial { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}
