//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::LinalgError;
use crate::field::{FieldSpec, Scalar};

/// A polynomial in `k[x]`, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Self {
        debug_assert!(coeffs.iter().all(|c| field.contains(c)));
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: FieldSpec, c: Scalar, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Poly { field, coeffs }
    }

    /// `x^d`.
    pub fn x_pow(field: FieldSpec, d: usize) -> Self {
        Self::monomial(field, field.one(), d)
    }

    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0, for bounds bookkeeping.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn check_field(&self, other: &Poly) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, LinalgError> {
        self.check_field(other)?;
        let k = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Poly::new(k, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, LinalgError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, LinalgError> {
        self.check_field(other)?;
        let k = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(k));
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Ok(Poly::new(k, out))
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), LinalgError> {
        self.check_field(divisor)?;
        let k = self.field;
        let d = divisor.degree().ok_or(LinalgError::DivisionByZero)?;
        let lead_inv = k.inv(divisor.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = k.mul(&rem[i], &lead_inv);
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = k.mul(&c, b);
                rem[i - d + j] = k.sub(&rem[i - d + j], &t);
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        Ok((Poly::new(k, quot), Poly::new(k, rem)))
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, LinalgError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let k = self.field;
        Poly::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Monic associate together with the leading coefficient that was divided out.
    pub fn monic(&self) -> (Poly, Scalar) {
        match self.lead() {
            None => (self.clone(), self.field.one()),
            Some(l) => {
                let l = l.clone();
                (self.scale(&self.field.inv(&l).unwrap()), l)
            }
        }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let k = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, at), c))
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly, LinalgError> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().0)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                cs
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if cs.contains('/') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        let mut out = String::new();
        for (idx, t) in terms.iter().enumerate() {
            if idx == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

// The operator impls panic on a field mismatch; the `checked_*` methods
// report it instead.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let k = self.field;
        Poly { field: k, coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(FieldSpec::Rationals, c)
    }

    #[test]
    fn product_of_linear_factors() {
        assert_eq!(&q(&[1, 1]) * &q(&[-1, 1]), q(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_exact() {
        let (quot, rem) = q(&[0, 0, 1]).div_rem(&q(&[0, 1])).unwrap();
        assert_eq!(quot, q(&[0, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn divrem_with_remainder() {
        let a = q(&[3, 2, 0, 5]);
        let b = q(&[1, 0, 2]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn characteristic_two_square() {
        let f2 = FieldSpec::prime(2).unwrap();
        let p = Poly::from_i64s(f2, &[1, 1]);
        assert_eq!(&p * &p, Poly::from_i64s(f2, &[1, 0, 1]));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = q(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(q(&[1]).div_rem(&q(&[])), Err(LinalgError::DivisionByZero));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            q(&[1]).checked_add(&Poly::one(f5)),
            Err(LinalgError::FieldMismatch(..))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(q(&[0, 2, -1]).to_string(), "-x^2 + 2*x");
    }
}
