//! Finite sums `Σ r_p π^p` with exact rational `r_p` and integer `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact linear combination of (possibly negative) integer powers of π.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiPolynomial {
    terms: BTreeMap<i32, BigRational>,
}

impl PiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// `coeff · π^power`.
    pub fn monomial(coeff: BigRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        Self { terms }
    }

    /// `num/den · π^power` for small integers.
    pub fn from_ratio(num: i64, den: i64, power: i32) -> Self {
        Self::monomial(BigRational::new(num.into(), den.into()), power)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(power, coefficient)` pairs in increasing power order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn coefficient(&self, power: i32) -> BigRational {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Multiplies by `π^k`.
    pub fn shift_power(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(p, c)| (*p, c * r)).collect(),
        }
    }

    fn add_term(&mut self, power: i32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(power).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&power);
        }
    }

    /// Sign of the value, evaluated in floating point.
    pub fn signum(&self) -> f64 {
        let v = self.to_f64();
        if self.is_zero() || v == 0.0 {
            0.0
        } else {
            v.signum()
        }
    }

    /// Double-precision value. Each rational is rounded once and π is the
    /// nearest double.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| ratio_to_f64(c) * std::f64::consts::PI.powi(*p))
            .sum()
    }
}

/// Rational to nearest-ish double, robust to numerators and denominators
/// far outside the `f64` range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = |x: &BigInt| x.bits() as i64;
    let excess = (shift(r.numer()) - 60).max(0) - (shift(r.denom()) - 60).max(0);
    let n = r.numer().abs() >> ((shift(r.numer()) - 60).max(0) as usize);
    let d = r.denom().clone() >> ((shift(r.denom()) - 60).max(0) as usize);
    let v = n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN);
    let v = v * 2f64.powi(excess as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

impl AddAssign<&PiPolynomial> for PiPolynomial {
    fn add_assign(&mut self, rhs: &PiPolynomial) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, c.clone());
        }
    }
}

impl Add<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;

    fn add(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;

    fn sub(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, -c.clone());
        }
        out
    }
}

impl Neg for &PiPolynomial {
    type Output = PiPolynomial;

    fn neg(self) -> PiPolynomial {
        PiPolynomial {
            terms: self.terms.iter().map(|(p, c)| (*p, -c.clone())).collect(),
        }
    }
}

impl Mul<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;

    fn mul(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = PiPolynomial::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p + q, a * b);
            }
        }
        out
    }
}

impl fmt::Display for PiPolynomial {
    /// `0`, or terms like `1/36*pi^2 - 1/675*pi^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", mag)?;
            match p {
                0 => {}
                1 => write!(f, "*pi")?,
                _ => write!(f, "*pi^{p}")?,
            }
        }
        Ok(())
    }
}
