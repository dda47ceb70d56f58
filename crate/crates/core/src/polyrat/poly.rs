use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest degree accepted by the root finder.
pub const MAX_DEGREE: usize = 64;

const DEFAULT_TRIM: f64 = 1e-12;

/// A complex polynomial, `coeffs[j]` multiplying `λ^j`.
///
/// Construction trims top coefficients whose modulus falls below
/// `1e-12 · max|coeff|`, so the leading coefficient is always significant.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self::with_trim(coeffs, DEFAULT_TRIM)
    }

    /// Trim relative to the largest coefficient modulus.
    pub fn with_trim(mut coeffs: Vec<Complex64>, rel_tol: f64) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            coeffs.clear();
            return Self { coeffs };
        }
        let cut = rel_tol * scale;
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `λ`.
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    /// `α + β λ`.
    pub fn linear(alpha: Complex64, beta: Complex64) -> Self {
        Self::new(vec![alpha, beta])
    }

    /// `lead · ∏ (λ - r)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut out = vec![lead];
        for &r in roots {
            out = mul_raw(&out, &[-r, Complex64::new(1.0, 0.0)]);
        }
        Self::new(out)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Complex64::new(0.0, 0.0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * j as f64)
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// Divide out the monic linear factor `(λ - r)`, dropping the remainder.
    pub fn deflate(&self, r: Complex64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for j in (1..n).rev() {
            carry = self.coeffs[j] + carry * r;
            q[j - 1] = carry;
        }
        Self::new(q)
    }

    /// Make the leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(l.inv()),
            None => Self::zero(),
        }
    }

    /// Max coefficient-wise distance, treating missing coefficients as zero.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let a = self.padded(n);
        let b = other.padded(n);
        a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn mul_raw(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_raw(a: &[Complex64], b: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|j| {
            let x = a.get(j).copied().unwrap_or_default();
            let y = b.get(j).copied().unwrap_or_default();
            x + y * sign
        })
        .collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(add_raw(&self.coeffs, &rhs.coeffs, 1.0))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::new(add_raw(&self.coeffs, &rhs.coeffs, -1.0))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::new(mul_raw(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul<Complex64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Complex64) -> Poly {
        self.scale(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale_real(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "Poly(0)");
        }
        write!(f, "Poly[")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({:.6e}{:+.6e}i)", c.re, c.im)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        if pairs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(serde::de::Error::custom("non-finite polynomial coefficient"));
        }
        Ok(Poly::new(
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::from_real(&[1.0]).eval(c(7.0, 2.0)), c(1.0, 0.0));
        assert_eq!(Poly::identity().eval(c(0.0, 1.0)), c(0.0, 1.0));
        assert!((Poly::from_real(&[0.25, 1.0]).eval(c(1.0, 0.0)) - c(1.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert!(Poly::from_real(&[5.0]).derivative().is_zero());
        assert_eq!(Poly::from_real(&[0.0, 0.0, 1.0]).derivative(), Poly::from_real(&[0.0, 2.0]));
        let d = Poly::from_real(&[0.0, 0.5, 1.0]).derivative();
        assert!((d.eval(c(-1.0, 0.0)) - c(-1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_polynomial_is_distinguished() {
        let z = Poly::new(vec![c(0.0, 0.0); 3]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn trimming_drops_negligible_top() {
        let p = Poly::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-14, 0.0)]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn deflate_removes_root() {
        let p = Poly::from_roots(c(2.0, 0.0), &[c(0.5, 0.1), c(-1.0, 0.0)]);
        let q = p.deflate(c(-1.0, 0.0));
        assert!(q.max_coeff_diff(&Poly::from_roots(c(2.0, 0.0), &[c(0.5, 0.1)])) < 1e-14);
    }

    #[test]
    fn json_is_pairs() {
        let p = Poly::new(vec![c(1.0, -2.0), c(0.0, 1.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,-2.0],[0.0,1.0]]");
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
