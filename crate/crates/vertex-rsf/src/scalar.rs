//! Exact scalars and the small amount of univariate polynomial algebra the
//! verification suites need.
//!
//! Everything in the crate is generic over [`Field`], a bundle of `num-traits`
//! bounds. The only instantiation that makes the exact identity checks
//! meaningful is [`Rational`]; floating types satisfy the bounds too but are
//! not used anywhere in the library.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = BigRational;

/// Scalar field used by every computation in the crate.
pub trait Field:
    NumRef
    + NumAssignRef
    + Signed
    + FromPrimitive
    + ToPrimitive
    + PartialOrd
    + Clone
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Embeds a machine integer.
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("every field embeds the integers")
    }

    /// `num / den` built from machine integers.
    fn ratio(num: i64, den: i64) -> Self {
        Self::int(num) / Self::int(den)
    }
}

impl<T> Field for T where
    T: NumRef
        + NumAssignRef
        + Signed
        + FromPrimitive
        + ToPrimitive
        + PartialOrd
        + Clone
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate abscissa in interpolation data")]
    DuplicateAbscissa,
    #[error("pole is not simple (denominator derivative vanishes)")]
    NonSimplePole,
    #[error("pole is not a root of the denominator")]
    NotAPole,
    #[error("need {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("sample abscissa coincides with a root of the denominator")]
    SampleOnPole,
}

/// Parses `"p/q"` or `"p"` with an optional sign on the numerator.
pub fn rat_parse(text: &str) -> Result<Rational, ScalarError> {
    let t = text.trim();
    let malformed = || ScalarError::Malformed(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let numer = BigInt::from_str(num).map_err(|_| malformed())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            BigInt::from_str(d).map_err(|_| malformed())?
        }
    };
    if denom.is_zero() {
        return Err(ScalarError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form, `"p/q"` or `"p"` for integers. Inverse of [`rat_parse`].
pub fn rat_format(r: &Rational) -> String {
    r.to_string()
}

/// `num / den`, refusing to divide by an exact zero.
pub fn checked_div<T: Field>(num: T, den: &T) -> Result<T, ScalarError> {
    if den.is_zero() {
        Err(ScalarError::DivisionByZero)
    } else {
        Ok(num / den)
    }
}

/// Integer power with negative exponents allowed.
pub fn powi<T: Field>(base: &T, exp: i64) -> Result<T, ScalarError> {
    let mut acc = T::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        checked_div(T::one(), &acc)
    } else {
        Ok(acc)
    }
}

/// Dense univariate polynomial; `coeffs[d]` multiplies `z^d`. The coefficient
/// vector never ends in a zero, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear factor `z - root`.
    pub fn linear_root(root: &T) -> Self {
        Self::new(vec![-root.clone(), T::one()])
    }

    /// `a + b z`.
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| c.clone() * T::int(d as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|d| {
                let mut c = self.coeffs.get(d).cloned().unwrap_or_else(T::zero);
                if let Some(o) = other.coeffs.get(d) {
                    c += o;
                }
                c
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a.clone() * b);
            }
        }
        Self::new(out)
    }
}

/// Lagrange interpolation through `points`; the result has degree below
/// `points.len()` and collapses when the data allow it.
pub fn lagrange_interpolate<T: Field>(points: &[(T, T)]) -> Result<Poly<T>, ScalarError> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| b == a) {
            return Err(ScalarError::DuplicateAbscissa);
        }
    }
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(T::one());
        let mut denom = T::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::linear_root(xj));
                denom *= &(xi.clone() - xj);
            }
        }
        acc = acc.add(&basis.scale(&(yi.clone() / &denom)));
    }
    Ok(acc)
}

/// Residue of `P/denom` at a simple root `pole` of `denom`, where `P` is known
/// only through samples `(z, P(z))` and has degree at most `degree_bound`.
pub fn residue_at_simple_pole<T: Field>(
    numerator_samples: &[(T, T)],
    denom: &Poly<T>,
    pole: &T,
    degree_bound: usize,
) -> Result<T, ScalarError> {
    let need = degree_bound + 1;
    if numerator_samples.len() < need {
        return Err(ScalarError::TooFewSamples {
            need,
            got: numerator_samples.len(),
        });
    }
    if !denom.eval(pole).is_zero() {
        return Err(ScalarError::NotAPole);
    }
    if numerator_samples
        .iter()
        .any(|(z, _)| denom.eval(z).is_zero())
    {
        return Err(ScalarError::SampleOnPole);
    }
    let slope = denom.derivative().eval(pole);
    if slope.is_zero() {
        return Err(ScalarError::NonSimplePole);
    }
    let p = lagrange_interpolate(&numerator_samples[..need])?;
    Ok(p.eval(pole) / slope)
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// division is exact, so over the rationals no spurious growth accumulates.
pub fn bareiss_determinant<T: Field>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * &a[k][k] - a[i][k].clone() * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
