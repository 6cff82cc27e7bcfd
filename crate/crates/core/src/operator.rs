//! Exact qubit operators in Bloch form.
//!
//! A Hermitian 2×2 operator is stored as `alpha·𝟙 + rx·σx + ry·σy + rz·σz`
//! with rational coefficients. Its eigenvalues are `alpha ± |r|`, so every
//! predicate needed downstream (positivity, effect bounds, the `|M| > 1/2`
//! threshold) reduces to comparisons of rationals and squared norms.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = BigRational;

/// Builds `numer / denom`. Panics if `denom == 0`.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalSyntaxError {
    #[error("empty rational")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator must be positive")]
    NegativeDenominator,
}

/// Parses `p/q` or `p`. Non-reduced input such as `2/4` is accepted and
/// reduced.
pub fn parse_rational(text: &str) -> Result<Rational, RationalSyntaxError> {
    fn integer(s: &str) -> Result<BigInt, RationalSyntaxError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalSyntaxError::InvalidInteger(s.to_string()));
        }
        s.parse()
            .map_err(|_| RationalSyntaxError::InvalidInteger(s.to_string()))
    }

    if text.is_empty() {
        return Err(RationalSyntaxError::Empty);
    }
    match text.split_once('/') {
        None => Ok(Rational::from_integer(integer(text)?)),
        Some((p, q)) => {
            let numer = integer(p)?;
            if q.starts_with(['-', '+']) {
                return Err(RationalSyntaxError::NegativeDenominator);
            }
            let denom = integer(q)?;
            if denom.is_zero() {
                return Err(RationalSyntaxError::ZeroDenominator);
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("proportionality is undefined for the zero operator")]
    ZeroOperand,
    #[error("operator is not positive semidefinite")]
    NotPositive,
    #[error("operator is not an effect (0 <= M <= 1 fails)")]
    NotAnEffect,
    #[error("scale factor must be strictly positive")]
    NonPositiveScale,
    #[error("Bloch vector of a state must have norm at most 1")]
    InvalidState,
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Hermitian qubit operator `alpha·𝟙 + r·σ`.
///
/// Field order gives the canonical ordering used for class numbering:
/// `alpha`, then `rx`, `ry`, `rz`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitOperator {
    alpha: Rational,
    r: [Rational; 3],
}

impl QubitOperator {
    pub fn new(alpha: Rational, r: [Rational; 3]) -> Self {
        QubitOperator { alpha, r }
    }

    /// Convenience constructor from `(numer, denom)` pairs.
    pub fn from_ratios(alpha: (i64, i64), r: [(i64, i64); 3]) -> Self {
        QubitOperator {
            alpha: rational(alpha.0, alpha.1),
            r: r.map(|(n, d)| rational(n, d)),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn zero() -> Self {
        Self::scalar(Rational::zero())
    }

    pub fn scalar(alpha: Rational) -> Self {
        QubitOperator {
            alpha,
            r: [Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn bloch(&self) -> &[Rational; 3] {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.r.iter().all(Zero::is_zero)
    }

    /// `|r|²`, the squared half-gap between the eigenvalues.
    pub fn bloch_norm_sq(&self) -> Rational {
        dot(&self.r, &self.r)
    }

    /// `alpha >= 0` and `alpha² >= |r|²`.
    pub fn is_psd(&self) -> bool {
        !self.alpha.is_negative() && &self.alpha * &self.alpha >= self.bloch_norm_sq()
    }

    /// `0 <= M <= 𝟙`.
    pub fn is_effect(&self) -> bool {
        self.is_psd() && self.complement().is_psd()
    }

    /// `𝟙 − M`.
    pub fn complement(&self) -> Self {
        QubitOperator {
            alpha: Rational::one() - &self.alpha,
            r: self.r.clone().map(Neg::neg),
        }
    }

    /// Multiplies by a strictly positive rational.
    pub fn scale(&self, gamma: &Rational) -> Result<Self, OperatorError> {
        if !gamma.is_positive() {
            return Err(OperatorError::NonPositiveScale);
        }
        Ok(self.scaled(gamma))
    }

    fn scaled(&self, gamma: &Rational) -> Self {
        QubitOperator {
            alpha: &self.alpha * gamma,
            r: self.r.clone().map(|c| c * gamma),
        }
    }

    /// Returns `γ > 0` with `other = γ·self`, if one exists.
    pub fn proportionality(&self, other: &Self) -> Result<Option<Rational>, OperatorError> {
        if self.is_zero() || other.is_zero() {
            return Err(OperatorError::ZeroOperand);
        }
        let lhs = std::iter::once(&self.alpha).chain(self.r.iter());
        let rhs = std::iter::once(&other.alpha).chain(other.r.iter());
        let mut gamma: Option<Rational> = None;
        for (a, b) in lhs.zip(rhs) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (true, false) | (false, true) => return Ok(None),
                (false, false) => {
                    let ratio = b / a;
                    match &gamma {
                        None => gamma = Some(ratio),
                        Some(g) if *g == ratio => {}
                        Some(_) => return Ok(None),
                    }
                }
            }
        }
        // Both operands are nonzero, so some coefficient fixed gamma.
        Ok(gamma.filter(Signed::is_positive))
    }

    /// Whether the largest eigenvalue `alpha + |r|` is strictly above 1/2.
    pub fn norm_exceeds_half(&self) -> Result<bool, OperatorError> {
        if !self.is_psd() {
            return Err(OperatorError::NotPositive);
        }
        let half = rational(1, 2);
        if self.alpha > half {
            return Ok(true);
        }
        let gap = half - &self.alpha;
        Ok(self.bloch_norm_sq() > &gap * &gap)
    }

    /// `Tr(ρM) = alpha + r·s`.
    pub fn born_probability(&self, state: &QubitState) -> Result<Rational, OperatorError> {
        if !self.is_effect() {
            return Err(OperatorError::NotAnEffect);
        }
        Ok(&self.alpha + dot(&self.r, &state.s))
    }
}

impl Add for &QubitOperator {
    type Output = QubitOperator;

    fn add(self, rhs: &QubitOperator) -> QubitOperator {
        QubitOperator {
            alpha: &self.alpha + &rhs.alpha,
            r: [
                &self.r[0] + &rhs.r[0],
                &self.r[1] + &rhs.r[1],
                &self.r[2] + &rhs.r[2],
            ],
        }
    }
}

impl Sub for &QubitOperator {
    type Output = QubitOperator;

    fn sub(self, rhs: &QubitOperator) -> QubitOperator {
        QubitOperator {
            alpha: &self.alpha - &rhs.alpha,
            r: [
                &self.r[0] - &rhs.r[0],
                &self.r[1] - &rhs.r[1],
                &self.r[2] - &rhs.r[2],
            ],
        }
    }
}

impl std::iter::Sum for QubitOperator {
    fn sum<I: Iterator<Item = QubitOperator>>(iter: I) -> Self {
        iter.fold(QubitOperator::zero(), |acc, m| &acc + &m)
    }
}

impl<'a> std::iter::Sum<&'a QubitOperator> for QubitOperator {
    fn sum<I: Iterator<Item = &'a QubitOperator>>(iter: I) -> Self {
        iter.fold(QubitOperator::zero(), |acc, m| &acc + m)
    }
}

impl fmt::Display for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} r=({},{},{})",
            format_rational(&self.alpha),
            format_rational(&self.r[0]),
            format_rational(&self.r[1]),
            format_rational(&self.r[2])
        )
    }
}

/// Qubit density operator `ρ = ½(𝟙 + s·σ)` with `|s| <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitState {
    s: [Rational; 3],
}

impl QubitState {
    pub fn new(s: [Rational; 3]) -> Result<Self, OperatorError> {
        if dot(&s, &s) > Rational::one() {
            return Err(OperatorError::InvalidState);
        }
        Ok(QubitState { s })
    }

    pub fn from_ratios(s: [(i64, i64); 3]) -> Result<Self, OperatorError> {
        Self::new(s.map(|(n, d)| rational(n, d)))
    }

    pub fn maximally_mixed() -> Self {
        QubitState {
            s: [Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn bloch(&self) -> &[Rational; 3] {
        &self.s
    }
}
