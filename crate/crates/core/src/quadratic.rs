//! Exact arithmetic in real quadratic fields and the Veech criterion for
//! wind-tree parameters `(a, b)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadraticError {
    #[error("D = {0} is not a square-free integer ≥ 1")]
    NonCanonical(u64),
    #[error("parameter {0} is outside (0, 1)")]
    OutOfRange(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields Q(√{0}) and Q(√{1})")]
    FieldMismatch(u64, u64),
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `x + y√D` with `x, y ∈ ℚ` and `D` square-free; `D = 1` exactly when `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    x: BigRational,
    y: BigRational,
    d: u64,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

impl QuadraticNumber {
    pub fn new(x: BigRational, y: BigRational, d: u64) -> Result<Self, QuadraticError> {
        if !is_square_free(d) {
            return Err(QuadraticError::NonCanonical(d));
        }
        Ok(if y.is_zero() {
            Self::rational(x)
        } else if d == 1 {
            Self::rational(x + y)
        } else {
            Self { x, y, d }
        })
    }

    pub fn rational(x: BigRational) -> Self {
        Self {
            x,
            y: BigRational::zero(),
            d: 1,
        }
    }

    /// `p/q + (r/s)√D` from machine integers.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64, d: u64) -> Result<Self, QuadraticError> {
        if q == 0 || s == 0 {
            return Err(QuadraticError::DivisionByZero);
        }
        Self::new(rat(p, q), rat(r, s), d)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }
    pub fn y(&self) -> &BigRational {
        &self.y
    }
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    fn common_field(&self, o: &Self) -> Result<u64, QuadraticError> {
        match (self.d, o.d) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(QuadraticError::FieldMismatch(d, e)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, QuadraticError> {
        let d = self.common_field(o)?;
        Self::new(&self.x + &o.x, &self.y + &o.y, d)
    }

    pub fn neg(&self) -> Self {
        Self {
            x: -&self.x,
            y: -&self.y,
            d: self.d,
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, QuadraticError> {
        self.add(&o.neg())
    }

    /// `1 / (x + y√D) = (x − y√D) / (x² − y²D)`.
    pub fn recip(&self) -> Result<Self, QuadraticError> {
        let norm = &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.d.into());
        if norm.is_zero() {
            return Err(QuadraticError::DivisionByZero);
        }
        Self::new(&self.x / &norm, -&self.y / &norm, self.d)
    }

    /// Exact sign of `x + y√D`.
    pub fn signum(&self) -> i32 {
        let sx = sign(&self.x);
        let sy = sign(&self.y);
        if sx == 0 || sy == 0 || sx == sy {
            return if sx != 0 { sx } else { sy };
        }
        // opposite signs: compare x² with y²D
        let x2 = &self.x * &self.x;
        let y2d = &self.y * &self.y * BigRational::from_integer(self.d.into());
        if x2 > y2d {
            sx
        } else {
            sy
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        let one = Self::rational(BigRational::one());
        self.signum() > 0 && one.sub(self).map(|r| r.signum() > 0).unwrap_or(false)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.x) + f(&self.y) * (self.d as f64).sqrt()
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

fn parse_rational(s: &str, input: &str) -> Result<BigRational, QuadraticError> {
    let err = |reason: &str| QuadraticError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(QuadraticError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Accepts sums of terms, each a rational `p/q` or a multiple `r/s*sqrt(D)`,
/// such as `p/q + r/s*sqrt(D)` or `sqrt(3) - 1`. Integers may omit the
/// denominator and a unit coefficient may be left out.
impl FromStr for QuadraticNumber {
    type Err = QuadraticError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| QuadraticError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty expression"));
        }
        // a sign starts a new term unless it directly follows an operator
        let mut terms = Vec::new();
        let mut begin = 0;
        let bytes = s.as_bytes();
        for (i, &ch) in bytes.iter().enumerate() {
            if i > 0 && (ch == b'+' || ch == b'-') && (bytes[i - 1].is_ascii_digit() || bytes[i - 1] == b')') {
                terms.push(&s[begin..i]);
                begin = i;
            }
        }
        terms.push(&s[begin..]);

        let mut x = BigRational::zero();
        let mut y = BigRational::zero();
        let mut d = 1u64;
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            let Some(root) = term.find("sqrt(") else {
                x += parse_rational(term, input)?;
                continue;
            };
            let radicand = term[root + 5..]
                .strip_suffix(')')
                .ok_or_else(|| err("expected `)` at the end of a sqrt term"))?;
            let this_d: u64 = radicand.parse().map_err(|_| err("bad radicand"))?;
            if y.is_zero() {
                d = this_d;
            } else if this_d != d {
                return Err(err("more than one radicand"));
            }
            let coef = &term[..root];
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            y += match coef {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                t => parse_rational(t, input)?,
            };
        }
        Self::new(x, y, d)
    }
}

/// Whether the wind-tree table with parameters `(a, b)` has a lattice Veech
/// group: both rational, or `1/(1−a) = x + y√D` and `1/(1−b) = (1−x) + y√D`.
pub fn calta_mcmullen_is_veech(a: &QuadraticNumber, b: &QuadraticNumber) -> Result<bool, QuadraticError> {
    for p in [a, b] {
        if !is_square_free(p.d) {
            return Err(QuadraticError::NonCanonical(p.d));
        }
        if !p.in_unit_interval() {
            return Err(QuadraticError::OutOfRange(p.to_string()));
        }
    }
    if a.is_rational() && b.is_rational() {
        return Ok(true);
    }
    if !a.is_rational() && !b.is_rational() && a.d != b.d {
        return Ok(false);
    }
    let one = QuadraticNumber::rational(BigRational::one());
    let ra = one.sub(a)?.recip()?;
    let rb = one.sub(b)?.recip()?;
    Ok(ra.y == rb.y && &ra.x + &rb.x == BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn parses_grammar() {
        assert_eq!(q("1/2"), QuadraticNumber::from_parts(1, 2, 0, 1, 1).unwrap());
        assert_eq!(q("2 - sqrt(2)"), QuadraticNumber::from_parts(2, 1, -1, 1, 2).unwrap());
        assert_eq!(q("1/1 + -1/2*sqrt(2)"), QuadraticNumber::from_parts(1, 1, -1, 2, 2).unwrap());
        assert_eq!(q("-1/3+2/5*sqrt(7)"), QuadraticNumber::from_parts(-1, 3, 2, 5, 7).unwrap());
        assert!(matches!("1/0".parse::<QuadraticNumber>(), Err(QuadraticError::DivisionByZero)));
        assert!(matches!("1/2 + sqrt(8)".parse::<QuadraticNumber>(), Err(QuadraticError::NonCanonical(8))));
        assert!("abc".parse::<QuadraticNumber>().is_err());
    }

    #[test]
    fn sign_and_recip() {
        assert_eq!(q("2 - sqrt(2)").signum(), 1);
        assert_eq!(q("1 - sqrt(2)").signum(), -1);
        assert_eq!(q("0").signum(), 0);
        let r = q("sqrt(2) - 1").recip().unwrap();
        assert_eq!(r, q("1 + sqrt(2)"));
    }

    #[test]
    fn worked_examples() {
        let half = q("1/2");
        assert!(calta_mcmullen_is_veech(&half, &half).unwrap());
        let a = q("2 - sqrt(2)");
        let b = q("1 - 1/2*sqrt(2)");
        assert!(calta_mcmullen_is_veech(&a, &b).unwrap());
        assert!(!calta_mcmullen_is_veech(&a, &half).unwrap());
    }

    #[test]
    fn range_and_field_checks() {
        assert!(matches!(
            calta_mcmullen_is_veech(&q("3/2"), &q("1/2")),
            Err(QuadraticError::OutOfRange(_))
        ));
        assert!(!calta_mcmullen_is_veech(&q("2 - sqrt(2)"), &q("sqrt(3) - 1")).unwrap());
    }
}
