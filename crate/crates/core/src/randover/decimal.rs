use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactgeom::Rational;

/// Fixed-point decimal: `scaled / 10^digits`.
/// Equality and order compare values, not representations.
#[derive(Clone, Debug)]
pub struct FixedDecimal {
    scaled: BigInt,
    digits: u32,
}

fn ten_pow(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), digits as usize)
}

/// `num / den` rounded half away from zero.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    if (r.abs() << 1u32) >= den.abs() {
        if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl FixedDecimal {
    pub fn zero(digits: u32) -> Self {
        Self { scaled: BigInt::zero(), digits }
    }

    pub fn one(digits: u32) -> Self {
        Self { scaled: ten_pow(digits), digits }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, digits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { scaled: div_round(&(num * ten_pow(digits)), den), digits }
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.scaled.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self { scaled: self.scaled.abs(), digits: self.digits }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.digits, other.digits, "precision mismatch");
        Self { scaled: &self.scaled + &other.scaled, digits: self.digits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.digits, other.digits, "precision mismatch");
        Self { scaled: &self.scaled - &other.scaled, digits: self.digits }
    }

    /// `self · num / den`, rounded.
    pub fn mul_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        Self { scaled: div_round(&(&self.scaled * num), den), digits: self.digits }
    }

    pub fn rescale(&self, digits: u32) -> Self {
        let scaled = if digits >= self.digits {
            &self.scaled * ten_pow(digits - self.digits)
        } else {
            div_round(&self.scaled, &ten_pow(self.digits - digits))
        };
        Self { scaled, digits }
    }

    /// Nearest `f64` (the decimal string is parsed with correct rounding).
    pub fn to_f64(&self) -> f64 {
        format!("{}e-{}", self.scaled, self.digits).parse().expect("decimal literal")
    }

    /// `e^{-λ}` for `λ ≥ 0`. The caller must supply enough digits for the
    /// result's magnitude, about `λ / ln 10` beyond the wanted precision.
    pub fn exp_neg(lambda: &Rational, digits: u32) -> Self {
        assert!(!lambda.is_negative(), "exp_neg needs λ ≥ 0");
        // Halve λ until it is at most 1/2, sum the series for e^x, square
        // back up and invert.
        let mut halvings = 0u32;
        let mut x = lambda.clone();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        while x > half {
            x /= BigInt::from(2);
            halvings += 1;
        }
        let guard = 10 + halvings / 3 + 1;
        let work = digits + guard;
        let one = ten_pow(work);
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut j = 1u64;
        loop {
            term = (&term * x.numer()) / (x.denom() * BigInt::from(j));
            if term.is_zero() {
                break;
            }
            sum += &term;
            j += 1;
        }
        for _ in 0..halvings {
            sum = (&sum * &sum) / &one;
        }
        let inverse = div_round(&(&one * &one), &sum);
        Self { scaled: inverse, digits: work }.rescale(digits)
    }

    /// Scientific notation with `significant` digits, truncated.
    pub fn to_scientific(&self, significant: usize) -> String {
        if self.scaled.is_zero() {
            return "0".to_string();
        }
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let text = self.scaled.abs().to_string();
        let exponent = text.len() as i64 - 1 - self.digits as i64;
        let kept = &text[..significant.max(1).min(text.len())];
        let tail = kept[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{}e{exponent}", &kept[..1])
        } else {
            format!("{sign}{}.{tail}e{exponent}", &kept[..1])
        }
    }
}

impl PartialEq for FixedDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for FixedDecimal {}

impl PartialOrd for FixedDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedDecimal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let digits = self.digits.max(other.digits);
        let a = &self.scaled * ten_pow(digits - self.digits);
        let b = &other.scaled * ten_pow(digits - other.digits);
        a.cmp(&b)
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let text = self.scaled.abs().to_string();
        let width = self.digits as usize + 1;
        let padded = format!("{text:0>width$}");
        let (whole, frac) = padded.split_at(padded.len() - self.digits as usize);
        if frac.is_empty() {
            write!(f, "{sign}{whole}")
        } else {
            write!(f, "{sign}{whole}.{frac}")
        }
    }
}
