//! Exact numeric values for FILTER comparison.
//!
//! Every numeric lexical form denotes a rational number (or an infinity), so
//! `xsd:integer`, `xsd:decimal` and `xsd:double` compare without rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rdf::Literal;
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Numeric {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Ord for Numeric {
    fn cmp(&self, other: &Self) -> Ordering {
        use Numeric::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Numeric {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `[+-]digits[.digits][(e|E)[+-]digits]`, also `.5` and `5.`; exact.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let (negative, rest) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let exp: i64 = match exponent {
        Some(e) => {
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 6 {
                return None;
            }
            e.parse().ok()?
        }
        None => 0,
    };
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u8);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    !s.contains(['e', 'E']) && parse_decimal(s).is_some()
}

/// Value of a numeric literal. `None` for non-numeric datatypes, ill-typed
/// lexical forms and NaN.
pub fn literal_value(l: &Literal) -> Option<Numeric> {
    let dt = l.datatype().as_str();
    if !ns::is_numeric_datatype(dt) {
        return None;
    }
    let lex = l.lexical().trim();
    match dt {
        ns::XSD_DOUBLE | ns::XSD_FLOAT => match lex {
            "INF" | "+INF" => Some(Numeric::PosInf),
            "-INF" => Some(Numeric::NegInf),
            _ => parse_decimal(lex).map(Numeric::Finite),
        },
        ns::XSD_DECIMAL => is_decimal_lexical(lex).then(|| parse_decimal(lex).map(Numeric::Finite))?,
        _ => is_integer_lexical(lex).then(|| parse_decimal(lex).map(Numeric::Finite))?,
    }
}

/// Parses a numeric token as written in a query (`5`, `5.0`, `1e3`, `INF`).
pub fn parse_query_number(s: &str) -> Option<Numeric> {
    match s {
        "INF" | "+INF" => Some(Numeric::PosInf),
        "-INF" => Some(Numeric::NegInf),
        _ => parse_decimal(s).map(Numeric::Finite),
    }
}

impl Numeric {
    pub fn zero() -> Self {
        Numeric::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        Numeric::Finite(BigRational::one())
    }
}
