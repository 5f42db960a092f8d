//! Human-readable labels. Rays print 1-based as `v1, v2, ...`; JSON output
//! keeps the 0-based indices of the fan format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use toricnef::{LatticeVector, RatVector};

use crate::CliError;

pub fn ray(i: usize) -> String {
    format!("v{}", i + 1)
}

pub fn cone(indices: &[usize]) -> String {
    if indices.is_empty() {
        return "{0}".into();
    }
    format!("<{}>", indices.iter().map(|&i| ray(i)).collect::<Vec<_>>().join(","))
}

pub fn collection(indices: &[usize]) -> String {
    format!("{{{}}}", indices.iter().map(|&i| ray(i)).collect::<Vec<_>>().join(", "))
}

/// `a_1 x_1 + ... ` with unit coefficients elided, e.g. `v1 + v2 - 2v6`.
pub fn combination<C: Coefficient>(terms: impl IntoIterator<Item = (String, C)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero_coeff() {
            continue;
        }
        let negative = c.is_negative_coeff();
        let magnitude = c.magnitude();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude != "1" {
            out.push_str(&magnitude);
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub trait Coefficient {
    fn is_zero_coeff(&self) -> bool;
    fn is_negative_coeff(&self) -> bool;
    fn magnitude(&self) -> String;
}

impl Coefficient for BigInt {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn magnitude(&self) -> String {
        self.abs().to_string()
    }
}

impl Coefficient for BigRational {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn magnitude(&self) -> String {
        let m = self.abs();
        if m.denom().is_one() {
            m.to_string()
        } else {
            format!("({m})")
        }
    }
}

/// `Σ c_i v_i = 0` written out.
pub fn relation(c: &[BigInt]) -> String {
    format!("{} = 0", combination(c.iter().enumerate().map(|(i, x)| (ray(i), x.clone()))))
}

pub fn divisor(d: &RatVector) -> String {
    combination(d.coords().iter().enumerate().map(|(i, x)| (format!("D{}", i + 1), x.clone())))
}

pub fn vectors(vs: &[LatticeVector]) -> Vec<String> {
    vs.iter().map(ToString::to_string).collect()
}

pub fn parse_integers(text: &str, what: &str) -> Result<Vec<BigInt>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("{what}: \"{}\" is not an integer", t.trim())))
        })
        .collect()
}
