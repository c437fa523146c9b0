//! Half-integers stored as doubled integers, rendered as `k/2`.

use std::fmt;

use crate::error::{HflError, Result};

/// Render a doubled value: `4 -> "2"`, `-3 -> "-3/2"`.
pub fn fmt_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// Parse `"3"`, `"-1/2"`, `"5/2"` into a doubled integer.
pub fn parse_half(text: &str) -> Result<i64> {
    let t = text.trim();
    let bad = || HflError::validation(format!("expected an integer or k/2, got {text:?}"));
    match t.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i64>().map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => t.parse::<i64>().map(|v| 2 * v).map_err(|_| bad()),
    }
}

/// A coordinate of an extended lattice point: finite (doubled) or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Ext {
    pub fn parse(text: &str) -> Result<Ext> {
        match text.trim() {
            "inf" | "+inf" => Ok(Ext::PosInf),
            "-inf" => Ok(Ext::NegInf),
            t => parse_half(t).map(Ext::Finite),
        }
    }

    /// Comma-separated list, e.g. `"inf,-1/2"`.
    pub fn parse_list(text: &str) -> Result<Vec<Ext>> {
        text.split(',').map(Ext::parse).collect()
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Finite(d) => write!(f, "{}", fmt_half(*d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for d in -7..8 {
            assert_eq!(parse_half(&fmt_half(d)).unwrap(), d);
        }
        assert!(parse_half("1/3").is_err());
        assert_eq!(Ext::parse_list("inf,-inf,1/2").unwrap(), vec![Ext::PosInf, Ext::NegInf, Ext::Finite(1)]);
    }
}
