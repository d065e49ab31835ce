//! Canonical text form of a series:
//!
//! ```json
//! {"nvars": 2, "truncation": 3, "terms": [{"e": [1, 0], "c": "1/2"}]}
//! ```
//!
//! Terms are listed in ascending graded-lex order and coefficients are always
//! written `num/den` in lowest terms. `truncation` is `null` for a polynomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{Rational, Rationals};
use super::monomial::ExponentVec;
use super::poly::SparseSeries;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub nvars: usize,
    pub truncation: Option<i32>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub e: Vec<i32>,
    pub c: String,
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl From<&SparseSeries> for SeriesDoc {
    fn from(s: &SparseSeries) -> Self {
        SeriesDoc {
            nvars: s.nvars(),
            truncation: s.truncation(),
            terms: s
                .terms()
                .map(|(e, c)| TermDoc { e: e.as_slice().to_vec(), c: format_rational(c) })
                .collect(),
        }
    }
}

impl TryFrom<&SeriesDoc> for SparseSeries {
    type Error = Error;

    fn try_from(doc: &SeriesDoc) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            if t.e.len() != doc.nvars {
                return Err(Error::VariableCountMismatch(doc.nvars, t.e.len()));
            }
            let e = ExponentVec::new(t.e.clone());
            if doc.truncation.is_some() && e.has_negative() {
                return Err(Error::Invalid("negative exponent in a truncated series".into()));
            }
            terms.push((e, parse_rational(&t.c)?));
        }
        Ok(SparseSeries::from_terms(Rationals, doc.nvars, doc.truncation, terms))
    }
}

pub fn series_to_json(s: &SparseSeries) -> String {
    serde_json::to_string(&SeriesDoc::from(s)).expect("series document serializes")
}

pub fn series_from_json(text: &str) -> Result<SparseSeries> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    SparseSeries::try_from(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::frac;

    #[test]
    fn canonical_text() {
        let s = SparseSeries::from_terms(
            Rationals,
            2,
            Some(3),
            [(ExponentVec::from([1, 0]), frac(-1, 2)), (ExponentVec::from([0, 0]), frac(3, 1))],
        );
        assert_eq!(
            series_to_json(&s),
            r#"{"nvars":2,"truncation":3,"terms":[{"e":[0,0],"c":"3/1"},{"e":[1,0],"c":"-1/2"}]}"#
        );
        assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(series_from_json(r#"{"nvars":1,"truncation":2,"terms":[{"e":[1,0],"c":"1"}]}"#).is_err());
        assert!(series_from_json(r#"{"nvars":1,"truncation":2,"terms":[{"e":[1],"c":"1/0"}]}"#).is_err());
        assert!(parse_rational("3/-4").is_err());
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
    }
}
