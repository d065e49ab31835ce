//! JSON ingestion of a family:
//!
//! ```json
//! {"n": 2, "d": 4, "I": [[1,3,0,0], [0,1,3,0]], "truncation": 30, "beta": "griffiths"}
//! ```
//!
//! `beta` is either the string `"griffiths"` or a list of exponent vectors.

use serde::{Deserialize, Serialize};

use super::fermat::{BetaIndex, FamilySpec};
use super::griffiths::griffiths_basis;
use crate::error::{Error, Result};
use crate::exact::ExponentVec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaChoice {
    Named(String),
    List(Vec<Vec<i32>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub n: u32,
    pub d: u32,
    #[serde(rename = "I")]
    pub monomials: Vec<Vec<i32>>,
    pub truncation: u32,
    pub beta: BetaChoice,
}

impl FamilyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))
    }

    pub fn family(&self) -> Result<FamilySpec> {
        FamilySpec::new(
            self.n,
            self.d,
            self.monomials.iter().cloned().map(ExponentVec::new).collect(),
            self.truncation,
        )
    }

    pub fn betas(&self) -> Result<Vec<BetaIndex>> {
        match &self.beta {
            BetaChoice::Named(s) if s == "griffiths" => Ok(griffiths_basis(self.d, self.n)),
            BetaChoice::Named(s) => Err(Error::Invalid(format!("unknown beta selection {s:?}"))),
            BetaChoice::List(list) => list
                .iter()
                .map(|b| {
                    if b.len() != self.n as usize + 2 {
                        return Err(Error::Invalid(format!("beta {b:?} must have {} entries", self.n + 2)));
                    }
                    BetaIndex::new(ExponentVec::new(b.clone()), self.d)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_beta_forms() {
        let c = FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[[1,3,0,0]],"truncation":3,"beta":"griffiths"}"#).unwrap();
        assert_eq!(c.betas().unwrap().len(), 21);
        let c = FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[[1,3,0,0]],"truncation":3,"beta":[[1,1,1,1]]}"#).unwrap();
        assert_eq!(c.betas().unwrap()[0].pole_order(), 2);
    }

    #[test]
    fn invalid_configs() {
        assert!(FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[],"truncation":3}"#).is_err());
        assert!(FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[],"truncation":3,"beta":"all","x":1}"#).is_err());
        let c = FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[[1,3,0]],"truncation":3,"beta":"griffiths"}"#).unwrap();
        assert!(c.family().is_err());
        let c = FamilyConfig::from_json(r#"{"n":2,"d":4,"I":[],"truncation":3,"beta":[[1,0,0,0]]}"#).unwrap();
        assert!(c.betas().is_err());
    }
}
