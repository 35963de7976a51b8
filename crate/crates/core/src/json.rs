//! JSON forms of semirings and identity verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAiSemiring};
use crate::eval::IdentityVerdict;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `{"name", "elements", "add", "mul"}` with 0-based table entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringJson {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<Element>>,
    pub mul: Vec<Vec<Element>>,
}

impl From<&FiniteAiSemiring> for SemiringJson {
    fn from(s: &FiniteAiSemiring) -> Self {
        Self {
            name: s.name().to_string(),
            elements: s.elements().to_vec(),
            add: s.add_table(),
            mul: s.mul_table(),
        }
    }
}

impl SemiringJson {
    pub fn into_semiring(self) -> Result<FiniteAiSemiring, AlgebraError> {
        FiniteAiSemiring::new(self.name, self.elements, &self.add, &self.mul)
    }
}

pub fn semiring_to_json(s: &FiniteAiSemiring) -> String {
    serde_json::to_string_pretty(&SemiringJson::from(s)).expect("serialisable")
}

pub fn semiring_from_json(text: &str) -> Result<FiniteAiSemiring, JsonError> {
    let raw: SemiringJson = serde_json::from_str(text)?;
    Ok(raw.into_semiring()?)
}

/// `{"identity", "holds", "witness": {var: element-name} | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub identity: String,
    pub holds: bool,
    pub witness: Option<BTreeMap<String, String>>,
}

impl VerdictJson {
    pub fn new(s: &FiniteAiSemiring, v: &IdentityVerdict) -> Self {
        Self {
            identity: v.identity.to_string(),
            holds: v.holds(),
            witness: v.witness.as_ref().map(|w| {
                w.iter().map(|(x, &a)| (x.to_string(), s.element_name(a).to_string())).collect()
            }),
        }
    }
}
