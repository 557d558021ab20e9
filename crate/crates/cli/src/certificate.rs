//! Machine-checkable certificates.
//!
//! A certificate records a claim about a specific model (pinned by content
//! hash), the synthesized witness cells, and every pasting equation that was
//! evaluated, with its verdict.  `recheck` re-evaluates all listed equations
//! with nothing but the kernel evaluator and must reproduce every verdict
//! bit-exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twocat_core::kernel::{check_equation, CheckedEquation, Equation};
use twocat_core::TwoCategoryModel;

pub const CERT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim {
    pub tag: String,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub model_hash: String,
    pub model_name: String,
    pub claim: Claim,
    pub seed: Option<u64>,
    pub witnesses: Vec<Witness>,
    pub checked_equations: Vec<CheckedEquation>,
    pub ok: bool,
}

#[derive(Debug, Error)]
pub enum RecheckError {
    #[error("model hash mismatch: certificate pins {expected}, file hashes to {actual}")]
    HashMismatch { expected: String, actual: String },
    #[error("equation {name:?} no longer evaluates: {detail}")]
    EvalFailed { name: String, detail: String },
    #[error(
        "equation {name:?} result changed: certificate says {recorded}, evaluator says {actual}"
    )]
    ResultChanged {
        name: String,
        recorded: bool,
        actual: bool,
    },
}

impl Certificate {
    pub fn new(
        tag: &str,
        statement: &str,
        model_hash: String,
        model_name: String,
        seed: Option<u64>,
    ) -> Self {
        Certificate {
            schema_version: CERT_SCHEMA_VERSION,
            model_hash,
            model_name,
            claim: Claim {
                tag: tag.to_string(),
                statement: statement.to_string(),
            },
            seed,
            witnesses: Vec::new(),
            checked_equations: Vec::new(),
            ok: true,
        }
    }

    pub fn witness<T: Serialize>(&mut self, name: &str, value: &T) {
        self.witnesses.push(Witness {
            name: name.to_string(),
            data: serde_json::to_value(value).expect("witness serializes"),
        });
    }

    pub fn record_equations(&mut self, checked: &[CheckedEquation]) {
        self.ok &= checked.iter().all(|c| c.result);
        self.checked_equations.extend_from_slice(checked);
    }

    pub fn fail(&mut self, note: &str) {
        self.ok = false;
        self.witnesses.push(Witness {
            name: "failure".to_string(),
            data: serde_json::Value::String(note.to_string()),
        });
    }

    /// Re-evaluate every recorded equation against the model and demand the
    /// recorded verdicts, after confirming the model hash.
    pub fn recheck(&self, m: &TwoCategoryModel, actual_hash: &str) -> Result<usize, RecheckError> {
        if actual_hash != self.model_hash {
            return Err(RecheckError::HashMismatch {
                expected: self.model_hash.clone(),
                actual: actual_hash.to_string(),
            });
        }
        for c in &self.checked_equations {
            let eq = Equation {
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            };
            let actual = check_equation(m, &eq).map_err(|e| RecheckError::EvalFailed {
                name: c.name.clone(),
                detail: e.to_string(),
            })?;
            if actual != c.result {
                return Err(RecheckError::ResultChanged {
                    name: c.name.clone(),
                    recorded: c.result,
                    actual,
                });
            }
        }
        Ok(self.checked_equations.len())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("certificate serializes");
        bytes.push(b'\n');
        bytes
    }
}
