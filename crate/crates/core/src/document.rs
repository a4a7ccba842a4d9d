//! JSON interchange format for epsilon specs.
//!
//! ```json
//! {"name": "example", "prefix": [-1, 1], "tail": {"kind": "constant", "value": -1}}
//! ```
//!
//! Tail kinds are `constant`, `periodic` (`pattern`), `mu_r` (`r`) and
//! `bitstream`. A bitstream tail carries either the four signed sources
//! `alpha_plus`, `alpha_minus`, `beta_plus`, `beta_minus` (giving
//! `eps_k = d+_k - d-_k`) or the pair `alpha`, `beta` (giving
//! `eps_k = 1 - 2 d_k`), each an exact-real string such as `"1/sqrt2"`, and
//! an optional `expansion` of `"terminating"` (default) or `"nonterminating"`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactReal, Expansion};
use crate::spec::{Bitstream, DigitStream, Epsilon, EpsilonSpec, TailRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub prefix: Vec<i64>,
    pub tail: TailDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailDocument {
    Constant {
        value: i64,
    },
    Periodic {
        pattern: Vec<i64>,
    },
    MuR {
        r: u64,
    },
    Bitstream {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha_plus: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha_minus: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta_plus: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta_minus: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expansion: Option<String>,
    },
}

fn epsilons(values: &[i64]) -> Result<Vec<Epsilon>> {
    values.iter().map(|&v| Epsilon::new(v)).collect()
}

fn parse_expansion(s: Option<&str>) -> Result<Expansion> {
    match s {
        None | Some("terminating") => Ok(Expansion::Terminating),
        Some("nonterminating") | Some("non_terminating") => Ok(Expansion::NonTerminating),
        Some(other) => Err(Error::InvalidSpec(format!("unknown expansion {other:?}"))),
    }
}

fn expansion_name(e: Expansion) -> Option<String> {
    match e {
        Expansion::Terminating => None,
        Expansion::NonTerminating => Some("nonterminating".into()),
    }
}

fn source(s: &DigitStream) -> Option<String> {
    Some(s.value().to_string())
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_spec(&self) -> Result<EpsilonSpec> {
        let tail = match &self.tail {
            TailDocument::Constant { value } => TailRule::Constant(Epsilon::new(*value)?),
            TailDocument::Periodic { pattern } => TailRule::Periodic(epsilons(pattern)?),
            TailDocument::MuR { r } => TailRule::MuR(*r),
            TailDocument::Bitstream {
                alpha_plus,
                alpha_minus,
                beta_plus,
                beta_minus,
                alpha,
                beta,
                expansion,
            } => {
                let expansion = parse_expansion(expansion.as_deref())?;
                let real = |s: &Option<String>| -> Result<ExactReal> {
                    s.as_deref().map_or(Ok(ExactReal::zero()), str::parse)
                };
                let signed = [alpha_plus, alpha_minus, beta_plus, beta_minus].iter().any(|s| s.is_some());
                let unsigned = alpha.is_some() || beta.is_some();
                let b = match (signed, unsigned) {
                    (true, false) => Bitstream::signed(
                        real(alpha_plus)?,
                        real(alpha_minus)?,
                        real(beta_plus)?,
                        real(beta_minus)?,
                        expansion,
                    )?,
                    (false, true) => Bitstream::complement(real(alpha)?, real(beta)?, expansion)?,
                    _ => {
                        return Err(Error::InvalidSpec(
                            "bitstream tail needs either alpha_plus/alpha_minus/beta_plus/beta_minus or alpha/beta"
                                .into(),
                        ))
                    }
                };
                TailRule::Bitstream(Box::new(b))
            }
        };
        EpsilonSpec::new(epsilons(&self.prefix)?, tail, self.name.clone())
    }
}

impl From<&EpsilonSpec> for SpecDocument {
    fn from(spec: &EpsilonSpec) -> Self {
        let tail = match spec.tail() {
            TailRule::Constant(e) => TailDocument::Constant { value: e.get() as i64 },
            TailRule::Periodic(p) => TailDocument::Periodic {
                pattern: p.iter().map(|e| e.get() as i64).collect(),
            },
            TailRule::MuR(r) => TailDocument::MuR { r: *r },
            TailRule::Bitstream(b) => match b.as_ref() {
                Bitstream::Signed { alpha_plus, alpha_minus, beta_plus, beta_minus } => TailDocument::Bitstream {
                    alpha_plus: source(alpha_plus),
                    alpha_minus: source(alpha_minus),
                    beta_plus: source(beta_plus),
                    beta_minus: source(beta_minus),
                    alpha: None,
                    beta: None,
                    expansion: expansion_name(b.expansion()),
                },
                Bitstream::Complement { alpha, beta } => TailDocument::Bitstream {
                    alpha_plus: None,
                    alpha_minus: None,
                    beta_plus: None,
                    beta_minus: None,
                    alpha: source(alpha),
                    beta: source(beta),
                    expansion: expansion_name(b.expansion()),
                },
            },
        };
        SpecDocument {
            name: spec.name().map(str::to_owned),
            prefix: spec.prefix().iter().map(|e| e.get() as i64).collect(),
            tail,
        }
    }
}

impl EpsilonSpec {
    /// Canonical JSON identity of the spec.
    pub fn identity(&self) -> String {
        SpecDocument::from(self).to_json()
    }
}
