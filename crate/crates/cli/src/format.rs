//! The JSON file formats. Rationals are written as `"p/q"` strings (or
//! `"p"` for integers) so every value round-trips exactly; JSON integers
//! are accepted on input, floating-point numbers are not.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use fairmech::{ExactOutcome, Instance, Rational};
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

/// An exact rational as it appears in files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.contains(['.', 'e', 'E']) {
        return Err(format!("`{text}` is not exact; write it as p/q"));
    }
    text.parse::<Rational>().map_err(|e| format!("`{text}` is not a rational: {e}"))
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exact, E> {
                Err(E::custom(format!("floating-point number {v} is not exact; write it as a \"p/q\" string")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }
        }

        d.deserialize_any(ExactVisitor)
    }
}

pub fn exact_vec(values: &[Rational]) -> Vec<Exact> {
    values.iter().cloned().map(Exact).collect()
}

fn rationals(values: &[Exact]) -> Vec<Rational> {
    values.iter().map(|e| e.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub weights: Vec<Exact>,
    pub bids: Vec<Exact>,
    /// True valuations for audits; the bids when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Exact>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Exact>,
    /// Generator parameters and the constants a reduction promises.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        Self {
            weights: exact_vec(instance.weights()),
            bids: exact_vec(instance.bids()),
            values: None,
            epsilon: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn instance(&self) -> CliResult<Instance> {
        Ok(Instance::new(rationals(&self.weights), rationals(&self.bids))?)
    }

    pub fn values(&self) -> Vec<Rational> {
        rationals(self.values.as_ref().unwrap_or(&self.bids))
    }

    pub fn epsilon(&self) -> Option<Rational> {
        self.epsilon.as_ref().map(|e| e.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub mu: Option<Exact>,
    pub mu_bar: Option<Exact>,
    pub epsilon: Option<Exact>,
    /// `null` stands for +infinity (every other bundle is empty).
    pub ef1_slack: Option<Exact>,
    pub mms_ratio: Option<Exact>,
    /// 0 for the degenerate zero-estimate case, else 1, 2 or 4.
    pub phase_reached: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeFile {
    pub mechanism: String,
    /// Good indices per agent, in agent order.
    pub allocation: Vec<Vec<usize>>,
    pub payments: Vec<Exact>,
    pub welfare: Exact,
    pub diagnostics: Diagnostics,
}

impl OutcomeFile {
    pub fn from_outcome(outcome: &ExactOutcome) -> Self {
        let exact = |v: &Option<Rational>| v.clone().map(Exact);
        Self {
            mechanism: outcome.kind.to_string(),
            allocation: outcome.allocation.agent_bundles(),
            payments: exact_vec(&outcome.payments),
            welfare: Exact(outcome.welfare.clone()),
            diagnostics: Diagnostics {
                mu: exact(&outcome.mu),
                mu_bar: outcome.estimate.as_ref().map(|e| Exact(e.mu_bar.clone())),
                epsilon: outcome.estimate.as_ref().map(|e| Exact(e.epsilon.clone())),
                ef1_slack: exact(&outcome.fairness.ef1_slack),
                mms_ratio: exact(&outcome.fairness.mms_ratio),
                phase_reached: outcome.trace.as_ref().map(|t| t.phase_reached.number()),
            },
        }
    }
}

/// A heterogeneous-valuation instance from the independent-set reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HetFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// `valuations[i][g]`: agent `i`'s value for good `g`.
    pub valuations: Vec<Vec<Exact>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON to `path`, or to standard output when `path` is `None`.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
        }
    }
}
