//! One JSON document format for derivations of every calculus.
//!
//! The root object carries `version` and `calculus` next to the root node's
//! own fields; nested nodes carry only their fields. Formulas are grammar
//! strings.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::check::CheckError;
use crate::cutfree::{check_gcf, GcfDerivation};
use crate::formula::Formula;
use crate::hilbert::{check_hc, HcDerivation};
use crate::natded::{check_nc, NcDerivation};
use crate::semantics::Context;
use crate::sequent::{check_gc, GcDerivation, Sequent};

pub const VERSION: &str = "propkit-derivation/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Nc,
    Hc,
    Gc,
    Gcf,
}

impl Calculus {
    pub fn name(self) -> &'static str {
        match self {
            Calculus::Nc => "nc",
            Calculus::Hc => "hc",
            Calculus::Gc => "gc",
            Calculus::Gcf => "gcf",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        [Calculus::Nc, Calculus::Hc, Calculus::Gc, Calculus::Gcf].into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Nc(NcDerivation),
    Hc(HcDerivation),
    Gc(GcDerivation),
    Gcf(GcfDerivation),
}

/// What a checked derivation proves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Judgement(Context, Formula),
    Sequent(Sequent),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Judgement(ctx, a) if ctx.is_empty() => write!(f, "|- {a}"),
            Conclusion::Judgement(ctx, a) => {
                let items: Vec<String> = ctx.iter().map(Formula::to_string).collect();
                write!(f, "{} |- {a}", items.join(", "))
            }
            Conclusion::Sequent(s) => write!(f, "{s}"),
        }
    }
}

impl Derivation {
    pub fn calculus(&self) -> Calculus {
        match self {
            Derivation::Nc(_) => Calculus::Nc,
            Derivation::Hc(_) => Calculus::Hc,
            Derivation::Gc(_) => Calculus::Gc,
            Derivation::Gcf(_) => Calculus::Gcf,
        }
    }

    /// Runs the checker of the document's calculus.
    pub fn check(&self) -> Result<Conclusion, CheckError> {
        Ok(match self {
            Derivation::Nc(d) => {
                let (ctx, a) = check_nc(d)?;
                Conclusion::Judgement(ctx, a)
            }
            Derivation::Hc(d) => {
                let (ctx, a) = check_hc(d)?;
                Conclusion::Judgement(ctx, a)
            }
            Derivation::Gc(d) => Conclusion::Sequent(check_gc(d)?),
            Derivation::Gcf(d) => Conclusion::Sequent(check_gcf(d)?),
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Derivation::Nc(d) => d.size(),
            Derivation::Hc(d) => d.size(),
            Derivation::Gc(d) | Derivation::Gcf(d) => d.size(),
        }
    }
}

#[derive(Debug, Error)]
pub enum EnvelopeError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document is not a JSON object")]
    NotObject,
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("unsupported version {0}, expected \"{VERSION}\"")]
    Version(Value),
    #[error("unknown calculus {0}")]
    Calculus(Value),
    #[error("invalid {calculus} derivation: {source}")]
    Body {
        calculus: Calculus,
        source: serde_json::Error,
    },
}

fn with_header(calculus: Calculus, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("version".into(), Value::from(VERSION));
    map.insert("calculus".into(), Value::from(calculus.name()));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

pub fn to_value(d: &Derivation) -> Value {
    let body = match d {
        Derivation::Nc(x) => serde_json::to_value(x),
        Derivation::Hc(x) => serde_json::to_value(x),
        Derivation::Gc(x) | Derivation::Gcf(x) => serde_json::to_value(x),
    }
    .expect("derivations serialize");
    with_header(d.calculus(), body)
}

/// Compact single-line JSON.
pub fn to_json(d: &Derivation) -> String {
    to_value(d).to_string()
}

fn body<T: DeserializeOwned>(calculus: Calculus, fields: Map<String, Value>) -> Result<T, EnvelopeError> {
    serde_json::from_value(Value::Object(fields)).map_err(|source| EnvelopeError::Body { calculus, source })
}

pub fn from_value(v: Value) -> Result<Derivation, EnvelopeError> {
    let Value::Object(mut fields) = v else {
        return Err(EnvelopeError::NotObject);
    };
    match fields.shift_remove("version") {
        None => return Err(EnvelopeError::Missing("version")),
        Some(Value::String(s)) if s == VERSION => {}
        Some(other) => return Err(EnvelopeError::Version(other)),
    }
    let tag = fields.shift_remove("calculus").ok_or(EnvelopeError::Missing("calculus"))?;
    let calculus = tag.as_str().and_then(Calculus::from_name).ok_or(EnvelopeError::Calculus(tag.clone()))?;
    Ok(match calculus {
        Calculus::Nc => Derivation::Nc(body(calculus, fields)?),
        Calculus::Hc => Derivation::Hc(body(calculus, fields)?),
        Calculus::Gc => Derivation::Gc(body(calculus, fields)?),
        Calculus::Gcf => Derivation::Gcf(body(calculus, fields)?),
    })
}

/// Parses a document without a nesting limit; deep trees need a large stack.
pub fn parse_value(text: &str) -> Result<Value, EnvelopeError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let v = Value::deserialize(&mut de)?;
    de.end()?;
    Ok(v)
}

pub fn from_json(text: &str) -> Result<Derivation, EnvelopeError> {
    from_value(parse_value(text)?)
}
