//! Propositional formulas.
//!
//! Negation and truth are not constructors: `~A` is `A -> bot` and `top` is
//! `~bot`. The parser normalizes both away and the printer reintroduces them.

mod parser;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parser::{parse, ParseError};

/// Name of a propositional variable: an ASCII letter followed by letters,
/// digits or underscores, never one of the keywords `bot` / `top`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

impl VarName {
    /// Validates and wraps a variable name.
    pub fn new(name: &str) -> Option<VarName> {
        if is_identifier(name) && !is_keyword(name) {
            Some(VarName(Arc::from(name)))
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_keyword(s: &str) -> bool {
    s == "bot" || s == "top"
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A propositional formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(VarName),
    Bot,
    Conj(Arc<Formula>, Arc<Formula>),
    Disj(Arc<Formula>, Arc<Formula>),
    Impl(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// Variable formula. Panics on an invalid name; use [`VarName::new`] for
    /// untrusted input.
    pub fn var(name: &str) -> Formula {
        Formula::Var(VarName::new(name).unwrap_or_else(|| panic!("invalid variable name {name:?}")))
    }

    pub fn conj(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Conj(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn disj(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Disj(Arc::new(lhs), Arc::new(rhs))
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Impl(Arc::new(lhs), Arc::new(rhs))
    }

    /// `A -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `~bot`.
    pub fn top() -> Formula {
        Formula::neg(Formula::Bot)
    }

    /// If this is `A -> bot`, returns `A`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Impl(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self.as_neg(), Some(Formula::Bot))
    }

    /// Atomic means a variable or `bot`.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Bot)
    }

    /// Height of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot => 1,
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Variables in first-occurrence order (left to right), without duplicates.
    pub fn variables(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut Vec<VarName>) {
        match self {
            Formula::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Formula::Bot => {}
            Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }
}

/// Variables of `f` in first-occurrence order.
pub fn variables_of(f: &Formula) -> Vec<VarName> {
    f.variables()
}

/// Variables of a list of formulas in first-occurrence order.
pub fn variables_of_all<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<VarName> {
    let mut out = Vec::new();
    for f in fs {
        f.collect_variables(&mut out);
    }
    out
}

/// Renders a formula in the ASCII grammar accepted by [`parse`].
pub fn print(f: &Formula) -> String {
    f.to_string()
}

// Binding strength, loosest first.
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    if f.is_top() {
        return PREC_ATOM;
    }
    if f.as_neg().is_some() {
        return PREC_UNARY;
    }
    match f {
        Formula::Var(_) | Formula::Bot => PREC_ATOM,
        Formula::Conj(..) => PREC_AND,
        Formula::Disj(..) => PREC_OR,
        Formula::Impl(..) => PREC_IMP,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if precedence(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if f.is_top() {
        return out.write_str("top");
    }
    if let Some(a) = f.as_neg() {
        out.write_str("~")?;
        return write_at(a, PREC_UNARY, out);
    }
    let (lhs, op, rhs, prec) = match f {
        Formula::Var(v) => return out.write_str(v.as_str()),
        Formula::Bot => return out.write_str("bot"),
        Formula::Conj(a, b) => (a, " & ", b, PREC_AND),
        Formula::Disj(a, b) => (a, " | ", b, PREC_OR),
        Formula::Impl(a, b) => (a, " -> ", b, PREC_IMP),
    };
    // right-associative: a same-level left operand needs parentheses
    write_at(lhs, prec + 1, out)?;
    out.write_str(op)?;
    write_at(rhs, prec, out)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for VarName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for VarName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        VarName::new(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid variable name {text:?}")))
    }
}
