//! Truth-functional semantics and finite validity checking.
//!
//! Validity quantifies over all valuations, but a formula's truth value only
//! depends on the variables occurring in it, so enumerating the `2^k`
//! assignments to those `k` variables decides entailment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{variables_of_all, Formula, VarName};

/// Ordered list of formulas; order and multiplicity matter.
pub type Context = Vec<Formula>;

/// Default cap on the number of distinct variables [`models`] will enumerate.
pub const DEFAULT_MAX_VARS: usize = 24;

/// Assignment of truth values to variables. Variables not in the map are false.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Valuation {
    assignment: BTreeMap<VarName, bool>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, var: VarName, value: bool) {
        self.assignment.insert(var, value);
    }

    pub fn with(mut self, var: &str, value: bool) -> Self {
        self.set(VarName::new(var).expect("valid variable name"), value);
        self
    }

    pub fn get(&self, var: &VarName) -> bool {
        self.assignment.get(var).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, bool)> {
        self.assignment.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// `p=false,q=true`, sorted by name.
impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed valuation entry {0:?}: expected name=true|false")]
pub struct ValuationParseError(pub String);

impl FromStr for Valuation {
    type Err = ValuationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = Valuation::new();
        for entry in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (name, value) = entry
                .split_once('=')
                .ok_or_else(|| ValuationParseError(entry.to_string()))?;
            let name = VarName::new(name.trim()).ok_or_else(|| ValuationParseError(entry.to_string()))?;
            let value = match value.trim() {
                "true" => true,
                "false" => false,
                _ => return Err(ValuationParseError(entry.to_string())),
            };
            v.set(name, value);
        }
        Ok(v)
    }
}

pub fn eval(v: &Valuation, f: &Formula) -> bool {
    match f {
        Formula::Var(p) => v.get(p),
        Formula::Bot => false,
        Formula::Disj(b, c) => eval(v, b) || eval(v, c),
        Formula::Conj(b, c) => eval(v, b) && eval(v, c),
        Formula::Impl(b, c) => !eval(v, b) || eval(v, c),
    }
}

/// Every formula of `ctx` is true under `v`.
pub fn satisfies(v: &Valuation, ctx: &[Formula]) -> bool {
    ctx.iter().all(|a| eval(v, a))
}

/// Some formula of `delta` is true under `v`.
pub fn validates(v: &Valuation, delta: &[Formula]) -> bool {
    delta.iter().any(|a| eval(v, a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelsVerdict {
    Entailed,
    Countervaluation(Valuation),
}

impl ModelsVerdict {
    pub fn is_entailed(&self) -> bool {
        matches!(self, ModelsVerdict::Entailed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("{found} distinct variables exceed the enumeration cap of {cap}")]
    TooManyVariables { found: usize, cap: usize },
}

/// Enumerates valuations over `vars` in binary counting order (first variable
/// most significant, false before true) and returns the first one on which
/// `refutes` holds.
fn first_refuting(
    vars: &[VarName],
    cap: usize,
    mut refutes: impl FnMut(&Valuation) -> bool,
) -> Result<ModelsVerdict, SemanticsError> {
    let k = vars.len();
    if k > cap {
        return Err(SemanticsError::TooManyVariables { found: k, cap });
    }
    for row in 0u64..(1u64 << k) {
        let v = valuation_for_row(vars, row);
        if refutes(&v) {
            return Ok(ModelsVerdict::Countervaluation(v));
        }
    }
    Ok(ModelsVerdict::Entailed)
}

/// The `row`-th valuation in counting order over `vars`.
pub fn valuation_for_row(vars: &[VarName], row: u64) -> Valuation {
    let k = vars.len();
    let mut v = Valuation::new();
    for (j, var) in vars.iter().enumerate() {
        v.set(var.clone(), (row >> (k - 1 - j)) & 1 == 1);
    }
    v
}

/// `ctx ⊨ f`, with the default variable cap.
pub fn models(ctx: &[Formula], f: &Formula) -> Result<ModelsVerdict, SemanticsError> {
    models_capped(ctx, f, DEFAULT_MAX_VARS)
}

pub fn models_capped(ctx: &[Formula], f: &Formula, cap: usize) -> Result<ModelsVerdict, SemanticsError> {
    let vars = variables_of_all(ctx.iter().chain(std::iter::once(f)));
    first_refuting(&vars, cap, |v| satisfies(v, ctx) && !eval(v, f))
}

/// Every valuation satisfying `gamma` makes some member of `delta` true.
pub fn sequent_models(gamma: &[Formula], delta: &[Formula]) -> Result<ModelsVerdict, SemanticsError> {
    sequent_models_capped(gamma, delta, DEFAULT_MAX_VARS)
}

pub fn sequent_models_capped(
    gamma: &[Formula],
    delta: &[Formula],
    cap: usize,
) -> Result<ModelsVerdict, SemanticsError> {
    let vars = variables_of_all(gamma.iter().chain(delta.iter()));
    first_refuting(&vars, cap, |v| satisfies(v, gamma) && !validates(v, delta))
}

/// Valid formula: entailed by the empty context.
pub fn is_valid(f: &Formula) -> Result<bool, SemanticsError> {
    Ok(models(&[], f)?.is_entailed())
}
