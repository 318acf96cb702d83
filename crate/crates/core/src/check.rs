//! Errors shared by the derivation checkers of every calculus.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::semantics::SemanticsError;

/// Position of a node in a derivation tree: the premise indices taken from
/// the root. The root itself is the empty path.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A node that does not conform to its rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("rule mismatch at {path} ({rule}): expected {expected}, found {found}")]
    RuleMismatch {
        path: NodePath,
        rule: &'static str,
        expected: String,
        found: String,
    },
    #[error("bad arity at {path}: {rule} takes {expected} premise(s), found {found}")]
    BadArity {
        path: NodePath,
        rule: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("bad index at {path} ({rule}): {index} out of range for list of length {len}")]
    BadIndex {
        path: NodePath,
        rule: &'static str,
        index: usize,
        len: usize,
    },
    #[error("cut at {path} in a cut-free derivation")]
    CutInCutFree { path: NodePath },
    #[error("non-atomic axiom formula {formula} at {path} in a cut-free derivation")]
    NonAtomicAxiom { path: NodePath, formula: Formula },
}

impl CheckError {
    pub fn path(&self) -> &NodePath {
        match self {
            CheckError::RuleMismatch { path, .. }
            | CheckError::BadArity { path, .. }
            | CheckError::BadIndex { path, .. }
            | CheckError::CutInCutFree { path }
            | CheckError::NonAtomicAxiom { path, .. } => path,
        }
    }

    /// Rebases an error found at a local node onto `path`.
    pub(crate) fn at(mut self, at: &NodePath) -> Self {
        let p = match &mut self {
            CheckError::RuleMismatch { path, .. }
            | CheckError::BadArity { path, .. }
            | CheckError::BadIndex { path, .. }
            | CheckError::CutInCutFree { path }
            | CheckError::NonAtomicAxiom { path, .. } => path,
        };
        let mut full = at.0.clone();
        full.extend_from_slice(&p.0);
        p.0 = full;
        self
    }
}

fn walk<T>(
    d: &T,
    premises: &dyn Fn(&T) -> &[T],
    node: &dyn Fn(&T) -> Result<(), CheckError>,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    node(d).map_err(|e| e.at(&NodePath(path.clone())))?;
    for (i, p) in premises(d).iter().enumerate() {
        path.push(i);
        walk(p, premises, node, path)?;
        path.pop();
    }
    Ok(())
}

/// Runs `node` on every node in pre-order and reports the first violation
/// with its path.
pub(crate) fn check_tree<T>(
    root: &T,
    premises: &dyn Fn(&T) -> &[T],
    node: &dyn Fn(&T) -> Result<(), CheckError>,
) -> Result<(), CheckError> {
    walk(root, premises, node, &mut Vec::new())
}

/// Failures of the derivation transformers (translations, weakening, proof
/// synthesis).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("input derivation does not check: {0}")]
    PreconditionViolated(CheckError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("validity evidence does not match the CNF")]
    EvidenceStale,
    #[error("derivation construction failed: {0}")]
    Construction(#[from] CheckError),
    #[error("internal soundness breach: checked derivation of {sequent} has a countervaluation")]
    InternalSoundnessBreach { sequent: String },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

pub(crate) fn mismatch(rule: &'static str, expected: impl fmt::Display, found: impl fmt::Display) -> CheckError {
    CheckError::RuleMismatch {
        path: NodePath::root(),
        rule,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

pub(crate) fn arity(rule: &'static str, expected: usize, found: usize) -> Result<(), CheckError> {
    if expected == found {
        Ok(())
    } else {
        Err(CheckError::BadArity {
            path: NodePath::root(),
            rule,
            expected,
            found,
        })
    }
}

pub(crate) fn index<'a, T>(rule: &'static str, list: &'a [T], i: usize) -> Result<&'a T, CheckError> {
    list.get(i).ok_or(CheckError::BadIndex {
        path: NodePath::root(),
        rule,
        index: i,
        len: list.len(),
    })
}

/// Formats a formula list as `[a, b, c]`.
pub(crate) fn show_list(fs: &[Formula]) -> String {
    let items: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("[{}]", items.join(", "))
}
