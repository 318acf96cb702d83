//! Negation and conjunctive normal forms, and the syntactic validity test for
//! CNFs.
//!
//! Clauses are lists of literals and CNFs are lists of clauses. Both may be
//! empty: the empty clause embeds as `bot`, the empty CNF as `top`, and the
//! embeddings always end in that base case (`[x; y]` becomes `x | (y | bot)`).

mod proofs;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::formula::{Formula, VarName};
use crate::semantics::Valuation;

pub use proofs::{cnf_impl_prov, cnf_provable, complete, nnf_impl_prov, CompletenessResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NnfFormula {
    NPos(VarName),
    NNeg(VarName),
    NBot,
    NTop,
    NConj(Arc<NnfFormula>, Arc<NnfFormula>),
    NDisj(Arc<NnfFormula>, Arc<NnfFormula>),
}

impl NnfFormula {
    pub fn conj(a: NnfFormula, b: NnfFormula) -> Self {
        NnfFormula::NConj(Arc::new(a), Arc::new(b))
    }

    pub fn disj(a: NnfFormula, b: NnfFormula) -> Self {
        NnfFormula::NDisj(Arc::new(a), Arc::new(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    LPos(VarName),
    LNeg(VarName),
    LBot,
    LTop,
}

pub type Clause = Vec<Literal>;
pub type CnfFormula = Vec<Clause>;

/// `map_fold_right f g base [x0; ...; xn] = g (f x0) (g (f x1) ... (g (f xn) base))`.
pub fn map_fold_right<B, A>(f: impl Fn(&B) -> A, g: impl Fn(A, A) -> A, base: A, xs: &[B]) -> A {
    xs.iter().rev().fold(base, |acc, x| g(f(x), acc))
}

/// Negation normal form of `a` (`Pos`) or of `~a` (`Neg`).
pub fn make_nnf(a: &Formula, polarity: Polarity) -> NnfFormula {
    use NnfFormula::*;
    match (a, polarity) {
        (Formula::Var(p), Polarity::Pos) => NPos(p.clone()),
        (Formula::Var(p), Polarity::Neg) => NNeg(p.clone()),
        (Formula::Bot, Polarity::Pos) => NBot,
        (Formula::Bot, Polarity::Neg) => NTop,
        (Formula::Disj(b, c), Polarity::Pos) => NnfFormula::disj(make_nnf(b, Polarity::Pos), make_nnf(c, Polarity::Pos)),
        (Formula::Conj(b, c), Polarity::Pos) => NnfFormula::conj(make_nnf(b, Polarity::Pos), make_nnf(c, Polarity::Pos)),
        (Formula::Impl(b, c), Polarity::Pos) => NnfFormula::disj(make_nnf(b, Polarity::Neg), make_nnf(c, Polarity::Pos)),
        (Formula::Disj(b, c), Polarity::Neg) => NnfFormula::conj(make_nnf(b, Polarity::Neg), make_nnf(c, Polarity::Neg)),
        (Formula::Conj(b, c), Polarity::Neg) => NnfFormula::disj(make_nnf(b, Polarity::Neg), make_nnf(c, Polarity::Neg)),
        (Formula::Impl(b, c), Polarity::Neg) => NnfFormula::conj(make_nnf(b, Polarity::Pos), make_nnf(c, Polarity::Neg)),
    }
}

pub fn nnf_to_formula(n: &NnfFormula) -> Formula {
    match n {
        NnfFormula::NPos(p) => Formula::Var(p.clone()),
        NnfFormula::NNeg(p) => Formula::neg(Formula::Var(p.clone())),
        NnfFormula::NBot => Formula::Bot,
        NnfFormula::NTop => Formula::top(),
        NnfFormula::NConj(a, b) => Formula::conj(nnf_to_formula(a), nnf_to_formula(b)),
        NnfFormula::NDisj(a, b) => Formula::disj(nnf_to_formula(a), nnf_to_formula(b)),
    }
}

pub fn literal_to_formula(l: &Literal) -> Formula {
    match l {
        Literal::LPos(p) => Formula::Var(p.clone()),
        Literal::LNeg(p) => Formula::neg(Formula::Var(p.clone())),
        Literal::LBot => Formula::Bot,
        Literal::LTop => Formula::top(),
    }
}

pub fn clause_to_formula(c: &[Literal]) -> Formula {
    map_fold_right(literal_to_formula, Formula::disj, Formula::Bot, c)
}

pub fn cnf_to_formula(c: &[Clause]) -> Formula {
    map_fold_right(|cl: &Clause| clause_to_formula(cl), Formula::conj, Formula::top(), c)
}

/// Prepends `l` to every clause of `ll`.
pub fn add_clause(l: &[Literal], ll: &[Clause]) -> CnfFormula {
    ll.iter().map(|l2| l.iter().chain(l2).cloned().collect()).collect()
}

/// Distributes the disjunction of two CNFs.
pub fn disjunct(ll: &[Clause], ll2: &[Clause]) -> CnfFormula {
    ll.iter().flat_map(|l| add_clause(l, ll2)).collect()
}

pub fn make_cnf(n: &NnfFormula) -> CnfFormula {
    match n {
        NnfFormula::NPos(p) => vec![vec![Literal::LPos(p.clone())]],
        NnfFormula::NNeg(p) => vec![vec![Literal::LNeg(p.clone())]],
        NnfFormula::NBot => vec![vec![Literal::LBot]],
        NnfFormula::NTop => vec![vec![Literal::LTop]],
        NnfFormula::NConj(b, c) => {
            let mut out = make_cnf(b);
            out.extend(make_cnf(c));
            out
        }
        NnfFormula::NDisj(b, c) => disjunct(&make_cnf(b), &make_cnf(c)),
    }
}

/// Why a clause is syntactically valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseWitness {
    /// `LTop` at this position.
    Top { index: usize },
    /// `LPos p` and `LNeg p` at these positions.
    Complementary { pos: usize, neg: usize },
}

impl ClauseWitness {
    /// Whether the witness actually holds in `c`.
    pub fn holds_in(&self, c: &[Literal]) -> bool {
        match *self {
            ClauseWitness::Top { index } => c.get(index) == Some(&Literal::LTop),
            ClauseWitness::Complementary { pos, neg } => match (c.get(pos), c.get(neg)) {
                (Some(Literal::LPos(p)), Some(Literal::LNeg(q))) => p == q,
                _ => false,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseVerdict {
    Valid(ClauseWitness),
    /// Makes the clause false: exactly the negated variables are true.
    Refuted(Valuation),
}

/// Decides a clause syntactically. The first `LTop` wins; otherwise the first
/// positive literal with a matching negative one.
pub fn clause_decide(c: &[Literal]) -> ClauseVerdict {
    if let Some(index) = c.iter().position(|l| *l == Literal::LTop) {
        return ClauseVerdict::Valid(ClauseWitness::Top { index });
    }
    for (pos, l) in c.iter().enumerate() {
        if let Literal::LPos(p) = l {
            if let Some(neg) = c.iter().position(|m| matches!(m, Literal::LNeg(q) if q == p)) {
                return ClauseVerdict::Valid(ClauseWitness::Complementary { pos, neg });
            }
        }
    }
    ClauseVerdict::Refuted(clause_countervaluation(c))
}

/// `v(x) = true` iff `LNeg x` occurs in `c`; every variable of `c` is listed.
pub fn clause_countervaluation(c: &[Literal]) -> Valuation {
    let mut v = Valuation::new();
    for l in c {
        match l {
            Literal::LPos(p) => {
                if v.iter().all(|(q, _)| q != p) {
                    v.set(p.clone(), false);
                }
            }
            Literal::LNeg(p) => v.set(p.clone(), true),
            Literal::LBot | Literal::LTop => {}
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CnfVerdict {
    /// One witness per clause.
    Valid(Vec<ClauseWitness>),
    Refuted { clause: usize, countervaluation: Valuation },
}

impl CnfVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CnfVerdict::Valid(_))
    }
}

/// Valid iff every clause is; otherwise the first refuted clause and its
/// countervaluation, which falsifies the whole CNF.
pub fn cnf_decide(c: &[Clause]) -> CnfVerdict {
    let mut witnesses = Vec::with_capacity(c.len());
    for (i, clause) in c.iter().enumerate() {
        match clause_decide(clause) {
            ClauseVerdict::Valid(w) => witnesses.push(w),
            ClauseVerdict::Refuted(v) => {
                return CnfVerdict::Refuted {
                    clause: i,
                    countervaluation: v,
                }
            }
        }
    }
    CnfVerdict::Valid(witnesses)
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::LPos(p) => write!(f, "{p}"),
            Literal::LNeg(p) => write!(f, "~{p}"),
            Literal::LBot => f.write_str("bot"),
            Literal::LTop => f.write_str("top"),
        }
    }
}

impl std::str::FromStr for Literal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bot" => Ok(Literal::LBot),
            "top" => Ok(Literal::LTop),
            _ => {
                let (neg, name) = match s.strip_prefix('~') {
                    Some(rest) => (true, rest),
                    None => (false, s),
                };
                let v = VarName::new(name).ok_or_else(|| format!("invalid literal {s:?}"))?;
                Ok(if neg { Literal::LNeg(v) } else { Literal::LPos(v) })
            }
        }
    }
}

/// Literals serialize as `"p"`, `"~p"`, `"bot"`, `"top"`, so a CNF is a JSON
/// array of arrays of strings.
impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
