//! Classical natural deduction with shared, list-shaped contexts.
//!
//! A derivation is an explicit tree. Every node stores its own conclusion
//! `(context, formula)` plus whatever rule data is needed to rebuild the
//! premises' conclusions (the assumption index for `Nax`, the vanished
//! formula for eliminations). [`check_nc`] verifies every node.

mod build;

use serde::{Deserialize, Serialize};

use crate::check::{arity, check_tree, index, mismatch, show_list, CheckError};
use crate::formula::Formula;
use crate::semantics::Context;

pub use build::{
    and_e1, and_e2, and_i, apply_closed, bot_c, ex_falso, imp_e, imp_i, nax, nc_let, nc_substitute,
    nc_weaken, or_chain_intro, or_e, or_i1, or_i2, top_intro, weaken_closed, Source,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum NcRule {
    /// Assumption: the context entry at `index` is the conclusion.
    Nax { index: usize },
    ImpI,
    /// Modus ponens; `cut_formula` is the antecedent `A` of the major premise `A -> B`.
    ImpE { cut_formula: Formula },
    /// Classical reductio: `~A :: Γ ⊢ bot` gives `Γ ⊢ A`.
    BotC,
    AndI,
    /// From `A & other` conclude `A`.
    AndE1 { other: Formula },
    /// From `other & B` conclude `B`.
    AndE2 { other: Formula },
    OrI1,
    OrI2,
    OrE { lhs: Formula, rhs: Formula },
}

impl NcRule {
    pub fn name(&self) -> &'static str {
        match self {
            NcRule::Nax { .. } => "Nax",
            NcRule::ImpI => "ImpI",
            NcRule::ImpE { .. } => "ImpE",
            NcRule::BotC => "BotC",
            NcRule::AndI => "AndI",
            NcRule::AndE1 { .. } => "AndE1",
            NcRule::AndE2 { .. } => "AndE2",
            NcRule::OrI1 => "OrI1",
            NcRule::OrI2 => "OrI2",
            NcRule::OrE { .. } => "OrE",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            NcRule::Nax { .. } => 0,
            NcRule::ImpI
            | NcRule::BotC
            | NcRule::AndE1 { .. }
            | NcRule::AndE2 { .. }
            | NcRule::OrI1
            | NcRule::OrI2 => 1,
            NcRule::ImpE { .. } | NcRule::AndI => 2,
            NcRule::OrE { .. } => 3,
        }
    }
}

/// A natural-deduction derivation of `context ⊢ formula`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcDerivation {
    pub rule: NcRule,
    pub premises: Vec<NcDerivation>,
    pub context: Context,
    pub formula: Formula,
}

impl NcDerivation {
    pub fn conclusion(&self) -> (Context, Formula) {
        (self.context.clone(), self.formula.clone())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(NcDerivation::size).sum::<usize>()
    }

    /// Height of the tree; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(NcDerivation::depth).max().unwrap_or(0)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&NcDerivation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.premises.iter().rev());
        }
        out
    }
}

fn show(ctx: &[Formula], f: &Formula) -> String {
    format!("{} ⊢ {}", show_list(ctx), f)
}

fn expect_premise(
    rule: &'static str,
    which: usize,
    premise: &NcDerivation,
    context: &[Formula],
    formula: &Formula,
) -> Result<(), CheckError> {
    if premise.context.as_slice() == context && premise.formula == *formula {
        Ok(())
    } else {
        Err(mismatch(
            rule,
            format!("premise {which} concluding {}", show(context, formula)),
            show(&premise.context, &premise.formula),
        ))
    }
}

fn cons(head: Formula, tail: &[Formula]) -> Context {
    let mut v = Vec::with_capacity(tail.len() + 1);
    v.push(head);
    v.extend_from_slice(tail);
    v
}

/// Checks a single node against its rule, trusting the premises' stored
/// conclusions. Errors are reported at the root path.
pub(crate) fn check_node(d: &NcDerivation) -> Result<(), CheckError> {
    let rule = d.rule.name();
    arity(rule, d.rule.arity(), d.premises.len())?;
    let ctx = &d.context;
    let prem = &d.premises;
    match &d.rule {
        NcRule::Nax { index: i } => {
            let assumed = index(rule, ctx, *i)?;
            if *assumed != d.formula {
                return Err(mismatch(rule, format!("context entry {i} = {}", d.formula), assumed));
            }
        }
        NcRule::ImpI => {
            let Formula::Impl(a, b) = &d.formula else {
                return Err(mismatch(rule, "conclusion of shape A -> B", &d.formula));
            };
            expect_premise(rule, 0, &prem[0], &cons((**a).clone(), ctx), b)?;
        }
        NcRule::ImpE { cut_formula } => {
            let major = Formula::imp(cut_formula.clone(), d.formula.clone());
            expect_premise(rule, 0, &prem[0], ctx, &major)?;
            expect_premise(rule, 1, &prem[1], ctx, cut_formula)?;
        }
        NcRule::BotC => {
            let negated = Formula::neg(d.formula.clone());
            expect_premise(rule, 0, &prem[0], &cons(negated, ctx), &Formula::Bot)?;
        }
        NcRule::AndI => {
            let Formula::Conj(a, b) = &d.formula else {
                return Err(mismatch(rule, "conclusion of shape A & B", &d.formula));
            };
            expect_premise(rule, 0, &prem[0], ctx, a)?;
            expect_premise(rule, 1, &prem[1], ctx, b)?;
        }
        NcRule::AndE1 { other } => {
            expect_premise(rule, 0, &prem[0], ctx, &Formula::conj(d.formula.clone(), other.clone()))?;
        }
        NcRule::AndE2 { other } => {
            expect_premise(rule, 0, &prem[0], ctx, &Formula::conj(other.clone(), d.formula.clone()))?;
        }
        NcRule::OrI1 | NcRule::OrI2 => {
            let Formula::Disj(a, b) = &d.formula else {
                return Err(mismatch(rule, "conclusion of shape A | B", &d.formula));
            };
            let disjunct = if matches!(d.rule, NcRule::OrI1) { a } else { b };
            expect_premise(rule, 0, &prem[0], ctx, disjunct)?;
        }
        NcRule::OrE { lhs, rhs } => {
            expect_premise(rule, 0, &prem[0], ctx, &Formula::disj(lhs.clone(), rhs.clone()))?;
            expect_premise(rule, 1, &prem[1], &cons(lhs.clone(), ctx), &d.formula)?;
            expect_premise(rule, 2, &prem[2], &cons(rhs.clone(), ctx), &d.formula)?;
        }
    }
    Ok(())
}

/// Verifies every node of `d` and returns its root conclusion. The first
/// violation in pre-order is reported.
pub fn check_nc(d: &NcDerivation) -> Result<(Context, Formula), CheckError> {
    check_tree(d, &|n: &NcDerivation| &n.premises, &check_node)?;
    Ok(d.conclusion())
}
