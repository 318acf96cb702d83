//! Derivation combinators and structural transformations.
//!
//! Each combinator infers its conclusion from its premises and checks the new
//! node eagerly, so a malformed construction fails where it happens.

use super::{check_nc, check_node, cons, NcDerivation, NcRule};
use crate::check::{CheckError, ProofError};
use crate::formula::Formula;
use crate::semantics::Context;

fn node(rule: NcRule, premises: Vec<NcDerivation>, context: Context, formula: Formula) -> Result<NcDerivation, CheckError> {
    let d = NcDerivation {
        rule,
        premises,
        context,
        formula,
    };
    check_node(&d)?;
    Ok(d)
}

fn tail(ctx: &[Formula]) -> Context {
    ctx.get(1..).map(<[Formula]>::to_vec).unwrap_or_default()
}

pub fn nax(context: Context, index: usize) -> Result<NcDerivation, CheckError> {
    let formula = crate::check::index("Nax", &context, index)?.clone();
    node(NcRule::Nax { index }, vec![], context, formula)
}

/// Discharges the head of `body`'s context: `A :: Γ ⊢ B` gives `Γ ⊢ A -> B`.
pub fn imp_i(body: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Some(a) = body.context.first().cloned() else {
        return Err(crate::check::mismatch("ImpI", "premise with non-empty context", "[]"));
    };
    let context = tail(&body.context);
    let formula = Formula::imp(a, body.formula.clone());
    node(NcRule::ImpI, vec![body], context, formula)
}

/// `Γ ⊢ A -> B` and `Γ ⊢ A` give `Γ ⊢ B`.
pub fn imp_e(major: NcDerivation, minor: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Formula::Impl(_, b) = &major.formula else {
        return Err(crate::check::mismatch("ImpE", "major premise of shape A -> B", &major.formula));
    };
    let formula = (**b).clone();
    let context = major.context.clone();
    let cut_formula = minor.formula.clone();
    node(NcRule::ImpE { cut_formula }, vec![major, minor], context, formula)
}

/// `~A :: Γ ⊢ bot` gives `Γ ⊢ A`.
pub fn bot_c(body: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Some(a) = body.context.first().and_then(Formula::as_neg).cloned() else {
        return Err(crate::check::mismatch("BotC", "premise context headed by a negation", crate::check::show_list(&body.context)));
    };
    let context = tail(&body.context);
    node(NcRule::BotC, vec![body], context, a)
}

pub fn and_i(left: NcDerivation, right: NcDerivation) -> Result<NcDerivation, CheckError> {
    let formula = Formula::conj(left.formula.clone(), right.formula.clone());
    let context = left.context.clone();
    node(NcRule::AndI, vec![left, right], context, formula)
}

pub fn and_e1(d: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Formula::Conj(a, b) = &d.formula else {
        return Err(crate::check::mismatch("AndE1", "premise of shape A & B", &d.formula));
    };
    let (a, other) = ((**a).clone(), (**b).clone());
    let context = d.context.clone();
    node(NcRule::AndE1 { other }, vec![d], context, a)
}

pub fn and_e2(d: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Formula::Conj(a, b) = &d.formula else {
        return Err(crate::check::mismatch("AndE2", "premise of shape A & B", &d.formula));
    };
    let (other, b) = ((**a).clone(), (**b).clone());
    let context = d.context.clone();
    node(NcRule::AndE2 { other }, vec![d], context, b)
}

/// `Γ ⊢ A` gives `Γ ⊢ A | rhs`.
pub fn or_i1(d: NcDerivation, rhs: Formula) -> Result<NcDerivation, CheckError> {
    let formula = Formula::disj(d.formula.clone(), rhs);
    let context = d.context.clone();
    node(NcRule::OrI1, vec![d], context, formula)
}

/// `Γ ⊢ B` gives `Γ ⊢ lhs | B`.
pub fn or_i2(lhs: Formula, d: NcDerivation) -> Result<NcDerivation, CheckError> {
    let formula = Formula::disj(lhs, d.formula.clone());
    let context = d.context.clone();
    node(NcRule::OrI2, vec![d], context, formula)
}

/// `Γ ⊢ A | B`, `A :: Γ ⊢ C` and `B :: Γ ⊢ C` give `Γ ⊢ C`.
pub fn or_e(major: NcDerivation, left: NcDerivation, right: NcDerivation) -> Result<NcDerivation, CheckError> {
    let Formula::Disj(a, b) = &major.formula else {
        return Err(crate::check::mismatch("OrE", "major premise of shape A | B", &major.formula));
    };
    let rule = NcRule::OrE {
        lhs: (**a).clone(),
        rhs: (**b).clone(),
    };
    let context = major.context.clone();
    let formula = left.formula.clone();
    node(rule, vec![major, left, right], context, formula)
}

/// `Γ ⊢ top`, i.e. `Γ ⊢ bot -> bot`.
pub fn top_intro(context: &[Formula]) -> Result<NcDerivation, CheckError> {
    imp_i(nax(cons(Formula::Bot, context), 0)?)
}

/// `Γ ⊢ bot` gives `Γ ⊢ a`, via `BotC` over a weakened copy.
pub fn ex_falso(bot: NcDerivation, a: Formula) -> Result<NcDerivation, ProofError> {
    if bot.formula != Formula::Bot {
        return Err(crate::check::mismatch("BotC", "a derivation of bot", &bot.formula).into());
    }
    let target = cons(Formula::neg(a), &bot.context);
    let embedding: Vec<usize> = (1..=bot.context.len()).collect();
    let body = weaken_unchecked(&bot, &target, &embedding);
    Ok(bot_c(body)?)
}

/// Moves a derivation with empty context into `target`.
pub fn weaken_closed(d: &NcDerivation, target: &[Formula]) -> NcDerivation {
    assert!(d.context.is_empty(), "weaken_closed on an open derivation");
    weaken_unchecked(d, target, &[])
}

/// Injects a proof of `members[j]` into the right-nested disjunction
/// `members[0] | (members[1] | ... | bot)`.
pub fn or_chain_intro(members: &[Formula], j: usize, proof: NcDerivation) -> Result<NcDerivation, CheckError> {
    let rest = members[j + 1..]
        .iter()
        .rev()
        .fold(Formula::Bot, |acc, m| Formula::disj(m.clone(), acc));
    let mut d = or_i1(proof, rest)?;
    for m in members[..j].iter().rev() {
        d = or_i2(m.clone(), d)?;
    }
    Ok(d)
}

/// Applies a closed lemma `[] ⊢ H -> G` to a proof of `H`.
pub fn apply_closed(lemma: &NcDerivation, proof: NcDerivation) -> Result<NcDerivation, CheckError> {
    let major = weaken_closed(lemma, &proof.context);
    imp_e(major, proof)
}

/// Proves `value.formula` once and makes it available as assumption 0 of the
/// body: `imp_e(imp_i(body), value)`.
pub fn nc_let(
    value: NcDerivation,
    body: impl FnOnce(&Context) -> Result<NcDerivation, ProofError>,
) -> Result<NcDerivation, ProofError> {
    let inner = cons(value.formula.clone(), &value.context);
    let b = body(&inner)?;
    Ok(imp_e(imp_i(b)?, value)?)
}

/// Rebuilds `d` over `target`, sending context position `i` to
/// `embedding[i]`. Binders (`ImpI`, `BotC`, the `OrE` branches) extend both
/// the target and the embedding with their discharged head.
pub(crate) fn weaken_unchecked(d: &NcDerivation, target: &[Formula], embedding: &[usize]) -> NcDerivation {
    let rule = match &d.rule {
        NcRule::Nax { index } => NcRule::Nax {
            index: embedding[*index],
        },
        other => other.clone(),
    };
    let premises = d
        .premises
        .iter()
        .map(|p| {
            if p.context.len() == d.context.len() + 1 {
                let inner_target = cons(p.context[0].clone(), target);
                let inner_emb: Vec<usize> = std::iter::once(0).chain(embedding.iter().map(|i| i + 1)).collect();
                weaken_unchecked(p, &inner_target, &inner_emb)
            } else {
                weaken_unchecked(p, target, embedding)
            }
        })
        .collect();
    NcDerivation {
        rule,
        premises,
        context: target.to_vec(),
        formula: d.formula.clone(),
    }
}

/// Weakens a checked derivation into a larger (or permuted) context.
///
/// `embedding[i]` is the position in `target` of `d.context[i]`; it must be
/// injective and formula-preserving.
pub fn nc_weaken(d: &NcDerivation, target: &[Formula], embedding: &[usize]) -> Result<NcDerivation, ProofError> {
    check_nc(d).map_err(ProofError::PreconditionViolated)?;
    validate_embedding(&d.context, target, embedding)?;
    Ok(weaken_unchecked(d, target, embedding))
}

fn validate_embedding(source: &[Formula], target: &[Formula], embedding: &[usize]) -> Result<(), ProofError> {
    if embedding.len() != source.len() {
        return Err(ProofError::EmbeddingInvalid(format!(
            "embedding has {} entries for a context of length {}",
            embedding.len(),
            source.len()
        )));
    }
    let mut seen = vec![false; target.len()];
    for (i, &j) in embedding.iter().enumerate() {
        let Some(t) = target.get(j) else {
            return Err(ProofError::EmbeddingInvalid(format!("position {j} outside target of length {}", target.len())));
        };
        if *t != source[i] {
            return Err(ProofError::EmbeddingInvalid(format!("source entry {i} ({}) differs from target entry {j} ({t})", source[i])));
        }
        if std::mem::replace(&mut seen[j], true) {
            return Err(ProofError::EmbeddingInvalid(format!("target position {j} used twice")));
        }
    }
    Ok(())
}

/// Where a context entry of a derivation comes from in the new context.
#[derive(Clone, Debug)]
pub enum Source {
    /// The same formula sits at this position of the target context.
    At(usize),
    /// A derivation of the formula over the target context.
    Proof(NcDerivation),
}

/// Re-roots `d` over `target`, replacing each of its assumptions by either a
/// target position or a proof over `target`.
///
/// Proved assumptions are placed in front of `target`, discharged with
/// `ImpI` and then eliminated with `ImpE` against their proofs.
pub fn nc_substitute(d: &NcDerivation, target: &[Formula], sources: Vec<Source>) -> Result<NcDerivation, ProofError> {
    if sources.len() != d.context.len() {
        return Err(ProofError::EmbeddingInvalid(format!(
            "{} sources for a context of length {}",
            sources.len(),
            d.context.len()
        )));
    }
    // Ok(extra slot) or Err(target position)
    let mut slots: Vec<Result<usize, usize>> = Vec::with_capacity(sources.len());
    let mut extras: Vec<NcDerivation> = Vec::new();
    for (i, src) in sources.into_iter().enumerate() {
        match src {
            Source::At(k) => slots.push(Err(k)),
            Source::Proof(p) => {
                if p.context.as_slice() != target || p.formula != d.context[i] {
                    return Err(ProofError::EmbeddingInvalid(format!(
                        "proof for entry {i} concludes {}, expected {} over the target context",
                        p.formula, d.context[i]
                    )));
                }
                slots.push(Ok(extras.len()));
                extras.push(p);
            }
        }
    }
    let m = extras.len();
    let mut extended: Context = extras.iter().map(|p| p.formula.clone()).collect();
    extended.extend_from_slice(target);
    let embedding: Vec<usize> = slots.into_iter().map(|s| s.unwrap_or_else(|k| m + k)).collect();
    validate_embedding(&d.context, &extended, &embedding)?;
    let mut out = weaken_unchecked(d, &extended, &embedding);
    for _ in 0..m {
        out = imp_i(out)?;
    }
    for proof in extras.into_iter().rev() {
        out = imp_e(out, proof)?;
    }
    Ok(out)
}
