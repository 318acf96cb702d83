//! Translations between sequent derivations and natural deduction.

use super::{check_gc, node, premise_shapes, weaken_unchecked, GcDerivation, GcRule, Origin, PremiseShape, Sequent, Side};
use crate::check::ProofError;
use crate::formula::Formula;
use crate::natded::{
    and_e1, and_e2, and_i, bot_c, check_nc, imp_e, imp_i, nax, nc_substitute, or_chain_intro, or_e, or_i1, or_i2, NcDerivation,
    NcRule, Source,
};
use crate::semantics::Context;

/// Right fold of disjunction over `delta` with base `bot`.
pub fn big_or(delta: &[Formula]) -> Formula {
    delta.iter().rev().fold(Formula::Bot, |acc, a| Formula::disj(a.clone(), acc))
}

pub fn neg_list(delta: &[Formula]) -> Context {
    delta.iter().cloned().map(Formula::neg).collect()
}

fn neg_context(s: &Sequent) -> Context {
    let mut ctx = s.gamma.clone();
    ctx.extend(neg_list(&s.delta));
    ctx
}

/// Moves the refutation `p` of a premise (over `premise.gamma ++ ~premise.delta`)
/// onto `target`, whose entries from `offset` on are `concl.gamma ++ ~concl.delta`.
/// Entries the premise shares with the conclusion are looked up; the inserted
/// ones come from `new(side, n)`.
fn transfer(
    p: NcDerivation,
    premise: &Sequent,
    shape: &PremiseShape,
    concl: &Sequent,
    target: &[Formula],
    offset: usize,
    mut new: impl FnMut(Side, usize) -> Result<Source, ProofError>,
) -> Result<NcDerivation, ProofError> {
    let g = concl.gamma.len();
    let mut sources = Vec::with_capacity(p.context.len());
    for k in 0..premise.gamma.len() {
        sources.push(match shape.gamma.origin(k) {
            Origin::Old(i) => Source::At(offset + i),
            Origin::New(n) => new(Side::Left, n)?,
        });
    }
    for k in 0..premise.delta.len() {
        sources.push(match shape.delta.origin(k) {
            Origin::Old(i) => Source::At(offset + g + i),
            Origin::New(n) => new(Side::Right, n)?,
        });
    }
    nc_substitute(&p, target, sources)
}

fn cons(head: Formula, tail: &[Formula]) -> Context {
    let mut v = vec![head];
    v.extend_from_slice(tail);
    v
}

/// `Γ ⊢ A` from a refutation over `target = ~A :: Γ` obtained by transfer.
fn reductio(
    p: NcDerivation,
    premise: &Sequent,
    shape: &PremiseShape,
    concl: &Sequent,
    ctx: &[Formula],
    a: &Formula,
) -> Result<NcDerivation, ProofError> {
    let target = cons(Formula::neg(a.clone()), ctx);
    let body = transfer(p, premise, shape, concl, &target, 1, |_, _| Ok(Source::At(0)))?;
    Ok(bot_c(body)?)
}

fn neg_rec(d: &GcDerivation) -> Result<NcDerivation, ProofError> {
    let s = &d.sequent;
    let t = neg_context(s);
    let g = s.gamma.len();
    let sub: Vec<NcDerivation> = d.premises.iter().map(neg_rec).collect::<Result<_, _>>()?;
    let shapes = premise_shapes(&d.rule, s)?;
    let prem = |i: usize| &d.premises[i].sequent;
    let parts = |f: &Formula| match f {
        Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => ((**a).clone(), (**b).clone()),
        _ => unreachable!("active formula checked"),
    };
    let mut sub = sub.into_iter();
    let mut next = || sub.next().expect("premise count checked");
    Ok(match &d.rule {
        GcRule::Gax { gi, di } => imp_e(nax(t.clone(), g + di)?, nax(t, *gi)?)?,
        GcRule::GBot { gi } => nax(t, *gi)?,
        GcRule::AndL { split } => {
            let conj = nax(t.clone(), *split)?;
            transfer(next(), prem(0), &shapes[0], s, &t, 0, |_, n| {
                let d = if n == 0 { and_e1(conj.clone())? } else { and_e2(conj.clone())? };
                Ok(Source::Proof(d))
            })?
        }
        GcRule::AndR { split } => {
            let (a, b) = parts(&s.delta[*split]);
            let pa = reductio(next(), prem(0), &shapes[0], s, &t, &a)?;
            let pb = reductio(next(), prem(1), &shapes[1], s, &t, &b)?;
            imp_e(nax(t, g + split)?, and_i(pa, pb)?)?
        }
        GcRule::OrL { split } => {
            let (a, b) = parts(&s.gamma[*split]);
            let left = transfer(next(), prem(0), &shapes[0], s, &cons(a, &t), 1, |_, _| Ok(Source::At(0)))?;
            let right = transfer(next(), prem(1), &shapes[1], s, &cons(b, &t), 1, |_, _| Ok(Source::At(0)))?;
            or_e(nax(t, *split)?, left, right)?
        }
        GcRule::OrR { split } => {
            let (a, b) = parts(&s.delta[*split]);
            // ~A and ~B over t, each by refuting A | B
            let refute = |x: &Formula, left: bool| -> Result<NcDerivation, ProofError> {
                let inner = cons(x.clone(), &t);
                let here = nax(inner.clone(), 0)?;
                let disj = if left { or_i1(here, b.clone())? } else { or_i2(a.clone(), here)? };
                Ok(imp_i(imp_e(nax(inner, 1 + g + split)?, disj)?)?)
            };
            let (na, nb) = (refute(&a, true)?, refute(&b, false)?);
            transfer(next(), prem(0), &shapes[0], s, &t, 0, |_, n| {
                Ok(Source::Proof(if n == 0 { na.clone() } else { nb.clone() }))
            })?
        }
        GcRule::ImpL { split } => {
            let (a, _) = parts(&s.gamma[*split]);
            let with_b = next();
            let pa = reductio(next(), prem(1), &shapes[1], s, &t, &a)?;
            let pb = imp_e(nax(t.clone(), *split)?, pa)?;
            transfer(with_b, prem(0), &shapes[0], s, &t, 0, |_, _| Ok(Source::Proof(pb.clone())))?
        }
        GcRule::ImpR { split } => {
            let (a, b) = parts(&s.delta[*split]);
            // ~B :: A :: t, then BotC and ImpI give A -> B over t
            let target = cons(Formula::neg(b), &cons(a, &t));
            let body = transfer(next(), prem(0), &shapes[0], s, &target, 2, |side, _| {
                Ok(Source::At(if side == Side::Left { 1 } else { 0 }))
            })?;
            imp_e(nax(t, g + split)?, imp_i(bot_c(body)?)?)?
        }
        GcRule::Cut { cut_formula } => {
            let first = next();
            let pa = reductio(first, prem(0), &shapes[0], s, &t, cut_formula)?;
            transfer(next(), prem(1), &shapes[1], s, &t, 0, |_, _| Ok(Source::Proof(pa.clone())))?
        }
    })
}

/// Refutation of `Γ ++ ~Δ` from a derivation of `Γ ⊃ Δ`.
pub fn g_to_nc_neg(d: &GcDerivation) -> Result<NcDerivation, ProofError> {
    check_gc(d).map_err(ProofError::PreconditionViolated)?;
    neg_rec(d)
}

/// `Γ ⊢ big_or(Δ)` from a derivation of `Γ ⊃ Δ`.
pub fn g_to_nc(d: &GcDerivation) -> Result<NcDerivation, ProofError> {
    let refutation = g_to_nc_neg(d)?;
    let s = &d.sequent;
    if s.delta.is_empty() {
        return Ok(refutation);
    }
    let goal = big_or(&s.delta);
    let target = cons(Formula::neg(goal), &s.gamma);
    let mut sources: Vec<Source> = (1..=s.gamma.len()).map(Source::At).collect();
    for (j, a) in s.delta.iter().enumerate() {
        let inner = cons(a.clone(), &target);
        let injected = or_chain_intro(&s.delta, j, nax(inner.clone(), 0)?)?;
        sources.push(Source::Proof(imp_i(imp_e(nax(inner, 1)?, injected)?)?));
    }
    Ok(bot_c(nc_substitute(&refutation, &target, sources)?)?)
}

fn seq(gamma: &[Formula], delta: Vec<Formula>) -> Sequent {
    Sequent::new(gamma.to_vec(), delta)
}

/// Cut on `major` (proved over `Γ ⊃ [major]`), with the left premise built by
/// `use_left` over `major :: Γ ⊃ [goal]`.
fn eliminate(proof: GcDerivation, goal: &Formula, use_left: GcDerivation) -> Result<GcDerivation, ProofError> {
    let major = proof.sequent.delta[0].clone();
    let gamma = proof.sequent.gamma.clone();
    let right = weaken_unchecked(&proof, Side::Right, 1, goal);
    Ok(node(GcRule::Cut { cut_formula: major }, vec![right, use_left], seq(&gamma, vec![goal.clone()]))?)
}

fn to_g_rec(d: &NcDerivation) -> Result<GcDerivation, ProofError> {
    let ctx = &d.context;
    let a = &d.formula;
    let tr = |i: usize| to_g_rec(&d.premises[i]);
    let goal = || vec![a.clone()];
    Ok(match &d.rule {
        NcRule::Nax { index } => node(GcRule::Gax { gi: *index, di: 0 }, vec![], seq(ctx, goal()))?,
        NcRule::ImpI => node(GcRule::ImpR { split: 0 }, vec![tr(0)?], seq(ctx, goal()))?,
        NcRule::AndI => node(GcRule::AndR { split: 0 }, vec![tr(0)?, tr(1)?], seq(ctx, goal()))?,
        NcRule::OrI1 | NcRule::OrI2 => {
            let Formula::Disj(l, r) = a else { unreachable!("checked OrI") };
            let p = tr(0)?;
            let w = if matches!(d.rule, NcRule::OrI1) {
                weaken_unchecked(&p, Side::Right, 1, r)
            } else {
                weaken_unchecked(&p, Side::Right, 0, l)
            };
            node(GcRule::OrR { split: 0 }, vec![w], seq(ctx, goal()))?
        }
        NcRule::ImpE { cut_formula } => {
            // C -> A :: Γ ⊃ [A] by ImpL over the axiom A :: Γ ⊃ [A] and Γ ⊃ [C, A]
            let major = Formula::imp(cut_formula.clone(), a.clone());
            let minor = weaken_unchecked(&tr(1)?, Side::Right, 1, a);
            let ax = node(GcRule::Gax { gi: 0, di: 0 }, vec![], seq(&cons(a.clone(), ctx), goal()))?;
            let left = node(GcRule::ImpL { split: 0 }, vec![ax, minor], seq(&cons(major, ctx), goal()))?;
            eliminate(tr(0)?, a, left)?
        }
        NcRule::AndE1 { other } | NcRule::AndE2 { other } => {
            let (conj, gi) = if matches!(d.rule, NcRule::AndE1 { .. }) {
                (Formula::conj(a.clone(), other.clone()), 0)
            } else {
                (Formula::conj(other.clone(), a.clone()), 1)
            };
            let Formula::Conj(l, r) = &conj else { unreachable!() };
            let inner = cons((**l).clone(), &cons((**r).clone(), ctx));
            let ax = node(GcRule::Gax { gi, di: 0 }, vec![], seq(&inner, goal()))?;
            let left = node(GcRule::AndL { split: 0 }, vec![ax], seq(&cons(conj.clone(), ctx), goal()))?;
            eliminate(tr(0)?, a, left)?
        }
        NcRule::OrE { lhs, rhs } => {
            let disj = Formula::disj(lhs.clone(), rhs.clone());
            let left = node(GcRule::OrL { split: 0 }, vec![tr(1)?, tr(2)?], seq(&cons(disj, ctx), goal()))?;
            eliminate(tr(0)?, a, left)?
        }
        NcRule::BotC => {
            // ~A :: Γ ⊃ [bot] gives ~A :: Γ ⊃ [A] by a cut on bot, then a cut
            // on ~A against Γ ⊃ [~A, A]
            let neg = Formula::neg(a.clone());
            let neg_ctx = cons(neg.clone(), ctx);
            let bot_leaf = node(GcRule::GBot { gi: 0 }, vec![], seq(&cons(Formula::Bot, &neg_ctx), goal()))?;
            let from_neg = eliminate(tr(0)?, a, bot_leaf)?;
            let ax = node(GcRule::Gax { gi: 0, di: 1 }, vec![], seq(&cons(a.clone(), ctx), vec![Formula::Bot, a.clone()]))?;
            let excluded = node(GcRule::ImpR { split: 0 }, vec![ax], seq(ctx, vec![neg.clone(), a.clone()]))?;
            node(GcRule::Cut { cut_formula: neg }, vec![excluded, from_neg], seq(ctx, goal()))?
        }
    })
}

/// `Γ ⊃ [A]` from a derivation of `Γ ⊢ A`. Each elimination becomes one cut
/// and reductio becomes two.
pub fn nc_to_g(d: &NcDerivation) -> Result<GcDerivation, ProofError> {
    check_nc(d).map_err(ProofError::PreconditionViolated)?;
    to_g_rec(d)
}
