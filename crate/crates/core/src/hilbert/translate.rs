//! The deduction theorem and the translations between Hc and Nc.

use super::{check_hc, hass, hax, mp, HcAxiom, HcDerivation, HcRule, HcSchema};
use crate::check::{CheckError, ProofError};
use crate::formula::Formula;
use crate::natded::{
    and_e1, and_e2, and_i, bot_c, check_nc, imp_e, imp_i, nax, or_e, or_i1, or_i2, weaken_closed, NcDerivation,
    NcRule,
};

/// Result of discharging the context head `A` from a subtree.
enum Discharged {
    /// The subtree never used `A`: the same proof over the tail.
    Unused(HcDerivation),
    /// A proof of `A -> F` over the tail.
    Used(HcDerivation),
}

fn k_lift(d: HcDerivation, a: &Formula) -> Result<HcDerivation, CheckError> {
    let k = hax(d.context.clone(), HcAxiom::k(d.formula.clone(), a.clone()))?;
    mp(k, d)
}

fn into_implication(r: Discharged, a: &Formula) -> Result<HcDerivation, CheckError> {
    match r {
        Discharged::Used(d) => Ok(d),
        Discharged::Unused(d) => k_lift(d, a),
    }
}

fn discharge(d: &HcDerivation, a: &Formula, tail: &[Formula]) -> Result<Discharged, CheckError> {
    match &d.rule {
        HcRule::Hass { index: 0 } => {
            // A -> A from S and two instances of K
            let ctx = tail.to_vec();
            let aa = Formula::imp(a.clone(), a.clone());
            let s = hax(ctx.clone(), HcAxiom::s(a.clone(), aa.clone(), a.clone()))?;
            let k1 = hax(ctx.clone(), HcAxiom::k(a.clone(), aa))?;
            let k2 = hax(ctx, HcAxiom::k(a.clone(), a.clone()))?;
            Ok(Discharged::Used(mp(mp(s, k1)?, k2)?))
        }
        HcRule::Hass { index } => Ok(Discharged::Unused(hass(tail.to_vec(), index - 1)?)),
        HcRule::Hax { axiom } => Ok(Discharged::Unused(hax(tail.to_vec(), axiom.clone())?)),
        HcRule::HImpE { cut_formula } => {
            let major = discharge(&d.premises[0], a, tail)?;
            let minor = discharge(&d.premises[1], a, tail)?;
            let (major, minor) = match (major, minor) {
                (Discharged::Unused(x), Discharged::Unused(y)) => return Ok(Discharged::Unused(mp(x, y)?)),
                pair => pair,
            };
            let major = into_implication(major, a)?;
            let minor = into_implication(minor, a)?;
            let s = hax(tail.to_vec(), HcAxiom::s(a.clone(), cut_formula.clone(), d.formula.clone()))?;
            Ok(Discharged::Used(mp(mp(s, major)?, minor)?))
        }
    }
}

fn deduce(d: &HcDerivation) -> Result<HcDerivation, ProofError> {
    let Some((a, tail)) = d.context.split_first() else {
        return Err(ProofError::Precondition("deduction needs a non-empty context".into()));
    };
    Ok(into_implication(discharge(d, a, tail)?, a)?)
}

/// `A :: Γ ⊢H B` becomes `Γ ⊢H A -> B`. Subtrees that never use `A` are
/// lifted whole through `HK`.
pub fn hc_deduction(d: &HcDerivation) -> Result<HcDerivation, ProofError> {
    check_hc(d).map_err(ProofError::PreconditionViolated)?;
    deduce(d)
}

fn axiom_from(schema: HcSchema, fs: &[Formula], ctx: &[Formula], premises: Vec<HcDerivation>) -> Result<HcDerivation, ProofError> {
    let mut d = hax(ctx.to_vec(), HcAxiom::new(schema, fs.to_vec()))?;
    for p in premises {
        d = mp(d, p)?;
    }
    Ok(d)
}

fn nc_to_hc_rec(d: &NcDerivation) -> Result<HcDerivation, ProofError> {
    let ctx = &d.context;
    let tr = |i: usize| nc_to_hc_rec(&d.premises[i]);
    let c = d.formula.clone();
    match &d.rule {
        NcRule::Nax { index } => Ok(hass(ctx.clone(), *index)?),
        NcRule::ImpI => deduce(&tr(0)?),
        NcRule::ImpE { .. } => Ok(mp(tr(0)?, tr(1)?)?),
        NcRule::BotC => {
            let not_not = deduce(&tr(0)?)?;
            axiom_from(HcSchema::HClas, &[c], ctx, vec![not_not])
        }
        NcRule::AndI => {
            let Formula::Conj(a, b) = &d.formula else { unreachable!("checked AndI") };
            axiom_from(HcSchema::HAndI, &[(**a).clone(), (**b).clone()], ctx, vec![tr(0)?, tr(1)?])
        }
        NcRule::AndE1 { other } => axiom_from(HcSchema::HAndE1, &[c, other.clone()], ctx, vec![tr(0)?]),
        NcRule::AndE2 { other } => axiom_from(HcSchema::HAndE2, &[other.clone(), c], ctx, vec![tr(0)?]),
        NcRule::OrI1 | NcRule::OrI2 => {
            let Formula::Disj(a, b) = &d.formula else { unreachable!("checked OrI") };
            let schema = if matches!(d.rule, NcRule::OrI1) { HcSchema::HOrI1 } else { HcSchema::HOrI2 };
            axiom_from(schema, &[(**a).clone(), (**b).clone()], ctx, vec![tr(0)?])
        }
        NcRule::OrE { lhs, rhs } => {
            let premises = vec![tr(0)?, deduce(&tr(1)?)?, deduce(&tr(2)?)?];
            axiom_from(HcSchema::HOrE, &[lhs.clone(), rhs.clone(), c], ctx, premises)
        }
    }
}

/// Hilbert derivation with the same conclusion as `d`.
pub fn nc_to_hc(d: &NcDerivation) -> Result<HcDerivation, ProofError> {
    check_nc(d).map_err(ProofError::PreconditionViolated)?;
    nc_to_hc_rec(d)
}

fn ctx(fs: &[&Formula]) -> Vec<Formula> {
    fs.iter().map(|f| (*f).clone()).collect()
}

/// Closed natural-deduction proof of an axiom instance.
fn axiom_template(axiom: &HcAxiom) -> Result<NcDerivation, ProofError> {
    let fs = &axiom.formulas;
    let a = &fs[0];
    let d = match axiom.schema {
        HcSchema::HOrI1 => imp_i(or_i1(nax(ctx(&[a]), 0)?, fs[1].clone())?)?,
        HcSchema::HOrI2 => imp_i(or_i2(a.clone(), nax(ctx(&[&fs[1]]), 0)?)?)?,
        HcSchema::HAndI => {
            let g = ctx(&[&fs[1], a]);
            imp_i(imp_i(and_i(nax(g.clone(), 1)?, nax(g, 0)?)?)?)?
        }
        HcSchema::HOrE => {
            let (b, c) = (&fs[1], &fs[2]);
            let g = ctx(&[&Formula::imp(b.clone(), c.clone()), &Formula::imp(a.clone(), c.clone()), &Formula::disj(a.clone(), b.clone())]);
            let mut ga = vec![a.clone()];
            ga.extend(g.iter().cloned());
            let mut gb = vec![b.clone()];
            gb.extend(g.iter().cloned());
            let left = imp_e(nax(ga.clone(), 2)?, nax(ga, 0)?)?;
            let right = imp_e(nax(gb.clone(), 1)?, nax(gb, 0)?)?;
            imp_i(imp_i(imp_i(or_e(nax(g, 2)?, left, right)?)?)?)?
        }
        HcSchema::HAndE1 => imp_i(and_e1(nax(vec![Formula::conj(a.clone(), fs[1].clone())], 0)?)?)?,
        HcSchema::HAndE2 => imp_i(and_e2(nax(vec![Formula::conj(a.clone(), fs[1].clone())], 0)?)?)?,
        HcSchema::HS => {
            let (b, c) = (&fs[1], &fs[2]);
            let bc = Formula::imp(b.clone(), c.clone());
            let g = ctx(&[a, &Formula::imp(a.clone(), b.clone()), &Formula::imp(a.clone(), bc)]);
            let bc_proof = imp_e(nax(g.clone(), 2)?, nax(g.clone(), 0)?)?;
            let b_proof = imp_e(nax(g.clone(), 1)?, nax(g, 0)?)?;
            imp_i(imp_i(imp_i(imp_e(bc_proof, b_proof)?)?)?)?
        }
        HcSchema::HK => imp_i(imp_i(nax(ctx(&[&fs[1], a]), 1)?)?)?,
        HcSchema::HClas => {
            let g = vec![Formula::neg(a.clone()), Formula::neg(Formula::neg(a.clone()))];
            imp_i(bot_c(imp_e(nax(g.clone(), 1)?, nax(g, 0)?)?)?)?
        }
    };
    Ok(d)
}

fn hc_to_nc_rec(d: &HcDerivation) -> Result<NcDerivation, ProofError> {
    match &d.rule {
        HcRule::Hass { index } => Ok(nax(d.context.clone(), *index)?),
        HcRule::Hax { axiom } => Ok(weaken_closed(&axiom_template(axiom)?, &d.context)),
        HcRule::HImpE { .. } => Ok(imp_e(hc_to_nc_rec(&d.premises[0])?, hc_to_nc_rec(&d.premises[1])?)?),
    }
}

/// Natural-deduction derivation with the same conclusion as `d`.
pub fn hc_to_nc(d: &HcDerivation) -> Result<NcDerivation, ProofError> {
    check_hc(d).map_err(ProofError::PreconditionViolated)?;
    hc_to_nc_rec(d)
}
