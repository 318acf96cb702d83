//! Natural-deduction proofs built from the normal forms: a syntactically
//! valid CNF is provable, each CNF implies its NNF, each NNF implies the
//! original formula. Chained together they turn every valid formula into a
//! checked derivation.
//!
//! The lemmas are built as closed implications `[] ⊢ H -> G` and applied with
//! [`apply_closed`], so each recursive sub-lemma is copied into its caller
//! exactly once.

use crate::check::ProofError;
use crate::formula::Formula;
use crate::natded::{
    and_e1, and_e2, and_i, apply_closed, bot_c, ex_falso, imp_e, imp_i, nax, nc_let, or_chain_intro,
    or_e, or_i1, or_i2, top_intro, NcDerivation,
};
use crate::semantics::{Context, Valuation};

use super::{
    add_clause, clause_to_formula, cnf_decide, cnf_to_formula, disjunct, literal_to_formula,
    make_cnf, make_nnf, nnf_to_formula, Clause, ClauseWitness, CnfFormula, CnfVerdict, Literal,
    NnfFormula, Polarity,
};

type Built = Result<NcDerivation, ProofError>;

/// `[] ⊢ hyp -> G`, where `body` proves `G` in the context `[hyp]`.
fn lemma(hyp: Formula, body: impl FnOnce(&Context) -> Built) -> Built {
    let ctx = vec![hyp];
    Ok(imp_i(body(&ctx)?)?)
}

fn clause_members(c: &[Literal]) -> Vec<Formula> {
    c.iter().map(literal_to_formula).collect()
}

fn prove_valid_clause(c: &[Literal], witness: ClauseWitness) -> Built {
    let members = clause_members(c);
    match witness {
        ClauseWitness::Top { index } => Ok(or_chain_intro(&members, index, top_intro(&[])?)?),
        ClauseWitness::Complementary { pos, neg } => {
            // ~C ⊢ p by reductio, then C from p, contradiction; BotC closes.
            let clause = clause_to_formula(c);
            let outer = vec![Formula::neg(clause.clone())];
            let p = members[pos].clone();
            let inner = vec![Formula::neg(p), outer[0].clone()];
            let not_p_in_clause = or_chain_intro(&members, neg, nax(inner.clone(), 0)?)?;
            let p_proof = bot_c(imp_e(nax(inner, 1)?, not_p_in_clause)?)?;
            let clause_proof = or_chain_intro(&members, pos, p_proof)?;
            Ok(bot_c(imp_e(nax(outer, 0)?, clause_proof)?)?)
        }
    }
}

/// Proof of `cnf_to_formula(c)` from a validity verdict for `c`.
///
/// Fails with [`ProofError::EvidenceStale`] unless `evidence` is a `Valid`
/// verdict whose witnesses hold clause by clause.
pub fn cnf_provable(c: &[Clause], evidence: &CnfVerdict) -> Built {
    let CnfVerdict::Valid(witnesses) = evidence else {
        return Err(ProofError::EvidenceStale);
    };
    if witnesses.len() != c.len() || !c.iter().zip(witnesses).all(|(cl, w)| w.holds_in(cl)) {
        return Err(ProofError::EvidenceStale);
    }
    let mut d = top_intro(&[])?;
    for (clause, w) in c.iter().zip(witnesses).rev() {
        d = and_i(prove_valid_clause(clause, *w)?, d)?;
    }
    Ok(d)
}

/// `[] ⊢ C(c ++ d) -> C(c) | C(d)` for clauses.
fn clause_append_split(c: &[Literal], d: &[Literal]) -> Built {
    let joined: Clause = c.iter().chain(d).cloned().collect();
    let fc = clause_to_formula(c);
    let fd = clause_to_formula(d);
    lemma(clause_to_formula(&joined), |ctx| {
        let Some((head, rest)) = c.split_first() else {
            return Ok(or_i2(Formula::Bot, nax(ctx.clone(), 0)?)?);
        };
        let lit = literal_to_formula(head);
        let f_rest = clause_to_formula(rest);
        let sub = clause_append_split(rest, d)?;
        let rest_joined = clause_to_formula(&rest.iter().chain(d).cloned().collect::<Vec<_>>());

        let take_head = or_i1(or_i1(nax(cons(&lit, ctx), 0)?, f_rest.clone())?, fd.clone())?;
        let ctx2 = cons(&rest_joined, ctx);
        let split = apply_closed(&sub, nax(ctx2.clone(), 0)?)?;
        let from_rest = or_i1(or_i2(lit.clone(), nax(cons(&f_rest, &ctx2), 0)?)?, fd.clone())?;
        let from_d = or_i2(fc.clone(), nax(cons(&fd, &ctx2), 0)?)?;
        let tail_case = or_e(split, from_rest, from_d)?;
        Ok(or_e(nax(ctx.clone(), 0)?, take_head, tail_case)?)
    })
}

/// `[] ⊢ F(l1 ++ l2) -> F(l1) & F(l2)` for CNFs.
fn cnf_append_split(l1: &[Clause], l2: &[Clause]) -> Built {
    let joined: CnfFormula = l1.iter().chain(l2).cloned().collect();
    lemma(cnf_to_formula(&joined), |ctx| {
        let Some((_, rest)) = l1.split_first() else {
            return Ok(and_i(top_intro(ctx)?, nax(ctx.clone(), 0)?)?);
        };
        let sub = cnf_append_split(rest, l2)?;
        let split = apply_closed(&sub, and_e2(nax(ctx.clone(), 0)?)?)?;
        nc_let(split, |inner| {
            let left = and_i(and_e1(nax(inner.clone(), 1)?)?, and_e1(nax(inner.clone(), 0)?)?)?;
            Ok(and_i(left, and_e2(nax(inner.clone(), 0)?)?)?)
        })
    })
}

/// `[] ⊢ F(add_clause(c, l2)) -> C(c) | F(l2)`.
fn add_clause_split(c: &[Literal], l2: &[Clause]) -> Built {
    let fc = clause_to_formula(c);
    let f_l2 = cnf_to_formula(l2);
    lemma(cnf_to_formula(&add_clause(c, l2)), |ctx| {
        let Some((d, rest)) = l2.split_first() else {
            return Ok(or_i2(fc.clone(), top_intro(ctx)?)?);
        };
        let fd = clause_to_formula(d);
        let f_rest = cnf_to_formula(rest);
        let head_split = apply_closed(&clause_append_split(c, d)?, and_e1(nax(ctx.clone(), 0)?)?)?;

        let direct = or_i1(nax(cons(&fc, ctx), 0)?, f_l2.clone())?;
        let ctx_d = cons(&fd, ctx);
        let sub = apply_closed(&add_clause_split(c, rest)?, and_e2(nax(ctx_d.clone(), 1)?)?)?;
        let again = or_i1(nax(cons(&fc, &ctx_d), 0)?, f_l2.clone())?;
        let ctx_rest = cons(&f_rest, &ctx_d);
        let both = or_i2(fc.clone(), and_i(nax(ctx_rest.clone(), 1)?, nax(ctx_rest, 0)?)?)?;
        let via_d = or_e(sub, again, both)?;
        Ok(or_e(head_split, direct, via_d)?)
    })
}

/// `[] ⊢ F(disjunct(l1, l2)) -> F(l1) | F(l2)`.
fn disjunct_split(l1: &[Clause], l2: &[Clause]) -> Built {
    let f_l1 = cnf_to_formula(l1);
    let f_l2 = cnf_to_formula(l2);
    lemma(cnf_to_formula(&disjunct(l1, l2)), |ctx| {
        let Some((c, rest)) = l1.split_first() else {
            return Ok(or_i1(nax(ctx.clone(), 0)?, f_l2.clone())?);
        };
        let fc = clause_to_formula(c);
        let f_rest = cnf_to_formula(rest);
        let added = add_clause(c, l2);
        let rest_dis = disjunct(rest, l2);
        let split = apply_closed(&cnf_append_split(&added, &rest_dis)?, nax(ctx.clone(), 0)?)?;
        nc_let(split, |x| {
            let head = apply_closed(&add_clause_split(c, l2)?, and_e1(nax(x.clone(), 0)?)?)?;
            let ctx_c = cons(&fc, x);
            let ih = apply_closed(&disjunct_split(rest, l2)?, and_e2(nax(ctx_c.clone(), 1)?)?)?;
            let ctx_rest = cons(&f_rest, &ctx_c);
            let both = or_i1(and_i(nax(ctx_rest.clone(), 1)?, nax(ctx_rest, 0)?)?, f_l2.clone())?;
            let right = or_i2(f_l1.clone(), nax(cons(&f_l2, &ctx_c), 0)?)?;
            let with_c = or_e(ih, both, right)?;
            let only_l2 = or_i2(f_l1.clone(), nax(cons(&f_l2, x), 0)?)?;
            Ok(or_e(head, with_c, only_l2)?)
        })
    })
}

fn cons(head: &Formula, tail: &[Formula]) -> Context {
    let mut v = Vec::with_capacity(tail.len() + 1);
    v.push(head.clone());
    v.extend_from_slice(tail);
    v
}

fn cnf_impl_rec(n: &NnfFormula) -> Result<(CnfFormula, NcDerivation), ProofError> {
    let target = nnf_to_formula(n);
    match n {
        NnfFormula::NPos(_) | NnfFormula::NNeg(_) | NnfFormula::NBot | NnfFormula::NTop => {
            let cnf = make_cnf(n);
            let d = lemma(cnf_to_formula(&cnf), |ctx| {
                let clause = and_e1(nax(ctx.clone(), 0)?)?;
                let lit_case = nax(cons(&target, ctx), 0)?;
                let bot_case = ex_falso(nax(cons(&Formula::Bot, ctx), 0)?, target.clone())?;
                Ok(or_e(clause, lit_case, bot_case)?)
            })?;
            Ok((cnf, d))
        }
        NnfFormula::NConj(b, c) => {
            let (lb, pb) = cnf_impl_rec(b)?;
            let (lc, pc) = cnf_impl_rec(c)?;
            let cnf: CnfFormula = lb.iter().chain(&lc).cloned().collect();
            let d = lemma(cnf_to_formula(&cnf), |ctx| {
                let split = apply_closed(&cnf_append_split(&lb, &lc)?, nax(ctx.clone(), 0)?)?;
                nc_let(split, |x| {
                    let left = apply_closed(&pb, and_e1(nax(x.clone(), 0)?)?)?;
                    let right = apply_closed(&pc, and_e2(nax(x.clone(), 0)?)?)?;
                    Ok(and_i(left, right)?)
                })
            })?;
            Ok((cnf, d))
        }
        NnfFormula::NDisj(b, c) => {
            let (lb, pb) = cnf_impl_rec(b)?;
            let (lc, pc) = cnf_impl_rec(c)?;
            let cnf = disjunct(&lb, &lc);
            let (fb, fc) = (nnf_to_formula(b), nnf_to_formula(c));
            let d = lemma(cnf_to_formula(&cnf), |ctx| {
                let split = apply_closed(&disjunct_split(&lb, &lc)?, nax(ctx.clone(), 0)?)?;
                let left = or_i1(apply_closed(&pb, nax(cons(&cnf_to_formula(&lb), ctx), 0)?)?, fc.clone())?;
                let right = or_i2(fb.clone(), apply_closed(&pc, nax(cons(&cnf_to_formula(&lc), ctx), 0)?)?)?;
                Ok(or_e(split, left, right)?)
            })?;
            Ok((cnf, d))
        }
    }
}

/// `[] ⊢ cnf_to_formula(make_cnf n) -> nnf_to_formula n`.
pub fn cnf_impl_prov(n: &NnfFormula) -> Built {
    Ok(cnf_impl_rec(n)?.1)
}

/// `Pos`: `[] ⊢ nnf(make_nnf(a, Pos)) -> a`; `Neg`: `[] ⊢ nnf(make_nnf(a, Neg)) -> ~a`.
pub fn nnf_impl_prov(a: &Formula, polarity: Polarity) -> Built {
    let hyp = nnf_to_formula(&make_nnf(a, polarity));
    match (a, polarity) {
        // the NNF embedding is literally the goal
        (Formula::Var(_) | Formula::Bot, _) => lemma(hyp, |ctx| Ok(nax(ctx.clone(), 0)?)),
        (Formula::Disj(b, c), Polarity::Pos) => {
            let (pb, pc) = (nnf_impl_prov(b, Polarity::Pos)?, nnf_impl_prov(c, Polarity::Pos)?);
            let (nb, nc) = (nnf_of(b, Polarity::Pos), nnf_of(c, Polarity::Pos));
            lemma(hyp, |ctx| {
                let left = or_i1(apply_closed(&pb, nax(cons(&nb, ctx), 0)?)?, (**c).clone())?;
                let right = or_i2((**b).clone(), apply_closed(&pc, nax(cons(&nc, ctx), 0)?)?)?;
                Ok(or_e(nax(ctx.clone(), 0)?, left, right)?)
            })
        }
        (Formula::Conj(b, c), Polarity::Pos) => {
            let (pb, pc) = (nnf_impl_prov(b, Polarity::Pos)?, nnf_impl_prov(c, Polarity::Pos)?);
            lemma(hyp, |ctx| {
                let left = apply_closed(&pb, and_e1(nax(ctx.clone(), 0)?)?)?;
                let right = apply_closed(&pc, and_e2(nax(ctx.clone(), 0)?)?)?;
                Ok(and_i(left, right)?)
            })
        }
        (Formula::Impl(b, c), Polarity::Pos) => {
            let (nb_proof, pc) = (nnf_impl_prov(b, Polarity::Neg)?, nnf_impl_prov(c, Polarity::Pos)?);
            let (nb, nc) = (nnf_of(b, Polarity::Neg), nnf_of(c, Polarity::Pos));
            lemma(hyp, |ctx| {
                let under_b = cons(b, ctx);
                let ctx_nb = cons(&nb, &under_b);
                let contradiction = imp_e(apply_closed(&nb_proof, nax(ctx_nb.clone(), 0)?)?, nax(ctx_nb, 1)?)?;
                let left = ex_falso(contradiction, (**c).clone())?;
                let right = apply_closed(&pc, nax(cons(&nc, &under_b), 0)?)?;
                Ok(imp_i(or_e(nax(under_b.clone(), 1)?, left, right)?)?)
            })
        }
        (Formula::Disj(b, c), Polarity::Neg) => {
            let (pb, pc) = (nnf_impl_prov(b, Polarity::Neg)?, nnf_impl_prov(c, Polarity::Neg)?);
            lemma(hyp, |ctx| {
                let under = cons(a, ctx);
                let ctx_b = cons(b, &under);
                let left = imp_e(apply_closed(&pb, and_e1(nax(ctx_b.clone(), 2)?)?)?, nax(ctx_b, 0)?)?;
                let ctx_c = cons(c, &under);
                let right = imp_e(apply_closed(&pc, and_e2(nax(ctx_c.clone(), 2)?)?)?, nax(ctx_c, 0)?)?;
                Ok(imp_i(or_e(nax(under.clone(), 0)?, left, right)?)?)
            })
        }
        (Formula::Conj(b, c), Polarity::Neg) => {
            let (pb, pc) = (nnf_impl_prov(b, Polarity::Neg)?, nnf_impl_prov(c, Polarity::Neg)?);
            let (nb, nc) = (nnf_of(b, Polarity::Neg), nnf_of(c, Polarity::Neg));
            lemma(hyp, |ctx| {
                let under = cons(a, ctx);
                let ctx_b = cons(&nb, &under);
                let left = imp_e(apply_closed(&pb, nax(ctx_b.clone(), 0)?)?, and_e1(nax(ctx_b, 1)?)?)?;
                let ctx_c = cons(&nc, &under);
                let right = imp_e(apply_closed(&pc, nax(ctx_c.clone(), 0)?)?, and_e2(nax(ctx_c, 1)?)?)?;
                Ok(imp_i(or_e(nax(under.clone(), 1)?, left, right)?)?)
            })
        }
        (Formula::Impl(b, c), Polarity::Neg) => {
            let (pb, nc_proof) = (nnf_impl_prov(b, Polarity::Pos)?, nnf_impl_prov(c, Polarity::Neg)?);
            lemma(hyp, |ctx| {
                let under = cons(a, ctx);
                let b_proof = apply_closed(&pb, and_e1(nax(under.clone(), 1)?)?)?;
                let c_proof = imp_e(nax(under.clone(), 0)?, b_proof)?;
                let not_c = apply_closed(&nc_proof, and_e2(nax(under.clone(), 1)?)?)?;
                Ok(imp_i(imp_e(not_c, c_proof)?)?)
            })
        }
    }
}

fn nnf_of(a: &Formula, polarity: Polarity) -> Formula {
    nnf_to_formula(&make_nnf(a, polarity))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessResult {
    /// A checked derivation of `[] ⊢ a`.
    Proof(NcDerivation),
    /// A valuation falsifying `a`.
    NotValid(Valuation),
}

/// Decides `a` through its CNF and, when valid, assembles a derivation of
/// `[] ⊢ a` from the CNF proof and the two implication lemmas.
///
/// Countervaluations list every variable of `a`; variables the refuted
/// clause does not mention are false.
pub fn complete(a: &Formula) -> Result<CompletenessResult, ProofError> {
    let nnf = make_nnf(a, Polarity::Pos);
    let (cnf, cnf_to_nnf) = cnf_impl_rec(&nnf)?;
    let verdict = cnf_decide(&cnf);
    if let CnfVerdict::Refuted { countervaluation, .. } = &verdict {
        let mut v = Valuation::new();
        for var in a.variables() {
            let value = countervaluation.get(&var);
            v.set(var, value);
        }
        return Ok(CompletenessResult::NotValid(v));
    }
    let cnf_proof = cnf_provable(&cnf, &verdict)?;
    let nnf_to_a = nnf_impl_prov(a, Polarity::Pos)?;
    let nnf_proof = imp_e(cnf_to_nnf, cnf_proof)?;
    Ok(CompletenessResult::Proof(imp_e(nnf_to_a, nnf_proof)?))
}
