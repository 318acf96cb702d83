//! Cut-free sequent calculus, backward proof search and semantic cut
//! elimination.
//!
//! Cut-free derivations share the sequent representation; [`check_gcf`]
//! additionally rejects `Cut` nodes and axioms on compound formulas.

use crate::check::{CheckError, ProofError};
use crate::formula::{variables_of_all, Formula, VarName};
use crate::semantics::Valuation;
use crate::sequent::{check_gc, check_with, node, premise_shapes, GcDerivation, GcRule, Sequent, Side};

pub type GcfDerivation = GcDerivation;

/// Number of binary connectives.
pub fn size(f: &Formula) -> usize {
    match f {
        Formula::Var(_) | Formula::Bot => 0,
        Formula::Conj(b, c) | Formula::Disj(b, c) | Formula::Impl(b, c) => 1 + size(b) + size(c),
    }
}

pub fn sizes(gamma: &[Formula], delta: &[Formula]) -> usize {
    gamma.iter().chain(delta).map(size).sum()
}

fn cut_free_node(d: &GcDerivation) -> Result<(), CheckError> {
    let path = crate::check::NodePath::root();
    match &d.rule {
        GcRule::Cut { .. } => Err(CheckError::CutInCutFree { path }),
        GcRule::Gax { gi, .. } => match &d.sequent.gamma[*gi] {
            Formula::Var(_) => Ok(()),
            other => Err(CheckError::NonAtomicAxiom {
                path,
                formula: other.clone(),
            }),
        },
        _ => Ok(()),
    }
}

/// As [`check_gc`], and every node must be cut-free with atomic axioms.
pub fn check_gcf(d: &GcfDerivation) -> Result<Sequent, CheckError> {
    check_with(d, &cut_free_node)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionResult {
    Proof(GcfDerivation),
    Countervaluation(Valuation),
}

impl DecisionResult {
    pub fn is_proof(&self) -> bool {
        matches!(self, DecisionResult::Proof(_))
    }
}

fn first_compound(fs: &[Formula]) -> Option<usize> {
    fs.iter().position(|f| !f.is_atomic())
}

fn decomposing_rule(s: &Sequent) -> Option<GcRule> {
    let (side, split) = match first_compound(&s.gamma) {
        Some(i) => (Side::Left, i),
        None => (Side::Right, first_compound(&s.delta)?),
    };
    let f = &s.side(side)[split];
    Some(match (side, f) {
        (Side::Left, Formula::Conj(..)) => GcRule::AndL { split },
        (Side::Left, Formula::Disj(..)) => GcRule::OrL { split },
        (Side::Left, _) => GcRule::ImpL { split },
        (Side::Right, Formula::Conj(..)) => GcRule::AndR { split },
        (Side::Right, Formula::Disj(..)) => GcRule::OrR { split },
        (Side::Right, _) => GcRule::ImpR { split },
    })
}

fn atomic_base(s: &Sequent, vars: &[VarName]) -> DecisionResult {
    if let Some(gi) = s.gamma.iter().position(|f| *f == Formula::Bot) {
        let d = node(GcRule::GBot { gi }, vec![], s.clone()).expect("bot located");
        return DecisionResult::Proof(d);
    }
    for (gi, f) in s.gamma.iter().enumerate() {
        if let (Formula::Var(_), Some(di)) = (f, s.delta.iter().position(|g| g == f)) {
            let d = node(GcRule::Gax { gi, di }, vec![], s.clone()).expect("shared atom located");
            return DecisionResult::Proof(d);
        }
    }
    let mut v = Valuation::new();
    for p in vars {
        v.set(p.clone(), s.gamma.contains(&Formula::Var(p.clone())));
    }
    DecisionResult::Countervaluation(v)
}

fn search(s: &Sequent, vars: &[VarName], on_step: &mut dyn FnMut(&Sequent, &Sequent)) -> DecisionResult {
    let Some(rule) = decomposing_rule(s) else {
        return atomic_base(s, vars);
    };
    let measure = sizes(&s.gamma, &s.delta);
    let shapes = premise_shapes(&rule, s).expect("decomposed formula has the rule's connective");
    let mut premises = Vec::with_capacity(shapes.len());
    for shape in &shapes {
        let p = shape.apply(s);
        assert!(sizes(&p.gamma, &p.delta) < measure, "backward step from {s} to {p} does not shrink the sequent");
        on_step(s, &p);
        match search(&p, vars, on_step) {
            DecisionResult::Proof(d) => premises.push(d),
            refuted => return refuted,
        }
    }
    DecisionResult::Proof(node(rule, premises, s.clone()).expect("premises built for this rule"))
}

/// Decides `s` by backward search, decomposing the leftmost compound formula
/// of gamma, else of delta.
///
/// Countervaluations assign every variable of `s`: true exactly for the
/// atoms left on the left-hand side of the refuted leaf.
pub fn gcf_prove(s: &Sequent) -> DecisionResult {
    gcf_prove_observed(s, &mut |_, _| {})
}

/// [`gcf_prove`], reporting every backward step as `(conclusion, premise)`.
pub fn gcf_prove_observed(s: &Sequent, on_step: &mut dyn FnMut(&Sequent, &Sequent)) -> DecisionResult {
    let vars = variables_of_all(s.formulas());
    search(s, &vars, on_step)
}

/// Cut-free derivation of the endsequent of `d`, found by search.
pub fn cut_elimination(d: &GcDerivation) -> Result<GcfDerivation, ProofError> {
    let s = check_gc(d).map_err(ProofError::PreconditionViolated)?;
    match gcf_prove(&s) {
        DecisionResult::Proof(p) => Ok(p),
        DecisionResult::Countervaluation(_) => Err(ProofError::InternalSoundnessBreach { sequent: s.to_string() }),
    }
}
