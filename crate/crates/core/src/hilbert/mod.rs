//! Hilbert calculus: nine axiom schemata and modus ponens.

mod translate;

use serde::{Deserialize, Serialize};

use crate::check::{arity, check_tree, index, mismatch, show_list, CheckError};
use crate::formula::Formula;
use crate::semantics::Context;

pub use translate::{hc_deduction, hc_to_nc, nc_to_hc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HcSchema {
    HOrI1,
    HOrI2,
    HAndI,
    HOrE,
    HAndE1,
    HAndE2,
    HS,
    HK,
    HClas,
}

impl HcSchema {
    pub const ALL: [HcSchema; 9] = [
        HcSchema::HOrI1,
        HcSchema::HOrI2,
        HcSchema::HAndI,
        HcSchema::HOrE,
        HcSchema::HAndE1,
        HcSchema::HAndE2,
        HcSchema::HS,
        HcSchema::HK,
        HcSchema::HClas,
    ];

    /// Number of metavariables.
    pub fn arity(self) -> usize {
        match self {
            HcSchema::HClas => 1,
            HcSchema::HOrE | HcSchema::HS => 3,
            _ => 2,
        }
    }

    /// The instance for `fs`, or `None` when the count is wrong.
    pub fn instantiate(self, fs: &[Formula]) -> Option<Formula> {
        if fs.len() != self.arity() {
            return None;
        }
        let a = || fs[0].clone();
        let b = || fs[1].clone();
        let c = || fs[2].clone();
        let imp = Formula::imp;
        Some(match self {
            HcSchema::HOrI1 => imp(a(), Formula::disj(a(), b())),
            HcSchema::HOrI2 => imp(b(), Formula::disj(a(), b())),
            HcSchema::HAndI => imp(a(), imp(b(), Formula::conj(a(), b()))),
            HcSchema::HOrE => imp(
                Formula::disj(a(), b()),
                imp(imp(a(), c()), imp(imp(b(), c()), c())),
            ),
            HcSchema::HAndE1 => imp(Formula::conj(a(), b()), a()),
            HcSchema::HAndE2 => imp(Formula::conj(a(), b()), b()),
            HcSchema::HS => imp(imp(a(), imp(b(), c())), imp(imp(a(), b()), imp(a(), c()))),
            HcSchema::HK => imp(a(), imp(b(), a())),
            HcSchema::HClas => imp(Formula::neg(Formula::neg(a())), a()),
        })
    }
}

/// A schema together with the formulas filling its metavariables, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HcAxiom {
    pub schema: HcSchema,
    pub formulas: Vec<Formula>,
}

impl HcAxiom {
    pub fn new(schema: HcSchema, formulas: Vec<Formula>) -> Self {
        HcAxiom { schema, formulas }
    }

    pub fn k(a: Formula, b: Formula) -> Self {
        HcAxiom::new(HcSchema::HK, vec![a, b])
    }

    pub fn s(a: Formula, b: Formula, c: Formula) -> Self {
        HcAxiom::new(HcSchema::HS, vec![a, b, c])
    }

    pub fn instance(&self) -> Option<Formula> {
        self.schema.instantiate(&self.formulas)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum HcRule {
    Hass { index: usize },
    Hax { axiom: HcAxiom },
    /// Modus ponens; `cut_formula` is the antecedent of the major premise.
    HImpE { cut_formula: Formula },
}

impl HcRule {
    pub fn name(&self) -> &'static str {
        match self {
            HcRule::Hass { .. } => "Hass",
            HcRule::Hax { .. } => "Hax",
            HcRule::HImpE { .. } => "HImpE",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            HcRule::HImpE { .. } => 2,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HcDerivation {
    pub rule: HcRule,
    pub premises: Vec<HcDerivation>,
    pub context: Context,
    pub formula: Formula,
}

impl HcDerivation {
    pub fn conclusion(&self) -> (Context, Formula) {
        (self.context.clone(), self.formula.clone())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(HcDerivation::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(HcDerivation::depth).max().unwrap_or(0)
    }

    pub fn nodes(&self) -> Vec<&HcDerivation> {
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
    format!("{} ⊢H {}", show_list(ctx), f)
}

pub(crate) fn check_node(d: &HcDerivation) -> Result<(), CheckError> {
    let rule = d.rule.name();
    arity(rule, d.rule.arity(), d.premises.len())?;
    match &d.rule {
        HcRule::Hass { index: i } => {
            let assumed = index(rule, &d.context, *i)?;
            if *assumed != d.formula {
                return Err(mismatch(rule, format!("context entry {i} = {}", d.formula), assumed));
            }
        }
        HcRule::Hax { axiom } => {
            let Some(instance) = axiom.instance() else {
                return Err(mismatch(
                    rule,
                    format!("{} metavariable(s) for {:?}", axiom.schema.arity(), axiom.schema),
                    format!("{} formula(s)", axiom.formulas.len()),
                ));
            };
            if instance != d.formula {
                return Err(mismatch(rule, format!("instance {instance}"), &d.formula));
            }
        }
        HcRule::HImpE { cut_formula } => {
            let major = Formula::imp(cut_formula.clone(), d.formula.clone());
            for (which, (p, f)) in d.premises.iter().zip([&major, cut_formula]).enumerate() {
                if p.context != d.context || p.formula != *f {
                    return Err(mismatch(
                        rule,
                        format!("premise {which} concluding {}", show(&d.context, f)),
                        show(&p.context, &p.formula),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Verifies every node and returns the root conclusion; the first violation
/// in pre-order is reported.
pub fn check_hc(d: &HcDerivation) -> Result<(Context, Formula), CheckError> {
    check_tree(d, &|n: &HcDerivation| &n.premises, &check_node)?;
    Ok(d.conclusion())
}

fn node(rule: HcRule, premises: Vec<HcDerivation>, context: Context, formula: Formula) -> Result<HcDerivation, CheckError> {
    let d = HcDerivation {
        rule,
        premises,
        context,
        formula,
    };
    check_node(&d)?;
    Ok(d)
}

pub fn hass(context: Context, i: usize) -> Result<HcDerivation, CheckError> {
    let formula = index("Hass", &context, i)?.clone();
    node(HcRule::Hass { index: i }, vec![], context, formula)
}

pub fn hax(context: Context, axiom: HcAxiom) -> Result<HcDerivation, CheckError> {
    let Some(formula) = axiom.instance() else {
        return Err(mismatch("Hax", format!("{} metavariable(s)", axiom.schema.arity()), axiom.formulas.len()));
    };
    node(HcRule::Hax { axiom }, vec![], context, formula)
}

/// Modus ponens: `Γ ⊢H A -> B` and `Γ ⊢H A` give `Γ ⊢H B`.
pub fn mp(major: HcDerivation, minor: HcDerivation) -> Result<HcDerivation, CheckError> {
    let Formula::Impl(_, b) = &major.formula else {
        return Err(mismatch("HImpE", "major premise of shape A -> B", &major.formula));
    };
    let formula = (**b).clone();
    let context = major.context.clone();
    let cut_formula = minor.formula.clone();
    node(HcRule::HImpE { cut_formula }, vec![major, minor], context, formula)
}
