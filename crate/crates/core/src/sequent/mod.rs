//! Classical sequent calculus with cut, over positional lists.

mod translate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::check::{arity, check_tree, index, mismatch, CheckError, ProofError};
use crate::formula::{parse, Formula, ParseError};
use crate::semantics::Context;

pub use translate::{big_or, g_to_nc, g_to_nc_neg, neg_list, nc_to_g};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sequent {
    pub gamma: Context,
    pub delta: Context,
}

impl Sequent {
    pub fn new(gamma: Context, delta: Context) -> Self {
        Sequent { gamma, delta }
    }

    pub fn side(&self, side: Side) -> &Context {
        match side {
            Side::Left => &self.gamma,
            Side::Right => &self.delta,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut Context {
        match side {
            Side::Left => &mut self.gamma,
            Side::Right => &mut self.delta,
        }
    }

    /// All formulas, gamma first.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.gamma.iter().chain(&self.delta)
    }
}

fn join(fs: &[Formula]) -> String {
    fs.iter().map(Formula::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, d) = (join(&self.gamma), join(&self.delta));
        match (g.is_empty(), d.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {d}"),
            (false, true) => write!(f, "{g} =>"),
            (false, false) => write!(f, "{g} => {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequentParseError {
    #[error("sequent needs exactly one `=>`")]
    Separator,
    #[error("formula {index} on the {side} side: {source}")]
    Formula {
        side: &'static str,
        index: usize,
        source: ParseError,
    },
}

fn parse_side(text: &str, side: &'static str) -> Result<Context, SequentParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(index, part)| parse(part).map_err(|source| SequentParseError::Formula { side, index, source }))
        .collect()
}

/// `A, B => C, D`; either side may be empty.
impl FromStr for Sequent {
    type Err = SequentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split("=>");
        let (Some(g), Some(d), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(SequentParseError::Separator);
        };
        Ok(Sequent::new(parse_side(g, "left")?, parse_side(d, "right")?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Rules with the position of their active formula in the conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum GcRule {
    Gax { gi: usize, di: usize },
    GBot { gi: usize },
    AndL { split: usize },
    AndR { split: usize },
    OrL { split: usize },
    OrR { split: usize },
    ImpL { split: usize },
    ImpR { split: usize },
    Cut { cut_formula: Formula },
}

impl GcRule {
    pub fn name(&self) -> &'static str {
        match self {
            GcRule::Gax { .. } => "Gax",
            GcRule::GBot { .. } => "GBot",
            GcRule::AndL { .. } => "AndL",
            GcRule::AndR { .. } => "AndR",
            GcRule::OrL { .. } => "OrL",
            GcRule::OrR { .. } => "OrR",
            GcRule::ImpL { .. } => "ImpL",
            GcRule::ImpR { .. } => "ImpR",
            GcRule::Cut { .. } => "Cut",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GcRule::Gax { .. } | GcRule::GBot { .. } => 0,
            GcRule::AndL { .. } | GcRule::OrR { .. } | GcRule::ImpR { .. } => 1,
            _ => 2,
        }
    }

    /// Side and position of the active formula for logical rules.
    pub fn active(&self) -> Option<(Side, usize)> {
        match *self {
            GcRule::AndL { split } | GcRule::OrL { split } | GcRule::ImpL { split } => Some((Side::Left, split)),
            GcRule::AndR { split } | GcRule::OrR { split } | GcRule::ImpR { split } => Some((Side::Right, split)),
            _ => None,
        }
    }

    fn with_split(&self, split: usize) -> GcRule {
        match self {
            GcRule::AndL { .. } => GcRule::AndL { split },
            GcRule::AndR { .. } => GcRule::AndR { split },
            GcRule::OrL { .. } => GcRule::OrL { split },
            GcRule::OrR { .. } => GcRule::OrR { split },
            GcRule::ImpL { .. } => GcRule::ImpL { split },
            GcRule::ImpR { .. } => GcRule::ImpR { split },
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcDerivation {
    pub rule: GcRule,
    pub premises: Vec<GcDerivation>,
    pub sequent: Sequent,
}

impl GcDerivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(GcDerivation::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(GcDerivation::depth).max().unwrap_or(0)
    }

    pub fn nodes(&self) -> Vec<&GcDerivation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.premises.iter().rev());
        }
        out
    }

    pub fn cut_count(&self) -> usize {
        self.nodes().iter().filter(|n| matches!(n.rule, GcRule::Cut { .. })).count()
    }
}

/// How one side of a premise is obtained from the same side of the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ListEdit {
    Same,
    Prepend,
    /// The entry at `at` is replaced by `with` new entries.
    Replace { at: usize, with: usize },
}

/// Where an entry of an edited list comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    /// Conclusion entry at this position.
    Old(usize),
    /// The n-th inserted entry.
    New(usize),
}

impl ListEdit {
    pub(crate) fn origin(self, k: usize) -> Origin {
        match self {
            ListEdit::Same => Origin::Old(k),
            ListEdit::Prepend if k == 0 => Origin::New(0),
            ListEdit::Prepend => Origin::Old(k - 1),
            ListEdit::Replace { at, .. } if k < at => Origin::Old(k),
            ListEdit::Replace { at, with } if k < at + with => Origin::New(k - at),
            ListEdit::Replace { with, .. } => Origin::Old(k + 1 - with),
        }
    }

    /// Position in the edited list corresponding to an insertion at `pos` in
    /// the original; insertions at the active position go in front of it.
    pub(crate) fn map_insert(self, pos: usize) -> usize {
        match self {
            ListEdit::Same => pos,
            ListEdit::Prepend => pos + 1,
            ListEdit::Replace { at, .. } if pos <= at => pos,
            ListEdit::Replace { with, .. } => pos + with - 1,
        }
    }

    fn apply(self, list: &[Formula], new: &[Formula]) -> Context {
        match self {
            ListEdit::Same => list.to_vec(),
            ListEdit::Prepend => new.iter().chain(list).cloned().collect(),
            ListEdit::Replace { at, .. } => list[..at].iter().chain(new).chain(&list[at + 1..]).cloned().collect(),
        }
    }
}

/// One premise described relative to the conclusion.
#[derive(Clone, Debug)]
pub(crate) struct PremiseShape {
    pub gamma: ListEdit,
    pub gamma_new: Vec<Formula>,
    pub delta: ListEdit,
    pub delta_new: Vec<Formula>,
}

impl PremiseShape {
    fn left(edit: ListEdit, new: Vec<Formula>) -> Self {
        PremiseShape {
            gamma: edit,
            gamma_new: new,
            delta: ListEdit::Same,
            delta_new: vec![],
        }
    }

    fn right(edit: ListEdit, new: Vec<Formula>) -> Self {
        PremiseShape {
            gamma: ListEdit::Same,
            gamma_new: vec![],
            delta: edit,
            delta_new: new,
        }
    }

    pub(crate) fn edit(&self, side: Side) -> ListEdit {
        match side {
            Side::Left => self.gamma,
            Side::Right => self.delta,
        }
    }

    pub(crate) fn apply(&self, s: &Sequent) -> Sequent {
        Sequent::new(self.gamma.apply(&s.gamma, &self.gamma_new), self.delta.apply(&s.delta, &self.delta_new))
    }
}

fn replace(at: usize, with: usize) -> ListEdit {
    ListEdit::Replace { at, with }
}

/// Premise shapes of a logical rule or cut applied to `s`, after checking
/// that the active formula has the rule's connective.
pub(crate) fn premise_shapes(rule: &GcRule, s: &Sequent) -> Result<Vec<PremiseShape>, CheckError> {
    let name = rule.name();
    if let GcRule::Cut { cut_formula } = rule {
        return Ok(vec![
            PremiseShape::right(ListEdit::Prepend, vec![cut_formula.clone()]),
            PremiseShape::left(ListEdit::Prepend, vec![cut_formula.clone()]),
        ]);
    }
    let Some((side, at)) = rule.active() else {
        return Ok(vec![]);
    };
    let active = index(name, s.side(side), at)?;
    let (a, b) = match (rule, active) {
        (GcRule::AndL { .. } | GcRule::AndR { .. }, Formula::Conj(a, b))
        | (GcRule::OrL { .. } | GcRule::OrR { .. }, Formula::Disj(a, b))
        | (GcRule::ImpL { .. } | GcRule::ImpR { .. }, Formula::Impl(a, b)) => ((**a).clone(), (**b).clone()),
        _ => {
            let shape = match rule {
                GcRule::AndL { .. } | GcRule::AndR { .. } => "A & B",
                GcRule::OrL { .. } | GcRule::OrR { .. } => "A | B",
                _ => "A -> B",
            };
            let side = if side == Side::Left { "left" } else { "right" };
            return Err(mismatch(name, format!("{shape} at {side} position {at}"), active));
        }
    };
    Ok(match rule {
        GcRule::AndL { .. } => vec![PremiseShape::left(replace(at, 2), vec![a, b])],
        GcRule::OrR { .. } => vec![PremiseShape::right(replace(at, 2), vec![a, b])],
        GcRule::AndR { .. } => vec![
            PremiseShape::right(replace(at, 1), vec![a]),
            PremiseShape::right(replace(at, 1), vec![b]),
        ],
        GcRule::OrL { .. } => vec![
            PremiseShape::left(replace(at, 1), vec![a]),
            PremiseShape::left(replace(at, 1), vec![b]),
        ],
        GcRule::ImpL { .. } => vec![
            PremiseShape::left(replace(at, 1), vec![b]),
            PremiseShape {
                gamma: ListEdit::Replace { at, with: 0 },
                gamma_new: vec![],
                delta: ListEdit::Prepend,
                delta_new: vec![a],
            },
        ],
        GcRule::ImpR { .. } => vec![PremiseShape {
            gamma: ListEdit::Prepend,
            gamma_new: vec![a],
            delta: replace(at, 1),
            delta_new: vec![b],
        }],
        _ => unreachable!("non-logical rules handled above"),
    })
}

pub(crate) fn check_node(d: &GcDerivation) -> Result<(), CheckError> {
    let name = d.rule.name();
    arity(name, d.rule.arity(), d.premises.len())?;
    let s = &d.sequent;
    match &d.rule {
        GcRule::Gax { gi, di } => {
            let (l, r) = (index(name, &s.gamma, *gi)?, index(name, &s.delta, *di)?);
            if l != r {
                return Err(mismatch(name, format!("left {gi} equal to right {di}"), format!("{l} vs {r}")));
            }
        }
        GcRule::GBot { gi } => {
            let l = index(name, &s.gamma, *gi)?;
            if *l != Formula::Bot {
                return Err(mismatch(name, format!("bot at left position {gi}"), l));
            }
        }
        rule => {
            for (which, (shape, p)) in premise_shapes(rule, s)?.iter().zip(&d.premises).enumerate() {
                let expected = shape.apply(s);
                if p.sequent != expected {
                    return Err(mismatch(name, format!("premise {which} = {expected}"), &p.sequent));
                }
            }
        }
    }
    Ok(())
}

/// Checks every node, then `extra` on the same node, in pre-order.
pub(crate) fn check_with(d: &GcDerivation, extra: &dyn Fn(&GcDerivation) -> Result<(), CheckError>) -> Result<Sequent, CheckError> {
    check_tree(d, &|n: &GcDerivation| &n.premises, &|n| {
        check_node(n)?;
        extra(n)
    })?;
    Ok(d.sequent.clone())
}

/// Verifies every node and returns the endsequent; the first violation in
/// pre-order is reported.
pub fn check_gc(d: &GcDerivation) -> Result<Sequent, CheckError> {
    check_with(d, &|_| Ok(()))
}

pub(crate) fn node(rule: GcRule, premises: Vec<GcDerivation>, sequent: Sequent) -> Result<GcDerivation, CheckError> {
    let d = GcDerivation { rule, premises, sequent };
    check_node(&d)?;
    Ok(d)
}

pub(crate) fn weaken_unchecked(d: &GcDerivation, side: Side, pos: usize, a: &Formula) -> GcDerivation {
    let shift = |i: usize| if pos <= i { i + 1 } else { i };
    let rule = match (&d.rule, side) {
        (GcRule::Gax { gi, di }, Side::Left) => GcRule::Gax { gi: shift(*gi), di: *di },
        (GcRule::Gax { gi, di }, Side::Right) => GcRule::Gax { gi: *gi, di: shift(*di) },
        (GcRule::GBot { gi }, Side::Left) => GcRule::GBot { gi: shift(*gi) },
        (rule, _) => match rule.active() {
            Some((s, split)) if s == side => rule.with_split(shift(split)),
            _ => rule.clone(),
        },
    };
    let shapes = premise_shapes(&d.rule, &d.sequent).expect("weakening a checked derivation");
    let premises = d
        .premises
        .iter()
        .zip(&shapes)
        .map(|(p, shape)| weaken_unchecked(p, side, shape.edit(side).map_insert(pos), a))
        .collect();
    let mut sequent = d.sequent.clone();
    sequent.side_mut(side).insert(pos, a.clone());
    GcDerivation { rule, premises, sequent }
}

/// Inserts `a` at `pos` on one side of every sequent along the derivation.
pub fn gc_weaken(d: &GcDerivation, side: Side, pos: usize, a: &Formula) -> Result<GcDerivation, ProofError> {
    check_gc(d).map_err(ProofError::PreconditionViolated)?;
    let len = d.sequent.side(side).len();
    if pos > len {
        return Err(ProofError::Precondition(format!("insertion position {pos} beyond side of length {len}")));
    }
    Ok(weaken_unchecked(d, side, pos, a))
}
