//! Shared test support: an independent truth-table oracle, exhaustive
//! enumerators and seeded random generators of formulas and derivations.
#![allow(dead_code)]

use std::collections::BTreeMap;

use propkit::cutfree::{gcf_prove, DecisionResult};
use propkit::hilbert::{hass, hax, hc_deduction, mp, nc_to_hc, HcAxiom, HcDerivation, HcSchema};
use propkit::natded::{
    and_e1, and_e2, and_i, bot_c, imp_e, imp_i, nax, nc_weaken, or_e, or_i1, or_i2, NcDerivation,
};
use propkit::sequent::{gc_weaken, nc_to_g, GcDerivation, GcRule, Sequent, Side};
use propkit::Formula;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const VARS: [&str; 4] = ["p", "q", "r", "s"];

// ---------------------------------------------------------------------------
// Oracle

/// Truth value under an assignment given by name; absent names are false.
pub fn truth(assign: &BTreeMap<String, bool>, f: &Formula) -> bool {
    match f {
        Formula::Var(p) => assign.get(p.as_str()).copied().unwrap_or(false),
        Formula::Bot => false,
        Formula::Conj(a, b) => truth(assign, a) && truth(assign, b),
        Formula::Disj(a, b) => truth(assign, a) || truth(assign, b),
        Formula::Impl(a, b) => !truth(assign, a) || truth(assign, b),
    }
}

fn names(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Var(p) => {
            if !out.iter().any(|q| q == p.as_str()) {
                out.push(p.as_str().to_owned());
            }
        }
        Formula::Bot => {}
        Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => {
            names(a, out);
            names(b, out);
        }
    }
}

pub fn names_of(fs: &[&Formula]) -> Vec<String> {
    let mut out = Vec::new();
    for f in fs {
        names(f, &mut out);
    }
    out
}

/// Every assignment over `vars`, by bitmask.
pub fn assignments(vars: &[String]) -> impl Iterator<Item = BTreeMap<String, bool>> + '_ {
    (0u32..1 << vars.len()).map(move |mask| {
        vars.iter().enumerate().map(|(i, p)| (p.clone(), mask >> i & 1 == 1)).collect()
    })
}

/// An assignment making all of `gamma` true and all of `delta` false.
pub fn oracle_counter(gamma: &[Formula], delta: &[Formula]) -> Option<BTreeMap<String, bool>> {
    let all: Vec<&Formula> = gamma.iter().chain(delta).collect();
    let vars = names_of(&all);
    let found = assignments(&vars).find(|v| gamma.iter().all(|g| truth(v, g)) && !delta.iter().any(|d| truth(v, d)));
    found
}

pub fn oracle_valid(f: &Formula) -> bool {
    oracle_counter(&[], std::slice::from_ref(f)).is_none()
}

pub fn oracle_entails(ctx: &[Formula], f: &Formula) -> bool {
    oracle_counter(ctx, std::slice::from_ref(f)).is_none()
}

/// Reads a library valuation through its display form `p=true,q=false`.
pub fn assignment_of(v: &propkit::Valuation) -> BTreeMap<String, bool> {
    let text = v.to_string();
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, b) = kv.split_once('=').expect("name=bool");
            (k.to_owned(), b.parse().expect("bool"))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Enumeration

/// All formulas of depth at most `depth` (atoms have depth 1) built from
/// `atoms` with the three binary connectives.
pub fn formulas_up_to(atoms: &[Formula], depth: usize) -> Vec<Formula> {
    let mut all: Vec<Formula> = atoms.to_vec();
    for _ in 1..depth {
        let prev = all.clone();
        let mut next = atoms.to_vec();
        for a in &prev {
            for b in &prev {
                next.push(Formula::conj(a.clone(), b.clone()));
                next.push(Formula::disj(a.clone(), b.clone()));
                next.push(Formula::imp(a.clone(), b.clone()));
            }
        }
        all = next;
    }
    all
}

pub fn lists_up_to<T: Clone>(items: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<T>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for l in &layer {
            for x in items {
                let mut m = l.clone();
                m.push(x.clone());
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Random formulas

pub fn random_atom(rng: &mut Rng8, vars: usize, bot: bool) -> Formula {
    if bot && rng.gen_ratio(1, 8) {
        Formula::Bot
    } else {
        Formula::var(VARS[rng.gen_range(0..vars)])
    }
}

/// Random formula of depth at most `depth` over the first `vars` variables.
pub fn random_formula(rng: &mut Rng8, depth: usize, vars: usize) -> Formula {
    if depth <= 1 || rng.gen_ratio(1, 4) {
        return random_atom(rng, vars, true);
    }
    let a = random_formula(rng, depth - 1, vars);
    let b = random_formula(rng, depth - 1, vars);
    match rng.gen_range(0..3) {
        0 => Formula::conj(a, b),
        1 => Formula::disj(a, b),
        _ => Formula::imp(a, b),
    }
}

fn small_formula(rng: &mut Rng8) -> Formula {
    random_formula(rng, 3, 4)
}

fn random_context(rng: &mut Rng8) -> Vec<Formula> {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| match rng.gen_range(0..6) {
            0 => Formula::Bot,
            1 => Formula::neg(Formula::neg(small_formula(rng))),
            _ => small_formula(rng),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Random natural deduction derivations

fn with_head(a: &Formula, ctx: &[Formula]) -> Vec<Formula> {
    let mut c = vec![a.clone()];
    c.extend(ctx.iter().cloned());
    c
}

/// `d` over `a :: d.context`.
fn push_head(d: &NcDerivation, a: &Formula) -> NcDerivation {
    let target = with_head(a, &d.context);
    let embedding: Vec<usize> = (1..target.len()).collect();
    nc_weaken(d, &target, &embedding).expect("head weakening")
}

/// Random checked derivation over `ctx` (non-empty) of depth at most `budget`.
pub fn gen_nc_in(rng: &mut Rng8, ctx: &[Formula], budget: usize) -> NcDerivation {
    if budget <= 1 {
        return nax(ctx.to_vec(), rng.gen_range(0..ctx.len())).unwrap();
    }
    let b = budget - 1;
    match rng.gen_range(0..10) {
        0 => nax(ctx.to_vec(), rng.gen_range(0..ctx.len())).unwrap(),
        1 => {
            let a = if rng.gen_bool(0.5) { small_formula(rng) } else { ctx.choose(rng).unwrap().clone() };
            imp_i(gen_nc_in(rng, &with_head(&a, ctx), b)).unwrap()
        }
        2 => and_i(gen_nc_in(rng, ctx, b), gen_nc_in(rng, ctx, b)).unwrap(),
        3 => {
            let d = gen_nc_in(rng, ctx, b.max(2) - 1);
            let d = if matches!(d.formula, Formula::Conj(..)) || budget < 3 {
                d
            } else {
                and_i(d, gen_nc_in(rng, ctx, b - 1)).unwrap()
            };
            match (&d.formula, rng.gen_bool(0.5)) {
                (Formula::Conj(..), true) => and_e1(d).unwrap(),
                (Formula::Conj(..), false) => and_e2(d).unwrap(),
                _ => d,
            }
        }
        4 => {
            let d = gen_nc_in(rng, ctx, b);
            if rng.gen_bool(0.5) {
                or_i1(d, small_formula(rng)).unwrap()
            } else {
                or_i2(small_formula(rng), d).unwrap()
            }
        }
        5 if budget >= 3 => {
            let minor = gen_nc_in(rng, ctx, b);
            let body = gen_nc_in(rng, &with_head(&minor.formula, ctx), b - 1);
            imp_e(imp_i(body).unwrap(), minor).unwrap()
        }
        6 => {
            // modus ponens on a context implication whose antecedent is also
            // in the context
            let pairs: Vec<(usize, usize)> = (0..ctx.len())
                .filter_map(|i| match &ctx[i] {
                    Formula::Impl(a, _) => ctx.iter().position(|g| g == &**a).map(|j| (i, j)),
                    _ => None,
                })
                .collect();
            match pairs.choose(rng) {
                Some(&(i, j)) => imp_e(nax(ctx.to_vec(), i).unwrap(), nax(ctx.to_vec(), j).unwrap()).unwrap(),
                None => gen_nc_in(rng, ctx, b),
            }
        }
        7 if budget >= 3 => {
            let d = gen_nc_in(rng, ctx, b - 1);
            let major = match &d.formula {
                Formula::Disj(..) => d,
                _ => or_i1(d, small_formula(rng)).unwrap(),
            };
            let Formula::Disj(l, r) = major.formula.clone() else { unreachable!() };
            if rng.gen_bool(0.5) {
                let left = or_i2((*r).clone(), nax(with_head(&l, ctx), 0).unwrap()).unwrap();
                let right = or_i1(nax(with_head(&r, ctx), 0).unwrap(), (*l).clone()).unwrap();
                or_e(major, left, right).unwrap()
            } else {
                let g = gen_nc_in(rng, ctx, b - 1);
                or_e(major, push_head(&g, &l), push_head(&g, &r)).unwrap()
            }
        }
        8 if budget >= 3 => {
            let g = gen_nc_in(rng, ctx, b - 1);
            let a = g.formula.clone();
            let not_a = Formula::neg(a.clone());
            let body = imp_e(nax(with_head(&not_a, ctx), 0).unwrap(), push_head(&g, &not_a)).unwrap();
            bot_c(body).unwrap()
        }
        9 => match ctx.iter().position(|g| *g == Formula::Bot) {
            Some(i) => {
                let a = small_formula(rng);
                bot_c(nax(with_head(&Formula::neg(a), ctx), i + 1).unwrap()).unwrap()
            }
            None => gen_nc_in(rng, ctx, b),
        },
        _ => gen_nc_in(rng, ctx, b),
    }
}

/// Random checked Nc derivation: context of 1 to 3 formulas over at most 4
/// variables, depth at most `budget`.
pub fn gen_nc(rng: &mut Rng8, budget: usize) -> NcDerivation {
    let ctx = random_context(rng);
    gen_nc_in(rng, &ctx, budget)
}

// ---------------------------------------------------------------------------
// Random sequent derivations

/// A valid random sequent: a shared formula on both sides among random
/// side formulas.
fn valid_sequent(rng: &mut Rng8) -> Sequent {
    let a = small_formula(rng);
    let mut gamma: Vec<Formula> = (0..rng.gen_range(0..2)).map(|_| small_formula(rng)).collect();
    let mut delta: Vec<Formula> = (0..rng.gen_range(0..2)).map(|_| small_formula(rng)).collect();
    let gi = rng.gen_range(0..=gamma.len());
    gamma.insert(gi, a.clone());
    let di = rng.gen_range(0..=delta.len());
    delta.insert(di, a);
    Sequent::new(gamma, delta)
}

fn searched(rng: &mut Rng8) -> GcDerivation {
    loop {
        let s = if rng.gen_bool(0.5) {
            valid_sequent(rng)
        } else {
            let gamma = (0..rng.gen_range(0..3)).map(|_| small_formula(rng)).collect();
            let delta = (0..rng.gen_range(1..3)).map(|_| small_formula(rng)).collect();
            Sequent::new(gamma, delta)
        };
        if let DecisionResult::Proof(d) = gcf_prove(&s) {
            return d;
        }
    }
}

fn random_side(rng: &mut Rng8) -> Side {
    if rng.gen_bool(0.5) {
        Side::Left
    } else {
        Side::Right
    }
}

fn weakened(rng: &mut Rng8, d: &GcDerivation) -> GcDerivation {
    let side = random_side(rng);
    let pos = rng.gen_range(0..=d.sequent.side(side).len());
    gc_weaken(d, side, pos, &small_formula(rng)).unwrap()
}

/// `Cut` on a fresh formula between two weakenings of `d`.
pub fn forced_cut(rng: &mut Rng8, d: &GcDerivation) -> GcDerivation {
    let a = small_formula(rng);
    GcDerivation {
        rule: GcRule::Cut { cut_formula: a.clone() },
        premises: vec![gc_weaken(d, Side::Right, 0, &a).unwrap(), gc_weaken(d, Side::Left, 0, &a).unwrap()],
        sequent: d.sequent.clone(),
    }
}

/// Random checked Gc derivation, mixing translated natural deduction,
/// search results, weakenings and forced cuts.
pub fn gen_gc(rng: &mut Rng8) -> GcDerivation {
    let base = match rng.gen_range(0..3) {
        0 | 1 => {
            let budget = rng.gen_range(1..=6);
            nc_to_g(&gen_nc(rng, budget)).unwrap()
        }
        _ => searched(rng),
    };
    match rng.gen_range(0..4) {
        0 => base,
        1 => weakened(rng, &base),
        2 => forced_cut(rng, &base),
        _ => {
            let w = weakened(rng, &base);
            forced_cut(rng, &w)
        }
    }
}

/// Random cut-free derivation found by search.
pub fn gen_gcf(rng: &mut Rng8) -> GcDerivation {
    searched(rng)
}

// ---------------------------------------------------------------------------
// Random Hilbert derivations

fn random_axiom(rng: &mut Rng8) -> HcAxiom {
    let schema = *HcSchema::ALL.choose(rng).unwrap();
    let fs = (0..schema.arity()).map(|_| random_formula(rng, 2, 3)).collect();
    HcAxiom::new(schema, fs)
}

pub fn gen_hc(rng: &mut Rng8) -> HcDerivation {
    match rng.gen_range(0..4) {
        0 => {
            let ctx = random_context(rng);
            hax(ctx, random_axiom(rng)).unwrap()
        }
        1 => {
            let ctx = random_context(rng);
            let budget = rng.gen_range(1..=5);
            let h = nc_to_hc(&gen_nc_in(rng, &ctx, budget)).unwrap();
            hc_deduction(&h).unwrap()
        }
        2 => {
            // K applied to an assumption
            let ctx = random_context(rng);
            let i = rng.gen_range(0..ctx.len());
            let k = hax(ctx.clone(), HcAxiom::k(ctx[i].clone(), small_formula(rng))).unwrap();
            mp(k, hass(ctx, i).unwrap()).unwrap()
        }
        _ => {
            let budget = rng.gen_range(1..=6);
            nc_to_hc(&gen_nc(rng, budget)).unwrap()
        }
    }
}

// ---------------------------------------------------------------------------
// Mutations of serialized derivations

use serde_json::Value;

/// Paths (premise index lists) of all nodes of a serialized tree.
fn node_paths(v: &Value, here: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(here.clone());
    if let Some(ps) = v.get("premises").and_then(Value::as_array) {
        for (i, p) in ps.iter().enumerate() {
            let mut next = here.clone();
            next.push(i);
            node_paths(p, next, out);
        }
    }
}

fn node_at<'a>(v: &'a mut Value, path: &[usize]) -> &'a mut Value {
    path.iter().fold(v, |n, &i| &mut n["premises"][i])
}

fn other_formula(s: &str) -> Value {
    let f = propkit::parse(s).expect("stored formulas parse");
    Value::from(Formula::conj(f, Formula::var("z")).to_string())
}

fn mutate_formula_list(rng: &mut Rng8, list: &mut Value) -> bool {
    let Some(items) = list.as_array_mut() else { return false };
    if items.is_empty() {
        items.push(Value::from("z"));
    } else {
        let i = rng.gen_range(0..items.len());
        let s = items[i].as_str().unwrap().to_owned();
        items[i] = other_formula(&s);
    }
    true
}

/// A single-field change that no checker accepts; returns a description.
pub fn mutate(rng: &mut Rng8, doc: &Value) -> (Value, String) {
    let mut v = doc.clone();
    let mut paths = Vec::new();
    node_paths(&v, vec![], &mut paths);
    let inner: Vec<&Vec<usize>> = paths.iter().filter(|p| !p.is_empty()).collect();
    loop {
        let kind = rng.gen_range(0..4);
        match kind {
            // conclusion of a premise no longer matches its parent
            0 if !inner.is_empty() => {
                let path = (*inner.choose(rng).unwrap()).clone();
                let node = node_at(&mut v, &path);
                let field = if node.get("sequent").is_some() {
                    let side = if rng.gen_bool(0.5) { "gamma" } else { "delta" };
                    mutate_formula_list(rng, &mut node["sequent"][side]);
                    format!("sequent.{side}")
                } else if rng.gen_bool(0.7) {
                    let s = node["formula"].as_str().unwrap().to_owned();
                    node["formula"] = other_formula(&s);
                    "formula".to_owned()
                } else {
                    mutate_formula_list(rng, &mut node["context"]);
                    "context".to_owned()
                };
                return (v, format!("{field} of node {path:?}"));
            }
            // drop a premise
            1 => {
                let with_premises: Vec<&Vec<usize>> =
                    paths.iter().filter(|p| !node_at(&mut v.clone(), p)["premises"].as_array().unwrap().is_empty()).collect();
                let Some(path) = with_premises.choose(rng).map(|p| (*p).clone()) else { continue };
                node_at(&mut v, &path)["premises"].as_array_mut().unwrap().pop();
                return (v, format!("premise dropped at {path:?}"));
            }
            // out-of-range rule index
            2 => {
                let path = paths.choose(rng).unwrap().clone();
                let rule = &mut node_at(&mut v, &path)["rule"];
                let key = ["index", "gi", "di", "split"].into_iter().find(|k| rule.get(*k).is_some());
                let Some(key) = key else { continue };
                rule[key] = Value::from(1000);
                return (v, format!("rule {key} at {path:?}"));
            }
            // unknown rule name
            3 => {
                let path = paths.choose(rng).unwrap().clone();
                let rule = &mut node_at(&mut v, &path)["rule"];
                let name = rule["name"].as_str().unwrap().to_owned();
                rule["name"] = Value::from(format!("{name}X"));
                return (v, format!("rule name at {path:?}"));
            }
            _ => continue,
        }
    }
}
