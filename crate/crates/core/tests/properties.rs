//! Property tests for the module invariants.

mod common;

use common::*;
use proptest::prelude::*;
use propkit::cutfree::{check_gcf, cut_elimination, gcf_prove_observed, sizes, DecisionResult};
use propkit::envelope::{from_json, to_json, to_value, Derivation};
use propkit::hilbert::{check_hc, hc_deduction, hc_to_nc, nc_to_hc};
use propkit::natded::{check_nc, nc_weaken};
use propkit::normalforms::{
    clause_decide, clause_to_formula, cnf_decide, cnf_impl_prov, cnf_provable, cnf_to_formula, complete,
    make_cnf, make_nnf, nnf_impl_prov, nnf_to_formula, ClauseVerdict, CompletenessResult, Literal, Polarity,
};
use propkit::semantics::{eval, models, sequent_models, Valuation};
use propkit::sequent::{big_or, check_gc, g_to_nc, g_to_nc_neg, gc_weaken, neg_list, nc_to_g, Sequent, Side};
use propkit::{parse, Formula, VarName};

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => prop::sample::select(&VARS[..]).prop_map(Formula::var),
        1 => Just(Formula::Bot),
    ]
}

fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    atom().prop_recursive(depth, 64, 2, |inner| {
        (inner.clone(), inner, 0..3u8).prop_map(|(a, b, k)| match k {
            0 => Formula::conj(a, b),
            1 => Formula::disj(a, b),
            _ => Formula::imp(a, b),
        })
    })
}

fn valuation() -> impl Strategy<Value = Valuation> {
    prop::collection::vec(any::<bool>(), 4).prop_map(|bits| {
        let mut v = Valuation::new();
        for (p, b) in VARS.iter().zip(bits) {
            v.set(VarName::new(p).unwrap(), b);
        }
        v
    })
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        prop::sample::select(&VARS[..3]).prop_map(|p| Literal::LPos(VarName::new(p).unwrap())),
        prop::sample::select(&VARS[..3]).prop_map(|p| Literal::LNeg(VarName::new(p).unwrap())),
        Just(Literal::LBot),
        Just(Literal::LTop),
    ]
}

fn side_formulas() -> impl Strategy<Value = Vec<Formula>> {
    prop::collection::vec(formula(3), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_round_trips(f in formula(7)) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f.clone());
        prop_assert_eq!(parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn atoms_have_depth_one(f in formula(5)) {
        fn oracle_depth(f: &Formula) -> usize {
            match f {
                Formula::Var(_) | Formula::Bot => 1,
                Formula::Conj(a, b) | Formula::Disj(a, b) | Formula::Impl(a, b) => 1 + oracle_depth(a).max(oracle_depth(b)),
            }
        }
        prop_assert_eq!(f.depth(), oracle_depth(&f));
    }

    #[test]
    fn eval_matches_oracle(f in formula(5), v in valuation()) {
        prop_assert_eq!(eval(&v, &f), truth(&assignment_of(&v), &f));
    }

    #[test]
    fn valuation_text_round_trips(v in valuation()) {
        prop_assert_eq!(v.to_string().parse::<Valuation>().unwrap(), v);
    }

    #[test]
    fn models_matches_oracle(ctx in prop::collection::vec(formula(3), 0..3), f in formula(3)) {
        let verdict = models(&ctx, &f).unwrap();
        prop_assert_eq!(verdict.is_entailed(), oracle_entails(&ctx, &f));
    }

    #[test]
    fn nnf_and_cnf_preserve_truth(f in formula(5), v in valuation()) {
        let pos = make_nnf(&f, Polarity::Pos);
        prop_assert_eq!(eval(&v, &nnf_to_formula(&pos)), eval(&v, &f));
        prop_assert_eq!(eval(&v, &nnf_to_formula(&make_nnf(&f, Polarity::Neg))), !eval(&v, &f));
        prop_assert_eq!(eval(&v, &cnf_to_formula(&make_cnf(&pos))), eval(&v, &f));
    }

    #[test]
    fn normal_form_lemmas_check(f in formula(4)) {
        let (nnf_lemma, neg_lemma) = (nnf_impl_prov(&f, Polarity::Pos).unwrap(), nnf_impl_prov(&f, Polarity::Neg).unwrap());
        let pos = make_nnf(&f, Polarity::Pos);
        prop_assert_eq!(check_nc(&nnf_lemma).unwrap(), (vec![], Formula::imp(nnf_to_formula(&pos), f.clone())));
        let neg = nnf_to_formula(&make_nnf(&f, Polarity::Neg));
        prop_assert_eq!(check_nc(&neg_lemma).unwrap(), (vec![], Formula::imp(neg, Formula::neg(f.clone()))));
        let cnf_lemma = cnf_impl_prov(&pos).unwrap();
        prop_assert_eq!(
            check_nc(&cnf_lemma).unwrap(),
            (vec![], Formula::imp(cnf_to_formula(&make_cnf(&pos)), nnf_to_formula(&pos)))
        );
    }

    #[test]
    fn clause_decision_is_exact(c in prop::collection::vec(literal(), 0..6)) {
        let f = clause_to_formula(&c);
        match clause_decide(&c) {
            ClauseVerdict::Valid(_) => {
                prop_assert!(oracle_valid(&f));
                let cnf = vec![c.clone()];
                let d = cnf_provable(&cnf, &cnf_decide(&cnf)).unwrap();
                prop_assert_eq!(check_nc(&d).unwrap(), (vec![], cnf_to_formula(&cnf)));
            }
            ClauseVerdict::Refuted(v) => {
                prop_assert!(!oracle_valid(&f));
                prop_assert!(!eval(&v, &f));
            }
        }
    }

    #[test]
    fn completeness_matches_oracle(f in formula(4)) {
        match complete(&f).unwrap() {
            CompletenessResult::Proof(d) => {
                prop_assert!(oracle_valid(&f));
                prop_assert_eq!(check_nc(&d).unwrap(), (vec![], f.clone()));
            }
            CompletenessResult::NotValid(v) => {
                prop_assert!(!oracle_valid(&f));
                prop_assert!(!truth(&assignment_of(&v), &f));
                prop_assert_eq!(v.iter().count(), f.variables().len());
            }
        }
    }

    #[test]
    fn sequent_text_round_trips(gamma in side_formulas(), delta in side_formulas()) {
        let s = Sequent::new(gamma, delta);
        prop_assert_eq!(s.to_string().parse::<Sequent>().unwrap(), s);
    }

    #[test]
    fn search_decides_sequents(gamma in side_formulas(), delta in side_formulas()) {
        let s = Sequent::new(gamma.clone(), delta.clone());
        let mut shrinking = true;
        let r = gcf_prove_observed(&s, &mut |c, p| {
            shrinking &= sizes(&p.gamma, &p.delta) < sizes(&c.gamma, &c.delta);
        });
        prop_assert!(shrinking);
        let entailed = sequent_models(&gamma, &delta).unwrap().is_entailed();
        prop_assert_eq!(entailed, oracle_counter(&gamma, &delta).is_none());
        match r {
            DecisionResult::Proof(d) => {
                prop_assert!(entailed);
                prop_assert_eq!(check_gcf(&d).unwrap(), s);
            }
            DecisionResult::Countervaluation(v) => {
                prop_assert!(!entailed);
                let a = assignment_of(&v);
                prop_assert!(gamma.iter().all(|g| truth(&a, g)) && !delta.iter().any(|d| truth(&a, d)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_nc_derivations_are_sound(seed in any::<u64>()) {
        let d = gen_nc(&mut rng(seed), 8);
        let (ctx, a) = check_nc(&d).unwrap();
        prop_assert!(models(&ctx, &a).unwrap().is_entailed());
    }

    #[test]
    fn weakening_into_a_permuted_superset(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = gen_nc(&mut r, 6);
        let extra = random_formula(&mut r, 3, 4);
        // reversed context with a new formula in the middle
        let mut target: Vec<Formula> = d.context.iter().rev().cloned().collect();
        let mid = target.len() / 2;
        target.insert(mid, extra);
        let n = d.context.len();
        let embedding: Vec<usize> = (0..n).map(|i| { let j = n - 1 - i; if j >= mid { j + 1 } else { j } }).collect();
        let w = nc_weaken(&d, &target, &embedding).unwrap();
        prop_assert_eq!(check_nc(&w).unwrap(), (target, d.formula.clone()));
    }

    #[test]
    fn hilbert_translations_preserve_conclusions(seed in any::<u64>()) {
        let d = gen_nc(&mut rng(seed), 7);
        let c = check_nc(&d).unwrap();
        let h = nc_to_hc(&d).unwrap();
        prop_assert_eq!(check_hc(&h).unwrap(), c.clone());
        prop_assert_eq!(check_nc(&hc_to_nc(&h).unwrap()).unwrap(), c);
    }

    #[test]
    fn deduction_discharges_the_head(seed in any::<u64>()) {
        let h = gen_hc(&mut rng(seed));
        let (ctx, a) = check_hc(&h).unwrap();
        if ctx.is_empty() {
            prop_assert!(matches!(hc_deduction(&h), Err(propkit::ProofError::Precondition(_))));
            return Ok(());
        }
        let d = hc_deduction(&h).unwrap();
        prop_assert_eq!(check_hc(&d).unwrap(), (ctx[1..].to_vec(), Formula::imp(ctx[0].clone(), a)));
    }

    #[test]
    fn sequent_translations_preserve_conclusions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = gen_nc(&mut r, 7);
        let (ctx, a) = check_nc(&d).unwrap();
        prop_assert_eq!(check_gc(&nc_to_g(&d).unwrap()).unwrap(), Sequent::new(ctx, vec![a]));

        let g = gen_gc(&mut r);
        let s = check_gc(&g).unwrap();
        prop_assert_eq!(check_nc(&g_to_nc(&g).unwrap()).unwrap(), (s.gamma.clone(), big_or(&s.delta)));
        let mut refuting = s.gamma.clone();
        refuting.extend(neg_list(&s.delta));
        prop_assert_eq!(check_nc(&g_to_nc_neg(&g).unwrap()).unwrap(), (refuting, Formula::Bot));
    }

    #[test]
    fn gc_weakening_inserts_one_formula(seed in any::<u64>(), left in any::<bool>()) {
        let mut r = rng(seed);
        let g = gen_gc(&mut r);
        let a = random_formula(&mut r, 2, 4);
        let side = if left { Side::Left } else { Side::Right };
        let pos = g.sequent.side(side).len();
        let w = gc_weaken(&g, side, pos, &a).unwrap();
        let mut expected = g.sequent.clone();
        if left { expected.gamma.push(a) } else { expected.delta.push(a) }
        prop_assert_eq!(check_gc(&w).unwrap(), expected);
    }

    #[test]
    fn cut_elimination_keeps_the_endsequent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = gen_gc(&mut r);
        let g = forced_cut(&mut r, &base);
        let s = check_gc(&g).unwrap();
        let cf = cut_elimination(&g).unwrap();
        prop_assert_eq!(check_gcf(&cf).unwrap(), s);
        prop_assert_eq!(cf.cut_count(), 0);
    }

    #[test]
    fn envelopes_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        for d in [
            Derivation::Nc(gen_nc(&mut r, 8)),
            Derivation::Hc(gen_hc(&mut r)),
            Derivation::Gc(gen_gc(&mut r)),
            Derivation::Gcf(gen_gcf(&mut r)),
        ] {
            let json = to_json(&d);
            let back = from_json(&json).unwrap();
            prop_assert_eq!(to_json(&back), json);
            prop_assert_eq!(back, d);
        }
    }

    #[test]
    fn mutations_are_rejected(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = match seed % 4 {
            0 => Derivation::Nc(gen_nc(&mut r, 8)),
            1 => Derivation::Hc(gen_hc(&mut r)),
            2 => Derivation::Gc(gen_gc(&mut r)),
            _ => Derivation::Gcf(gen_gcf(&mut r)),
        };
        let (m, what) = mutate(&mut r, &to_value(&d));
        let accepted = from_json(&m.to_string()).map(|x| x.check().is_ok()).unwrap_or(false);
        prop_assert!(!accepted, "{}", what);
    }
}
