use proptest::prelude::*;

use realize_core::classify::{classify, double_negate_primes, is_negative, Mode};
use realize_core::dialectica::{d_translate, d_types};
use realize_core::eval::{decide_qf, eval_nat, normalize, normalize_traced, EvalConfig};
use realize_core::frontend::{parse_formula_in, parse_term_in};
use realize_core::generate::Generator;
use realize_core::mr::{mr_translate, mr_types};
use realize_core::sequentialize::{decompose_forall_exists, sequential_form};
use realize_core::syntax::{
    alpha_eq, check_formula, erase_dummy_foralls, subst_formula, to_combinators, FiniteType,
    Formula, Substitution, Term,
};
use realize_core::witness::{check_witness, Range, Verdict};

fn formula() -> impl Strategy<Value = Formula> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, depth)| Generator::new(seed).formula(depth))
}

fn exists_free() -> impl Strategy<Value = Formula> {
    (any::<u64>(), 1usize..=6)
        .prop_map(|(seed, depth)| Generator::new(seed).exists_free_formula(depth))
}

fn closed_nat() -> impl Strategy<Value = Term> {
    (any::<u64>(), 1usize..=4).prop_map(|(seed, depth)| Generator::new(seed).closed_nat_term(depth))
}

/// Renames every formula binder to a new name `b0`, `b1`, ...
fn rename_bound(a: &Formula, next: &mut usize) -> Formula {
    match a {
        Formula::Bot | Formula::Eq(..) => a.clone(),
        Formula::And(x, y) => Formula::and(rename_bound(x, next), rename_bound(y, next)),
        Formula::Or(x, y) => Formula::or(rename_bound(x, next), rename_bound(y, next)),
        Formula::Imp(x, y) => Formula::imp(rename_bound(x, next), rename_bound(y, next)),
        Formula::Forall(n, ty, body) | Formula::Exists(n, ty, body) => {
            let fresh = format!("b{next}");
            *next += 1;
            let map = Substitution::from([(n.clone(), Term::var(fresh.clone(), ty.clone()))]);
            let body = rename_bound(&subst_formula(body, &map), next);
            if matches!(a, Formula::Forall(..)) {
                Formula::forall(fresh, ty.clone(), body)
            } else {
                Formula::exists(fresh, ty.clone(), body)
            }
        }
    }
}

fn renamed(a: &Formula) -> Formula {
    rename_bound(a, &mut 0)
}

/// Counts nodes of the given kinds.
fn count(a: &Formula, pred: &dyn Fn(&Formula) -> bool) -> usize {
    usize::from(pred(a))
        + a.children()
            .into_iter()
            .map(|c| count(c, pred))
            .sum::<usize>()
}

fn in_and_or_exists_fragment(a: &Formula) -> bool {
    match a {
        Formula::Bot | Formula::Eq(..) => true,
        Formula::And(x, y) | Formula::Or(x, y) => {
            in_and_or_exists_fragment(x) && in_and_or_exists_fragment(y)
        }
        Formula::Exists(_, _, body) => in_and_or_exists_fragment(body),
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(a in formula()) {
        let text = a.to_string();
        let back = parse_formula_in(&text, &[]).unwrap();
        prop_assert!(alpha_eq(&back, &a), "{} reparsed as {}", text, back);
    }

    #[test]
    fn term_print_then_parse_is_identity(t in closed_nat()) {
        let back = parse_term_in(&t.to_string(), &[]).unwrap();
        prop_assert!(alpha_eq(&back, &t));
    }

    #[test]
    fn renaming_preserves_alpha_equivalence(a in formula()) {
        prop_assert!(alpha_eq(&renamed(&a), &a));
    }

    #[test]
    fn classification_invariants(a in formula()) {
        for mode in [Mode::Strict, Mode::Liberal] {
            let r = classify(&a, mode);
            prop_assert!(!r.quantifier_free || r.purely_universal);
            prop_assert!(!r.exists_free || r.in_gamma1);
            if mode == Mode::Liberal {
                prop_assert!(!r.in_gamma2 || r.in_gamma1, "{}", a);
            }
            prop_assert_eq!(&r, &classify(&a, mode));
            let again = classify(&renamed(&a), mode);
            prop_assert_eq!(
                (r.quantifier_free, r.exists_free, r.purely_universal, r.in_gamma1, r.in_gamma2, r.negative),
                (again.quantifier_free, again.exists_free, again.purely_universal, again.in_gamma1, again.in_gamma2, again.negative)
            );
            for (flag, w) in &r.witnesses {
                prop_assert!(!r.flag(*flag));
                prop_assert_eq!(a.at_path(&w.path), Some(&w.subformula));
            }
        }
    }

    #[test]
    fn double_negation_is_negative(a in exists_free()) {
        let n = double_negate_primes(&a).unwrap();
        prop_assert!(is_negative(&n));
        prop_assert!(classify(&n, Mode::Strict).negative);
    }

    #[test]
    fn monotone_under_exists_free_conjunct(a in formula(), b in exists_free()) {
        let before = classify(&a, Mode::Strict).in_gamma1;
        let after = classify(&Formula::and(a, b), Mode::Strict).in_gamma1;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn mr_translation_is_well_typed(a in formula()) {
        let r = mr_translate(&a);
        prop_assert_eq!(r.realizers.types(), mr_types(&a));
        prop_assert!(r.realizers.has_distinct_names());
        prop_assert!(r.realizers.is_fresh_for(&a.free_names()));
        let mut ctx: Vec<_> = a.free_vars().into_iter().collect();
        ctx.extend_from_slice(r.realizers.vars());
        prop_assert!(check_formula(&r.formula, &ctx).is_ok(), "{}", r.formula);
        let allowed: std::collections::BTreeSet<_> =
            a.free_names().into_iter().chain(r.realizers.names().map(String::from)).collect();
        prop_assert!(r.formula.free_names().is_subset(&allowed));
    }

    #[test]
    fn mr_fixes_exists_free_formulas(a in exists_free()) {
        let r = mr_translate(&a);
        prop_assert!(r.realizers.is_empty());
        // dummy quantifiers are ignored on both sides
        prop_assert!(alpha_eq(&erase_dummy_foralls(&r.formula), &erase_dummy_foralls(&a)));
        prop_assert_eq!(r.formula, a);
    }

    #[test]
    fn mr_is_stable_under_renaming(a in formula()) {
        let (r, s) = (mr_translate(&a), mr_translate(&renamed(&a)));
        prop_assert_eq!(r.realizers.types(), s.realizers.types());
        let close = |x: &realize_core::mr::MrResult| Formula::exists_block(x.realizers.vars(), x.formula.clone());
        prop_assert!(alpha_eq(&close(&r), &close(&s)));
    }

    #[test]
    fn dialectica_shape(a in formula()) {
        let d = d_translate(&a);
        prop_assert!(d.matrix.is_quantifier_free());
        let (e, u) = d_types(&a);
        prop_assert_eq!(d.exists_tuple.types(), e);
        prop_assert_eq!(d.forall_tuple.types(), u);
        let mut ctx: Vec<_> = a.free_vars().into_iter().collect();
        ctx.extend_from_slice(d.exists_tuple.vars());
        ctx.extend_from_slice(d.forall_tuple.vars());
        prop_assert!(check_formula(&d.matrix, &ctx).is_ok(), "{}", d.matrix);
        let mut names: Vec<_> = d.exists_tuple.names().chain(d.forall_tuple.names()).collect();
        let total = names.len();
        names.sort();
        names.dedup();
        prop_assert_eq!(names.len(), total);
        prop_assert!(d.exists_tuple.is_fresh_for(&a.free_names()));
        prop_assert!(d.forall_tuple.is_fresh_for(&a.free_names()));
    }

    #[test]
    fn dialectica_tuple_sizes(a in formula()) {
        let d = d_translate(&a);
        let ors = count(&a, &|f| matches!(f, Formula::Or(..)));
        let quants = count(&a, &|f| matches!(f, Formula::Forall(..) | Formula::Exists(..)));
        prop_assert_eq!(d.exists_tuple.len() + d.forall_tuple.len(), ors + quants);
    }

    #[test]
    fn dialectica_is_stable_under_renaming(a in formula()) {
        let (d, e) = (d_translate(&a), d_translate(&renamed(&a)));
        prop_assert!(alpha_eq(&d.to_formula(), &e.to_formula()));
    }

    #[test]
    fn dialectica_matrix_is_a_fixpoint(a in formula()) {
        let d = d_translate(&a);
        if !d.matrix.has_disjunction() {
            let again = d_translate(&d.matrix);
            prop_assert!(again.exists_tuple.is_empty() && again.forall_tuple.is_empty());
            prop_assert_eq!(again.matrix, d.matrix);
        }
    }

    #[test]
    fn sequential_form_shape(seed in any::<u64>(), depth in 1usize..=4) {
        let mut g = Generator::new(seed);
        let body = g.formula(depth);
        let rho = [FiniteType::Nat, FiniteType::one()][(seed % 2) as usize].clone();
        let tau = [FiniteType::Nat, FiniteType::one()][((seed >> 1) % 2) as usize].clone();
        let s = Formula::forall("x", rho.clone(), Formula::exists("y", tau.clone(), body));
        let seq = sequential_form(&s).unwrap();
        let f = seq.formula();
        prop_assert!(check_formula(&f, &[]).is_ok(), "{}", f);
        let Formula::Forall(_, xs_ty, rest) = &f else { panic!("shape") };
        let Formula::Exists(_, ys_ty, rest) = rest.as_ref() else { panic!("shape") };
        prop_assert!(matches!(rest.as_ref(), Formula::Forall(_, FiniteType::Nat, _)));
        prop_assert_eq!(xs_ty, &FiniteType::arrow(FiniteType::Nat, rho));
        prop_assert_eq!(ys_ty, &FiniteType::arrow(FiniteType::Nat, tau));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursor_matches_loop(n in 0u64..=8, base in 0u64..=5, c in 0u64..=4) {
        let step = Term::lam("k", FiniteType::Nat, Term::lam("r", FiniteType::Nat,
            Term::add(Term::nat_var("r"), Term::numeral(c))));
        let t = Term::apps(Term::Rec(FiniteType::Nat), [Term::numeral(n), Term::numeral(base), step]);
        let mut expected = base;
        for _ in 0..n {
            expected += c;
        }
        prop_assert_eq!(eval_nat(&t, EvalConfig::default()).unwrap(), expected);
    }

    #[test]
    fn combinators_agree_with_lambdas(t in closed_nat()) {
        let cfg = EvalConfig::default();
        if let Ok(v) = eval_nat(&t, cfg) {
            let c = to_combinators(&t).unwrap();
            prop_assert!(!c.has_lambda());
            prop_assert_eq!(eval_nat(&c, cfg).unwrap(), v);
        }
    }

    #[test]
    fn normalization_is_deterministic_and_typed(t in closed_nat()) {
        let cfg = EvalConfig::default().traced();
        if let Ok(run) = normalize_traced(&t, cfg) {
            prop_assert_eq!(normalize(&t, cfg).unwrap(), run.term.clone());
            for step in &run.trace {
                prop_assert_eq!(step.type_of().unwrap(), FiniteType::Nat);
            }
            prop_assert!(run.term.as_numeral().is_some());
        }
    }

    #[test]
    fn sequential_instances_match_the_matrix(seed in any::<u64>(), c in 0u64..=10, n in 0u64..=10) {
        // quantifier-free matrices over x:0 and y:0
        let x = Term::nat_var("x");
        let y = Term::nat_var("y");
        let mut g = Generator::new(seed);
        let extra = g.closed_nat_term(2);
        let matrices = [
            Formula::eq(y.clone(), Term::add(x.clone(), x.clone())),
            Formula::imp(Formula::eq(x.clone(), extra.clone()), Formula::eq(y.clone(), Term::Zero)),
            Formula::or(Formula::eq(Term::succ(x.clone()), y.clone()), Formula::not(Formula::eq(x.clone(), extra))),
        ];
        let a = matrices[(seed % 3) as usize].clone();
        let s = Formula::forall("x", FiniteType::Nat, Formula::exists("y", FiniteType::Nat, a.clone()));
        let seq = sequential_form(&s).unwrap();
        let ys = Term::var("Q", FiniteType::one());
        let xs = Term::lam("m", FiniteType::Nat, Term::numeral(c));
        let got = seq.instance(&xs, &ys, &Term::numeral(n));
        let want = subst_formula(&a, &Substitution::from([
            ("x".to_string(), Term::numeral(c)),
            ("y".to_string(), Term::app(ys.clone(), Term::numeral(n))),
        ]));
        prop_assert!(alpha_eq(&got, &want), "{} vs {}", got, want);
    }

    #[test]
    fn witness_passes_on_subranges(lo in 0u64..10, len in 0u64..10, a in 0u64..10, b in 0u64..10) {
        let s = parse_formula_in("!x:0. ?y:0. y = x + x", &[]).unwrap();
        let t = parse_term_in("\\x:0. x * 2", &[]).unwrap();
        let cfg = EvalConfig::default();
        let outer = Range::new(lo, lo + len).unwrap();
        let r = check_witness(&s, &t, outer, cfg).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass);
        let (a, b) = (lo + a.min(len), lo + b.min(len));
        let inner = Range::new(a.min(b), a.max(b)).unwrap();
        prop_assert!(outer.contains_range(inner));
        prop_assert_eq!(check_witness(&s, &t, inner, cfg).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn witness_failures_redecide_false(k in 0u64..5, hi in 0u64..15) {
        let s = parse_formula_in("!x:0. ?y:0. y = x + x", &[]).unwrap();
        let t = Term::lam("x", FiniteType::Nat, Term::add(Term::nat_var("x"), Term::numeral(k)));
        let cfg = EvalConfig::default();
        let r = check_witness(&s, &t, Range::new(0, hi).unwrap(), cfg).unwrap();
        prop_assert_eq!(r.verdict == Verdict::Pass, r.failures.is_empty());
        for f in &r.failures {
            prop_assert!(!decide_qf(&f.instance, cfg).unwrap());
            prop_assert!(f.inputs[0].1 != k);
        }
        prop_assert_eq!(r.failures.len() as u64, (0..=hi).filter(|x| *x != k).count() as u64);
    }
}

#[test]
fn dialectica_adds_one_nat_tag_per_disjunction() {
    // holds literally when no ∀ or → sits above a disjunction
    let mut checked = 0;
    for seed in 0..3000u64 {
        let a = Generator::new(seed).formula(5);
        if !in_and_or_exists_fragment(&a) {
            continue;
        }
        checked += 1;
        let d = d_translate(&a);
        let ors = count(&a, &|f| matches!(f, Formula::Or(..)));
        let exists = count(&a, &|f| matches!(f, Formula::Exists(..)));
        let nat_tags = d.exists_tuple.types().iter().filter(|t| t.is_nat()).count();
        let nat_exists = {
            let mut n = 0;
            let mut stack = vec![&a];
            while let Some(f) = stack.pop() {
                if let Formula::Exists(_, ty, _) = f {
                    n += usize::from(ty.is_nat());
                }
                stack.extend(f.children());
            }
            n
        };
        assert_eq!(d.exists_tuple.len(), ors + exists, "{a}");
        assert_eq!(nat_tags, ors + nat_exists, "{a}");
    }
    assert!(checked > 50, "only {checked} formulas in the fragment");
}

#[test]
fn decomposition_round_trips() {
    let s = parse_formula_in("!x:1. ?y:1. (!n:0. y n = x n)", &[]).unwrap();
    assert_eq!(decompose_forall_exists(&s).unwrap().to_formula(), s);
}
