use std::collections::BTreeMap;
use std::sync::OnceLock;

use aisemiring::criteria::Lemma;
use aisemiring::enumerate::{enumerate_ai_semirings, EnumerateOptions};
use aisemiring::eval::{self, Evaluator};
use aisemiring::iso;
use aisemiring::json;
use aisemiring::par::Execution;
use aisemiring::term::{Identity, SimpleIdentity, Term, Var, Word};
use aisemiring::FiniteAiSemiring;
use proptest::prelude::*;

fn order3() -> &'static [FiniteAiSemiring] {
    static C: OnceLock<Vec<FiniteAiSemiring>> = OnceLock::new();
    C.get_or_init(|| enumerate_ai_semirings(3, EnumerateOptions::default()).algebras.into_iter().map(|e| e.semiring).collect())
}

fn order4() -> &'static [FiniteAiSemiring] {
    static C: OnceLock<Vec<FiniteAiSemiring>> = OnceLock::new();
    C.get_or_init(|| enumerate_ai_semirings(4, EnumerateOptions::default()).algebras.into_iter().map(|e| e.semiring).collect())
}

fn algebra() -> impl Strategy<Value = FiniteAiSemiring> {
    prop_oneof![
        (0..order3().len()).prop_map(|i| order3()[i].clone()),
        (0..order4().len()).prop_map(|i| order4()[i].clone()),
    ]
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn var() -> impl Strategy<Value = Var> {
    let pool = vec![
        Var::new('x', None),
        Var::new('y', None),
        Var::new('z', None),
        Var::new('x', Some(1)),
        Var::new('x', Some(2)),
        Var::new('x', Some(12)),
    ];
    prop::sample::select(pool)
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(var(), 1..=max_len).prop_map(|v| Word::new(v).unwrap())
}

fn term(max_summands: usize, max_len: usize) -> impl Strategy<Value = Term> {
    prop::collection::vec(word(max_len), 1..=max_summands).prop_map(|ws| Term::new(ws).unwrap())
}

fn simple(letters: &'static str) -> impl Strategy<Value = SimpleIdentity> {
    let v: Vec<Var> = letters.chars().map(|c| Var::new(c, None)).collect();
    let w = move || prop::collection::vec(prop::sample::select(v.clone()), 1..=4).prop_map(|v| Word::new(v).unwrap());
    (prop::collection::vec(w(), 1..=4), w()).prop_map(|(u, q)| SimpleIdentity::new(Term::new(u).unwrap(), q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relabelling_preserves_canonical_key((s, p) in algebra().prop_flat_map(|s| { let n = s.order(); (Just(s), perm(n)) })) {
        let t = s.permuted(&p);
        prop_assert!(t.is_valid());
        prop_assert_eq!(iso::canonical_form(&s), iso::canonical_form(&t));
        let m = iso::find_isomorphism(&s, &t).expect("relabelled copy is isomorphic");
        prop_assert!(m.verify() && m.is_injective() && m.is_surjective());
    }

    #[test]
    fn dual_is_an_involution(s in algebra()) {
        let d = s.dual();
        prop_assert!(d.is_valid());
        prop_assert_eq!(d.dual().mul_table(), s.mul_table());
        prop_assert_eq!(iso::are_isomorphic(&s, &d), iso::find_isomorphism(&s, &d).is_some());
    }

    #[test]
    fn natural_order_is_compatible(s in algebra()) {
        let o = s.natural_order();
        prop_assert!(o.is_partial_order());
        prop_assert!(o.is_compatible_with(&s));
        prop_assert_eq!(s.additive_height() == 1, (0..s.order()).all(|a| a == o.top() || (0..s.order()).all(|b| !o.lt(a, b) || b == o.top())));
    }

    #[test]
    fn products_and_subalgebras_are_lawful(s in algebra(), seed in prop::collection::vec(0usize..3, 1..3)) {
        let t = &order3()[seed[0] % order3().len()];
        let p = s.direct_product(t);
        prop_assert!(p.is_valid());
        prop_assert_eq!(p.order(), s.order() * t.order());
        let (sub, m) = s.generated_subalgebra(&seed.iter().map(|&a| a % s.order()).collect::<Vec<_>>()).unwrap();
        prop_assert!(sub.is_valid());
        prop_assert!(m.verify() && m.is_injective());
        prop_assert!(iso::find_embedding(&sub, &s).is_some());
    }

    #[test]
    fn json_round_trip(s in algebra()) {
        prop_assert_eq!(json::semiring_from_json(&json::semiring_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn terms_reparse_from_display(t in term(4, 5)) {
        let back: Term = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn sum_is_union_and_product_distributes(a in term(3, 3), b in term(3, 3), c in term(2, 2)) {
        prop_assert_eq!(a.sum(&b), b.sum(&a));
        prop_assert_eq!(a.sum(&a), a.clone());
        prop_assert_eq!(a.sum(&b).product(&c), a.product(&c).sum(&b.product(&c)));
        prop_assert_eq!(c.product(&a.sum(&b)), c.product(&a).sum(&c.product(&b)));
        prop_assert_eq!(a.product(&b).reversed(), b.reversed().product(&a.reversed()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(s in algebra(), a in term(3, 3), b in term(3, 3), vals in prop::collection::vec(0usize..4, 7)) {
        let mut asg = BTreeMap::new();
        for (i, x) in a.vars().into_iter().chain(b.vars()).enumerate() {
            asg.insert(x, vals[i % vals.len()] % s.order());
        }
        let ea = eval::eval_term(&s, &a, &asg).unwrap();
        let eb = eval::eval_term(&s, &b, &asg).unwrap();
        prop_assert_eq!(eval::eval_term(&s, &a.sum(&b), &asg).unwrap(), s.add(ea, eb));
        prop_assert_eq!(eval::eval_term(&s, &a.product(&b), &asg).unwrap(), s.mul(ea, eb));
    }

    #[test]
    fn identity_holds_iff_its_normal_form_holds(s in algebra(), l in term(2, 3), r in term(2, 3)) {
        let id = Identity::new(l, r);
        let whole = eval::satisfies(&s, &id).unwrap();
        let parts = id.normalize().iter().all(|si| eval::satisfies_simple(&s, si).unwrap());
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn dual_satisfies_the_reversed_identity(s in algebra(), l in term(2, 3), r in term(2, 3)) {
        let id = Identity::new(l, r);
        prop_assert_eq!(eval::satisfies(&s, &id).unwrap(), eval::satisfies(&s.dual(), &id.reversed()).unwrap());
    }

    #[test]
    fn execution_modes_find_the_same_witness(s in algebra(), l in term(2, 3), r in term(2, 3)) {
        let id = Identity::new(l, r);
        let seq = Evaluator { execution: Execution::Sequential, ..Evaluator::default() };
        let par = Evaluator { execution: Execution::Parallel, ..Evaluator::default() };
        prop_assert_eq!(seq.counterexample(&s, &id).unwrap(), par.counterexample(&s, &id).unwrap());
    }

    #[test]
    fn criteria_agree_with_evaluation(si in simple("xyzw")) {
        for lemma in Lemma::ALL {
            let truth = eval::satisfies_simple(&lemma.semiring(), &si).unwrap();
            prop_assert_eq!(lemma.check(&si).holds, truth, "{} on {}", lemma.name(), si);
        }
    }

    #[test]
    fn criteria_respect_variable_renaming(si in simple("xyz")) {
        let swap = |v: Var| match v.letter() { 'x' => Var::new('y', None), 'y' => Var::new('x', None), _ => v };
        let renamed = SimpleIdentity::new(si.u.rename(&swap), si.q.rename(&swap));
        for lemma in Lemma::ALL {
            prop_assert_eq!(lemma.check(&si).holds, lemma.check(&renamed).holds);
        }
    }
}
