use std::collections::BTreeMap;
use std::sync::OnceLock;

use flopalg::derived::{
    act, classify_spherical, homological_length, mutation, reduce, twist, CObject, Category, DerivedError,
    GroupoidWord, Letter, TwistTarget,
};
use flopalg::fdrep::hom_dim;
use flopalg::Field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 6] = ["Q1", "Q2", "M1", "M2", "S1", "S2"];

fn cat() -> &'static Category {
    static C: OnceLock<Category> = OnceLock::new();
    C.get_or_init(|| Category::new(Field::prime(5).unwrap()).unwrap())
}

fn m(name: &str) -> CObject {
    cat().module(name).unwrap()
}

fn labels(x: &CObject) -> BTreeMap<i64, Vec<String>> {
    cat().cohomology_labels(x).unwrap()
}

fn single(n: i64, s: &str) -> BTreeMap<i64, Vec<String>> {
    BTreeMap::from([(n, vec![s.to_string()])])
}

fn same(x: &CObject, y: &CObject) -> bool {
    cat().equivalent(x, y).unwrap()
}

fn word(s: &str) -> GroupoidWord {
    GroupoidWord::parse(s).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> GroupoidWord {
    let letters = (0..len)
        .map(|_| Letter::Phi(rng.gen_range(1..=2), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    GroupoidWord::from_letters(letters)
}

fn random_object(rng: &mut ChaCha8Rng) -> CObject {
    let start = m(NAMES[rng.gen_range(0..6)]);
    let len = rng.gen_range(0..=3);
    act(cat(), &random_word(rng, len), &start).unwrap()
}

#[test]
fn rhom_against_simples() {
    let c = cat();
    assert_eq!(c.rhom_simple(1, &m("S1")).unwrap(), BTreeMap::from([(0, 1), (3, 1)]));
    assert_eq!(c.rhom_simple(1, &m("S2")).unwrap(), BTreeMap::from([(1, 1), (2, 1)]));
    assert!(c.rhom_simple(1, &CObject::zero(c.field)).unwrap().is_empty());
}

#[test]
fn simple_cohomology_and_cone() {
    assert_eq!(labels(&m("S1")), single(0, "S1"));
    // the extension of S1 by S2 along the arrow a is the cone of S1[-1] -> S2
    let cone = m("S1").direct_sum(&m("S2"));
    assert_ne!(labels(&cone), single(0, "M1"));
    assert_eq!(labels(&m("M1")), single(0, "M1"));
}

#[test]
fn twist_values() {
    let c = cat();
    let t = twist(c, TwistTarget::S1, &m("S1"), 1).unwrap();
    assert_eq!(labels(&t), single(2, "S1"));
    let t = twist(c, TwistTarget::S1, &m("S2"), 1).unwrap();
    let total: usize = c.cohomology(&t).unwrap().values().map(|r| r.total_dim()).sum();
    assert_eq!(total, 3);
    assert_eq!(homological_length(c, &t).unwrap(), 1);
    let t = twist(c, TwistTarget::M1, &m("M1"), 1).unwrap();
    assert_eq!(labels(&t), single(2, "M1"));
}

#[test]
fn twist_round_trips() {
    let c = cat();
    for target in [TwistTarget::S1, TwistTarget::S2, TwistTarget::M1] {
        for n in NAMES {
            let x = m(n);
            let y = twist(c, target, &twist(c, target, &x, 1).unwrap(), -1).unwrap();
            assert!(same(&x, &y), "{target} on {n}");
        }
    }
}

#[test]
fn pinned_mutation_values() {
    let c = cat();
    assert_eq!(labels(&mutation(c, 1, &m("S1"), 1).unwrap()), single(1, "S1"));
    assert_eq!(labels(&mutation(c, 1, &m("M2"), 1).unwrap()), single(0, "S2"));
    assert_eq!(labels(&act(c, &word("Phi1 Phi2 Phi1"), &m("S1")).unwrap()), single(1, "S2"));
    assert_eq!(labels(&act(c, &word("Phi1 Phi2 Phi1"), &m("S2")).unwrap()), single(1, "S1"));
    let x = m("Q1");
    assert!(same(&act(c, &GroupoidWord::new(), &x).unwrap(), &x));
}

#[test]
fn mutation_round_trips() {
    let c = cat();
    for i in 1..=2 {
        for n in NAMES {
            let x = m(n);
            let there = mutation(c, i, &x, 1).unwrap();
            assert!(same(&mutation(c, i, &there, -1).unwrap(), &x));
            let back = mutation(c, i, &x, -1).unwrap();
            assert!(same(&mutation(c, i, &back, 1).unwrap(), &x));
        }
    }
}

#[test]
fn mutation_cohomology_window() {
    let c = cat();
    for i in 1..=2usize {
        let s = c.named_rep(if i == 1 { "S1" } else { "S2" }).unwrap();
        for n in NAMES {
            let r = c.named_rep(n).unwrap();
            let fwd = c.cohomology(&mutation(c, i, &m(n), 1).unwrap()).unwrap();
            assert!(fwd.keys().all(|d| *d == 0 || *d == 1), "Phi{i}({n})");
            if hom_dim(&c.alg, r, s).unwrap() == 0 {
                assert!(fwd.keys().all(|d| *d == 0));
            }
            let inv = c.cohomology(&mutation(c, i, &m(n), -1).unwrap()).unwrap();
            assert!(inv.keys().all(|d| *d == 0 || *d == -1), "Phi{i}^-1({n})");
            if hom_dim(&c.alg, s, r).unwrap() == 0 {
                assert!(inv.keys().all(|d| *d == 0));
            }
        }
    }
}

#[test]
fn braid_relation_on_indecomposables() {
    let c = cat();
    for n in NAMES {
        let x = m(n);
        let l = act(c, &word("Phi1 Phi2 Phi1"), &x).unwrap();
        let r = act(c, &word("Phi2 Phi1 Phi2"), &x).unwrap();
        assert!(same(&l, &r), "{n}");
    }
}

#[test]
fn braid_relation_on_random_objects() {
    let c = cat();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let x = random_object(&mut rng);
        let l = act(c, &word("Phi1 Phi2 Phi1"), &x).unwrap();
        let r = act(c, &word("Phi2 Phi1 Phi2"), &x).unwrap();
        assert!(same(&l, &r));
    }
}

/// Φ_i² agrees with the twist in one fixed direction, fixed on the simple itself.
#[test]
fn square_of_mutation_is_twist() {
    let c = cat();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let extra: Vec<CObject> = (0..20).map(|_| random_object(&mut rng)).collect();
    for (i, target) in [(1, TwistTarget::S1), (2, TwistTarget::S2)] {
        let s = m(if i == 1 { "S1" } else { "S2" });
        let sq = |x: &CObject| mutation(c, i, &mutation(c, i, x, 1).unwrap(), 1).unwrap();
        let eps = if same(&sq(&s), &twist(c, target, &s, 1).unwrap()) { 1 } else { -1 };
        assert!(same(&sq(&s), &s.shift(-2)));
        for x in NAMES.iter().map(|n| m(n)).chain(extra.iter().cloned()) {
            assert!(same(&sq(&x), &twist(c, target, &x, eps).unwrap()));
        }
    }
}

#[test]
fn homological_length_examples() {
    let c = cat();
    assert_eq!(homological_length(c, &m("S1")).unwrap(), 0);
    assert_eq!(homological_length(c, &m("S1").direct_sum(&m("S2").shift(3))).unwrap(), 3);
    assert!(matches!(homological_length(c, &CObject::zero(c.field)), Err(DerivedError::ZeroObject)));
}

#[test]
fn reduce_examples() {
    let c = cat();
    let r = reduce(c, &m("S1")).unwrap();
    assert!(r.word.is_empty());
    assert_eq!(r.labels, vec!["S1"]);
    let r = reduce(c, &m("M2")).unwrap();
    assert_eq!(r.word.letters.last(), Some(&Letter::Phi(1, 1)));
    assert_eq!(r.labels, vec!["S2"]);
    let r = reduce(c, &m("S2").shift(2)).unwrap();
    assert_eq!((r.degree, r.labels.clone()), (0, vec!["S2".to_string()]));
    assert!(same(&act(c, &r.word, &m("S2").shift(2)).unwrap(), &m("S2")));
}

#[test]
fn reduce_rejects_negative_self_ext() {
    let c = cat();
    // Hom(S1, S2[2][-1]) = Ext^1(S1, S2) is nonzero
    let x = m("S1").direct_sum(&m("S2").shift(2));
    assert!(matches!(reduce(c, &x), Err(DerivedError::NegativeExt(_))));
}

#[test]
fn classify_examples() {
    let c = cat();
    let k = classify_spherical(c, &m("M1")).unwrap();
    assert_eq!(k.normal_form, "M1");
    assert_eq!(k.simple, "S1");
    assert_eq!(k.simple_word, word("Phi2"));
    let k = classify_spherical(c, &m("S2").shift(1)).unwrap();
    assert_eq!((k.simple.as_str(), k.shift), ("S2", 1));
    let bad = m("S1").direct_sum(&m("S2"));
    assert!(matches!(classify_spherical(c, &bad), Err(DerivedError::NotBrick(_))));
}

fn pure_braid_word() -> impl Strategy<Value = GroupoidWord> {
    prop::collection::vec((1u8..=2, prop::bool::ANY), 0..=3).prop_map(|v| {
        let mut w = GroupoidWord::new();
        for (i, pos) in v {
            let e = if pos { 1 } else { -1 };
            w.push(Letter::Phi(i, e));
            w.push(Letter::Phi(i, e));
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_of_braid_images_reaches_a_brick(w in pure_braid_word(), start in 0usize..2) {
        let c = cat();
        let s = m(if start == 0 { "S1" } else { "S2" });
        let x = act(c, &w, &s).unwrap();
        let r = reduce(c, &x).unwrap();
        prop_assert_eq!(r.labels.len(), 1);
        prop_assert!(r.trace.steps.iter().filter(|s| s.end == "b" || s.end == "t").all(|s| s.ell_after < s.ell_before));
        let y = act(c, &r.word, &x).unwrap();
        prop_assert!(same(&y, &CObject::from_rep_in(c.field, &r.terminal, r.degree)));
    }

    #[test]
    fn classification_word_is_a_witness(w in pure_braid_word(), name in prop::sample::select(vec!["S1", "S2", "M1", "M2"])) {
        let c = cat();
        let x = act(c, &w, &m(name)).unwrap();
        let k = classify_spherical(c, &x).unwrap();
        let y = act(c, &k.simple_word, &x).unwrap();
        prop_assert!(same(&y, &m(&k.simple).shift(k.shift)));
        prop_assert!(k.simple == "S1" || k.simple == "S2");
    }
}
