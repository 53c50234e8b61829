//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use flopalg::derived::{
    act, classify_spherical, mutation, reduce, twist, CObject, Category, GroupoidWord, Letter, TwistTarget,
};
use flopalg::fdrep::{
    brute_force_indecomposables, enumerate_indecomposables, gamma_con, hom_dim, hom_table, lambda_con,
    orthogonality_report, truncated_two_cycle, FDAlgebra,
};
use flopalg::nccr::{default_max_degree, lambda_n};
use flopalg::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const NAMES: [&str; 6] = ["Q1", "Q2", "M1", "M2", "S1", "S2"];

fn fields(names: &[&str]) -> Vec<Field> {
    names.iter().map(|s| Field::parse(s).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn dimension_formulas() -> Outcome {
    for f in fields(&["q", "p:2", "p:3", "p:5"]) {
        for k in 1..=6 {
            let l = lambda_con(k, f).map_err(e)?.dim();
            let g = gamma_con(k, f).map_err(e)?.dim();
            ensure(l == 2 + 4 * k && g == k + 5, || format!("k = {k} over {f}: {l}, {g}"))?;
        }
    }
    Ok("k = 1..6 over Q, F2, F3, F5".into())
}

fn hom_table_matches() -> Outcome {
    let expected = [
        [2, 1, 1, 1, 1, 0],
        [1, 2, 1, 1, 0, 1],
        [1, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 0, 1],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 1, 0, 0, 1],
    ];
    let t = hom_table(&lambda_con(1, Field::Rational).map_err(e)?).map_err(e)?;
    ensure(t.labels == NAMES, || format!("labels {:?}", t.labels))?;
    for (r, row) in expected.iter().enumerate() {
        ensure(t.dims[r] == row.to_vec(), || format!("row {} = {:?}", NAMES[r], t.dims[r]))?;
    }
    Ok("36 entries".into())
}

fn families(k: usize, f: Field) -> Result<[FDAlgebra; 2], String> {
    Ok([lambda_con(k, f).map_err(e)?, gamma_con(k, f).map_err(e)?])
}

fn four_bricks() -> Outcome {
    let mut want = vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1]];
    want.sort();
    for k in 1..=4 {
        for a in families(k, Field::Rational)? {
            let mut got: Vec<Vec<usize>> = flopalg::fdrep::bricks(&a).map_err(e)?.into_iter().map(|b| b.dims).collect();
            got.sort();
            ensure(got == want, || format!("{}: {got:?}", a.name))?;
        }
    }
    Ok("both families, k = 1..4".into())
}

fn indecomposable_counts() -> Outcome {
    let mut notes = Vec::new();
    for k in 1..=4 {
        let a = lambda_con(k, Field::Rational).map_err(e)?;
        let n = enumerate_indecomposables(&a).map_err(e)?.len();
        ensure(n == 4 * k + 2, || format!("k = {k}: {n} indecomposables"))?;
        // brute force needs a finite field
        let small = lambda_con(k, Field::prime(2).map_err(e)?).map_err(e)?;
        let knitted = enumerate_indecomposables(&small).map_err(e)?;
        let mut a_dims: Vec<Vec<usize>> =
            knitted.iter().filter(|r| r.total_dim() <= 4).map(|r| r.dims.clone()).collect();
        let mut b_dims: Vec<Vec<usize>> =
            brute_force_indecomposables(&small, 4).map_err(e)?.into_iter().map(|r| r.dims).collect();
        a_dims.sort();
        b_dims.sort();
        ensure(a_dims == b_dims, || format!("k = {k}: knitting {a_dims:?} vs brute force {b_dims:?}"))?;
        notes.push(format!("{n}"));
    }
    Ok(format!("counts {} for k = 1..4; brute force agrees up to dimension 4", notes.join(", ")))
}

fn orthogonality() -> Outcome {
    for k in 1..=4 {
        for a in families(k, Field::Rational)? {
            let r = orthogonality_report(&a).map_err(e)?;
            ensure(r.passed, || format!("{}: counterexample {:?}", a.name, r.counterexample))?;
        }
    }
    Ok("both families, k = 1..4".into())
}

fn resolutions() -> Outcome {
    for f in fields(&["q", "p:3"]) {
        for n in 0..=4 {
            let lam = lambda_n(n, f, default_max_degree(n)).map_err(e)?;
            for i in 1..=2 {
                let c = lam.simple_resolution(i).map_err(e)?;
                let r = lam.verify_resolution(&c, 4 * n + 8).map_err(e)?;
                ensure(r.passed, || format!("n = {n}, S{i} over {f}"))?;
            }
        }
    }
    Ok("n = 0..4, both simples, Q and F3".into())
}

fn massey_prep() -> Outcome {
    let mut count = 0;
    for f in fields(&["q", "p:2", "p:3", "p:5"]) {
        for n in 1..=4 {
            let lam = lambda_n(n, f, default_max_degree(n)).map_err(e)?;
            let r = lam.verify_massey_prep().map_err(e)?;
            let bad: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            ensure(bad.is_empty(), || format!("n = {n} over {f}: {bad:?}"))?;
            for name in ["zeta21∘xi12 = id on P1", "xi21∘zeta12 = -id on P1"] {
                ensure(r.checks.iter().any(|c| c.name == name), || format!("missing check {name}"))?;
            }
            count += r.checks.len();
        }
    }
    Ok(format!("{count} identities over Q, F2, F3, F5"))
}

fn ext_hilbert() -> Outcome {
    for f in fields(&["q", "p:3"]) {
        for n in 1..=4 {
            let lam = lambda_n(n, f, default_max_degree(n)).map_err(e)?;
            let h = lam.ext_hilbert().map_err(e)?;
            ensure(h.coefficients == vec![2, 2, 2, 2], || format!("n = {n} over {f}: {:?}", h.coefficients))?;
        }
    }
    Ok("(2, 2, 2, 2) for n = 1..4, Q and F3".into())
}

fn ginzburg() -> Outcome {
    for k in 1..=5 {
        let a = truncated_two_cycle(k, Field::Rational).map_err(e)?;
        let b = lambda_con(k, Field::Rational).map_err(e)?;
        ensure(a.dim() == b.dim(), || format!("k = {k}: dims differ"))?;
        ensure(
            a.structure_constants().map_err(e)? == b.structure_constants().map_err(e)?,
            || format!("k = {k}: structure constants differ"),
        )?;
    }
    Ok("k = 1..5".into())
}

struct Env {
    c: Category,
}

impl Env {
    fn m(&self, n: &str) -> CObject {
        self.c.module(n).unwrap()
    }

    fn same(&self, x: &CObject, y: &CObject) -> Result<bool, String> {
        self.c.equivalent(x, y).map_err(e)
    }

    fn mu(&self, i: usize, x: &CObject, dir: i8) -> Result<CObject, String> {
        mutation(&self.c, i, x, dir).map_err(e)
    }

    fn word(&self, s: &str, x: &CObject) -> Result<CObject, String> {
        act(&self.c, &GroupoidWord::parse(s).map_err(e)?, x).map_err(e)
    }
}

fn mutation_tests(env: &Env) -> Outcome {
    let pins = [
        (1, "S1", "S1", -1),
        (2, "S2", "S2", -1),
        (1, "S2", "M1", 0),
        (1, "M2", "S2", 0),
        (2, "S1", "M2", 0),
        (2, "M1", "S1", 0),
    ];
    for (i, src, dst, shift) in pins {
        let got = env.mu(i, &env.m(src), 1)?;
        ensure(env.same(&got, &env.m(dst).shift(shift))?, || format!("Phi{i}({src}) != {dst}[{shift}]"))?;
    }
    let y = env.word("Phi1 Phi2 Phi1", &env.m("S1"))?;
    ensure(env.same(&y, &env.m("S2").shift(-1))?, || "Phi1 Phi2 Phi1 (S1) != S2[-1]".into())?;
    for n in NAMES {
        let l = env.word("Phi1 Phi2 Phi1", &env.m(n))?;
        let r = env.word("Phi2 Phi1 Phi2", &env.m(n))?;
        ensure(env.same(&l, &r)?, || format!("braid relation fails on {n}"))?;
    }
    Ok("6 pinned values, Phi1 Phi2 Phi1 (S1), braid relation on 6".into())
}

fn lovely_facts(env: &Env) -> Outcome {
    let c = &env.c;
    for i in 1..=2usize {
        let s = c.named_rep(if i == 1 { "S1" } else { "S2" }).map_err(e)?;
        for n in NAMES {
            let r = c.named_rep(n).map_err(e)?;
            let fwd = c.cohomology(&env.mu(i, &env.m(n), 1)?).map_err(e)?;
            let inv = c.cohomology(&env.mu(i, &env.m(n), -1)?).map_err(e)?;
            ensure(fwd.keys().all(|d| (0..=1).contains(d)), || format!("(1) Phi{i}({n})"))?;
            ensure(inv.keys().all(|d| (-1..=0).contains(d)), || format!("(2) Phi{i}^-1({n})"))?;
            if hom_dim(&c.alg, r, s).map_err(e)? == 0 {
                ensure(fwd.keys().all(|d| *d == 0), || format!("(3) Phi{i}({n})"))?;
            }
            if hom_dim(&c.alg, s, r).map_err(e)? == 0 {
                ensure(inv.keys().all(|d| *d == 0), || format!("(4) Phi{i}^-1({n})"))?;
            }
        }
    }
    Ok("parts (1)-(4), both vertices, 6 indecomposables".into())
}

fn random_word(rng: &mut ChaCha8Rng) -> GroupoidWord {
    let len = rng.gen_range(0..=6);
    let letters = (0..len)
        .map(|_| {
            if rng.gen_ratio(1, 7) {
                Letter::Shift(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                Letter::Phi(rng.gen_range(1..=2), if rng.gen_bool(0.5) { 1 } else { -1 })
            }
        })
        .collect();
    GroupoidWord::from_letters(letters)
}

fn classifier_round_trip(env: &Env) -> Outcome {
    let c = &env.c;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let words: Vec<GroupoidWord> = (0..100).map(|_| random_word(&mut rng)).collect();
    let mut max_ell = 0;
    for start in ["S1", "S2", "M1"] {
        for w in &words {
            let x = act(c, w, &env.m(start)).map_err(e)?;
            let r = reduce(c, &x).map_err(|err| format!("reduce({w} . {start}): {err}"))?;
            for s in r.trace.steps.iter().filter(|s| s.end == "b" || s.end == "t") {
                ensure(s.ell_after < s.ell_before, || format!("{w} . {start}: ell not decreasing"))?;
                max_ell = max_ell.max(s.ell_before);
            }
            ensure(r.labels.len() == 1, || format!("{w} . {start}: terminal {:?}", r.labels))?;
            let terminal = CObject::from_rep_in(c.field, &r.terminal, r.degree);
            let back = act(c, &r.word.inverse(), &terminal).map_err(e)?;
            ensure(env.same(&back, &x)?, || format!("{w} . {start}: recovered word does not invert"))?;
            let k = classify_spherical(c, &x).map_err(e)?;
            let y = act(c, &k.simple_word, &x).map_err(e)?;
            ensure(env.same(&y, &env.m(&k.simple).shift(k.shift))?, || format!("{w} . {start}: classify"))?;
        }
    }
    Ok(format!("300 objects over F5, largest initial length {max_ell}"))
}

fn square_is_twist(env: &Env) -> Outcome {
    let c = &env.c;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut objects: Vec<CObject> = ["S1", "S2", "M1", "M2"].iter().map(|n| env.m(n)).collect();
    for _ in 0..20 {
        let w = random_word(&mut rng);
        objects.push(act(c, &w, &env.m(NAMES[rng.gen_range(0..6)])).map_err(e)?);
    }
    let sq = |i: usize, x: &CObject| -> Result<CObject, String> { env.mu(i, &env.mu(i, x, 1)?, 1) };
    let s1 = env.m("S1");
    let eps: i8 = if env.same(&sq(1, &s1)?, &twist(c, TwistTarget::S1, &s1, 1).map_err(e)?)? { 1 } else { -1 };
    for (i, t) in [(1, TwistTarget::S1), (2, TwistTarget::S2)] {
        for (n, x) in objects.iter().enumerate() {
            let tw = twist(c, t, x, eps).map_err(e)?;
            ensure(env.same(&sq(i, x)?, &tw)?, || format!("Phi{i}^2 != twist on object {n}"))?;
        }
    }
    Ok(format!("epsilon = {eps:+}, 4 bricks + 20 random objects, both vertices"))
}

fn main() {
    let mut results: BTreeMap<usize, bool> = BTreeMap::new();
    let mut run = |n: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match &out {
            Ok(d) => println!("criterion {n:>2} PASS  {name}: {d} ({secs:.2}s)"),
            Err(d) => println!("criterion {n:>2} FAIL  {name}: {d} ({secs:.2}s)"),
        }
        results.insert(n, out.is_ok());
    };
    run(1, "dimension formulas", &dimension_formulas);
    run(2, "hom table", &hom_table_matches);
    run(3, "four bricks", &four_bricks);
    run(4, "indecomposable counts", &indecomposable_counts);
    run(5, "orthogonality", &orthogonality);
    run(6, "resolution exactness", &resolutions);
    run(7, "higher-product identities", &massey_prep);
    run(8, "Ext Hilbert series", &ext_hilbert);
    run(9, "truncated two-cycle", &ginzburg);
    let env = Env {
        c: Category::new(Field::prime(5).unwrap()).unwrap(),
    };
    run(10, "mutation values and braid relation", &|| mutation_tests(&env));
    run(11, "mutation cohomology windows", &|| lovely_facts(&env));
    run(12, "classifier round trip", &|| classifier_round_trip(&env));
    run(13, "square of mutation vs twist", &|| square_is_twist(&env));
    let failed: Vec<usize> = results.iter().filter(|(_, ok)| !**ok).map(|(n, _)| *n).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
