//! Strategies and checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qqkit::algebra::{s_eval, s_r_eval, Coefficient, Gen, LimitGen, Monomial, Subst};
use qqkit::character::{expand, Character, WeightConfig};
use qqkit::higgs::{binomial, higgs, kr_params, param_subst, KRSpec};
use qqkit::io::{character_from_json, character_to_json};
use qqkit::quiver::Quiver;

pub fn gens() -> Vec<Gen> {
    vec![Gen::Q1, Gen::Q2, Gen::Mu, Gen::sym("x")]
}

/// Monomials in q1, q2, mu, x with exponents in [-4, 4], avoiding 1 and q^{±1}
/// so that S(z), S(q/z), S(1/z) and S(qz) are all defined.
pub fn s_argument() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-4i64..=4, 4)
        .prop_map(|es| Monomial::from_pairs(gens().into_iter().zip(es)))
        .prop_filter("S has a pole at 1 and q", |z| !z.is_one() && *z != Monomial::q() && *z != Monomial::q().inv())
}

fn small_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i64..=2, 4).prop_map(|es| Monomial::from_pairs(gens().into_iter().zip(es)))
}

/// Sums of one or two terms n * m * S(z).
pub fn coefficient() -> impl Strategy<Value = Coefficient> {
    let z = small_monomial().prop_filter("S has a pole at 1 and q", |z| !z.is_one() && *z != Monomial::q());
    let term = (-3i64..=3, small_monomial(), prop::option::of(z)).prop_map(|(n, m, z)| {
        let mut c = Coefficient::from_int(n).mul(&Coefficient::monomial(m));
        if let Some(z) = z {
            c = c.mul(&s_eval(&z).expect("z avoids the poles"));
        }
        c
    });
    prop::collection::vec(term, 1..=2).prop_map(|ts| ts.iter().fold(Coefficient::zero(), |a, t| a.add(t)))
}

pub fn check_s_reflection(z: &Monomial) -> Result<(), TestCaseError> {
    let a = s_eval(z).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = s_eval(&Monomial::q().div(z)).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(a.to_general() == b.to_general() || a == b, "S({z}) != S(q/{z})");
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn check_s_inversion(z: &Monomial) -> Result<(), TestCaseError> {
    let a = s_eval(&z.inv()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = s_eval(&Monomial::q().mul(z)).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn check_s_r_product(r: u32, z: &Monomial) -> Result<(), TestCaseError> {
    let mut prod = Coefficient::one();
    for s in 0..r as i64 {
        match s_eval(&z.mul(&Monomial::q1().pow(-s))) {
            Ok(c) => prod = prod.mul(&c),
            Err(_) => return Err(TestCaseError::reject("a shifted argument hits a pole")),
        }
    }
    let sr = s_r_eval(r, z).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(sr, prod);
    Ok(())
}

pub fn check_ring(a: &Coefficient, b: &Coefficient, c: &Coefficient) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.sub(a), Coefficient::zero());
    prop_assert_eq!(a.mul(&Coefficient::one()), a.clone());
    Ok(())
}

/// True when some binomial factor vanishes at q1 = 1, so that evaluating
/// there needs the derivative regime.
fn degenerate_at_q1(c: &Coefficient) -> bool {
    match c.as_factored() {
        Some(f) => f.factors().any(|(m, _)| m.without(&Gen::Q1).is_one()),
        None => true,
    }
}

/// Products of S at x2/x1 shifted by q1^a q2^b, specialized at x2 = x1 q1^c q2^d.
/// With |d| > |b| + 1 no factor degenerates, so both orders are defined.
pub fn check_specialize_limit(shifts: &[(i64, i64, bool)], c: i64, d: i64) -> Result<(), TestCaseError> {
    let x1 = Monomial::x("1", 1);
    let x2 = Monomial::x("1", 2);
    let mut coeff = Coefficient::one();
    for &(a, b, flip) in shifts {
        let ratio = if flip { x1.div(&x2) } else { x2.div(&x1) };
        let z = ratio.mul(&Monomial::q1().pow(a)).mul(&Monomial::q2().pow(b));
        coeff = coeff.mul(&s_eval(&z).map_err(|e| TestCaseError::fail(e.to_string()))?);
    }
    let mut sigma = Subst::new();
    sigma.insert(Gen::x("1", 2), x1.mul(&Monomial::q1().pow(c)).mul(&Monomial::q2().pow(d)));
    let Ok(spec) = coeff.specialize(&sigma) else {
        return Err(TestCaseError::reject("pole under the specialization"));
    };
    // A factor that becomes a pure power of q1 under sigma has no value at
    // q1 = 1, even when it cancels against another one after merging.
    let hits_q1 =
        coeff.as_factored().is_some_and(|f| f.factors().any(|(m, _)| m.substitute(&sigma).without(&Gen::Q1).is_one()));
    if hits_q1 || degenerate_at_q1(&spec) || degenerate_at_q1(&coeff) {
        return Err(TestCaseError::reject("needs the derivative regime"));
    }
    let one_way = spec.limit_at_unity(LimitGen::Q1);
    let other = coeff.limit_at_unity(LimitGen::Q1).and_then(|l| l.specialize(&sigma));
    if let (Ok(p), Ok(q)) = (one_way, other) {
        prop_assert_eq!(p, q);
    }
    Ok(())
}

/// The q1 -> 1 limit of the KR coefficient prod S(q1^{1-i-j}) over the
/// pairs (i, j) of a v-subset of 1..w equals binomial(w, v).
pub fn check_a1_binomial_limits(max_w: u32) -> Result<(), String> {
    let q = Quiver::builtin("A1").map_err(|e| e.to_string())?;
    for w in 1..=max_w {
        let wc = WeightConfig::generic(&q, &[w]).map_err(|e| e.to_string())?;
        let ch = expand(&q, &wc, None).map_err(|e| e.to_string())?;
        let spec = KRSpec { node: "1".into(), k: w, m: LimitGen::Q1, base: Monomial::sym("x") };
        let sigma = param_subst("1", &kr_params(&spec, &q).map_err(|e| e.to_string())?);
        let kr = higgs(&ch, &sigma).map_err(|e| e.to_string())?;
        if kr.len() != w as usize + 1 {
            return Err(format!("w = {w}: {} terms", kr.len()));
        }
        for (ym, t) in &kr.terms {
            let v: i64 = ym.entries().map(|(_, _, e)| e).filter(|e| *e < 0).map(|e| -e).sum();
            let lim = t.coeff.limit_at_unity(LimitGen::Q1).map_err(|e| e.to_string())?;
            let want = Coefficient::from_bigint(binomial(w, v as u32));
            if lim != want {
                return Err(format!("w = {w}, v = {v}: limit {lim}, expected {want}"));
            }
        }
    }
    Ok(())
}

pub fn sample_character(quiver: &str, w: &[u32], kr: bool) -> Character {
    let q = Quiver::builtin(quiver).unwrap();
    let wc = WeightConfig::generic(&q, w).unwrap();
    let ch = expand(&q, &wc, None).unwrap();
    if !kr {
        return ch;
    }
    let (node, k) = q.nodes.iter().zip(w).find(|(_, k)| **k > 0).map(|(n, k)| (n.id.clone(), *k)).unwrap();
    let spec = KRSpec { node: node.clone(), k, m: LimitGen::Q1, base: Monomial::sym("x") };
    higgs(&ch, &param_subst(&node, &kr_params(&spec, &q).unwrap())).unwrap()
}

pub fn characters() -> impl Strategy<Value = (String, Vec<u32>, bool)> {
    prop_oneof![
        (1u32..=4, any::<bool>()).prop_map(|(w, kr)| ("A1".to_string(), vec![w], kr)),
        (0u32..=2, 0u32..=2, any::<bool>())
            .prop_filter("nonzero weight", |(a, b, _)| a + b > 0)
            .prop_map(|(a, b, kr)| ("A2".to_string(), vec![a, b], kr && (a == 0 || b == 0))),
        prop_oneof![Just(vec![1, 0]), Just(vec![0, 1]), Just(vec![2, 0]), Just(vec![1, 1])].prop_map(|w| (
            "BC2".to_string(),
            w,
            false
        )),
    ]
}

pub fn check_json_round_trip(ch: &Character) -> Result<(), TestCaseError> {
    let v = character_to_json(ch);
    let back = character_from_json(&v).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(back.same_terms(ch), "{:?}", back.first_difference(ch));
    prop_assert_eq!(&back.edges, &ch.edges);
    prop_assert_eq!(&back.meta, &ch.meta);
    for (ym, t) in &ch.terms {
        let b = &back.terms[ym];
        prop_assert_eq!((b.qdeg, b.depth), (t.qdeg, t.depth));
    }
    prop_assert_eq!(character_to_json(&back), v);
    Ok(())
}

/// Runs `f` on `cases` generated values; returns the number of accepted cases.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let count = std::cell::Cell::new(0u32);
    runner
        .run(&strategy, |v| {
            let r = f(v);
            if r.is_ok() {
                count.set(count.get() + 1);
            }
            r
        })
        .map_err(|e| e.to_string())?;
    Ok(count.get())
}
