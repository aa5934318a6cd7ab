mod common;

use proptest::prelude::*;

use common::*;
use qqkit::algebra::{Gen, Monomial, Subst};
use qqkit::character::Character;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn s_reflection(z in s_argument()) {
        check_s_reflection(&z)?;
    }

    #[test]
    fn s_inversion(z in s_argument()) {
        check_s_inversion(&z)?;
    }

    #[test]
    fn s_r_is_a_product_of_shifts(r in 1u32..=3, z in s_argument()) {
        check_s_r_product(r, &z)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in coefficient(), b in coefficient(), c in coefficient()) {
        check_ring(&a, &b, &c)?;
    }

    #[test]
    fn specialize_and_limit_commute(
        shifts in prop::collection::vec((-2i64..=2, -2i64..=2, any::<bool>()), 1..=3),
        c in -3i64..=3,
        d in prop_oneof![-5i64..=-4, 4i64..=5],
    ) {
        check_specialize_limit(&shifts, c, d)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn character_json_round_trip((quiver, w, kr) in characters()) {
        check_json_round_trip(&sample_character(&quiver, &w, kr))?;
    }
}

#[test]
fn a1_kr_limits_are_binomials() {
    check_a1_binomial_limits(6).unwrap();
}

fn swap_q(ch: &Character) -> Character {
    let mut sw = Subst::new();
    sw.insert(Gen::Q1, Monomial::q2());
    sw.insert(Gen::Q2, Monomial::q1());
    let mut out = Character::new(ch.meta.clone());
    for (ym, t) in &ch.terms {
        out.add_term(ym.substitute(&sw), t.coeff.specialize(&sw).unwrap(), t.qdeg);
    }
    out
}

#[test]
fn simply_laced_kr_is_symmetric_in_q1_q2() {
    use qqkit::algebra::LimitGen;
    use qqkit::character::{expand, WeightConfig};
    use qqkit::higgs::{higgs, kr_params, param_subst, KRSpec};
    use qqkit::quiver::Quiver;
    let cases: [(&str, &[u32], &str); 5] =
        [("A1", &[2], "1"), ("A1", &[3], "1"), ("A1", &[4], "1"), ("A2", &[2, 0], "1"), ("A2", &[0, 2], "2")];
    for (name, w, node) in cases {
        let q = Quiver::builtin(name).unwrap();
        let ch = expand(&q, &WeightConfig::generic(&q, w).unwrap(), None).unwrap();
        let kr = |m| {
            let spec = KRSpec { node: node.into(), k: w.iter().sum(), m, base: Monomial::sym("x") };
            higgs(&ch, &param_subst(node, &kr_params(&spec, &q).unwrap())).unwrap()
        };
        let a = kr(LimitGen::Q1);
        let b = kr(LimitGen::Q2);
        assert!(swap_q(&a).same_terms(&b), "{name} {w:?}: {:?}", swap_q(&a).first_difference(&b));
    }
}

#[test]
fn finite_type_flow_shape() {
    for (name, w) in [("A1", vec![3]), ("A2", vec![1, 1]), ("A2", vec![2, 0]), ("BC2", vec![2, 0]), ("BC2", vec![1, 1])]
    {
        let ch = sample_character(name, &w, false);
        let lowest: Vec<_> = ch.terms.keys().filter(|ym| !ym.has_numerator()).collect();
        assert_eq!(lowest.len(), 1, "{name} {w:?}");
        for ym in ch.terms.keys() {
            if ym != lowest[0] {
                assert!(ch.edges.iter().any(|e| &e.src == ym), "{name} {w:?}: {ym} has no outgoing arrow");
            }
        }
    }
}
