//! Higgsing of weight parameters, classical limits and factorization checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{s_eval, Coefficient, Gen, LimitGen, Monomial, Subst};
use crate::character::{Character, CharacterMeta, HasseEdge, Term, YMonomial};
use crate::error::{QqError, Result};
use crate::quiver::Quiver;

/// Kirillov-Reshetikhin weight: k parameters at one node, spaced by q_m^{d}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRSpec {
    pub node: String,
    pub k: u32,
    pub m: LimitGen,
    pub base: Monomial,
}

/// (x, x s, ..., x s^{k-1}) with s = q_m^{d_node}.
pub fn kr_params(spec: &KRSpec, q: &Quiver) -> Result<Vec<Monomial>> {
    let node = q.node(&spec.node).ok_or_else(|| QqError::Validation(format!("unknown node {}", spec.node)))?;
    let s = Monomial::gen_pow(spec.m.gen(), node.d as i64);
    Ok((0..spec.k as i64).map(|a| spec.base.mul(&s.pow(a))).collect())
}

/// The substitution x(node, a) -> params[a-1].
pub fn param_subst(node: &str, params: &[Monomial]) -> Subst {
    params.iter().enumerate().map(|(a, p)| (Gen::x(node, a as u32 + 1), p.clone())).collect()
}

/// Outcome of a specialization: the surviving character and the generic
/// monomials whose coefficients vanished.
#[derive(Clone, Debug)]
pub struct Higgsed {
    pub character: Character,
    pub dropped: Vec<YMonomial>,
}

pub fn higgs(ch: &Character, sigma: &Subst) -> Result<Character> {
    higgs_split(ch, sigma).map(|h| h.character)
}

pub fn higgs_split(ch: &Character, sigma: &Subst) -> Result<Higgsed> {
    let mut out = Character::new(ch.meta.clone());
    let mut dropped = Vec::new();
    let mut image: BTreeMap<&YMonomial, YMonomial> = BTreeMap::new();
    for (ym, t) in &ch.terms {
        let c = t.coeff.specialize(sigma).map_err(|e| match e {
            QqError::Pole(m) => QqError::Pole(format!("{m} in the coefficient of {ym}")),
            other => other,
        })?;
        if c.is_zero() {
            dropped.push(ym.clone());
            continue;
        }
        let new_ym = ym.substitute(sigma);
        if out.terms.contains_key(&new_ym) {
            return Err(QqError::YCollision(format!("{ym} collides on {new_ym}")));
        }
        out.terms.insert(new_ym.clone(), Term { coeff: c, ..t.clone() });
        image.insert(ym, new_ym);
    }
    for e in &ch.edges {
        if let (Some(s), Some(d)) = (image.get(&e.src), image.get(&e.dst)) {
            out.edges.insert(HasseEdge {
                src: s.clone(),
                dst: d.clone(),
                node: e.node.clone(),
                arg: e.arg.substitute(sigma),
            });
        }
    }
    Ok(Higgsed { character: out, dropped })
}

/// Relabels a set of generic monomials under `sigma` as a character with
/// unit coefficients; equal images merge.
pub fn relabel(yms: &[YMonomial], sigma: &Subst) -> ClassicalCharacter {
    let mut cc = ClassicalCharacter::default();
    for ym in yms {
        cc.add(ym.substitute(sigma), BigInt::one());
    }
    cc
}

/// A q-character: Y-monomials with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalCharacter {
    pub terms: BTreeMap<YMonomial, BigInt>,
    pub which: Option<LimitGen>,
}

impl ClassicalCharacter {
    pub fn add(&mut self, ym: YMonomial, c: BigInt) {
        let v = self.terms.entry(ym.clone()).or_insert_with(BigInt::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&ym);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &ClassicalCharacter) -> ClassicalCharacter {
        let mut out = ClassicalCharacter { which: self.which.or(other.which), ..Default::default() };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ClassicalCharacter {
        let mut out = ClassicalCharacter::default();
        out.add(YMonomial::one(), BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out.which = self.which;
        out
    }

    /// Same terms; the limit tag is ignored.
    pub fn same_terms(&self, other: &ClassicalCharacter) -> bool {
        self.terms == other.terms
    }

    pub fn latex(&self, show_node: bool) -> String {
        let mut out = String::new();
        for (k, (ym, c)) in self.terms.iter().enumerate() {
            let y = ym.latex(show_node);
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let piece = if abs.is_one() { y } else { format!("{abs} {y}") };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&piece);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for ClassicalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ym, c) in &self.terms {
            writeln!(f, "{c}\t{ym}")?;
        }
        Ok(())
    }
}

/// Sends q1 or q2 to 1 in every argument and coefficient, merging the
/// monomials that become equal.
pub fn classical_limit(ch: &Character, which: LimitGen) -> Result<ClassicalCharacter> {
    let g = which.gen();
    let mut sums: BTreeMap<YMonomial, Coefficient> = BTreeMap::new();
    for (ym, t) in &ch.terms {
        let c = t.coeff.limit_at_unity(which).map_err(|e| match e {
            QqError::Pole(m) => QqError::Pole(format!("{m} in the coefficient of {ym}")),
            QqError::NonFactoredLimit(m) => QqError::NonFactoredLimit(format!("{m} at {ym}")),
            other => other,
        })?;
        let key = ym.without(&g);
        let acc = sums.remove(&key).unwrap_or_else(Coefficient::zero);
        sums.insert(key, acc.add(&c));
    }
    let mut out = ClassicalCharacter { which: Some(which), ..Default::default() };
    for (ym, c) in sums {
        if c.is_zero() {
            continue;
        }
        let n = c.as_integer().ok_or_else(|| QqError::NonIntegerLimit(format!("{ym} has coefficient {c}")))?;
        out.add(ym, n);
    }
    Ok(out)
}

/// True iff the product of `factors` equals `cc`.
pub fn factorize_check(cc: &ClassicalCharacter, factors: &[ClassicalCharacter]) -> bool {
    let mut prod = ClassicalCharacter::default();
    prod.add(YMonomial::one(), BigInt::one());
    for f in factors {
        prod = prod.mul(f);
    }
    prod.same_terms(cc)
}

/// A1 KR character at (x, x q1, ..., x q1^{w-1}): w+1 terms,
/// sum_v prod_{i<=w-v, j<=v} S(q1^{1-i-j}) prod_{i<=w-v} Y_{x;i-1,0}
/// prod_{w-v<j<=w} Y_{x;j,1}^-1.
pub fn kr_closed_form_a1(w: u32, x: &Monomial) -> Result<Character> {
    let mut ch = Character::new(CharacterMeta { quiver: "A1".into(), w: vec![w], d_max: 1 });
    let q1 = Monomial::q1();
    let q2 = Monomial::q2();
    let w = w as i64;
    for v in 0..=w {
        let mut coeff = Coefficient::one();
        for i in 1..=(w - v) {
            for j in 1..=v {
                coeff = coeff.mul(&s_eval(&q1.pow(1 - i - j))?);
            }
        }
        let mut ym = YMonomial::one();
        for i in 1..=(w - v) {
            ym.mul_y("1", &x.mul(&q1.pow(i - 1)), 1);
        }
        for j in (w - v + 1)..=w {
            ym.mul_y("1", &x.mul(&q1.pow(j)).mul(&q2), -1);
        }
        ch.terms.insert(ym, Term { coeff, qdeg: 0, depth: v as u32 });
    }
    Ok(ch)
}

/// Binomial coefficient, for limit checks.
pub fn binomial(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Nodes appearing in a classical character, for LaTeX node labels.
pub fn nodes_of(cc: &ClassicalCharacter) -> BTreeSet<String> {
    cc.terms.keys().flat_map(|ym| ym.nodes().into_iter().map(str::to_string)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{closed_form_a1, expand, WeightConfig};

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn kr(node: &str, k: u32, m: LimitGen) -> KRSpec {
        KRSpec { node: node.into(), k, m, base: Monomial::sym("x") }
    }

    #[test]
    fn kr_parameter_sequences() {
        let a1 = Quiver::builtin("A1").unwrap();
        let bc2 = Quiver::builtin("BC2").unwrap();
        assert_eq!(kr_params(&kr("1", 2, LimitGen::Q1), &a1).unwrap(), vec![mono("x"), mono("x*q1")]);
        assert_eq!(kr_params(&kr("1", 3, LimitGen::Q1), &a1).unwrap(), vec![mono("x"), mono("x*q1"), mono("x*q1^2")]);
        assert_eq!(kr_params(&kr("1", 2, LimitGen::Q1), &bc2).unwrap(), vec![mono("x"), mono("x*q1^2")]);
        assert!(kr_params(&kr("7", 2, LimitGen::Q1), &a1).is_err());
    }

    fn a1_kr(w: u32) -> Character {
        let q = Quiver::builtin("A1").unwrap();
        let ch = expand(&q, &WeightConfig::generic(&q, &[w]).unwrap(), None).unwrap();
        let p = kr_params(&kr("1", w, LimitGen::Q1), &q).unwrap();
        higgs(&ch, &param_subst("1", &p)).unwrap()
    }

    #[test]
    fn a1_weight_two_higgsing() {
        let ch = a1_kr(2);
        assert_eq!(ch.len(), 3);
        let mut mid = YMonomial::y("1", &mono("x"));
        mid.mul_y("1", &mono("x*q1^2*q2"), -1);
        assert_eq!(ch.coeff(&mid).unwrap(), &s_eval(&mono("q1^-1")).unwrap());
    }

    #[test]
    fn higgsing_matches_kr_closed_form() {
        for w in 0..=4 {
            let cf = kr_closed_form_a1(w, &mono("x")).unwrap();
            assert_eq!(cf.len(), w as usize + 1);
            assert!(a1_kr(w).same_terms(&cf), "w = {w}");
        }
    }

    #[test]
    fn a1_limits() {
        let ch = a1_kr(2);
        let l1 = classical_limit(&ch, LimitGen::Q1).unwrap();
        let mut base = ClassicalCharacter::default();
        base.add(YMonomial::y("1", &mono("x")), BigInt::one());
        base.add(YMonomial::y("1", &mono("x*q2")).inv(), BigInt::one());
        assert!(factorize_check(&l1, &[base.clone(), base.clone()]));
        assert!(!factorize_check(&l1, &[base.clone()]));
        let l2 = classical_limit(&ch, LimitGen::Q2).unwrap();
        assert_eq!(l2.len(), 3);
        assert!(l2.terms.values().all(|c| c.is_one()));
    }

    #[test]
    fn generic_limit_has_unit_coefficients() {
        let q = Quiver::builtin("A1").unwrap();
        let ch = expand(&q, &WeightConfig::generic(&q, &[2]).unwrap(), None).unwrap();
        for which in [LimitGen::Q1, LimitGen::Q2] {
            let cc = classical_limit(&ch, which).unwrap();
            assert_eq!(cc.len(), 4);
            assert!(cc.terms.values().all(|c| c.is_one()));
        }
    }

    #[test]
    fn non_integer_limit_rejected() {
        let mut ch = Character::default();
        ch.add_term(YMonomial::y("1", &mono("x")), Coefficient::monomial(mono("x")), 0);
        assert!(matches!(classical_limit(&ch, LimitGen::Q1), Err(QqError::NonIntegerLimit(_))));
    }

    #[test]
    fn collision_is_an_error() {
        let ch = closed_form_a1(&[mono("x(1,1)"), mono("x(1,2)")]).unwrap();
        let mut sigma = Subst::new();
        sigma.insert(Gen::x("1", 1), mono("x"));
        sigma.insert(Gen::x("1", 2), mono("x"));
        assert!(higgs(&ch, &sigma).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(4, 0), BigInt::one());
    }
}
