//! The iWeyl reflection engine and the characters it produces.

mod ymonomial;

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{latex_s, s_eval, s_r_eval, Coefficient, Gen, Monomial};
use crate::error::{QqError, Result};
use crate::quiver::{Quiver, QuiverKind};

pub use ymonomial::{shorthand, YMonomial};

/// Hard stop for expansions that should terminate but do not.
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Coefficient,
    /// Total counting-parameter degree.
    pub qdeg: u32,
    /// Number of reflections from the highest-weight term.
    pub depth: u32,
}

/// A reflection arrow, labelled by the reflected symbol (node, argument).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HasseEdge {
    pub src: YMonomial,
    pub dst: YMonomial,
    pub node: String,
    pub arg: Monomial,
}

/// Weight parameters per node, in quiver declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    pub params: Vec<(String, Vec<Monomial>)>,
}

impl WeightConfig {
    /// Free parameters x(i, 1..w_i) for each node.
    pub fn generic(q: &Quiver, w: &[u32]) -> Result<WeightConfig> {
        if w.len() != q.nodes.len() {
            return Err(QqError::Validation(format!(
                "weight vector has {} entries, quiver {} has {} nodes",
                w.len(),
                q.name,
                q.nodes.len()
            )));
        }
        let params = q
            .nodes
            .iter()
            .zip(w)
            .map(|(n, &wi)| (n.id.clone(), (1..=wi).map(|a| Monomial::x(&n.id, a)).collect()))
            .collect();
        Ok(WeightConfig { params })
    }

    /// Explicit parameters; nodes not listed get weight 0.
    pub fn explicit(q: &Quiver, given: &[(&str, Vec<Monomial>)]) -> Result<WeightConfig> {
        for (id, _) in given {
            if q.index(id).is_none() {
                return Err(QqError::Validation(format!("unknown node {id}")));
            }
        }
        let params = q
            .nodes
            .iter()
            .map(|n| {
                let p = given.iter().filter(|(id, _)| *id == n.id).flat_map(|(_, v)| v.iter().cloned()).collect();
                (n.id.clone(), p)
            })
            .collect();
        Ok(WeightConfig { params })
    }

    pub fn w(&self) -> Vec<u32> {
        self.params.iter().map(|(_, p)| p.len() as u32).collect()
    }

    pub fn total(&self) -> usize {
        self.params.iter().map(|(_, p)| p.len()).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterMeta {
    pub quiver: String,
    pub w: Vec<u32>,
    /// Largest decoration, used to pick S_r blocks in LaTeX.
    pub d_max: u32,
}

#[derive(Clone, Debug, Default)]
pub struct Character {
    pub terms: BTreeMap<YMonomial, Term>,
    pub edges: BTreeSet<HasseEdge>,
    pub meta: CharacterMeta,
}

/// Counters gathered during one expansion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpandStats {
    /// Arrivals at an already known monomial, each checked for equal coefficients.
    pub path_checks: usize,
    pub reflections: usize,
}

impl Character {
    pub fn new(meta: CharacterMeta) -> Character {
        Character { meta, ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ym: &YMonomial) -> Option<&Coefficient> {
        self.terms.get(ym).map(|t| &t.coeff)
    }

    /// Adds a term, summing coefficients on equal monomials.
    pub fn add_term(&mut self, ym: YMonomial, coeff: Coefficient, qdeg: u32) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&ym) {
            Some(t) => {
                t.coeff = t.coeff.add(&coeff);
                if t.coeff.is_zero() {
                    self.terms.remove(&ym);
                }
            }
            None => {
                self.terms.insert(ym, Term { coeff, qdeg, depth: 0 });
            }
        }
    }

    /// Terms ordered for presentation: by degree, depth, then monomial.
    pub fn ordered_terms(&self) -> Vec<(&YMonomial, &Term)> {
        let mut v: Vec<(&YMonomial, &Term)> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.1.qdeg, a.1.depth, a.0).cmp(&(b.1.qdeg, b.1.depth, b.0)));
        v
    }

    /// Exact equality of the term maps (edges and metadata ignored).
    pub fn same_terms(&self, other: &Character) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(ym, t)| other.coeff(ym).is_some_and(|c| c.exact_eq(&t.coeff)))
    }

    /// First monomial whose coefficient differs, for diagnostics.
    pub fn first_difference(&self, other: &Character) -> Option<String> {
        for (ym, t) in &self.terms {
            match other.coeff(ym) {
                None => return Some(format!("{ym} only on the left")),
                Some(c) if !c.exact_eq(&t.coeff) => return Some(format!("{ym}: {} vs {}", t.coeff, c)),
                _ => {}
            }
        }
        other.terms.keys().find(|ym| !self.terms.contains_key(*ym)).map(|ym| format!("{ym} only on the right"))
    }

    /// Drops the node index in LaTeX when every symbol sits on one node.
    fn single_node(&self) -> bool {
        let nodes: BTreeSet<&str> = self.terms.keys().flat_map(|ym| ym.nodes()).collect();
        nodes.len() <= 1 && self.meta.w.len() <= 1
    }

    pub fn latex(&self) -> String {
        let show = !self.single_node();
        let mut out = String::new();
        for (k, (ym, t)) in self.ordered_terms().into_iter().enumerate() {
            let c = latex_s(&t.coeff, self.meta.d_max);
            let y = ym.latex(show);
            let piece = match (c.as_str(), y.as_str()) {
                ("1", _) => y.clone(),
                ("-1", _) => format!("-{y}"),
                (_, "1") => c.clone(),
                _ => format!("{c} {y}"),
            };
            if k > 0 {
                if let Some(rest) = piece.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                    continue;
                }
                out.push_str(" + ");
            }
            out.push_str(&piece);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (ym, t) in self.ordered_terms() {
            out.push_str(&format!("{}\t{}\n", t.coeff, ym));
        }
        out
    }

    /// Graphviz digraph of the reflection arrows.
    pub fn hasse_dot(&self) -> String {
        let show = !self.single_node();
        let id = |ym: &YMonomial| format!("n{:016x}", fnv1a(ym.to_string().as_bytes()));
        let mut out = String::from("digraph hasse {\n  rankdir=TB;\n");
        for (ym, _) in self.ordered_terms() {
            out.push_str(&format!("  {} [label=\"{}\"];\n", id(ym), dot_escape(&ym.latex(show))));
        }
        for e in &self.edges {
            let label = format!("{}, {}", e.node, e.arg);
            out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", id(&e.src), id(&e.dst), dot_escape(&label)));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The product of Y_{i, x_{i,alpha}} over all parameters, coefficient 1.
pub fn highest_weight(wc: &WeightConfig) -> (YMonomial, Term) {
    let mut ym = YMonomial::one();
    for (node, ps) in &wc.params {
        for x in ps {
            ym.mul_y(node, x, 1);
        }
    }
    (ym, Term { coeff: Coefficient::one(), qdeg: 0, depth: 0 })
}

/// Coefficient picked up when the numerator symbol Y_{i,x} of `ym` is reflected:
/// prod S_d(x_a/x) over the other numerator symbols at node i, divided by
/// prod S_d(x_b/x) over the denominator symbols at node i, with d = d_i.
pub fn s_factor_coefficient(q: &Quiver, ym: &YMonomial, i: &str, x: &Monomial) -> Result<Coefficient> {
    let own = ym.exp(i, x);
    if own <= 0 {
        return Err(QqError::Validation(format!("Y[{i},{x}] is not in the numerator of {ym}")));
    }
    if own >= 2 {
        return Err(QqError::CollidingArguments(format!("Y[{i},{x}]^{own} in {ym}")));
    }
    let d = q.d(i);
    let mut c = Coefficient::one();
    for (n, a, e) in ym.entries() {
        if n != i || a == x {
            continue;
        }
        let z = a.div(x);
        let s = s_r_eval(d, &z)
            .map_err(|_| QqError::CollidingArguments(format!("Y[{i},{a}] against Y[{i},{x}] in {ym}")))?;
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                c = c.mul(&s);
            } else {
                c = c
                    .div(&s)
                    .map_err(|_| QqError::CollidingArguments(format!("Y[{i},{a}]^-1 against Y[{i},{x}] in {ym}")))?;
            }
        }
    }
    Ok(c)
}

/// Generates the character from the highest weight by iWeyl reflections.
///
/// Affine and indefinite quivers need `max_qdeg`; children above it are not
/// generated.
pub fn expand(q: &Quiver, wc: &WeightConfig, max_qdeg: Option<u32>) -> Result<Character> {
    expand_with_stats(q, wc, max_qdeg).map(|(ch, _)| ch)
}

pub fn expand_with_stats(q: &Quiver, wc: &WeightConfig, max_qdeg: Option<u32>) -> Result<(Character, ExpandStats)> {
    let class = q.classify().kind;
    if class != QuiverKind::Finite && max_qdeg.is_none() {
        return Err(QqError::Validation(format!("quiver {} is {class}; a degree cutoff is required", q.name)));
    }
    let d_max = q.nodes.iter().map(|n| n.d).max().unwrap_or(1);
    let mut ch = Character::new(CharacterMeta { quiver: q.name.clone(), w: wc.w(), d_max });
    let mut stats = ExpandStats::default();
    let (top, term) = highest_weight(wc);
    let mut queue: BTreeSet<(u32, YMonomial)> = BTreeSet::new();
    queue.insert((0, top.clone()));
    ch.terms.insert(top, term);
    let mut zeros: BTreeSet<YMonomial> = BTreeSet::new();
    let mut cache: BTreeMap<(String, Monomial), (YMonomial, Coefficient)> = BTreeMap::new();

    while let Some((qdeg, ym)) = queue.pop_first() {
        let parent = ch.terms[&ym].clone();
        let numer: Vec<(String, Monomial)> = ym.numerator().map(|(n, a, _)| (n.to_string(), a.clone())).collect();
        for (i, x) in numer {
            let key = (i.clone(), x.clone());
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), q.a_inverse_monomial(&i, &x)?);
            }
            let (repl, scalar) = &cache[&key];
            let child_deg = qdeg
                + u32::from(scalar.as_factored().is_some_and(|f| f.unit().gens().any(|g| matches!(g, Gen::Qfrak(_)))));
            if max_qdeg.is_some_and(|m| child_deg > m) {
                continue;
            }
            let s = s_factor_coefficient(q, &ym, &i, &x)?;
            let coeff = parent.coeff.mul(&s).mul(scalar);
            let child = ym.mul(&YMonomial::y(&i, &x).inv()).mul(repl);
            stats.reflections += 1;
            if coeff.is_zero() {
                if ch.terms.contains_key(&child) {
                    return Err(QqError::PathInconsistency(format!(
                        "{child}: zero along one path, nonzero along another"
                    )));
                }
                zeros.insert(child);
                continue;
            }
            if zeros.contains(&child) {
                return Err(QqError::PathInconsistency(format!("{child}: zero along one path, nonzero along another")));
            }
            ch.edges.insert(HasseEdge { src: ym.clone(), dst: child.clone(), node: i.clone(), arg: x.clone() });
            match ch.terms.get(&child) {
                Some(t) => {
                    stats.path_checks += 1;
                    if !t.coeff.exact_eq(&coeff) {
                        return Err(QqError::PathInconsistency(format!("{child}: {} vs {}", t.coeff, coeff)));
                    }
                }
                None => {
                    if ch.terms.len() >= MAX_TERMS {
                        return Err(QqError::NonTermination(format!("more than {MAX_TERMS} terms for {}", q.name)));
                    }
                    ch.terms.insert(child.clone(), Term { coeff, qdeg: child_deg, depth: parent.depth + 1 });
                    queue.insert((child_deg, child));
                }
            }
        }
    }
    Ok((ch, stats))
}

/// A1 character as a sum over splittings I + J of the parameters:
/// prod_{i in I, j in J} S(x_i/x_j) prod_I Y_{x_i} prod_J Y_{x_j q}^-1.
pub fn closed_form_a1(params: &[Monomial]) -> Result<Character> {
    let w = params.len();
    let mut ch = Character::new(CharacterMeta { quiver: "A1".into(), w: vec![w as u32], d_max: 1 });
    let q = Monomial::q();
    for mask in 0u64..(1u64 << w) {
        let in_i = |k: usize| mask & (1 << k) == 0;
        let mut coeff = Coefficient::one();
        let mut ym = YMonomial::one();
        for a in 0..w {
            if in_i(a) {
                ym.mul_y("1", &params[a], 1);
                for b in (0..w).filter(|&b| !in_i(b)) {
                    coeff = coeff.mul(&s_eval(&params[a].div(&params[b]))?);
                }
            } else {
                ym.mul_y("1", &params[a].mul(&q), -1);
            }
        }
        let depth = mask.count_ones();
        if !coeff.is_zero() {
            ch.terms.insert(ym, Term { coeff, qdeg: 0, depth });
        }
    }
    Ok(ch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn a1_generic(w: u32) -> Character {
        let q = Quiver::builtin("A1").unwrap();
        expand(&q, &WeightConfig::generic(&q, &[w]).unwrap(), None).unwrap()
    }

    #[test]
    fn highest_weight_terms() {
        let q = Quiver::builtin("A2").unwrap();
        let wc = WeightConfig::generic(&q, &[1, 1]).unwrap();
        let (ym, t) = highest_weight(&wc);
        let mut expected = YMonomial::y("1", &mono("x(1,1)"));
        expected.mul_y("2", &mono("x(2,1)"), 1);
        assert_eq!(ym, expected);
        assert_eq!(t.coeff, Coefficient::one());
        let empty = WeightConfig::generic(&q, &[0, 0]).unwrap();
        assert!(highest_weight(&empty).0.is_one());
        assert_eq!(expand(&q, &empty, None).unwrap().len(), 1);
    }

    #[test]
    fn a1_fundamental() {
        let ch = a1_generic(1);
        assert_eq!(ch.len(), 2);
        assert!(ch.terms.values().all(|t| t.coeff == Coefficient::one()));
        let low = YMonomial::y("1", &mono("x(1,1)*q1*q2")).inv();
        assert!(ch.coeff(&low).is_some());
        assert_eq!(ch.edges.len(), 1);
    }

    #[test]
    fn a1_weight_two_middle_coefficients() {
        let ch = a1_generic(2);
        assert_eq!(ch.len(), 4);
        let x1 = mono("x(1,1)");
        let x2 = mono("x(1,2)");
        let q = Monomial::q();
        let mut mid = YMonomial::y("1", &x2);
        mid.mul_y("1", &x1.mul(&q), -1);
        assert_eq!(ch.coeff(&mid).unwrap(), &s_eval(&x2.div(&x1)).unwrap());
        let mut mid2 = YMonomial::y("1", &x1);
        mid2.mul_y("1", &x2.mul(&q), -1);
        assert_eq!(ch.coeff(&mid2).unwrap(), &s_eval(&x1.div(&x2)).unwrap());
    }

    #[test]
    fn s_factor_examples() {
        let q = Quiver::builtin("A1").unwrap();
        let mut ym = YMonomial::y("1", &mono("x(1,1)"));
        ym.mul_y("1", &mono("x(1,2)"), 1);
        let c = s_factor_coefficient(&q, &ym, "1", &mono("x(1,1)")).unwrap();
        assert_eq!(c, s_eval(&mono("x(1,2)*x(1,1)^-1")).unwrap());
        let lone = YMonomial::y("1", &mono("x"));
        assert_eq!(s_factor_coefficient(&q, &lone, "1", &mono("x")).unwrap(), Coefficient::one());
        let bc2 = Quiver::builtin("BC2").unwrap();
        let mut ym = YMonomial::y("1", &mono("x(1,1)"));
        ym.mul_y("1", &mono("x(1,2)"), 1);
        let c = s_factor_coefficient(&bc2, &ym, "1", &mono("x(1,1)")).unwrap();
        assert_eq!(c, s_r_eval(2, &mono("x(1,2)*x(1,1)^-1")).unwrap());
    }

    #[test]
    fn colliding_arguments_rejected() {
        let q = Quiver::builtin("A1").unwrap();
        let wc = WeightConfig::explicit(&q, &[("1", vec![mono("x"), mono("x")])]).unwrap();
        assert!(matches!(expand(&q, &wc, None), Err(QqError::CollidingArguments(_))));
        let wc = WeightConfig::explicit(&q, &[("1", vec![mono("x"), mono("x*q1*q2")])]).unwrap();
        assert!(matches!(expand(&q, &wc, None), Err(QqError::CollidingArguments(_))));
    }

    #[test]
    fn affine_needs_cutoff() {
        let q = Quiver::builtin("A0hat").unwrap();
        let wc = WeightConfig::generic(&q, &[1]).unwrap();
        assert!(matches!(expand(&q, &wc, None), Err(QqError::Validation(_))));
        assert_eq!(expand(&q, &wc, Some(0)).unwrap().len(), 1);
        assert_eq!(expand(&q, &wc, Some(1)).unwrap().len(), 2);
    }

    #[test]
    fn expansion_matches_closed_form_small() {
        for w in 0..=4u32 {
            let ch = a1_generic(w);
            let params: Vec<Monomial> = (1..=w).map(|a| Monomial::x("1", a)).collect();
            let cf = closed_form_a1(&params).unwrap();
            assert_eq!(ch.len(), 1 << w);
            assert!(ch.same_terms(&cf), "w = {w}: {:?}", ch.first_difference(&cf));
        }
    }

    #[test]
    fn dot_output_counts() {
        let dot = a1_generic(1).hasse_dot();
        assert_eq!(dot.matches("[label=").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 1);
    }
}
