//! Decorated quivers, the deformed Cartan matrix and the iWeyl reflection.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{s_r_eval, Coefficient, Gen, Monomial, Poly};
use crate::character::YMonomial;
use crate::error::{QqError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    /// Relative root length d_i.
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: String,
    pub to: String,
    /// Mass label exponent: the edge carries mu^mu.
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub name: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverKind {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverClass {
    pub kind: QuiverKind,
    pub det_classical: BigInt,
}

impl fmt::Display for QuiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuiverKind::Finite => "finite",
            QuiverKind::Affine => "affine",
            QuiverKind::Indefinite => "indefinite",
        };
        write!(f, "{s}")
    }
}

impl Quiver {
    pub fn new(name: &str, nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Quiver> {
        let q = Quiver { name: name.to_string(), nodes, edges };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(QqError::Validation("quiver has no nodes".into()));
        }
        for (k, n) in self.nodes.iter().enumerate() {
            if n.d == 0 {
                return Err(QqError::Validation(format!("node {} has d = 0", n.id)));
            }
            if self.nodes[..k].iter().any(|m| m.id == n.id) {
                return Err(QqError::Validation(format!("duplicate node id {}", n.id)));
            }
        }
        for e in &self.edges {
            for end in [&e.from, &e.to] {
                if self.index(end).is_none() {
                    return Err(QqError::Validation(format!("edge refers to unknown node {end}")));
                }
            }
        }
        if self.edges.iter().any(|e| e.mu != 0) && self.classify().kind == QuiverKind::Finite {
            return Err(QqError::Validation("mass labels must be trivial on finite-type quivers".into()));
        }
        Ok(())
    }

    /// Built-in quivers: A1, A2, BC2, A0hat, Arhat(r).
    pub fn builtin(name: &str) -> Result<Quiver> {
        let node = |id: &str, d: u32| Node { id: id.to_string(), d };
        let edge = |a: &str, b: &str, mu: i64| Edge { from: a.to_string(), to: b.to_string(), mu };
        let name = name.trim();
        match name {
            "A1" => Quiver::new("A1", vec![node("1", 1)], vec![]),
            "A2" => Quiver::new("A2", vec![node("1", 1), node("2", 1)], vec![edge("1", "2", 0)]),
            "BC2" => Quiver::new("BC2", vec![node("1", 2), node("2", 1)], vec![edge("1", "2", 0)]),
            "A0hat" => Quiver::new("A0hat", vec![node("0", 1)], vec![edge("0", "0", 1)]),
            _ => {
                let r = name
                    .strip_prefix("Arhat(")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.trim().parse::<u32>().ok())
                    .filter(|r| *r >= 1)
                    .ok_or_else(|| QqError::Validation(format!("unknown quiver '{name}'")))?;
                Quiver::cyclic(r)
            }
        }
    }

    /// Cyclic quiver with r nodes 0..r-1 and edges i -> i+1, all carrying mu.
    pub fn cyclic(r: u32) -> Result<Quiver> {
        let nodes = (0..r).map(|i| Node { id: i.to_string(), d: 1 }).collect();
        let edges = (0..r).map(|i| Edge { from: i.to_string(), to: ((i + 1) % r).to_string(), mu: 1 }).collect();
        Quiver::new(&format!("Arhat({r})"), nodes, edges)
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn d(&self, id: &str) -> u32 {
        self.node(id).map(|n| n.d).unwrap_or(1)
    }

    pub fn d_ij(&self, i: &str, j: &str) -> u32 {
        self.d(i).gcd(&self.d(j))
    }

    /// c_{ji} = (1 + q1^{d_i} q2) delta_ij
    ///   - sum_{e: i->j} sum_{r < d_i/d_ij} mu_e q1^{r d_ij}
    ///   - sum_{e: j->i} sum_{r < d_i/d_ij} mu_e^-1 q1^{(r+1) d_ij} q2,
    ///
    /// returned as `c[j][i]` indexed by declaration order.
    pub fn cartan_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.nodes.len();
        let one = BigRational::one;
        let mut c = vec![vec![Poly::zero(); n]; n];
        for (ii, ni) in self.nodes.iter().enumerate() {
            let diag = Poly::one().add(&Poly::term(Monomial::q1().pow(ni.d as i64).mul(&Monomial::q2()), one()));
            c[ii][ii] = c[ii][ii].add(&diag);
            for e in &self.edges {
                if e.from == ni.id {
                    let jj = self.index(&e.to).unwrap();
                    let dij = self.d_ij(&ni.id, &e.to) as i64;
                    for r in 0..(ni.d as i64 / dij) {
                        let m = Monomial::mu().pow(e.mu).mul(&Monomial::q1().pow(r * dij));
                        c[jj][ii] = c[jj][ii].sub(&Poly::term(m, one()));
                    }
                }
                if e.to == ni.id {
                    let jj = self.index(&e.from).unwrap();
                    let dij = self.d_ij(&ni.id, &e.from) as i64;
                    for r in 0..(ni.d as i64 / dij) {
                        let m = Monomial::mu().pow(-e.mu).mul(&Monomial::q1().pow((r + 1) * dij)).mul(&Monomial::q2());
                        c[jj][ii] = c[jj][ii].sub(&Poly::term(m, one()));
                    }
                }
            }
        }
        c
    }

    /// Cartan matrix with every variable set to 1.
    pub fn classical_cartan(&self) -> Vec<Vec<BigInt>> {
        self.cartan_matrix()
            .iter()
            .map(|row| {
                row.iter().map(|p| p.terms().map(|(_, c)| c.clone()).sum::<BigRational>().to_integer()).collect()
            })
            .collect()
    }

    pub fn classify(&self) -> QuiverClass {
        let m: Vec<Vec<BigRational>> = self
            .classical_cartan()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let det = rational_det(m).to_integer();
        let kind = if det.is_positive() {
            QuiverKind::Finite
        } else if det.is_zero() {
            QuiverKind::Affine
        } else {
            QuiverKind::Indefinite
        };
        QuiverClass { kind, det_classical: det }
    }

    /// Whether reflections carry a counting parameter.
    pub fn is_graded(&self) -> bool {
        self.classify().kind != QuiverKind::Finite
    }

    /// The replacement Y_{i,x} -> Y_{i,x} A_{i,x}^-1 and its scalar prefactor.
    ///
    /// The scalar is 1 on finite-type quivers; otherwise it carries the
    /// counting parameter of node i and one S_{d_i}(mu_e) per loop at i.
    pub fn a_inverse_monomial(&self, i: &str, x: &Monomial) -> Result<(YMonomial, Coefficient)> {
        let ni = self.node(i).ok_or_else(|| QqError::Validation(format!("unknown node {i}")))?;
        let di = ni.d as i64;
        let q1 = Monomial::q1();
        let q2 = Monomial::q2();
        let mut ym = YMonomial::one();
        ym.mul_y(i, &x.mul(&q1.pow(di)).mul(&q2), -1);
        let mut scalar = Coefficient::one();
        for e in &self.edges {
            if e.from == i {
                let dij = self.d_ij(i, &e.to) as i64;
                for r in 0..(di / dij) {
                    let arg = x.mul(&Monomial::mu().pow(e.mu)).mul(&q1.pow(r * dij));
                    ym.mul_y(&e.to, &arg, 1);
                }
            }
            if e.to == i {
                let dij = self.d_ij(i, &e.from) as i64;
                for r in 0..(di / dij) {
                    let arg = x.mul(&Monomial::mu().pow(-e.mu)).mul(&q1.pow((r + 1) * dij)).mul(&q2);
                    ym.mul_y(&e.from, &arg, 1);
                }
            }
            if e.from == i && e.to == i {
                scalar = scalar.mul(&s_r_eval(ni.d, &Monomial::mu().pow(e.mu))?);
            }
        }
        if self.is_graded() {
            scalar = scalar.mul(&Coefficient::monomial(Monomial::gen(Gen::qfrak(i))));
        }
        Ok((ym, scalar))
    }
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in (col + 1)..n {
            let f = &m[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            let (upper, lower) = m.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= src * &f;
            }
        }
    }
    det
}

/// Determinant of a small polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Poly::zero();
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = entry.mul(&poly_det(&minor));
        out = if col % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn poly(terms: &[(&str, i64)]) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(mono(m), BigRational::from_integer((*c).into()));
        }
        p
    }

    #[test]
    fn a1_cartan() {
        let c = Quiver::builtin("A1").unwrap().cartan_matrix();
        assert_eq!(c, vec![vec![poly(&[("1", 1), ("q1*q2", 1)])]]);
    }

    #[test]
    fn a0hat_cartan_factorizes() {
        let c = Quiver::builtin("A0hat").unwrap().cartan_matrix();
        // (1 - q3)(1 - q4)
        let expected = Poly::binomial(&Monomial::q3()).mul(&Poly::binomial(&Monomial::q4()));
        assert_eq!(c[0][0], expected);
    }

    #[test]
    fn cyclic_cartan_determinant() {
        // (1 - mu^r)(1 - mu^-r q^r) for r = 3
        let q = Quiver::builtin("Arhat(3)").unwrap();
        let det = poly_det(&q.cartan_matrix());
        let expected = Poly::binomial(&mono("mu^3")).mul(&Poly::binomial(&mono("mu^-3*q1^3*q2^3")));
        assert_eq!(det, expected);
    }

    #[test]
    fn classical_cartan_matrices() {
        let two = BigInt::from(2);
        let m1 = BigInt::from(-1);
        let m2 = BigInt::from(-2);
        assert_eq!(
            Quiver::builtin("A2").unwrap().classical_cartan(),
            vec![vec![two.clone(), m1.clone()], vec![m1.clone(), two.clone()]]
        );
        // c_{ji}: column of node 1 (d=2) has -2 in row 2.
        assert_eq!(Quiver::builtin("BC2").unwrap().classical_cartan(), vec![vec![two.clone(), m1], vec![m2, two]]);
    }

    #[test]
    fn classification() {
        let k = |n: &str| Quiver::builtin(n).unwrap().classify();
        assert_eq!(k("A1").kind, QuiverKind::Finite);
        assert_eq!(k("A1").det_classical, BigInt::from(2));
        assert_eq!(k("A2").kind, QuiverKind::Finite);
        assert_eq!(k("BC2").kind, QuiverKind::Finite);
        assert_eq!(k("A0hat").kind, QuiverKind::Affine);
        assert_eq!(k("Arhat(2)").kind, QuiverKind::Affine);
        assert_eq!(k("Arhat(4)").kind, QuiverKind::Affine);
    }

    #[test]
    fn a1_reflection() {
        let q = Quiver::builtin("A1").unwrap();
        let (ym, s) = q.a_inverse_monomial("1", &mono("x")).unwrap();
        let mut expected = YMonomial::one();
        expected.mul_y("1", &mono("x*q1*q2"), -1);
        assert_eq!(ym, expected);
        assert_eq!(s, Coefficient::one());
    }

    #[test]
    fn bc2_reflection_node_one() {
        let q = Quiver::builtin("BC2").unwrap();
        let (ym, s) = q.a_inverse_monomial("1", &mono("x")).unwrap();
        let mut expected = YMonomial::one();
        expected.mul_y("2", &mono("x"), 1);
        expected.mul_y("2", &mono("x*q1"), 1);
        expected.mul_y("1", &mono("x*q1^2*q2"), -1);
        assert_eq!(ym, expected);
        assert_eq!(s, Coefficient::one());
    }

    #[test]
    fn a0hat_reflection() {
        let q = Quiver::builtin("A0hat").unwrap();
        let x = mono("x");
        let (ym, s) = q.a_inverse_monomial("0", &x).unwrap();
        let mut expected = YMonomial::one();
        expected.mul_y("0", &x.mul(&Monomial::q3()), 1);
        expected.mul_y("0", &x.mul(&Monomial::q4()), 1);
        expected.mul_y("0", &x.mul(&Monomial::q()), -1);
        assert_eq!(ym, expected);
        let scalar = crate::algebra::s_eval(&Monomial::q3()).unwrap().mul(&Coefficient::monomial(mono("qfrak(0)")));
        assert_eq!(s, scalar);
    }

    #[test]
    fn reflection_degrees_match_cartan_columns() {
        // Exponent count of Y_j in A_{i}^-1 equals minus the classical c_{ji}
        // off the diagonal, and -1 on the diagonal.
        for name in ["A1", "A2", "BC2"] {
            let q = Quiver::builtin(name).unwrap();
            let c = q.classical_cartan();
            for (ii, ni) in q.nodes.iter().enumerate() {
                let (ym, _) = q.a_inverse_monomial(&ni.id, &mono("x")).unwrap();
                for (jj, nj) in q.nodes.iter().enumerate() {
                    let deg: i64 = ym.entries().filter(|(n, _, _)| *n == nj.id).map(|(_, _, e)| e).sum();
                    let expected = if ii == jj { BigInt::from(-1) } else { -c[jj][ii].clone() };
                    assert_eq!(BigInt::from(deg), expected, "{name} node {}", ni.id);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Quiver::builtin("E8").is_err());
        let bad = Quiver::new("x", vec![Node { id: "1".into(), d: 0 }], vec![]);
        assert!(bad.is_err());
    }
}
