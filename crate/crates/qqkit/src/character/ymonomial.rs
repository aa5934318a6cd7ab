use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Gen, Monomial, Subst};

/// Laurent monomial in the symbols Y_{i,x}.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YMonomial(BTreeMap<(String, Monomial), i64>);

impl YMonomial {
    pub fn one() -> YMonomial {
        YMonomial(BTreeMap::new())
    }

    pub fn y(node: &str, arg: &Monomial) -> YMonomial {
        let mut out = YMonomial::one();
        out.mul_y(node, arg, 1);
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_y(&mut self, node: &str, arg: &Monomial, e: i64) {
        if e == 0 {
            return;
        }
        let key = (node.to_string(), arg.clone());
        let v = self.0.entry(key.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(&key);
        }
    }

    pub fn exp(&self, node: &str, arg: &Monomial) -> i64 {
        self.0.get(&(node.to_string(), arg.clone())).copied().unwrap_or(0)
    }

    /// (node, argument, exponent) in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &Monomial, i64)> {
        self.0.iter().map(|((n, a), e)| (n.as_str(), a, *e))
    }

    pub fn numerator(&self) -> impl Iterator<Item = (&str, &Monomial, i64)> {
        self.entries().filter(|(_, _, e)| *e > 0)
    }

    pub fn has_numerator(&self) -> bool {
        self.0.values().any(|e| *e > 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let mut out = self.clone();
        for ((n, a), e) in &other.0 {
            out.mul_y(n, a, *e);
        }
        out
    }

    pub fn inv(&self) -> YMonomial {
        YMonomial(self.0.iter().map(|(k, e)| (k.clone(), -e)).collect())
    }

    pub fn pow(&self, k: i64) -> YMonomial {
        if k == 0 {
            return YMonomial::one();
        }
        YMonomial(self.0.iter().map(|(key, e)| (key.clone(), e * k)).collect())
    }

    /// Rewrites every argument under `sigma`, merging equal symbols.
    pub fn substitute(&self, sigma: &Subst) -> YMonomial {
        let mut out = YMonomial::one();
        for ((n, a), e) in &self.0 {
            out.mul_y(n, &a.substitute(sigma), *e);
        }
        out
    }

    /// Evaluates generator `g` at 1 inside every argument.
    pub fn without(&self, g: &Gen) -> YMonomial {
        let mut out = YMonomial::one();
        for ((n, a), e) in &self.0 {
            out.mul_y(n, &a.without(g), *e);
        }
        out
    }

    /// Distinct node ids appearing in the monomial.
    pub fn nodes(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.0.keys().map(|(n, _)| n.as_str()).collect();
        v.dedup();
        v
    }

    /// LaTeX with the Y_{i,x;j,k} = Y_{i, x q1^j q2^k} shorthand.
    pub fn latex(&self, show_node: bool) -> String {
        if self.is_one() {
            return "1".into();
        }
        let sym = |n: &str, a: &Monomial, e: i64| {
            let body = y_symbol_latex(n, a, show_node);
            if e == 1 {
                body
            } else {
                format!("{body}^{{{e}}}")
            }
        };
        let num: Vec<String> = self.entries().filter(|e| e.2 > 0).map(|(n, a, e)| sym(n, a, e)).collect();
        let den: Vec<String> = self.entries().filter(|e| e.2 < 0).map(|(n, a, e)| sym(n, a, -e)).collect();
        match (num.is_empty(), den.is_empty()) {
            (false, true) => num.join(" "),
            (true, false) => format!("\\frac{{1}}{{{}}}", den.join(" ")),
            _ => format!("\\frac{{{}}}{{{}}}", num.join(" "), den.join(" ")),
        }
    }
}

/// Splits an argument into a single base generator times q1^j q2^k, when
/// possible.
pub fn shorthand(arg: &Monomial) -> Option<(Gen, i64, i64)> {
    let base = arg.without(&Gen::Q1).without(&Gen::Q2);
    let mut it = base.iter();
    let (g, e) = it.next()?;
    if *e != 1 || it.next().is_some() {
        return None;
    }
    Some((g.clone(), arg.exp(&Gen::Q1), arg.exp(&Gen::Q2)))
}

fn y_symbol_latex(node: &str, arg: &Monomial, show_node: bool) -> String {
    let prefix = if show_node { format!("{node},") } else { String::new() };
    match shorthand(arg) {
        Some((g, 0, 0)) => format!("\\mathsf{{Y}}_{{{prefix}{}}}", crate::algebra::gen_latex(&g)),
        Some((g, j, k)) => format!("\\mathsf{{Y}}_{{{prefix}{};{j},{k}}}", crate::algebra::gen_latex(&g)),
        None => format!("\\mathsf{{Y}}_{{{prefix}{}}}", arg.latex()),
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|(n, a, e)| if e == 1 { format!("Y[{n},{a}]") } else { format!("Y[{n},{a}]^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
