use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::QqError;

/// A generator of the Laurent monomial group.
///
/// The derived order is the canonical sort order: q1, q2, mu, the counting
/// parameters, free symbols, then weight parameters by (node, index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Q1,
    Q2,
    Mu,
    /// Counting parameter attached to a node.
    Qfrak(String),
    /// A free named symbol such as the base spectral parameter `x`.
    Sym(String),
    /// Weight parameter x(i, alpha).
    X(String, u32),
}

impl Gen {
    pub fn x(node: &str, alpha: u32) -> Gen {
        Gen::X(node.to_string(), alpha)
    }

    pub fn sym(name: &str) -> Gen {
        Gen::Sym(name.to_string())
    }

    pub fn qfrak(node: &str) -> Gen {
        Gen::Qfrak(node.to_string())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Q1 => write!(f, "q1"),
            Gen::Q2 => write!(f, "q2"),
            Gen::Mu => write!(f, "mu"),
            Gen::Qfrak(i) => write!(f, "qfrak({i})"),
            Gen::Sym(s) => write!(f, "{s}"),
            Gen::X(i, a) => write!(f, "x({i},{a})"),
        }
    }
}

impl FromStr for Gen {
    type Err = QqError;

    fn from_str(s: &str) -> Result<Gen, QqError> {
        let s = s.trim();
        let bad = || QqError::Validation(format!("bad generator name '{s}'"));
        match s {
            "q1" => return Ok(Gen::Q1),
            "q2" => return Ok(Gen::Q2),
            "mu" => return Ok(Gen::Mu),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("qfrak(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(Gen::Qfrak(inner.trim().to_string()));
        }
        if let Some(rest) = s.strip_prefix("x(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (node, alpha) = inner.split_once(',').ok_or_else(bad)?;
            let alpha: u32 = alpha.trim().parse().map_err(|_| bad())?;
            return Ok(Gen::X(node.trim().to_string(), alpha));
        }
        let ident = !s.is_empty()
            && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ident {
            Ok(Gen::Sym(s.to_string()))
        } else {
            Err(bad())
        }
    }
}

/// Laurent monomial: generator -> nonzero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Gen, i64>);

/// A substitution of generators by monomials.
pub type Subst = BTreeMap<Gen, Monomial>;

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(BTreeMap::new())
    }

    pub fn gen(g: Gen) -> Monomial {
        Monomial::gen_pow(g, 1)
    }

    pub fn gen_pow(g: Gen, e: i64) -> Monomial {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(g, e);
        }
        Monomial(m)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Gen, i64)>>(pairs: I) -> Monomial {
        let mut m = Monomial::one();
        for (g, e) in pairs {
            m.mul_gen(g, e);
        }
        m
    }

    pub fn q1() -> Monomial {
        Monomial::gen(Gen::Q1)
    }

    pub fn q2() -> Monomial {
        Monomial::gen(Gen::Q2)
    }

    pub fn mu() -> Monomial {
        Monomial::gen(Gen::Mu)
    }

    /// q = q1 q2.
    pub fn q() -> Monomial {
        Monomial::from_pairs([(Gen::Q1, 1), (Gen::Q2, 1)])
    }

    /// q3 = mu.
    pub fn q3() -> Monomial {
        Monomial::mu()
    }

    /// q4 = mu^-1 q.
    pub fn q4() -> Monomial {
        Monomial::from_pairs([(Gen::Q1, 1), (Gen::Q2, 1), (Gen::Mu, -1)])
    }

    pub fn x(node: &str, alpha: u32) -> Monomial {
        Monomial::gen(Gen::x(node, alpha))
    }

    pub fn sym(name: &str) -> Monomial {
        Monomial::gen(Gen::sym(name))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, g: &Gen) -> i64 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gen, &i64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mul_gen(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.0.entry(g.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(&g);
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (g, e) in &other.0 {
            out.mul_gen(g.clone(), *e);
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(g, e)| (g.clone(), -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(g, e)| (g.clone(), e * k)).collect())
    }

    /// Exponent of the first generator in canonical order, or 0 for the unit.
    pub fn leading_exp(&self) -> i64 {
        self.0.values().next().copied().unwrap_or(0)
    }

    /// Drops generator `g`, i.e. evaluates it at 1.
    pub fn without(&self, g: &Gen) -> Monomial {
        let mut out = self.clone();
        out.0.remove(g);
        out
    }

    pub fn substitute(&self, sigma: &Subst) -> Monomial {
        let mut out = Monomial::one();
        for (g, e) in &self.0 {
            match sigma.get(g) {
                Some(img) => out = out.mul(&img.pow(*e)),
                None => out.mul_gen(g.clone(), *e),
            }
        }
        out
    }

    pub fn contains(&self, g: &Gen) -> bool {
        self.0.contains_key(g)
    }

    pub fn gens(&self) -> impl Iterator<Item = &Gen> {
        self.0.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<Gen, i64> {
        &self.0
    }

    /// LaTeX rendering, e.g. `q_1^{2} q_2^{-1}`.
    pub fn latex(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| {
                let base = gen_latex(g);
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect();
        parts.join(" ")
    }
}

pub fn gen_latex(g: &Gen) -> String {
    match g {
        Gen::Q1 => "q_1".into(),
        Gen::Q2 => "q_2".into(),
        Gen::Mu => "\\mu".into(),
        Gen::Qfrak(i) => format!("\\mathfrak{{q}}_{{{i}}}"),
        Gen::Sym(s) => s.clone(),
        Gen::X(i, a) => format!("x_{{{i},{a}}}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for Monomial {
    type Err = QqError;

    /// Parses `q1^2*q2^-1*x` style products; `1` is the unit.
    fn from_str(s: &str) -> Result<Monomial, QqError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::one());
        }
        let mut out = Monomial::one();
        for part in split_top_level(s, '*') {
            let (base, e) = match part.rsplit_once('^') {
                Some((b, e)) => {
                    let e: i64 =
                        e.trim().parse().map_err(|_| QqError::Validation(format!("bad exponent in '{part}'")))?;
                    (b, e)
                }
                None => (part.as_str(), 1),
            };
            out.mul_gen(base.parse()?, e);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}
