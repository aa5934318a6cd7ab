//! A small text form for hand-transcribed characters.
//!
//! ```text
//! Y1(x1) Y1(x2) + S(x2/x1) [ Y1(x2) Y2(x1) / Y1(x1*q) + Y1(x2) / Y2(x1*q) ]
//! ```
//!
//! Terms are separated by `+`; a term is a product of integers, `S(z)`,
//! `S2(z)` (the r = 2 function), Y-factors and bracketed sums, optionally
//! followed by `/` and the Y-factors of the denominator. `Y(..)` without a
//! node is allowed for single-node quivers. Arguments are products of
//! generators with `^`, `*` and `/`; `q` stands for q1 q2 and a trailing
//! `;j,k` multiplies by q1^j q2^k. Each `/` divides by the whole product
//! after it, so `x2/x1*q1` is x2 / (x1 q1).

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::{s_eval, s_r_eval, Coefficient, Gen, Monomial};
use crate::character::YMonomial;
use crate::error::{QqError, Result};
use crate::higgs::ClassicalCharacter;

#[derive(Clone, Debug, Default)]
pub struct DisplayCtx {
    pub alias: BTreeMap<String, Monomial>,
    /// Node used by a bare `Y(..)`.
    pub single_node: Option<String>,
}

pub type Summands = Vec<(Coefficient, YMonomial)>;

fn err(msg: String) -> QqError {
    QqError::Validation(msg)
}

impl DisplayCtx {
    /// Parses an argument such as `x1*q`, `x2*q1/x1` or `x;2,1`.
    pub fn arg(&self, s: &str) -> Result<Monomial> {
        let s = s.trim();
        let (body, shift) = match s.split_once(';') {
            Some((b, sh)) => {
                let (j, k) = sh.split_once(',').ok_or_else(|| err(format!("bad shift in '{s}'")))?;
                let j: i64 = j.trim().parse().map_err(|_| err(format!("bad shift in '{s}'")))?;
                let k: i64 = k.trim().parse().map_err(|_| err(format!("bad shift in '{s}'")))?;
                (b, Monomial::q1().pow(j).mul(&Monomial::q2().pow(k)))
            }
            None => (s, Monomial::one()),
        };
        let mut out = Monomial::one();
        for (n, part) in body.split('/').enumerate() {
            let m = self.product(part)?;
            out = if n == 0 { m } else { out.div(&m) };
        }
        Ok(out.mul(&shift))
    }

    fn product(&self, s: &str) -> Result<Monomial> {
        let mut out = Monomial::one();
        for atom in s.split('*') {
            let atom = atom.trim();
            let (name, e) = match atom.rsplit_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<i64>().map_err(|_| err(format!("bad exponent '{atom}'")))?),
                None => (atom, 1),
            };
            let base = match name {
                "1" | "" => Monomial::one(),
                "q" => Monomial::q(),
                _ => match self.alias.get(name) {
                    Some(m) => m.clone(),
                    None => Monomial::gen(name.parse::<Gen>()?),
                },
            };
            out = out.mul(&base.pow(e));
        }
        Ok(out)
    }

    pub fn parse(&self, s: &str) -> Result<Summands> {
        let mut p = Parser { ctx: self, src: s.as_bytes(), pos: 0, text: s };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(out)
    }

    /// Parses and merges equal monomials.
    pub fn parse_merged(&self, s: &str) -> Result<BTreeMap<YMonomial, Coefficient>> {
        let mut out: BTreeMap<YMonomial, Coefficient> = BTreeMap::new();
        for (c, ym) in self.parse(s)? {
            let e = out.entry(ym).or_insert(Coefficient::Zero);
            *e = e.add(&c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Parses a display with integer coefficients.
    pub fn parse_classical(&self, s: &str) -> Result<ClassicalCharacter> {
        let mut cc = ClassicalCharacter::default();
        for (c, ym) in self.parse(s)? {
            let n: BigInt = c.as_integer().ok_or_else(|| err(format!("coefficient {c} of {ym} is not an integer")))?;
            cc.add(ym, n);
        }
        Ok(cc)
    }
}

struct Parser<'a> {
    ctx: &'a DisplayCtx,
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> QqError {
        err(format!("{what} at byte {} of '{}'", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Summands> {
        let mut out = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            out.extend(self.term()?);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Summands> {
        let mut acc: Summands = vec![(Coefficient::one(), YMonomial::one())];
        let mut seen = false;
        loop {
            match self.peek() {
                Some(b'/') => {
                    self.pos += 1;
                    let mut any = false;
                    while let Some(b'Y') = self.peek() {
                        let y = self.y_factor()?;
                        acc = acc.into_iter().map(|(c, ym)| (c, ym.mul(&y.inv()))).collect();
                        any = true;
                    }
                    if !any {
                        return Err(self.fail("expected Y-factors after '/'"));
                    }
                    return Ok(acc);
                }
                Some(b'[') => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if self.peek() != Some(b']') {
                        return Err(self.fail("expected ']'"));
                    }
                    self.pos += 1;
                    let mut next = Vec::with_capacity(acc.len() * inner.len());
                    for (c, ym) in &acc {
                        for (c2, ym2) in &inner {
                            next.push((c.mul(c2), ym.mul(ym2)));
                        }
                    }
                    acc = next;
                }
                Some(b'Y') => {
                    let y = self.y_factor()?;
                    acc = acc.into_iter().map(|(c, ym)| (c, ym.mul(&y))).collect();
                }
                Some(b'S') => {
                    let c = self.s_factor()?;
                    acc = acc.into_iter().map(|(a, ym)| (a.mul(&c), ym)).collect();
                }
                Some(b) if b.is_ascii_digit() || b == b'-' => {
                    let n = self.int()?;
                    let c = Coefficient::from_int(n);
                    acc = acc.into_iter().map(|(a, ym)| (a.mul(&c), ym)).collect();
                }
                _ => break,
            }
            seen = true;
        }
        if !seen {
            return Err(self.fail("empty term"));
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.fail("bad integer"))
    }

    /// Text between the parenthesis at the cursor and its partner.
    fn parens(&mut self) -> Result<&str> {
        if self.src.get(self.pos) != Some(&b'(') {
            return Err(self.fail("expected '('"));
        }
        let start = self.pos + 1;
        let mut depth = 0;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos += 1;
                        return Ok(&self.text[start..self.pos - 1]);
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.fail("unclosed '('"))
    }

    fn power(&mut self) -> Result<i64> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.int()
        } else {
            Ok(1)
        }
    }

    fn y_factor(&mut self) -> Result<YMonomial> {
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b'(' && !self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let node = self.text[start..self.pos].to_string();
        let node = if node.is_empty() {
            self.ctx.single_node.clone().ok_or_else(|| self.fail("Y without node"))?
        } else {
            node
        };
        let arg = self.ctx.arg(self.parens()?)?;
        let e = self.power()?;
        let mut ym = YMonomial::one();
        ym.mul_y(&node, &arg, e);
        Ok(ym)
    }

    fn s_factor(&mut self) -> Result<Coefficient> {
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let r: u32 = if start == self.pos {
            1
        } else {
            self.text[start..self.pos].parse().map_err(|_| self.fail("bad S index"))?
        };
        let z = self.ctx.arg(self.parens()?)?;
        let e = self.power()?;
        let s = if r == 1 { s_eval(&z)? } else { s_r_eval(r, &z)? };
        let mut out = Coefficient::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&s);
        }
        if e < 0 {
            out = out.inv()?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> DisplayCtx {
        let mut alias = BTreeMap::new();
        alias.insert("x1".to_string(), Monomial::x("1", 1));
        alias.insert("x2".to_string(), Monomial::x("1", 2));
        DisplayCtx { alias, single_node: Some("1".into()) }
    }

    #[test]
    fn arguments() {
        let c = ctx();
        assert_eq!(c.arg("x1*q").unwrap(), "x(1,1)*q1*q2".parse().unwrap());
        assert_eq!(c.arg("x;2,1").unwrap(), "x*q1^2*q2".parse().unwrap());
        assert_eq!(c.arg("x2/x1*q1").unwrap(), "x(1,2)*x(1,1)^-1*q1^-1".parse().unwrap());
        assert_eq!(c.arg("x1/x2/q").unwrap(), "x(1,1)*x(1,2)^-1*q1^-1*q2^-1".parse().unwrap());
    }

    #[test]
    fn brackets_distribute() {
        let c = ctx();
        let t = c.parse("Y(x1) Y(x2) + S(x2/x1) [ Y(x2) / Y(x1*q) + 2 Y(x1) ] + 1 / Y(x1*q) Y(x2*q)").unwrap();
        assert_eq!(t.len(), 4);
        let mut want = YMonomial::y("1", &Monomial::x("1", 2));
        want.mul_y("1", &c.arg("x1*q").unwrap(), -1);
        assert_eq!(t[1].1, want);
        assert_eq!(t[1].0, s_eval(&c.arg("x2/x1").unwrap()).unwrap());
        assert_eq!(t[2].0, s_eval(&c.arg("x2/x1").unwrap()).unwrap().mul(&Coefficient::from_int(2)));
    }

    #[test]
    fn powers_and_errors() {
        let c = ctx();
        let t = c.parse("S(q1^-1)^2 Y(x)^2").unwrap();
        assert_eq!(t[0].1.exp("1", &Monomial::sym("x")), 2);
        assert!(c.parse("Y(x) +").is_err());
        assert!(c.parse("Y(x) / 2").is_err());
        assert!(c.parse("[Y(x)").is_err());
        let cc = c.parse_classical("Y(x)^2 + 2 Y(x) / Y(x;0,1) + Y(x;0,1)^-2").unwrap();
        assert_eq!(cc.len(), 3);
        assert!(c.parse_classical("S(q1^-1) Y(x)").is_err());
    }
}
