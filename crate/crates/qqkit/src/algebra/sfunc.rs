//! Rewriting factored coefficients as products of S-functions for display.

use num_traits::{One, Signed};

use super::coefficient::{s_r_eval, Coefficient};
use super::monomial::{Gen, Monomial};

/// One S_r(z)^e block of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFactor {
    pub r: u32,
    pub z: Monomial,
    pub e: i64,
}

fn weight(c: &Coefficient) -> i64 {
    c.as_factored().map_or(i64::MAX, |f| f.factors().map(|(_, e)| e.abs()).sum())
}

fn cost(z: &Monomial) -> (i64, i64, Monomial) {
    (z.exp(&Gen::Q1).abs() + z.exp(&Gen::Q2).abs(), z.exp(&Gen::Mu).abs(), z.clone())
}

/// S_r(z) = S_r(q1^r q2 / z); returns the simpler of the two arguments.
fn representative(r: u32, z: &Monomial) -> Monomial {
    let refl = Monomial::q1().pow(r as i64).mul(&Monomial::q2()).div(z);
    if cost(&refl) < cost(z) {
        refl
    } else {
        z.clone()
    }
}

/// Greedily peels S_r(z)^{+-1} blocks, r <= max_r, off a factored
/// coefficient. Returns the blocks and the remaining coefficient.
pub fn s_decompose(c: &Coefficient, max_r: u32) -> (Vec<SFactor>, Coefficient) {
    let mut rest = c.clone();
    let mut out: Vec<SFactor> = Vec::new();
    'outer: while let Some(f) = rest.as_factored() {
        let args: Vec<Monomial> = f.factors().map(|(m, _)| m.clone()).collect();
        for r in (1..=max_r.max(1)).rev() {
            let q1r = Monomial::q1().pow(r as i64);
            let shifts = [Monomial::one(), q1r.clone(), Monomial::q2(), q1r.mul(&Monomial::q2())];
            for m in &args {
                for base in [m.clone(), m.inv()] {
                    for sh in &shifts {
                        let z = base.mul(sh);
                        let Ok(s) = s_r_eval(r, &z) else { continue };
                        if s.is_zero() || weight(&s) != 4 {
                            continue;
                        }
                        for e in [-1i64, 1] {
                            let cand = if e < 0 { rest.mul(&s) } else { rest.div(&s).unwrap() };
                            if weight(&cand) == weight(&rest) - 4 {
                                let z = representative(r, &z);
                                match out.iter_mut().find(|b| b.r == r && b.z == z) {
                                    Some(b) => b.e += e,
                                    None => out.push(SFactor { r, z, e }),
                                }
                                rest = cand;
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    out.retain(|b| b.e != 0);
    (out, rest)
}

fn arg_latex(z: &Monomial) -> String {
    let num: Vec<(Gen, i64)> = z.iter().filter(|(_, e)| **e > 0).map(|(g, e)| (g.clone(), *e)).collect();
    let den: Vec<(Gen, i64)> = z.iter().filter(|(_, e)| **e < 0).map(|(g, e)| (g.clone(), -e)).collect();
    let num = Monomial::from_pairs(num);
    let den = Monomial::from_pairs(den);
    if den.is_one() {
        num.latex()
    } else if num.is_one() && den.len() == 1 {
        z.latex()
    } else {
        format!("\\frac{{{}}}{{{}}}", num.latex(), den.latex())
    }
}

/// LaTeX in terms of S-functions, falling back to plain factors for the
/// part that does not decompose.
pub fn latex_s(c: &Coefficient, max_r: u32) -> String {
    if c.as_factored().is_none() {
        return c.latex();
    }
    let (blocks, rest) = s_decompose(c, max_r);
    if blocks.is_empty() {
        return c.latex();
    }
    let mut parts: Vec<String> = Vec::new();
    for b in &blocks {
        let name = if b.r == 1 { "\\mathscr{S}".to_string() } else { format!("\\mathscr{{S}}_{{{}}}", b.r) };
        let body = format!("{name}\\left({}\\right)", arg_latex(&b.z));
        parts.push(if b.e == 1 { body } else { format!("{body}^{{{}}}", b.e) });
    }
    let f = rest.as_factored().expect("quotient of factored coefficients");
    let mut prefix = String::new();
    if f.factors().next().is_some() || !f.unit().is_one() {
        let unit_only = f.scalar().is_one() && f.factors().next().is_none();
        prefix = if unit_only { f.unit().latex() } else { rest.latex() };
    } else if f.scalar().is_negative() && f.scalar().abs().is_one() {
        prefix = "-".into();
    } else if !f.scalar().is_one() {
        prefix = rest.latex();
    }
    if prefix.is_empty() || prefix == "-" {
        format!("{prefix}{}", parts.join(" "))
    } else {
        format!("{prefix} {}", parts.join(" "))
    }
}
