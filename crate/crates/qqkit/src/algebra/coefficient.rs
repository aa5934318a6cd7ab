use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Gen, Monomial, Subst};
use super::poly::Poly;
use crate::error::{QqError, Result};

/// scalar * unit * prod (1 - m)^e over canonical, pairwise distinct m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    scalar: BigRational,
    unit: Monomial,
    factors: BTreeMap<Monomial, i64>,
}

/// numerator / prod (1 - m)^p with every p > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct General {
    num: Poly,
    den: BTreeMap<Monomial, u32>,
}

/// Exact rational function in the generators.
#[derive(Clone, Debug)]
pub enum Coefficient {
    Zero,
    Factored(Factored),
    General(General),
}

/// Which deformation parameter is sent to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LimitGen {
    Q1,
    Q2,
}

impl LimitGen {
    pub fn gen(self) -> Gen {
        match self {
            LimitGen::Q1 => Gen::Q1,
            LimitGen::Q2 => Gen::Q2,
        }
    }
}

impl fmt::Display for LimitGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen())
    }
}

impl std::str::FromStr for LimitGen {
    type Err = QqError;

    fn from_str(s: &str) -> Result<LimitGen> {
        match s.trim() {
            "q1" => Ok(LimitGen::Q1),
            "q2" => Ok(LimitGen::Q2),
            other => Err(QqError::Validation(format!("limit must be q1 or q2, got '{other}'"))),
        }
    }
}

/// Orients m so that its leading exponent is positive; true when inverted.
fn orient(m: &Monomial) -> (Monomial, bool) {
    if m.leading_exp() < 0 {
        (m.inv(), true)
    } else {
        (m.clone(), false)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

impl Factored {
    fn one() -> Factored {
        Factored { scalar: BigRational::one(), unit: Monomial::one(), factors: BTreeMap::new() }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn unit(&self) -> &Monomial {
        &self.unit
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.factors.iter().map(|(m, e)| (m, *e))
    }

    /// Multiplies by (1 - m)^e; m must not be the unit monomial.
    fn mul_binomial(&mut self, m: &Monomial, e: i64) {
        if e == 0 {
            return;
        }
        let (m, flipped) = orient(m);
        if flipped {
            // 1 - m = -m (1 - m^-1)
            if e % 2 != 0 {
                self.scalar = -self.scalar.clone();
            }
            self.unit = self.unit.mul(&m.inv().pow(e));
        }
        let v = self.factors.entry(m.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&m);
        }
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut out = Factored {
            scalar: &self.scalar * &other.scalar,
            unit: self.unit.mul(&other.unit),
            factors: self.factors.clone(),
        };
        for (m, e) in &other.factors {
            out.mul_binomial(m, *e);
        }
        out
    }

    fn inv(&self) -> Factored {
        Factored {
            scalar: self.scalar.recip(),
            unit: self.unit.inv(),
            factors: self.factors.iter().map(|(m, e)| (m.clone(), -e)).collect(),
        }
    }

    fn to_general(&self) -> General {
        let mut num = Poly::term(self.unit.clone(), self.scalar.clone());
        let mut den = BTreeMap::new();
        for (m, e) in &self.factors {
            if *e > 0 {
                num = num.mul(&Poly::binomial(m).pow(*e as u32));
            } else {
                den.insert(m.clone(), (-e) as u32);
            }
        }
        General { num, den }
    }
}

impl General {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.den.iter().map(|(m, p)| (m, *p))
    }

    /// Builds num / prod (1 - m)^p from arbitrary non-unit m, orienting each.
    fn from_parts(mut num: Poly, parts: Vec<(Monomial, u32)>) -> General {
        let mut den: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, p) in parts {
            if p == 0 {
                continue;
            }
            let (m, flipped) = orient(&m);
            if flipped {
                // 1 / (1 - m0)^p = (-1)^p m0^-p / (1 - m0^-1)^p with m = m0^-1
                let sign = if p % 2 == 1 { -BigRational::one() } else { BigRational::one() };
                num = num.scale(&sign, &m.pow(p as i64));
            }
            *den.entry(m).or_insert(0) += p;
        }
        General { num, den }
    }

    fn den_poly_excess(&self, target: &BTreeMap<Monomial, u32>) -> Poly {
        let mut out = Poly::one();
        for (m, p) in target {
            let have = self.den.get(m).copied().unwrap_or(0);
            if *p > have {
                out = out.mul(&Poly::binomial(m).pow(p - have));
            }
        }
        out
    }

    /// Cancels common binomials and returns the tightest representation.
    fn simplify(mut self, candidates: &BTreeSet<Monomial>) -> Coefficient {
        if self.num.is_zero() {
            return Coefficient::Zero;
        }
        let den_args: Vec<Monomial> = self.den.keys().cloned().collect();
        for m in den_args {
            while self.den.get(&m).copied().unwrap_or(0) > 0 {
                match self.num.div_binomial(&m) {
                    Some(q) => {
                        self.num = q;
                        let p = self.den.get_mut(&m).unwrap();
                        *p -= 1;
                        if *p == 0 {
                            self.den.remove(&m);
                        }
                    }
                    None => break,
                }
            }
        }
        // Try to write the numerator as a monomial times known binomials.
        let mut num = self.num.clone();
        let mut extracted: Vec<Monomial> = Vec::new();
        if num.len() > 1 {
            for m in candidates {
                while num.len() > 1 {
                    match num.div_binomial(m) {
                        Some(q) => {
                            num = q;
                            extracted.push(m.clone());
                        }
                        None => break,
                    }
                }
            }
        }
        if let Some((mono, c)) = num.as_single_term() {
            let mut f = Factored { scalar: c.clone(), unit: mono.clone(), factors: BTreeMap::new() };
            for m in extracted {
                f.mul_binomial(&m, 1);
            }
            for (m, p) in &self.den {
                f.mul_binomial(m, -(*p as i64));
            }
            return Coefficient::Factored(f);
        }
        Coefficient::General(self)
    }

    fn candidates(&self) -> BTreeSet<Monomial> {
        self.den.keys().cloned().collect()
    }
}

impl Coefficient {
    pub fn zero() -> Coefficient {
        Coefficient::Zero
    }

    pub fn one() -> Coefficient {
        Coefficient::Factored(Factored::one())
    }

    pub fn from_int(n: i64) -> Coefficient {
        Coefficient::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Coefficient {
        Coefficient::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Coefficient {
        if r.is_zero() {
            return Coefficient::Zero;
        }
        Coefficient::Factored(Factored { scalar: r, ..Factored::one() })
    }

    pub fn monomial(m: Monomial) -> Coefficient {
        Coefficient::Factored(Factored { unit: m, ..Factored::one() })
    }

    /// (1 - m)^e. Zero when m = 1 and e > 0; a pole when m = 1 and e < 0.
    pub fn binomial(m: &Monomial, e: i64) -> Result<Coefficient> {
        if e == 0 {
            return Ok(Coefficient::one());
        }
        if m.is_one() {
            return if e > 0 { Ok(Coefficient::Zero) } else { Err(QqError::Pole(format!("factor (1 - 1)^{e}"))) };
        }
        let mut f = Factored::one();
        f.mul_binomial(m, e);
        Ok(Coefficient::Factored(f))
    }

    /// Builds scalar * unit * prod (1 - m)^e, reporting zeros and poles.
    pub fn from_factors(scalar: BigRational, unit: Monomial, factors: &[(Monomial, i64)]) -> Result<Coefficient> {
        if scalar.is_zero() {
            return Ok(Coefficient::Zero);
        }
        let mut f = Factored { scalar, unit, factors: BTreeMap::new() };
        let mut zero = false;
        for (m, e) in factors {
            if m.is_one() {
                if *e < 0 {
                    return Err(QqError::Pole(format!("factor (1 - 1)^{e}")));
                }
                if *e > 0 {
                    zero = true;
                }
                continue;
            }
            f.mul_binomial(m, *e);
        }
        Ok(if zero { Coefficient::Zero } else { Coefficient::Factored(f) })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Zero)
    }

    pub fn is_factored(&self) -> bool {
        !matches!(self, Coefficient::General(_))
    }

    pub fn as_factored(&self) -> Option<&Factored> {
        match self {
            Coefficient::Factored(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_general(&self) -> Option<&General> {
        match self {
            Coefficient::General(g) => Some(g),
            _ => None,
        }
    }

    /// The value when the coefficient is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coefficient::Zero => Some(BigRational::zero()),
            Coefficient::Factored(f) => (f.unit.is_one() && f.factors.is_empty()).then(|| f.scalar.clone()),
            Coefficient::General(g) => {
                if g.den.is_empty() {
                    g.num.is_constant()
                } else {
                    None
                }
            }
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_general(&self) -> General {
        match self {
            Coefficient::Zero => General { num: Poly::zero(), den: BTreeMap::new() },
            Coefficient::Factored(f) => f.to_general(),
            Coefficient::General(g) => g.clone(),
        }
    }

    fn binomial_args(&self) -> BTreeSet<Monomial> {
        match self {
            Coefficient::Zero => BTreeSet::new(),
            Coefficient::Factored(f) => f.factors.keys().cloned().collect(),
            Coefficient::General(g) => g.candidates(),
        }
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Zero, _) | (_, Coefficient::Zero) => Coefficient::Zero,
            (Coefficient::Factored(a), Coefficient::Factored(b)) => Coefficient::Factored(a.mul(b)),
            _ => {
                let a = self.to_general();
                let b = other.to_general();
                let mut den = a.den.clone();
                for (m, p) in &b.den {
                    *den.entry(m.clone()).or_insert(0) += p;
                }
                let mut cands = self.binomial_args();
                cands.extend(other.binomial_args());
                General { num: a.num.mul(&b.num), den }.simplify(&cands)
            }
        }
    }

    pub fn inv(&self) -> Result<Coefficient> {
        match self {
            Coefficient::Zero => Err(QqError::Pole("inverse of zero".into())),
            Coefficient::Factored(f) => Ok(Coefficient::Factored(f.inv())),
            Coefficient::General(g) => {
                // Only invertible in closed form when the numerator factors.
                let cands = g.candidates();
                match (General { num: g.num.clone(), den: BTreeMap::new() }).simplify(&cands) {
                    Coefficient::Factored(nf) => {
                        let den = Coefficient::Factored(nf.inv());
                        let mut out = Factored::one();
                        for (m, p) in &g.den {
                            out.mul_binomial(m, *p as i64);
                        }
                        Ok(den.mul(&Coefficient::Factored(out)))
                    }
                    _ => Err(QqError::NonFactoredLimit(format!(
                        "cannot invert unfactored numerator {}",
                        g.num_display()
                    ))),
                }
            }
        }
    }

    pub fn div(&self, other: &Coefficient) -> Result<Coefficient> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn neg(&self) -> Coefficient {
        self.mul(&Coefficient::from_int(-1))
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Zero, x) | (x, Coefficient::Zero) => x.clone(),
            (Coefficient::Factored(a), Coefficient::Factored(b)) if a.unit == b.unit && a.factors == b.factors => {
                let s = &a.scalar + &b.scalar;
                if s.is_zero() {
                    Coefficient::Zero
                } else {
                    Coefficient::Factored(Factored { scalar: s, ..a.clone() })
                }
            }
            _ => {
                let a = self.to_general();
                let b = other.to_general();
                let mut den = a.den.clone();
                for (m, p) in &b.den {
                    let e = den.entry(m.clone()).or_insert(0);
                    *e = (*e).max(*p);
                }
                let num = a.num.mul(&a.den_poly_excess(&den)).add(&b.num.mul(&b.den_poly_excess(&den)));
                let mut cands = self.binomial_args();
                cands.extend(other.binomial_args());
                General { num, den }.simplify(&cands)
            }
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    /// Exact equality by cross-multiplication.
    pub fn exact_eq(&self, other: &Coefficient) -> bool {
        match (self, other) {
            (Coefficient::Zero, Coefficient::Zero) => true,
            (Coefficient::Zero, _) | (_, Coefficient::Zero) => false,
            (Coefficient::Factored(a), Coefficient::Factored(b)) if a == b => true,
            _ => {
                let a = self.to_general();
                let b = other.to_general();
                let mut den = a.den.clone();
                for (m, p) in &b.den {
                    let e = den.entry(m.clone()).or_insert(0);
                    *e = (*e).max(*p);
                }
                a.num.mul(&a.den_poly_excess(&den)) == b.num.mul(&b.den_poly_excess(&den))
            }
        }
    }

    /// Substitutes generators by monomials.
    pub fn specialize(&self, sigma: &Subst) -> Result<Coefficient> {
        match self {
            Coefficient::Zero => Ok(Coefficient::Zero),
            Coefficient::Factored(f) => {
                let parts: Vec<(Monomial, i64)> = f.factors.iter().map(|(m, e)| (m.substitute(sigma), *e)).collect();
                if let Some((m, e)) = f.factors.iter().find(|(m, e)| **e < 0 && m.substitute(sigma).is_one()) {
                    return Err(QqError::Pole(format!(
                        "denominator factor (1 - {m})^{} vanishes under the substitution",
                        -e
                    )));
                }
                Coefficient::from_factors(f.scalar.clone(), f.unit.substitute(sigma), &parts)
            }
            Coefficient::General(g) => {
                let mut parts = Vec::new();
                for (m, p) in &g.den {
                    let m2 = m.substitute(sigma);
                    if m2.is_one() {
                        return Err(QqError::Pole(format!(
                            "denominator factor (1 - {m})^{p} vanishes under the substitution"
                        )));
                    }
                    parts.push((m2, *p));
                }
                let out = General::from_parts(g.num.substitute(sigma), parts);
                let cands = out.candidates();
                Ok(out.simplify(&cands))
            }
        }
    }

    /// Net number of binomial factors that become (1 - 1) under `sigma`:
    /// positive means the specialization vanishes, negative means a pole.
    /// None for non-factored coefficients.
    pub fn vanishing_order(&self, sigma: &Subst) -> Option<i64> {
        let f = self.as_factored()?;
        Some(f.factors.iter().filter(|(m, _)| m.substitute(sigma).is_one()).map(|(_, e)| *e).sum())
    }

    /// Limit as the chosen generator tends to 1.
    pub fn limit_at_unity(&self, which: LimitGen) -> Result<Coefficient> {
        let g = which.gen();
        match self {
            Coefficient::Zero => Ok(Coefficient::Zero),
            Coefficient::Factored(f) => {
                let mut order = 0i64;
                let mut scalar = f.scalar.clone();
                let mut rest: Vec<(Monomial, i64)> = Vec::new();
                for (m, e) in &f.factors {
                    let a = m.exp(&g);
                    let others = m.without(&g);
                    if others.is_one() {
                        // 1 - g^a ~ -a (g - 1)
                        order += e;
                        scalar *= rat_pow(&rat(-a), *e);
                    } else {
                        rest.push((others, *e));
                    }
                }
                match order.cmp(&0) {
                    std::cmp::Ordering::Greater => Ok(Coefficient::Zero),
                    std::cmp::Ordering::Less => {
                        Err(QqError::Pole(format!("limit {which} -> 1 of {self} diverges (order {order})")))
                    }
                    std::cmp::Ordering::Equal => Coefficient::from_factors(scalar, f.unit.without(&g), &rest),
                }
            }
            Coefficient::General(gen) => {
                let (kn, cn) = gen.num.taylor_at_one(&g).expect("general numerator is nonzero");
                let mut kd = 0i64;
                let mut scalar = BigRational::one();
                let mut parts = Vec::new();
                for (m, p) in &gen.den {
                    let a = m.exp(&g);
                    let others = m.without(&g);
                    if others.is_one() {
                        kd += *p as i64;
                        scalar *= rat_pow(&rat(-a), *p as i64);
                    } else {
                        parts.push((others, *p));
                    }
                }
                let order = kn as i64 - kd;
                match order.cmp(&0) {
                    std::cmp::Ordering::Greater => Ok(Coefficient::Zero),
                    std::cmp::Ordering::Less => {
                        Err(QqError::Pole(format!("limit {which} -> 1 of {self} diverges (order {order})")))
                    }
                    std::cmp::Ordering::Equal => {
                        let num = cn.scale(&scalar.recip(), &Monomial::one());
                        let out = General::from_parts(num, parts);
                        let cands = out.candidates();
                        Ok(out.simplify(&cands))
                    }
                }
            }
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Coefficient::Zero => "0".into(),
            Coefficient::Factored(f) => {
                let mut num: Vec<String> = Vec::new();
                let mut den: Vec<String> = Vec::new();
                for (m, e) in &f.factors {
                    let base = format!("(1 - {})", m.latex());
                    let p = e.unsigned_abs();
                    let s = if p == 1 { base } else { format!("{base}^{{{p}}}") };
                    if *e > 0 {
                        num.push(s);
                    } else {
                        den.push(s);
                    }
                }
                let mut prefix = String::new();
                let s = &f.scalar;
                let unit_one = f.unit.is_one();
                let bare = num.is_empty() && den.is_empty() && unit_one;
                if s.is_negative() {
                    prefix.push('-');
                }
                let abs = s.abs();
                if bare || !abs.is_one() {
                    if abs.is_integer() {
                        prefix.push_str(&abs.to_integer().to_string());
                    } else {
                        prefix.push_str(&format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom()));
                    }
                }
                if !unit_one {
                    if !prefix.is_empty() && !prefix.ends_with('-') {
                        prefix.push(' ');
                    }
                    prefix.push_str(&f.unit.latex());
                }
                let body = match (num.is_empty(), den.is_empty()) {
                    (true, true) => String::new(),
                    (false, true) => num.join(" "),
                    (n, false) => {
                        let top = if n { "1".to_string() } else { num.join(" ") };
                        format!("\\frac{{{}}}{{{}}}", top, den.join(" "))
                    }
                };
                match (prefix.is_empty() || prefix == "-", body.is_empty()) {
                    (_, true) => prefix,
                    (true, false) => format!("{prefix}{body}"),
                    (false, false) => format!("{prefix} {body}"),
                }
            }
            Coefficient::General(g) => {
                let den: Vec<String> = g
                    .den
                    .iter()
                    .map(|(m, p)| {
                        let base = format!("(1 - {})", m.latex());
                        if *p == 1 {
                            base
                        } else {
                            format!("{base}^{{{p}}}")
                        }
                    })
                    .collect();
                let num = poly_latex(&g.num);
                if den.is_empty() {
                    format!("({num})")
                } else {
                    format!("\\frac{{{num}}}{{{}}}", den.join(" "))
                }
            }
        }
    }
}

fn poly_latex(p: &Poly) -> String {
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if i > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let a = c.abs();
        let coeff = if a.is_integer() {
            a.to_integer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        if m.is_one() {
            out.push_str(&coeff);
        } else if a.is_one() {
            out.push_str(&m.latex());
        } else {
            out.push_str(&format!("{coeff} {}", m.latex()));
        }
    }
    out
}

impl General {
    fn num_display(&self) -> String {
        let terms: Vec<String> = self.num.terms().map(|(m, c)| format!("{c}*{m}")).collect();
        terms.join(" + ")
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Coefficient) -> bool {
        self.exact_eq(other)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Zero => write!(f, "0"),
            Coefficient::Factored(fa) => {
                let mut parts = vec![fa.scalar.to_string()];
                if !fa.unit.is_one() {
                    parts.push(fa.unit.to_string());
                }
                for (m, e) in &fa.factors {
                    parts.push(format!("(1 - {m})^{e}"));
                }
                write!(f, "{}", parts.join(" * "))
            }
            Coefficient::General(g) => {
                let den: Vec<String> = g.den.iter().map(|(m, p)| format!("(1 - {m})^{p}")).collect();
                write!(f, "({}) / ({})", g.num_display(), den.join(" * "))
            }
        }
    }
}

/// S(z) = (1 - z/q1)(1 - z/q2) / ((1 - z)(1 - z/q)).
pub fn s_eval(z: &Monomial) -> Result<Coefficient> {
    s_r_eval(1, z)
}

/// S_r(z) = (1 - z/q1^r)(1 - z/q2) / ((1 - z)(1 - z/(q1^r q2))), equal to
/// prod_{s<r} S(z q1^-s).
pub fn s_r_eval(r: u32, z: &Monomial) -> Result<Coefficient> {
    assert!(r >= 1, "S_r needs r >= 1");
    let q1r = Monomial::q1().pow(r as i64);
    let q2 = Monomial::q2();
    let top = q1r.mul(&q2);
    if z.is_one() || *z == top {
        return Err(QqError::Pole(format!("S_{r}({z}) sits on a pole")));
    }
    Coefficient::from_factors(
        BigRational::one(),
        Monomial::one(),
        &[(z.div(&q1r), 1), (z.div(&q2), 1), (z.clone(), -1), (z.div(&top), -1)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn int(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn s_times_inverse_is_one() {
        let s = s_eval(&mono("x(1,2)*x(1,1)^-1")).unwrap();
        assert_eq!(s.mul(&s.inv().unwrap()), Coefficient::one());
    }

    #[test]
    fn zero_absorbs() {
        assert!(s_eval(&Monomial::q3()).unwrap().mul(&Coefficient::Zero).is_zero());
    }

    #[test]
    fn s_zeros_and_poles() {
        assert!(s_eval(&Monomial::q1()).unwrap().is_zero());
        assert!(s_eval(&Monomial::q2()).unwrap().is_zero());
        assert!(matches!(s_eval(&Monomial::one()), Err(QqError::Pole(_))));
        assert!(matches!(s_eval(&Monomial::q()), Err(QqError::Pole(_))));
    }

    #[test]
    fn s_of_inverse_q1_matches_display() {
        // (1 + q1^-1)(1 - q1^-1 q2^-1) / (1 - q1^-2 q2^-1)
        let s = s_eval(&mono("q1^-1")).unwrap();
        let one_plus = Coefficient::General(General {
            num: Poly::one().add(&Poly::term(mono("q1^-1"), BigRational::one())),
            den: BTreeMap::new(),
        });
        let rest = Coefficient::from_factors(
            BigRational::one(),
            Monomial::one(),
            &[(mono("q1^-1*q2^-1"), 1), (mono("q1^-2*q2^-1"), -1)],
        )
        .unwrap();
        assert_eq!(s, one_plus.mul(&rest));
    }

    #[test]
    fn s_r_degenerate_and_zeros() {
        let z = mono("x*q2^3");
        assert_eq!(s_r_eval(1, &z).unwrap(), s_eval(&z).unwrap());
        assert!(s_r_eval(2, &mono("q1^2")).unwrap().is_zero());
        assert!(s_r_eval(2, &Monomial::q2()).unwrap().is_zero());
    }

    #[test]
    fn s_r_is_product_of_shifted_s() {
        let z = mono("x*q1^-1");
        let prod = s_eval(&z).unwrap().mul(&s_eval(&z.div(&Monomial::q1())).unwrap());
        assert_eq!(s_r_eval(2, &z).unwrap(), prod);
    }

    #[test]
    fn s_product_merges_factors() {
        // S(q1^-1) S(q1^-2) = S_2(q1^-1), and the merged product stays factored.
        let p = s_eval(&mono("q1^-1")).unwrap().mul(&s_eval(&mono("q1^-2")).unwrap());
        assert!(p.is_factored());
        assert_eq!(p, s_r_eval(2, &mono("q1^-1")).unwrap());
    }

    #[test]
    fn addition_basics() {
        let c = s_eval(&mono("q1^-1")).unwrap();
        assert_eq!(c.add(&Coefficient::Zero), c);
        assert_eq!(int(1).add(&int(1)), int(2));
        assert!(c.add(&c.mul(&int(-1))).is_zero());
    }

    #[test]
    fn addition_refactors_over_common_denominator() {
        // 1/(1-x) - x/(1-x) = 1
        let x = mono("x");
        let a = Coefficient::binomial(&x, -1).unwrap();
        let b = a.mul(&Coefficient::monomial(x.clone()));
        assert_eq!(a.sub(&b).as_integer(), Some(BigInt::from(1)));
    }

    #[test]
    fn specialization_zero_and_value() {
        let s = s_eval(&mono("x(1,2)*x(1,1)^-1")).unwrap();
        let mut sigma = Subst::new();
        sigma.insert(Gen::x("1", 1), mono("x"));
        sigma.insert(Gen::x("1", 2), mono("x*q1"));
        assert!(s.specialize(&sigma).unwrap().is_zero());
        let t = s_eval(&mono("x(1,1)*x(1,2)^-1")).unwrap();
        assert_eq!(t.specialize(&sigma).unwrap(), s_eval(&mono("q1^-1")).unwrap());
        assert_eq!(t.specialize(&Subst::new()).unwrap(), t);
    }

    #[test]
    fn specialization_pole() {
        let s = s_eval(&mono("x(1,2)*x(1,1)^-1")).unwrap();
        let mut sigma = Subst::new();
        sigma.insert(Gen::x("1", 2), mono("x(1,1)*q1*q2"));
        assert!(matches!(s.specialize(&sigma), Err(QqError::Pole(_))));
    }

    fn lim(z: &str, r: u32, w: LimitGen) -> Coefficient {
        s_r_eval(r, &mono(z)).unwrap().limit_at_unity(w).unwrap()
    }

    #[test]
    fn reference_limits() {
        use LimitGen::*;
        assert_eq!(lim("q1^-1", 1, Q1), int(2));
        assert_eq!(lim("q1^-1", 1, Q2), int(1));
        assert_eq!(lim("q2^-1", 1, Q1), int(1));
        assert_eq!(lim("q2^-1", 1, Q2), int(2));
        assert_eq!(lim("q1^-1", 2, Q1), int(3));
        assert_eq!(lim("q1^-1", 2, Q2), int(1));
        assert_eq!(lim("q1", 2, Q1), int(-1));
        assert_eq!(lim("q1", 2, Q2), int(1));
        assert_eq!(lim("q1^-2", 2, Q1), int(2));
        assert_eq!(lim("q1^-2", 2, Q2), int(1));
        assert_eq!(lim("q1^-2*q2^-1", 1, Q1), int(1));
        assert_eq!(lim("q1^-2*q2^-1", 1, Q2), int(1));
    }

    #[test]
    fn s2_at_q1_closed_form() {
        // S_2(q1) = -q1^-1 (1 - q1 q2^-1) / (1 - q1^-1 q2^-1)
        let expected =
            Coefficient::from_factors(rat(-1), mono("q1^-1"), &[(mono("q1*q2^-1"), 1), (mono("q1^-1*q2^-1"), -1)])
                .unwrap();
        assert_eq!(s_r_eval(2, &Monomial::q1()).unwrap(), expected);
    }

    #[test]
    fn limit_of_general_form() {
        // (1 - q1^2) / (1 - q1) written as the sum 1 + q1 -> 2 at q1 = 1.
        let c = int(1).add(&Coefficient::monomial(Monomial::q1()));
        assert!(!c.is_factored());
        assert_eq!(c.limit_at_unity(LimitGen::Q1).unwrap(), int(2));
    }

    #[test]
    fn limit_pole_detected() {
        let c = Coefficient::binomial(&Monomial::q1(), -1).unwrap();
        assert!(matches!(c.limit_at_unity(LimitGen::Q1), Err(QqError::Pole(_))));
        let z = Coefficient::binomial(&Monomial::q1(), 1).unwrap();
        assert!(z.limit_at_unity(LimitGen::Q1).unwrap().is_zero());
    }
}
