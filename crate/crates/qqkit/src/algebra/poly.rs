use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Gen, Monomial, Subst};

/// Sparse Laurent polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Monomial, BigRational>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    pub fn one() -> Poly {
        Poly::term(Monomial::one(), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// 1 - m
    pub fn binomial(m: &Monomial) -> Poly {
        let mut p = Poly::one();
        p.add_term(m.clone(), -BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.0.iter()
    }

    /// The single term when the polynomial is a monomial times a scalar.
    pub fn as_single_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let zero_after = {
            let v = self.0.entry(m.clone()).or_insert_with(BigRational::zero);
            *v += c;
            v.is_zero()
        };
        if zero_after {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, v)| (k.mul(m), v * c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn substitute(&self, sigma: &Subst) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            out.add_term(m.substitute(sigma), c.clone());
        }
        out
    }

    /// Exact quotient by (1 - m), or None when (1 - m) does not divide.
    ///
    /// Monomials are grouped into chains base * m^k; along each chain the
    /// quotient coefficients are the partial sums, and divisibility means
    /// every chain sums to zero.
    pub fn div_binomial(&self, m: &Monomial) -> Option<Poly> {
        let (pivot, step) = m.iter().next().map(|(g, e)| (g.clone(), *e))?;
        let mut chains: BTreeMap<Monomial, BTreeMap<i64, BigRational>> = BTreeMap::new();
        for (mono, c) in &self.0 {
            let k = mono.exp(&pivot).div_euclid(step);
            let base = mono.mul(&m.pow(-k));
            chains.entry(base).or_default().insert(k, c.clone());
        }
        let mut out = Poly::zero();
        for (base, coeffs) in chains {
            let total: BigRational = coeffs.values().cloned().sum();
            if !total.is_zero() {
                return None;
            }
            let lo = *coeffs.keys().next().unwrap();
            let hi = *coeffs.keys().next_back().unwrap();
            let mut acc = BigRational::zero();
            for k in lo..hi {
                if let Some(c) = coeffs.get(&k) {
                    acc += c;
                }
                out.add_term(base.mul(&m.pow(k)), acc.clone());
            }
        }
        Some(out)
    }

    /// Vanishing order at g = 1 and the leading Taylor coefficient in (g - 1).
    ///
    /// The k-th coefficient is sum_e c_e * binom(e, k), where binom is the
    /// generalised binomial coefficient valid for negative e. Returns None for
    /// the zero polynomial.
    pub fn taylor_at_one(&self, g: &Gen) -> Option<(u32, Poly)> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0u32;
        loop {
            let mut out = Poly::zero();
            for (m, c) in &self.0 {
                let b = gen_binomial(m.exp(g), k);
                if !b.is_zero() {
                    out.add_term(m.without(g), c * BigRational::from_integer(b));
                }
            }
            if !out.is_zero() {
                return Some((k, out));
            }
            k += 1;
        }
    }

    /// The value when the polynomial is constant.
    pub fn is_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_sign_positive(&self) -> bool {
        self.0.values().next().map(|c| c.is_positive()).unwrap_or(true)
    }
}

/// binom(e, k) = e (e-1) ... (e-k+1) / k! for any integer e.
pub(crate) fn gen_binomial(e: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(e - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}
