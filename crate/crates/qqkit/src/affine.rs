//! Partition sums for the cyclic quivers and their truncations.
//!
//! Cells are addressed as (row, col), both starting at 1. Row k of a
//! partition has lambda_k cells and runs along q4; columns run along q3, so
//! the cell (row, col) carries x q3^{row-1} q4^{col-1}. The colour of a cell
//! is row - col mod r.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{s_eval, Coefficient, Gen, Monomial, Subst};
use crate::character::{Character, CharacterMeta, Term, WeightConfig, YMonomial};
use crate::error::{QqError, Result};
use crate::quiver::Quiver;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Arm, leg and hook of a cell relative to a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxStats {
    pub row: u32,
    pub col: u32,
    pub arm: i64,
    pub leg: i64,
    pub hook: i64,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(QqError::Validation(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    /// lambda_k, 1-based, zero past the last row.
    pub fn part(&self, k: u32) -> u32 {
        if k == 0 {
            return 0;
        }
        self.parts.get(k as usize - 1).copied().unwrap_or(0)
    }

    /// The transpose lambda^T, with lambda^T_k = #{i : lambda_i >= k}.
    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first).map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32).collect();
        Partition { parts }
    }

    pub fn contains(&self, row: u32, col: u32) -> bool {
        row >= 1 && col >= 1 && self.part(row) >= col
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 1..=p {
                out.push((r as u32 + 1, c));
            }
        }
        out
    }

    /// Cells that can be added keeping a partition.
    pub fn addable(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for row in 1..=self.rows() + 1 {
            let col = self.part(row) + 1;
            if row == 1 || self.part(row - 1) >= col {
                out.push((row, col));
            }
        }
        out
    }

    /// Cells that can be removed keeping a partition.
    pub fn removable(&self) -> Vec<(u32, u32)> {
        (1..=self.rows()).filter(|&row| self.part(row) > self.part(row + 1)).map(|row| (row, self.part(row))).collect()
    }

    /// All partitions of n, in reverse lexicographic order.
    pub fn of_size(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::of_size).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// arm = lambda_row - col, leg = lambda^T_col - row, hook = arm + leg + 1.
/// The cell need not lie in the partition.
pub fn box_stats(lambda: &Partition, cell: (u32, u32)) -> BoxStats {
    let (arm, leg) = arm_leg(lambda, lambda, cell);
    BoxStats { row: cell.0, col: cell.1, arm, leg, hook: arm + leg + 1 }
}

/// Arm measured in `a`, leg measured in `b`.
fn arm_leg(a: &Partition, b: &Partition, cell: (u32, u32)) -> (i64, i64) {
    let (row, col) = cell;
    let arm = a.part(row) as i64 - col as i64;
    let leg = b.transpose().part(col) as i64 - row as i64;
    (arm, leg)
}

fn q3() -> Monomial {
    Monomial::q3()
}

fn q4() -> Monomial {
    Monomial::q4()
}

/// q3^a q4^b.
fn q34(a: i64, b: i64) -> Monomial {
    q3().pow(a).mul(&q4().pow(b))
}

/// Spectral parameter of a cell: x q3^{row-1} q4^{col-1}.
pub fn cell_arg(x: &Monomial, cell: (u32, u32)) -> Monomial {
    x.mul(&q34(cell.0 as i64 - 1, cell.1 as i64 - 1))
}

pub fn color(cell: (u32, u32), r: u32) -> u32 {
    (cell.0 as i64 - cell.1 as i64).rem_euclid(r as i64) as u32
}

fn in_rz(n: i64, r: u32) -> bool {
    n.rem_euclid(r as i64) == 0
}

/// prod_{s in lambda} S(q3^{leg+1} q4^{-arm}).
pub fn z_a0(lambda: &Partition) -> Result<Coefficient> {
    z_ar(lambda, 1)
}

/// The same product with the inverted arguments S(q3^{-leg} q4^{arm+1}).
pub fn z_a0_alt(lambda: &Partition) -> Result<Coefficient> {
    z_ar_alt(lambda, 1)
}

/// prod over cells with hook in rZ of S(q3^{leg+1} q4^{-arm}).
pub fn z_ar(lambda: &Partition, r: u32) -> Result<Coefficient> {
    let mut c = Coefficient::one();
    for cell in lambda.cells() {
        let b = box_stats(lambda, cell);
        if in_rz(b.hook, r) {
            c = c.mul(&s_eval(&q34(b.leg + 1, -b.arm))?);
        }
    }
    Ok(c)
}

pub fn z_ar_alt(lambda: &Partition, r: u32) -> Result<Coefficient> {
    let mut c = Coefficient::one();
    for cell in lambda.cells() {
        let b = box_stats(lambda, cell);
        if in_rz(b.hook, r) {
            c = c.mul(&s_eval(&q34(-b.leg, b.arm + 1))?);
        }
    }
    Ok(c)
}

/// One component of a partition tuple: node, spectral parameter, partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub node: u32,
    pub x: Monomial,
    pub lambda: Partition,
}

/// Pair factor between components a < b, with the colour shift i_a - i_b.
fn pair_factor(a: &Component, b: &Component, r: u32) -> Result<Coefficient> {
    let ratio = b.x.div(&a.x);
    let shift = a.node as i64 - b.node as i64;
    let mut c = Coefficient::one();
    for cell in a.lambda.cells() {
        let (arm, leg) = arm_leg(&a.lambda, &b.lambda, cell);
        if in_rz(arm + leg + 1 - shift, r) {
            c = c.mul(&s_eval(&ratio.mul(&q34(leg + 1, -arm)))?);
        }
    }
    for cell in b.lambda.cells() {
        let (arm, leg) = arm_leg(&b.lambda, &a.lambda, cell);
        if in_rz(arm + leg + 1 + shift, r) {
            c = c.mul(&s_eval(&ratio.mul(&q34(-leg, arm + 1)))?);
        }
    }
    Ok(c)
}

/// Full tuple weight: diagonal factors times all pair factors.
pub fn z_ar_tuple(comps: &[Component], r: u32) -> Result<Coefficient> {
    let mut c = Coefficient::one();
    for a in comps {
        c = c.mul(&z_ar(&a.lambda, r)?);
    }
    for (k, a) in comps.iter().enumerate() {
        for b in &comps[k + 1..] {
            c = c.mul(&pair_factor(a, b, r)?);
        }
    }
    Ok(c)
}

pub fn z_a0_tuple(lambdas: &[Partition], xs: &[Monomial]) -> Result<Coefficient> {
    if lambdas.len() != xs.len() {
        return Err(QqError::Validation("partition and parameter counts differ".into()));
    }
    let comps: Vec<Component> =
        lambdas.iter().zip(xs).map(|(l, x)| Component { node: 0, x: x.clone(), lambda: l.clone() }).collect();
    z_ar_tuple(&comps, 1)
}

/// Y-monomial of one component: addable cells in the numerator, removable
/// cells shifted by q in the denominator.
fn component_y(comp: &Component, r: u32, ids: &[String]) -> YMonomial {
    let mut ym = YMonomial::one();
    let node = |cell| &ids[((color(cell, r) + comp.node) % r) as usize];
    for cell in comp.lambda.addable() {
        ym.mul_y(node(cell), &cell_arg(&comp.x, cell), 1);
    }
    for cell in comp.lambda.removable() {
        ym.mul_y(node(cell), &cell_arg(&comp.x, cell).mul(&Monomial::q()), -1);
    }
    ym
}

/// Counting weight prod_{cells} qfrak(colour + node).
fn counting_weight(comp: &Component, r: u32, ids: &[String]) -> Monomial {
    let mut m = Monomial::one();
    for cell in comp.lambda.cells() {
        let id = &ids[((color(cell, r) + comp.node) % r) as usize];
        m = m.mul(&Monomial::gen(Gen::qfrak(id)));
    }
    m
}

/// All tuples of partitions of total size at most n with `k` components.
pub fn tuples_up_to(k: usize, n: u32) -> Vec<Vec<Partition>> {
    fn rec(k: usize, n: u32, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for p in Partition::up_to(n) {
            let s = p.size();
            cur.push(p);
            rec(k - 1, n - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, &mut Vec::new(), &mut out);
    out
}

/// Node count r of a cyclic quiver, or an error for anything else.
pub fn cyclic_rank(q: &Quiver) -> Result<u32> {
    let r = q.nodes.len() as u32;
    let expected = Quiver::cyclic(r)?;
    let same = q.nodes.iter().zip(&expected.nodes).all(|(a, b)| a.id == b.id && a.d == b.d)
        && q.edges.len() == expected.edges.len()
        && expected.edges.iter().all(|e| q.edges.contains(e));
    if !same {
        return Err(QqError::Validation(format!("{} is not a cyclic quiver", q.name)));
    }
    Ok(r)
}

/// The character as a sum over partition tuples of total size <= max_qdeg.
pub fn affine_character(q: &Quiver, wc: &WeightConfig, max_qdeg: u32) -> Result<Character> {
    let r = cyclic_rank(q)?;
    let ids: Vec<String> = q.nodes.iter().map(|n| n.id.clone()).collect();
    let mut base: Vec<(u32, Monomial)> = Vec::new();
    for (id, ps) in &wc.params {
        let node = ids.iter().position(|i| i == id).expect("weight config matches quiver") as u32;
        for x in ps {
            base.push((node, x.clone()));
        }
    }
    let mut ch = Character::new(CharacterMeta { quiver: q.name.clone(), w: wc.w(), d_max: 1 });
    for lambdas in tuples_up_to(base.len(), max_qdeg) {
        let comps: Vec<Component> = base
            .iter()
            .zip(&lambdas)
            .map(|((node, x), l)| Component { node: *node, x: x.clone(), lambda: l.clone() })
            .collect();
        let z = z_ar_tuple(&comps, r)?;
        if z.is_zero() {
            continue;
        }
        let mut ym = YMonomial::one();
        let mut weight = Monomial::one();
        for c in &comps {
            ym = ym.mul(&component_y(c, r, &ids));
            weight = weight.mul(&counting_weight(c, r, &ids));
        }
        let qdeg: u32 = lambdas.iter().map(Partition::size).sum();
        let coeff = z.mul(&Coefficient::monomial(weight));
        if let Some(t) = ch.terms.get(&ym) {
            return Err(QqError::YCollision(format!("{ym} arises twice (first at degree {})", t.qdeg)));
        }
        ch.terms.insert(ym, Term { coeff, qdeg, depth: qdeg });
    }
    Ok(ch)
}

/// True iff the cell (i, j) is not in lambda.
pub fn pit_filter(lambda: &Partition, pit: (u32, u32)) -> bool {
    !lambda.contains(pit.0, pit.1)
}

/// Checks the residue condition i + j - 1 in rZ for a pit.
pub fn check_pit(pit: (u32, u32), r: u32) -> Result<()> {
    if pit.0 == 0 || pit.1 == 0 {
        return Err(QqError::InvalidPit(format!("pit {pit:?} must have positive entries")));
    }
    if !in_rz(pit.0 as i64 + pit.1 as i64 - 1, r) {
        return Err(QqError::InvalidPit(format!("pit {pit:?}: i + j - 1 is not a multiple of {r}")));
    }
    Ok(())
}

/// Which of q1, q2 the resonance is tuned to.
pub use crate::algebra::LimitGen as ResonanceGen;

/// Auxiliary generator standing for q4 after a resonance substitution.
pub fn q4_symbol() -> Gen {
    Gen::sym("q4")
}

/// The substitution realising q3^i q4^{1-j} = q_m with q3, q4 kept free:
/// mu stays q3, the new symbol `q4` is q4, and q1, q2 are rewritten.
pub fn pit_resonance(pit: (u32, u32), m: ResonanceGen) -> Subst {
    let (i, j) = (pit.0 as i64, pit.1 as i64);
    let u = Monomial::gen(q4_symbol());
    let mu = Monomial::mu();
    // q_m = q3^i q4^{1-j}; the other one is q / q_m with q = q3 q4.
    let qm = mu.pow(i).mul(&u.pow(1 - j));
    let other = mu.mul(&u).div(&qm);
    let (a, b) = match m {
        ResonanceGen::Q1 => (qm, other),
        ResonanceGen::Q2 => (other, qm),
    };
    let mut s = Subst::new();
    s.insert(Gen::Q1, a);
    s.insert(Gen::Q2, b);
    s
}

/// Position of the pit forced by a resonance substitution, if it has the
/// pit form q3^i q4^{1-j} = q_m with i, j >= 1.
pub fn resonance_to_pit(sigma: &Subst, m: ResonanceGen) -> Option<(u32, u32)> {
    let qm = sigma.get(&m.gen())?;
    let i = qm.exp(&Gen::Mu);
    let j = 1 - qm.exp(&q4_symbol());
    let extra = qm.without(&Gen::Mu).without(&q4_symbol());
    (i >= 1 && j >= 1 && extra.is_one()).then_some((i as u32, j as u32))
}

/// Resonance between components: x_b = x_a q_m q3^{-i} q4^{j-1}, with q2
/// (or q1) eliminated through q1 q2 = q3 q4.
pub fn pair_resonance(xa: &Monomial, xb_gen: &Gen, i: i64, j: i64, m: ResonanceGen) -> Subst {
    let u = Monomial::gen(q4_symbol());
    let mu = Monomial::mu();
    let mut s = Subst::new();
    let q = mu.mul(&u);
    match m {
        ResonanceGen::Q1 => {
            s.insert(Gen::Q2, q.div(&Monomial::q1()));
            s.insert(xb_gen.clone(), xa.mul(&Monomial::q1()).mul(&q34_sym(-i, j - 1)));
        }
        ResonanceGen::Q2 => {
            s.insert(Gen::Q1, q.div(&Monomial::q2()));
            s.insert(xb_gen.clone(), xa.mul(&Monomial::q2()).mul(&q34_sym(-i, j - 1)));
        }
    }
    s
}

/// q3^a q4^b written in mu and the auxiliary q4 symbol.
fn q34_sym(a: i64, b: i64) -> Monomial {
    Monomial::mu().pow(a).mul(&Monomial::gen(q4_symbol()).pow(b))
}

/// Burge condition lambda^T_{b,k} - lambda^T_{a,k+j-1} >= i for all k >= 1.
pub fn burge_filter(la: &Partition, lb: &Partition, i: i64, j: u32) -> bool {
    let ta = la.transpose();
    let tb = lb.transpose();
    let kmax = ta.rows().max(tb.rows()) + 1;
    (1..=kmax).all(|k| tb.part(k) as i64 - ta.part(k + j - 1) as i64 >= i)
}

/// Residue condition i + j - 1 - (node_a - node_b) in rZ for a colored
/// Burge restriction.
pub fn burge_applies(i: i64, j: i64, node_a: u32, node_b: u32, r: u32) -> bool {
    in_rz(i + j - 1 - (node_a as i64 - node_b as i64), r)
}

/// Outcome of comparing exact vanishing with a combinatorial filter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub cases: usize,
    pub exceptions: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty()
    }
}

fn single_weight(lambda: &Partition, r: u32) -> Result<Coefficient> {
    if r == 1 {
        z_a0(lambda)
    } else {
        z_ar(lambda, r)
    }
}

fn vanishes(c: &Coefficient, sigma: &Subst) -> Result<bool> {
    c.vanishing_order(sigma).map(|o| o > 0).ok_or_else(|| QqError::Pole(format!("{c} under {sigma:?}")))
}

/// Pits (i, j) with 1 <= i, j <= max and the residue condition.
pub fn pits_up_to(max: u32, r: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 1..=max {
        for j in 1..=max {
            if check_pit((i, j), r).is_ok() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Z_lambda vanishes under the pit resonance iff the pit cell is in lambda.
/// `hook` swaps the filter for "some cell has (arm, leg) = (j-1, i-1)".
pub fn pit_scan(r: u32, max_size: u32, pits: &[(u32, u32)], hook: bool) -> Result<ScanReport> {
    let mut rep = ScanReport::default();
    for &pit in pits {
        check_pit(pit, r)?;
        for m in [ResonanceGen::Q1, ResonanceGen::Q2] {
            let sig = pit_resonance(pit, m);
            for l in Partition::up_to(max_size) {
                let zero = vanishes(&single_weight(&l, r)?, &sig)?;
                let excluded = if hook {
                    l.cells().into_iter().any(|c| {
                        let b = box_stats(&l, c);
                        (b.arm, b.leg) == (pit.1 as i64 - 1, pit.0 as i64 - 1)
                    })
                } else {
                    !pit_filter(&l, pit)
                };
                rep.cases += 1;
                if zero != excluded {
                    rep.exceptions
                        .push(format!("r={r} pit {pit:?} {m}: lambda={l} vanishes={zero} filter_excludes={excluded}"));
                }
            }
        }
    }
    Ok(rep)
}

/// For every colour pair meeting the residue condition, the pair weight of
/// (lambda_a, lambda_b) vanishes under the pair resonance iff the Burge
/// condition fails.
pub fn burge_scan(r: u32, max_size: u32, is: &[i64], js: &[u32]) -> Result<ScanReport> {
    let xa = Monomial::x("0", 1);
    let xb_gen = Gen::x("0", 2);
    let xb = Monomial::gen(xb_gen.clone());
    let tuples = tuples_up_to(2, max_size);
    let mut rep = ScanReport::default();
    for &i in is {
        for &j in js {
            for na in 0..r {
                for nb in 0..r {
                    if !burge_applies(i, j as i64, na, nb, r) {
                        continue;
                    }
                    for m in [ResonanceGen::Q1, ResonanceGen::Q2] {
                        let sig = pair_resonance(&xa, &xb_gen, i, j as i64, m);
                        for t in &tuples {
                            let comps = [
                                Component { node: na, x: xa.clone(), lambda: t[0].clone() },
                                Component { node: nb, x: xb.clone(), lambda: t[1].clone() },
                            ];
                            let z =
                                if r == 1 { z_a0_tuple(t, &[xa.clone(), xb.clone()])? } else { z_ar_tuple(&comps, r)? };
                            let zero = vanishes(&z, &sig)?;
                            let excluded = !burge_filter(&t[0], &t[1], i, j);
                            rep.cases += 1;
                            if zero != excluded {
                                rep.exceptions.push(format!(
                                    "r={r} (i,j)=({i},{j}) nodes ({na},{nb}) {m}: ({}, {}) vanishes={zero} filter_excludes={excluded}",
                                    t[0], t[1]
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Series grouped by degree, for output.
pub fn by_degree(ch: &Character) -> BTreeMap<u32, Vec<(&YMonomial, &Term)>> {
    let mut out: BTreeMap<u32, Vec<(&YMonomial, &Term)>> = BTreeMap::new();
    for (ym, t) in ch.ordered_terms() {
        out.entry(t.qdeg).or_default().push((ym, t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::expand;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stats_single_box() {
        let b = box_stats(&p(&[1]), (1, 1));
        assert_eq!((b.arm, b.leg, b.hook), (0, 0, 1));
    }

    #[test]
    fn stats_hook_of_31() {
        let b = box_stats(&p(&[3, 1]), (1, 1));
        assert_eq!((b.arm, b.leg, b.hook), (2, 1, 4));
    }

    #[test]
    fn boundary_of_31() {
        let l = p(&[3, 1]);
        assert_eq!(l.addable(), vec![(1, 4), (2, 2), (3, 1)]);
        assert_eq!(l.removable(), vec![(1, 3), (2, 1)]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| Partition::of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn empty_and_single_box_weights() {
        assert_eq!(z_a0(&Partition::empty()).unwrap(), Coefficient::one());
        assert_eq!(z_a0(&p(&[1])).unwrap(), s_eval(&Monomial::q3()).unwrap());
    }

    #[test]
    fn hook_filter_r2() {
        assert_eq!(z_ar(&p(&[1]), 2).unwrap(), Coefficient::one());
        let b = box_stats(&p(&[2]), (1, 1));
        assert_eq!(z_ar(&p(&[2]), 2).unwrap(), s_eval(&q34(b.leg + 1, -b.arm)).unwrap());
    }

    fn engine(q: &Quiver, w: &[u32], deg: u32) -> Character {
        expand(q, &WeightConfig::generic(q, w).unwrap(), Some(deg)).unwrap()
    }

    fn partitions(q: &Quiver, w: &[u32], deg: u32) -> Character {
        affine_character(q, &WeightConfig::generic(q, w).unwrap(), deg).unwrap()
    }

    #[test]
    fn a0_matches_engine_w1() {
        let q = Quiver::builtin("A0hat").unwrap();
        for deg in 0..=3 {
            let (a, b) = (engine(&q, &[1], deg), partitions(&q, &[1], deg));
            assert!(a.same_terms(&b), "degree {deg}: {:?}", a.first_difference(&b));
        }
    }

    #[test]
    fn a0_matches_engine_w2() {
        let q = Quiver::builtin("A0hat").unwrap();
        let (a, b) = (engine(&q, &[2], 2), partitions(&q, &[2], 2));
        assert!(a.same_terms(&b), "{:?}", a.first_difference(&b));
    }

    #[test]
    fn a1hat_matches_engine() {
        let q = Quiver::builtin("Arhat(2)").unwrap();
        let (a, b) = (engine(&q, &[1, 0], 2), partitions(&q, &[1, 0], 2));
        assert!(a.same_terms(&b), "{:?}", a.first_difference(&b));
    }

    #[test]
    fn both_weight_forms_agree() {
        for r in 1..=3 {
            for l in Partition::up_to(6) {
                assert_eq!(z_ar(&l, r).unwrap(), z_ar_alt(&l, r).unwrap(), "{l} r = {r}");
            }
        }
    }

    #[test]
    fn pit_one_one_admits_only_empty() {
        let sig = pit_resonance((1, 1), ResonanceGen::Q1);
        for l in Partition::up_to(6) {
            assert_eq!(pit_filter(&l, (1, 1)), l.is_empty());
            let vanishes = z_a0(&l).unwrap().vanishing_order(&sig).unwrap() > 0;
            assert_eq!(vanishes, !l.is_empty(), "{l}");
        }
    }

    #[test]
    fn pit_two_one_keeps_single_rows_only() {
        for l in Partition::up_to(6) {
            assert_eq!(pit_filter(&l, (2, 1)), l.rows() <= 1, "{l}");
        }
    }

    #[test]
    fn pit_resonance_zero_set_is_hook_condition() {
        for (i, j) in [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
            for m in [ResonanceGen::Q1, ResonanceGen::Q2] {
                let sig = pit_resonance((i, j), m);
                assert_eq!(resonance_to_pit(&sig, m), Some((i, j)));
                for l in Partition::up_to(6) {
                    let vanishes = z_a0(&l).unwrap().vanishing_order(&sig).unwrap() > 0;
                    let hook = l.cells().into_iter().any(|c| {
                        let b = box_stats(&l, c);
                        (b.arm, b.leg) == (j as i64 - 1, i as i64 - 1)
                    });
                    assert_eq!(vanishes, hook, "pit ({i},{j}) {l}");
                }
            }
        }
    }

    #[test]
    fn pit_residue_condition() {
        assert!(check_pit((1, 2), 2).is_ok());
        assert!(matches!(check_pit((1, 1), 2), Err(QqError::InvalidPit(_))));
        assert!(matches!(check_pit((0, 1), 1), Err(QqError::InvalidPit(_))));
    }

    #[test]
    fn burge_trivial_cases() {
        let e = Partition::empty();
        assert!(burge_filter(&e, &e, 0, 1));
        assert!(burge_filter(&e, &e, -2, 3));
        assert!(burge_filter(&p(&[1]), &p(&[2]), 0, 1));
        assert!(!burge_filter(&p(&[1]), &e, 0, 1));
    }

    #[test]
    fn burge_matches_pair_vanishing_small() {
        let xa = Monomial::x("0", 1);
        let xb = Monomial::x("0", 2);
        for (i, j) in [(0, 1), (-1, 2), (0, 2)] {
            let sig = pair_resonance(&xa, &Gen::x("0", 2), i, j, ResonanceGen::Q1);
            for t in tuples_up_to(2, 4) {
                let z = z_a0_tuple(&t, &[xa.clone(), xb.clone()]).unwrap();
                let vanishes = z.vanishing_order(&sig).unwrap() > 0;
                assert_eq!(vanishes, !burge_filter(&t[0], &t[1], i, j as u32), "{} {}", t[0], t[1]);
            }
        }
    }

    #[test]
    fn tuple_of_one_is_single_weight() {
        for l in Partition::up_to(4) {
            let x = Monomial::sym("x");
            assert_eq!(z_a0_tuple(std::slice::from_ref(&l), &[x]).unwrap(), z_a0(&l).unwrap());
        }
    }

    #[test]
    fn pair_weight_single_box() {
        let (x1, x2) = (Monomial::x("0", 1), Monomial::x("0", 2));
        let z = z_a0_tuple(&[p(&[1]), Partition::empty()], &[x1.clone(), x2.clone()]).unwrap();
        // cell (1,1) of the first partition: arm 0, leg measured in the empty one is -1
        let expected = s_eval(&Monomial::q3()).unwrap().mul(&s_eval(&x2.div(&x1).mul(&q34(0, 0))).unwrap());
        assert_eq!(z, expected);
    }

    #[test]
    fn degree_equals_box_count() {
        let q = Quiver::builtin("Arhat(2)").unwrap();
        let ch = partitions(&q, &[1, 1], 3);
        for (ym, t) in &ch.terms {
            let qf: i64 = ["0", "1"].iter().map(|i| t.coeff.as_factored().unwrap().unit().exp(&Gen::qfrak(i))).sum();
            assert_eq!(qf, t.qdeg as i64, "{ym}");
        }
    }

    #[test]
    fn scans_small() {
        assert!(burge_scan(2, 3, &[0, -1], &[1, 2]).unwrap().passed());
        let pits = pits_up_to(2, 1);
        assert!(pit_scan(1, 4, &pits, true).unwrap().passed());
        let literal = pit_scan(1, 4, &pits, false).unwrap();
        assert!(!literal.passed());
        assert!(pit_scan(1, 6, &[(1, 1)], false).unwrap().passed());
        assert_eq!(pits_up_to(3, 2), vec![(1, 2), (2, 1), (2, 3), (3, 2)]);
    }
}
