//! JSON forms of monomials, coefficients, quivers, substitutions and
//! characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Coefficient, Gen, LimitGen, Monomial, Subst};
use crate::character::{Character, CharacterMeta, HasseEdge, Term, YMonomial};
use crate::error::{QqError, Result};
use crate::higgs::ClassicalCharacter;
use crate::quiver::{Edge, Node, Quiver};

fn bad(msg: impl Into<String>) -> QqError {
    QqError::Validation(msg.into())
}

pub type MonoJson = BTreeMap<String, i64>;

pub fn mono_to_json(m: &Monomial) -> MonoJson {
    m.iter().map(|(g, e)| (g.to_string(), *e)).collect()
}

pub fn mono_from_json(j: &MonoJson) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for (g, e) in j {
        pairs.push((g.parse::<Gen>()?, *e));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// Integers as JSON numbers when they fit, strings otherwise.
fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("not an integer: {s}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn rat_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        int_to_json(r.numer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn rat_from_json(v: &Value) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad rational {s}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad rational {s}")))?;
            if d.is_zero() {
                return Err(bad(format!("zero denominator in {s}")));
            }
            return Ok(BigRational::new(n, d));
        }
    }
    int_from_json(v).map(BigRational::from_integer)
}

fn factor_list(items: impl Iterator<Item = (Monomial, i64)>) -> Value {
    Value::Array(items.map(|(m, e)| serde_json::json!({ "arg": mono_to_json(&m), "pow": e })).collect())
}

fn factors_from_json(v: Option<&Value>) -> Result<Vec<(Monomial, i64)>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| bad("factors must be a list"))?;
    arr.iter()
        .map(|f| {
            let obj = f.as_object().ok_or_else(|| bad("factor must be an object"))?;
            check_keys(obj, &["arg", "pow"])?;
            let arg: MonoJson = serde_json::from_value(obj.get("arg").cloned().unwrap_or_default())
                .map_err(|e| bad(format!("factor arg: {e}")))?;
            let pow = obj.get("pow").and_then(Value::as_i64).ok_or_else(|| bad("factor pow must be an integer"))?;
            Ok((mono_from_json(&arg)?, pow))
        })
        .collect()
}

fn check_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(bad(format!("unknown field '{k}'"))),
        None => Ok(()),
    }
}

/// `{"unit": {...}, "int": n, "factors": [{"arg": {...}, "pow": e}]}`; the
/// integer may be a "p/q" string. Non-factored values use `"num"` (a list
/// of `{"mono", "c"}`) together with `"factors"` for the denominator.
pub fn coeff_to_json(c: &Coefficient) -> Value {
    match c {
        Coefficient::Zero => serde_json::json!({ "unit": {}, "int": 0, "factors": [] }),
        Coefficient::Factored(f) => serde_json::json!({
            "unit": mono_to_json(f.unit()),
            "int": rat_to_json(f.scalar()),
            "factors": factor_list(f.factors().map(|(m, e)| (m.clone(), e))),
        }),
        Coefficient::General(g) => {
            let num: Vec<Value> = g
                .numerator()
                .terms()
                .map(|(m, c)| serde_json::json!({ "mono": mono_to_json(m), "c": rat_to_json(c) }))
                .collect();
            serde_json::json!({
                "num": num,
                "factors": factor_list(g.denominator().map(|(m, p)| (m.clone(), -(p as i64)))),
            })
        }
    }
}

pub fn coeff_from_json(v: &Value) -> Result<Coefficient> {
    let obj = v.as_object().ok_or_else(|| bad("coefficient must be an object"))?;
    check_keys(obj, &["unit", "int", "factors", "num"])?;
    let factors = factors_from_json(obj.get("factors"))?;
    if let Some(num) = obj.get("num") {
        let arr = num.as_array().ok_or_else(|| bad("num must be a list"))?;
        let mut out = Coefficient::Zero;
        for t in arr {
            let mono: MonoJson = serde_json::from_value(t.get("mono").cloned().unwrap_or_default())
                .map_err(|e| bad(format!("num term: {e}")))?;
            let c = rat_from_json(t.get("c").ok_or_else(|| bad("num term needs c"))?)?;
            out = out.add(&Coefficient::from_rational(c).mul(&Coefficient::monomial(mono_from_json(&mono)?)));
        }
        for (m, e) in factors {
            if e > 0 {
                return Err(bad("denominator factors of a general coefficient need negative pow"));
            }
            out = out.mul(&Coefficient::binomial(&m, e)?);
        }
        return Ok(out);
    }
    let scalar = match obj.get("int") {
        Some(v) => rat_from_json(v)?,
        None => BigRational::one(),
    };
    let unit: MonoJson = serde_json::from_value(obj.get("unit").cloned().unwrap_or(Value::Object(Default::default())))
        .map_err(|e| bad(format!("unit: {e}")))?;
    Coefficient::from_factors(scalar, mono_from_json(&unit)?, &factors)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeJson {
    id: String,
    #[serde(default = "one_u32")]
    d: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    from: String,
    to: String,
    #[serde(default)]
    mu: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    nodes: Vec<NodeJson>,
    #[serde(default)]
    edges: Vec<EdgeJson>,
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let j = QuiverJson {
        name: Some(q.name.clone()),
        nodes: q.nodes.iter().map(|n| NodeJson { id: n.id.clone(), d: n.d }).collect(),
        edges: q.edges.iter().map(|e| EdgeJson { from: e.from.clone(), to: e.to.clone(), mu: e.mu }).collect(),
    };
    serde_json::to_value(j).expect("quiver serializes")
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver> {
    let j: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| bad(format!("quiver: {e}")))?;
    let nodes = j.nodes.into_iter().map(|n| Node { id: n.id, d: n.d }).collect();
    let edges = j.edges.into_iter().map(|e| Edge { from: e.from, to: e.to, mu: e.mu }).collect();
    Quiver::new(j.name.as_deref().unwrap_or("custom"), nodes, edges)
}

/// A builtin name, or inline JSON when the text starts with '{'.
pub fn parse_quiver(spec: &str) -> Result<Quiver> {
    let t = spec.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| bad(format!("quiver JSON: {e}")))?;
        quiver_from_json(&v)
    } else {
        Quiver::builtin(t)
    }
}

/// `{"x(1,2)": {"x": 1, "q1": 1}}` maps x(1,2) to x q1; so does
/// `{"x(1,2)": "x*q1"}`.
pub fn subst_from_json(v: &Value) -> Result<Subst> {
    let obj = v.as_object().ok_or_else(|| bad("substitution must be an object"))?;
    let mut out = Subst::new();
    for (k, m) in obj {
        let g: Gen = k.parse()?;
        let image = match m {
            Value::String(s) => s.parse().map_err(|e| bad(format!("image of {k}: {e}")))?,
            _ => {
                let mj: MonoJson = serde_json::from_value(m.clone()).map_err(|e| bad(format!("image of {k}: {e}")))?;
                mono_from_json(&mj)?
            }
        };
        out.insert(g, image);
    }
    Ok(out)
}

pub fn subst_to_json(s: &Subst) -> Value {
    Value::Object(s.iter().map(|(g, m)| (g.to_string(), serde_json::json!(mono_to_json(m)))).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YEntry {
    node: String,
    arg: MonoJson,
    exp: i64,
}

fn ym_to_json(ym: &YMonomial) -> Vec<YEntry> {
    ym.entries().map(|(n, a, e)| YEntry { node: n.to_string(), arg: mono_to_json(a), exp: e }).collect()
}

fn ym_from_json(v: &[YEntry]) -> Result<YMonomial> {
    let mut ym = YMonomial::one();
    for e in v {
        if e.exp == 0 {
            return Err(bad("Y exponent 0"));
        }
        ym.mul_y(&e.node, &mono_from_json(&e.arg)?, e.exp);
    }
    Ok(ym)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    ym: Vec<YEntry>,
    coeff: Value,
    #[serde(default)]
    qdeg: u32,
    #[serde(default)]
    depth: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJsonC {
    src: Vec<YEntry>,
    dst: Vec<YEntry>,
    node: String,
    arg: MonoJson,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct MetaJson {
    #[serde(default)]
    quiver: String,
    #[serde(default)]
    w: Vec<u32>,
    #[serde(default = "one_u32")]
    d_max: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterJson {
    terms: Vec<TermJson>,
    #[serde(default)]
    edges: Vec<EdgeJsonC>,
    #[serde(default)]
    meta: Option<MetaJson>,
}

pub fn character_to_json(ch: &Character) -> Value {
    let terms = ch
        .ordered_terms()
        .into_iter()
        .map(|(ym, t)| TermJson { ym: ym_to_json(ym), coeff: coeff_to_json(&t.coeff), qdeg: t.qdeg, depth: t.depth })
        .collect();
    let edges = ch
        .edges
        .iter()
        .map(|e| EdgeJsonC {
            src: ym_to_json(&e.src),
            dst: ym_to_json(&e.dst),
            node: e.node.clone(),
            arg: mono_to_json(&e.arg),
        })
        .collect();
    let meta = MetaJson { quiver: ch.meta.quiver.clone(), w: ch.meta.w.clone(), d_max: ch.meta.d_max };
    serde_json::to_value(CharacterJson { terms, edges, meta: Some(meta) }).expect("character serializes")
}

pub fn character_from_json(v: &Value) -> Result<Character> {
    let j: CharacterJson = serde_json::from_value(v.clone()).map_err(|e| bad(format!("character: {e}")))?;
    let meta = j.meta.unwrap_or_default();
    let mut ch = Character::new(CharacterMeta { quiver: meta.quiver, w: meta.w, d_max: meta.d_max.max(1) });
    for t in j.terms {
        let ym = ym_from_json(&t.ym)?;
        let coeff = coeff_from_json(&t.coeff)?;
        if coeff.is_zero() {
            return Err(bad(format!("stored term {ym} has zero coefficient")));
        }
        if ch.terms.insert(ym.clone(), Term { coeff, qdeg: t.qdeg, depth: t.depth }).is_some() {
            return Err(bad(format!("monomial {ym} listed twice")));
        }
    }
    for e in j.edges {
        ch.edges.insert(HasseEdge {
            src: ym_from_json(&e.src)?,
            dst: ym_from_json(&e.dst)?,
            node: e.node,
            arg: mono_from_json(&e.arg)?,
        });
    }
    Ok(ch)
}

pub fn classical_to_json(cc: &ClassicalCharacter) -> Value {
    let terms: Vec<Value> =
        cc.terms.iter().map(|(ym, c)| serde_json::json!({ "ym": ym_to_json(ym), "coeff": int_to_json(c) })).collect();
    serde_json::json!({ "limit": cc.which.map(|w| w.to_string()), "terms": terms })
}

pub fn classical_from_json(v: &Value) -> Result<ClassicalCharacter> {
    let obj = v.as_object().ok_or_else(|| bad("classical character must be an object"))?;
    check_keys(obj, &["limit", "terms"])?;
    let which = match obj.get("limit") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<LimitGen>()?),
        Some(other) => return Err(bad(format!("bad limit {other}"))),
    };
    let mut cc = ClassicalCharacter { which, ..Default::default() };
    for t in obj.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms must be a list"))? {
        let ym: Vec<YEntry> = serde_json::from_value(t.get("ym").cloned().unwrap_or_default())
            .map_err(|e| bad(format!("term ym: {e}")))?;
        let c = int_from_json(t.get("coeff").ok_or_else(|| bad("term needs coeff"))?)?;
        cc.add(ym_from_json(&ym)?, c);
    }
    Ok(cc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::s_eval;
    use crate::character::{expand, WeightConfig};

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_schema() {
        let c = s_eval(&mono("q1^-1")).unwrap();
        let j = coeff_to_json(&c);
        assert!(j.get("unit").is_some() && j.get("int").is_some() && j.get("factors").is_some());
        assert_eq!(coeff_from_json(&j).unwrap(), c);
        let half = Coefficient::from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(coeff_from_json(&coeff_to_json(&half)).unwrap(), half);
        assert!(coeff_from_json(&coeff_to_json(&Coefficient::Zero)).unwrap().is_zero());
    }

    #[test]
    fn general_coefficient_round_trip() {
        let c = s_eval(&mono("x")).unwrap().add(&Coefficient::one());
        assert!(c.as_general().is_some());
        assert_eq!(coeff_from_json(&coeff_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn quiver_schema() {
        let v: Value = serde_json::from_str(
            r#"{"nodes":[{"id":"1","d":2},{"id":"2","d":1}],"edges":[{"from":"1","to":"2","mu":0}]}"#,
        )
        .unwrap();
        let q = quiver_from_json(&v).unwrap();
        assert_eq!(q.d("1"), 2);
        let bc2 = Quiver::builtin("BC2").unwrap();
        assert_eq!(q.nodes, bc2.nodes);
        assert_eq!(quiver_from_json(&quiver_to_json(&bc2)).unwrap(), bc2);
        let extra: Value = serde_json::from_str(r#"{"nodes":[{"id":"1"}],"colour":3}"#).unwrap();
        assert!(quiver_from_json(&extra).is_err());
    }

    #[test]
    fn substitution_schema() {
        let v: Value = serde_json::from_str(r#"{"x(1,2)": {"x": 1, "q1": 1}}"#).unwrap();
        let s = subst_from_json(&v).unwrap();
        assert_eq!(s[&Gen::x("1", 2)], mono("x*q1"));
        assert_eq!(subst_from_json(&subst_to_json(&s)).unwrap(), s);
        let short: Value = serde_json::from_str(r#"{"x(1,2)": "x*q1"}"#).unwrap();
        assert_eq!(subst_from_json(&short).unwrap(), s);
        assert!(subst_from_json(&serde_json::json!({"x(1,2)": "x*"})).is_err());
    }

    #[test]
    fn character_round_trip() {
        let q = Quiver::builtin("A2").unwrap();
        let ch = expand(&q, &WeightConfig::generic(&q, &[1, 1]).unwrap(), None).unwrap();
        let back = character_from_json(&character_to_json(&ch)).unwrap();
        assert!(back.same_terms(&ch));
        assert_eq!(back.edges, ch.edges);
        assert_eq!(back.meta, ch.meta);
    }
}
