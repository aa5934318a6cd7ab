//! Job descriptions shared by the command line and the Python bindings.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::{affine_character, burge_scan, by_degree, pit_scan};
use crate::algebra::{latex_s, LimitGen, Monomial, Subst};
use crate::character::{expand_with_stats, Character, WeightConfig};
use crate::error::{QqError, Result};
use crate::higgs::{classical_limit, higgs, kr_params, param_subst, KRSpec};
use crate::io::{
    character_to_json, classical_to_json, coeff_to_json, mono_to_json, parse_quiver, quiver_from_json, subst_from_json,
};
use crate::quiver::Quiver;
use crate::verify::{bundled_corpus, load_corpus, verify};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    #[default]
    Expand,
    Higgs,
    Limit,
    Hasse,
    AffineExpand,
    BurgeCheck,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Latex,
    Dot,
    Text,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    /// Builtin name, or a quiver object.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<Value>,
    /// Node id -> number of weight parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<BTreeMap<String, u32>>,
    /// Node id -> explicit parameters such as "x*q1^2"; overrides `w`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, Vec<String>>>,
    /// A substitution object, or "kr:q1" / "kr:q2".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub higgs: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_size: Option<u32>,
    /// Directory of fixture files; the bundled corpus when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

/// Rendered result. `ok` is false when a check ran but did not pass.
#[derive(Clone, Debug)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

fn bad(msg: impl Into<String>) -> QqError {
    QqError::Validation(msg.into())
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<JobSpec> {
        serde_json::from_str(text).map_err(|e| bad(format!("job: {e}")))
    }

    fn quiver(&self) -> Result<Quiver> {
        match &self.quiver {
            None => Err(bad("a quiver is required")),
            Some(Value::String(s)) => parse_quiver(s),
            Some(v) => quiver_from_json(v),
        }
    }

    fn weight(&self, q: &Quiver) -> Result<WeightConfig> {
        if let Some(p) = &self.params {
            let mut given: Vec<(&str, Vec<Monomial>)> = Vec::new();
            for (node, xs) in p {
                let ms = xs.iter().map(|s| s.parse::<Monomial>()).collect::<Result<Vec<_>>>()?;
                given.push((node.as_str(), ms));
            }
            return WeightConfig::explicit(q, &given);
        }
        let w = self.w.as_ref().ok_or_else(|| bad("either w or params is required"))?;
        for id in w.keys() {
            if q.index(id).is_none() {
                return Err(bad(format!("unknown node {id} in w")));
            }
        }
        let v: Vec<u32> = q.nodes.iter().map(|n| w.get(&n.id).copied().unwrap_or(0)).collect();
        WeightConfig::generic(q, &v)
    }

    fn sigma(&self, q: &Quiver, wc: &WeightConfig) -> Result<Option<Subst>> {
        let Some(h) = &self.higgs else { return Ok(None) };
        if let Value::String(s) = h {
            let m: LimitGen =
                s.strip_prefix("kr:").ok_or_else(|| bad(format!("unknown higgs shorthand '{s}'")))?.parse()?;
            let mut busy = wc.params.iter().filter(|(_, p)| !p.is_empty());
            let (node, ps) = busy.next().ok_or_else(|| bad("KR higgsing needs a nonzero weight"))?;
            if busy.next().is_some() {
                return Err(bad("KR higgsing needs a weight supported on one node"));
            }
            let spec = KRSpec { node: node.clone(), k: ps.len() as u32, m, base: Monomial::sym("x") };
            return Ok(Some(param_subst(node, &kr_params(&spec, q)?)));
        }
        subst_from_json(h).map(Some)
    }

    fn limit(&self) -> Result<Option<LimitGen>> {
        self.limit.as_deref().map(str::parse).transpose()
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

pub fn run(job: &JobSpec) -> Result<Output> {
    match job.command {
        Command::Expand | Command::Higgs | Command::Limit | Command::Hasse => run_character(job),
        Command::AffineExpand => run_affine(job),
        Command::BurgeCheck => run_burge(job),
        Command::Verify => run_verify(job),
    }
}

fn ok(body: String) -> Result<Output> {
    Ok(Output { body, ok: true })
}

fn run_character(job: &JobSpec) -> Result<Output> {
    let q = job.quiver()?;
    let wc = job.weight(&q)?;
    let (mut ch, _) = expand_with_stats(&q, &wc, job.max_deg)?;
    let sigma = job.sigma(&q, &wc)?;
    if job.command == Command::Higgs && sigma.is_none() {
        return Err(bad("higgs needs a substitution"));
    }
    if let Some(s) = &sigma {
        ch = higgs(&ch, s)?;
    }
    if job.command == Command::Hasse {
        return match job.format(Format::Dot) {
            Format::Dot => ok(ch.hasse_dot()),
            Format::Json => ok(pretty(&character_to_json(&ch))),
            f => Err(bad(format!("hasse cannot be written as {f:?}"))),
        };
    }
    let limit = match (job.command, job.limit()?) {
        (Command::Limit, None) => return Err(bad("limit needs q1 or q2")),
        (_, l) => l,
    };
    if let Some(m) = limit {
        let cc = classical_limit(&ch, m)?;
        return match job.format(Format::Json) {
            Format::Json => ok(pretty(&classical_to_json(&cc))),
            Format::Latex => ok(cc.latex(ch.meta.w.len() > 1) + "\n"),
            Format::Text => ok(cc.to_string()),
            Format::Dot => Err(bad("a classical character has no Hasse diagram")),
        };
    }
    emit_character(&ch, job.format(Format::Json))
}

fn emit_character(ch: &Character, f: Format) -> Result<Output> {
    match f {
        Format::Json => ok(pretty(&character_to_json(ch))),
        Format::Latex => ok(ch.latex() + "\n"),
        Format::Text => ok(ch.text()),
        Format::Dot => ok(ch.hasse_dot()),
    }
}

fn run_affine(job: &JobSpec) -> Result<Output> {
    let q = job.quiver()?;
    let wc = job.weight(&q)?;
    let max = job.max_deg.ok_or_else(|| bad("affine-expand needs max_deg"))?;
    let ch = affine_character(&q, &wc, max)?;
    match job.format(Format::Json) {
        Format::Json => {
            let series: Vec<Value> = by_degree(&ch)
                .into_iter()
                .map(|(k, terms)| {
                    let terms: Vec<Value> = terms
                        .into_iter()
                        .map(|(ym, t)| {
                            let ys: Vec<Value> = ym
                                .entries()
                                .map(|(n, a, e)| json!({"node": n, "arg": mono_to_json(a), "exp": e}))
                                .collect();
                            json!({"ym": ys, "coeff": coeff_to_json(&t.coeff)})
                        })
                        .collect();
                    json!({"qdeg": k, "terms": terms})
                })
                .collect();
            ok(pretty(&json!({"quiver": q.name, "w": wc.w(), "max_deg": max, "series": series})))
        }
        Format::Text => {
            let mut out = String::new();
            for (k, terms) in by_degree(&ch) {
                out.push_str(&format!("# qdeg {k}\n"));
                for (ym, t) in terms {
                    out.push_str(&format!("{}\t{}\n", t.coeff, ym));
                }
            }
            ok(out)
        }
        Format::Latex => {
            let mut out = String::new();
            for (k, terms) in by_degree(&ch) {
                let parts: Vec<String> =
                    terms.into_iter().map(|(ym, t)| format!("{} {}", latex_s(&t.coeff, 1), ym.latex(true))).collect();
                out.push_str(&format!("% qdeg {k}\n{}\n", parts.join(" + ")));
            }
            ok(out)
        }
        Format::Dot => Err(bad("affine-expand has no Hasse output")),
    }
}

fn run_burge(job: &JobSpec) -> Result<Output> {
    let r = job.r.unwrap_or(1);
    let max = job.max_size.unwrap_or(6);
    let is = job.i.clone().unwrap_or_else(|| vec![0, -1, -2]);
    let js = job.j.clone().unwrap_or_else(|| vec![1, 2, 3]);
    let burge = burge_scan(r, max, &is, &js)?;
    let pits: Vec<(u32, u32)> = (1..=js.iter().copied().max().unwrap_or(1))
        .flat_map(|a| (1..=js.iter().copied().max().unwrap_or(1)).map(move |b| (a, b)))
        .filter(|p| crate::affine::check_pit(*p, r).is_ok())
        .collect();
    let pit = pit_scan(r, max, &pits, false)?;
    let hook = pit_scan(r, max, &pits, true)?;
    let report = |name: &str, s: &crate::affine::ScanReport| {
        json!({"check": name, "cases": s.cases, "exceptions": s.exceptions.len(), "passed": s.passed(),
               "first_exception": s.exceptions.first()})
    };
    let all = json!({"r": r, "max_size": max, "i": is, "j": js, "checks": [
        report("burge", &burge), report("pit", &pit), report("pit-hook", &hook)]});
    let body = match job.format(Format::Json) {
        Format::Json => pretty(&all),
        Format::Text => {
            let mut out = String::new();
            for (name, s) in [("burge", &burge), ("pit", &pit), ("pit-hook", &hook)] {
                out.push_str(&format!(
                    "{:<5} {name}: {} cases, {} exceptions\n",
                    if s.passed() { "pass" } else { "FAIL" },
                    s.cases,
                    s.exceptions.len()
                ));
                if let Some(e) = s.exceptions.first() {
                    out.push_str(&format!("      first: {e}\n"));
                }
            }
            out
        }
        f => return Err(bad(format!("burge-check cannot be written as {f:?}"))),
    };
    Ok(Output { body, ok: burge.passed() })
}

fn run_verify(job: &JobSpec) -> Result<Output> {
    let fixtures = match &job.corpus {
        Some(dir) => load_corpus(dir)?,
        None => bundled_corpus(),
    };
    let rep = verify(&fixtures, job.threads.or_else(crate::verify::env_threads));
    let body = match job.format(Format::Text) {
        Format::Json => pretty(&serde_json::to_value(&rep).map_err(|e| bad(e.to_string()))?),
        Format::Text => rep.text(),
        f => return Err(bad(format!("verify cannot be written as {f:?}"))),
    };
    Ok(Output { body, ok: rep.all_ok() })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
