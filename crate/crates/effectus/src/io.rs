//! Serialized formats: per-instance morphism documents, experiment
//! description files, and rendered output tables.
//!
//! Rationals travel as `"p/q"` strings; complex matrices as row-major
//! arrays of `[re, im]` pairs; block algebras as `{"blocks": [n₁, …]}`.
//! Output rows are sorted lexicographically by outcome labels so equal
//! configurations produce byte-identical output.

use crate::category::{Effectus, LogicEffectus};
use crate::error::{Error, Result};
use crate::exec::RunCfg;
use crate::measurement::{self, ProbTable, Test};
use crate::pfn::{Pfn, PfnMor};
use crate::prob::{Prob, ProbMor};
use crate::quantum::linalg::CMat;
use crate::quantum::{QElement, QMorphism, QObject, Quantum};
use crate::scalar::{Rat, Scalar};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

// ---- per-instance documents ----

pub fn pfn_mor_from_value(v: &Value) -> Result<PfnMor> {
    #[derive(Deserialize)]
    struct Doc {
        dom: usize,
        cod: usize,
        table: Vec<Option<usize>>,
    }
    let doc: Doc = serde_json::from_value(v.clone())?;
    PfnMor::new(doc.dom, doc.cod, doc.table)
}

fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => {
            Rat::parse(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(Rat::from_int)
            .ok_or_else(|| Error::Parse(format!("bad rational {n}"))),
        _ => Err(Error::Parse("expected a rational".into())),
    }
}

pub fn prob_mor_from_value(v: &Value) -> Result<ProbMor> {
    #[derive(Deserialize)]
    struct Doc {
        dom: usize,
        cod: usize,
        kernel: Vec<Vec<Value>>,
    }
    let doc: Doc = serde_json::from_value(v.clone())?;
    if doc.kernel.len() != doc.dom || doc.kernel.iter().any(|r| r.len() != doc.cod) {
        return Err(Error::Parse("kernel is not dom × cod".into()));
    }
    let mut kernel = Vec::with_capacity(doc.dom * doc.cod);
    for row in &doc.kernel {
        for cell in row {
            kernel.push(rat_from_value(cell)?);
        }
    }
    ProbMor::new(doc.dom, doc.cod, kernel)
}

pub fn cmat_from_value(v: &Value) -> Result<CMat> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(v.clone())?;
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    let mut m = CMat::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

pub fn qobject_from_value(v: &Value) -> Result<QObject> {
    #[derive(Deserialize)]
    struct Doc {
        blocks: Vec<usize>,
    }
    let doc: Doc = serde_json::from_value(v.clone())?;
    QObject::new(doc.blocks)
}

pub fn qelement_from_value(obj: &QObject, v: &Value) -> Result<QElement> {
    let mats: Vec<Value> = serde_json::from_value(v.clone())?;
    if mats.len() != obj.nblocks() {
        return Err(Error::Parse(format!(
            "expected {} blocks, got {}",
            obj.nblocks(),
            mats.len()
        )));
    }
    let mut parsed = Vec::with_capacity(mats.len());
    for (k, m) in mats.iter().enumerate() {
        let mat = cmat_from_value(m)?;
        if mat.nrows() != obj.blocks[k] || mat.ncols() != obj.blocks[k] {
            return Err(Error::Parse(format!("block {k} has the wrong shape")));
        }
        parsed.push(mat);
    }
    Ok(QElement {
        obj: obj.clone(),
        mats: parsed,
    })
}

pub fn qmorphism_from_value(v: &Value) -> Result<QMorphism> {
    #[derive(Deserialize)]
    struct Doc {
        dom: Value,
        cod: Value,
        choi: std::collections::BTreeMap<String, Value>,
    }
    let doc: Doc = serde_json::from_value(v.clone())?;
    let dom = qobject_from_value(&doc.dom)?;
    let cod = qobject_from_value(&doc.cod)?;
    let mut m = QMorphism::zeros(&dom, &cod);
    for (key, mat) in &doc.choi {
        let trimmed = key.trim_matches(|c| c == '(' || c == ')');
        let (l, k) = trimmed
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad block key {key:?}")))?;
        let l: usize = l
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad block index".into()))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad block index".into()))?;
        if l >= dom.nblocks() || k >= cod.nblocks() {
            return Err(Error::Parse(format!("block key {key:?} out of range")));
        }
        let expect = cod.blocks[k] * dom.blocks[l];
        let parsed = cmat_from_value(mat)?;
        if parsed.nrows() != expect || parsed.ncols() != expect {
            return Err(Error::Parse(format!(
                "Choi block {key:?} has the wrong shape"
            )));
        }
        *m.component_mut(l, k) = parsed;
    }
    Ok(m)
}

// ---- experiment documents ----

/// An experiment description file.
#[derive(Deserialize)]
pub struct ExperimentDoc {
    pub instance: String,
    pub object: Value,
    pub prep: Value,
    pub steps: Vec<Value>,
    #[serde(default)]
    pub queries: Vec<String>,
}

impl ExperimentDoc {
    pub fn parse(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// A rendered table: sorted rows of outcome labels with a rendered
/// scalar per row.
#[derive(Debug)]
pub struct Rendered {
    pub query: String,
    pub axis_names: Vec<String>,
    pub rows: Vec<(Vec<String>, String)>,
}

impl Rendered {
    fn from_table<S: Scalar>(query: &str, axes: &[usize], table: &ProbTable<S>) -> Rendered {
        let mut rows: Vec<(Vec<String>, String)> = table
            .tuples()
            .iter()
            .zip(&table.entries)
            .map(|(tuple, v)| {
                let labels = tuple
                    .iter()
                    .enumerate()
                    .map(|(axis, &i)| table.axes[axis][i].clone())
                    .collect();
                (labels, v.render())
            })
            .collect();
        rows.sort();
        Rendered {
            query: query.to_string(),
            axis_names: axes.iter().map(|i| format!("o{i}")).collect(),
            rows,
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# {}\n", self.query);
        out.push_str(&self.axis_names.join("\t"));
        if !self.axis_names.is_empty() {
            out.push('\t');
        }
        out.push_str("value\n");
        for (labels, value) in &self.rows {
            out.push_str(&labels.join("\t"));
            if !labels.is_empty() {
                out.push('\t');
            }
            out.push_str(value);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "query": self.query,
            "axes": self.axis_names,
            "rows": self.rows.iter().map(|(labels, value)| {
                serde_json::json!({"outcomes": labels, "value": value})
            }).collect::<Vec<_>>(),
        })
    }
}

fn parse_query(q: &str, axes: usize) -> Result<Query> {
    if q == "joint" {
        return Ok(Query::Joint);
    }
    if let Some(rest) = q.strip_prefix("marginal:") {
        return Ok(Query::Marginal(parse_axis_list(rest, axes)?));
    }
    if let Some(rest) = q.strip_prefix("conditional:") {
        let inner = rest.trim_start_matches('[').trim_end_matches(']');
        let (target, given) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("conditional query {q:?} needs a bar")))?;
        return Ok(Query::Conditional(
            parse_axis_items(target, axes)?,
            parse_axis_items(given, axes)?,
        ));
    }
    Err(Error::Parse(format!("unknown query {q:?}")))
}

fn parse_axis_list(s: &str, axes: usize) -> Result<Vec<usize>> {
    parse_axis_items(s.trim_start_matches('[').trim_end_matches(']'), axes)
}

fn parse_axis_items(s: &str, axes: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let i: usize = item
            .parse()
            .map_err(|_| Error::Parse(format!("bad axis {item:?}")))?;
        if i >= axes {
            return Err(Error::Parse(format!("axis {i} out of range")));
        }
        out.push(i);
    }
    Ok(out)
}

enum Query {
    Joint,
    Marginal(Vec<usize>),
    Conditional(Vec<usize>, Vec<usize>),
}

fn render_queries<S: Scalar>(table: &ProbTable<S>, queries: &[String]) -> Result<Vec<Rendered>> {
    let queries: Vec<String> = if queries.is_empty() {
        vec!["joint".into()]
    } else {
        queries.to_vec()
    };
    let n = table.axes.len();
    let mut out = Vec::new();
    for q in &queries {
        match parse_query(q, n)? {
            Query::Joint => {
                let all: Vec<usize> = (0..n).collect();
                out.push(Rendered::from_table(q, &all, table));
            }
            Query::Marginal(keep) => {
                out.push(Rendered::from_table(q, &keep, &table.marginal(&keep)));
            }
            Query::Conditional(target, given) => {
                let cond = table.conditional(&target, &given);
                let axes: Vec<usize> = target.iter().chain(&given).copied().collect();
                let as_table = ProbTable {
                    axes: cond.axes.clone(),
                    entries: cond
                        .entries
                        .iter()
                        .map(|v| v.clone().unwrap_or_else(S::zero))
                        .collect(),
                };
                let mut rendered = Rendered::from_table(q, &axes, &as_table);
                // restore "undefined" markers
                for ((_, value), entry) in rendered.rows.iter_mut().zip({
                    let mut pairs: Vec<(Vec<String>, Option<S>)> = as_table
                        .tuples()
                        .iter()
                        .zip(&cond.entries)
                        .map(|(tuple, v)| {
                            let labels: Vec<String> = tuple
                                .iter()
                                .enumerate()
                                .map(|(axis, &i)| as_table.axes[axis][i].clone())
                                .collect();
                            (labels, v.clone())
                        })
                        .collect();
                    pairs.sort_by(|a, b| a.0.cmp(&b.0));
                    pairs.into_iter()
                }) {
                    if entry.1.is_none() {
                        *value = "undefined".into();
                    }
                }
                out.push(rendered);
            }
        }
    }
    Ok(out)
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn labels_from(v: &Value, n: usize) -> Result<Vec<String>> {
    match v.get("labels") {
        None => Ok(default_labels(n)),
        Some(l) => {
            let labels: Vec<String> = serde_json::from_value(l.clone())?;
            if labels.len() != n {
                return Err(Error::Parse("label count mismatch".into()));
            }
            Ok(labels)
        }
    }
}

fn step_kind(v: &Value) -> Result<&str> {
    v.get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("step without a kind".into()))
}

fn build_step<E, FP, FM>(
    e: &E,
    v: &Value,
    parse_pred: FP,
    parse_mor: FM,
) -> Result<Test<E::Obj, E::Mor>>
where
    E: LogicEffectus,
    FP: Fn(&Value) -> Result<E::Mor>,
    FM: Fn(&Value) -> Result<E::Mor>,
{
    match step_kind(v)? {
        "luders" | "generalized_luders" | "observable" => {
            let key = if v.get("observable").is_some() {
                "observable"
            } else {
                "effects"
            };
            let raw = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing observable effects".into()))?;
            let preds: Result<Vec<E::Mor>> = raw.iter().map(&parse_pred).collect();
            let preds = preds?;
            let labels = labels_from(v, preds.len())?;
            let obs = measurement::observable(e, labels, preds)?;
            match step_kind(v)? {
                "luders" => measurement::luders_instrument(e, &obs),
                "generalized_luders" => measurement::generalized_luders_instrument(e, &obs),
                _ => Ok(obs),
            }
        }
        "channel" => {
            let m = parse_mor(
                v.get("morphism")
                    .ok_or_else(|| Error::Parse("channel without a morphism".into()))?,
            )?;
            measurement::channel(e, m)
        }
        "instrument" => {
            let raw = v
                .get("parts")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("instrument without parts".into()))?;
            let parts: Result<Vec<E::Mor>> = raw.iter().map(&parse_mor).collect();
            let parts = parts?;
            let labels = labels_from(v, parts.len())?;
            measurement::new_test(e, labels, parts)
        }
        other => Err(Error::Parse(format!("unknown step kind {other:?}"))),
    }
}

fn check_step_object<O: Eq + std::fmt::Debug, M>(t: &Test<O, M>, expected: &O) -> Result<()> {
    if &t.dom != expected {
        return Err(Error::TypeMismatch(format!(
            "step starts at {:?} but the system is in {expected:?}",
            t.dom
        )));
    }
    Ok(())
}

/// Runs an experiment document; the tables are rendered per query.
pub fn run_experiment_doc(doc: &ExperimentDoc, cfg: &RunCfg) -> Result<Vec<Rendered>> {
    match doc.instance.as_str() {
        "pfn" => {
            let e = Pfn;
            #[derive(Deserialize)]
            struct Obj {
                size: usize,
            }
            let obj: Obj = serde_json::from_value(doc.object.clone())?;
            let size = obj.size;
            let prep =
                match step_kind(&doc.prep)? {
                    "point" => {
                        let at =
                            doc.prep.get("at").and_then(Value::as_u64).ok_or_else(|| {
                                Error::Parse("point state without position".into())
                            })? as usize;
                        if at >= size {
                            return Err(Error::TypeMismatch("point outside the carrier".into()));
                        }
                        measurement::channel(&e, PfnMor::point(size, at))?
                    }
                    _ => build_step(
                        &e,
                        &doc.prep,
                        |v| {
                            let f = pfn_mor_from_value(v)?;
                            if f.dom != size || f.cod != 1 {
                                return Err(Error::TypeMismatch("bad predicate type".into()));
                            }
                            Ok(f)
                        },
                        pfn_mor_from_value,
                    )?,
                };
            if prep.dom != e.unit() {
                return Err(Error::TypeMismatch(
                    "preparation must start at the unit".into(),
                ));
            }
            let mut steps = Vec::new();
            let mut state = prep.cod;
            for s in &doc.steps {
                let t = build_step(
                    &e,
                    s,
                    |v| {
                        let f = pfn_mor_from_value(v)?;
                        if f.cod != 1 {
                            return Err(Error::TypeMismatch(
                                "predicate must end at the unit".into(),
                            ));
                        }
                        Ok(f)
                    },
                    pfn_mor_from_value,
                )?;
                check_step_object(&t, &state)?;
                state = t.cod;
                steps.push(t);
            }
            let prep = Test {
                dom: prep.dom,
                cod: prep.cod,
                outcomes: prep.outcomes,
                parts: prep.parts,
            };
            let table = measurement::run_experiment(&e, &prep, &steps)?;
            render_queries(&table, &doc.queries)
        }
        "prob" => {
            let e = Prob;
            #[derive(Deserialize)]
            struct Obj {
                size: usize,
            }
            let obj: Obj = serde_json::from_value(doc.object.clone())?;
            let size = obj.size;
            let prep = match step_kind(&doc.prep)? {
                "state" => {
                    let masses = doc
                        .prep
                        .get("masses")
                        .and_then(Value::as_array)
                        .ok_or_else(|| Error::Parse("state without masses".into()))?;
                    let masses: Result<Vec<Rat>> = masses.iter().map(rat_from_value).collect();
                    let m = ProbMor::substate(&masses?);
                    if m.cod != size {
                        return Err(Error::TypeMismatch("state has the wrong size".into()));
                    }
                    measurement::channel(&e, m)?
                }
                "uniform" => measurement::channel(&e, ProbMor::uniform(size))?,
                _ => build_step(&e, &doc.prep, prob_mor_from_value, prob_mor_from_value)?,
            };
            if prep.dom != e.unit() {
                return Err(Error::TypeMismatch(
                    "preparation must start at the unit".into(),
                ));
            }
            let mut steps = Vec::new();
            let mut state = prep.cod;
            for s in &doc.steps {
                let t = build_step(
                    &e,
                    s,
                    |v| {
                        let values: Vec<Value> = serde_json::from_value(v.clone())?;
                        let values: Result<Vec<Rat>> = values.iter().map(rat_from_value).collect();
                        Ok(ProbMor::predicate(&values?))
                    },
                    prob_mor_from_value,
                )?;
                check_step_object(&t, &state)?;
                state = t.cod;
                steps.push(t);
            }
            let table = measurement::run_experiment(&e, &prep, &steps)?;
            render_queries(&table, &doc.queries)
        }
        "quantum" => {
            let e = Quantum::new(cfg.eps);
            let obj = qobject_from_value(&doc.object)?;
            let prep = match step_kind(&doc.prep)? {
                "state" => {
                    let density = doc
                        .prep
                        .get("density")
                        .ok_or_else(|| Error::Parse("state without a density".into()))?;
                    let rho = qelement_from_value(&obj, density)?;
                    measurement::channel(&e, QMorphism::from_density(&rho))?
                }
                "maximally_mixed" => {
                    let dim: usize = obj.blocks.iter().sum();
                    let rho = QElement::unit(&obj).map(|m| m.scale(1.0 / dim as f64));
                    measurement::channel(&e, QMorphism::from_density(&rho))?
                }
                _ => {
                    return Err(Error::Parse("unknown quantum preparation".into()));
                }
            };
            let mut steps = Vec::new();
            let mut state = prep.cod.clone();
            for s in &doc.steps {
                let t = build_step(
                    &e,
                    s,
                    |v| {
                        let eff = qelement_from_value(&state, v)?;
                        if !eff.is_effect(100.0 * e.eps) {
                            return Err(Error::TypeMismatch("matrix is not an effect".into()));
                        }
                        Ok(QMorphism::from_effect(&eff))
                    },
                    qmorphism_from_value,
                )?;
                check_step_object(&t, &state)?;
                state = t.cod.clone();
                steps.push(t);
            }
            let table = measurement::run_experiment(&e, &prep, &steps)?;
            let total = table.total().0;
            if (total - 1.0).abs() > 100.0 * cfg.eps {
                return Err(Error::Tolerance(format!(
                    "table mass {total} deviates from one beyond 100·eps"
                )));
            }
            render_queries(&table, &doc.queries)
        }
        other => Err(Error::Parse(format!("unknown instance {other:?}"))),
    }
}
