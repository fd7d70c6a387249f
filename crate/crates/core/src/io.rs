//! Instance and result files.
//!
//! An instance file holds a single JSON document on one line:
//!
//! ```text
//! {"kind":"sukp","n":3,"m_cap":2,"costs":["1","1","2"],"budget":"2",
//!  "edges":[{"verts":[0,1],"profit":"5"},{"verts":[1,2],"profit":"4"}],
//!  "vertex_profits":["0","0","0"]}
//! ```
//!
//! `kind` is `hypergraph`, `weighted_hypergraph` or `sukp`. Rationals are
//! written as `"p/q"` strings; on input, decimal strings (`"0.25"`) and plain
//! JSON numbers are accepted too. Hypergraph files omit `costs`, `budget` and
//! `vertex_profits`; for weighted hypergraphs the edge `profit` is the weight.

use std::fs;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, WeightedHypergraph};
use crate::instance::{SukpInstance, Solution};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Hypergraph(Hypergraph),
    Weighted(WeightedHypergraph),
    Sukp(SukpInstance),
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEdge {
    verts: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profit: Option<Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawInstance {
    kind: String,
    n: usize,
    m_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    costs: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<Value>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_profits: Option<Vec<Value>>,
}

fn rational_field(v: &Value, field: &str) -> Result<Rational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) => parse_rational(&num.to_string()),
        _ => Err(Error::parse(field, "expected a rational string or number")),
    };
    parsed.map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(field, message),
        other => other,
    })
}

fn nonnegative_field(v: &Value, field: &str) -> Result<Rational> {
    let r = rational_field(v, field)?;
    if r.is_negative() {
        return Err(Error::parse(field, format!("must be nonnegative, got {r}")));
    }
    Ok(r)
}

fn rational_list(values: &[Value], n: usize, field: &str) -> Result<Vec<Rational>> {
    if values.len() != n {
        return Err(Error::parse(field, format!("expected {n} entries, found {}", values.len())));
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| nonnegative_field(v, &format!("{field}[{i}]")))
        .collect()
}

fn edge_list(raw: &[RawEdge], n: usize, m_cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for (i, e) in raw.iter().enumerate() {
        if e.verts.is_empty() {
            return Err(Error::parse(format!("edges[{i}].verts"), "edge must be nonempty"));
        }
        if e.verts.len() > m_cap {
            return Err(Error::parse(
                format!("edges[{i}].verts"),
                format!("{} vertices exceed m_cap = {m_cap}", e.verts.len()),
            ));
        }
        let mut verts = Vec::with_capacity(e.verts.len());
        for (j, &v) in e.verts.iter().enumerate() {
            if v < 0 || v as usize >= n {
                return Err(Error::parse(
                    format!("edges[{i}].verts[{j}]"),
                    format!("vertex id {v} out of range 0..{n}"),
                ));
            }
            verts.push(v as usize);
        }
        verts.sort_unstable();
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(format!("edges[{i}].verts"), "repeated vertex"));
        }
        if !seen.insert(verts.clone()) {
            return Err(Error::parse(format!("edges[{i}]"), format!("duplicate edge {verts:?}")));
        }
        out.push(verts);
    }
    Ok(out)
}

fn edge_profits(raw: &[RawEdge]) -> Result<Vec<Rational>> {
    raw.iter()
        .enumerate()
        .map(|(i, e)| {
            let field = format!("edges[{i}].profit");
            match &e.profit {
                Some(p) => nonnegative_field(p, &field),
                None => Err(Error::parse(field, "missing")),
            }
        })
        .collect()
}

fn from_raw(raw: RawInstance) -> Result<Instance> {
    let edges = edge_list(&raw.edges, raw.n, raw.m_cap)?;
    match raw.kind.as_str() {
        "hypergraph" => Ok(Instance::Hypergraph(Hypergraph::new(raw.n, raw.m_cap, edges)?)),
        "weighted_hypergraph" => {
            let weights = edge_profits(&raw.edges)?;
            if let Some(i) = weights.iter().position(Zero::is_zero) {
                return Err(Error::parse(format!("edges[{i}].profit"), "weights must be positive"));
            }
            Ok(Instance::Weighted(WeightedHypergraph::from_weighted_edges(
                raw.n,
                raw.m_cap,
                edges.into_iter().zip(weights).collect(),
            )?))
        }
        "sukp" => {
            let costs = rational_list(
                raw.costs.as_deref().ok_or_else(|| Error::parse("costs", "missing"))?,
                raw.n,
                "costs",
            )?;
            let budget = nonnegative_field(
                raw.budget.as_ref().ok_or_else(|| Error::parse("budget", "missing"))?,
                "budget",
            )?;
            let vertex_profits = match raw.vertex_profits.as_deref() {
                Some(v) => rational_list(v, raw.n, "vertex_profits")?,
                None => vec![Rational::zero(); raw.n],
            };
            let profits = edge_profits(&raw.edges)?;
            Ok(Instance::Sukp(SukpInstance::new(
                raw.n,
                raw.m_cap,
                costs,
                budget,
                edges.into_iter().zip(profits).collect(),
                vertex_profits,
            )?))
        }
        other => Err(Error::parse("kind", format!("unknown kind {other:?}"))),
    }
}

fn str_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn to_raw(inst: &Instance) -> RawInstance {
    let ids = |e: &Vec<usize>| e.iter().map(|&v| v as i64).collect();
    match inst {
        Instance::Hypergraph(g) => RawInstance {
            kind: "hypergraph".into(),
            n: g.n(),
            m_cap: g.m_cap(),
            costs: None,
            budget: None,
            edges: g.edges().iter().map(|e| RawEdge { verts: ids(e), profit: None }).collect(),
            vertex_profits: None,
        },
        Instance::Weighted(g) => RawInstance {
            kind: "weighted_hypergraph".into(),
            n: g.n(),
            m_cap: g.m_cap(),
            costs: None,
            budget: None,
            edges: g
                .edges()
                .map(|(e, w)| RawEdge { verts: ids(e), profit: Some(str_value(w)) })
                .collect(),
            vertex_profits: None,
        },
        Instance::Sukp(s) => RawInstance {
            kind: "sukp".into(),
            n: s.n(),
            m_cap: s.m_cap(),
            costs: Some(s.costs().iter().map(str_value).collect()),
            budget: Some(str_value(s.budget())),
            edges: s
                .edges()
                .iter()
                .zip(s.profits())
                .map(|(e, p)| RawEdge { verts: ids(e), profit: Some(str_value(p)) })
                .collect(),
            vertex_profits: Some(s.vertex_profits().iter().map(str_value).collect()),
        },
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    from_raw(raw)
}

/// Single-line JSON followed by a newline.
pub fn instance_to_string(inst: &Instance) -> String {
    let mut s = serde_json::to_string(&to_raw(inst)).expect("instance serializes");
    s.push('\n');
    s
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance_to_string(inst))?;
    Ok(())
}

/// Result document emitted by the `solve` and `exact` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveRecord {
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
    pub vertices: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub cost: Rational,
    pub method: String,
    #[serde(serialize_with = "crate::rational::as_string::option::serialize")]
    pub guarantee_exponent: Option<Rational>,
}

impl SolveRecord {
    pub fn new(solution: &Solution, method: impl Into<String>, guarantee_exponent: Option<Rational>) -> Self {
        SolveRecord {
            value: solution.value.clone(),
            vertices: solution.vertices.clone(),
            cost: solution.total_cost.clone(),
            method: method.into(),
            guarantee_exponent,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn hypergraph_roundtrip() {
        let g = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 3, 4], vec![0, 2, 4]]).unwrap();
        let inst = Instance::Hypergraph(g);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_instance(&inst, &path).unwrap();
        assert_eq!(read_instance(&path).unwrap(), inst);
    }

    #[test]
    fn sukp_roundtrip_keeps_fractions() {
        let s = SukpInstance::new(
            3,
            2,
            vec![ratio(1, 3), int(1), ratio(5, 2)],
            ratio(7, 4),
            vec![(vec![0, 1], int(5)), (vec![2], ratio(1, 8))],
            vec![int(0), ratio(3, 2), int(0)],
        )
        .unwrap();
        let inst = Instance::Sukp(s);
        assert_eq!(parse_instance(&instance_to_string(&inst)).unwrap(), inst);
    }

    #[test]
    fn rejects_out_of_range_id() {
        let text = r#"{"kind":"hypergraph","n":3,"m_cap":2,"edges":[{"verts":[0,3]}]}"#;
        match parse_instance(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "edges[0].verts[1]"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_cost() {
        let text = r#"{"kind":"sukp","n":2,"m_cap":2,"costs":["1","-2"],"budget":"3","edges":[]}"#;
        match parse_instance(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "costs[1]"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_and_empty_edges() {
        let dup = r#"{"kind":"hypergraph","n":3,"m_cap":2,"edges":[{"verts":[0,1]},{"verts":[1,0]}]}"#;
        assert!(matches!(parse_instance(dup), Err(Error::Parse { .. })));
        let empty = r#"{"kind":"sukp","n":2,"m_cap":2,"costs":[1,1],"budget":1,"edges":[{"verts":[],"profit":1}]}"#;
        assert!(matches!(parse_instance(empty), Err(Error::Parse { .. })));
    }

    #[test]
    fn accepts_numbers_and_decimals() {
        let text = r#"{"kind":"sukp","n":2,"m_cap":2,"costs":[1,"0.5"],"budget":1.5,"edges":[{"verts":[0,1],"profit":"3/2"}]}"#;
        let Instance::Sukp(s) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(s.costs()[1], ratio(1, 2));
        assert_eq!(*s.budget(), ratio(3, 2));
        assert_eq!(s.profits()[0], ratio(3, 2));
    }

    #[test]
    fn malformed_json_reports_line() {
        let err = parse_instance("{\"kind\":\n").unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location.starts_with("line 2")), "{err}");
    }
}
