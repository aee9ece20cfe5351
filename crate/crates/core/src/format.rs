//! File formats: circuits as canonical JSON, hardware graphs as JSON or
//! whitespace-separated edge lists.

use serde_json::{json, Map, Value};

use crate::circuit::{Angle, Circuit, Gate, RotationGate};
use crate::error::{Error, Result};
use crate::graph::HardwareGraph;
use crate::pauli::{Pauli, Sign};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn angle_to_json(a: &Angle) -> Value {
    match a {
        Angle::Fixed { quarters } => json!({"kind": "fixed", "value": Angle::fixed_spelling(*quarters)}),
        Angle::Param { name, sign, scale } => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("param"));
            m.insert("name".into(), json!(name));
            m.insert("sign".into(), json!(sign.as_i8()));
            if *scale != 1.0 {
                m.insert("scale".into(), json!(scale));
            }
            Value::Object(m)
        }
    }
}

fn angle_from_json(v: &Value) -> Result<Angle> {
    match v {
        Value::String(s) => Ok(Angle::fixed(Angle::parse_fixed(s)?)),
        Value::Object(m) if m.get("kind").and_then(Value::as_str) == Some("fixed") => {
            let value = m
                .get("value")
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err("fixed angle needs a string value"))?;
            Ok(Angle::fixed(Angle::parse_fixed(value)?))
        }
        Value::Object(m) => {
            if m.get("kind").and_then(Value::as_str) != Some("param") {
                return Err(parse_err("angle kind must be \"fixed\" or \"param\""));
            }
            let name = m
                .get("name")
                .and_then(Value::as_str)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| parse_err("param angle needs a name"))?;
            let sign = m
                .get("sign")
                .and_then(Value::as_i64)
                .and_then(|s| i8::try_from(s).ok())
                .and_then(Sign::from_i8)
                .ok_or_else(|| parse_err("param sign must be 1 or -1"))?;
            let scale = match m.get("scale") {
                None => 1.0,
                Some(s) => s
                    .as_f64()
                    .filter(|x| x.is_finite() && *x > 0.0)
                    .ok_or_else(|| parse_err("param scale must be a positive number"))?,
            };
            Ok(Angle::Param {
                name: name.to_string(),
                sign,
                scale,
            })
        }
        _ => Err(parse_err(format!("bad angle {v}"))),
    }
}

fn qubits_from_json(v: Option<&Value>, n: usize) -> Result<Vec<usize>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("gate needs a qubits array"))?;
    arr.iter()
        .map(|q| {
            let q = q
                .as_u64()
                .ok_or_else(|| parse_err(format!("bad qubit index {q}")))? as usize;
            if q >= n {
                return Err(Error::NodeOutOfRange { node: q, n });
            }
            Ok(q)
        })
        .collect()
}

fn gate_to_json(g: &Gate) -> Value {
    match g {
        Gate::Rotation(r) => json!({
            "angle": angle_to_json(&r.angle),
            "paulis": r.letters.iter().map(|l| l.to_char()).collect::<String>(),
            "qubits": r.qubits,
        }),
        Gate::Cnot { control, target } => json!({
            "kind": "cnot",
            "qubits": [control, target],
        }),
    }
}

fn gate_from_json(v: &Value, n: usize) -> Result<Gate> {
    let m = v.as_object().ok_or_else(|| parse_err("gate must be an object"))?;
    let qubits = qubits_from_json(m.get("qubits"), n)?;
    match m.get("kind").and_then(Value::as_str) {
        Some("cnot") => match qubits.as_slice() {
            [c, t] if c != t => Ok(Gate::Cnot { control: *c, target: *t }),
            _ => Err(parse_err("cnot needs two distinct qubits")),
        },
        Some(other) => Err(parse_err(format!("unknown gate kind '{other}'"))),
        None => {
            let letters = m
                .get("paulis")
                .and_then(Value::as_str)
                .ok_or_else(|| parse_err("rotation needs a paulis string"))?
                .chars()
                .map(Pauli::from_char)
                .collect::<Result<Vec<_>>>()?;
            let angle = angle_from_json(m.get("angle").ok_or_else(|| parse_err("rotation needs an angle"))?)?;
            Ok(RotationGate::new(qubits, letters, angle)
                .map_err(|e| parse_err(e.to_string()))?
                .into())
        }
    }
}

pub fn circuit_to_json(c: &Circuit) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(c.n));
    m.insert("gates".into(), Value::Array(c.gates.iter().map(gate_to_json).collect()));
    if let Some(layers) = &c.layers {
        m.insert("layers".into(), json!(layers));
    }
    Value::Object(m)
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn write_circuit(c: &Circuit) -> String {
    let mut s = serde_json::to_string_pretty(&circuit_to_json(c)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn read_circuit(text: &str) -> Result<Circuit> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let m = v.as_object().ok_or_else(|| parse_err("circuit must be an object"))?;
    let n = m
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("circuit needs a qubit count n"))? as usize;
    let gates = m
        .get("gates")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("circuit needs a gates array"))?
        .iter()
        .map(|g| gate_from_json(g, n))
        .collect::<Result<Vec<_>>>()?;
    let layers = match m.get("layers") {
        None | Some(Value::Null) => None,
        Some(l) => Some(
            serde_json::from_value::<Vec<Vec<usize>>>(l.clone()).map_err(|e| parse_err(format!("layers: {e}")))?,
        ),
    };
    let c = Circuit { n, gates, layers };
    if c.layers.is_some() {
        c.validate_layers().map_err(|e| parse_err(e.to_string()))?;
    }
    Ok(c)
}

/// Parses a hardware graph from `{"n": .., "edges": [[a, b], ..]}` or from
/// lines of `a b` pairs (`#` starts a comment, `n` is one past the largest node).
pub fn read_graph(text: &str) -> Result<HardwareGraph> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct GraphFile {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let f: GraphFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        return HardwareGraph::new(f.n, f.edges);
    }
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums: Vec<usize> = body
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(format!("line {}: expected two node indices", lineno + 1)))?;
        match nums.as_slice() {
            [a, b] => edges.push((*a, *b)),
            _ => return Err(parse_err(format!("line {}: expected two node indices", lineno + 1))),
        }
    }
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    HardwareGraph::new(n, edges)
}

pub fn write_graph(g: &HardwareGraph) -> String {
    let edges: Vec<[usize; 2]> = g.edges().map(|(a, b)| [a, b]).collect();
    let mut s = serde_json::to_string(&json!({"n": g.num_nodes(), "edges": edges})).expect("JSON values serialize");
    s.push('\n');
    s
}
