//! JSON encodings of diagonals, homotopies, algebras, graphs and evaluation reports.
//!
//! Rationals are written as `"p/q"` strings and trees by their text code. Objects
//! are `serde_json::Value`s, whose maps keep keys sorted.

use crate::algebra::{CyclicAInfAlgebra, Grading};
use crate::chain::Chain;
use crate::diagonal::{Diagonal, Flags};
use crate::error::{Error, Result};
use crate::homotopy::{FormChain, Homotopy};
use crate::kontsevich::KontsevichEvaluation;
use crate::rational::{format_q, parse_q, Q};
use crate::ribbon::{det_sign, standard_symbols, symbols_sign, RibbonGraph, Sym, Twist};
use crate::tensor::PairChain;
use crate::tree::PlanarTree;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

fn err(at: &str, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {what}"))
}

fn field<'a>(v: &'a Value, at: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| err(at, format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(at, "expected an array"))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(at, "expected an object"))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(at, "expected a non-negative integer"))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(at, "expected a string"))
}

/// A rational from `"p/q"`, `"p"` or an integer.
pub fn rational_from(v: &Value, at: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| err(at, format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Q::from_integer(i.into()))
            .ok_or_else(|| err(at, "expected an integer")),
        _ => Err(err(at, "expected a rational")),
    }
}

fn rational_to(x: &Q) -> Value {
    Value::String(format_q(x))
}

fn tree_from(v: &Value, at: &str) -> Result<PlanarTree> {
    PlanarTree::parse(as_str(v, at)?).map_err(|e| err(at, e))
}

fn flags_from(v: &Value, at: &str) -> Result<Flags> {
    let b = |k: &str| -> Result<bool> {
        match v.get(k) {
            None => Ok(false),
            Some(x) => x
                .as_bool()
                .ok_or_else(|| err(&format!("{at}.{k}"), "expected a boolean")),
        }
    };
    Ok(Flags {
        cyclic: b("cyclic")?,
        cocommutative: b("cocommutative")?,
    })
}

fn pairs_to(c: &PairChain) -> Value {
    Value::Array(
        c.iter()
            .map(|((l, r), q)| json!({"left": l.code(), "right": r.code(), "coeff": format_q(q)}))
            .collect(),
    )
}

fn pairs_from(v: &Value, at: &str) -> Result<PairChain> {
    let mut out = Chain::zero();
    for (i, t) in as_array(v, at)?.iter().enumerate() {
        let at = format!("{at}[{i}]");
        let l = tree_from(field(t, &at, "left")?, &format!("{at}.left"))?;
        let r = tree_from(field(t, &at, "right")?, &format!("{at}.right"))?;
        let c = rational_from(field(t, &at, "coeff")?, &format!("{at}.coeff"))?;
        out.add_term((l, r), c);
    }
    Ok(out)
}

pub fn diagonal_to_json(d: &Diagonal) -> Value {
    let entries: Map<String, Value> = d
        .entries
        .iter()
        .map(|(n, c)| (n.to_string(), pairs_to(c)))
        .collect();
    json!({"max_arity": d.max_arity, "flags": d.flags, "entries": entries})
}

pub fn diagonal_from_json(v: &Value) -> Result<Diagonal> {
    let max_arity = as_usize(field(v, "diagonal", "max_arity")?, "diagonal.max_arity")?;
    let flags = flags_from(field(v, "diagonal", "flags")?, "diagonal.flags")?;
    let mut entries = BTreeMap::new();
    for (k, e) in as_object(field(v, "diagonal", "entries")?, "diagonal.entries")? {
        let at = format!("diagonal.entries.{k}");
        let n: usize = k
            .parse()
            .map_err(|_| err(&at, "arity keys must be integers"))?;
        let c = pairs_from(e, &at)?;
        for (l, r) in c.keys() {
            if l.leaves() != n || r.leaves() != n {
                return Err(err(
                    &at,
                    format!("tree pair {l}⊗{r} does not have {n} leaves"),
                ));
            }
        }
        entries.insert(n, c);
    }
    for n in 2..=max_arity {
        if !entries.contains_key(&n) {
            return Err(err("diagonal.entries", format!("arity {n} missing")));
        }
    }
    Ok(Diagonal {
        max_arity,
        flags,
        entries,
    })
}

fn forms_to(c: &FormChain) -> Value {
    let mut grouped: BTreeMap<(PlanarTree, PlanarTree), (Vec<Q>, Vec<Q>)> = BTreeMap::new();
    for ((l, r, k, dt), q) in c.iter() {
        let e = grouped.entry((l.clone(), r.clone())).or_default();
        let poly = if *dt { &mut e.1 } else { &mut e.0 };
        let k = *k as usize;
        if poly.len() <= k {
            poly.resize(k + 1, Q::from_integer(0.into()));
        }
        poly[k] = q.clone();
    }
    Value::Array(
        grouped
            .into_iter()
            .map(|((l, r), (p, dp))| {
                json!({
                    "left": l.code(),
                    "right": r.code(),
                    "poly": p.iter().map(format_q).collect::<Vec<_>>(),
                    "dt_poly": dp.iter().map(format_q).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn forms_from(v: &Value, at: &str) -> Result<FormChain> {
    let mut out = Chain::zero();
    for (i, t) in as_array(v, at)?.iter().enumerate() {
        let at = format!("{at}[{i}]");
        let l = tree_from(field(t, &at, "left")?, &format!("{at}.left"))?;
        let r = tree_from(field(t, &at, "right")?, &format!("{at}.right"))?;
        for (key, dt) in [("poly", false), ("dt_poly", true)] {
            let Some(p) = t.get(key) else { continue };
            for (k, c) in as_array(p, &format!("{at}.{key}"))?.iter().enumerate() {
                let c = rational_from(c, &format!("{at}.{key}[{k}]"))?;
                out.add_term((l.clone(), r.clone(), k as u32, dt), c);
            }
        }
    }
    Ok(out)
}

pub fn homotopy_to_json(h: &Homotopy) -> Value {
    let entries: Map<String, Value> = h
        .entries
        .iter()
        .map(|(n, c)| (n.to_string(), forms_to(c)))
        .collect();
    json!({
        "max_arity": h.max_arity,
        "flags": h.flags,
        "from": diagonal_to_json(&h.start),
        "to": diagonal_to_json(&h.end),
        "entries": entries,
    })
}

pub fn homotopy_from_json(v: &Value) -> Result<Homotopy> {
    let max_arity = as_usize(field(v, "homotopy", "max_arity")?, "homotopy.max_arity")?;
    let flags = flags_from(field(v, "homotopy", "flags")?, "homotopy.flags")?;
    let start = diagonal_from_json(field(v, "homotopy", "from")?)?;
    let end = diagonal_from_json(field(v, "homotopy", "to")?)?;
    let mut entries = BTreeMap::new();
    for (k, e) in as_object(field(v, "homotopy", "entries")?, "homotopy.entries")? {
        let at = format!("homotopy.entries.{k}");
        let n: usize = k
            .parse()
            .map_err(|_| err(&at, "arity keys must be integers"))?;
        entries.insert(n, forms_from(e, &at)?);
    }
    Ok(Homotopy {
        max_arity,
        flags,
        start,
        end,
        entries,
    })
}

pub fn algebra_to_json(a: &CyclicAInfAlgebra) -> Value {
    let basis: Vec<Value> = a
        .names
        .iter()
        .zip(&a.degrees)
        .map(|(n, d)| json!({"name": n, "degree": d}))
        .collect();
    let pairing: Vec<Vec<String>> = a
        .pairing
        .iter()
        .map(|r| r.iter().map(format_q).collect())
        .collect();
    let mut ops = Map::new();
    for (k, table) in &a.ops {
        if table.is_empty() {
            continue;
        }
        let rows: Vec<Value> = table
            .iter()
            .map(|(ins, out)| {
                let out: Map<String, Value> = out.iter().map(|(i, c)| (a.names[*i].clone(), rational_to(c))).collect();
                json!({"in": ins.iter().map(|&i| a.names[i].clone()).collect::<Vec<_>>(), "out": out})
            })
            .collect();
        ops.insert(k.to_string(), Value::Array(rows));
    }
    json!({
        "parity": a.parity,
        "grading": match a.grading { Grading::Z => "Z", Grading::Z2 => "Z2" },
        "basis": basis,
        "pairing": pairing,
        "ops": ops,
    })
}

pub fn algebra_from_json(v: &Value) -> Result<CyclicAInfAlgebra> {
    let parity = as_usize(field(v, "algebra", "parity")?, "algebra.parity")?;
    if parity > 1 {
        return Err(err("algebra.parity", "must be 0 or 1"));
    }
    let grading = match v.get("grading").map(|g| g.as_str()) {
        None | Some(Some("Z")) => Grading::Z,
        Some(Some("Z2")) => Grading::Z2,
        _ => return Err(err("algebra.grading", "expected \"Z\" or \"Z2\"")),
    };
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for (i, b) in as_array(field(v, "algebra", "basis")?, "algebra.basis")?
        .iter()
        .enumerate()
    {
        let at = format!("algebra.basis[{i}]");
        let name = as_str(field(b, &at, "name")?, &format!("{at}.name"))?.to_string();
        if names.contains(&name) {
            return Err(err(&at, format!("duplicate basis name {name:?}")));
        }
        let d = field(b, &at, "degree")?
            .as_i64()
            .ok_or_else(|| err(&format!("{at}.degree"), "expected an integer"))?;
        names.push(name);
        degrees.push(d);
    }
    let dim = names.len();
    let index = |name: &str, at: &str| -> Result<usize> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| err(at, format!("unknown basis element {name:?}")))
    };
    let rows = as_array(field(v, "algebra", "pairing")?, "algebra.pairing")?;
    if rows.len() != dim {
        return Err(err("algebra.pairing", format!("expected {dim} rows")));
    }
    let mut pairing = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let at = format!("algebra.pairing[{i}]");
        let r = as_array(r, &at)?;
        if r.len() != dim {
            return Err(err(&at, format!("expected {dim} entries")));
        }
        pairing.push(
            r.iter()
                .enumerate()
                .map(|(j, x)| rational_from(x, &format!("{at}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut alg = CyclicAInfAlgebra {
        parity,
        grading,
        names: names.clone(),
        degrees,
        pairing,
        ops: BTreeMap::new(),
    };
    if let Some(ops) = v.get("ops") {
        for (k, rows) in as_object(ops, "algebra.ops")? {
            let at = format!("algebra.ops.{k}");
            let arity: usize = k
                .parse()
                .map_err(|_| err(&at, "arity keys must be integers"))?;
            for (i, row) in as_array(rows, &at)?.iter().enumerate() {
                let at = format!("{at}[{i}]");
                let ins = as_array(field(row, &at, "in")?, &format!("{at}.in"))?
                    .iter()
                    .map(|x| index(as_str(x, &format!("{at}.in"))?, &format!("{at}.in")))
                    .collect::<Result<Vec<_>>>()?;
                if ins.len() != arity {
                    return Err(err(&at, format!("expected {arity} inputs")));
                }
                let mut out = Chain::zero();
                for (name, c) in as_object(field(row, &at, "out")?, &format!("{at}.out"))? {
                    out.add_term(
                        index(name, &format!("{at}.out"))?,
                        rational_from(c, &format!("{at}.out.{name}"))?,
                    );
                }
                alg.set_op(&ins, out);
            }
        }
    }
    Ok(alg)
}

/// A ribbon graph with an orientation `sign · standard`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    pub graph: RibbonGraph,
    pub twist: Twist,
    pub sign: i32,
}

pub fn graph_to_json(g: &OrientedGraph) -> Value {
    let (order, sign) = match g.twist {
        Twist::Untwisted => (standard_symbols(&g.graph), g.sign),
        Twist::Twisted => {
            let mut order = standard_symbols(&g.graph);
            order.extend((0..g.graph.loops()).map(Sym::S));
            let s = det_sign(&g.graph, &order).expect("standard symbols are complete");
            (order, g.sign * s)
        }
    };
    json!({
        "half_edges": g.graph.half_edges(),
        "nu": g.graph.vertices(),
        "iota": g.graph.edges().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "orientation": {"order": order.iter().map(Sym::to_string).collect::<Vec<_>>(), "sign": sign},
        "twisted": g.twist == Twist::Twisted,
    })
}

pub fn graph_from_json(v: &Value) -> Result<OrientedGraph> {
    let n = as_usize(field(v, "graph", "half_edges")?, "graph.half_edges")?;
    let list = |key: &str| -> Result<Vec<Vec<usize>>> {
        let at = format!("graph.{key}");
        as_array(field(v, "graph", key)?, &at)?
            .iter()
            .enumerate()
            .map(|(i, c)| {
                as_array(c, &format!("{at}[{i}]"))?
                    .iter()
                    .map(|x| as_usize(x, &format!("{at}[{i}]")))
                    .collect()
            })
            .collect()
    };
    let cycles = list("nu")?;
    let mut edges = Vec::new();
    for (i, p) in list("iota")?.into_iter().enumerate() {
        if p.len() != 2 {
            return Err(err(&format!("graph.iota[{i}]"), "expected a pair"));
        }
        edges.push((p[0], p[1]));
    }
    if 2 * edges.len() != n {
        return Err(err(
            "graph.half_edges",
            format!("{n} half-edges but {} edges", edges.len()),
        ));
    }
    let graph = RibbonGraph::from_cycles(&cycles, &edges).map_err(|e| err("graph", e))?;
    let twist = match v.get("twisted") {
        None => Twist::Untwisted,
        Some(b) => {
            if b.as_bool()
                .ok_or_else(|| err("graph.twisted", "expected a boolean"))?
            {
                Twist::Twisted
            } else {
                Twist::Untwisted
            }
        }
    };
    let o = field(v, "graph", "orientation")?;
    let sign = match field(o, "graph.orientation", "sign")?.as_i64() {
        Some(1) => 1,
        Some(-1) => -1,
        _ => return Err(err("graph.orientation.sign", "expected 1 or -1")),
    };
    let order = as_array(
        field(o, "graph.orientation", "order")?,
        "graph.orientation.order",
    )?
    .iter()
    .map(|s| as_str(s, "graph.orientation.order")?.parse::<Sym>())
    .collect::<Result<Vec<_>>>()?;
    let s = symbols_sign(&graph, twist, &order).map_err(|e| err("graph.orientation.order", e))?;
    Ok(OrientedGraph {
        graph,
        twist,
        sign: sign * s,
    })
}

pub fn evaluation_to_json(e: &KontsevichEvaluation, algebra: &str) -> Value {
    json!({
        "graph": graph_to_json(&OrientedGraph { graph: e.graph.clone(), twist: e.twist, sign: e.sign }),
        "algebra": algebra,
        "regime": match e.twist { Twist::Untwisted => "even", Twist::Twisted => "odd-twisted" },
        "value": format_q(&e.value),
        "eta_parity": e.eta_parity,
        "per_edge": e.per_edge,
    })
}

pub fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        err(
            what,
            format!("line {} column {}: {e}", e.line(), e.column()),
        )
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| err(&path.display().to_string(), e))?;
    parse_json(&text, &path.display().to_string())
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_pretty(v)).map_err(|e| err(&path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, m3_algebra, odd_clifford};
    use crate::diagonal::build_diagonal;
    use crate::ribbon::{dumbbell, rose, theta};

    #[test]
    fn diagonal_round_trip() {
        let d = build_diagonal(4, Flags::CYCLIC_COCOMMUTATIVE).unwrap();
        let v = diagonal_to_json(&d);
        assert_eq!(diagonal_from_json(&v).unwrap(), d);
        let text = to_pretty(&v);
        assert_eq!(
            diagonal_from_json(&parse_json(&text, "x").unwrap()).unwrap(),
            d
        );
    }

    #[test]
    fn algebra_round_trip() {
        for a in [dual_numbers(true), m3_algebra(), odd_clifford()] {
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        }
    }

    #[test]
    fn graph_round_trip() {
        for g in [
            theta(),
            dumbbell(),
            rose(&[(0, 3), (1, 4), (2, 5)]).unwrap(),
        ] {
            for twist in [Twist::Untwisted, Twist::Twisted] {
                for sign in [1, -1] {
                    let o = OrientedGraph {
                        graph: g.clone(),
                        twist,
                        sign,
                    };
                    assert_eq!(graph_from_json(&graph_to_json(&o)).unwrap(), o);
                }
            }
        }
    }

    #[test]
    fn errors_name_their_location() {
        let v: Value = serde_json::from_str(r#"{"max_arity": 2, "flags": {}, "entries": {"2": [{"left": "(**)", "right": "(**)", "coeff": "1/0"}]}}"#).unwrap();
        let e = diagonal_from_json(&v).unwrap_err();
        assert!(e.to_string().contains("diagonal.entries.2[0].coeff"), "{e}");
    }
}
