//! The JSON file format.
//!
//! A file is `{"data": {...}, "kind": "...", "modulus": m}`. Structure
//! tensors and actions are sparse lists of `[i, j, l, value]` with nonzero
//! values in index order; linear maps are dense row-major lists of rows.
//! Nested structures (a morphism's endpoints, a derivation's morphism) are
//! embedded by value. Keys are written in sorted order and number arrays
//! on one line, so equal values give identical bytes.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::homotopy::{Derivation, TwoAlgHomotopy};
use crate::ring::{ActionTensor, FiniteAlgebra, LinearMap, Zm};
use crate::two_cat::{TwoAlgMorphism, TwoAlgebra};
use crate::xmod::{CrossedModule, XModMorphism};

/// Any value that can live in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Algebra(FiniteAlgebra),
    XMod(CrossedModule),
    TwoAlg(TwoAlgebra),
    XModMorphism(XModMorphism),
    TwoAlgMorphism(TwoAlgMorphism),
    Derivation(Derivation),
    TwoAlgHomotopy(TwoAlgHomotopy),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::XMod(_) => "xmod",
            Structure::TwoAlg(_) => "2alg",
            Structure::XModMorphism(_) => "xmod_morphism",
            Structure::TwoAlgMorphism(_) => "2alg_morphism",
            Structure::Derivation(_) => "derivation",
            Structure::TwoAlgHomotopy(_) => "2alg_homotopy",
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            Structure::Algebra(a) => a.ring().modulus(),
            Structure::XMod(x) => x.r().ring().modulus(),
            Structure::TwoAlg(a) => a.ring().modulus(),
            Structure::XModMorphism(f) => f.f0().ring().modulus(),
            Structure::TwoAlgMorphism(f) => f.f0().ring().modulus(),
            Structure::Derivation(d) => d.map().ring().modulus(),
            Structure::TwoAlgHomotopy(h) => h.delta().ring().modulus(),
        }
    }
}

pub const KINDS: [&str; 7] = [
    "algebra",
    "xmod",
    "2alg",
    "xmod_morphism",
    "2alg_morphism",
    "derivation",
    "2alg_homotopy",
];

type Entry = [i64; 4];
type Rows = Vec<Vec<i64>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraBody {
    rank: usize,
    mul: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct XModBody {
    #[serde(rename = "C")]
    c: AlgebraBody,
    #[serde(rename = "R")]
    r: AlgebraBody,
    boundary: Rows,
    action: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoAlgBody {
    #[serde(rename = "A0")]
    a0: AlgebraBody,
    #[serde(rename = "A1")]
    a1: AlgebraBody,
    s: Rows,
    t: Rows,
    e: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct XModMorphismBody {
    source: XModBody,
    target: XModBody,
    f1: Rows,
    f0: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoAlgMorphismBody {
    source: TwoAlgBody,
    target: TwoAlgBody,
    #[serde(rename = "F1")]
    f1: Rows,
    #[serde(rename = "F0")]
    f0: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationBody {
    morphism: XModMorphismBody,
    map: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyBody {
    #[serde(rename = "F")]
    f: TwoAlgMorphismBody,
    #[serde(rename = "G")]
    g: TwoAlgMorphismBody,
    delta: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope<B> {
    kind: String,
    modulus: u64,
    data: B,
}

#[derive(Deserialize)]
struct Header {
    kind: String,
    modulus: u64,
}

// ---------------------------------------------------------------- reading

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn typed<B: DeserializeOwned>(text: &str) -> Result<Envelope<B>> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        parse_error(
            format!("line {} column {}, field {path}", inner.line(), inner.column()),
            inner.to_string(),
        )
    })
}

struct Reader {
    ring: Zm,
}

impl Reader {
    fn residue(&self, field: &str, v: i64) -> Result<u64> {
        let m = self.ring.modulus();
        if v < 0 || v as u64 >= m {
            return Err(Error::OutOfRange {
                field: field.to_string(),
                value: v,
                modulus: m,
            });
        }
        Ok(v as u64)
    }

    fn vector(&self, field: &str, v: &[i64], len: usize) -> Result<Vec<u64>> {
        if v.len() != len {
            return Err(parse_error(field, format!("expected {len} entries, found {}", v.len())));
        }
        v.iter()
            .enumerate()
            .map(|(i, &x)| self.residue(&format!("{field}[{i}]"), x))
            .collect()
    }

    fn map(&self, field: &str, rows: &Rows, nrows: usize, ncols: usize) -> Result<LinearMap> {
        if rows.len() != nrows {
            return Err(parse_error(field, format!("expected {nrows} rows, found {}", rows.len())));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            entries.extend(self.vector(&format!("{field}[{i}]"), row, ncols)?);
        }
        LinearMap::new(self.ring, nrows, ncols, entries)
    }

    /// Dense table from sparse entries; indices bounded by `(n1, n2, n2)`.
    fn tensor(&self, field: &str, entries: &[Entry], n1: usize, n2: usize) -> Result<Vec<u64>> {
        let mut table = vec![0; n1 * n2 * n2];
        let mut seen = BTreeSet::new();
        for (k, e) in entries.iter().enumerate() {
            let at = format!("{field}[{k}]");
            let idx: Vec<usize> = e[..3]
                .iter()
                .zip([n1, n2, n2])
                .map(|(&v, bound)| {
                    usize::try_from(v)
                        .ok()
                        .filter(|&u| u < bound)
                        .ok_or_else(|| parse_error(&at, format!("index {v} out of range (bound {bound})")))
                })
                .collect::<Result<_>>()?;
            if !seen.insert((idx[0], idx[1], idx[2])) {
                return Err(parse_error(&at, "repeated index triple"));
            }
            table[(idx[0] * n2 + idx[1]) * n2 + idx[2]] = self.residue(&format!("{at}[3]"), e[3])?;
        }
        Ok(table)
    }

    fn algebra(&self, field: &str, b: &AlgebraBody) -> Result<FiniteAlgebra> {
        let d = b.rank;
        let table = self.tensor(&format!("{field}.mul"), &b.mul, d, d)?;
        let unit = b
            .unit
            .as_ref()
            .map(|u| self.vector(&format!("{field}.unit"), u, d))
            .transpose()?;
        let mut a = FiniteAlgebra::new(self.ring, d, table, unit)?;
        if let Some(l) = &b.labels {
            if l.len() != d {
                return Err(parse_error(format!("{field}.labels"), "one label per basis element"));
            }
            a = a.with_labels(l.clone());
        }
        Ok(a)
    }

    fn xmod(&self, field: &str, b: &XModBody) -> Result<CrossedModule> {
        let c = self.algebra(&format!("{field}.C"), &b.c)?;
        let r = self.algebra(&format!("{field}.R"), &b.r)?;
        if r.unit().is_none() {
            return Err(parse_error(format!("{field}.R.unit"), "R must declare a unit"));
        }
        let boundary = self.map(&format!("{field}.boundary"), &b.boundary, r.rank(), c.rank())?;
        let table = self.tensor(&format!("{field}.action"), &b.action, r.rank(), c.rank())?;
        let action = ActionTensor::new(self.ring, r.rank(), c.rank(), table)?;
        CrossedModule::new(c, r, boundary, action)
    }

    fn two_alg(&self, field: &str, b: &TwoAlgBody) -> Result<TwoAlgebra> {
        let a0 = self.algebra(&format!("{field}.A0"), &b.a0)?;
        let a1 = self.algebra(&format!("{field}.A1"), &b.a1)?;
        for (name, a) in [("A0", &a0), ("A1", &a1)] {
            if a.unit().is_none() {
                return Err(parse_error(format!("{field}.{name}.unit"), "2-algebra levels must declare a unit"));
            }
        }
        let (d0, d1) = (a0.rank(), a1.rank());
        let s = self.map(&format!("{field}.s"), &b.s, d0, d1)?;
        let t = self.map(&format!("{field}.t"), &b.t, d0, d1)?;
        let e = self.map(&format!("{field}.e"), &b.e, d1, d0)?;
        TwoAlgebra::new(a0, a1, s, t, e)
    }

    fn xmod_morphism(&self, field: &str, b: &XModMorphismBody) -> Result<XModMorphism> {
        let x = self.xmod(&format!("{field}.source"), &b.source)?;
        let y = self.xmod(&format!("{field}.target"), &b.target)?;
        let f1 = self.map(&format!("{field}.f1"), &b.f1, y.c().rank(), x.c().rank())?;
        let f0 = self.map(&format!("{field}.f0"), &b.f0, y.r().rank(), x.r().rank())?;
        XModMorphism::new(Arc::new(x), Arc::new(y), f1, f0)
    }

    fn two_alg_morphism(&self, field: &str, b: &TwoAlgMorphismBody) -> Result<TwoAlgMorphism> {
        let a = self.two_alg(&format!("{field}.source"), &b.source)?;
        let c = self.two_alg(&format!("{field}.target"), &b.target)?;
        let f1 = self.map(&format!("{field}.F1"), &b.f1, c.a1().rank(), a.a1().rank())?;
        let f0 = self.map(&format!("{field}.F0"), &b.f0, c.a0().rank(), a.a0().rank())?;
        TwoAlgMorphism::new(Arc::new(a), Arc::new(c), f1, f0)
    }
}

/// Parses a file. Errors carry a line/column or field location.
pub fn parse(text: &str) -> Result<Structure> {
    let header: Header = {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        serde_json::from_value(v).map_err(|e| parse_error("top level", e.to_string()))?
    };
    let rd = Reader {
        ring: Zm::new(header.modulus).map_err(|e| parse_error("modulus", e.to_string()))?,
    };
    let s = match header.kind.as_str() {
        "algebra" => Structure::Algebra(rd.algebra("data", &typed::<AlgebraBody>(text)?.data)?),
        "xmod" => Structure::XMod(rd.xmod("data", &typed::<XModBody>(text)?.data)?),
        "2alg" => Structure::TwoAlg(rd.two_alg("data", &typed::<TwoAlgBody>(text)?.data)?),
        "xmod_morphism" => {
            Structure::XModMorphism(rd.xmod_morphism("data", &typed::<XModMorphismBody>(text)?.data)?)
        }
        "2alg_morphism" => {
            Structure::TwoAlgMorphism(rd.two_alg_morphism("data", &typed::<TwoAlgMorphismBody>(text)?.data)?)
        }
        "derivation" => {
            let b = typed::<DerivationBody>(text)?.data;
            let f = rd.xmod_morphism("data.morphism", &b.morphism)?;
            let map = rd.map("data.map", &b.map, f.target().c().rank(), f.source().r().rank())?;
            Structure::Derivation(Derivation::new(f, map)?)
        }
        "2alg_homotopy" => {
            let b = typed::<HomotopyBody>(text)?.data;
            let f = rd.two_alg_morphism("data.F", &b.f)?;
            let g = rd.two_alg_morphism("data.G", &b.g)?;
            let delta = rd.map("data.delta", &b.delta, f.target().a1().rank(), f.source().a0().rank())?;
            Structure::TwoAlgHomotopy(TwoAlgHomotopy::new(f, g, delta)?)
        }
        other => {
            return Err(parse_error(
                "kind",
                format!("unknown kind {other:?}; expected one of {}", KINDS.join(", ")),
            ))
        }
    };
    Ok(s)
}

// ---------------------------------------------------------------- writing

fn rows(f: &LinearMap) -> Rows {
    (0..f.codomain_rank())
        .map(|i| f.row(i).iter().map(|&v| v as i64).collect())
        .collect()
}

fn sparse(table: &[u64], n1: usize, n2: usize) -> Vec<Entry> {
    let mut out = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            for l in 0..n2 {
                let v = table[(i * n2 + j) * n2 + l];
                if v != 0 {
                    out.push([i as i64, j as i64, l as i64, v as i64]);
                }
            }
        }
    }
    out
}

fn algebra_body(a: &FiniteAlgebra) -> AlgebraBody {
    AlgebraBody {
        rank: a.rank(),
        mul: sparse(a.table(), a.rank(), a.rank()),
        unit: a.unit().map(|u| u.iter().map(|&v| v as i64).collect()),
        labels: a.labels().map(<[String]>::to_vec),
    }
}

fn xmod_body(x: &CrossedModule) -> XModBody {
    XModBody {
        c: algebra_body(x.c()),
        r: algebra_body(x.r()),
        boundary: rows(x.boundary()),
        action: sparse(x.action().table(), x.r().rank(), x.c().rank()),
    }
}

fn two_alg_body(a: &TwoAlgebra) -> TwoAlgBody {
    TwoAlgBody {
        a0: algebra_body(a.a0()),
        a1: algebra_body(a.a1()),
        s: rows(a.s()),
        t: rows(a.t()),
        e: rows(a.e()),
    }
}

fn xmod_morphism_body(f: &XModMorphism) -> XModMorphismBody {
    XModMorphismBody {
        source: xmod_body(f.source()),
        target: xmod_body(f.target()),
        f1: rows(f.f1()),
        f0: rows(f.f0()),
    }
}

fn two_alg_morphism_body(f: &TwoAlgMorphism) -> TwoAlgMorphismBody {
    TwoAlgMorphismBody {
        source: two_alg_body(f.source()),
        target: two_alg_body(f.target()),
        f1: rows(f.f1()),
        f0: rows(f.f0()),
    }
}

fn envelope<B: Serialize>(kind: &str, modulus: u64, data: B) -> Value {
    serde_json::to_value(Envelope {
        kind: kind.to_string(),
        modulus,
        data,
    })
    .expect("plain data serializes")
}

/// Canonical text of a structure, ending in a newline.
pub fn serialize(s: &Structure) -> String {
    let (kind, m) = (s.kind(), s.modulus());
    let v = match s {
        Structure::Algebra(a) => envelope(kind, m, algebra_body(a)),
        Structure::XMod(x) => envelope(kind, m, xmod_body(x)),
        Structure::TwoAlg(a) => envelope(kind, m, two_alg_body(a)),
        Structure::XModMorphism(f) => envelope(kind, m, xmod_morphism_body(f)),
        Structure::TwoAlgMorphism(f) => envelope(kind, m, two_alg_morphism_body(f)),
        Structure::Derivation(d) => envelope(
            kind,
            m,
            DerivationBody {
                morphism: xmod_morphism_body(d.base()),
                map: rows(d.map()),
            },
        ),
        Structure::TwoAlgHomotopy(h) => envelope(
            kind,
            m,
            HomotopyBody {
                f: two_alg_morphism_body(h.f()),
                g: two_alg_morphism_body(h.g()),
                delta: rows(h.delta()),
            },
        ),
    };
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).expect("scalars serialize")
}

fn flat(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        _ => scalar(v),
    }
}

/// Objects one key per line (keys sorted by `serde_json::Map`), arrays of
/// scalars on one line, arrays of such arrays one row per line.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (n, (k, val)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", scalar(&Value::String(k.clone())));
                write_value(out, val, indent + 1);
                out.push_str(if n + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}}}");
        }
        Value::Array(items) if items.is_empty() || is_flat(v) => out.push_str(&flat(v)),
        Value::Array(items) => {
            out.push_str("[\n");
            for (n, item) in items.iter().enumerate() {
                out.push_str(&pad);
                if is_flat(item) {
                    out.push_str(&flat(item));
                } else {
                    write_value(out, item, indent + 1);
                }
                out.push_str(if n + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}]");
        }
        _ => out.push_str(&scalar(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod;

    fn z2() -> Zm {
        Zm::new(2).unwrap()
    }

    #[test]
    fn minimal_algebra_file() {
        let text = r#"{"kind": "algebra", "modulus": 2, "data": {"rank": 1, "mul": [[0, 0, 0, 1]], "unit": [1]}}"#;
        match parse(text).unwrap() {
            Structure::Algebra(a) => {
                assert_eq!(a.rank(), 1);
                assert!(a.check().passed());
            }
            other => panic!("expected an algebra, got {other:?}"),
        }
    }

    #[test]
    fn example_one_round_trips() {
        let x = xmod::from_ideal(&FiniteAlgebra::truncated_polynomial(z2(), 2), &[vec![0, 1]]).unwrap();
        let s = Structure::XMod(x);
        let text = serialize(&s);
        let back = parse(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serialize(&back), text);
        match back {
            Structure::XMod(x) => assert!(x.is_crossed()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn out_of_range_entry_names_field() {
        let text = r#"{"kind": "algebra", "modulus": 2, "data": {"rank": 1, "mul": [[0, 0, 0, 2]]}}"#;
        match parse(text) {
            Err(Error::OutOfRange { field, value, modulus }) => {
                assert_eq!(field, "data.mul[0][3]");
                assert_eq!((value, modulus), (2, 2));
            }
            other => panic!("expected OutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn malformed_input_reports_location() {
        let err = parse("{\"kind\": \"algebra\",\n \"modulus\": 2,\n \"data\": {\"rank\": 1, \"mul\": [[0, 0, 0]]}}").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.contains("line 3"), "{location}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(matches!(parse("{"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse(r#"{"kind": "ring", "modulus": 2, "data": {}}"#),
            Err(Error::Parse { location, .. }) if location == "kind"
        ));
        let unknown = r#"{"kind": "algebra", "modulus": 2, "data": {"rank": 0, "mul": [], "extra": 1}}"#;
        assert!(matches!(parse(unknown), Err(Error::Parse { .. })));
    }

    #[test]
    fn equal_values_serialize_identically() {
        let a = FiniteAlgebra::truncated_polynomial(z2(), 2);
        let b = FiniteAlgebra::from_sparse(z2(), 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], Some(vec![1, 0]))
            .unwrap()
            .with_labels(vec!["1".into(), "x".into()]);
        assert_eq!(serialize(&Structure::Algebra(a)), serialize(&Structure::Algebra(b)));
    }
}
