//! The on-disk document format.
//!
//! One JSON container holds an algebra, a directed system or a dual
//! system, tagged by `kind`. Tables are row-major lists of 0-based indices,
//! booleans are written as 0/1 and undefined partial-map entries as
//! `null`:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "kind": "algebra",
//!   "metadata": { "name": "2" },
//!   "payload": {
//!     "leq": [[1, 1], [0, 1]],
//!     "mul": [[0, 0], [0, 1]],
//!     "tilde": [1, 0],
//!     "minus": [1, 0],
//!     "unit": 1
//!   }
//! }
//! ```
//!
//! Syntax errors carry a line and column, type errors the path of the
//! offending value, and range errors the offending cell. Axioms are not
//! checked here.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::FiniteIpoAlgebra;
use crate::decompose::{DirectedSystem, IntegralComponent};
use crate::duality::DualSystem;
use crate::error::{DualityError, StructureError, SystemError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Algebra(FiniteIpoAlgebra),
    System(DirectedSystem),
    Dual(DualSystem),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::System(_) => "system",
            Payload::Dual(_) => "dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub format_version: u32,
    /// Free-form tags such as `name` and `source`.
    pub metadata: BTreeMap<String, Value>,
    pub payload: Payload,
}

impl AlgebraDocument {
    pub fn new(payload: Payload) -> Self {
        AlgebraDocument {
            format_version: FORMAT_VERSION,
            metadata: BTreeMap::new(),
            payload,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.metadata.insert("name".into(), Value::String(name.into()));
        self
    }

    pub fn algebra(alg: FiniteIpoAlgebra) -> Self {
        Self::new(Payload::Algebra(alg))
    }

    pub fn system(sys: DirectedSystem) -> Self {
        Self::new(Payload::System(sys))
    }

    pub fn dual(dual: DualSystem) -> Self {
        Self::new(Payload::Dual(dual))
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at `{path}`: {message}")]
    Type { path: String, message: String },
    #[error("unknown field `{path}`")]
    UnknownField { path: String },
    #[error("unsupported format_version {0}; expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("unknown kind `{0}`; expected algebra, system or dual")]
    Kind(String),
    #[error("expected a document of kind {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("{path}: {source}")]
    Structure {
        path: String,
        #[source]
        source: StructureError,
    },
    #[error("{path}: {value} is not 0 or 1")]
    NotBoolean { path: String, value: u64 },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Dual(#[from] DualityError),
}

#[derive(Serialize, Deserialize)]
struct RawHeader {
    format_version: u32,
    kind: String,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
    payload: Value,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    leq: Vec<Vec<u64>>,
    mul: Vec<Vec<usize>>,
    tilde: Vec<usize>,
    minus: Vec<usize>,
    #[serde(default)]
    unit: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawComponent {
    carrier: Vec<usize>,
    algebra: RawAlgebra,
}

#[derive(Serialize, Deserialize)]
struct RawMap<T> {
    from: usize,
    to: usize,
    map: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    join: Vec<Vec<usize>>,
    components: Vec<RawComponent>,
    #[serde(default)]
    phi: Vec<RawMap<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawDual {
    join: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    #[serde(default)]
    pmaps: Vec<RawMap<Option<usize>>>,
}

fn raw_algebra(a: &FiniteIpoAlgebra) -> RawAlgebra {
    RawAlgebra {
        leq: a.leq_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect(),
        mul: a.mul_rows(),
        tilde: a.tilde_table().to_vec(),
        minus: a.minus_table().to_vec(),
        unit: a.unit(),
    }
}

fn square_rows(flat: &[usize], d: usize) -> Vec<Vec<usize>> {
    flat.chunks(d).map(<[usize]>::to_vec).collect()
}

fn flatten_square(rows: Vec<Vec<usize>>, path: &str) -> Result<Vec<usize>, IoError> {
    let d = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != d) {
        return Err(IoError::Structure {
            path: path.into(),
            source: StructureError::Shape {
                table: "join",
                row: Some(i),
                expected: d,
                found: rows[i].len(),
            },
        });
    }
    Ok(rows.into_iter().flatten().collect())
}

fn cook_algebra(raw: RawAlgebra, path: &str) -> Result<FiniteIpoAlgebra, IoError> {
    let mut leq = Vec::with_capacity(raw.leq.len());
    for (i, row) in raw.leq.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.into_iter().enumerate() {
            match v {
                0 => out.push(false),
                1 => out.push(true),
                _ => {
                    return Err(IoError::NotBoolean {
                        path: format!("{path}.leq[{i}][{j}]"),
                        value: v,
                    })
                }
            }
        }
        leq.push(out);
    }
    FiniteIpoAlgebra::new(leq, raw.mul, raw.tilde, raw.minus, raw.unit).map_err(|source| IoError::Structure {
        path: path.into(),
        source,
    })
}

fn to_raw(doc: &AlgebraDocument) -> RawHeader {
    let payload = match &doc.payload {
        Payload::Algebra(a) => serde_json::to_value(raw_algebra(a)),
        Payload::System(s) => serde_json::to_value(RawSystem {
            join: square_rows(s.join_table(), s.d()),
            components: s
                .components()
                .iter()
                .map(|c| RawComponent {
                    carrier: c.carrier().to_vec(),
                    algebra: raw_algebra(c.algebra()),
                })
                .collect(),
            phi: s
                .phi_entries()
                .into_iter()
                .map(|(from, to, map)| RawMap { from, to, map })
                .collect(),
        }),
        Payload::Dual(d) => serde_json::to_value(RawDual {
            join: square_rows(d.join_table(), d.d()),
            atoms: d.atoms().to_vec(),
            pmaps: d
                .pmap_entries()
                .into_iter()
                .map(|(from, to, map)| RawMap { from, to, map })
                .collect(),
        }),
    }
    .expect("plain data serializes");
    RawHeader {
        format_version: doc.format_version,
        kind: doc.payload.kind().into(),
        metadata: doc.metadata.clone(),
        payload,
    }
}

/// Pretty JSON with every array of scalars on a single line, so that table
/// rows stay readable and diffs stay small.
pub fn serialize(doc: &AlgebraDocument) -> String {
    let value = serde_json::to_value(to_raw(doc)).expect("plain data serializes");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn typed<T: serde::de::DeserializeOwned>(v: &Value, prefix: &str) -> Result<T, IoError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        IoError::Type {
            path: if inner == "." { prefix.to_string() } else { format!("{prefix}.{inner}") },
            message: e.into_inner().to_string(),
        }
    })
}

/// First key present in `input` but not in `known`, as a dotted path.
fn unknown_key(input: &Value, known: &Value, path: &str) -> Option<String> {
    match (input, known) {
        (Value::Object(a), Value::Object(b)) => a.iter().find_map(|(k, v)| {
            let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
            match b.get(k) {
                None => Some(sub),
                Some(w) => unknown_key(v, w, &sub),
            }
        }),
        (Value::Array(a), Value::Array(b)) => a
            .iter()
            .zip(b)
            .enumerate()
            .find_map(|(i, (v, w))| unknown_key(v, w, &format!("{path}[{i}]"))),
        _ => None,
    }
}

/// Parses a document. With `strict`, fields the format does not define are
/// rejected instead of ignored.
pub fn parse(text: &str, strict: bool) -> Result<AlgebraDocument, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    let header: RawHeader = typed(&value, "")?;
    if header.format_version != FORMAT_VERSION {
        return Err(IoError::Version(header.format_version));
    }
    let (payload, known) = match header.kind.as_str() {
        "algebra" => {
            let raw: RawAlgebra = typed(&header.payload, "payload")?;
            let known = serde_json::to_value(&raw).expect("plain data");
            (Payload::Algebra(cook_algebra(raw, "payload")?), known)
        }
        "system" => {
            let raw: RawSystem = typed(&header.payload, "payload")?;
            let known = serde_json::to_value(&raw).expect("plain data");
            let join = flatten_square(raw.join, "payload.join")?;
            let mut components = Vec::with_capacity(raw.components.len());
            for (i, c) in raw.components.into_iter().enumerate() {
                let path = format!("payload.components[{i}].algebra");
                let alg = cook_algebra(c.algebra, &path)?;
                let comp = IntegralComponent::new(c.carrier, alg).map_err(|source| IoError::Structure {
                    path: format!("payload.components[{i}]"),
                    source,
                })?;
                components.push(comp);
            }
            let phi = raw.phi.into_iter().map(|m| (m.from, m.to, m.map)).collect();
            (Payload::System(DirectedSystem::new(join, components, phi)?), known)
        }
        "dual" => {
            let raw: RawDual = typed(&header.payload, "payload")?;
            let known = serde_json::to_value(&raw).expect("plain data");
            let join = flatten_square(raw.join, "payload.join")?;
            let pmaps = raw.pmaps.into_iter().map(|m| (m.from, m.to, m.map)).collect();
            (Payload::Dual(DualSystem::new(join, raw.atoms, pmaps)?), known)
        }
        other => return Err(IoError::Kind(other.into())),
    };
    if strict {
        let mut known_doc = serde_json::to_value(&header).expect("plain data");
        known_doc["payload"] = known;
        if let Some(path) = unknown_key(&value, &known_doc, "") {
            return Err(IoError::UnknownField { path });
        }
    }
    Ok(AlgebraDocument {
        format_version: header.format_version,
        metadata: header.metadata,
        payload,
    })
}

/// The payload as an algebra, or a kind mismatch.
pub fn expect_algebra(doc: AlgebraDocument) -> Result<FiniteIpoAlgebra, IoError> {
    match doc.payload {
        Payload::Algebra(a) => Ok(a),
        other => Err(IoError::KindMismatch {
            expected: "algebra",
            found: other.kind(),
        }),
    }
}

pub fn expect_system(doc: AlgebraDocument) -> Result<DirectedSystem, IoError> {
    match doc.payload {
        Payload::System(s) => Ok(s),
        other => Err(IoError::KindMismatch {
            expected: "system",
            found: other.kind(),
        }),
    }
}

pub fn expect_dual(doc: AlgebraDocument) -> Result<DualSystem, IoError> {
    match doc.payload {
        Payload::Dual(d) => Ok(d),
        other => Err(IoError::KindMismatch {
            expected: "dual",
            found: other.kind(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn round_trip(doc: AlgebraDocument) {
        let text = serialize(&doc);
        let back = parse(&text, true).unwrap();
        assert_eq!(back, doc);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn all_kinds_round_trip() {
        for alg in fixtures::all_fixtures() {
            round_trip(AlgebraDocument::algebra(alg));
        }
        round_trip(AlgebraDocument::system(fixtures::non_transitive_diamond_system()).named("diamond"));
        round_trip(AlgebraDocument::system(fixtures::non_lattice_system()));
        round_trip(AlgebraDocument::dual(fixtures::dual_semilattice_13()));
        round_trip(AlgebraDocument::dual(fixtures::dual_monoid_14()));
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        assert!(matches!(parse("", false), Err(IoError::Syntax { line: 1, .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"format_version\": 1,\n  \"kind\": }", false).unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 3, .. }), "{err}");
    }

    /// `two()` as a document, edited as JSON.
    fn edited(f: impl FnOnce(&mut Value)) -> String {
        let text = serialize(&AlgebraDocument::algebra(fixtures::two()));
        let mut v: Value = serde_json::from_str(&text).unwrap();
        f(&mut v);
        v.to_string()
    }

    #[test]
    fn out_of_range_product_names_the_cell() {
        let bad = edited(|v| v["payload"]["mul"][1][0] = 2.into());
        let err = parse(&bad, false).unwrap_err();
        match err {
            IoError::Structure {
                source: StructureError::OutOfRange { table: "mul", cell, value: 2, n: 2 },
                ..
            } => assert_eq!(cell, vec![1, 0]),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn type_errors_carry_paths() {
        let bad = edited(|v| v["payload"]["tilde"][1] = "x".into());
        let err = parse(&bad, false).unwrap_err();
        match err {
            IoError::Type { path, .. } => assert_eq!(path, "payload.tilde[1]"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn strict_mode_rejects_unknown_fields() {
        let extra = edited(|v| v["payload"]["colour"] = 3.into());
        assert!(parse(&extra, false).is_ok());
        match parse(&extra, true) {
            Err(IoError::UnknownField { path }) => assert_eq!(path, "payload.colour"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn leq_entries_must_be_bits() {
        let bad = edited(|v| v["payload"]["leq"][1][1] = 7.into());
        assert!(matches!(parse(&bad, false), Err(IoError::NotBoolean { value: 7, .. })));
    }

    #[test]
    fn version_and_kind_are_checked() {
        let bad = edited(|v| v["format_version"] = 9.into());
        assert!(matches!(parse(&bad, false), Err(IoError::Version(9))));
        let bad = edited(|v| v["kind"] = "poset".into());
        assert!(matches!(parse(&bad, false), Err(IoError::Kind(_))));
        let doc = parse(&edited(|_| {}), false).unwrap();
        assert!(matches!(expect_dual(doc), Err(IoError::KindMismatch { expected: "dual", found: "algebra" })));
    }
}
