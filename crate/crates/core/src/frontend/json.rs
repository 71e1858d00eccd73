//! JSON documents. Every top-level document carries `"schema": 1`; scalars
//! are strings and sparse entries are `[row, col, "value"]` sorted by
//! `(row, col)`.

use serde::Deserialize;
use serde_json::{json, Map, Value as Json};

use crate::algebra::{CoreElement, MixedElement, ModuleVector};
use crate::chain::DivisorChain;
use crate::deep::{DeepElement, TailVector};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::leavitt::LeavittElement;
use crate::linalg::DenseMatrix;
use crate::sparse::{Entries, SparseMatrix};

use super::eval::Value;

pub const SCHEMA: u64 = 1;

/// Adds the schema tag to an object.
pub fn document(mut body: Json) -> Json {
    if let Json::Object(map) = &mut body {
        let mut out = Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.append(map);
        return Json::Object(out);
    }
    body
}

pub fn entries(e: &Entries) -> Json {
    Json::Array(e.iter().map(|(&(r, c), s)| json!([r, c, s.to_string()])).collect())
}

pub fn dense(rows: &[Vec<Scalar>]) -> Json {
    Json::Array(
        rows.iter()
            .map(|r| Json::Array(r.iter().map(|s| json!(s.to_string())).collect()))
            .collect(),
    )
}

pub fn dense_matrix(m: &DenseMatrix) -> Json {
    dense(&m.to_rows())
}

pub fn sparse_dense(m: &SparseMatrix, field: FieldDescriptor) -> Json {
    dense(&m.to_dense(field))
}

pub fn core(x: &CoreElement) -> Json {
    json!({
        "kind": "core",
        "field": x.field().to_string(),
        "chain": x.chain().to_string(),
        "level": x.level(),
        "size": x.size(),
        "entries": entries(x.block().entries()),
        "text": x.to_string(),
    })
}

pub fn leavitt(x: &LeavittElement) -> Json {
    let m = x.chain().homogeneous_radix();
    let components: Vec<Json> = x
        .components()
        .iter()
        .map(|(ratio, part)| {
            json!({
                "ratio": ratio.to_string(),
                "degree": m.and_then(|m| ratio.degree(m)),
                "rows": part.rows(),
                "cols": part.cols(),
                "entries": entries(part.block().entries()),
            })
        })
        .collect();
    json!({
        "kind": "leavitt",
        "field": x.field().to_string(),
        "chain": x.chain().to_string(),
        "components": components,
        "text": x.to_string(),
    })
}

pub fn deep(x: &DeepElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .iter()
        .map(|((u, v), s)| json!([u.to_string(), v.to_string(), s.to_string()]))
        .collect();
    json!({
        "kind": "deep",
        "field": x.field().to_string(),
        "chain": x.chain().to_string(),
        "terms": terms,
        "text": x.to_string(),
    })
}

pub fn mixed(x: &MixedElement) -> Json {
    let r = x.recurrent_part();
    json!({
        "kind": "mixed",
        "field": x.field().to_string(),
        "chain": x.chain().to_string(),
        "finite": entries(x.finite_part()),
        "recurrent": {
            "level": r.level(),
            "size": r.size(),
            "entries": entries(r.block().entries()),
        },
        "text": x.to_string(),
    })
}

pub fn value(v: &Value) -> Json {
    match v {
        Value::Core(x) => core(x),
        Value::Leavitt(x) => leavitt(x),
        Value::Deep(x) => deep(x),
        Value::Mixed(x) => mixed(x),
    }
}

pub fn module_vector(v: &ModuleVector) -> Json {
    let entries: Vec<Json> = v.entries().iter().map(|(&i, s)| json!([i, s.to_string()])).collect();
    json!({
        "kind": "vector",
        "level": v.level(),
        "entries": entries,
        "text": v.to_string(),
    })
}

pub fn tail_vector(v: &TailVector) -> Json {
    let entries: Vec<Json> = v
        .entries()
        .iter()
        .map(|(w, s)| json!([w.to_string(), s.to_string()]))
        .collect();
    json!({
        "kind": "tail-vector",
        "entries": entries,
        "text": v.to_string(),
    })
}

#[derive(Debug, Deserialize)]
struct ElementInput {
    #[serde(default)]
    schema: Option<u64>,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    field: Option<String>,
    chain: String,
    level: usize,
    entries: Vec<(usize, usize, Json)>,
    #[serde(default)]
    size: Option<usize>,
}

/// Reads `{chain, level, entries}` (optionally `field`, `size`) into a core
/// element at the given level, without compressing. Accepts the documents
/// written by [`core`]; other keys are ignored.
pub fn read_core(text: &str, default_field: FieldDescriptor) -> Result<CoreElement> {
    let input: ElementInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if input.schema.is_some_and(|s| s != SCHEMA) {
        return Err(Error::Parse(format!(
            "unsupported schema {}",
            input.schema.unwrap_or_default()
        )));
    }
    if input.kind.as_deref().is_some_and(|k| k != "core") {
        return Err(Error::KindMismatch(input.kind.unwrap_or_default(), "core".into()));
    }
    let field = match &input.field {
        Some(f) => f.parse()?,
        None => default_field,
    };
    let chain: DivisorChain = input.chain.parse()?;
    let n = chain.size(input.level)?;
    if input.size.is_some_and(|s| s != n) {
        return Err(Error::ShapeMismatch(format!(
            "size {} at level {} of {chain}",
            input.size.unwrap_or_default(),
            input.level
        )));
    }
    let mut block = SparseMatrix::zero(n, n);
    for (r, c, s) in input.entries {
        block.add_entry(r, c, scalar(&s, field)?)?;
    }
    CoreElement::from_block(&chain, field, input.level, block)
}

/// A JSON scalar: a string literal or an integer.
pub fn scalar(v: &Json, field: FieldDescriptor) -> Result<Scalar> {
    match v {
        Json::String(s) => field.parse_scalar(s),
        Json::Number(n) => field.parse_scalar(&n.to_string()),
        other => Err(Error::Parse(format!("bad scalar {other}"))),
    }
}

/// Reads a rectangular array of scalars such as `[[1,0],["1/2",3]]`.
pub fn read_dense(text: &str, field: FieldDescriptor) -> Result<DenseMatrix> {
    let rows: Vec<Vec<Json>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if rows.is_empty() {
        return Err(Error::ShapeMismatch("empty array".into()));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| scalar(s, field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_rows(field, rows)
}

/// `{"kind": ..., "message": ...}` for a domain error.
pub fn error(e: &Error) -> Json {
    document(json!({ "error": { "kind": e.kind(), "message": e.to_string() } }))
}

/// Aligned plain-text rendering of a document for `--pretty`.
pub fn pretty(doc: &Json) -> String {
    let mut out = String::new();
    render(doc, 0, &mut out);
    out
}

fn render(doc: &Json, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match doc {
        Json::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                if k == "schema" {
                    continue;
                }
                match v {
                    Json::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 2, out);
                    }
                    Json::Array(items) if is_grid(items) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        grid(items, indent + 2, out);
                    }
                    Json::Array(items) if items.iter().any(Json::is_object) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            render(item, indent + 2, out);
                            out.push_str(&format!("{pad}  --\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k:width$}  {}\n", inline(v))),
                }
            }
        }
        Json::Array(items) if is_grid(items) => grid(items, indent, out),
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_grid(items: &[Json]) -> bool {
    !items.is_empty()
        && items.iter().all(|r| {
            r.as_array()
                .is_some_and(|c| c.iter().all(|x| !x.is_array() && !x.is_object()))
        })
}

fn grid(items: &[Json], indent: usize, out: &mut String) {
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|r| r.as_array().expect("grid row").iter().map(inline).collect())
        .collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pad = " ".repeat(indent);
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        out.push_str(&format!("{pad}{}\n", line.join("  ").trim_end()));
    }
}
