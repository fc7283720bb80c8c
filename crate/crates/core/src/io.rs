//! JSON formats for schemes, diagrams, tensors and reports, and the
//! `builtin:` naming of catalog entries.
//!
//! Complex numbers are `[re, im]` pairs. Floats within `1e-12` of an
//! integer are written as that integer, and `-0` as `0`, so that output
//! does not depend on rounding noise.

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog;
use crate::diagram::{Diagram, DiagramBuilder, FaceStructure, MapDart};
use crate::duality::DualityReport;
use crate::error::{Error, Result};
use crate::evaluate::ScaffoldTensor;
use crate::groups::{AbelianGroup, GroupElement};
use crate::scheme::{BMElement, Basis, CMatrix, Scheme};
use crate::translation::TranslationScheme;

pub const BUILTIN_PREFIX: &str = "builtin:";

/// Snaps `x` to the nearest integer when within `1e-12`, and `-0` to `0`.
pub fn clean(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        r + 0.0
    } else {
        x
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([clean(z.re), clean(z.im)])
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| complex_json(m[(r, c)])).collect()))
            .collect(),
    )
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("{what} JSON: {e}")))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read `{path}`: {e}")))
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupSpec {
    orders: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SchemeFile {
    Explicit {
        size: usize,
        relations: Vec<Vec<i64>>,
    },
    Translation {
        group: GroupSpec,
        classes: Vec<Vec<Vec<usize>>>,
    },
}

/// A scheme read from JSON: either a bare scheme or one with its group.
#[derive(Debug, Clone)]
pub enum LoadedScheme {
    Explicit(Scheme),
    Translation(TranslationScheme),
}

impl LoadedScheme {
    pub fn scheme(&self) -> &Scheme {
        match self {
            LoadedScheme::Explicit(s) => s,
            LoadedScheme::Translation(ts) => ts.scheme(),
        }
    }

    pub fn translation(&self) -> Option<&TranslationScheme> {
        match self {
            LoadedScheme::Explicit(_) => None,
            LoadedScheme::Translation(ts) => Some(ts),
        }
    }
}

pub fn parse_scheme(text: &str) -> Result<LoadedScheme> {
    match parse_json::<SchemeFile>(text, "scheme")? {
        SchemeFile::Explicit { size, relations } => Ok(LoadedScheme::Explicit(
            Scheme::from_flat_relations(size, &relations)?,
        )),
        SchemeFile::Translation { group, classes } => {
            let g = AbelianGroup::new(&group.orders)?;
            let sets: Vec<Vec<GroupElement>> = classes
                .into_iter()
                .map(|c| c.into_iter().map(GroupElement).collect())
                .collect();
            Ok(LoadedScheme::Translation(TranslationScheme::new(g, &sets)?))
        }
    }
}

pub fn translation_scheme_json(ts: &TranslationScheme) -> Value {
    let file = SchemeFile::Translation {
        group: GroupSpec {
            orders: ts.group().orders().to_vec(),
        },
        classes: ts
            .connection_sets()
            .into_iter()
            .map(|set| set.into_iter().map(|x| x.0).collect())
            .collect(),
    };
    serde_json::to_value(file).expect("scheme files serialize")
}

pub fn explicit_scheme_json(s: &Scheme) -> Value {
    let file = SchemeFile::Explicit {
        size: s.size(),
        relations: s
            .relations()
            .iter()
            .map(|m| {
                (0..m.len())
                    .map(|k| m[(k / s.size(), k % s.size())])
                    .collect()
            })
            .collect(),
    };
    serde_json::to_value(file).expect("scheme files serialize")
}

/// `p` as integers, `q`, `P`, `Q` as complex; the last three are null
/// without eigen data.
pub fn params_json(s: &Scheme) -> Value {
    let p = s.intersection_numbers().to_nested();
    let p: Vec<Vec<Vec<i64>>> = p
        .iter()
        .map(|a| {
            a.iter()
                .map(|b| b.iter().map(|z| z.re.round() as i64).collect())
                .collect()
        })
        .collect();
    let q = s.krein_parameters().ok().map(|q| {
        Value::Array(
            q.to_nested()
                .iter()
                .map(|a| {
                    Value::Array(
                        a.iter()
                            .map(|b| Value::Array(b.iter().map(|z| complex_json(*z)).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    });
    let (pm, qm) = match s.eigen() {
        Some(e) => (matrix_json(&e.p), matrix_json(&e.q)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "p": p,
        "q": q.unwrap_or(Value::Null),
        "P": pm,
        "Q": qm,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeSpec {
    id: String,
    tail: String,
    head: String,
    basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    nodes: Vec<String>,
    roots: Vec<String>,
    edges: Vec<EdgeSpec>,
    #[serde(default)]
    rotation: IndexMap<String, Vec<String>>,
}

/// Reads a diagram. An edge weight is `index` (a single basis element) or
/// `coeffs` (a combination over the basis).
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let file: DiagramFile = parse_json(text, "diagram")?;
    let mut b = DiagramBuilder::new();
    for n in &file.nodes {
        b = b.node(n);
    }
    for r in &file.roots {
        b = b.mark_root(r);
    }
    for e in &file.edges {
        let weight = match (e.index, &e.coeffs) {
            (Some(i), None) => BMElement::pure(e.basis, i),
            (None, Some(c)) => BMElement::new(
                e.basis,
                c.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
            ),
            _ => {
                return Err(Error::invalid(format!(
                    "edge `{}` needs exactly one of `index` and `coeffs`",
                    e.id
                )))
            }
        };
        b = b.edge(&e.id, &e.tail, &e.head, weight);
    }
    for (node, darts) in &file.rotation {
        b = b.rotation(node, darts);
    }
    b.build()
}

pub fn diagram_json(d: &Diagram) -> Value {
    let name = |v: usize| d.nodes()[v].clone();
    let file = DiagramFile {
        nodes: d.nodes().to_vec(),
        roots: d.roots().iter().map(|&r| name(r)).collect(),
        edges: d
            .edges()
            .iter()
            .map(|e| {
                let (index, coeffs) = match e.weight.as_pure() {
                    Some((_, i)) => (Some(i), None),
                    None => (
                        None,
                        Some(
                            e.weight
                                .coeffs
                                .iter()
                                .map(|z| [clean(z.re), clean(z.im)])
                                .collect(),
                        ),
                    ),
                };
                EdgeSpec {
                    id: e.id.clone(),
                    tail: name(e.tail),
                    head: name(e.head),
                    basis: e.weight.basis,
                    index,
                    coeffs,
                }
            })
            .collect(),
        rotation: (0..d.node_count())
            .map(|v| {
                let darts = d.rotation(v).iter().map(|&x| d.dart_label(x)).collect();
                (name(v), darts)
            })
            .collect(),
    };
    serde_json::to_value(file).expect("diagram files serialize")
}

fn map_dart_label(d: &Diagram, x: &MapDart) -> String {
    match x {
        MapDart::Edge(dt) => d.dart_label(*dt),
        MapDart::Arc { index, end } => {
            let suffix = if *end == crate::End::Tail { "t" } else { "h" };
            format!("b{}:{suffix}", index + 1)
        }
    }
}

/// Faces as dart walks, with the boundary arcs named `b1..bl`.
pub fn faces_json(d: &Diagram, fs: &FaceStructure) -> Value {
    let faces: Vec<Vec<String>> = fs
        .faces
        .iter()
        .map(|w| w.iter().map(|x| map_dart_label(d, x)).collect())
        .collect();
    let sides: Vec<Value> = d
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| json!({"edge": e.id, "left": fs.left[k], "right": fs.right[k]}))
        .collect();
    json!({
        "faces": faces,
        "outer": fs.outer,
        "root_faces": fs.root_faces,
        "edges": sides,
        "vertices": fs.vertices,
        "map_edges": fs.map_edges,
        "face_count": fs.faces.len(),
        "euler": fs.euler_characteristic(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    ell: usize,
    size: usize,
    entries: Vec<[f64; 2]>,
}

pub fn tensor_json(t: &ScaffoldTensor) -> Value {
    json!({
        "ell": t.ell,
        "size": t.size,
        "entries": t.entries.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
    })
}

pub fn parse_tensor(text: &str) -> Result<ScaffoldTensor> {
    let f: TensorFile = parse_json(text, "tensor")?;
    ScaffoldTensor::new(
        f.ell,
        f.size,
        f.entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

pub fn report_json(r: &DualityReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// A scheme from a file path or `builtin:<name>`.
pub fn load_scheme(source: &str) -> Result<LoadedScheme> {
    match source.strip_prefix(BUILTIN_PREFIX) {
        Some(name) => Ok(LoadedScheme::Translation(catalog::scheme(name)?)),
        None => parse_scheme(&read(source)?),
    }
}

/// A diagram from a file path or `builtin:<name>[:l1,l2,...]`. Built-in
/// labels are folded into `1..=classes` when `classes` is given.
pub fn load_diagram(source: &str, classes: Option<usize>) -> Result<Diagram> {
    let Some(rest) = source.strip_prefix(BUILTIN_PREFIX) else {
        return parse_diagram(&read(source)?);
    };
    let (name, labels) = match rest.split_once(':') {
        Some((name, list)) => {
            let labels = list
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad label `{s}` in `{source}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            (name, Some(labels))
        }
        None => (rest, None),
    };
    catalog::diagram(name, labels.as_deref(), classes)
}
