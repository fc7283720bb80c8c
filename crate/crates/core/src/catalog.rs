//! Built-in translation schemes and diagrams.
//!
//! Diagram edges are named after the label slot they carry (`ei`, `ej`,
//! `ek`, or `e1..e7`), so a diagram and its hand-drawn dual share edge ids.
//! Rotations were read off straight-line drawings with the roots evenly
//! spaced clockwise on the circle.

use crate::diagram::{Diagram, DiagramBuilder};
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::scheme::{BMElement, Basis};
use crate::translation::TranslationScheme;

pub const SCHEME_NAMES: [&str; 4] = ["z4-cycle", "h22", "z5-paley", "z6-cycle"];

pub const DIAGRAM_NAMES: [&str; 14] = [
    "star",
    "triangle",
    "fig1",
    "path2",
    "parallel2",
    "loop0",
    "point0",
    "point1",
    "ex21-lhs",
    "ex21-rhs",
    "ex23-lhs",
    "ex23-rhs",
    "loops-side",
    "loops-nested",
];

/// Labels of the five-root example as drawn, for edges `e1..e7`.
pub const FIG1_LABELS: [usize; 7] = [1, 2, 3, 1, 4, 4, 5];

pub fn scheme(name: &str) -> Result<TranslationScheme> {
    let (orders, sets): (&[usize], Vec<Vec<usize>>) = match name {
        "z4-cycle" => (&[4], vec![vec![0], vec![1, 3], vec![2]]),
        // Z2 x Z2 by Hamming weight; indices 1 = (0,1), 2 = (1,0), 3 = (1,1)
        "h22" => (&[2, 2], vec![vec![0], vec![1, 2], vec![3]]),
        "z5-paley" => (&[5], vec![vec![0], vec![1, 4], vec![2, 3]]),
        "z6-cycle" => (&[6], vec![vec![0], vec![1, 5], vec![2, 4], vec![3]]),
        _ => return Err(Error::invalid(format!("unknown built-in scheme `{name}`"))),
    };
    TranslationScheme::from_indices(AbelianGroup::new(orders)?, sets)
}

pub fn all_schemes() -> Vec<(&'static str, TranslationScheme)> {
    SCHEME_NAMES
        .iter()
        .map(|&n| (n, scheme(n).expect("built-in schemes are valid")))
        .collect()
}

/// Number of labels a built-in diagram takes.
pub fn arity(name: &str) -> Result<usize> {
    Ok(match name {
        "point0" | "point1" => 0,
        "loop0" => 1,
        "path2" | "parallel2" | "ex21-lhs" | "ex21-rhs" | "loops-side" | "loops-nested" => 2,
        "star" | "triangle" | "ex23-lhs" | "ex23-rhs" => 3,
        "fig1" => 7,
        _ => return Err(Error::invalid(format!("unknown built-in diagram `{name}`"))),
    })
}

pub fn default_labels(name: &str) -> Result<Vec<usize>> {
    Ok(match name {
        "fig1" => FIG1_LABELS.to_vec(),
        "ex23-lhs" | "ex23-rhs" => vec![1, 0, 1],
        other => vec![1; arity(other)?],
    })
}

/// Maps a label into `0..=classes`, keeping nonzero labels nonzero.
pub fn fit_label(label: usize, classes: usize) -> usize {
    if label == 0 || classes == 0 {
        0
    } else {
        1 + (label - 1) % classes
    }
}

/// A built-in diagram. `classes`, when given, folds the labels into the
/// range of a scheme with that many classes.
pub fn diagram(name: &str, labels: Option<&[usize]>, classes: Option<usize>) -> Result<Diagram> {
    let want = arity(name)?;
    let mut labels = match labels {
        Some(l) => l.to_vec(),
        None => default_labels(name)?,
    };
    if labels.len() != want {
        return Err(Error::invalid(format!(
            "`{name}` takes {want} labels, got {}",
            labels.len()
        )));
    }
    if let Some(d) = classes {
        for l in &mut labels {
            *l = fit_label(*l, d);
        }
    }
    let l = &labels;
    match name {
        "star" => star(l[0], l[1], l[2]),
        "triangle" => triangle(l[0], l[1], l[2]),
        "fig1" => fig1(l.as_slice().try_into().expect("arity checked")),
        "path2" => path2(l[0], l[1]),
        "parallel2" => parallel2(l[0], l[1]),
        "loop0" => loop0(l[0]),
        "point0" => point0(),
        "point1" => point1(),
        "ex21-lhs" => ex21_lhs(l[0], l[1]),
        "ex21-rhs" => ex21_rhs(l[0], l[1]),
        "ex23-lhs" => ex23_lhs(l[0], l[1], l[2]),
        "ex23-rhs" => ex23_rhs(l[0], l[1], l[2]),
        "loops-side" => loops_side(l[0], l[1]),
        "loops-nested" => loops_nested(l[0], l[1]),
        _ => unreachable!("arity accepted `{name}`"),
    }
}

fn a(i: usize) -> BMElement {
    BMElement::pure(Basis::A, i)
}

fn e(i: usize) -> BMElement {
    BMElement::pure(Basis::E, i)
}

/// Three roots on the boundary joined to one inner node, weights `E_i, E_j,
/// E_k`; it vanishes exactly when `q_ij^k` does.
pub fn star(i: usize, j: usize, k: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .node("d")
        .edge("ej", "a", "d", e(j))
        .edge("ek", "d", "b", e(k))
        .edge("ei", "c", "d", e(i))
        .rotation("a", &["ej:t"])
        .rotation("b", &["ek:h"])
        .rotation("c", &["ei:t"])
        .rotation("d", &["ej:h", "ek:t", "ei:h"])
        .build()
}

/// Three roots joined pairwise, weights `A_i, A_j, A_k`; it vanishes
/// exactly when `p_ij^k` does.
pub fn triangle(i: usize, j: usize, k: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .edge("ej", "a", "b", a(j))
        .edge("ek", "c", "b", a(k))
        .edge("ei", "c", "a", a(i))
        .rotation("a", &["ej:t", "ei:h"])
        .rotation("b", &["ek:h", "ej:h"])
        .rotation("c", &["ei:t", "ek:t"])
        .build()
}

/// Five roots and one inner node `f`.
/// Edges `e1..e7`: a->b, b->c, c->d, a->e, a->f, c->f, e->f.
pub fn fig1(labels: [usize; 7]) -> Result<Diagram> {
    let ends = [
        ("a", "b"),
        ("b", "c"),
        ("c", "d"),
        ("a", "e"),
        ("a", "f"),
        ("c", "f"),
        ("e", "f"),
    ];
    let mut b = DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .root("d")
        .root("e")
        .node("f");
    for (n, ((t, h), &l)) in ends.iter().zip(&labels).enumerate() {
        b = b.edge(&format!("e{}", n + 1), t, h, a(l));
    }
    b.rotation("a", &["e1:t", "e5:t", "e4:t"])
        .rotation("b", &["e2:t", "e1:h"])
        .rotation("c", &["e3:t", "e6:t", "e2:h"])
        .rotation("d", &["e3:h"])
        .rotation("e", &["e4:h", "e7:t"])
        .rotation("f", &["e5:h", "e6:h", "e7:h"])
        .build()
}

/// `r1 -A_i-> v -A_j-> r2`.
pub fn path2(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("r1")
        .node("v")
        .root("r2")
        .edge("ei", "r1", "v", a(i))
        .edge("ej", "v", "r2", a(j))
        .rotation("r1", &["ei:t"])
        .rotation("v", &["ei:h", "ej:t"])
        .rotation("r2", &["ej:h"])
        .build()
}

/// Two parallel edges `r1 -> r2`, `A_i` on the right and `A_j` on the left.
pub fn parallel2(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("r1")
        .root("r2")
        .edge("ei", "r1", "r2", a(i))
        .edge("ej", "r1", "r2", a(j))
        .rotation("r1", &["ei:t", "ej:t"])
        .rotation("r2", &["ej:h", "ei:h"])
        .build()
}

/// One inner node carrying a loop `A_i`; its scaffold is `tr A_i`.
pub fn loop0(i: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .node("v")
        .edge("ei", "v", "v", a(i))
        .rotation("v", &["ei:t", "ei:h"])
        .build()
}

pub fn point0() -> Result<Diagram> {
    DiagramBuilder::new().node("v").build()
}

pub fn point1() -> Result<Diagram> {
    DiagramBuilder::new().root("r1").build()
}

/// `r1 -A_0-> d`, `d -A_i-> r2`, `d -A_j-> r3`.
pub fn ex21_lhs(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .node("d")
        .edge("e0", "a", "d", a(0))
        .edge("ei", "d", "b", a(i))
        .edge("ej", "d", "c", a(j))
        .rotation("a", &["e0:t"])
        .rotation("b", &["ei:h"])
        .rotation("c", &["ej:h"])
        .rotation("d", &["e0:h", "ei:t", "ej:t"])
        .build()
}

/// `r1 -A_i-> r2`, `r1 -A_j-> r3`.
pub fn ex21_rhs(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .edge("ei", "a", "b", a(i))
        .edge("ej", "a", "c", a(j))
        .rotation("a", &["ei:t", "ej:t"])
        .rotation("b", &["ei:h"])
        .rotation("c", &["ej:h"])
        .build()
}

/// The path `r1 -> r2 -> r3 -> r4` with roots in clockwise order.
pub fn ex23_lhs(i: usize, j: usize, k: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .root("d")
        .edge("ei", "a", "b", a(i))
        .edge("ej", "b", "c", a(j))
        .edge("ek", "c", "d", a(k))
        .rotation("a", &["ei:t"])
        .rotation("b", &["ej:t", "ei:h"])
        .rotation("c", &["ek:t", "ej:h"])
        .rotation("d", &["ek:h"])
        .build()
}

/// The same path drawn with its last two roots swapped on the circle, so
/// the clockwise root order is `a, b, c, d` for the path `a -> b -> d -> c`.
pub fn ex23_rhs(i: usize, j: usize, k: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("a")
        .root("b")
        .root("c")
        .root("d")
        .edge("ei", "a", "b", a(i))
        .edge("ej", "b", "d", a(j))
        .edge("ek", "d", "c", a(k))
        .rotation("a", &["ei:t"])
        .rotation("b", &["ej:t", "ei:h"])
        .rotation("c", &["ek:h"])
        .rotation("d", &["ej:h", "ek:t"])
        .build()
}

/// Two loops at one root, drawn next to each other.
pub fn loops_side(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("r")
        .edge("ei", "r", "r", a(i))
        .edge("ej", "r", "r", a(j))
        .rotation("r", &["ei:t", "ei:h", "ej:t", "ej:h"])
        .build()
}

/// Two loops at one root, the second drawn inside the first.
pub fn loops_nested(i: usize, j: usize) -> Result<Diagram> {
    DiagramBuilder::new()
        .root("r")
        .edge("ei", "r", "r", a(i))
        .edge("ej", "r", "r", a(j))
        .rotation("r", &["ei:t", "ej:t", "ej:h", "ei:h"])
        .build()
}
