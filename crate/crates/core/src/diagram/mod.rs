//! Rooted digraphs embedded in a closed disk, with Bose-Mesner edge weights.
//!
//! The embedding is a rotation system: for every node, the clockwise cyclic
//! order of its darts (edge ends). Roots sit on the boundary circle in
//! clockwise order `r_1, ..., r_l`, and the boundary is cut into arcs
//! `b_i: r_i -> r_{i+1}`. Those arcs are never listed by the caller. At a
//! root the rotation lists only the ordinary darts, clockwise, starting just
//! after the outgoing arc `b_i` and ending just before the incoming arc
//! `b_{i-1}`.
//!
//! Faces are traced on the map with arcs added. Walking a dart from its node
//! to the other end and then leaving by the next dart clockwise keeps the
//! traced face on the left. The dual edge of `e` runs from the face on the
//! left of `e` to the face on its right, which is `e` turned a quarter turn
//! clockwise.

mod faces;
mod rewrite;

use std::collections::HashMap;
use std::fmt;

use crate::error::{DiagramViolation, Error, Result};
use crate::scheme::{BMElement, Basis};

pub use faces::{FaceStructure, MapDart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            End::Tail => "t",
            End::Head => "h",
        }
    }
}

/// One end of an edge, identified by the edge's position in the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub weight: BMElement,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn endpoint(&self, end: End) -> usize {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    nodes: Vec<String>,
    roots: Vec<usize>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
}

impl Diagram {
    /// Checks every structural invariant, including planarity of the disk
    /// embedding.
    pub(crate) fn assemble(
        nodes: Vec<String>,
        roots: Vec<usize>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<Dart>>,
    ) -> Result<Diagram> {
        let d = Diagram {
            nodes,
            roots,
            edges,
            rotation,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(DiagramViolation::Empty.into());
        }
        let n = self.nodes.len();
        let mut is_root = vec![false; n];
        for &r in &self.roots {
            if std::mem::replace(&mut is_root[r], true) {
                return Err(DiagramViolation::DuplicateRoot(self.nodes[r].clone()).into());
            }
        }

        let mut seen = vec![[false; 2]; self.edges.len()];
        for (v, darts) in self.rotation.iter().enumerate() {
            for dart in darts {
                let slot = &mut seen[dart.edge][dart.end as usize];
                if std::mem::replace(slot, true) {
                    return Err(DiagramViolation::DuplicateDart(self.dart_label(*dart)).into());
                }
                let owner = self.edges[dart.edge].endpoint(dart.end);
                if owner != v {
                    return Err(DiagramViolation::MisplacedDart {
                        dart: self.dart_label(*dart),
                        listed: self.nodes[v].clone(),
                        actual: self.nodes[owner].clone(),
                    }
                    .into());
                }
            }
        }
        for (e, ends) in seen.iter().enumerate() {
            for end in [End::Tail, End::Head] {
                if !ends[end as usize] {
                    return Err(DiagramViolation::MissingDart(
                        self.dart_label(Dart { edge: e, end }),
                    )
                    .into());
                }
            }
        }

        if !self.is_weakly_connected() {
            return Err(DiagramViolation::Disconnected.into());
        }

        let faces = self.trace_faces();
        if faces.euler_characteristic() != 2 {
            return Err(DiagramViolation::Euler {
                vertices: faces.vertices,
                edges: faces.map_edges,
                faces: faces.faces.len(),
            }
            .into());
        }
        Ok(())
    }

    fn is_weakly_connected(&self) -> bool {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// Root node indices, in clockwise order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Number of roots, the order of the scaffold.
    pub fn order(&self) -> usize {
        self.roots.len()
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.roots.contains(&v)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Clockwise darts at `v`; for a root, only the ordinary darts.
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// `"<edge id>:t"` or `"<edge id>:h"`.
    pub fn dart_label(&self, dart: Dart) -> String {
        format!("{}:{}", self.edges[dart.edge].id, dart.end.suffix())
    }

    /// Every edge weight is one basis element of `basis`.
    pub fn pure_basis(&self) -> Option<Basis> {
        let mut basis = None;
        for e in &self.edges {
            let (b, _) = e.weight.as_pure()?;
            if *basis.get_or_insert(b) != b {
                return None;
            }
        }
        basis
    }

    /// The same diagram with edge `edge` reweighted.
    pub fn with_weight(&self, edge: usize, weight: BMElement) -> Diagram {
        let mut d = self.clone();
        d.edges[edge].weight = weight;
        d
    }

    /// Faces of the map with boundary arcs added.
    pub fn trace_faces(&self) -> FaceStructure {
        faces::trace(self)
    }

    /// The planar dual: interior faces become nodes, the faces against the
    /// boundary arcs become the roots `q_1..q_l`, and every edge `e` becomes
    /// an edge with the same id from the face left of `e` to the face right
    /// of `e`, with `A_i` and `E_i` exchanged.
    ///
    /// Dual nodes are named `q1..ql` followed by `f0, f1, ...` for the
    /// remaining faces. The rotation at a dual node reverses the face's
    /// boundary walk.
    pub fn dual(&self) -> Result<Diagram> {
        if !self.edges.is_empty() && self.pure_basis().is_none() {
            return Err(Error::unsupported(
                "dualization needs every weight to be a single basis element of one kind",
            ));
        }
        faces::dual(self)
    }

    /// Matches `other` against this diagram through edge ids. With
    /// `reversed`, every edge of `other` must run backwards. Root `r_i` must
    /// match root `i - root_shift` (cyclically) of `other`, weights must be
    /// equal and rotations must agree (cyclically at non-roots). Returns
    /// `map[v]`, the node of `other` matching node `v`.
    ///
    /// Taking the dual twice moves `r_{i+1}` to position `i`: the dual face
    /// on the arc `q_i -> q_{i+1}` is the corner at `r_{i+1}`. So a double
    /// dual matches with `reversed = true, root_shift = 1`.
    pub fn correspondence(
        &self,
        other: &Diagram,
        reversed: bool,
        root_shift: usize,
    ) -> Option<Vec<usize>> {
        if self.nodes.len() != other.nodes.len()
            || self.edges.len() != other.edges.len()
            || self.roots.len() != other.roots.len()
        {
            return None;
        }
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut used = vec![false; other.nodes.len()];
        let mut bind = |map: &mut Vec<usize>, a: usize, b: usize| -> bool {
            if map[a] == usize::MAX {
                if std::mem::replace(&mut used[b], true) {
                    return false;
                }
                map[a] = b;
            }
            map[a] == b
        };
        let l = self.roots.len();
        for (i, &ra) in self.roots.iter().enumerate() {
            let rb = other.roots[(i + l - root_shift % l.max(1)) % l];
            if !bind(&mut map, ra, rb) {
                return None;
            }
        }
        let mut edge_map = vec![0; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            let j = other.edge_index(&e.id)?;
            edge_map[i] = j;
            let f = &other.edges[j];
            if f.weight != e.weight {
                return None;
            }
            let (t, h) = if reversed {
                (f.head, f.tail)
            } else {
                (f.tail, f.head)
            };
            if !bind(&mut map, e.tail, t) || !bind(&mut map, e.head, h) {
                return None;
            }
        }
        if self.nodes.len() == 1 && map[0] == usize::MAX {
            map[0] = 0;
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        for (v, darts) in self.rotation.iter().enumerate() {
            let mapped: Vec<Dart> = darts
                .iter()
                .map(|d| Dart {
                    edge: edge_map[d.edge],
                    end: if reversed { d.end.flip() } else { d.end },
                })
                .collect();
            let target = &other.rotation[map[v]];
            let ok = if self.is_root(v) {
                &mapped == target
            } else {
                cyclic_eq(&mapped, target)
            };
            if !ok {
                return None;
            }
        }
        Some(map)
    }
}

fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<&str> = self.roots.iter().map(|&r| self.nodes[r].as_str()).collect();
        write!(
            f,
            "diagram: {} nodes, {} edges, roots [{}]",
            self.nodes.len(),
            self.edges.len(),
            roots.join(", ")
        )
    }
}

/// Name-based construction of a [`Diagram`].
///
/// ```
/// use scaffolds::diagram::DiagramBuilder;
/// use scaffolds::{BMElement, Basis};
///
/// let d = DiagramBuilder::new()
///     .root("r1")
///     .node("v")
///     .root("r2")
///     .edge("a", "r1", "v", BMElement::pure(Basis::A, 1))
///     .edge("b", "v", "r2", BMElement::pure(Basis::A, 1))
///     .rotation("r1", &["a:t"])
///     .rotation("v", &["a:h", "b:t"])
///     .rotation("r2", &["b:h"])
///     .build()
///     .unwrap();
/// assert_eq!(d.order(), 2);
/// ```
#[derive(Debug, Clone, Default)]
pub struct DiagramBuilder {
    nodes: Vec<String>,
    roots: Vec<String>,
    edges: Vec<(String, String, String, BMElement)>,
    rotation: Vec<(String, Vec<String>)>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, name: &str) -> Self {
        self.nodes.push(name.to_string());
        self
    }

    /// Adds a node and appends it to the clockwise root order.
    pub fn root(mut self, name: &str) -> Self {
        self.nodes.push(name.to_string());
        self.roots.push(name.to_string());
        self
    }

    /// Marks an existing node as the next root.
    pub fn mark_root(mut self, name: &str) -> Self {
        self.roots.push(name.to_string());
        self
    }

    pub fn edge(mut self, id: &str, tail: &str, head: &str, weight: BMElement) -> Self {
        self.edges
            .push((id.to_string(), tail.to_string(), head.to_string(), weight));
        self
    }

    pub fn rotation<S: AsRef<str>>(mut self, node: &str, darts: &[S]) -> Self {
        self.rotation.push((
            node.to_string(),
            darts.iter().map(|s| s.as_ref().to_string()).collect(),
        ));
        self
    }

    pub fn build(self) -> Result<Diagram> {
        let mut index = HashMap::new();
        for (i, name) in self.nodes.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(DiagramViolation::DuplicateNode(name.clone()).into());
            }
        }
        let lookup = |name: &str| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| DiagramViolation::UnknownNode(name.to_string()).into())
        };
        let roots = self
            .roots
            .iter()
            .map(|r| lookup(r))
            .collect::<Result<Vec<_>>>()?;

        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (id, tail, head, weight) in self.edges {
            if edge_index.insert(id.clone(), edges.len()).is_some() {
                return Err(DiagramViolation::DuplicateEdge(id).into());
            }
            edges.push(Edge {
                tail: lookup(&tail)?,
                head: lookup(&head)?,
                id,
                weight,
            });
        }

        let mut rotation = vec![Vec::new(); self.nodes.len()];
        let mut listed = vec![false; self.nodes.len()];
        for (node, darts) in self.rotation {
            let v = lookup(&node)?;
            if std::mem::replace(&mut listed[v], true) {
                return Err(Error::invalid(format!("rotation for `{node}` given twice")));
            }
            rotation[v] = darts
                .iter()
                .map(|label| parse_dart(label, &edge_index))
                .collect::<Result<Vec<_>>>()?;
        }
        Diagram::assemble(self.nodes, roots, edges, rotation)
    }
}

/// Parses `"<edge id>:t"` / `"<edge id>:h"`; the id may itself contain `:`.
pub fn parse_dart(label: &str, edge_index: &HashMap<String, usize>) -> Result<Dart> {
    let (id, end) = label.rsplit_once(':').ok_or_else(|| {
        Error::invalid(format!(
            "dart `{label}` must look like `<edge>:t` or `<edge>:h`"
        ))
    })?;
    let end = match end {
        "t" => End::Tail,
        "h" => End::Head,
        _ => {
            return Err(Error::invalid(format!(
                "dart `{label}` must end in `:t` or `:h`"
            )))
        }
    };
    let edge = *edge_index
        .get(id)
        .ok_or_else(|| Error::invalid(format!("dart `{label}` names unknown edge `{id}`")))?;
    Ok(Dart { edge, end })
}
