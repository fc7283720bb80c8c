use super::{Dart, Diagram, Edge, End};
use crate::error::Result;
use crate::scheme::BMElement;

/// A dart of the map with boundary arcs: an ordinary edge end or an end of
/// the arc `b_{index+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapDart {
    Edge(Dart),
    Arc { index: usize, end: End },
}

/// Faces of the diagram's map with the boundary arcs added.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceStructure {
    /// Boundary walk of each face, face on the left. A lone node without
    /// darts has a single face with an empty walk.
    pub faces: Vec<Vec<MapDart>>,
    /// The unbounded face outside the disk when there are roots. Without
    /// roots, the face left of the first listed dart stands in for the face
    /// meeting the boundary circle.
    pub outer: usize,
    /// `q_1..q_l`: the interior face against each boundary arc.
    pub root_faces: Vec<usize>,
    /// Face left of each edge, in edge order.
    pub left: Vec<usize>,
    /// Face right of each edge, in edge order.
    pub right: Vec<usize>,
    pub vertices: usize,
    /// Edges plus boundary arcs.
    pub map_edges: usize,
}

impl FaceStructure {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.map_edges as i64 + self.faces.len() as i64
    }

    /// Faces inside the disk: every face except the outer one when roots
    /// exist, all faces otherwise.
    pub fn interior_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.root_faces.is_empty() || f != self.outer)
            .collect()
    }
}

/// Dart ids: edge `k` has `2k` (tail) and `2k+1` (head); arc `i` follows
/// the edges the same way.
struct Map {
    edges: usize,
    node_of: Vec<usize>,
    rotation: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl Map {
    fn new(d: &Diagram) -> Map {
        let m = d.edges.len();
        let l = d.roots.len();
        let arc_tail = |i: usize| 2 * (m + i);
        let arc_head = |i: usize| 2 * (m + i) + 1;

        let mut node_of = vec![0; 2 * (m + l)];
        for (k, e) in d.edges.iter().enumerate() {
            node_of[2 * k] = e.tail;
            node_of[2 * k + 1] = e.head;
        }
        for i in 0..l {
            node_of[arc_tail(i)] = d.roots[i];
            node_of[arc_head(i)] = d.roots[(i + 1) % l];
        }

        let mut rotation: Vec<Vec<usize>> = d
            .rotation
            .iter()
            .map(|darts| darts.iter().map(|dt| dart_id(*dt)).collect())
            .collect();
        for (i, &r) in d.roots.iter().enumerate() {
            let list = &mut rotation[r];
            list.insert(0, arc_tail(i));
            list.push(arc_head((i + l - 1) % l));
        }

        let mut position = vec![0; node_of.len()];
        for list in &rotation {
            for (p, &x) in list.iter().enumerate() {
                position[x] = p;
            }
        }
        Map {
            edges: m,
            node_of,
            rotation,
            position,
        }
    }

    /// Next dart along the face on the left of `x`.
    fn next(&self, x: usize) -> usize {
        let back = x ^ 1;
        let list = &self.rotation[self.node_of[back]];
        list[(self.position[back] + 1) % list.len()]
    }

    fn describe(&self, x: usize) -> MapDart {
        let end = if x.is_multiple_of(2) {
            End::Tail
        } else {
            End::Head
        };
        let e = x / 2;
        if e < self.edges {
            MapDart::Edge(Dart { edge: e, end })
        } else {
            MapDart::Arc {
                index: e - self.edges,
                end,
            }
        }
    }
}

fn dart_id(d: Dart) -> usize {
    2 * d.edge + usize::from(d.end == End::Head)
}

pub(super) fn trace(d: &Diagram) -> FaceStructure {
    let map = Map::new(d);
    let total = map.node_of.len();
    let mut face_of = vec![usize::MAX; total];
    let mut faces = Vec::new();
    for start in 0..total {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut walk = Vec::new();
        let mut x = start;
        while face_of[x] == usize::MAX {
            face_of[x] = f;
            walk.push(map.describe(x));
            x = map.next(x);
        }
        faces.push(walk);
    }
    for list in &map.rotation {
        if list.is_empty() {
            faces.push(Vec::new());
        }
    }

    let m = map.edges;
    let l = d.roots.len();
    let outer = if l > 0 {
        face_of[2 * m]
    } else {
        map.rotation
            .iter()
            .find_map(|list| list.first().map(|&x| face_of[x]))
            .unwrap_or(0)
    };
    FaceStructure {
        outer,
        root_faces: (0..l).map(|i| face_of[2 * (m + i) + 1]).collect(),
        left: (0..m).map(|k| face_of[2 * k]).collect(),
        right: (0..m).map(|k| face_of[2 * k + 1]).collect(),
        vertices: d.nodes.len(),
        map_edges: m + l,
        faces,
    }
}

pub(super) fn dual(d: &Diagram) -> Result<Diagram> {
    let fs = trace(d);
    let mut order: Vec<usize> = fs.root_faces.clone();
    order.extend(
        fs.interior_faces()
            .into_iter()
            .filter(|f| !fs.root_faces.contains(f)),
    );
    let mut node_of_face = vec![usize::MAX; fs.faces.len()];
    let mut names = Vec::with_capacity(order.len());
    for (v, &f) in order.iter().enumerate() {
        node_of_face[f] = v;
        names.push(if v < fs.root_faces.len() {
            format!("q{}", v + 1)
        } else {
            format!("f{}", v - fs.root_faces.len())
        });
    }

    let edges = d
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| Edge {
            id: e.id.clone(),
            tail: node_of_face[fs.left[k]],
            head: node_of_face[fs.right[k]],
            weight: BMElement::new(e.weight.basis.swapped(), e.weight.coeffs.clone()),
        })
        .collect();

    // A face walk is counterclockwise around the face, so the clockwise
    // rotation of the dual node is the walk reversed. The tail dart of an
    // edge lies on its left face, which is where the dual edge starts, so
    // darts carry over unchanged.
    let rotation = order
        .iter()
        .enumerate()
        .map(|(v, &f)| {
            let walk = &fs.faces[f];
            let start = if v < fs.root_faces.len() {
                let arc = walk
                    .iter()
                    .position(|x| {
                        *x == MapDart::Arc {
                            index: v,
                            end: End::Head,
                        }
                    })
                    .expect("root face contains its arc");
                arc + 1
            } else {
                0
            };
            let mut darts: Vec<Dart> = (0..walk.len())
                .map(|i| walk[(start + i) % walk.len()])
                .filter_map(|x| match x {
                    MapDart::Edge(dt) => Some(dt),
                    MapDart::Arc { .. } => None,
                })
                .collect();
            if v < fs.root_faces.len() {
                darts.reverse();
            } else if !darts.is_empty() {
                darts[1..].reverse();
            }
            darts
        })
        .collect();

    let roots = (0..fs.root_faces.len()).collect();
    Diagram::assemble(names, roots, edges, rotation)
}
