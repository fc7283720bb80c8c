//! Random disk-embedded diagrams for property tests.
//!
//! A connected plane map is grown by two moves that keep it planar: hang a
//! new node off a corner, or join two corners of one face (a loop when the
//! corner repeats). A random face is then opened onto the boundary circle
//! and distinct nodes along its walk become the roots, in walk order.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use scaffolds::{BMElement, Basis, Diagram, DiagramBuilder};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Half {
    edge: usize,
    head: bool,
}

impl Half {
    fn twin(self) -> Half {
        Half {
            edge: self.edge,
            head: !self.head,
        }
    }
}

struct Map {
    ends: Vec<(usize, usize)>,
    rotation: Vec<Vec<Half>>,
}

impl Map {
    fn node_of(&self, h: Half) -> usize {
        let (t, hd) = self.ends[h.edge];
        if h.head {
            hd
        } else {
            t
        }
    }

    fn succ(&self, h: Half) -> Half {
        let list = &self.rotation[self.node_of(h)];
        let p = list.iter().position(|&x| x == h).unwrap();
        list[(p + 1) % list.len()]
    }

    /// Face walks; each step is a half-edge leaving its node.
    fn faces(&self) -> Vec<Vec<Half>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for e in 0..self.ends.len() {
            for head in [false, true] {
                let start = Half { edge: e, head };
                if seen.contains(&(start.edge, start.head)) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut x = start;
                while seen.insert((x.edge, x.head)) {
                    walk.push(x);
                    x = self.succ(x.twin());
                }
                out.push(walk);
            }
        }
        out
    }

    fn insert_after(&mut self, at: Half, new: Half) {
        let v = self.node_of(at);
        let p = self.rotation[v].iter().position(|&x| x == at).unwrap();
        self.rotation[v].insert(p + 1, new);
    }

    fn add_edge(&mut self, a: usize, b: usize, rng: &mut impl Rng) -> (Half, Half) {
        let e = self.ends.len();
        let forward = rng.gen_bool(0.5);
        self.ends.push(if forward { (a, b) } else { (b, a) });
        let at_a = Half {
            edge: e,
            head: !forward,
        };
        (at_a, at_a.twin())
    }
}

/// A random valid diagram with at most `max_nodes` nodes and `max_edges`
/// edges, at most `max_roots` roots, and `A_i` labels in `0..=classes`.
pub fn random_diagram(
    rng: &mut impl Rng,
    max_nodes: usize,
    max_edges: usize,
    max_roots: usize,
    classes: usize,
) -> Diagram {
    let mut map = Map {
        ends: Vec::new(),
        rotation: vec![Vec::new()],
    };
    let target_edges = rng.gen_range(0..=max_edges);
    while map.ends.len() < target_edges {
        let grow = map.rotation.len() < max_nodes && (map.ends.is_empty() || rng.gen_bool(0.5));
        if map.ends.is_empty() {
            if grow {
                map.rotation.push(Vec::new());
                let (x, y) = map.add_edge(0, 1, rng);
                map.rotation[0].push(x);
                map.rotation[1].push(y);
            } else {
                let (x, y) = map.add_edge(0, 0, rng);
                map.rotation[0].extend([x, y]);
            }
            continue;
        }
        let faces = map.faces();
        let face = faces.choose(rng).unwrap();
        // corner after the arriving half `face[i].twin()` at its node
        let corner = |i: usize| face[i].twin();
        if grow {
            let at = corner(rng.gen_range(0..face.len()));
            let u = map.node_of(at);
            let w = map.rotation.len();
            map.rotation.push(Vec::new());
            let (x, y) = map.add_edge(u, w, rng);
            map.insert_after(at, x);
            map.rotation[w].push(y);
        } else {
            let i = rng.gen_range(0..face.len());
            let j = rng.gen_range(0..face.len());
            let (ci, cj) = (corner(i), corner(j));
            let (u, v) = (map.node_of(ci), map.node_of(cj));
            let (x, y) = map.add_edge(u, v, rng);
            map.insert_after(ci, x);
            if i == j {
                map.insert_after(x, y);
            } else {
                map.insert_after(cj, y);
            }
        }
    }

    let names: Vec<String> = (0..map.rotation.len()).map(|v| format!("n{v}")).collect();
    let mut b = DiagramBuilder::new();
    for n in &names {
        b = b.node(n);
    }
    let label = |h: Half| format!("e{}:{}", h.edge, if h.head { "h" } else { "t" });

    // roots: distinct nodes along one face walk, each entered by `arrive`
    let mut roots: Vec<(usize, Option<Half>)> = Vec::new();
    let want = rng.gen_range(0..=max_roots);
    if want > 0 {
        if map.ends.is_empty() {
            roots.push((0, None));
        } else {
            let faces = map.faces();
            let face = faces.choose(rng).unwrap();
            let mut corners: Vec<(usize, Half)> = Vec::new();
            for h in face {
                let arrive = h.twin();
                let v = map.node_of(arrive);
                if !corners.iter().any(|c| c.0 == v) {
                    corners.push((v, arrive));
                }
            }
            let start = rng.gen_range(0..corners.len());
            corners.rotate_left(start);
            let mut picks: Vec<usize> = (0..corners.len()).collect();
            picks.shuffle(rng);
            picks.truncate(want.min(corners.len()));
            picks.sort_unstable();
            roots = picks
                .iter()
                .map(|&p| (corners[p].0, Some(corners[p].1)))
                .collect();
        }
    }
    for &(r, _) in &roots {
        b = b.mark_root(&names[r]);
    }

    for (e, &(t, h)) in map.ends.iter().enumerate() {
        let w = BMElement::pure(Basis::A, rng.gen_range(0..=classes));
        b = b.edge(&format!("e{e}"), &names[t], &names[h], w);
    }
    for (v, list) in map.rotation.iter().enumerate() {
        let mut list = list.clone();
        if let Some(&(_, Some(arrive))) = roots.iter().find(|r| r.0 == v) {
            // darts run clockwise from just after the corner on the boundary
            let p = list.iter().position(|&x| x == arrive).unwrap();
            let len = list.len();
            list.rotate_left((p + 1) % len);
        }
        let darts: Vec<String> = list.iter().map(|&h| label(h)).collect();
        b = b.rotation(&names[v], &darts);
    }
    b.build().expect("generated diagrams are valid")
}

/// The mirror image: every rotation reversed and the roots listed in the
/// opposite direction.
pub fn mirror(d: &Diagram) -> Diagram {
    let mut b = DiagramBuilder::new();
    for n in d.nodes() {
        b = b.node(n);
    }
    let mut roots: Vec<usize> = d.roots().to_vec();
    roots.reverse();
    for &r in &roots {
        b = b.mark_root(&d.nodes()[r]);
    }
    for e in d.edges() {
        b = b.edge(
            &e.id,
            &d.nodes()[e.tail],
            &d.nodes()[e.head],
            e.weight.clone(),
        );
    }
    for v in 0..d.node_count() {
        let darts: Vec<String> = d
            .rotation(v)
            .iter()
            .rev()
            .map(|&x| d.dart_label(x))
            .collect();
        b = b.rotation(&d.nodes()[v], &darts);
    }
    b.build().expect("mirror images are valid")
}
