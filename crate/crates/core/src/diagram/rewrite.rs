//! Series and parallel reductions. Both keep the embedding planar and leave
//! the scaffold unchanged.

use super::{Dart, Diagram, Edge, End};
use crate::error::{Error, Result};
use crate::scheme::Scheme;

impl Diagram {
    /// Replaces the path `x -A-> v -B-> y` through the non-root `v` by one
    /// edge `x -AB-> y`, taking the new edge's id `"<a>.<b>"`.
    pub fn reduce_series(&self, node: &str, scheme: &Scheme) -> Result<Diagram> {
        let v = self
            .node_index(node)
            .ok_or_else(|| Error::InvalidRewrite(format!("unknown node `{node}`")))?;
        if self.is_root(v) {
            return Err(Error::InvalidRewrite(format!("`{node}` is a root")));
        }
        let darts = &self.rotation[v];
        let incoming: Vec<&Dart> = darts.iter().filter(|d| d.end == End::Head).collect();
        let outgoing: Vec<&Dart> = darts.iter().filter(|d| d.end == End::Tail).collect();
        if darts.len() != 2 || incoming.len() != 1 || outgoing.len() != 1 {
            return Err(Error::InvalidRewrite(format!(
                "`{node}` needs exactly one incoming and one outgoing edge"
            )));
        }
        let (a, b) = (incoming[0].edge, outgoing[0].edge);
        if a == b {
            return Err(Error::InvalidRewrite(format!(
                "`{node}` only carries a loop"
            )));
        }
        let (ea, eb) = (&self.edges[a], &self.edges[b]);
        let weight = scheme.bm_product(&ea.weight, &eb.weight)?;
        let mut id = format!("{}.{}", ea.id, eb.id);
        while self.edge_index(&id).is_some() {
            id.push('\'');
        }

        let mut edges = self.edges.clone();
        let mut rotation = self.rotation.clone();
        let fresh = edges.len();
        edges.push(Edge {
            id,
            tail: ea.tail,
            head: eb.head,
            weight,
        });
        replace_dart(
            &mut rotation[ea.tail],
            Dart {
                edge: a,
                end: End::Tail,
            },
            fresh,
        );
        replace_dart(
            &mut rotation[eb.head],
            Dart {
                edge: b,
                end: End::Head,
            },
            fresh,
        );
        rotation[v].clear();
        let (nodes, roots, edges, rotation) = remove(self, edges, rotation, &[a, b], Some(v));
        Diagram::assemble(nodes, roots, edges, rotation)
    }

    /// Merges every edge `u -> v` into the first of them, weighted by the
    /// entrywise product of their weights.
    pub fn reduce_parallel(&self, tail: &str, head: &str, scheme: &Scheme) -> Result<Diagram> {
        let u = self
            .node_index(tail)
            .ok_or_else(|| Error::InvalidRewrite(format!("unknown node `{tail}`")))?;
        let v = self
            .node_index(head)
            .ok_or_else(|| Error::InvalidRewrite(format!("unknown node `{head}`")))?;
        let bundle: Vec<usize> = (0..self.edges.len())
            .filter(|&k| self.edges[k].tail == u && self.edges[k].head == v)
            .collect();
        if bundle.len() < 2 {
            return Err(Error::InvalidRewrite(format!(
                "no parallel edges from `{tail}` to `{head}`"
            )));
        }
        let mut weight = self.edges[bundle[0]].weight.clone();
        for &k in &bundle[1..] {
            weight = scheme.bm_hadamard(&weight, &self.edges[k].weight)?;
        }
        let mut edges = self.edges.clone();
        edges[bundle[0]].weight = weight;
        let (nodes, roots, edges, rotation) =
            remove(self, edges, self.rotation.clone(), &bundle[1..], None);
        Diagram::assemble(nodes, roots, edges, rotation)
    }
}

fn replace_dart(list: &mut [Dart], old: Dart, edge: usize) {
    let slot = list
        .iter_mut()
        .find(|d| **d == old)
        .expect("dart present in its rotation");
    slot.edge = edge;
}

type Parts = (Vec<String>, Vec<usize>, Vec<Edge>, Vec<Vec<Dart>>);

/// Drops edges (and optionally one node), renumbering what remains.
fn remove(
    d: &Diagram,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    dead_edges: &[usize],
    dead_node: Option<usize>,
) -> Parts {
    let mut edge_map = vec![usize::MAX; edges.len()];
    let mut kept_edges = Vec::new();
    for (k, e) in edges.into_iter().enumerate() {
        if !dead_edges.contains(&k) {
            edge_map[k] = kept_edges.len();
            kept_edges.push(e);
        }
    }
    let node_map: Vec<usize> = (0..d.nodes.len())
        .scan(0, |next, v| {
            Some(if Some(v) == dead_node {
                usize::MAX
            } else {
                *next += 1;
                *next - 1
            })
        })
        .collect();
    for e in &mut kept_edges {
        e.tail = node_map[e.tail];
        e.head = node_map[e.head];
    }
    let nodes = (0..d.nodes.len())
        .filter(|&v| Some(v) != dead_node)
        .map(|v| d.nodes[v].clone())
        .collect();
    let rotation = rotation
        .into_iter()
        .enumerate()
        .filter(|(v, _)| Some(*v) != dead_node)
        .map(|(_, list)| {
            list.into_iter()
                .filter(|dt| edge_map[dt.edge] != usize::MAX)
                .map(|dt| Dart {
                    edge: edge_map[dt.edge],
                    end: dt.end,
                })
                .collect()
        })
        .collect();
    let roots = d.roots.iter().map(|&r| node_map[r]).collect();
    (nodes, roots, kept_edges, rotation)
}
