use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tabulation::CharTabulation;

/// Nodes are `(coordinate, value)` pairs; every key is one hyperedge joining
/// its value under each coordinate function.
#[derive(Debug, Clone)]
pub struct HashGraph {
    keys: Vec<u64>,
    node_ids: HashMap<(usize, u64), usize>,
    edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Indices of the keys (edges) in this component.
    pub edges: Vec<usize>,
    pub nodes: usize,
    /// Acyclic: `nodes = 1 + Σ (arity − 1)` over the component's edges.
    pub is_tree: bool,
}

impl HashGraph {
    pub fn build(keys: &[u64], coords: &[&dyn Fn(u64) -> u64]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::params("a hash graph needs at least two coordinate functions"));
        }
        let mut node_ids = HashMap::new();
        let edges = keys
            .iter()
            .map(|&key| {
                coords
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let next = node_ids.len();
                        *node_ids.entry((i, f(key))).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        Ok(HashGraph {
            keys: keys.to_vec(),
            node_ids,
            edges,
        })
    }

    /// Coordinates are the derived characters of `h1`.
    pub fn from_char_map(keys: &[u64], h1: &CharTabulation) -> Result<Self> {
        let coords: Vec<Box<dyn Fn(u64) -> u64 + '_>> = (0..h1.out_chars())
            .map(|i| Box::new(move |k| h1.output_char(h1.hash(k), i)) as Box<dyn Fn(u64) -> u64>)
            .collect();
        let refs: Vec<&dyn Fn(u64) -> u64> = coords.iter().map(|b| b.as_ref()).collect();
        Self::build(keys, &refs)
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    /// Node ids joined by edge `i`.
    pub fn endpoints(&self, edge: usize) -> &[usize] {
        &self.edges[edge]
    }

    /// Connected components in order of their smallest edge index.
    pub fn components(&self) -> Vec<Component> {
        let n = self.node_count();
        let mut node_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, ends) in self.edges.iter().enumerate() {
            for &v in ends {
                node_edges[v].push(e);
            }
        }
        let mut seen_edge = vec![false; self.edges.len()];
        let mut seen_node = vec![false; n];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if seen_edge[start] {
                continue;
            }
            let mut edges = vec![start];
            seen_edge[start] = true;
            let mut nodes = 0;
            let mut head = 0;
            while head < edges.len() {
                let e = edges[head];
                head += 1;
                for &v in &self.edges[e] {
                    if seen_node[v] {
                        continue;
                    }
                    seen_node[v] = true;
                    nodes += 1;
                    for &f in &node_edges[v] {
                        if !seen_edge[f] {
                            seen_edge[f] = true;
                            edges.push(f);
                        }
                    }
                }
            }
            edges.sort_unstable();
            let incidence: usize = edges.iter().map(|&e| self.edges[e].len() - 1).sum();
            out.push(Component {
                is_tree: nodes == incidence + 1,
                edges,
                nodes,
            });
        }
        out
    }

    pub fn has_cycle(&self) -> bool {
        self.components().iter().any(|c| !c.is_tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let lo = |k: u64| k & 0xff;
        let hi = |k: u64| k >> 8;
        let g = HashGraph::build(&[0x0102], &[&lo, &hi]).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_tree);
        assert!(!g.has_cycle());
    }

    #[test]
    fn parallel_edges_cycle() {
        let lo = |k: u64| k % 2;
        let hi = |_k: u64| 7;
        let g = HashGraph::build(&[4, 6], &[&lo, &hi]).unwrap();
        assert_eq!(g.node_count(), 2);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].is_tree);
        assert!(g.has_cycle());
    }

    #[test]
    fn needs_two_coordinates() {
        let lo = |k: u64| k;
        assert!(HashGraph::build(&[1], &[&lo]).is_err());
    }
}
