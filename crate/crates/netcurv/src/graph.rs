//! Node- and edge-weighted undirected simple graphs.
//!
//! `WeightedGraph` is the substrate every other module works on: nodes carry
//! positive weights `w(v)`, edges carry positive length-like weights `w(e)`,
//! and adjacency is indexed for O(1) edge lookup. Graphs are immutable after
//! construction; all queries are pure.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type NodeId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    /// Smaller endpoint (canonical orientation tail).
    pub a: NodeId,
    /// Larger endpoint (canonical orientation head).
    pub b: NodeId,
    pub weight: f64,
}

impl Edge {
    pub fn other(&self, v: NodeId) -> NodeId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: NodeId) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    node_weights: Vec<f64>,
    /// Sorted by (a, b); position is the canonical edge index.
    edges: Vec<Edge>,
    /// Per node: (neighbor, edge id), sorted by neighbor.
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    edge_lookup: HashMap<(NodeId, NodeId), EdgeId>,
}

impl WeightedGraph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_weight(&self, v: NodeId) -> f64 {
        self.node_weights[v as usize]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count() as NodeId).into_iter()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count() as EdgeId).into_iter()
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_lookup.get(&key).copied()
    }

    pub fn require_edge(&self, u: NodeId, v: NodeId) -> Result<EdgeId> {
        self.edge_between(u, v)
            .ok_or(Error::UnknownEdge(u as usize, v as usize))
    }

    pub fn require_node(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode(v as usize))
        }
    }

    /// Incident (neighbor, edge) pairs of `v`, sorted by neighbor id.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Weighted degree d(v) = (1/m(v)) sum of incident edge weights, m(v) the
    /// node weight. Isolated nodes have weighted degree 0.
    pub fn weighted_degree(&self, v: NodeId) -> Result<f64> {
        self.require_node(v)?;
        let sum: f64 = self.adjacency[v as usize]
            .iter()
            .map(|&(_, e)| self.edges[e as usize].weight)
            .sum();
        Ok(sum / self.node_weights[v as usize])
    }

    /// Clone with every edge weight replaced; node weights and topology kept.
    pub fn with_edge_weights(&self, weights: &[f64]) -> Result<WeightedGraph> {
        if weights.len() != self.edge_count() {
            return Err(Error::FieldMismatch(format!(
                "expected {} edge weights, got {}",
                self.edge_count(),
                weights.len()
            )));
        }
        let mut g = self.clone();
        for (e, &w) in g.edges.iter_mut().zip(weights) {
            if !(w > 0.0) {
                return Err(Error::NonpositiveWeight {
                    what: format!("edge ({}, {})", e.a, e.b),
                    value: w,
                });
            }
            e.weight = w;
        }
        Ok(g)
    }

    /// Clone with all node and edge weights set to 1 (combinatorial weights).
    pub fn with_unit_weights(&self) -> WeightedGraph {
        let mut g = self.clone();
        g.node_weights.iter_mut().for_each(|w| *w = 1.0);
        g.edges.iter_mut().for_each(|e| e.weight = 1.0);
        g
    }

    /// Subgraph induced by a node subset; nodes are re-indexed in the order
    /// given (which must be strictly increasing). Returns the subgraph and
    /// the kept edge ids of `self`.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> Result<(WeightedGraph, Vec<EdgeId>)> {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut remap = vec![u32::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            self.require_node(old)?;
            remap[old as usize] = new as u32;
        }
        let mut b = GraphBuilder::new();
        for &old in keep {
            let id = b.add_node(self.label(old), self.node_weight(old))?;
            debug_assert_eq!(id, remap[old as usize]);
        }
        let mut kept_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (na, nb) = (remap[e.a as usize], remap[e.b as usize]);
            if na != u32::MAX && nb != u32::MAX {
                b.add_edge(na, nb, e.weight)?;
                kept_edges.push(i as EdgeId);
            }
        }
        Ok((b.build()?, kept_edges))
    }

    /// Subgraph keeping an explicit node subset and an explicit edge subset
    /// (edge endpoints must all be kept). Both lists must be sorted.
    pub fn subgraph(&self, keep_nodes: &[NodeId], keep_edges: &[EdgeId]) -> Result<WeightedGraph> {
        let mut remap = vec![u32::MAX; self.node_count()];
        let mut b = GraphBuilder::new();
        for (new, &old) in keep_nodes.iter().enumerate() {
            self.require_node(old)?;
            remap[old as usize] = new as u32;
            b.add_node(self.label(old), self.node_weight(old))?;
        }
        for &eid in keep_edges {
            let e = &self.edges[eid as usize];
            let (na, nb) = (remap[e.a as usize], remap[e.b as usize]);
            if na == u32::MAX || nb == u32::MAX {
                return Err(Error::FieldMismatch(format!(
                    "kept edge ({}, {}) has a dropped endpoint",
                    e.a, e.b
                )));
            }
            b.add_edge(na, nb, e.weight)?;
        }
        b.build()
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0 as NodeId];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in self.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.node_count()
    }

    pub fn total_edge_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

/// Incremental construction with validation; rejects self-loops, parallel
/// edges and nonpositive weights.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    node_weights: Vec<f64>,
    label_lookup: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(NodeId, NodeId), EdgeId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node with an explicit weight; the label must be fresh.
    pub fn add_node(&mut self, label: &str, weight: f64) -> Result<NodeId> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::NonpositiveWeight {
                what: format!("node {label:?}"),
                value: weight,
            });
        }
        if self.label_lookup.contains_key(label) {
            return Err(Error::InvalidParameter {
                name: "label",
                reason: format!("duplicate node label {label:?}"),
            });
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_string());
        self.node_weights.push(weight);
        self.label_lookup.insert(label.to_string(), id);
        Ok(id)
    }

    /// Get-or-create a unit-weight node by label.
    pub fn node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.label_lookup.get(label) {
            return id;
        }
        self.add_node(label, 1.0).expect("fresh unit-weight node")
    }

    pub fn set_node_weight(&mut self, v: NodeId, weight: f64) -> Result<()> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::NonpositiveWeight {
                what: format!("node {}", v),
                value: weight,
            });
        }
        self.node_weights
            .get_mut(v as usize)
            .map(|w| *w = weight)
            .ok_or(Error::UnknownNode(v as usize))
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, weight: f64) -> Result<EdgeId> {
        if u as usize >= self.labels.len() {
            return Err(Error::UnknownNode(u as usize));
        }
        if v as usize >= self.labels.len() {
            return Err(Error::UnknownNode(v as usize));
        }
        if u == v {
            return Err(Error::SelfLoop(u as usize));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::NonpositiveWeight {
                what: format!("edge ({}, {})", u, v),
                value: weight,
            });
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.edge_lookup.contains_key(&(a, b)) {
            return Err(Error::ParallelEdge(a as usize, b as usize));
        }
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { a, b, weight });
        self.edge_lookup.insert((a, b), id);
        Ok(id)
    }

    pub fn build(mut self) -> Result<WeightedGraph> {
        self.edges.sort_by_key(|e| (e.a, e.b));
        let mut edge_lookup = HashMap::with_capacity(self.edges.len());
        let mut adjacency = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            edge_lookup.insert((e.a, e.b), i as EdgeId);
            adjacency[e.a as usize].push((e.b, i as EdgeId));
            adjacency[e.b as usize].push((e.a, i as EdgeId));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(WeightedGraph {
            labels: self.labels,
            node_weights: self.node_weights,
            edges: self.edges,
            adjacency,
            edge_lookup,
        })
    }
}

impl WeightedGraph {
    /// Unit node weights, explicit edge weights. Nodes are labeled by index.
    pub fn from_edge_list(n: usize, edges: &[(NodeId, NodeId, f64)]) -> Result<WeightedGraph> {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_node(&i.to_string(), 1.0)?;
        }
        for &(u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        b.build()
    }

    /// All weights 1.
    pub fn from_unit_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<WeightedGraph> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_edge_list(n, &weighted)
    }

    /// Unit-weight path 0-1-...-(n-1).
    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n.saturating_sub(1))
            .map(|i| (i as NodeId, i as NodeId + 1))
            .collect();
        Self::from_unit_edges(n, &edges).expect("valid path graph")
    }

    /// Unit-weight cycle on n >= 3 nodes.
    pub fn cycle(n: usize) -> WeightedGraph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n)
            .map(|i| (i as NodeId, ((i + 1) % n) as NodeId))
            .collect();
        Self::from_unit_edges(n, &edges).expect("valid cycle graph")
    }

    /// Unit-weight star with `leaves` leaves; node 0 is the center.
    pub fn star(leaves: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i as NodeId)).collect();
        Self::from_unit_edges(leaves + 1, &edges).expect("valid star graph")
    }

    /// Unit-weight complete graph.
    pub fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i as NodeId, j as NodeId));
            }
        }
        Self::from_unit_edges(n, &edges).expect("valid complete graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_invalid_input() {
        let mut b = GraphBuilder::new();
        let a = b.node("a");
        let c = b.node("c");
        assert!(matches!(b.add_edge(a, a, 1.0), Err(Error::SelfLoop(_))));
        assert!(matches!(
            b.add_edge(a, c, 0.0),
            Err(Error::NonpositiveWeight { .. })
        ));
        assert!(matches!(
            b.add_edge(a, c, -2.0),
            Err(Error::NonpositiveWeight { .. })
        ));
        b.add_edge(a, c, 1.0).unwrap();
        assert!(matches!(
            b.add_edge(c, a, 2.0),
            Err(Error::ParallelEdge(_, _))
        ));
        assert!(matches!(
            b.set_node_weight(a, f64::NAN),
            Err(Error::NonpositiveWeight { .. })
        ));
    }

    #[test]
    fn adjacency_is_consistent_with_edges() {
        let g = WeightedGraph::complete(5);
        let mut incidences = 0;
        for v in g.node_ids() {
            for &(u, e) in g.neighbors(v) {
                assert!(g.edge(e).touches(v) && g.edge(e).touches(u));
                incidences += 1;
            }
        }
        // every edge appears in exactly two adjacency lists
        assert_eq!(incidences, 2 * g.edge_count());
    }

    #[test]
    fn canonical_edge_order_is_sorted() {
        let g = WeightedGraph::from_unit_edges(4, &[(2, 3), (0, 3), (1, 2), (0, 1)]).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.edge_between(3, 0), Some(1));
        assert_eq!(g.edge_between(1, 3), None);
    }

    #[test]
    fn weighted_degree_examples() {
        // unit weights, degree-3 node
        let g = WeightedGraph::star(3);
        assert_eq!(g.weighted_degree(0).unwrap(), 3.0);
        // node weight 2, incident edge weights {1, 3}
        let mut b = GraphBuilder::new();
        let v = b.add_node("v", 2.0).unwrap();
        let x = b.node("x");
        let y = b.node("y");
        b.add_edge(v, x, 1.0).unwrap();
        b.add_edge(v, y, 3.0).unwrap();
        let g = b.build().unwrap();
        assert_eq!(g.weighted_degree(v).unwrap(), 2.0);
        // isolated node
        let mut b = GraphBuilder::new();
        b.node("lonely");
        let g = b.build().unwrap();
        assert_eq!(g.weighted_degree(0).unwrap(), 0.0);
    }

    #[test]
    fn induced_subgraph_reindexes() {
        let g = WeightedGraph::from_edge_list(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0)]).unwrap();
        let (sub, kept) = g.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(kept, vec![1, 2]);
        assert_eq!(sub.label(0), "1");
        assert_eq!(sub.edge(0).weight, 2.0);
    }

    #[test]
    fn connectivity() {
        assert!(WeightedGraph::path(5).is_connected());
        let g = WeightedGraph::from_unit_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
    }
}
