//! Curvature-driven subsampling of networks: high-pass filtering by vertex
//! or edge curvature, and the common core of several samplings.

use crate::curvature::{CurvatureField, CurvatureKind, FieldTarget};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleTarget {
    #[default]
    Vertex,
    Edge,
}

/// Ranking that decides which items survive the high-pass filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ranking {
    /// Highest |curvature| first.
    #[default]
    AbsValue,
    /// Most negative curvature first (backbone-style).
    SignedLowPass,
    /// Most positive curvature first.
    SignedHighPass,
}

impl Ranking {
    fn key(self, value: f64) -> f64 {
        match self {
            Ranking::AbsValue => value.abs(),
            Ranking::SignedLowPass => -value,
            Ranking::SignedHighPass => value,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SampleSpec {
    pub target: SampleTarget,
    /// Fraction of items retained, in (0, 1].
    pub retain_fraction: f64,
    pub ranking: Ranking,
    /// Whether degree-1 endpoints of removed leaf edges are dropped.
    pub leaf_rule: bool,
}

impl SampleSpec {
    pub fn vertex(retain_fraction: f64) -> Self {
        SampleSpec {
            target: SampleTarget::Vertex,
            retain_fraction,
            ranking: Ranking::AbsValue,
            leaf_rule: true,
        }
    }

    pub fn edge(retain_fraction: f64) -> Self {
        SampleSpec {
            target: SampleTarget::Edge,
            retain_fraction,
            ranking: Ranking::AbsValue,
            leaf_rule: true,
        }
    }

    fn validate(&self, expected: SampleTarget) -> Result<()> {
        if self.target != expected {
            return Err(Error::InvalidParameter {
                name: "target",
                reason: "sample spec target does not match the operation".into(),
            });
        }
        if !(self.retain_fraction > 0.0 && self.retain_fraction <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "retain_fraction",
                reason: format!("must lie in (0, 1], got {}", self.retain_fraction),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleProvenance {
    pub kind: CurvatureKind,
    /// Ranking key of the weakest retained item.
    pub threshold: f64,
    pub universe_nodes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleResult {
    /// Retained node ids of the original graph, sorted.
    pub kept_nodes: Vec<NodeId>,
    /// Retained edge ids of the original graph, sorted.
    pub kept_edges: Vec<EdgeId>,
    /// The retained subgraph, nodes re-indexed in `kept_nodes` order.
    pub induced: WeightedGraph,
    pub provenance: SampleProvenance,
}

/// ceil(fraction * count) with a guard against float fuzz on exact products.
fn retained_count(fraction: f64, count: usize) -> usize {
    let target = fraction * count as f64;
    let k = (target - 1e-9).ceil() as usize;
    k.clamp(1, count)
}

/// Indices 0..count ranked by descending key with ties broken toward the
/// lower index.
fn ranked_indices(values: &[f64], ranking: Ranking) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        ranking
            .key(values[b])
            .total_cmp(&ranking.key(values[a]))
            .then_with(|| a.cmp(&b))
    });
    idx
}

/// Keeps the top-ranked fraction of nodes and drops the rest together with
/// their incident edges.
pub fn sample_vertices(
    g: &WeightedGraph,
    scalar: &CurvatureField,
    spec: &SampleSpec,
) -> Result<SampleResult> {
    spec.validate(SampleTarget::Vertex)?;
    scalar.expect_target(FieldTarget::Node)?;
    scalar.expect_domain(g)?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let keep = retained_count(spec.retain_fraction, g.node_count());
    let ranked = ranked_indices(scalar.values(), spec.ranking);
    let threshold = spec.ranking.key(scalar.value(ranked[keep - 1]));
    let mut kept_nodes: Vec<NodeId> = ranked[..keep].iter().map(|&i| i as NodeId).collect();
    kept_nodes.sort_unstable();
    let (induced, kept_edges) = g.induced_subgraph(&kept_nodes)?;
    Ok(SampleResult {
        kept_nodes,
        kept_edges,
        induced,
        provenance: SampleProvenance {
            kind: scalar.kind,
            threshold,
            universe_nodes: g.node_count(),
        },
    })
}

/// Keeps the top-ranked fraction of edges. Endpoints of removed edges stay,
/// except nodes that end up isolated after having lost a leaf edge (an edge
/// with a degree-1 endpoint), which are dropped when the leaf rule is on.
pub fn sample_edges(
    g: &WeightedGraph,
    ricci: &CurvatureField,
    spec: &SampleSpec,
) -> Result<SampleResult> {
    spec.validate(SampleTarget::Edge)?;
    ricci.expect_target(FieldTarget::Edge)?;
    ricci.expect_domain(g)?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let keep = retained_count(spec.retain_fraction, g.edge_count());
    let ranked = ranked_indices(ricci.values(), spec.ranking);
    let threshold = spec.ranking.key(ricci.value(ranked[keep - 1]));
    let mut kept_edges: Vec<EdgeId> = ranked[..keep].iter().map(|&i| i as EdgeId).collect();
    kept_edges.sort_unstable();

    let mut edge_kept = vec![false; g.edge_count()];
    for &e in &kept_edges {
        edge_kept[e as usize] = true;
    }
    let mut lost_leaf = vec![false; g.node_count()];
    if spec.leaf_rule {
        for (i, e) in g.edges().iter().enumerate() {
            if !edge_kept[i] && (g.degree(e.a) == 1 || g.degree(e.b) == 1) {
                lost_leaf[e.a as usize] = true;
                lost_leaf[e.b as usize] = true;
            }
        }
    }
    let mut kept_nodes = Vec::with_capacity(g.node_count());
    for v in g.node_ids() {
        let isolated = g.neighbors(v).iter().all(|&(_, e)| !edge_kept[e as usize]);
        if !(isolated && lost_leaf[v as usize]) {
            kept_nodes.push(v);
        }
    }
    let induced = g.subgraph(&kept_nodes, &kept_edges)?;
    Ok(SampleResult {
        kept_nodes,
        kept_edges,
        induced,
        provenance: SampleProvenance {
            kind: ricci.kind,
            threshold,
            universe_nodes: g.node_count(),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreResult {
    pub nodes: Vec<NodeId>,
    pub induced: WeightedGraph,
}

/// The common core: intersection of the kept node sets of several samplings
/// of the same graph, with the induced subgraph on the intersection.
pub fn common_core(g: &WeightedGraph, samples: &[SampleResult]) -> Result<CoreResult> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "common_core needs at least two samplings".into(),
        });
    }
    for s in samples {
        if s.provenance.universe_nodes != g.node_count() {
            return Err(Error::FieldMismatch(format!(
                "sample over {} nodes does not match graph with {}",
                s.provenance.universe_nodes,
                g.node_count()
            )));
        }
    }
    let mut nodes: Vec<NodeId> = samples[0].kept_nodes.clone();
    for s in &samples[1..] {
        let keep: std::collections::HashSet<NodeId> = s.kept_nodes.iter().copied().collect();
        nodes.retain(|v| keep.contains(v));
    }
    let (induced, _) = g.induced_subgraph(&nodes)?;
    Ok(CoreResult { nodes, induced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{forman_graph_field, scalar_curvature};

    fn node_field(g: &WeightedGraph, values: Vec<f64>) -> CurvatureField {
        let _ = g;
        CurvatureField::new(
            CurvatureKind::GraphForman,
            FieldTarget::Node,
            values,
            "test",
        )
    }

    fn edge_field(values: Vec<f64>) -> CurvatureField {
        CurvatureField::new(
            CurvatureKind::GraphForman,
            FieldTarget::Edge,
            values,
            "test",
        )
    }

    #[test]
    fn retain_all_is_identity() {
        let g = WeightedGraph::path(4);
        let field = forman_graph_field(&g).unwrap();
        let scalar = scalar_curvature(&g, &field).unwrap();
        let vs = sample_vertices(&g, &scalar, &SampleSpec::vertex(1.0)).unwrap();
        assert_eq!(vs.kept_nodes, vec![0, 1, 2, 3]);
        assert_eq!(vs.induced, g);
        let es = sample_edges(&g, &field, &SampleSpec::edge(1.0)).unwrap();
        assert_eq!(es.induced, g);
    }

    #[test]
    fn vertex_sampling_prunes_low_curvature() {
        // path a-b-c with |kappa| = (2, 0, 2): retain 2/3 keeps {a, c}
        let g = WeightedGraph::path(3);
        let scalar = node_field(&g, vec![2.0, 0.0, 2.0]);
        let out = sample_vertices(&g, &scalar, &SampleSpec::vertex(2.0 / 3.0)).unwrap();
        assert_eq!(out.kept_nodes, vec![0, 2]);
        assert_eq!(out.induced.edge_count(), 0);
        assert_eq!(out.provenance.threshold, 2.0);
    }

    #[test]
    fn vertex_sampling_star_keeps_center_when_dominant() {
        let g = WeightedGraph::star(4);
        let field = forman_graph_field(&g).unwrap();
        let scalar = scalar_curvature(&g, &field).unwrap();
        // combinatorial F on each spoke is 4 - 5... with unit weights each
        // spoke has F = 4 - 4 - 1 = -1; center sums to -4, leaves to -1.
        let out = sample_vertices(&g, &scalar, &SampleSpec::vertex(0.2)).unwrap();
        assert_eq!(out.kept_nodes, vec![0]);
    }

    #[test]
    fn exact_retained_count() {
        let g = WeightedGraph::complete(7);
        let scalar = node_field(&g, vec![1.0; 7]);
        for k in 1..=7 {
            let f = k as f64 / 7.0;
            let out = sample_vertices(&g, &scalar, &SampleSpec::vertex(f)).unwrap();
            assert_eq!(out.kept_nodes.len(), k, "fraction {f}");
        }
    }

    #[test]
    fn edge_sampling_leaf_rule() {
        // path a-b-c, removing edge (b, c) drops the degree-1 endpoint c
        let g = WeightedGraph::path(3);
        let field = edge_field(vec![5.0, 1.0]);
        let out = sample_edges(&g, &field, &SampleSpec::edge(0.5)).unwrap();
        assert_eq!(out.kept_edges, vec![0]);
        assert_eq!(out.kept_nodes, vec![0, 1]);
        // triangle: isolated third node survives because no removed edge
        // was a leaf
        let g = WeightedGraph::cycle(3);
        let field = edge_field(vec![5.0, 1.0, 1.0]);
        let out = sample_edges(&g, &field, &SampleSpec::edge(1.0 / 3.0)).unwrap();
        assert_eq!(out.kept_edges.len(), 1);
        assert_eq!(out.kept_nodes, vec![0, 1, 2]);
        assert_eq!(out.induced.node_count(), 3);
        assert_eq!(out.induced.edge_count(), 1);
    }

    #[test]
    fn leaf_rule_can_be_disabled() {
        let g = WeightedGraph::path(3);
        let field = edge_field(vec![5.0, 1.0]);
        let mut spec = SampleSpec::edge(0.5);
        spec.leaf_rule = false;
        let out = sample_edges(&g, &field, &spec).unwrap();
        assert_eq!(out.kept_nodes, vec![0, 1, 2]);
    }

    #[test]
    fn monotone_in_retain_fraction() {
        let g = WeightedGraph::complete(6);
        let scalar = node_field(&g, vec![0.5, -2.0, 3.0, 1.0, -1.0, 0.0]);
        let mut prev: Vec<NodeId> = Vec::new();
        for k in 1..=6 {
            let out =
                sample_vertices(&g, &scalar, &SampleSpec::vertex(k as f64 / 6.0)).unwrap();
            assert!(prev.iter().all(|v| out.kept_nodes.contains(v)));
            prev = out.kept_nodes;
        }
    }

    #[test]
    fn determinism() {
        let g = WeightedGraph::complete(5);
        let field = forman_graph_field(&g).unwrap();
        let a = sample_edges(&g, &field, &SampleSpec::edge(0.4)).unwrap();
        let b = sample_edges(&g, &field, &SampleSpec::edge(0.4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn common_core_examples() {
        let g = WeightedGraph::cycle(5);
        let field = forman_graph_field(&g).unwrap();
        let scalar = scalar_curvature(&g, &field).unwrap();
        let s = sample_vertices(&g, &scalar, &SampleSpec::vertex(0.6)).unwrap();
        // identical samples: the core is the sample itself
        let core = common_core(&g, &[s.clone(), s.clone()]).unwrap();
        assert_eq!(core.nodes, s.kept_nodes);
        // disjoint kept sets: empty core
        let mut a = s.clone();
        a.kept_nodes = vec![0, 1];
        let mut b = s.clone();
        b.kept_nodes = vec![2, 3];
        let core = common_core(&g, &[a, b]).unwrap();
        assert!(core.nodes.is_empty());
        assert_eq!(core.induced.node_count(), 0);
        // mismatched universes error
        let other = WeightedGraph::cycle(6);
        assert!(common_core(&other, &[s.clone(), s]).is_err());
    }

    #[test]
    fn common_core_matches_set_intersection() {
        use rand::{Rng, SeedableRng};
        use std::collections::HashSet;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = WeightedGraph::complete(20);
        let mut samples = Vec::new();
        for _ in 0..3 {
            let values: Vec<f64> = (0..20).map(|_| rng.random_range(-3.0..3.0)).collect();
            let scalar = node_field(&g, values);
            samples.push(sample_vertices(&g, &scalar, &SampleSpec::vertex(0.5)).unwrap());
        }
        let brute: HashSet<NodeId> = samples
            .iter()
            .map(|s| s.kept_nodes.iter().copied().collect::<HashSet<_>>())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap();
        let core = common_core(&g, &samples).unwrap();
        assert_eq!(core.nodes.iter().copied().collect::<HashSet<_>>(), brute);
    }

    #[test]
    fn invalid_specs_error() {
        let g = WeightedGraph::path(3);
        let field = forman_graph_field(&g).unwrap();
        let scalar = scalar_curvature(&g, &field).unwrap();
        assert!(sample_vertices(&g, &scalar, &SampleSpec::vertex(0.0)).is_err());
        assert!(sample_vertices(&g, &scalar, &SampleSpec::vertex(1.5)).is_err());
        assert!(sample_vertices(&g, &field, &SampleSpec::vertex(0.5)).is_err());
        assert!(sample_edges(&g, &scalar, &SampleSpec::edge(0.5)).is_err());
        let empty = GraphBuilder::new().build().unwrap();
        let f = node_field(&empty, vec![]);
        assert!(matches!(
            sample_vertices(&empty, &f, &SampleSpec::vertex(0.5)),
            Err(Error::EmptyGraph)
        ));
    }

    use crate::graph::GraphBuilder;
}
