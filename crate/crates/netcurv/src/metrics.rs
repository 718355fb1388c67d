//! Metrics on weighted graphs: the path metric (with its combinatorial
//! specialization), the degree path metric, and the resistance metric.
//!
//! Disconnected queries return `f64::INFINITY` for the path-like metrics;
//! the resistance metric errors instead, since the harmonic problem it
//! solves is singular across components.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricKind {
    /// Shortest paths with edge lengths w(e).
    #[default]
    Path,
    /// Shortest paths with per-step cost (max{d(u), d(v)})^(-1/2), d the
    /// weighted degree.
    DegreePath,
    /// Effective resistance with conductances 1/w(e).
    Resistance,
    /// Shortest paths with every edge length 1, regardless of weights.
    Combinatorial,
}

impl MetricKind {
    pub fn is_path_based(self) -> bool {
        !matches!(self, MetricKind::Resistance)
    }
}

/// Length of edge (u, v) under a path-based metric.
fn step_cost(g: &WeightedGraph, u: NodeId, v: NodeId, w: f64, kind: MetricKind) -> f64 {
    match kind {
        MetricKind::Path => w,
        MetricKind::Combinatorial => 1.0,
        MetricKind::DegreePath => {
            let du = g.weighted_degree(u).expect("endpoint exists");
            let dv = g.weighted_degree(v).expect("endpoint exists");
            du.max(dv).powf(-0.5)
        }
        MetricKind::Resistance => unreachable!("resistance is not path-based"),
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: NodeId,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, deterministic tie-break on node id
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source distances under a path-based metric. Unreached nodes get
/// `f64::INFINITY`.
pub fn single_source(g: &WeightedGraph, src: NodeId, kind: MetricKind) -> Result<Vec<f64>> {
    g.require_node(src)?;
    if !kind.is_path_based() {
        return Err(Error::Unsupported(
            "single_source is defined for path-based metrics only".into(),
        ));
    }
    // precompute per-edge step costs so degree lookups happen once
    let costs: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| step_cost(g, e.a, e.b, e.weight, kind))
        .collect();
    let mut dist = vec![f64::INFINITY; g.node_count()];
    dist[src as usize] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem {
        dist: 0.0,
        node: src,
    });
    while let Some(HeapItem { dist: d, node: v }) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(u, e) in g.neighbors(v) {
            let nd = d + costs[e as usize];
            if nd < dist[u as usize] {
                dist[u as usize] = nd;
                heap.push(HeapItem { dist: nd, node: u });
            }
        }
    }
    Ok(dist)
}

/// Distance between two nodes under any metric kind.
pub fn distance(g: &WeightedGraph, x: NodeId, y: NodeId, kind: MetricKind) -> Result<f64> {
    match kind {
        MetricKind::Resistance => {
            if x == y {
                g.require_node(x)?;
                Ok(0.0)
            } else {
                resistance_metric(g, x, y)
            }
        }
        _ => {
            g.require_node(y)?;
            Ok(single_source(g, x, kind)?[y as usize])
        }
    }
}

/// Degree path metric rho(x, y) = inf over paths of the summed per-step
/// costs (max{d(x_{i-1}), d(x_i)})^(-1/2). Disconnected pairs get infinity.
pub fn degree_path_metric(g: &WeightedGraph, x: NodeId, y: NodeId) -> Result<f64> {
    g.require_node(y)?;
    Ok(single_source(g, x, MetricKind::DegreePath)?[y as usize])
}

/// Effective resistance between two distinct nodes, with conductance 1/w(e)
/// on every edge. Solves the discrete harmonic problem f(x) = 1, f(y) = 0,
/// with f harmonic elsewhere, and returns 1 over the current into y.
pub fn resistance_metric(g: &WeightedGraph, x: NodeId, y: NodeId) -> Result<f64> {
    g.require_node(x)?;
    g.require_node(y)?;
    if x == y {
        return Err(Error::InvalidParameter {
            name: "nodes",
            reason: "resistance_metric requires two distinct nodes".into(),
        });
    }
    let reachable = single_source(g, x, MetricKind::Combinatorial)?;
    if reachable[y as usize].is_infinite() {
        return Err(Error::Disconnected(x as usize, y as usize));
    }
    let n = g.node_count();
    // unknowns: nodes of x's component other than x and y
    let mut col = vec![usize::MAX; n];
    let mut unknowns = Vec::new();
    for v in g.node_ids() {
        if v != x && v != y && reachable[v as usize].is_finite() {
            col[v as usize] = unknowns.len();
            unknowns.push(v);
        }
    }
    let k = unknowns.len();
    let mut f = vec![0.0; n];
    f[x as usize] = 1.0;
    if k > 0 {
        let mut lap = DMatrix::<f64>::zeros(k, k);
        let mut rhs = DVector::<f64>::zeros(k);
        for (i, &t) in unknowns.iter().enumerate() {
            for &(z, e) in g.neighbors(t) {
                let c = 1.0 / g.edge(e).weight;
                lap[(i, i)] += c;
                if z == x {
                    rhs[i] += c; // f(x) = 1
                } else if z != y {
                    lap[(i, col[z as usize])] -= c;
                }
            }
        }
        let sol = lap
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Numerical("singular reduced Laplacian".into()))?;
        for (i, &t) in unknowns.iter().enumerate() {
            f[t as usize] = sol[i];
        }
    }
    // current into y
    let current: f64 = g
        .neighbors(y)
        .iter()
        .map(|&(t, e)| f[t as usize] / g.edge(e).weight)
        .sum();
    if current <= 0.0 || !current.is_finite() {
        return Err(Error::Numerical(format!(
            "non-physical current {current} between {x} and {y}"
        )));
    }
    Ok(1.0 / current)
}

/// Full pairwise distance matrix under a metric kind. Resistance distances
/// are computed pair by pair with the reduced-Laplacian solver.
pub fn distance_matrix(g: &WeightedGraph, kind: MetricKind) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    let mut m = DMatrix::<f64>::zeros(n, n);
    if kind.is_path_based() {
        for v in g.node_ids() {
            let row = single_source(g, v, kind)?;
            for (j, d) in row.into_iter().enumerate() {
                m[(v as usize, j)] = d;
            }
        }
    } else {
        for i in 0..n {
            for j in (i + 1)..n {
                let d = resistance_metric(g, i as NodeId, j as NodeId)?;
                m[(i, j)] = d;
                m[(j, i)] = d;
            }
        }
    }
    Ok(m)
}

/// Clone of `g` whose edge weights are the edge lengths under `kind`; the
/// common background metric for curvature runs.
pub fn metricized(g: &WeightedGraph, kind: MetricKind) -> Result<WeightedGraph> {
    let lengths: Vec<f64> = match kind {
        MetricKind::Path => return Ok(g.clone()),
        MetricKind::Combinatorial => vec![1.0; g.edge_count()],
        MetricKind::DegreePath => g
            .edges()
            .iter()
            .map(|e| step_cost(g, e.a, e.b, e.weight, MetricKind::DegreePath))
            .collect(),
        MetricKind::Resistance => {
            let mut lengths = Vec::with_capacity(g.edge_count());
            for e in g.edges() {
                lengths.push(resistance_metric(g, e.a, e.b)?);
            }
            lengths
        }
    };
    g.with_edge_weights(&lengths)
}
