//! 2-dimensional cell complexes over weighted graphs: the base graph plus
//! weighted 2-faces, which are elementary 3- or 4-cycles.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};

pub type FaceId = u32;

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// Canonical vertex cycle: lexicographically smallest rotation/reflection.
    pub vertices: Vec<NodeId>,
    pub weight: f64,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs of the cycle, in canonical traversal order.
    pub fn boundary_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn contains_vertex(&self, v: NodeId) -> bool {
        self.vertices.contains(&v)
    }
}

/// How faces get their weights during enumeration.
#[derive(Debug, Clone, Default)]
pub enum FaceWeightRule {
    /// Combinatorial weight 1 for every face.
    #[default]
    Unit,
    /// Explicit weights keyed by canonical vertex cycle; every enumerated
    /// face must be present.
    Supplied(HashMap<Vec<NodeId>, f64>),
}

#[derive(Debug, Clone)]
pub struct ComplexOptions {
    /// Longest cycle admitted as a face: 3 or 4.
    pub max_cycle: usize,
    /// When set, 4-cycles with a chord are not faces.
    pub induced_only: bool,
    pub face_weights: FaceWeightRule,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            max_cycle: 4,
            induced_only: false,
            face_weights: FaceWeightRule::Unit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellComplex2 {
    graph: WeightedGraph,
    faces: Vec<Face>,
    /// Edge id -> face ids containing that edge.
    edge_faces: Vec<Vec<FaceId>>,
}

/// Lexicographically smallest rotation of the cycle or its reversal.
pub fn canonical_cycle(cycle: &[NodeId]) -> Vec<NodeId> {
    let k = cycle.len();
    let mut best: Option<Vec<NodeId>> = None;
    let mut consider = |candidate: Vec<NodeId>| {
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    for start in 0..k {
        let fwd: Vec<NodeId> = (0..k).map(|i| cycle[(start + i) % k]).collect();
        let rev: Vec<NodeId> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
        consider(fwd);
        consider(rev);
    }
    best.expect("nonempty cycle")
}

impl CellComplex2 {
    /// Wraps a graph with an explicit face list. Each face must be an
    /// elementary 3- or 4-cycle of the graph with positive weight;
    /// duplicates (up to rotation/reflection) are rejected.
    pub fn from_parts(graph: WeightedGraph, faces: Vec<(Vec<NodeId>, f64)>) -> Result<Self> {
        let mut canonical = Vec::with_capacity(faces.len());
        let mut seen = HashSet::new();
        for (cycle, weight) in faces {
            let as_usize: Vec<usize> = cycle.iter().map(|&v| v as usize).collect();
            if cycle.len() != 3 && cycle.len() != 4 {
                return Err(Error::BadCycleLength(cycle.len()));
            }
            let mut distinct = cycle.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != cycle.len() {
                return Err(Error::InvalidFace(as_usize, "repeated vertex".into()));
            }
            for i in 0..cycle.len() {
                let u = cycle[i];
                let v = cycle[(i + 1) % cycle.len()];
                if graph.edge_between(u, v).is_none() {
                    return Err(Error::InvalidFace(
                        as_usize,
                        format!("missing edge ({u}, {v})"),
                    ));
                }
            }
            if !(weight > 0.0) || !weight.is_finite() {
                return Err(Error::NonpositiveWeight {
                    what: format!("face {cycle:?}"),
                    value: weight,
                });
            }
            let canon = canonical_cycle(&cycle);
            if !seen.insert(canon.clone()) {
                return Err(Error::InvalidFace(as_usize, "duplicate face".into()));
            }
            canonical.push(Face {
                vertices: canon,
                weight,
            });
        }
        canonical.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let mut edge_faces = vec![Vec::new(); graph.edge_count()];
        for (fid, face) in canonical.iter().enumerate() {
            for (u, v) in face.boundary_pairs() {
                let e = graph.edge_between(u, v).expect("validated above");
                edge_faces[e as usize].push(fid as FaceId);
            }
        }
        Ok(CellComplex2 {
            graph,
            faces: canonical,
            edge_faces,
        })
    }

    /// A face-free complex over the graph.
    pub fn face_free(graph: WeightedGraph) -> Self {
        let edge_faces = vec![Vec::new(); graph.edge_count()];
        CellComplex2 {
            graph,
            faces: Vec::new(),
            edge_faces,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f as usize]
    }

    pub fn faces_of_edge(&self, e: EdgeId) -> &[FaceId] {
        &self.edge_faces[e as usize]
    }

    /// Edge ids along a face's boundary cycle.
    pub fn face_edges(&self, f: FaceId) -> Vec<EdgeId> {
        self.faces[f as usize]
            .boundary_pairs()
            .map(|(u, v)| self.graph.edge_between(u, v).expect("face edge exists"))
            .collect()
    }

    /// Sum of a face's boundary edge weights (its cycle length under the
    /// stored metric).
    pub fn face_cycle_length(&self, f: FaceId) -> f64 {
        self.face_edges(f)
            .iter()
            .map(|&e| self.graph.edge(e).weight)
            .sum()
    }

    /// Replaces the underlying graph with one of identical topology but new
    /// weights, keeping the face list. Used by flow steps that only rescale
    /// weights.
    pub fn with_graph(&self, graph: WeightedGraph) -> Result<Self> {
        if graph.node_count() != self.graph.node_count()
            || graph.edge_count() != self.graph.edge_count()
            || graph
                .edges()
                .iter()
                .zip(self.graph.edges())
                .any(|(a, b)| a.a != b.a || a.b != b.b)
        {
            return Err(Error::FieldMismatch(
                "replacement graph has different topology".into(),
            ));
        }
        Ok(CellComplex2 {
            graph,
            faces: self.faces.clone(),
            edge_faces: self.edge_faces.clone(),
        })
    }
}

/// Enumerates all elementary 3-cycles (and 4-cycles when `max_cycle` is 4)
/// of the graph as faces. Triangles are found by common-neighbor scans of
/// each edge; quadrangles by pairing common neighbors of each node pair.
pub fn build_complex(g: &WeightedGraph, opts: &ComplexOptions) -> Result<CellComplex2> {
    if opts.max_cycle != 3 && opts.max_cycle != 4 {
        return Err(Error::BadCycleLength(opts.max_cycle));
    }
    let mut cycles: Vec<Vec<NodeId>> = Vec::new();
    // triangles: for edge (a, b), common neighbors c > b
    for e in g.edges() {
        let (a, b) = (e.a, e.b);
        let nb: HashSet<NodeId> = g.neighbors(b).iter().map(|&(u, _)| u).collect();
        for &(c, _) in g.neighbors(a) {
            if c > b && nb.contains(&c) {
                cycles.push(canonical_cycle(&[a, b, c]));
            }
        }
    }
    if opts.max_cycle == 4 {
        // quadrangles x-a-y-b, found from the diagonal pair (x, y); each
        // 4-cycle has two diagonals, so dedup on the canonical form
        let mut seen = HashSet::new();
        let n = g.node_count() as NodeId;
        for x in 0..n {
            for y in (x + 1)..n {
                let ny: HashSet<NodeId> = g.neighbors(y).iter().map(|&(u, _)| u).collect();
                let common: Vec<NodeId> = g
                    .neighbors(x)
                    .iter()
                    .map(|&(u, _)| u)
                    .filter(|u| *u != y && ny.contains(u))
                    .collect();
                for (i, &a) in common.iter().enumerate() {
                    for &b in &common[i + 1..] {
                        if opts.induced_only
                            && (g.edge_between(x, y).is_some() || g.edge_between(a, b).is_some())
                        {
                            continue;
                        }
                        let canon = canonical_cycle(&[x, a, y, b]);
                        if seen.insert(canon.clone()) {
                            cycles.push(canon);
                        }
                    }
                }
            }
        }
    }
    let faces: Vec<(Vec<NodeId>, f64)> = match &opts.face_weights {
        FaceWeightRule::Unit => cycles.into_iter().map(|c| (c, 1.0)).collect(),
        FaceWeightRule::Supplied(map) => {
            let mut out = Vec::with_capacity(cycles.len());
            for c in cycles {
                let w = *map.get(&c).ok_or_else(|| {
                    Error::InvalidFace(
                        c.iter().map(|&v| v as usize).collect(),
                        "no supplied weight for enumerated face".into(),
                    )
                })?;
                out.push((c, w));
            }
            out
        }
    };
    CellComplex2::from_parts(g.clone(), faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_complex(g: &WeightedGraph, max_cycle: usize) -> CellComplex2 {
        build_complex(
            g,
            &ComplexOptions {
                max_cycle,
                ..Default::default()
            },
        )
        .unwrap()
    }

    /// Brute-force face enumeration over all vertex subsets of size 3 and 4.
    fn brute_force_cycles(g: &WeightedGraph, max_cycle: usize) -> HashSet<Vec<NodeId>> {
        let n = g.node_count() as NodeId;
        let mut out = HashSet::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if g.edge_between(a, b).is_some()
                        && g.edge_between(b, c).is_some()
                        && g.edge_between(a, c).is_some()
                    {
                        out.insert(canonical_cycle(&[a, b, c]));
                    }
                    if max_cycle < 4 {
                        continue;
                    }
                    for d in (c + 1)..n {
                        // try the three distinct cyclic orders of {a,b,c,d}
                        for perm in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                            let ok = (0..4).all(|i| {
                                g.edge_between(perm[i], perm[(i + 1) % 4]).is_some()
                            });
                            if ok {
                                out.insert(canonical_cycle(&perm));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn triangle_and_square_counts() {
        let k3 = WeightedGraph::cycle(3);
        assert_eq!(unit_complex(&k3, 3).faces().len(), 1);
        let c4 = WeightedGraph::cycle(4);
        assert_eq!(unit_complex(&c4, 3).faces().len(), 0);
        assert_eq!(unit_complex(&c4, 4).faces().len(), 1);
        // K4: 4 triangles and 3 quadrangles
        let k4 = WeightedGraph::complete(4);
        let c = unit_complex(&k4, 4);
        let triangles = c.faces().iter().filter(|f| f.len() == 3).count();
        let quads = c.faces().iter().filter(|f| f.len() == 4).count();
        assert_eq!((triangles, quads), (4, 3));
    }

    #[test]
    fn induced_only_drops_chorded_quads() {
        let k4 = WeightedGraph::complete(4);
        let c = build_complex(
            &k4,
            &ComplexOptions {
                max_cycle: 4,
                induced_only: true,
                face_weights: FaceWeightRule::Unit,
            },
        )
        .unwrap();
        assert_eq!(c.faces().iter().filter(|f| f.len() == 4).count(), 0);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.random_range(2..=8usize);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    if rng.random_bool(0.45) {
                        edges.push((a as NodeId, b as NodeId));
                    }
                }
            }
            let g = WeightedGraph::from_unit_edges(n, &edges).unwrap();
            for max_cycle in [3, 4] {
                let got: HashSet<Vec<NodeId>> = unit_complex(&g, max_cycle)
                    .faces()
                    .iter()
                    .map(|f| f.vertices.clone())
                    .collect();
                assert_eq!(got, brute_force_cycles(&g, max_cycle));
            }
        }
    }

    #[test]
    fn from_parts_validates() {
        let g = WeightedGraph::cycle(3);
        assert!(CellComplex2::from_parts(g.clone(), vec![(vec![0, 1, 2], 0.0)]).is_err());
        assert!(CellComplex2::from_parts(g.clone(), vec![(vec![0, 1], 1.0)]).is_err());
        assert!(CellComplex2::from_parts(g.clone(), vec![(vec![0, 1, 1], 1.0)]).is_err());
        let dup = CellComplex2::from_parts(
            g.clone(),
            vec![(vec![0, 1, 2], 1.0), (vec![2, 1, 0], 1.0)],
        );
        assert!(dup.is_err());
        let path = WeightedGraph::path(3);
        assert!(CellComplex2::from_parts(path, vec![(vec![0, 1, 2], 1.0)]).is_err());
    }

    #[test]
    fn incidence_index_is_complete() {
        let g = WeightedGraph::complete(4);
        let c = unit_complex(&g, 4);
        for e in g.edge_ids() {
            for &f in c.faces_of_edge(e) {
                assert!(c.face_edges(f).contains(&e));
            }
        }
        let total: usize = (0..g.edge_count() as EdgeId)
            .map(|e| c.faces_of_edge(e).len())
            .sum();
        let expect: usize = c.faces().iter().map(|f| f.len()).sum();
        assert_eq!(total, expect);
    }

    #[test]
    fn canonical_cycle_is_rotation_reflection_invariant() {
        let canon = canonical_cycle(&[3, 1, 2, 0]);
        for rot in [[1, 2, 0, 3], [2, 0, 3, 1], [0, 3, 1, 2], [3, 0, 2, 1]] {
            assert_eq!(canonical_cycle(&rot), canon);
        }
    }
}
