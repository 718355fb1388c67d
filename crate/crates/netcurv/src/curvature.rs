//! Discrete curvatures on weighted graphs and 2-complexes: the Bochner
//! 1-form Laplacian, graph and full Forman-Ricci curvature, the square-grid
//! specialization, Haantjes-Ricci curvature, and node scalar curvature.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::complex::CellComplex2;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureKind {
    GraphForman,
    FullForman,
    Haantjes,
    /// Diagonal of the Bochner 1-form Laplacian, used as an edge field.
    Box1,
}

impl CurvatureKind {
    pub fn needs_complex(self) -> bool {
        !matches!(self, CurvatureKind::GraphForman)
    }

    pub fn name(self) -> &'static str {
        match self {
            CurvatureKind::GraphForman => "graph-forman",
            CurvatureKind::FullForman => "full-forman",
            CurvatureKind::Haantjes => "haantjes",
            CurvatureKind::Box1 => "box1",
        }
    }
}

/// How Haantjes-Ricci sums measure the path subtended by an edge inside a
/// face: the open complementary path, or the whole cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HaantjesConvention {
    #[default]
    PathChord,
    CycleChord,
}

impl HaantjesConvention {
    pub fn name(self) -> &'static str {
        match self {
            HaantjesConvention::PathChord => "path-chord",
            HaantjesConvention::CycleChord => "cycle-chord",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTarget {
    Edge,
    Node,
}

impl FieldTarget {
    fn name(self) -> &'static str {
        match self {
            FieldTarget::Edge => "edge",
            FieldTarget::Node => "node",
        }
    }
}

/// A per-edge or per-node real-valued assignment tagged with the curvature
/// kind and a fingerprint of the parameters it was computed under.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureField {
    pub kind: CurvatureKind,
    pub target: FieldTarget,
    values: Vec<f64>,
    fingerprint: u64,
}

impl CurvatureField {
    pub fn new(kind: CurvatureKind, target: FieldTarget, values: Vec<f64>, params: &str) -> Self {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        kind.hash(&mut h);
        target.name().hash(&mut h);
        params.hash(&mut h);
        values.len().hash(&mut h);
        CurvatureField {
            kind,
            target,
            values,
            fingerprint: h.finish(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn expect_target(&self, target: FieldTarget) -> Result<()> {
        if self.target == target {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "expected a {}-target field, got {}-target",
                target.name(),
                self.target.name()
            )))
        }
    }

    /// Checks that the field covers exactly the edge set (or node set) of `g`.
    pub fn expect_domain(&self, g: &WeightedGraph) -> Result<()> {
        let want = match self.target {
            FieldTarget::Edge => g.edge_count(),
            FieldTarget::Node => g.node_count(),
        };
        if self.values.len() == want {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "field covers {} {}s, graph has {}",
                self.values.len(),
                self.target.name(),
                want
            )))
        }
    }
}

fn check_positive_weights(g: &WeightedGraph) -> Result<()> {
    for v in g.node_ids() {
        let w = g.node_weight(v);
        if !(w > 0.0) {
            return Err(Error::NonpositiveWeight {
                what: format!("node {v}"),
                value: w,
            });
        }
    }
    for e in g.edges() {
        if !(e.weight > 0.0) {
            return Err(Error::NonpositiveWeight {
                what: format!("edge ({}, {})", e.a, e.b),
                value: e.weight,
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Forman-Ricci curvature
// ---------------------------------------------------------------------------

/// Graph (1-dimensional) Forman-Ricci curvature of an edge:
///
/// F(e) = w(e) [ w(v1)/w(e) + w(v2)/w(e)
///               - sum over other edges at v1 of w(v1)/sqrt(w(e) w(e'))
///               - sum over other edges at v2 of w(v2)/sqrt(w(e) w(e')) ]
pub fn forman_graph(g: &WeightedGraph, e: EdgeId) -> Result<f64> {
    if e as usize >= g.edge_count() {
        return Err(Error::UnknownEdge(e as usize, e as usize));
    }
    check_positive_weights(g)?;
    Ok(forman_graph_unchecked(g, e))
}

fn forman_graph_unchecked(g: &WeightedGraph, e: EdgeId) -> f64 {
    let edge = g.edge(e);
    let we = edge.weight;
    let mut sum = g.node_weight(edge.a) / we + g.node_weight(edge.b) / we;
    for (v, wv) in [
        (edge.a, g.node_weight(edge.a)),
        (edge.b, g.node_weight(edge.b)),
    ] {
        for &(_, other) in g.neighbors(v) {
            if other != e {
                sum -= wv / (we * g.edge(other).weight).sqrt();
            }
        }
    }
    we * sum
}

/// Combinatorial form 4 - deg(v1) - deg(v2); equals `forman_graph` on
/// unit-weight graphs.
pub fn forman_graph_combinatorial(g: &WeightedGraph, e: EdgeId) -> Result<f64> {
    if e as usize >= g.edge_count() {
        return Err(Error::UnknownEdge(e as usize, e as usize));
    }
    let edge = g.edge(e);
    Ok(4.0 - g.degree(edge.a) as f64 - g.degree(edge.b) as f64)
}

fn shared_faces(c: &CellComplex2, e1: EdgeId, e2: EdgeId) -> Vec<u32> {
    let f2: HashSet<u32> = c.faces_of_edge(e2).iter().copied().collect();
    c.faces_of_edge(e1)
        .iter()
        .copied()
        .filter(|f| f2.contains(f))
        .collect()
}

fn shared_vertices(e1: &Edge, e2: &Edge) -> Vec<NodeId> {
    [e1.a, e1.b]
        .into_iter()
        .filter(|&v| e2.touches(v))
        .collect()
}

/// Full (2-dimensional) Forman-Ricci curvature. Faces contribute
/// w(e)/w(f), vertices w(v)/w(e); each parallel edge subtracts the absolute
/// difference of its shared-face and shared-vertex terms. Two edges are
/// parallel when they share a face or a vertex but not both.
pub fn forman_full(c: &CellComplex2, e: EdgeId) -> Result<f64> {
    let g = c.graph();
    if e as usize >= g.edge_count() {
        return Err(Error::UnknownEdge(e as usize, e as usize));
    }
    check_positive_weights(g)?;
    Ok(forman_full_unchecked(c, e))
}

fn forman_full_unchecked(c: &CellComplex2, e: EdgeId) -> f64 {
    let g = c.graph();
    let edge = g.edge(e);
    let we = edge.weight;

    let face_term: f64 = c
        .faces_of_edge(e)
        .iter()
        .map(|&f| we / c.face(f).weight)
        .sum();
    let vertex_term = (g.node_weight(edge.a) + g.node_weight(edge.b)) / we;

    // candidate partners: edges meeting e through a vertex or a face
    let mut candidates: HashSet<EdgeId> = HashSet::new();
    for v in [edge.a, edge.b] {
        for &(_, other) in g.neighbors(v) {
            if other != e {
                candidates.insert(other);
            }
        }
    }
    for &f in c.faces_of_edge(e) {
        for other in c.face_edges(f) {
            if other != e {
                candidates.insert(other);
            }
        }
    }
    let mut candidates: Vec<EdgeId> = candidates.into_iter().collect();
    candidates.sort_unstable();

    let mut parallel_term = 0.0;
    for other in candidates {
        let oe = g.edge(other);
        let faces = shared_faces(c, e, other);
        let verts = shared_vertices(edge, oe);
        let is_parallel = faces.is_empty() != verts.is_empty();
        if !is_parallel {
            continue;
        }
        let root = (we * oe.weight).sqrt();
        let f_sum: f64 = faces.iter().map(|&f| root / c.face(f).weight).sum();
        let v_sum: f64 = verts.iter().map(|&v| g.node_weight(v) / root).sum();
        parallel_term += (f_sum - v_sum).abs();
    }
    we * (face_term + vertex_term - parallel_term)
}

/// Square-grid Forman-Ricci curvature: for an edge e0 bounded by quads c1,
/// c2 with opposite edges e1, e2,
///
/// Ric(e0) = w(e0) [ w(e0)/w(c1) + w(e0)/w(c2)
///                   - sqrt(w(e0) w(e1))/w(c1) - sqrt(w(e0) w(e2))/w(c2) ]
///
/// Boundary edges drop the missing quad's terms. The complex must only
/// attach quadrangle faces to `e0`, at most two of them.
pub fn forman_grid(c: &CellComplex2, e0: EdgeId) -> Result<f64> {
    let g = c.graph();
    if e0 as usize >= g.edge_count() {
        return Err(Error::UnknownEdge(e0 as usize, e0 as usize));
    }
    check_positive_weights(g)?;
    let edge = g.edge(e0);
    let quads = c.faces_of_edge(e0);
    if quads.len() > 2 {
        return Err(Error::NotGrid(format!(
            "edge ({}, {}) bounds {} faces",
            edge.a,
            edge.b,
            quads.len()
        )));
    }
    let we = edge.weight;
    let mut sum = 0.0;
    for &f in quads {
        if c.face(f).len() != 4 {
            return Err(Error::NotGrid(format!(
                "edge ({}, {}) bounds a {}-cycle face",
                edge.a,
                edge.b,
                c.face(f).len()
            )));
        }
        let wf = c.face(f).weight;
        let opposite = c
            .face_edges(f)
            .into_iter()
            .find(|&other| {
                let oe = g.edge(other);
                !oe.touches(edge.a) && !oe.touches(edge.b)
            })
            .ok_or_else(|| Error::NotGrid("quad face without an opposite edge".into()))?;
        let wo = g.edge(opposite).weight;
        sum += we / wf - (we * wo).sqrt() / wf;
    }
    Ok(we * sum)
}

// ---------------------------------------------------------------------------
// Bochner 1-form Laplacian
// ---------------------------------------------------------------------------

/// Incidence sign of a vertex in an edge under the canonical orientation
/// (tail = smaller id, head = larger id).
fn vertex_sign(e: &Edge, v: NodeId) -> f64 {
    if v == e.b {
        1.0
    } else {
        -1.0
    }
}

/// Incidence sign of an edge in a face: +1 when the canonical cycle
/// traverses the edge tail-to-head.
fn face_sign_of(u: NodeId, v: NodeId) -> f64 {
    if u < v {
        1.0
    } else {
        -1.0
    }
}

/// An entry of the Bochner Laplacian on 1-cells:
///
/// Box1(e1, e2) = sum over shared faces of eps_f sqrt(w(e1) w(e2)) / w(f)
///              + sum over shared vertices of eps_v w(v) / sqrt(w(e1) w(e2))
///
/// with incidence signs from the canonical orientations. The diagonal is
/// sum over faces of w(e)/w(f) plus (w(v1) + w(v2))/w(e).
pub fn bochner_box1(c: &CellComplex2, e1: EdgeId, e2: EdgeId) -> Result<f64> {
    let g = c.graph();
    for e in [e1, e2] {
        if e as usize >= g.edge_count() {
            return Err(Error::UnknownEdge(e as usize, e as usize));
        }
    }
    check_positive_weights(g)?;
    let (a, b) = (g.edge(e1), g.edge(e2));
    let root = (a.weight * b.weight).sqrt();
    let mut entry = 0.0;
    for &f in &shared_faces(c, e1, e2) {
        let face = c.face(f);
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        for (u, v) in face.boundary_pairs() {
            let eid = g.edge_between(u, v).expect("face edge");
            if eid == e1 {
                s1 = face_sign_of(u, v);
            }
            if eid == e2 {
                s2 = face_sign_of(u, v);
            }
        }
        entry += s1 * s2 * root / face.weight;
    }
    for &v in &shared_vertices(a, b) {
        entry += vertex_sign(a, v) * vertex_sign(b, v) * g.node_weight(v) / root;
    }
    Ok(entry)
}

/// Dense Box1 matrix over the canonical edge index.
pub fn box1_matrix(c: &CellComplex2) -> Result<DMatrix<f64>> {
    let g = c.graph();
    check_positive_weights(g)?;
    let m = g.edge_count();
    let mut out = DMatrix::<f64>::zeros(m, m);
    for face in c.faces() {
        let edges: Vec<(EdgeId, f64)> = face
            .boundary_pairs()
            .map(|(u, v)| {
                let eid = g.edge_between(u, v).expect("face edge");
                (eid, face_sign_of(u, v))
            })
            .collect();
        for &(ei, si) in &edges {
            for &(ej, sj) in &edges {
                let root = (g.edge(ei).weight * g.edge(ej).weight).sqrt();
                out[(ei as usize, ej as usize)] += si * sj * root / face.weight;
            }
        }
    }
    for v in g.node_ids() {
        let wv = g.node_weight(v);
        let incident = g.neighbors(v);
        for &(_, ei) in incident {
            let si = vertex_sign(g.edge(ei), v);
            for &(_, ej) in incident {
                let sj = vertex_sign(g.edge(ej), v);
                let root = (g.edge(ei).weight * g.edge(ej).weight).sqrt();
                out[(ei as usize, ej as usize)] += si * sj * wv / root;
            }
        }
    }
    Ok(out)
}

/// The canonical splitting Box1 = B1 + F1 with F1 the diagonal curvature
/// function F1(e) = Ric_F(e)/w(e) and B1 the remainder.
#[derive(Debug, Clone)]
pub struct BochnerDecomposition {
    pub box1: DMatrix<f64>,
    /// Diagonal curvature function, indexed by edge.
    pub f1: Vec<f64>,
    pub b1: DMatrix<f64>,
    pub b1_min_eigenvalue: f64,
}

pub fn bochner_decomposition(c: &CellComplex2) -> Result<BochnerDecomposition> {
    let g = c.graph();
    let box1 = box1_matrix(c)?;
    let f1: Vec<f64> = g
        .edge_ids()
        .map(|e| forman_full_unchecked(c, e) / g.edge(e).weight)
        .collect();
    let mut b1 = box1.clone();
    for (i, &f) in f1.iter().enumerate() {
        b1[(i, i)] -= f;
    }
    let b1_min_eigenvalue = if b1.nrows() == 0 {
        0.0
    } else {
        b1.clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    };
    Ok(BochnerDecomposition {
        box1,
        f1,
        b1,
        b1_min_eigenvalue,
    })
}

// ---------------------------------------------------------------------------
// Haantjes curvature
// ---------------------------------------------------------------------------

/// Haantjes curvature of a path against its subtending chord,
/// kappa^2 = (l(path) - l(chord)) / l(chord)^3. When the chord is the
/// longer of the two the roles reverse and the curvature takes a minus
/// sign; equal lengths give zero.
pub fn haantjes_path(l_path: f64, l_chord: f64) -> Result<f64> {
    for (name, l) in [("l_path", l_path), ("l_chord", l_chord)] {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("length must be positive and finite, got {l}"),
            });
        }
    }
    if l_path == l_chord {
        Ok(0.0)
    } else if l_path > l_chord {
        Ok(((l_path - l_chord) / (l_chord * l_chord * l_chord)).sqrt())
    } else {
        Ok(-(((l_chord - l_path) / (l_path * l_path * l_path)).sqrt()))
    }
}

/// Haantjes-Ricci curvature of an edge: the sum of Haantjes path curvatures
/// over the faces containing it. The chord length is w(e); the path length
/// is the face cycle length minus w(e) (PathChord) or the whole cycle
/// length (CycleChord).
pub fn haantjes_ricci(c: &CellComplex2, e: EdgeId, convention: HaantjesConvention) -> Result<f64> {
    let g = c.graph();
    if e as usize >= g.edge_count() {
        return Err(Error::UnknownEdge(e as usize, e as usize));
    }
    check_positive_weights(g)?;
    let chord = g.edge(e).weight;
    let mut sum = 0.0;
    for &f in c.faces_of_edge(e) {
        let cycle = c.face_cycle_length(f);
        let l_path = match convention {
            HaantjesConvention::PathChord => cycle - chord,
            HaantjesConvention::CycleChord => cycle,
        };
        sum += haantjes_path(l_path, chord)?;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

pub fn forman_graph_field(g: &WeightedGraph) -> Result<CurvatureField> {
    check_positive_weights(g)?;
    let values: Vec<f64> = (0..g.edge_count())
        .into_par_iter()
        .map(|e| forman_graph_unchecked(g, e as EdgeId))
        .collect();
    Ok(CurvatureField::new(
        CurvatureKind::GraphForman,
        FieldTarget::Edge,
        values,
        "forman-graph",
    ))
}

pub fn forman_full_field(c: &CellComplex2) -> Result<CurvatureField> {
    check_positive_weights(c.graph())?;
    let values: Vec<f64> = (0..c.graph().edge_count())
        .into_par_iter()
        .map(|e| forman_full_unchecked(c, e as EdgeId))
        .collect();
    Ok(CurvatureField::new(
        CurvatureKind::FullForman,
        FieldTarget::Edge,
        values,
        "forman-full",
    ))
}

pub fn forman_grid_field(c: &CellComplex2) -> Result<CurvatureField> {
    let values = (0..c.graph().edge_count())
        .into_par_iter()
        .map(|e| forman_grid(c, e as EdgeId))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CurvatureField::new(
        CurvatureKind::FullForman,
        FieldTarget::Edge,
        values,
        "forman-grid",
    ))
}

pub fn haantjes_field(c: &CellComplex2, convention: HaantjesConvention) -> Result<CurvatureField> {
    let values = (0..c.graph().edge_count())
        .into_par_iter()
        .map(|e| haantjes_ricci(c, e as EdgeId, convention))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CurvatureField::new(
        CurvatureKind::Haantjes,
        FieldTarget::Edge,
        values,
        convention.name(),
    ))
}

pub fn box1_diagonal_field(c: &CellComplex2) -> Result<CurvatureField> {
    let values = (0..c.graph().edge_count())
        .into_par_iter()
        .map(|e| bochner_box1(c, e as EdgeId, e as EdgeId))
        .collect::<Result<Vec<f64>>>()?;
    Ok(CurvatureField::new(
        CurvatureKind::Box1,
        FieldTarget::Edge,
        values,
        "box1-diagonal",
    ))
}

/// Dispatches to the edge curvature of the requested kind. Kinds other than
/// GraphForman require the complex.
pub fn edge_curvature_field(
    g: &WeightedGraph,
    complex: Option<&CellComplex2>,
    kind: CurvatureKind,
    convention: HaantjesConvention,
) -> Result<CurvatureField> {
    match kind {
        CurvatureKind::GraphForman => forman_graph_field(g),
        CurvatureKind::FullForman => {
            let c = complex.ok_or(Error::ComplexRequired("full Forman curvature"))?;
            forman_full_field(c)
        }
        CurvatureKind::Haantjes => {
            let c = complex.ok_or(Error::ComplexRequired("Haantjes curvature"))?;
            haantjes_field(c, convention)
        }
        CurvatureKind::Box1 => {
            let c = complex.ok_or(Error::ComplexRequired("Box1 diagonal"))?;
            box1_diagonal_field(c)
        }
    }
}

/// Node scalar curvature: kappa(v) = sum of the edge field over edges at v.
pub fn scalar_curvature(g: &WeightedGraph, edge_field: &CurvatureField) -> Result<CurvatureField> {
    edge_field.expect_target(FieldTarget::Edge)?;
    edge_field.expect_domain(g)?;
    let values: Vec<f64> = g
        .node_ids()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&(_, e)| edge_field.value(e as usize))
                .sum()
        })
        .collect();
    Ok(CurvatureField::new(
        edge_field.kind,
        FieldTarget::Node,
        values,
        "scalar",
    ))
}
