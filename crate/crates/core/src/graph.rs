//! Simple graphs, gain graphs, walks and switching.
//!
//! A gain graph assigns a group element to one chosen direction of each
//! edge; the reverse direction carries the inverse. The canonical stored
//! direction is min-index -> max-index, and every directed lookup goes
//! through [`GainGraph::gain_from`] so the inverse is never forgotten.
//!
//! Switching multiplies the gain of `e_ij` by `zeta(v_i)^{-1}` on the left
//! and `zeta(v_j)` on the right. Closed-walk gains are invariant under
//! switching (the gain groups here are abelian), and the gains of the
//! fundamental cycles of one spanning forest decide switching equivalence:
//! [`find_switching`] either constructs a switching function mapping one
//! gain function onto the other or returns a witness cycle whose gains
//! differ.

use std::collections::VecDeque;

use rand::Rng;
use thiserror::Error;

use crate::gains::{GroupFamily, GroupSpec, UnitGain};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("edge index {edge} out of range for {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },
    #[error("expected {expected} gains, got {got}")]
    GainCountMismatch { expected: usize, got: usize },
    #[error("gain {gain} on edge {edge} lies outside {family}")]
    GainOutsideFamily {
        edge: usize,
        gain: UnitGain,
        family: GroupFamily,
    },
    #[error("switching value {value} at vertex {vertex} lies outside {family}")]
    SwitchingValueOutsideFamily {
        vertex: usize,
        value: UnitGain,
        family: GroupFamily,
    },
    #[error("switching function covers {got} vertices, graph has {expected}")]
    SwitchingLengthMismatch { expected: usize, got: usize },
    #[error("walk is not incident at position {position}: edge {edge} does not join {from} and {to}")]
    WalkFault {
        position: usize,
        edge: usize,
        from: usize,
        to: usize,
    },
    #[error("walk needs one more vertex than edges (got {vertices} vertices, {edges} edges)")]
    WalkShape { vertices: usize, edges: usize },
    #[error("edge {0} is not a cotree edge of the forest")]
    NotCotreeEdge(usize),
    #[error("underlying graphs differ")]
    UnderlyingGraphMismatch,
    #[error("gain group families differ: {0} vs {1}")]
    FamilyMismatch(GroupFamily, GroupFamily),
    #[error("requested {requested} edges but {vertices} vertices admit at most {max}")]
    TooManyEdges {
        requested: usize,
        vertices: usize,
        max: usize,
    },
    #[error(transparent)]
    Gain(#[from] crate::gains::GainError),
}

/// A finite simple graph: vertices `0..n`, edges stored as canonical
/// `(lo, hi)` pairs with stable indices `0..m`.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>, // vertex -> (neighbor, edge index)
}

impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for SimpleGraph {}

impl SimpleGraph {
    /// Builds a simple graph from unordered endpoint pairs. Pairs may come
    /// in either order; loops and parallel edges are rejected.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (index, &(a, b)) in pairs.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertices: vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let pair = (a.min(b), a.max(b));
            if edges.contains(&pair) {
                return Err(GraphError::ParallelEdge(pair.0, pair.1));
            }
            edges.push(pair);
            adjacency[pair.0].push((pair.1, index));
            adjacency[pair.1].push((pair.0, index));
        }
        Ok(SimpleGraph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        Self::new(vertex_count, &[]).expect("edgeless graph is always simple")
    }

    /// Complete graph on n vertices, edges in lexicographic order.
    pub fn complete(vertex_count: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..vertex_count {
            for j in (i + 1)..vertex_count {
                pairs.push((i, j));
            }
        }
        Self::new(vertex_count, &pairs).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Canonical endpoints `(lo, hi)` of an edge.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, in edge-insertion order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn is_endpoint(&self, v: usize, edge: usize) -> bool {
        let (a, b) = self.edges[edge];
        v == a || v == b
    }

    /// The endpoint of `edge` other than `v`. Panics if `v` is not an endpoint.
    pub fn other_endpoint(&self, edge: usize, v: usize) -> usize {
        let (a, b) = self.edges[edge];
        if v == a {
            b
        } else if v == b {
            a
        } else {
            panic!("vertex {v} is not an endpoint of edge {edge}");
        }
    }

    /// Erdős–Rényi graph: each pair kept independently with probability `p`.
    pub fn random_gnp<R: Rng + ?Sized>(vertex_count: usize, p: f64, rng: &mut R) -> Self {
        let mut pairs = Vec::new();
        for i in 0..vertex_count {
            for j in (i + 1)..vertex_count {
                if rng.random::<f64>() < p {
                    pairs.push((i, j));
                }
            }
        }
        Self::new(vertex_count, &pairs).expect("sampled pairs are distinct non-loops")
    }

    /// Uniform graph with exactly `edge_count` edges (sampled without
    /// replacement), edges sorted lexicographically.
    pub fn random_with_edges<R: Rng + ?Sized>(
        vertex_count: usize,
        edge_count: usize,
        rng: &mut R,
    ) -> Result<Self, GraphError> {
        let mut pool: Vec<(usize, usize)> = Vec::new();
        for i in 0..vertex_count {
            for j in (i + 1)..vertex_count {
                pool.push((i, j));
            }
        }
        if edge_count > pool.len() {
            return Err(GraphError::TooManyEdges {
                requested: edge_count,
                vertices: vertex_count,
                max: pool.len(),
            });
        }
        // partial Fisher-Yates: the first edge_count slots become the sample
        for k in 0..edge_count {
            let pick = rng.random_range(k..pool.len());
            pool.swap(k, pick);
        }
        let mut chosen: Vec<(usize, usize)> = pool[..edge_count].to_vec();
        chosen.sort_unstable();
        Self::new(vertex_count, &chosen)
    }
}

/// A walk `v_0 e_0 v_1 e_1 ... v_k`: one more vertex than edges, each edge
/// joining its flanking vertices. Closed when the first and last vertex
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Walk {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.len() != edges.len() + 1 {
            return Err(GraphError::WalkShape {
                vertices: vertices.len(),
                edges: edges.len(),
            });
        }
        Ok(Walk { vertices, edges })
    }

    /// The empty walk standing at `v`.
    pub fn at(v: usize) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    /// Checks every consecutive (vertex, edge, vertex) triple against the
    /// graph, reporting the first non-incident position.
    pub fn validate(&self, graph: &SimpleGraph) -> Result<(), GraphError> {
        for &v in &self.vertices {
            if v >= graph.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertices: graph.vertex_count(),
                });
            }
        }
        for (position, &edge) in self.edges.iter().enumerate() {
            if edge >= graph.edge_count() {
                return Err(GraphError::EdgeOutOfRange {
                    edge,
                    edges: graph.edge_count(),
                });
            }
            let (from, to) = (self.vertices[position], self.vertices[position + 1]);
            let (a, b) = graph.endpoints(edge);
            if (from, to) != (a, b) && (from, to) != (b, a) {
                return Err(GraphError::WalkFault {
                    position,
                    edge,
                    from,
                    to,
                });
            }
        }
        Ok(())
    }
}

/// A switching function: one group element per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingFunction {
    values: Vec<UnitGain>,
}

impl SwitchingFunction {
    pub fn new(values: Vec<UnitGain>) -> Self {
        SwitchingFunction { values }
    }

    pub fn identity(vertex_count: usize) -> Self {
        SwitchingFunction {
            values: vec![UnitGain::identity(); vertex_count],
        }
    }

    /// Uniform values from the n-th roots of unity.
    pub fn random_in_mu<R: Rng + ?Sized>(
        vertex_count: usize,
        n: u32,
        rng: &mut R,
    ) -> Result<Self, crate::gains::GainError> {
        let mut values = Vec::with_capacity(vertex_count);
        for _ in 0..vertex_count {
            values.push(UnitGain::random_in_mu(n, rng)?);
        }
        Ok(SwitchingFunction { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, vertex: usize) -> UnitGain {
        self.values[vertex]
    }

    pub fn values(&self) -> &[UnitGain] {
        &self.values
    }

    /// The pointwise inverse, which undoes this switching exactly.
    pub fn pointwise_inverse(&self) -> Self {
        SwitchingFunction {
            values: self.values.iter().map(|g| g.inv()).collect(),
        }
    }

    /// Pointwise product; switching by `self` then `other` equals switching
    /// by the composition.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "switching functions over different vertex sets");
        SwitchingFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(*b))
                .collect(),
        }
    }
}

/// A simple graph with one stored gain per edge (for the canonical
/// direction lo -> hi) drawn from a fixed group spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainGraph {
    graph: SimpleGraph,
    spec: GroupSpec,
    gains: Vec<UnitGain>,
}

impl GainGraph {
    pub fn new(graph: SimpleGraph, spec: GroupSpec, gains: Vec<UnitGain>) -> Result<Self, GraphError> {
        spec.validate()?;
        if gains.len() != graph.edge_count() {
            return Err(GraphError::GainCountMismatch {
                expected: graph.edge_count(),
                got: gains.len(),
            });
        }
        for (edge, &gain) in gains.iter().enumerate() {
            if !spec.family.contains(gain) {
                return Err(GraphError::GainOutsideFamily {
                    edge,
                    gain,
                    family: spec.family,
                });
            }
        }
        Ok(GainGraph { graph, spec, gains })
    }

    /// All gains equal to `value` (commonly the involution or the identity).
    pub fn constant(graph: SimpleGraph, spec: GroupSpec, value: UnitGain) -> Result<Self, GraphError> {
        let gains = vec![value; graph.edge_count()];
        Self::new(graph, spec, gains)
    }

    /// Uniform random gains from the family's sampling subgroup.
    pub fn random<R: Rng + ?Sized>(
        graph: SimpleGraph,
        spec: GroupSpec,
        rng: &mut R,
    ) -> Result<Self, GraphError> {
        let n = spec.family.sample_order();
        let mut gains = Vec::with_capacity(graph.edge_count());
        for _ in 0..graph.edge_count() {
            gains.push(UnitGain::random_in_mu(n, rng)?);
        }
        Self::new(graph, spec, gains)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Gain stored for the canonical direction lo -> hi.
    pub fn stored_gain(&self, edge: usize) -> UnitGain {
        self.gains[edge]
    }

    pub fn gains(&self) -> &[UnitGain] {
        &self.gains
    }

    /// Gain of `edge` traversed starting from `tail`: the stored gain for
    /// the canonical direction, its inverse for the reverse. Every directed
    /// lookup must come through here. Panics if `tail` is not an endpoint.
    pub fn gain_from(&self, edge: usize, tail: usize) -> UnitGain {
        let (lo, hi) = self.graph.endpoints(edge);
        if tail == lo {
            self.gains[edge]
        } else if tail == hi {
            self.gains[edge].inv()
        } else {
            panic!("vertex {tail} is not an endpoint of edge {edge}");
        }
    }

    /// Ordered product of directed-edge gains along a walk.
    pub fn gain_of_walk(&self, walk: &Walk) -> Result<UnitGain, GraphError> {
        walk.validate(&self.graph)?;
        let mut acc = UnitGain::identity();
        for (position, &edge) in walk.edges().iter().enumerate() {
            acc = acc.mul(self.gain_from(edge, walk.vertices()[position]));
        }
        Ok(acc)
    }

    /// Switches this gain graph: the gain of `e_ij` becomes
    /// `zeta(v_i)^{-1} * phi(e_ij) * zeta(v_j)`.
    pub fn switch(&self, zeta: &SwitchingFunction) -> Result<GainGraph, GraphError> {
        if zeta.len() != self.graph.vertex_count() {
            return Err(GraphError::SwitchingLengthMismatch {
                expected: self.graph.vertex_count(),
                got: zeta.len(),
            });
        }
        for (vertex, &value) in zeta.values().iter().enumerate() {
            if !self.spec.family.contains(value) {
                return Err(GraphError::SwitchingValueOutsideFamily {
                    vertex,
                    value,
                    family: self.spec.family,
                });
            }
        }
        let gains = self
            .gains
            .iter()
            .zip(self.graph.edges())
            .map(|(&g, &(lo, hi))| zeta.value(lo).inv().mul(g).mul(zeta.value(hi)))
            .collect();
        Ok(GainGraph {
            graph: self.graph.clone(),
            spec: self.spec,
            gains,
        })
    }
}

/// A maximal spanning forest with the vertex order produced by the
/// breadth-first search that grew it: within each component every
/// non-root vertex is adjacent (through its forest edge) to an earlier
/// vertex.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    parent: Vec<Option<(usize, usize)>>, // vertex -> (parent vertex, connecting edge)
    order: Vec<usize>,
    forest_edge: Vec<bool>,
}

impl SpanningForest {
    /// `(parent vertex, connecting edge)` of `v`, or None for roots.
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    /// BFS vertex order, roots first within each component.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_forest_edge(&self, edge: usize) -> bool {
        self.forest_edge[edge]
    }

    /// Edges outside the forest, in index order.
    pub fn cotree_edges(&self) -> Vec<usize> {
        (0..self.forest_edge.len())
            .filter(|&e| !self.forest_edge[e])
            .collect()
    }

    /// Vertex path from `u` towards its root, as vertex list plus the
    /// connecting edges.
    fn ancestry(&self, mut u: usize) -> (Vec<usize>, Vec<usize>) {
        let mut vertices = vec![u];
        let mut edges = Vec::new();
        while let Some((p, e)) = self.parent[u] {
            vertices.push(p);
            edges.push(e);
            u = p;
        }
        (vertices, edges)
    }

    /// The unique path from `u` to `v` inside the forest (both must lie in
    /// one component) as `(vertices, edges)`. Panics if the endpoints have
    /// different roots.
    pub fn path(&self, u: usize, v: usize) -> (Vec<usize>, Vec<usize>) {
        let (uv, ue) = self.ancestry(u);
        let (vv, ve) = self.ancestry(v);
        assert_eq!(
            uv.last(),
            vv.last(),
            "path endpoints lie in different components"
        );
        // drop the shared ancestry above the lowest common ancestor, which
        // stays at position i == j after the scan
        let mut i = uv.len() - 1;
        let mut j = vv.len() - 1;
        while i > 0 && j > 0 && uv[i - 1] == vv[j - 1] {
            i -= 1;
            j -= 1;
        }
        let mut vertices: Vec<usize> = uv[..=i].to_vec();
        let mut edges: Vec<usize> = ue[..i].to_vec();
        for k in (0..j).rev() {
            vertices.push(vv[k]);
            edges.push(ve[k]);
        }
        (vertices, edges)
    }
}

/// Grows a maximal forest by breadth-first search from each unvisited
/// vertex in index order.
pub fn spanning_forest(graph: &SimpleGraph) -> SpanningForest {
    let n = graph.vertex_count();
    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut forest_edge = vec![false; graph.edge_count()];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        order.push(root);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in graph.incident(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some((v, e));
                    forest_edge[e] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    SpanningForest {
        parent,
        order,
        forest_edge,
    }
}

/// The fundamental cycle of a cotree edge: the unique cycle in forest + e,
/// returned as a closed walk based at the smaller endpoint of `e`, with
/// the forest path first and the cotree edge last.
pub fn fundamental_cycle(
    graph: &SimpleGraph,
    forest: &SpanningForest,
    edge: usize,
) -> Result<Walk, GraphError> {
    if edge >= graph.edge_count() {
        return Err(GraphError::EdgeOutOfRange {
            edge,
            edges: graph.edge_count(),
        });
    }
    if forest.is_forest_edge(edge) {
        return Err(GraphError::NotCotreeEdge(edge));
    }
    let (lo, hi) = graph.endpoints(edge);
    let (mut vertices, mut edges) = forest.path(lo, hi);
    vertices.push(lo);
    edges.push(edge);
    Walk::new(vertices, edges)
}

/// Outcome of the switching-equivalence decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchOutcome {
    /// A switching function mapping the first gain graph onto the second.
    Equivalent(SwitchingFunction),
    /// A closed walk whose gains differ between the two gain graphs.
    /// Closed-walk gains are switching invariants, so this certifies
    /// non-equivalence.
    NotEquivalent { witness: Walk },
}

/// Decides whether two gain graphs on the same underlying graph are
/// switching equivalent.
///
/// The fundamental cycles of one spanning forest are compared with a fixed
/// traversal convention (base = smaller endpoint of the cotree edge,
/// cotree edge last). If all gains agree, a switching function is built
/// recursively along the forest: the root of each component gets the
/// identity and each child `v_i` with forest edge towards its parent `v_j`
/// gets `phi1(e_ij) * zeta(v_j) * phi2(e_ij)^{-1}`. Cycle gains are
/// independent of the base vertex and inverted by direction reversal, so
/// agreement in the fixed convention is the full hypothesis.
pub fn find_switching(phi1: &GainGraph, phi2: &GainGraph) -> Result<SwitchOutcome, GraphError> {
    if phi1.graph() != phi2.graph() {
        return Err(GraphError::UnderlyingGraphMismatch);
    }
    if phi1.spec().family != phi2.spec().family {
        return Err(GraphError::FamilyMismatch(
            phi1.spec().family,
            phi2.spec().family,
        ));
    }
    let graph = phi1.graph();
    let forest = spanning_forest(graph);
    for edge in forest.cotree_edges() {
        let cycle = fundamental_cycle(graph, &forest, edge)?;
        if phi1.gain_of_walk(&cycle)? != phi2.gain_of_walk(&cycle)? {
            return Ok(SwitchOutcome::NotEquivalent { witness: cycle });
        }
    }
    let mut zeta = vec![UnitGain::identity(); graph.vertex_count()];
    for &v in forest.order() {
        if let Some((p, e)) = forest.parent(v) {
            // gain of the forest edge oriented child -> parent
            zeta[v] = phi1.gain_from(e, v).mul(zeta[p]).mul(phi2.gain_from(e, v).inv());
        }
    }
    Ok(SwitchOutcome::Equivalent(SwitchingFunction::new(zeta)))
}

/// True iff a switching function exists.
pub fn is_switching_equivalent(phi1: &GainGraph, phi2: &GainGraph) -> Result<bool, GraphError> {
    Ok(matches!(
        find_switching(phi1, phi2)?,
        SwitchOutcome::Equivalent(_)
    ))
}
