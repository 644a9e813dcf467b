//! Line graphs of oriented gain graphs.
//!
//! The vertices of the line graph are the edge indices of the source
//! graph; two are adjacent when the edges share an endpoint (exactly one,
//! since the source is simple). An orientation of the source induces one
//! on the line graph:
//!
//! ```text
//! omega_L(e, ef) = omega(v, e)^{-1}      v = the shared vertex of e and f
//! ```
//!
//! so the gain of the line edge from `e` to `f` is
//! `omega(v, e)^{-1} * s * omega(v, f)`. Different orientations of the
//! same gain graph induce switching-equivalent line graphs, so the line
//! graph of a gain graph is well defined as a switching class;
//! [`line_graph_class`] returns the representative obtained from the
//! default orientation.

use crate::graph::{GainGraph, SimpleGraph};
use crate::orientation::{
    associated_gain_graph, default_orientation, IncidencePhase, OrientedGainGraph,
};

/// A line graph together with the vertex of the source graph that
/// realizes each adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraphMap {
    line_graph: SimpleGraph,
    shared_vertex: Vec<usize>, // line-edge index -> common vertex in the source
}

impl LineGraphMap {
    /// The underlying line graph; its vertex `k` is edge `k` of the source.
    pub fn line_graph(&self) -> &SimpleGraph {
        &self.line_graph
    }

    /// The source vertex shared by the two edges joined by `line_edge`.
    pub fn shared_vertex(&self, line_edge: usize) -> usize {
        self.shared_vertex[line_edge]
    }

    pub fn shared_vertices(&self) -> &[usize] {
        &self.shared_vertex
    }
}

/// Builds the line graph of a simple graph. Line edges are produced in
/// lexicographic order of their endpoint edge indices, so the output is
/// deterministic.
pub fn underlying_line_graph(graph: &SimpleGraph) -> LineGraphMap {
    let m = graph.edge_count();
    let mut pairs = Vec::new();
    let mut shared_vertex = Vec::new();
    for e in 0..m {
        let (a, b) = graph.endpoints(e);
        for f in (e + 1)..m {
            let (c, d) = graph.endpoints(f);
            let shared = if a == c || a == d {
                Some(a)
            } else if b == c || b == d {
                Some(b)
            } else {
                None
            };
            if let Some(v) = shared {
                pairs.push((e, f));
                shared_vertex.push(v);
            }
        }
    }
    let line_graph = SimpleGraph::new(m, &pairs).expect("distinct edge pairs cannot repeat");
    LineGraphMap {
        line_graph,
        shared_vertex,
    }
}

/// The incidence phase function induced on the line graph: at the line
/// edge joining `e` and `f` through vertex `v`, edge `e`'s end carries
/// `omega(v, e)^{-1}` and edge `f`'s end carries `omega(v, f)^{-1}`.
pub fn line_orientation(og: &OrientedGainGraph, map: &LineGraphMap) -> IncidencePhase {
    debug_assert_eq!(map.line_graph().vertex_count(), og.graph().edge_count());
    let mut omega = IncidencePhase::new();
    for (line_edge, &(e, f)) in map.line_graph().edges().iter().enumerate() {
        let v = map.shared_vertex(line_edge);
        let w_e = og.omega().get(v, e).expect("shared vertex is incident to e");
        let w_f = og.omega().get(v, f).expect("shared vertex is incident to f");
        omega.insert(e, line_edge, w_e.inv());
        omega.insert(f, line_edge, w_f.inv());
    }
    omega
}

/// The line graph of an oriented gain graph: the gain graph associated to
/// the induced orientation, paired with that orientation.
pub fn line_graph_oriented(og: &OrientedGainGraph) -> OrientedGainGraph {
    let map = underlying_line_graph(og.graph());
    let omega = line_orientation(og, &map);
    let phi = associated_gain_graph(map.line_graph(), &omega, *og.spec())
        .expect("induced phases cover exactly the line incidences");
    OrientedGainGraph::new(phi, omega).expect("associated gain graph satisfies the gain relation")
}

/// A representative of the line graph of a gain graph, computed from the
/// default orientation. Any other orientation yields a switching
/// equivalent result, so callers comparing representatives should compare
/// up to switching.
pub fn line_graph_class(phi: &GainGraph) -> GainGraph {
    line_graph_oriented(&default_orientation(phi)).phi().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gains::{GroupFamily, GroupSpec, UnitGain};
    use crate::graph::{find_switching, SwitchingFunction, SwitchOutcome};
    use crate::orientation::{random_orientation, switch_orientation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(p: i64, q: i64) -> UnitGain {
        UnitGain::new(p, q).unwrap()
    }

    fn circle(s: UnitGain) -> GroupSpec {
        GroupSpec::new(GroupFamily::Circle, s).unwrap()
    }

    #[test]
    fn single_edge_has_an_edgeless_line_graph() {
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let map = underlying_line_graph(&graph);
        assert_eq!(map.line_graph().vertex_count(), 1);
        assert_eq!(map.line_graph().edge_count(), 0);
    }

    #[test]
    fn path_line_graph_is_an_edge_through_the_middle_vertex() {
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let map = underlying_line_graph(&graph);
        assert_eq!(map.line_graph().vertex_count(), 2);
        assert_eq!(map.line_graph().edges(), &[(0, 1)]);
        assert_eq!(map.shared_vertex(0), 1);
    }

    #[test]
    fn triangle_line_graph_is_a_triangle() {
        // oracle: pairwise endpoint intersection of the three edges
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let map = underlying_line_graph(&graph);
        assert_eq!(map.line_graph().vertex_count(), 3);
        assert_eq!(map.line_graph().edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(map.shared_vertices(), &[1, 0, 2]);
    }

    #[test]
    fn vertex_stars_become_cliques() {
        let graph = SimpleGraph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let map = underlying_line_graph(&graph);
        // four edges at vertex 0 form a 4-clique
        assert_eq!(map.line_graph().edge_count(), 6);
        for line_edge in 0..6 {
            assert_eq!(map.shared_vertex(line_edge), 0);
        }
    }

    #[test]
    fn induced_phases_invert_the_shared_end() {
        // path with omega(v1, e0) = i, omega(v1, e1) = 1
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let spec = circle(UnitGain::half_turn());
        let omega = IncidencePhase::from_entries([
            ((0, 0), g(1, 8)),
            ((1, 0), g(1, 4)),
            ((1, 1), UnitGain::identity()),
            ((2, 1), g(1, 8).mul(g(1, 4)).mul(UnitGain::half_turn())),
        ])
        .unwrap();
        let phi = associated_gain_graph(&graph, &omega, spec).unwrap();
        let og = OrientedGainGraph::new(phi, omega).unwrap();
        let map = underlying_line_graph(&graph);
        let omega_line = line_orientation(&og, &map);
        assert_eq!(omega_line.get(0, 0), Some(g(3, 4)));
        assert_eq!(omega_line.get(1, 0), Some(UnitGain::identity()));
    }

    #[test]
    fn constant_involution_source_gives_constant_involution_line_graph() {
        let s = UnitGain::half_turn();
        let graph = SimpleGraph::complete(4);
        let omega = IncidencePhase::constant(&graph, s);
        let phi = associated_gain_graph(&graph, &omega, circle(s)).unwrap();
        assert!(phi.gains().iter().all(|&value| value == s));
        let og = OrientedGainGraph::new(phi, omega).unwrap();
        let line = line_graph_oriented(&og);
        assert!(line.phi().gains().iter().all(|&value| value == s));
        for (_, value) in line.omega().entries() {
            assert_eq!(value, s);
        }
    }

    #[test]
    fn path_with_identity_phases_gives_involution_gain() {
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = UnitGain::half_turn();
        let omega = IncidencePhase::constant(&graph, UnitGain::identity());
        let phi = associated_gain_graph(&graph, &omega, circle(s)).unwrap();
        let og = OrientedGainGraph::new(phi, omega).unwrap();
        let line = line_graph_oriented(&og);
        assert_eq!(line.graph().edge_count(), 1);
        assert_eq!(line.phi().stored_gain(0), s);
    }

    #[test]
    fn line_graph_class_of_edgeless_graph_is_empty() {
        let spec = circle(UnitGain::half_turn());
        let phi = GainGraph::new(SimpleGraph::edgeless(3), spec, vec![]).unwrap();
        let line = line_graph_class(&phi);
        assert_eq!(line.graph().vertex_count(), 0);
        assert_eq!(line.graph().edge_count(), 0);
    }

    #[test]
    fn two_orientations_induce_switching_equivalent_line_graphs() {
        let spec = GroupSpec::new(GroupFamily::Mu(8), UnitGain::half_turn()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let graph = SimpleGraph::random_gnp(6, 0.6, &mut rng);
        let phi = GainGraph::random(graph, spec, &mut rng).unwrap();
        let line_a = line_graph_oriented(&random_orientation(&phi, 100)).phi().clone();
        let line_b = line_graph_oriented(&random_orientation(&phi, 200)).phi().clone();
        match find_switching(&line_a, &line_b).unwrap() {
            SwitchOutcome::Equivalent(zeta) => {
                assert_eq!(line_a.switch(&zeta).unwrap(), line_b);
            }
            SwitchOutcome::NotEquivalent { .. } => {
                panic!("orientations of one gain graph give equivalent line graphs")
            }
        }
    }

    #[test]
    fn reorienting_one_edge_switches_the_line_vertex() {
        // multiplying both incidence phases of edge `e` by the same group
        // element keeps the gain graph and switches line vertex `e`
        let spec = GroupSpec::new(GroupFamily::Mu(12), UnitGain::half_turn()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let graph = SimpleGraph::complete(4);
        let phi = GainGraph::random(graph, spec, &mut rng).unwrap();
        let og = random_orientation(&phi, 7);

        let edge = 2;
        let factor = g(1, 12);
        let (lo, hi) = og.graph().endpoints(edge);
        let mut changed = og.omega().clone();
        changed.insert(lo, edge, og.omega().get(lo, edge).unwrap().mul(factor));
        changed.insert(hi, edge, og.omega().get(hi, edge).unwrap().mul(factor));
        let reoriented = OrientedGainGraph::new(phi.clone(), changed).unwrap();

        let line_old = line_graph_oriented(&og);
        let line_new = line_graph_oriented(&reoriented);

        let mut values = vec![UnitGain::identity(); og.graph().edge_count()];
        values[edge] = factor;
        let zeta_line = SwitchingFunction::new(values);
        assert_eq!(line_new, switch_orientation(&line_old, &zeta_line).unwrap());
    }
}
