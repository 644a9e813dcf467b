//! Incidence phase functions and oriented gain graphs.
//!
//! An incidence phase function assigns a group element to every incident
//! (vertex, edge) pair; non-incident pairs carry no value (the role the
//! value 0 plays on paper). Together with the distinguished involution `s`
//! it determines a gain on each edge:
//!
//! ```text
//! phi(e_ij) = omega(v_i, e) * s * omega(v_j, e)^{-1}
//! ```
//!
//! which is well defined because reversing the direction inverts the right
//! hand side. An orientation of a gain graph is any incidence phase
//! function reproducing its gains this way; the pair is an
//! [`OrientedGainGraph`]. With gains in {+1, -1} and `s = -1` this is
//! exactly a bidirected graph, each edge end independently pointing in or
//! out.
//!
//! Switching an orientation multiplies `omega(v, e)` by `zeta(v)^{-1}`;
//! the associated gain graph of the switched orientation equals the
//! switched associated gain graph, which [`switch_orientation`] asserts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gains::{GroupSpec, UnitGain};
use crate::graph::{GainGraph, GraphError, SimpleGraph, SwitchingFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("missing incidence value at vertex {vertex}, edge {edge}")]
    MissingIncidence { vertex: usize, edge: usize },
    #[error("value given for non-incident pair (vertex {vertex}, edge {edge})")]
    NotIncident { vertex: usize, edge: usize },
    #[error("duplicate incidence value at vertex {vertex}, edge {edge}")]
    DuplicateIncidence { vertex: usize, edge: usize },
    #[error("incidence value {value} at (vertex {vertex}, edge {edge}) lies outside {family}")]
    ValueOutsideFamily {
        vertex: usize,
        edge: usize,
        value: UnitGain,
        family: crate::gains::GroupFamily,
    },
    #[error("edge {edge}: gain {expected} is not reproduced by the incidence phases (got {got})")]
    GainMismatch {
        edge: usize,
        expected: UnitGain,
        got: UnitGain,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A gain-valued function on vertex-edge incidences. Absence of a key
/// means the pair is not incident.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncidencePhase {
    values: BTreeMap<(usize, usize), UnitGain>,
}

impl IncidencePhase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I>(entries: I) -> Result<Self, OrientationError>
    where
        I: IntoIterator<Item = ((usize, usize), UnitGain)>,
    {
        let mut values = BTreeMap::new();
        for ((vertex, edge), value) in entries {
            if values.insert((vertex, edge), value).is_some() {
                return Err(OrientationError::DuplicateIncidence { vertex, edge });
            }
        }
        Ok(IncidencePhase { values })
    }

    /// The constant phase function `omega == value` on all incidences of `graph`.
    pub fn constant(graph: &SimpleGraph, value: UnitGain) -> Self {
        let mut values = BTreeMap::new();
        for (edge, &(lo, hi)) in graph.edges().iter().enumerate() {
            values.insert((lo, edge), value);
            values.insert((hi, edge), value);
        }
        IncidencePhase { values }
    }

    pub fn insert(&mut self, vertex: usize, edge: usize, value: UnitGain) {
        self.values.insert((vertex, edge), value);
    }

    pub fn get(&self, vertex: usize, edge: usize) -> Option<UnitGain> {
        self.values.get(&(vertex, edge)).copied()
    }

    /// Iterates entries in (vertex, edge) order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), UnitGain)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// Checks that the function is defined exactly on the incidences of
    /// `graph` with values inside the family.
    pub fn validate_for(&self, graph: &SimpleGraph, spec: &GroupSpec) -> Result<(), OrientationError> {
        for (edge, &(lo, hi)) in graph.edges().iter().enumerate() {
            for vertex in [lo, hi] {
                match self.get(vertex, edge) {
                    None => return Err(OrientationError::MissingIncidence { vertex, edge }),
                    Some(value) if !spec.family.contains(value) => {
                        return Err(OrientationError::ValueOutsideFamily {
                            vertex,
                            edge,
                            value,
                            family: spec.family,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        for (&(vertex, edge), _) in &self.values {
            if edge >= graph.edge_count() || !graph.is_endpoint(vertex, edge) {
                return Err(OrientationError::NotIncident { vertex, edge });
            }
        }
        Ok(())
    }

    /// The switched phase function: each value multiplied by
    /// `zeta(vertex)^{-1}` on the left.
    pub fn switched(&self, zeta: &SwitchingFunction) -> IncidencePhase {
        let values = self
            .values
            .iter()
            .map(|(&(vertex, edge), &value)| ((vertex, edge), zeta.value(vertex).inv().mul(value)))
            .collect();
        IncidencePhase { values }
    }
}

/// The gain graph determined by an incidence phase function:
/// `phi(e_ij) = omega(v_i, e) * s * omega(v_j, e)^{-1}` evaluated on the
/// canonical direction of each edge. The opposite direction yields the
/// inverse, which is asserted.
pub fn associated_gain_graph(
    graph: &SimpleGraph,
    omega: &IncidencePhase,
    spec: GroupSpec,
) -> Result<GainGraph, OrientationError> {
    omega.validate_for(graph, &spec)?;
    let s = spec.involution;
    let mut gains = Vec::with_capacity(graph.edge_count());
    for (edge, &(lo, hi)) in graph.edges().iter().enumerate() {
        let w_lo = omega.get(lo, edge).expect("validated above");
        let w_hi = omega.get(hi, edge).expect("validated above");
        let forward = w_lo.mul(s).mul(w_hi.inv());
        let backward = w_hi.mul(s).mul(w_lo.inv());
        assert_eq!(
            forward,
            backward.inv(),
            "gain must invert with direction (edge {edge})"
        );
        gains.push(forward);
    }
    Ok(GainGraph::new(graph.clone(), spec, gains)?)
}

/// A gain graph together with an orientation reproducing its gains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGainGraph {
    phi: GainGraph,
    omega: IncidencePhase,
}

impl OrientedGainGraph {
    /// Validates that `omega` is an orientation of `phi` (total on
    /// incidences, values in the family, gains reproduced exactly).
    pub fn new(phi: GainGraph, omega: IncidencePhase) -> Result<Self, OrientationError> {
        omega.validate_for(phi.graph(), phi.spec())?;
        let s = phi.spec().involution;
        for (edge, &(lo, hi)) in phi.graph().edges().iter().enumerate() {
            let w_lo = omega.get(lo, edge).expect("validated above");
            let w_hi = omega.get(hi, edge).expect("validated above");
            let got = w_lo.mul(s).mul(w_hi.inv());
            let expected = phi.stored_gain(edge);
            if got != expected {
                return Err(OrientationError::GainMismatch {
                    edge,
                    expected,
                    got,
                });
            }
        }
        Ok(OrientedGainGraph { phi, omega })
    }

    pub fn phi(&self) -> &GainGraph {
        &self.phi
    }

    pub fn omega(&self) -> &IncidencePhase {
        &self.omega
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.phi.graph()
    }

    pub fn spec(&self) -> &GroupSpec {
        self.phi.spec()
    }
}

/// The orientation that puts the identity on the larger endpoint of every
/// edge, forcing `s * phi(e_ij)` on the smaller one.
pub fn default_orientation(phi: &GainGraph) -> OrientedGainGraph {
    let s = phi.spec().involution;
    let mut omega = IncidencePhase::new();
    for (edge, &(lo, hi)) in phi.graph().edges().iter().enumerate() {
        omega.insert(hi, edge, UnitGain::identity());
        omega.insert(lo, edge, s.mul(phi.stored_gain(edge)));
    }
    OrientedGainGraph::new(phi.clone(), omega).expect("constructed to satisfy the gain relation")
}

/// A random orientation of `phi`: the larger endpoint of each edge draws
/// uniformly from the family's sampling subgroup and the smaller endpoint
/// is forced by the gain relation. Deterministic for a fixed seed.
pub fn random_orientation(phi: &GainGraph, seed: u64) -> OrientedGainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_orientation_with(phi, &mut rng)
}

/// As [`random_orientation`], drawing from a caller-supplied generator.
pub fn random_orientation_with<R: Rng + ?Sized>(phi: &GainGraph, rng: &mut R) -> OrientedGainGraph {
    let s = phi.spec().involution;
    let order = phi.spec().family.sample_order();
    let mut omega = IncidencePhase::new();
    for (edge, &(lo, hi)) in phi.graph().edges().iter().enumerate() {
        let w_hi = UnitGain::random_in_mu(order, rng).expect("sample order is positive");
        // phi(e) = w_lo * s * w_hi^{-1}  =>  w_lo = phi(e) * w_hi * s^{-1}
        let w_lo = phi.stored_gain(edge).mul(w_hi).mul(s.inv());
        omega.insert(hi, edge, w_hi);
        omega.insert(lo, edge, w_lo);
    }
    OrientedGainGraph::new(phi.clone(), omega).expect("forced endpoint satisfies the gain relation")
}

/// Switches an oriented gain graph by `zeta`. The result pairs the
/// switched gain graph with the switched orientation; that these agree
/// (the associated gain graph of `omega^zeta` is `phi^zeta`) is asserted
/// exactly.
pub fn switch_orientation(
    og: &OrientedGainGraph,
    zeta: &SwitchingFunction,
) -> Result<OrientedGainGraph, OrientationError> {
    let switched_phi = og.phi().switch(zeta)?;
    let switched_omega = og.omega().switched(zeta);
    let via_omega = associated_gain_graph(og.graph(), &switched_omega, *og.spec())?;
    assert_eq!(
        via_omega, switched_phi,
        "switched orientation must induce the switched gain graph"
    );
    OrientedGainGraph::new(switched_phi, switched_omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gains::GroupFamily;

    fn g(p: i64, q: i64) -> UnitGain {
        UnitGain::new(p, q).unwrap()
    }

    fn circle(s: UnitGain) -> GroupSpec {
        GroupSpec::new(GroupFamily::Circle, s).unwrap()
    }

    #[test]
    fn constant_involution_phase_gives_involution_gains() {
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = UnitGain::half_turn();
        let omega = IncidencePhase::constant(&graph, s);
        let phi = associated_gain_graph(&graph, &omega, circle(s)).unwrap();
        for edge in 0..3 {
            assert_eq!(phi.stored_gain(edge), s);
        }
    }

    #[test]
    fn single_edge_substitutions() {
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();

        // omega = 1 on both ends, s = -1: gain is -1
        let omega = IncidencePhase::constant(&graph, UnitGain::identity());
        let phi = associated_gain_graph(&graph, &omega, circle(UnitGain::half_turn())).unwrap();
        assert_eq!(phi.stored_gain(0), UnitGain::half_turn());

        // omega(v0) = i, omega(v1) = 1, s = +1: gain is i
        let omega = IncidencePhase::from_entries([
            ((0, 0), g(1, 4)),
            ((1, 0), UnitGain::identity()),
        ])
        .unwrap();
        let phi = associated_gain_graph(&graph, &omega, circle(UnitGain::identity())).unwrap();
        assert_eq!(phi.stored_gain(0), g(1, 4));
    }

    #[test]
    fn missing_incidence_is_reported() {
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let omega = IncidencePhase::from_entries([((0, 0), g(1, 4))]).unwrap();
        assert_eq!(
            associated_gain_graph(&graph, &omega, circle(UnitGain::half_turn())).unwrap_err(),
            OrientationError::MissingIncidence { vertex: 1, edge: 0 }
        );
    }

    #[test]
    fn non_incident_value_is_reported() {
        let graph = SimpleGraph::new(3, &[(0, 1)]).unwrap();
        let mut omega = IncidencePhase::constant(&graph, UnitGain::identity());
        omega.insert(2, 0, UnitGain::identity());
        assert_eq!(
            omega
                .validate_for(&graph, &circle(UnitGain::half_turn()))
                .unwrap_err(),
            OrientationError::NotIncident { vertex: 2, edge: 0 }
        );
    }

    #[test]
    fn default_orientation_substitutions() {
        // identity gains, s = -1: smaller endpoint carries -1, larger +1
        let graph = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let spec = circle(UnitGain::half_turn());
        let phi = GainGraph::constant(graph, spec, UnitGain::identity()).unwrap();
        let og = default_orientation(&phi);
        for (edge, &(lo, hi)) in og.graph().edges().iter().enumerate() {
            assert_eq!(og.omega().get(lo, edge), Some(UnitGain::half_turn()));
            assert_eq!(og.omega().get(hi, edge), Some(UnitGain::identity()));
        }

        // edge gain i, s = -1: smaller endpoint carries -i
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let phi = GainGraph::new(graph, spec, vec![g(1, 4)]).unwrap();
        let og = default_orientation(&phi);
        assert_eq!(og.omega().get(0, 0), Some(g(3, 4)));
        assert_eq!(og.omega().get(1, 0), Some(UnitGain::identity()));

        // round trip back through the associated gain graph
        let back = associated_gain_graph(og.graph(), og.omega(), *og.spec()).unwrap();
        assert_eq!(&back, og.phi());
    }

    #[test]
    fn random_orientation_is_seed_deterministic() {
        let graph = SimpleGraph::complete(4);
        let spec = GroupSpec::new(GroupFamily::Mu(8), UnitGain::half_turn()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = GainGraph::random(graph, spec, &mut rng).unwrap();
        let a = random_orientation(&phi, 17);
        let b = random_orientation(&phi, 17);
        assert_eq!(a, b);
        let c = random_orientation(&phi, 18);
        // different draws, same induced gain graph
        assert_eq!(c.phi(), a.phi());
    }

    #[test]
    fn switching_an_orientation_commutes_with_switching_gains() {
        let graph = SimpleGraph::complete(4);
        let spec = GroupSpec::new(GroupFamily::Mu(12), UnitGain::half_turn()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = GainGraph::random(graph, spec, &mut rng).unwrap();
        let og = random_orientation(&phi, 3);
        let zeta = SwitchingFunction::random_in_mu(4, 12, &mut rng).unwrap();
        let switched = switch_orientation(&og, &zeta).unwrap();
        assert_eq!(switched.phi(), &og.phi().switch(&zeta).unwrap());

        let identity = SwitchingFunction::identity(4);
        assert_eq!(&switch_orientation(&og, &identity).unwrap(), &og);
    }

    #[test]
    fn single_edge_orientation_switch() {
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let spec = circle(UnitGain::half_turn());
        let phi = GainGraph::new(graph, spec, vec![g(1, 4)]).unwrap();
        let og = default_orientation(&phi);
        // zeta(v0) = i multiplies omega(v0, e) by i^{-1} = -i
        let zeta = SwitchingFunction::new(vec![g(1, 4), UnitGain::identity()]);
        let switched = switch_orientation(&og, &zeta).unwrap();
        let expected = g(1, 4).inv().mul(og.omega().get(0, 0).unwrap());
        assert_eq!(switched.omega().get(0, 0), Some(expected));
        assert_eq!(switched.omega().get(1, 0), og.omega().get(1, 0));
    }

    #[test]
    fn bidirected_specialization_keeps_sign_values() {
        let graph = SimpleGraph::complete(4);
        let spec = GroupSpec::new(GroupFamily::Sign, UnitGain::half_turn()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let phi = GainGraph::random(graph, spec, &mut rng).unwrap();
        let og = random_orientation(&phi, 2);
        for ((_, _), value) in og.omega().entries() {
            assert!(value.denom() <= 2, "bidirection value {value} is not a sign");
        }
    }

    #[test]
    fn invalid_orientation_is_rejected() {
        let graph = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let spec = circle(UnitGain::half_turn());
        let phi = GainGraph::new(graph.clone(), spec, vec![g(1, 4)]).unwrap();
        // omega == 1 induces gain -1, not i
        let omega = IncidencePhase::constant(&graph, UnitGain::identity());
        assert_eq!(
            OrientedGainGraph::new(phi, omega).unwrap_err(),
            OrientationError::GainMismatch {
                edge: 0,
                expected: g(1, 4),
                got: UnitGain::half_turn(),
            }
        );
    }
}
