//! Solvers for the LWR traffic model whose fundamental diagram has a single
//! decreasing jump at the critical density, posed on road networks.
//!
//! The crate provides:
//!
//! - the discontinuous diagram and its split/regularized forms ([`flux`]);
//! - exact Riemann solutions on a single road ([`riemann`]) and at 1-to-1,
//!   1-to-2 and 2-to-1 junctions ([`junction`], [`exact`]);
//! - the splitting finite-volume scheme (implicit sweep for the Heaviside
//!   part, Godunov step for the continuous part) and a regularized Godunov
//!   baseline ([`scheme`]), coupled over networks ([`network`]);
//! - L1-error and convergence-rate tooling ([`analysis`]).

pub mod analysis;
pub mod error;
pub mod exact;
pub mod flux;
pub mod junction;
pub mod network;
pub mod riemann;
pub mod scheme;

pub use error::{Error, Result};
pub use exact::{exact_network_solution, ExactNetworkSolution, RoadSolution};
pub use flux::{DiscFlux, RegularizedFlux, SplitFlux, TrafficAhead};
pub use junction::{JunctionKind, JunctionSpec, JunctionTrace, Port};
pub use network::{
    simulate, total_mass, InitialData, JunctionDef, Road, RoadNetwork, SchemeKind,
    SimulationConfig, Trajectory,
};
pub use riemann::{solve_riemann, Wave, WaveFan, WaveKind};
pub use scheme::{BoundaryKind, EdgeState, Trace};
