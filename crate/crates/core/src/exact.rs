//! Exact reference solutions for constant initial data around one junction.
//!
//! The junction solver prescribes, for every road, a junction-side density
//! together with the flux it carries. At a critical density that flux can
//! be any value in the jump gap, so the waves connecting the initial state
//! to the junction state must be built with the *selected* flux values, not
//! with the single-valued diagram; the generic edge solver cannot know
//! them. Fans here therefore pin a flux value to each state and compute
//! every speed from the Rankine-Hugoniot condition on the pinned values.
//!
//! Incoming roads live on `[-L, 0]` with the junction at the right end and
//! only nonpositive wave speeds; outgoing roads live on `[0, L]` with only
//! nonnegative speeds.

use crate::error::{Error, Result};
use crate::flux::{DiscFlux, TrafficAhead};
use crate::junction::{self, JunctionSpec, JunctionTrace, Port};

/// Self-similar solution on one road, anchored at the junction.
#[derive(Debug, Clone, PartialEq)]
pub struct RoadSolution {
    /// Constant states from the far end towards positive `xi`.
    states: Vec<f64>,
    /// Strictly increasing wave speeds separating the states.
    speeds: Vec<f64>,
    /// Initial datum, returned at `t = 0`.
    initial: f64,
}

impl RoadSolution {
    fn constant(u: f64) -> Self {
        Self {
            states: vec![u],
            speeds: Vec::new(),
            initial: u,
        }
    }

    fn new(states: Vec<f64>, speeds: Vec<f64>) -> Self {
        debug_assert_eq!(states.len(), speeds.len() + 1);
        debug_assert!(
            speeds.windows(2).all(|w| w[0] < w[1]),
            "speeds not sorted: {speeds:?}"
        );
        let initial = states[0];
        Self {
            states,
            speeds,
            initial,
        }
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    /// Value at the similarity coordinate `xi = x/t`; ties take the right
    /// state.
    pub fn evaluate_xi(&self, xi: f64) -> f64 {
        let idx = self.speeds.partition_point(|&s| s <= xi);
        self.states[idx]
    }

    pub fn max_abs_speed(&self) -> f64 {
        self.speeds.iter().map(|s| s.abs()).fold(0.0, f64::max)
    }

    /// Exact mean value over `[x0, x1]` at time `t > 0`; integrates the
    /// piecewise-constant profile against the wave positions.
    pub fn average(&self, x0: f64, x1: f64, t: f64) -> f64 {
        debug_assert!(x1 > x0);
        if t <= 0.0 {
            return self.initial;
        }
        let mut acc = 0.0;
        let mut left = x0;
        for (i, &s) in self.speeds.iter().enumerate() {
            let pos = (s * t).clamp(x0, x1);
            if pos > left {
                acc += self.states[i] * (pos - left);
                left = pos;
            }
        }
        acc += self.states[self.states.len() - 1] * (x1 - left);
        acc / (x1 - x0)
    }
}

/// Exact solution of a single-junction network with constant initial data.
#[derive(Debug, Clone)]
pub struct ExactNetworkSolution {
    pub incoming: Vec<RoadSolution>,
    pub outgoing: Vec<RoadSolution>,
    /// The junction fluxes and densities realizing the solution.
    pub trace: JunctionTrace,
}

impl ExactNetworkSolution {
    /// Density at position `x` (junction at `x = 0`) and time `t >= 0`.
    pub fn evaluate(&self, port: Port, x: f64, t: f64) -> f64 {
        let road = self.road(port);
        if t <= 0.0 {
            return road.initial;
        }
        road.evaluate_xi(x / t)
    }

    pub fn road(&self, port: Port) -> &RoadSolution {
        match port {
            Port::Incoming(i) => &self.incoming[i],
            Port::Outgoing(j) => &self.outgoing[j],
        }
    }

    /// Time at which the fastest wave of this road reaches distance `len`
    /// from the junction; the solution is valid strictly before it.
    pub fn validity_horizon(&self, port: Port, len: f64) -> f64 {
        let top = self.road(port).max_abs_speed();
        if top == 0.0 {
            f64::INFINITY
        } else {
            len / top
        }
    }

    pub fn is_valid_at(&self, port: Port, len: f64, t: f64) -> bool {
        t <= self.validity_horizon(port, len)
    }
}

/// Solve the junction for constant data and attach the wave fans.
pub fn exact_network_solution(
    f: &DiscFlux,
    spec: &JunctionSpec,
    u_in0: &[f64],
    u_out0: &[f64],
    ahead: &[TrafficAhead],
) -> Result<ExactNetworkSolution> {
    let trace = junction::resolve(f, spec, u_in0, u_out0, ahead, false)?;
    let incoming = u_in0
        .iter()
        .enumerate()
        .map(|(i, &u0)| incoming_fan(f, u0, trace.u_in[i], trace.f_in[i]))
        .collect::<Result<Vec<_>>>()?;
    let outgoing = u_out0
        .iter()
        .enumerate()
        .map(|(j, &u0)| outgoing_fan(f, trace.u_out[j], trace.f_out[j], u0, ahead[j]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactNetworkSolution {
        incoming,
        outgoing,
        trace,
    })
}

/// Waves from the initial state `u0` (left) to the junction state `u_j`
/// carrying flux `f_j` (right); all speeds nonpositive.
fn incoming_fan(f: &DiscFlux, u0: f64, u_j: f64, f_j: f64) -> Result<RoadSolution> {
    let tol = f.critical_tol();
    let u_star = f.u_star();
    if (u0 - u_j).abs() <= tol {
        return Ok(RoadSolution::constant(u0));
    }
    let f0 = f.eval(u0)?;
    if (u_j - u_star).abs() <= tol {
        // Single shock onto the critical state, whose flux is the inflow.
        let speed = (f_j - f0) / (u_star - u0);
        return Ok(RoadSolution::new(vec![u0, u_star], vec![speed]));
    }
    if u_j > u_star {
        let f_jct = f.eval(u_j)?;
        if u0 > u_star + tol || (u0 - u_star).abs() <= tol {
            // Branch-2 contact; a critical left state carries f(u*+) here,
            // which the Rankine-Hugoniot quotient encodes automatically.
            let left_flux = if (u0 - u_star).abs() <= tol {
                f.flux_after_drop()
            } else {
                f0
            };
            let speed = (f_jct - left_flux) / (u_j - u0);
            return Ok(RoadSolution::new(vec![u0, u_j], vec![speed]));
        }
        // Subcritical initial state: one or two backward waves depending on
        // the chord intersection.
        if u0 > f.gamma(u_j) {
            let s1 = (f.flux_after_drop() - f0) / (u_star - u0);
            let s2 = (f_jct - f.flux_after_drop()) / (u_j - u_star);
            return Ok(RoadSolution::new(vec![u0, u_star, u_j], vec![s1, s2]));
        }
        let speed = (f_jct - f0) / (u_j - u0);
        return Ok(RoadSolution::new(vec![u0, u_j], vec![speed]));
    }
    Err(Error::InconsistentJunction(format!(
        "incoming junction density {u_j} below critical with initial state {u0}"
    )))
}

/// Waves from the junction state `u_j` carrying flux `f_j` (left) to the
/// initial state `u0` (right); all speeds nonnegative.
fn outgoing_fan(
    f: &DiscFlux,
    u_j: f64,
    f_j: f64,
    u0: f64,
    ahead: TrafficAhead,
) -> Result<RoadSolution> {
    let tol = f.critical_tol();
    let u_star = f.u_star();
    if (u_j - u0).abs() <= tol {
        return Ok(RoadSolution::constant(u0));
    }
    if u_j > u_star + tol {
        return Err(Error::InconsistentJunction(format!(
            "outgoing junction density {u_j} above critical yet distinct from initial state {u0}"
        )));
    }
    // A critical initial state carries the supply-selected flux value.
    let f0 = if (u0 - u_star).abs() <= tol {
        match ahead {
            TrafficAhead::FreeFlowing => f.flux_before_drop(),
            TrafficAhead::Congested => f.flux_after_drop(),
        }
    } else {
        f.eval(u0)?
    };
    let speed = (f0 - f_j) / (u0 - u_j);
    Ok(RoadSolution::new(vec![u_j, u0], vec![speed]))
}
