//! Junction Riemann solvers and the flux adjustments feeding the splitting
//! scheme.
//!
//! A junction step has three layers:
//!
//! 1. flux maximization with the discontinuous diagram's supply and demand
//!    ([`junction_fluxes`]), conservative by construction;
//! 2. the admissible junction-side densities realizing those fluxes
//!    ([`junction_densities`]);
//! 3. the shift of every flux that belongs to a supercritical density onto
//!    the continuous curve `p` ([`adjust_1to1`], [`adjust_1to2`],
//!    [`adjust_2to1`]), together with the boundary `g` values that make the
//!    composite interface flux equal the physical one.
//!
//! Three topologies are supported: 1-to-1, 1-to-2 with a distribution row,
//! and 2-to-1 with a right-of-way parameter.

use crate::error::{Error, Result};
use crate::flux::{DiscFlux, TrafficAhead, FLUX_CMP_TOL};

/// Junction topology with its routing parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JunctionKind {
    OneToOne,
    /// Distribution fractions onto the two outgoing roads; interior and
    /// summing to one.
    OneToTwo {
        beta: [f64; 2],
    },
    /// Right-of-way priority of the first incoming road.
    TwoToOne {
        q: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionSpec {
    kind: JunctionKind,
}

impl JunctionSpec {
    pub fn new(kind: JunctionKind) -> Result<Self> {
        match kind {
            JunctionKind::OneToOne => {}
            JunctionKind::OneToTwo { beta } => {
                if !(beta[0] > 0.0 && beta[0] < 1.0 && beta[1] > 0.0 && beta[1] < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "distribution fractions must be interior, got {beta:?}"
                    )));
                }
                if (beta[0] + beta[1] - 1.0).abs() > FLUX_CMP_TOL {
                    return Err(Error::InvalidSpec(format!(
                        "distribution row must sum to one, got {beta:?}"
                    )));
                }
            }
            JunctionKind::TwoToOne { q } => {
                if !(q > 0.0 && q < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "right-of-way parameter must lie in (0, 1), got {q}"
                    )));
                }
            }
        }
        Ok(Self { kind })
    }

    pub fn one_to_one() -> Self {
        Self {
            kind: JunctionKind::OneToOne,
        }
    }

    pub fn one_to_two(beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(JunctionKind::OneToTwo {
            beta: [beta1, beta2],
        })
    }

    pub fn two_to_one(q: f64) -> Result<Self> {
        Self::new(JunctionKind::TwoToOne { q })
    }

    pub fn kind(&self) -> JunctionKind {
        self.kind
    }

    pub fn n_in(&self) -> usize {
        match self.kind {
            JunctionKind::TwoToOne { .. } => 2,
            _ => 1,
        }
    }

    pub fn n_out(&self) -> usize {
        match self.kind {
            JunctionKind::OneToTwo { .. } => 2,
            _ => 1,
        }
    }
}

/// Identifies one port of a junction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    Incoming(usize),
    Outgoing(usize),
}

/// Everything one junction evaluation produces.
///
/// `g_in[i] = f_in[i] - f_adj_in[i]` seeds the backward sweep of the
/// incoming road; `g_out[j] = f_out[j] - f_adj_out[j]` is the matching
/// left-interface value on the outgoing road, so that the composite
/// interface flux `p`-part + `g`-part equals the physical flux on both
/// sides and the junction conserves mass step by step.
#[derive(Debug, Clone, PartialEq)]
pub struct JunctionTrace {
    pub f_in: Vec<f64>,
    pub f_out: Vec<f64>,
    pub f_adj_in: Vec<f64>,
    pub f_adj_out: Vec<f64>,
    pub g_in: Vec<f64>,
    pub g_out: Vec<f64>,
    pub u_in: Vec<f64>,
    pub u_out: Vec<f64>,
}

/// Boundary `g` value handed to incoming road `i`, in `[-alpha, 0]`.
pub fn boundary_g(trace: &JunctionTrace, i: usize) -> f64 {
    trace.g_in[i]
}

fn demands(f: &DiscFlux, u_in0: &[f64]) -> Result<Vec<f64>> {
    u_in0.iter().map(|&u| f.demand(u)).collect()
}

fn supplies(f: &DiscFlux, u_out0: &[f64], ahead: &[TrafficAhead]) -> Result<Vec<f64>> {
    u_out0
        .iter()
        .zip(ahead)
        .map(|(&u, &a)| f.supply(u, a))
        .collect()
}

fn check_arity(spec: &JunctionSpec, n_in: usize, n_out: usize) -> Result<()> {
    if n_in != spec.n_in() || n_out != spec.n_out() {
        return Err(Error::InvalidSpec(format!(
            "junction expects {}-to-{}, got {n_in} incoming and {n_out} outgoing states",
            spec.n_in(),
            spec.n_out()
        )));
    }
    Ok(())
}

/// Maximize the total inflow subject to routing and supply constraints,
/// using the discontinuous diagram.
///
/// `ahead` carries one flag per outgoing road, consulted only where the
/// adjacent density is exactly critical.
pub fn junction_fluxes(
    f: &DiscFlux,
    spec: &JunctionSpec,
    u_in0: &[f64],
    u_out0: &[f64],
    ahead: &[TrafficAhead],
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_arity(spec, u_in0.len(), u_out0.len())?;
    let d = demands(f, u_in0)?;
    let s = supplies(f, u_out0, ahead)?;
    Ok(fluxes_from_demand_supply(spec, &d, &s))
}

/// The same maximization given precomputed demands and supplies; shared by
/// the discontinuous and regularized drivers.
pub fn fluxes_from_demand_supply(
    spec: &JunctionSpec,
    d: &[f64],
    s: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    match spec.kind {
        JunctionKind::OneToOne => {
            let q = d[0].min(s[0]);
            (vec![q], vec![q])
        }
        JunctionKind::OneToTwo { beta } => {
            let f_in = d[0].min(s[0] / beta[0]).min(s[1] / beta[1]);
            (vec![f_in], vec![beta[0] * f_in, beta[1] * f_in])
        }
        JunctionKind::TwoToOne { q } => {
            let f_max = (d[0] + d[1]).min(s[0]);
            let mut z1 = q * f_max;
            let mut z2 = (1.0 - q) * f_max;
            // Project the priority point onto the feasible part of the
            // maximal-flux line when it overshoots one demand.
            if z1 > d[0] {
                z1 = d[0];
                z2 = f_max - z1;
            } else if z2 > d[1] {
                z2 = d[1];
                z1 = f_max - z2;
            }
            (vec![z1, z2], vec![z1 + z2])
        }
    }
}

/// Shift fluxes attached to supercritical junction densities onto `p`.
///
/// Outgoing road `j` is shifted by `alpha` exactly when its supply binds
/// below capacity. An incoming road sending less than its demand congests:
/// its flux moves to `p(u*) = f(u*-)` when it exceeds `f(u*+)` (the
/// junction density is critical) and up by `alpha` otherwise (the density
/// is on branch 2).
fn adjust(f: &DiscFlux, d: &[f64], s: &[f64], f_in: &[f64], f_out: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let alpha = f.jump_magnitude();
    let cap = f.flux_before_drop();
    let f_plus = f.flux_after_drop();
    let f_adj_out = f_out
        .iter()
        .zip(s)
        .map(|(&q, &sj)| {
            if (q - sj).abs() <= FLUX_CMP_TOL && sj < cap - FLUX_CMP_TOL {
                q + alpha
            } else {
                q
            }
        })
        .collect();
    let f_adj_in = f_in
        .iter()
        .zip(d)
        .map(|(&q, &di)| {
            if q < di - FLUX_CMP_TOL {
                if q > f_plus + FLUX_CMP_TOL {
                    cap
                } else {
                    q + alpha
                }
            } else {
                q
            }
        })
        .collect();
    (f_adj_in, f_adj_out)
}

/// 1-to-1 junction: flux values and their shifts onto `p`.
pub fn adjust_1to1(f: &DiscFlux, d1: f64, s1: f64) -> (f64, f64) {
    let spec = JunctionSpec::one_to_one();
    let (f_in, f_out) = fluxes_from_demand_supply(&spec, &[d1], &[s1]);
    let (ai, ao) = adjust(f, &[d1], &[s1], &f_in, &f_out);
    (ai[0], ao[0])
}

/// 1-to-2 junction: adjusted inflow and the two adjusted outflows.
pub fn adjust_1to2(
    f: &DiscFlux,
    d1: f64,
    s1: f64,
    s2: f64,
    beta1: f64,
    beta2: f64,
) -> Result<(f64, [f64; 2])> {
    let spec = JunctionSpec::one_to_two(beta1, beta2)?;
    let (f_in, f_out) = fluxes_from_demand_supply(&spec, &[d1], &[s1, s2]);
    let (ai, ao) = adjust(f, &[d1], &[s1, s2], &f_in, &f_out);
    Ok((ai[0], [ao[0], ao[1]]))
}

/// 2-to-1 junction: the two adjusted inflows and the adjusted outflow.
pub fn adjust_2to1(f: &DiscFlux, d1: f64, d2: f64, s1: f64, q: f64) -> Result<([f64; 2], f64)> {
    let spec = JunctionSpec::two_to_one(q)?;
    let (f_in, f_out) = fluxes_from_demand_supply(&spec, &[d1, d2], &[s1]);
    let (ai, ao) = adjust(f, &[d1, d2], &[s1], &f_in, &f_out);
    Ok(([ai[0], ai[1]], ao[0]))
}

/// Verbatim transcription of the published adjustment listings, including
/// their dimensionally odd guards; selectable for comparison runs only.
fn adjust_strict(
    f: &DiscFlux,
    spec: &JunctionSpec,
    d: &[f64],
    s: &[f64],
    f_in: &[f64],
    f_out: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let alpha = f.jump_magnitude();
    let cap = f.flux_before_drop();
    let f_plus = f.flux_after_drop();
    let eq = |a: f64, b: f64| (a - b).abs() <= FLUX_CMP_TOL;
    let mut ai = f_in.to_vec();
    let mut ao = f_out.to_vec();
    match spec.kind {
        JunctionKind::OneToOne => {
            if eq(s[0], d[0]) && !eq(d[0], cap) {
                ao[0] += alpha;
            } else if s[0] < d[0] {
                ao[0] += alpha;
                ai[0] += alpha;
            }
        }
        JunctionKind::OneToTwo { beta } => {
            if eq(f_in[0], d[0]) {
                if eq(s[0], d[0]) && !eq(s[0], cap) {
                    ao[0] += alpha;
                } else if eq(s[1], d[0]) && !eq(s[1], cap) {
                    ao[1] += alpha;
                }
            } else if eq(f_in[0], s[0] / beta[0]) || eq(f_in[0], s[1] / beta[1]) {
                ai[0] = if f_in[0] > f_plus {
                    cap
                } else {
                    f_in[0] + alpha
                };
                if eq(s[0] / beta[0], s[1] * beta[1]) && s[0] * beta[0] < d[0] {
                    ao[0] += alpha;
                    ao[1] += alpha;
                } else if s[0] / beta[0] < s[1] * beta[1] && s[0] * beta[0] < d[0] {
                    ao[0] += alpha;
                } else if s[1] / beta[1] < s[0] * beta[0] && s[1] * beta[1] < d[0] {
                    ao[1] += alpha;
                }
            }
        }
        JunctionKind::TwoToOne { .. } => {
            if eq(d[0] + d[1], s[0]) && !eq(s[0], cap) {
                ao[0] += alpha;
            } else if d[0] + d[1] > s[0] {
                if !eq(s[0], cap) {
                    ao[0] += alpha;
                }
                for i in 0..2 {
                    if f_in[i] < d[i] {
                        ai[i] = if f_in[i] > f_plus {
                            cap
                        } else {
                            f_in[i] + alpha
                        };
                    }
                }
            }
        }
    }
    (ai, ao)
}

/// Junction-side densities realizing the prescribed fluxes, unique within
/// the admissible candidate sets.
///
/// Incoming road: keep the initial state when the demand is met from a
/// subcritical state; otherwise the branch-2 density for fluxes at or
/// below `f(u*+)` and the critical density for fluxes in the jump gap.
/// Outgoing road: the branch-1 density unless the supply binds below
/// capacity, in which case the road keeps its congested state.
pub fn junction_densities(
    f: &DiscFlux,
    spec: &JunctionSpec,
    u_in0: &[f64],
    u_out0: &[f64],
    f_in: &[f64],
    f_out: &[f64],
    ahead: &[TrafficAhead],
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_arity(spec, u_in0.len(), u_out0.len())?;
    let cap = f.flux_before_drop();
    let f_plus = f.flux_after_drop();
    let tol = f.critical_tol();

    let mut u_in = Vec::with_capacity(u_in0.len());
    for (&u0, &q) in u_in0.iter().zip(f_in) {
        let d = f.demand(u0)?;
        if q > d + FLUX_CMP_TOL {
            return Err(Error::InconsistentJunction(format!(
                "inflow {q} exceeds demand {d} of state {u0}"
            )));
        }
        let u = if (q - d).abs() <= FLUX_CMP_TOL && u0 <= f.u_star() + tol {
            u0
        } else if q <= f_plus + FLUX_CMP_TOL {
            f.branch2_inverse(q)
        } else {
            f.u_star()
        };
        u_in.push(u);
    }

    let mut u_out = Vec::with_capacity(u_out0.len());
    for ((&u0, &q), &a) in u_out0.iter().zip(f_out).zip(ahead) {
        let s = f.supply(u0, a)?;
        if q > s + FLUX_CMP_TOL {
            return Err(Error::InconsistentJunction(format!(
                "outflow {q} exceeds supply {s} of state {u0}"
            )));
        }
        let binding = (q - s).abs() <= FLUX_CMP_TOL && s < cap - FLUX_CMP_TOL;
        let u = if binding {
            if u0 > f.u_star() + tol {
                u0
            } else {
                f.u_star()
            }
        } else {
            f.branch1_inverse(q)
        };
        u_out.push(u);
    }
    Ok((u_in, u_out))
}

/// Run the full junction pipeline for one step: fluxes, adjustments,
/// densities, boundary `g` values.
pub fn resolve(
    f: &DiscFlux,
    spec: &JunctionSpec,
    u_in0: &[f64],
    u_out0: &[f64],
    ahead: &[TrafficAhead],
    strict_paper_algorithms: bool,
) -> Result<JunctionTrace> {
    check_arity(spec, u_in0.len(), u_out0.len())?;
    let d = demands(f, u_in0)?;
    let s = supplies(f, u_out0, ahead)?;
    let (f_in, f_out) = fluxes_from_demand_supply(spec, &d, &s);
    let (f_adj_in, f_adj_out) = if strict_paper_algorithms {
        adjust_strict(f, spec, &d, &s, &f_in, &f_out)
    } else {
        adjust(f, &d, &s, &f_in, &f_out)
    };
    let (u_in, u_out) = junction_densities(f, spec, u_in0, u_out0, &f_in, &f_out, ahead)?;
    let g_in = f_in.iter().zip(&f_adj_in).map(|(a, b)| a - b).collect();
    let g_out = f_out.iter().zip(&f_adj_out).map(|(a, b)| a - b).collect();
    Ok(JunctionTrace {
        f_in,
        f_out,
        f_adj_in,
        f_adj_out,
        g_in,
        g_out,
        u_in,
        u_out,
    })
}
