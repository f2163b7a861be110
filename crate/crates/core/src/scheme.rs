//! The splitting finite-volume scheme and the regularized Godunov baseline
//! on one road.
//!
//! A splitting step first advances the Heaviside part `g` implicitly, as a
//! single backward sweep from the downstream boundary (the implicit relation
//! triangularizes in that direction), then the continuous part `p` with an
//! explicit two-point Godunov step. The sweep is seeded at the right
//! boundary: by the downstream traffic state at an outflow, or by the
//! junction's flux shift at a coupled end.
//!
//! Grid convention: a road `(a, b)` with `J` unknowns has `dx = (b-a)/(J+1)`
//! and carries its values at `x_j = a + j*dx`, `j = 1..J`; the two remaining
//! grid points hold boundary data.

use crate::error::{Error, Result};
use crate::flux::{DiscFlux, RegularizedFlux, SplitFlux, TrafficAhead, DOMAIN_HARD_TOL};

/// Tolerance slack applied to CFL comparisons.
const CFL_SLACK: f64 = 1e-12;

/// A piecewise-constant boundary trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// `(from_time, value)` segments, first entry at time zero.
    steps: Vec<(f64, f64)>,
}

impl Trace {
    pub fn constant(value: f64) -> Self {
        Self {
            steps: vec![(0.0, value)],
        }
    }

    pub fn piecewise(steps: Vec<(f64, f64)>) -> Result<Self> {
        if steps.is_empty() || steps[0].0 != 0.0 {
            return Err(Error::Network("trace must start at time zero".into()));
        }
        if steps.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Network("trace breakpoints must increase".into()));
        }
        Ok(Self { steps })
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let idx = self.steps.partition_point(|&(from, _)| from <= t);
        self.steps[idx.saturating_sub(1)].1
    }
}

/// What a road end is attached to.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryKind {
    /// Upstream density trace, used as a ghost state.
    Inflow { trace: Trace },
    /// Downstream density trace plus the flag resolving the flux value when
    /// the trace sits exactly at the critical density.
    Outflow { trace: Trace, ahead: TrafficAhead },
    /// Coupled to a junction port; fluxes and `g` seeds arrive per step.
    JunctionCoupled { junction: usize, port: usize },
}

/// Cell values of one road plus grid metadata and boundary descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeState {
    pub cells: Vec<f64>,
    pub dx: f64,
    pub left_boundary: BoundaryKind,
    pub right_boundary: BoundaryKind,
    /// Seed used by the most recent backward sweep, in `[-alpha, 0]`.
    pub g_right: f64,
}

impl EdgeState {
    pub fn new(cells: Vec<f64>, dx: f64, left: BoundaryKind, right: BoundaryKind) -> Self {
        Self {
            cells,
            dx,
            left_boundary: left,
            right_boundary: right,
            g_right: 0.0,
        }
    }

    /// Advance one splitting step, recording the sweep seed that was used.
    pub fn advance_splitting(
        &self,
        sf: &SplitFlux,
        lambda: f64,
        bd: &StepBoundary,
    ) -> Result<(Self, StepFluxes)> {
        let (cells, fluxes) = full_step(&self.cells, sf, lambda, bd)?;
        let mut next = self.clone();
        next.cells = cells;
        next.g_right = bd.g_right_seed;
        Ok((next, fluxes))
    }

    /// Advance one step of the regularized Godunov baseline.
    pub fn advance_regularized(
        &self,
        rf: &RegularizedFlux,
        lambda: f64,
        bd: &StepBoundary,
    ) -> Result<(Self, StepFluxes)> {
        let (cells, fluxes) = step_regularized(&self.cells, rf, lambda, bd)?;
        let mut next = self.clone();
        next.cells = cells;
        Ok((next, fluxes))
    }
}

/// One side of the interface data a step needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// External end: ghost density from the boundary trace.
    Ghost(f64),
    /// Junction end: prescribed interface fluxes. `p_flux` enters the
    /// explicit half-step; `g_flux` is the matching Heaviside-part value
    /// (zero for the regularized scheme).
    Fluxes { p_flux: f64, g_flux: f64 },
}

/// Boundary inputs for one step of one road.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepBoundary {
    pub left: Coupling,
    pub right: Coupling,
    /// Sweep seed at the right boundary (ignored by the regularized step).
    pub g_right_seed: f64,
}

/// Composite (physical) boundary fluxes a step actually used, for mass
/// accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepFluxes {
    pub left: f64,
    pub right: f64,
}

/// Downstream boundary value of `g`: zero for subcritical traces, the full
/// jump for supercritical ones, and the `ahead` selection exactly at the
/// critical density.
pub fn right_boundary_g(s: f64, ahead: TrafficAhead, f: &DiscFlux) -> f64 {
    if f.is_critical(s) {
        match ahead {
            TrafficAhead::FreeFlowing => 0.0,
            TrafficAhead::Congested => -f.jump_magnitude(),
        }
    } else if s < f.u_star() {
        0.0
    } else {
        -f.jump_magnitude()
    }
}

/// Godunov flux of the continuous part `p`: minimum of upstream demand and
/// downstream supply of the unimodal `p`.
pub fn godunov_flux_p(sf: &SplitFlux, u_left: f64, u_right: f64) -> Result<f64> {
    let u_left = sf.base().check_density(u_left)?;
    let u_right = sf.base().check_density(u_right)?;
    Ok(sf.p_demand(u_left).min(sf.p_supply(u_right)))
}

/// Backward sweep of the implicit `g` half-step.
///
/// Returns the half-step values and the interface `g` values
/// `g[0..=J]`, where `g[J]` is the seed and `g[k]` sits at the left
/// interface of cell `k`. Every returned `g` lies in `[-alpha, 0]`.
pub fn half_step_g(
    cells: &[f64],
    sf: &SplitFlux,
    lambda: f64,
    g_right: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut u_half = vec![0.0; cells.len()];
    let mut g_iface = vec![0.0; cells.len() + 1];
    sweep(cells, sf, lambda, g_right, None, &mut u_half, &mut g_iface);
    (u_half, g_iface)
}

/// The sweep proper. `g_left_override`, when set, replaces the implicit
/// relation at the leftmost cell by a prescribed left-interface `g` flux,
/// the junction coupling that keeps the composite interface flux physical.
fn sweep(
    cells: &[f64],
    sf: &SplitFlux,
    lambda: f64,
    g_right: f64,
    g_left_override: Option<f64>,
    u_half: &mut [f64],
    g_iface: &mut [f64],
) {
    let n = cells.len();
    debug_assert_eq!(u_half.len(), n);
    debug_assert_eq!(g_iface.len(), n + 1);
    let alpha = sf.jump();
    let u_star = sf.u_star();
    let la = lambda * alpha;
    g_iface[n] = g_right.clamp(-alpha, 0.0);
    for j in (0..n).rev() {
        let w = cells[j] - lambda * g_iface[j + 1];
        if j == 0 {
            if let Some(g_fixed) = g_left_override {
                g_iface[0] = g_fixed.clamp(-alpha, 0.0);
                u_half[0] = w + lambda * g_iface[0];
                break;
            }
        }
        let g_j = if w < u_star {
            0.0
        } else if w < u_star + la {
            ((u_star - w) / lambda).clamp(-alpha, 0.0)
        } else {
            -alpha
        };
        g_iface[j] = g_j;
        u_half[j] = w + lambda * g_j;
    }
}

fn check_cfl_splitting(sf: &SplitFlux, lambda: f64) -> Result<()> {
    let top = sf
        .base()
        .branch1_slope()
        .abs()
        .max(sf.base().branch2_slope().abs());
    if lambda * top > 1.0 + CFL_SLACK {
        return Err(Error::Cfl {
            lambda,
            admissible: 1.0 / top,
        });
    }
    Ok(())
}

fn check_cells(upper: f64, cells: &[f64]) -> Result<()> {
    for &u in cells {
        if u < -DOMAIN_HARD_TOL || u > upper + DOMAIN_HARD_TOL {
            return Err(Error::Domain { value: u, upper });
        }
    }
    Ok(())
}

/// One full splitting step: implicit `g` sweep, then the conservative
/// Godunov update of `p` with junction-adjusted fluxes at coupled ends.
pub fn full_step(
    cells: &[f64],
    sf: &SplitFlux,
    lambda: f64,
    bd: &StepBoundary,
) -> Result<(Vec<f64>, StepFluxes)> {
    check_cfl_splitting(sf, lambda)?;
    check_cells(sf.u_max(), cells)?;
    let n = cells.len();

    let g_override = match bd.left {
        Coupling::Fluxes { g_flux, .. } => Some(g_flux),
        Coupling::Ghost(_) => None,
    };
    let mut u_half = vec![0.0; n];
    let mut g_iface = vec![0.0; n + 1];
    sweep(
        cells,
        sf,
        lambda,
        bd.g_right_seed,
        g_override,
        &mut u_half,
        &mut g_iface,
    );

    // Interface fluxes of p; index k is the left interface of cell k.
    let mut p_flux = vec![0.0; n + 1];
    p_flux[0] = match bd.left {
        Coupling::Ghost(r) => {
            let r = sf.base().check_density(r)?;
            sf.p_demand(r).min(sf.p_supply(u_half[0]))
        }
        Coupling::Fluxes { p_flux, .. } => p_flux,
    };
    for k in 1..n {
        p_flux[k] = sf.p_demand(u_half[k - 1]).min(sf.p_supply(u_half[k]));
    }
    p_flux[n] = match bd.right {
        Coupling::Ghost(s) => {
            let s = sf.base().check_density(s)?;
            sf.p_demand(u_half[n - 1]).min(sf.p_supply(s))
        }
        Coupling::Fluxes { p_flux, .. } => p_flux,
    };

    let mut out = vec![0.0; n];
    for j in 0..n {
        let u = u_half[j] - lambda * (p_flux[j + 1] - p_flux[j]);
        out[j] = clamp_updated(u, sf.u_max())?;
    }
    let fluxes = StepFluxes {
        left: p_flux[0] + g_iface[0],
        right: p_flux[n] + g_iface[n],
    };
    Ok((out, fluxes))
}

/// One step of the classical Godunov scheme on the regularized flux.
pub fn step_regularized(
    cells: &[f64],
    rf: &RegularizedFlux,
    lambda: f64,
    bd: &StepBoundary,
) -> Result<(Vec<f64>, StepFluxes)> {
    if lambda > rf.epsilon() + CFL_SLACK {
        return Err(Error::Cfl {
            lambda,
            admissible: rf.epsilon(),
        });
    }
    let top = rf.max_abs_slope();
    if lambda * top > 1.0 + CFL_SLACK {
        return Err(Error::Cfl {
            lambda,
            admissible: 1.0 / top,
        });
    }
    check_cells(rf.u_max(), cells)?;
    let n = cells.len();

    let mut flux = vec![0.0; n + 1];
    flux[0] = match bd.left {
        Coupling::Ghost(r) => {
            let r = rf.base().check_density(r)?;
            rf.demand(r).min(rf.supply(cells[0]))
        }
        Coupling::Fluxes { p_flux, .. } => p_flux,
    };
    for k in 1..n {
        flux[k] = rf.demand(cells[k - 1]).min(rf.supply(cells[k]));
    }
    flux[n] = match bd.right {
        Coupling::Ghost(s) => {
            let s = rf.base().check_density(s)?;
            rf.demand(cells[n - 1]).min(rf.supply(s))
        }
        Coupling::Fluxes { p_flux, .. } => p_flux,
    };

    let mut out = vec![0.0; n];
    for j in 0..n {
        let u = cells[j] - lambda * (flux[j + 1] - flux[j]);
        out[j] = clamp_updated(u, rf.u_max())?;
    }
    Ok((
        out,
        StepFluxes {
            left: flux[0],
            right: flux[n],
        },
    ))
}

fn clamp_updated(u: f64, upper: f64) -> Result<f64> {
    if u < -DOMAIN_HARD_TOL || u > upper + DOMAIN_HARD_TOL {
        return Err(Error::Domain { value: u, upper });
    }
    Ok(u.clamp(0.0, upper))
}
