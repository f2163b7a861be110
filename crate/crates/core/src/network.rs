//! Scenario assembly on a directed graph and the coupled time loop.
//!
//! Per step: every junction is evaluated from the current boundary-adjacent
//! cell values, the resulting fluxes and `g` seeds are distributed to the
//! attached road ends, and all roads advance one step. Roads are
//! independent within a step; the junction evaluation is the only
//! synchronization point.

use crate::error::{Error, Result};
use crate::exact::{exact_network_solution, ExactNetworkSolution};
use crate::flux::{DiscFlux, RegularizedFlux, SplitFlux, TrafficAhead};
use crate::junction::{self, JunctionSpec, JunctionTrace, Port};
use crate::scheme::{
    full_step, right_boundary_g, step_regularized, BoundaryKind, Coupling, StepBoundary,
    StepFluxes, Trace,
};

/// Initial density profile of one road.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    Constant(f64),
    /// `(x_from, value)` segments in absolute coordinates; the first entry
    /// covers everything to its left.
    Piecewise(Vec<(f64, f64)>),
}

impl InitialData {
    pub fn sample(&self, x: f64) -> f64 {
        match self {
            InitialData::Constant(u) => *u,
            InitialData::Piecewise(segments) => {
                let idx = segments.partition_point(|&(from, _)| from <= x);
                segments[idx.saturating_sub(1)].1
            }
        }
    }
}

/// One road of the network.
#[derive(Debug, Clone)]
pub struct Road {
    pub id: String,
    /// Left endpoint in absolute coordinates.
    pub origin: f64,
    pub length: f64,
    pub initial: InitialData,
    pub left_boundary: BoundaryKind,
    pub right_boundary: BoundaryKind,
}

impl Road {
    /// Road with external ends carrying constant far-field traces equal to
    /// the constant initial datum.
    pub fn uniform(id: &str, origin: f64, length: f64, u0: f64) -> Self {
        Self {
            id: id.to_string(),
            origin,
            length,
            initial: InitialData::Constant(u0),
            left_boundary: BoundaryKind::Inflow {
                trace: Trace::constant(u0),
            },
            right_boundary: BoundaryKind::Outflow {
                trace: Trace::constant(u0),
                ahead: TrafficAhead::FreeFlowing,
            },
        }
    }
}

/// A junction with the indices of its attached roads.
#[derive(Debug, Clone)]
pub struct JunctionDef {
    pub spec: JunctionSpec,
    /// Roads entering the junction (coupled at their right end).
    pub inflow: Vec<usize>,
    /// Roads leaving the junction (coupled at their left end).
    pub outflow: Vec<usize>,
    /// Flux selection per outgoing port when the adjacent density is
    /// exactly critical.
    pub ahead: Vec<TrafficAhead>,
}

impl JunctionDef {
    pub fn new(spec: JunctionSpec, inflow: Vec<usize>, outflow: Vec<usize>) -> Self {
        let ahead = vec![TrafficAhead::FreeFlowing; outflow.len()];
        Self {
            spec,
            inflow,
            outflow,
            ahead,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoadNetwork {
    pub flux: DiscFlux,
    pub roads: Vec<Road>,
    pub junctions: Vec<JunctionDef>,
}

impl RoadNetwork {
    /// Wire junction couplings into the road boundaries and validate the
    /// topology. Roads are passed with their external boundaries set; ends
    /// referenced by a junction are overwritten.
    pub fn assemble(
        flux: DiscFlux,
        mut roads: Vec<Road>,
        junctions: Vec<JunctionDef>,
    ) -> Result<Self> {
        let n = roads.len();
        let mut right_taken = vec![false; n];
        let mut left_taken = vec![false; n];
        for (jid, j) in junctions.iter().enumerate() {
            if j.inflow.len() != j.spec.n_in() || j.outflow.len() != j.spec.n_out() {
                return Err(Error::Network(format!(
                    "junction {jid} expects {}-to-{}, got {} incoming and {} outgoing roads",
                    j.spec.n_in(),
                    j.spec.n_out(),
                    j.inflow.len(),
                    j.outflow.len()
                )));
            }
            if j.ahead.len() != j.outflow.len() {
                return Err(Error::Network(format!(
                    "junction {jid} needs one ahead flag per outgoing road"
                )));
            }
            for (port, &r) in j.inflow.iter().enumerate() {
                let road = roads.get_mut(r).ok_or_else(|| {
                    Error::Network(format!("junction {jid} references missing road {r}"))
                })?;
                if std::mem::replace(&mut right_taken[r], true) {
                    return Err(Error::Network(format!(
                        "road {} discharges into more than one junction",
                        road.id
                    )));
                }
                road.right_boundary = BoundaryKind::JunctionCoupled {
                    junction: jid,
                    port,
                };
            }
            for (port, &r) in j.outflow.iter().enumerate() {
                let road = roads.get_mut(r).ok_or_else(|| {
                    Error::Network(format!("junction {jid} references missing road {r}"))
                })?;
                if std::mem::replace(&mut left_taken[r], true) {
                    return Err(Error::Network(format!(
                        "road {} originates from more than one junction",
                        road.id
                    )));
                }
                road.left_boundary = BoundaryKind::JunctionCoupled {
                    junction: jid,
                    port,
                };
            }
        }
        for road in &roads {
            if road.length <= 0.0 {
                return Err(Error::Network(format!(
                    "road {} has nonpositive length",
                    road.id
                )));
            }
            if matches!(road.left_boundary, BoundaryKind::Outflow { .. }) {
                return Err(Error::Network(format!(
                    "road {}: left end cannot be an outflow boundary",
                    road.id
                )));
            }
            if matches!(road.right_boundary, BoundaryKind::Inflow { .. }) {
                return Err(Error::Network(format!(
                    "road {}: right end cannot be an inflow boundary",
                    road.id
                )));
            }
        }
        let mut ids: Vec<&str> = roads.iter().map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != roads.len() {
            return Err(Error::Network("duplicate road ids".into()));
        }
        Ok(Self {
            flux,
            roads,
            junctions,
        })
    }

    /// For a single-junction network: each road's port and the absolute
    /// coordinate of its junction end.
    pub fn single_junction_ports(&self) -> Result<Vec<(Port, f64)>> {
        if self.junctions.len() != 1 {
            return Err(Error::Network(format!(
                "expected exactly one junction, got {}",
                self.junctions.len()
            )));
        }
        let j = &self.junctions[0];
        let mut ports = vec![None; self.roads.len()];
        for (i, &r) in j.inflow.iter().enumerate() {
            ports[r] = Some((
                Port::Incoming(i),
                self.roads[r].origin + self.roads[r].length,
            ));
        }
        for (jj, &r) in j.outflow.iter().enumerate() {
            ports[r] = Some((Port::Outgoing(jj), self.roads[r].origin));
        }
        ports
            .into_iter()
            .enumerate()
            .map(|(r, p)| {
                p.ok_or_else(|| {
                    Error::Network(format!(
                        "road {} not attached to the junction",
                        self.roads[r].id
                    ))
                })
            })
            .collect()
    }
}

/// Which scheme advances the roads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeKind {
    Splitting,
    Regularized {
        epsilon: f64,
    },
    /// Sample the exact single-junction solution onto the grid.
    ExactReference,
}

#[derive(Debug, Clone)]
pub struct SimulationConfig {
    pub dx: f64,
    pub lambda: f64,
    pub t_end: f64,
    pub scheme: SchemeKind,
    pub output_times: Vec<f64>,
    /// Stop after the last full step not exceeding `t_end` instead of
    /// truncating the final step to land on it exactly.
    pub paper_time_stop: bool,
    /// Use the published adjustment listings verbatim (comparison runs).
    pub strict_paper_algorithms: bool,
    /// Keep every per-step junction trace in the trajectory.
    pub record_traces: bool,
}

impl SimulationConfig {
    pub fn new(dx: f64, lambda: f64, t_end: f64, scheme: SchemeKind) -> Self {
        Self {
            dx,
            lambda,
            t_end,
            scheme,
            output_times: Vec::new(),
            paper_time_stop: false,
            strict_paper_algorithms: false,
            record_traces: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dx.is_nan() || self.dx <= 0.0 {
            return Err(Error::Network(format!(
                "cell width must be positive, got {}",
                self.dx
            )));
        }
        if self.lambda.is_nan() || self.lambda <= 0.0 {
            return Err(Error::Network(format!(
                "grid constant must be positive, got {}",
                self.lambda
            )));
        }
        if self.t_end.is_nan() || self.t_end <= 0.0 {
            return Err(Error::Network(format!(
                "horizon must be positive, got {}",
                self.t_end
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RoadGrid {
    pub xs: Vec<f64>,
    pub dx: f64,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub roads: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct StepTraces {
    pub step: usize,
    pub time: f64,
    pub traces: Vec<JunctionTrace>,
}

/// Time-integrated mass bookkeeping of a run.
#[derive(Debug, Clone, Copy, Default)]
pub struct MassLedger {
    pub initial_mass: f64,
    pub final_mass: f64,
    /// Net external boundary influx, integrated over the run.
    pub boundary_net_influx: f64,
    /// Largest per-step imbalance between composite fluxes entering and
    /// leaving any junction.
    pub junction_residual_max: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grids: Vec<RoadGrid>,
    pub snapshots: Vec<Snapshot>,
    pub traces: Vec<StepTraces>,
    pub final_time: f64,
    pub ledger: MassLedger,
    /// Largest deviation of an external-boundary-adjacent cell from its
    /// far-field trace; stays at rounding level while no wave has reached
    /// an external end.
    pub boundary_disturbance: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &Snapshot {
        self.snapshots
            .last()
            .expect("trajectory holds at least the initial snapshot")
    }

    pub fn snapshot_at(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots
            .iter()
            .min_by(|a, b| {
                (a.time - t)
                    .abs()
                    .partial_cmp(&(b.time - t).abs())
                    .expect("finite times")
            })
            .filter(|s| (s.time - t).abs() <= 1e-9)
    }
}

/// Total mass of one snapshot.
pub fn total_mass(grids: &[RoadGrid], roads: &[Vec<f64>]) -> f64 {
    grids
        .iter()
        .zip(roads)
        .map(|(g, cells)| g.dx * cells.iter().sum::<f64>())
        .sum()
}

fn build_grids(net: &RoadNetwork, dx: f64) -> Result<Vec<RoadGrid>> {
    net.roads
        .iter()
        .map(|road| {
            let intervals = (road.length / dx).round();
            if intervals < 2.0 || !intervals.is_finite() {
                return Err(Error::Network(format!(
                    "road {} too short for cell width {dx}",
                    road.id
                )));
            }
            if (road.length / dx - intervals).abs() > 1e-9 * intervals {
                return Err(Error::Network(format!(
                    "cell width {dx} does not divide road {} of length {}",
                    road.id, road.length
                )));
            }
            let intervals = intervals as usize;
            let dx_road = road.length / intervals as f64;
            let xs = (1..intervals)
                .map(|j| road.origin + j as f64 * dx_road)
                .collect();
            Ok(RoadGrid { xs, dx: dx_road })
        })
        .collect()
}

pub fn simulate(net: &RoadNetwork, cfg: &SimulationConfig) -> Result<Trajectory> {
    cfg.validate()?;
    match cfg.scheme {
        SchemeKind::ExactReference => simulate_exact_reference(net, cfg),
        _ => simulate_finite_volume(net, cfg),
    }
}

/// Exact junction solution for a single-junction network with constant
/// initial data, evaluated by [`simulate`] when asked for the reference.
pub fn exact_solution_of(net: &RoadNetwork) -> Result<(ExactNetworkSolution, Vec<(Port, f64)>)> {
    let ports = net.single_junction_ports()?;
    let j = &net.junctions[0];
    let u_of = |r: usize| -> Result<f64> {
        match net.roads[r].initial {
            InitialData::Constant(u) => Ok(u),
            _ => Err(Error::Network(format!(
                "exact reference needs constant initial data on road {}",
                net.roads[r].id
            ))),
        }
    };
    let u_in0 = j
        .inflow
        .iter()
        .map(|&r| u_of(r))
        .collect::<Result<Vec<_>>>()?;
    let u_out0 = j
        .outflow
        .iter()
        .map(|&r| u_of(r))
        .collect::<Result<Vec<_>>>()?;
    let sol = exact_network_solution(&net.flux, &j.spec, &u_in0, &u_out0, &j.ahead)?;
    Ok((sol, ports))
}

fn simulate_exact_reference(net: &RoadNetwork, cfg: &SimulationConfig) -> Result<Trajectory> {
    let grids = build_grids(net, cfg.dx)?;
    let (sol, ports) = exact_solution_of(net)?;
    for (r, road) in net.roads.iter().enumerate() {
        let (port, _) = ports[r];
        if !sol.is_valid_at(port, road.length, cfg.t_end) {
            return Err(Error::Network(format!(
                "exact reference invalid: a wave leaves road {} before t={}",
                road.id, cfg.t_end
            )));
        }
    }
    let mut times: Vec<f64> = vec![0.0];
    times.extend(cfg.output_times.iter().copied());
    times.push(cfg.t_end);
    times.retain(|t| t.is_finite());
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    let snapshots = times
        .iter()
        .map(|&t| Snapshot {
            time: t,
            roads: grids
                .iter()
                .enumerate()
                .map(|(r, g)| {
                    let (port, jx) = ports[r];
                    g.xs.iter()
                        .map(|&x| sol.evaluate(port, x - jx, t))
                        .collect()
                })
                .collect(),
        })
        .collect::<Vec<_>>();

    let mass0 = total_mass(&grids, &snapshots[0].roads);
    let mass1 = total_mass(&grids, &snapshots.last().unwrap().roads);
    Ok(Trajectory {
        grids,
        snapshots,
        traces: Vec::new(),
        final_time: cfg.t_end,
        ledger: MassLedger {
            initial_mass: mass0,
            final_mass: mass1,
            boundary_net_influx: f64::NAN,
            junction_residual_max: 0.0,
        },
        boundary_disturbance: 0.0,
    })
}

struct SchemeOps {
    splitting: Option<SplitFlux>,
    regularized: Option<RegularizedFlux>,
}

fn simulate_finite_volume(net: &RoadNetwork, cfg: &SimulationConfig) -> Result<Trajectory> {
    let ops = match cfg.scheme {
        SchemeKind::Splitting => SchemeOps {
            splitting: Some(net.flux.split()),
            regularized: None,
        },
        SchemeKind::Regularized { epsilon } => SchemeOps {
            splitting: None,
            regularized: Some(net.flux.regularize(epsilon)?),
        },
        SchemeKind::ExactReference => unreachable!("dispatched earlier"),
    };

    let grids = build_grids(net, cfg.dx)?;
    let dx_min = grids.iter().map(|g| g.dx).fold(f64::INFINITY, f64::min);
    let dt = cfg.lambda * dx_min;
    let lambdas: Vec<f64> = grids.iter().map(|g| dt / g.dx).collect();

    let mut cells: Vec<Vec<f64>> = Vec::with_capacity(net.roads.len());
    for (road, grid) in net.roads.iter().zip(&grids) {
        let vals: Vec<f64> = grid.xs.iter().map(|&x| road.initial.sample(x)).collect();
        for &u in &vals {
            net.flux.check_density(u)?;
        }
        cells.push(vals);
    }

    let n_full = ((cfg.t_end + 1e-12) / dt).floor() as usize;
    let remainder = (cfg.t_end - n_full as f64 * dt).max(0.0);
    let truncated = !cfg.paper_time_stop && remainder > 1e-12 * cfg.t_end.max(1.0);

    let mut snapshots = vec![Snapshot {
        time: 0.0,
        roads: cells.clone(),
    }];
    let mut out_times: Vec<f64> = cfg.output_times.clone();
    out_times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut next_out = 0usize;
    // Time zero is always recorded as the initial snapshot.
    while next_out < out_times.len() && out_times[next_out] <= 1e-12 {
        next_out += 1;
    }

    let mut ledger = MassLedger {
        initial_mass: total_mass(&grids, &cells),
        ..Default::default()
    };
    let mut traces_log = Vec::new();
    let mut disturbance: f64 = 0.0;
    let mut step_fluxes: Vec<StepFluxes> = vec![
        StepFluxes {
            left: 0.0,
            right: 0.0
        };
        net.roads.len()
    ];

    let total_steps = n_full + usize::from(truncated);
    let mut t = 0.0;
    for step in 0..total_steps {
        let last = truncated && step == n_full;
        let dt_step = if last { remainder } else { dt };
        let scale = dt_step / dt;
        let t_next = if last {
            cfg.t_end
        } else {
            (step + 1) as f64 * dt
        };

        // Junction evaluation from the current boundary-adjacent cells.
        let traces = evaluate_junctions(net, &ops, &cells, cfg.strict_paper_algorithms)?;

        for (r, road) in net.roads.iter().enumerate() {
            let lam = lambdas[r] * scale;
            let bd = assemble_boundary(net, &ops, road, &traces, t)?;
            let (next, fluxes) = match (&ops.splitting, &ops.regularized) {
                (Some(sf), None) => full_step(&cells[r], sf, lam, &bd)?,
                (None, Some(rf)) => step_regularized(&cells[r], rf, lam, &bd)?,
                _ => unreachable!(),
            };
            cells[r] = next;
            step_fluxes[r] = fluxes;
        }

        // Ledger: external boundary fluxes and junction balance.
        for (r, road) in net.roads.iter().enumerate() {
            if !matches!(road.left_boundary, BoundaryKind::JunctionCoupled { .. }) {
                ledger.boundary_net_influx += dt_step * step_fluxes[r].left;
            }
            if !matches!(road.right_boundary, BoundaryKind::JunctionCoupled { .. }) {
                ledger.boundary_net_influx -= dt_step * step_fluxes[r].right;
            }
        }
        for j in &net.junctions {
            let mut into_junction = 0.0;
            for &r in &j.inflow {
                into_junction += step_fluxes[r].right;
            }
            let mut out_of_junction = 0.0;
            for &r in &j.outflow {
                out_of_junction += step_fluxes[r].left;
            }
            ledger.junction_residual_max = ledger
                .junction_residual_max
                .max((into_junction - out_of_junction).abs());
        }

        // Far-field disturbance tracking.
        for (r, road) in net.roads.iter().enumerate() {
            if let BoundaryKind::Inflow { trace } = &road.left_boundary {
                disturbance = disturbance.max((cells[r][0] - trace.value_at(t)).abs());
            }
            if let BoundaryKind::Outflow { trace, .. } = &road.right_boundary {
                let last_cell = *cells[r].last().unwrap();
                disturbance = disturbance.max((last_cell - trace.value_at(t)).abs());
            }
        }

        if cfg.record_traces {
            traces_log.push(StepTraces {
                step,
                time: t,
                traces,
            });
        }

        t = t_next;
        while next_out < out_times.len() && t >= out_times[next_out] - 1e-12 {
            // Label the snapshot with the nominal time it was taken for.
            let label = if (t - out_times[next_out]).abs() <= 1e-9 {
                out_times[next_out]
            } else {
                t
            };
            snapshots.push(Snapshot {
                time: label,
                roads: cells.clone(),
            });
            next_out += 1;
        }
    }

    if snapshots
        .last()
        .map(|s| (s.time - t).abs() > 1e-12)
        .unwrap_or(true)
    {
        snapshots.push(Snapshot {
            time: t,
            roads: cells.clone(),
        });
    }
    ledger.final_mass = total_mass(&grids, &cells);

    Ok(Trajectory {
        grids,
        snapshots,
        traces: traces_log,
        final_time: t,
        ledger,
        boundary_disturbance: disturbance,
    })
}

fn evaluate_junctions(
    net: &RoadNetwork,
    ops: &SchemeOps,
    cells: &[Vec<f64>],
    strict: bool,
) -> Result<Vec<JunctionTrace>> {
    net.junctions
        .iter()
        .map(|j| {
            let u_in0: Vec<f64> = j
                .inflow
                .iter()
                .map(|&r| *cells[r].last().unwrap())
                .collect();
            let u_out0: Vec<f64> = j.outflow.iter().map(|&r| cells[r][0]).collect();
            match (&ops.splitting, &ops.regularized) {
                (Some(_), None) => {
                    junction::resolve(&net.flux, &j.spec, &u_in0, &u_out0, &j.ahead, strict)
                }
                (None, Some(rf)) => {
                    let d: Vec<f64> = u_in0.iter().map(|&u| rf.demand(u)).collect();
                    let s: Vec<f64> = u_out0.iter().map(|&u| rf.supply(u)).collect();
                    let (f_in, f_out) = junction::fluxes_from_demand_supply(&j.spec, &d, &s);
                    Ok(JunctionTrace {
                        f_adj_in: f_in.clone(),
                        f_adj_out: f_out.clone(),
                        g_in: vec![0.0; f_in.len()],
                        g_out: vec![0.0; f_out.len()],
                        u_in: Vec::new(),
                        u_out: Vec::new(),
                        f_in,
                        f_out,
                    })
                }
                _ => unreachable!(),
            }
        })
        .collect()
}

fn assemble_boundary(
    net: &RoadNetwork,
    ops: &SchemeOps,
    road: &Road,
    traces: &[JunctionTrace],
    t: f64,
) -> Result<StepBoundary> {
    let left = match &road.left_boundary {
        BoundaryKind::Inflow { trace } => Coupling::Ghost(trace.value_at(t)),
        BoundaryKind::JunctionCoupled { junction, port } => {
            let tr = &traces[*junction];
            Coupling::Fluxes {
                p_flux: tr.f_adj_out[*port],
                g_flux: tr.g_out[*port],
            }
        }
        BoundaryKind::Outflow { .. } => {
            return Err(Error::Network(format!(
                "road {}: outflow on the left end",
                road.id
            )))
        }
    };
    let (right, g_seed) = match &road.right_boundary {
        BoundaryKind::Outflow { trace, ahead } => {
            let s = trace.value_at(t);
            let seed = if ops.splitting.is_some() {
                right_boundary_g(s, *ahead, &net.flux)
            } else {
                0.0
            };
            (Coupling::Ghost(s), seed)
        }
        BoundaryKind::JunctionCoupled { junction, port } => {
            let tr = &traces[*junction];
            (
                Coupling::Fluxes {
                    p_flux: tr.f_adj_in[*port],
                    g_flux: tr.g_in[*port],
                },
                tr.g_in[*port],
            )
        }
        BoundaryKind::Inflow { .. } => {
            return Err(Error::Network(format!(
                "road {}: inflow on the right end",
                road.id
            )))
        }
    };
    Ok(StepBoundary {
        left,
        right,
        g_right_seed: g_seed,
    })
}

/// Ready-made single-junction scenarios used by the convergence studies.
pub mod scenarios {
    use super::*;

    /// A scenario: one junction, constant data per road, and the time the
    /// error is evaluated at.
    #[derive(Debug, Clone)]
    pub struct Scenario {
        pub name: &'static str,
        pub network: RoadNetwork,
        pub eval_time: f64,
    }

    impl Scenario {
        pub fn exact(&self) -> Result<(ExactNetworkSolution, Vec<(Port, f64)>)> {
            exact_solution_of(&self.network)
        }
    }

    /// The piecewise-linear diagram all bundled scenarios share:
    /// `f(u) = u` up to `u* = 0.5`, then `f(u) = 0.5(1-u)`.
    pub fn unit_drop_flux() -> DiscFlux {
        DiscFlux::new(1.0, 0.0, -0.5, 0.5, 0.5, 1.0).expect("valid reference diagram")
    }

    fn single_junction(
        name: &'static str,
        spec: JunctionSpec,
        u_in0: &[f64],
        u_out0: &[f64],
        eval_time: f64,
    ) -> Scenario {
        let mut roads = Vec::new();
        for (i, &u) in u_in0.iter().enumerate() {
            roads.push(Road::uniform(&format!("in{}", i + 1), -2.0, 2.0, u));
        }
        for (j, &u) in u_out0.iter().enumerate() {
            roads.push(Road::uniform(&format!("out{}", j + 1), 0.0, 2.0, u));
        }
        let inflow: Vec<usize> = (0..u_in0.len()).collect();
        let outflow: Vec<usize> = (u_in0.len()..u_in0.len() + u_out0.len()).collect();
        let junctions = vec![JunctionDef::new(spec, inflow, outflow)];
        let network = RoadNetwork::assemble(unit_drop_flux(), roads, junctions)
            .expect("bundled scenario is well-formed");
        Scenario {
            name,
            network,
            eval_time,
        }
    }

    /// Diverge, first setting: congestion on both outgoing roads backs up
    /// through the junction.
    pub fn scenario_1to2_ex1() -> Scenario {
        single_junction(
            "1to2_ex1",
            JunctionSpec::one_to_two(0.75, 0.25).unwrap(),
            &[0.4],
            &[0.9, 0.7],
            0.5,
        )
    }

    /// Diverge, second setting: the inflow lands in the jump gap and the
    /// incoming road settles at the critical density.
    pub fn scenario_1to2_ex2() -> Scenario {
        single_junction(
            "1to2_ex2",
            JunctionSpec::one_to_two(0.5, 0.5).unwrap(),
            &[0.4],
            &[0.7, 0.2],
            0.5,
        )
    }

    /// Merge, first setting: demand limited, no adjustments anywhere.
    pub fn scenario_2to1_ex1() -> Scenario {
        single_junction(
            "2to1_ex1",
            JunctionSpec::two_to_one(0.75).unwrap(),
            &[0.2, 0.25],
            &[0.3],
            0.5,
        )
    }

    /// Merge, second setting: supply limited with one inflow in the jump
    /// gap; evaluated at t = 0.5 because of the fast backward wave.
    pub fn scenario_2to1_ex2() -> Scenario {
        single_junction(
            "2to1_ex2",
            JunctionSpec::two_to_one(0.8).unwrap(),
            &[0.6, 0.7],
            &[0.4],
            0.5,
        )
    }

    pub fn all() -> Vec<Scenario> {
        vec![
            scenario_1to2_ex1(),
            scenario_1to2_ex2(),
            scenario_2to1_ex1(),
            scenario_2to1_ex2(),
        ]
    }
}
