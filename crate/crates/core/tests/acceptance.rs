//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 1 and 2 reproduce the published convergence tables cell by cell
//! (15% relative) and rate by rate (absolute 0.08). The protocol pinned by
//! calibration: every scenario evaluated at t = 0.5, legacy stop rule (last
//! full step not past the horizon), reference evaluated at the nominal
//! horizon. Cells whose published values are internally inconsistent fail
//! here and are reported individually rather than being patched over.

mod common;

use std::time::Instant;

use common::{godunov_step_tent, hull_fan_limit, unit_drop_flux};
use dropflow::analysis::{run_table, SchemeColumn, TableFlags};
use dropflow::exact::exact_network_solution;
use dropflow::flux::TrafficAhead::{self, Congested, FreeFlowing};
use dropflow::junction::{junction_fluxes, JunctionSpec, Port};
use dropflow::network::scenarios::{self, Scenario};
use dropflow::network::{
    simulate, total_mass, InitialData, JunctionDef, Road, RoadNetwork, SchemeKind, SimulationConfig,
};
use dropflow::riemann::solve_riemann;
use dropflow::scheme::{half_step_g, right_boundary_g, BoundaryKind, Trace};
use dropflow::DiscFlux;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DXS: [f64; 4] = [0.04, 0.02, 0.01, 0.005];
const CELL_RTOL: f64 = 0.15;
const CR_ATOL: f64 = 0.08;

fn table_columns() -> Vec<SchemeColumn> {
    vec![
        SchemeColumn::splitting(0.75),
        SchemeColumn::splitting(0.1),
        SchemeColumn::regularized(0.1),
        SchemeColumn::regularized(0.01),
    ]
}

struct ExpectedTable {
    scenario: Scenario,
    /// One row per scheme column: the published errors at [`DXS`].
    cells: [[f64; 4]; 4],
    rates: [f64; 4],
    /// `(column, dx index)` pairs excluded from the cell check.
    excluded: &'static [(usize, usize)],
}

fn check_tables(label: &str, tables: Vec<ExpectedTable>) -> Vec<String> {
    let mut failures = Vec::new();
    let columns = table_columns();
    let flags = TableFlags {
        paper_time_stop: true,
        strict_paper_algorithms: false,
    };
    for table in &tables {
        let computed = run_table(&table.scenario, &columns, &DXS, &flags).unwrap();
        for (c, col) in computed.iter().enumerate() {
            for (k, cell) in col.cells.iter().enumerate() {
                if table.excluded.contains(&(c, k)) {
                    continue;
                }
                let expect = table.cells[c][k];
                let rel = (cell.error - expect) / expect;
                if rel.abs() > CELL_RTOL {
                    failures.push(format!(
                        "{} {} dx={}: {:.3}e-3 vs published {:.3}e-3 ({:+.1}%)",
                        table.scenario.name,
                        col.label,
                        cell.dx,
                        cell.error * 1e3,
                        expect * 1e3,
                        rel * 100.0
                    ));
                }
            }
            let expect_cr = table.rates[c];
            if (col.rate - expect_cr).abs() > CR_ATOL {
                failures.push(format!(
                    "{} {} rate {:.5} vs published {:.5}",
                    table.scenario.name, col.label, col.rate, expect_cr
                ));
            }
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "acceptance {label}: {verdict} ({} deviations)",
        failures.len()
    );
    for f in &failures {
        println!("    {f}");
    }
    failures
}

#[test]
fn acceptance_1_table1_diverge_reproduction() {
    let start = Instant::now();
    let tables = vec![
        ExpectedTable {
            scenario: scenarios::scenario_1to2_ex1(),
            cells: [
                [33.44e-3, 24.17e-3, 14.16e-3, 8.97e-3],
                [46.77e-3, 29.05e-3, 20.12e-3, 12.49e-3],
                [82.26e-3, 65.59e-3, 60.86e-3, 58.37e-3],
                [51.82e-3, 30.69e-3, 24.45e-3, 20.44e-3],
            ],
            rates: [0.64695, 0.62453, 0.1593, 0.4353],
            excluded: &[],
        },
        ExpectedTable {
            scenario: scenarios::scenario_1to2_ex2(),
            cells: [
                [4.58e-3, 2.97e-3, 2.03e-3, 1.24e-3],
                [7.41e-3, 4.24e-3, 2.89e-3, 1.99e-3],
                [44.70e-3, 43.47e-3, 42.50e-3, 41.80e-3],
                [14.57e-3, 11.28e-3, 10.06e-3, 9.21e-3],
            ],
            rates: [0.61911, 0.62327, 0.0322, 0.2150],
            excluded: &[],
        },
    ];
    let failures = check_tables("1 [table 1, 1-to-2 scenarios]", tables);
    let secs = start.elapsed().as_secs_f64();
    println!("    (runtime {secs:.1} s)");
    assert!(
        secs < 60.0,
        "table reproduction exceeded the runtime budget"
    );
    assert!(
        failures.is_empty(),
        "table 1 deviations:\n{}",
        failures.join("\n")
    );
}

#[test]
fn acceptance_2_table2_merge_reproduction() {
    let start = Instant::now();
    let tables = vec![
        ExpectedTable {
            scenario: scenarios::scenario_2to1_ex1(),
            cells: [
                [9.25e-3, 5.90e-3, 2.98e-3, 8.97e-3],
                [16.22e-3, 11.63e-3, 8.13e-3, 5.71e-3],
                [16.22e-3, 11.63e-3, 8.13e-3, 5.71e-3],
                [17.01e-3, 12.19e-3, 8.52e-3, 5.99e-3],
            ],
            rates: [0.53838, 0.50353, 0.50353, 0.50347],
            // The published value at (lambda=0.75, dx=0.005) breaks monotone
            // decay and duplicates a table-1 cell; spec excludes it.
            excluded: &[(0, 3)],
        },
        ExpectedTable {
            scenario: scenarios::scenario_2to1_ex2(),
            cells: [
                [14.12e-3, 9.65e-3, 6.41e-3, 4.51e-3],
                [20.10e-3, 13.86e-3, 9.57e-3, 6.69e-3],
                [85.69e-3, 79.98e-3, 75.96e-3, 73.22e-3],
                [27.55e-3, 21.65e-3, 17.49e-3, 14.65e-3],
            ],
            rates: [0.55295, 0.52959, 0.07551, 0.30432],
            excluded: &[],
        },
    ];
    let failures = check_tables("2 [table 2, 2-to-1 scenarios]", tables);
    let secs = start.elapsed().as_secs_f64();
    println!("    (runtime {secs:.1} s)");
    assert!(
        secs < 60.0,
        "table reproduction exceeded the runtime budget"
    );
    assert!(
        failures.is_empty(),
        "table 2 deviations:\n{}",
        failures.join("\n")
    );
}

struct GoldenRoad {
    port: Port,
    states: &'static [f64],
    speeds: &'static [f64],
}

fn check_golden(scenario: &Scenario, roads: &[GoldenRoad]) -> usize {
    let (sol, _) = scenario.exact().unwrap();
    let mut checked = 0;
    for g in roads {
        let road = sol.road(g.port);
        assert_eq!(
            road.states().len(),
            g.states.len(),
            "{} {:?}",
            scenario.name,
            g.port
        );
        for (a, b) in road.states().iter().zip(g.states) {
            assert!(
                (a - b).abs() <= 1e-12,
                "{} {:?}: state {a} vs {b}",
                scenario.name,
                g.port
            );
        }
        for (a, b) in road.speeds().iter().zip(g.speeds) {
            assert!(
                (a - b).abs() <= 1e-12,
                "{} {:?}: speed {a} vs {b}",
                scenario.name,
                g.port
            );
        }
        // Sample the evaluator against an independently coded piecewise form.
        let t = 0.45;
        let span = 2.0;
        let offset = match g.port {
            Port::Incoming(_) => -span,
            Port::Outgoing(_) => 0.0,
        };
        for k in 0..20 {
            let x = offset + (k as f64 + 0.381) * span / 20.0;
            let xi = x / t;
            let mut expect = g.states[0];
            for (i, &s) in g.speeds.iter().enumerate() {
                if xi >= s {
                    expect = g.states[i + 1];
                }
            }
            let got = sol.evaluate(g.port, x, t);
            assert!(
                (got - expect).abs() <= 1e-12,
                "{} {:?} at x={x}: {got} vs {expect}",
                scenario.name,
                g.port
            );
            checked += 1;
        }
    }
    checked
}

#[test]
fn acceptance_3_exact_solution_golden() {
    use Port::{Incoming, Outgoing};
    let mut points = 0;
    points += check_golden(
        &scenarios::scenario_1to2_ex1(),
        &[
            GoldenRoad {
                port: Incoming(0),
                states: &[0.4, 0.5, 13.0 / 15.0],
                speeds: &[-1.5, -0.5],
            },
            GoldenRoad {
                port: Outgoing(0),
                states: &[0.9],
                speeds: &[],
            },
            GoldenRoad {
                port: Outgoing(1),
                states: &[1.0 / 60.0, 0.7],
                speeds: &[8.0 / 41.0],
            },
        ],
    );
    points += check_golden(
        &scenarios::scenario_1to2_ex2(),
        &[
            GoldenRoad {
                port: Incoming(0),
                states: &[0.4, 0.5],
                speeds: &[-1.0],
            },
            GoldenRoad {
                port: Outgoing(0),
                states: &[0.7],
                speeds: &[],
            },
            GoldenRoad {
                port: Outgoing(1),
                states: &[0.15, 0.2],
                speeds: &[1.0],
            },
        ],
    );
    points += check_golden(
        &scenarios::scenario_2to1_ex1(),
        &[
            GoldenRoad {
                port: Incoming(0),
                states: &[0.2],
                speeds: &[],
            },
            GoldenRoad {
                port: Incoming(1),
                states: &[0.25],
                speeds: &[],
            },
            GoldenRoad {
                port: Outgoing(0),
                states: &[0.45, 0.3],
                speeds: &[1.0],
            },
        ],
    );
    points += check_golden(
        &scenarios::scenario_2to1_ex2(),
        &[
            GoldenRoad {
                port: Incoming(0),
                states: &[0.6, 0.5],
                speeds: &[-2.0],
            },
            GoldenRoad {
                port: Incoming(1),
                states: &[0.7, 0.8],
                speeds: &[-0.5],
            },
            GoldenRoad {
                port: Outgoing(0),
                states: &[0.5, 0.4],
                speeds: &[1.0],
            },
        ],
    );
    println!("acceptance 3 [exact-solution golden tests]: PASS ({points} samples to 1e-12)");
}

#[test]
fn acceptance_4_junction_flux_oracle() {
    let f = unit_drop_flux();
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let grid = 401usize;
    let mut checked = 0;

    let brute_single = |d: f64, supplies: &[f64], betas: &[f64]| -> f64 {
        let mut best = 0.0f64;
        for k in 0..grid {
            let z = d * k as f64 / (grid - 1) as f64;
            if supplies
                .iter()
                .zip(betas)
                .all(|(&s, &b)| b * z <= s + 1e-15)
            {
                best = best.max(z);
            }
        }
        best
    };

    for _ in 0..1000 {
        // 1-to-1.
        let (a, b) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0));
        let spec = JunctionSpec::one_to_one();
        let (f_in, f_out) = junction_fluxes(&f, &spec, &[a], &[b], &[FreeFlowing]).unwrap();
        let d = f.demand(a).unwrap();
        let s = f.supply(b, FreeFlowing).unwrap();
        let brute = brute_single(d, &[s], &[1.0]);
        assert!((f_in[0] - brute).abs() <= f64::max(1e-3, 1.001 * d / 400.0));
        assert!((f_in[0] - f_out[0]).abs() == 0.0);

        // 1-to-2.
        let beta1: f64 = rng.gen_range(0.05..=0.95);
        let spec = JunctionSpec::one_to_two(beta1, 1.0 - beta1).unwrap();
        let u_in = rng.gen_range(0.0..=1.0);
        let u_out = [rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)];
        let (f_in, f_out) = junction_fluxes(&f, &spec, &[u_in], &u_out, &[FreeFlowing; 2]).unwrap();
        let d = f.demand(u_in).unwrap();
        let s = [
            f.supply(u_out[0], FreeFlowing).unwrap(),
            f.supply(u_out[1], FreeFlowing).unwrap(),
        ];
        let brute = brute_single(d, &s, &[beta1, 1.0 - beta1]);
        assert!((f_in[0] - brute).abs() <= f64::max(1e-3, 1.001 * d / 400.0));
        assert!(
            (f_out[0] + f_out[1] - f_in[0]).abs() <= 1e-12,
            "conservation"
        );

        // 2-to-1: total maximization + conservation (the right-of-way split
        // itself is exercised in the junction oracle suite).
        let q: f64 = rng.gen_range(0.05..=0.95);
        let spec = JunctionSpec::two_to_one(q).unwrap();
        let u_in = [rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)];
        let u_out1 = rng.gen_range(0.0..=1.0);
        let (f_in, f_out) = junction_fluxes(&f, &spec, &u_in, &[u_out1], &[FreeFlowing]).unwrap();
        let d1 = f.demand(u_in[0]).unwrap();
        let d2 = f.demand(u_in[1]).unwrap();
        let s = f.supply(u_out1, FreeFlowing).unwrap();
        let expect_total = (d1 + d2).min(s);
        assert!((f_in[0] + f_in[1] - expect_total).abs() <= 1e-12);
        assert!(
            (f_in[0] + f_in[1] - f_out[0]).abs() <= 1e-12,
            "conservation"
        );
        checked += 3;
    }
    println!("acceptance 4 [junction flux oracle]: PASS ({checked} instances)");
}

#[test]
fn acceptance_5_wave_speed_signs() {
    let f = unit_drop_flux();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut count = 0;
    for kind in 0..3 {
        for _ in 0..1000 {
            let (spec, n_in, n_out) = match kind {
                0 => (JunctionSpec::one_to_one(), 1, 1),
                1 => {
                    let b: f64 = rng.gen_range(0.05..=0.95);
                    (JunctionSpec::one_to_two(b, 1.0 - b).unwrap(), 1, 2)
                }
                _ => (
                    JunctionSpec::two_to_one(rng.gen_range(0.05..=0.95)).unwrap(),
                    2,
                    1,
                ),
            };
            let u_in: Vec<f64> = (0..n_in).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let u_out: Vec<f64> = (0..n_out).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let ahead: Vec<TrafficAhead> = (0..n_out)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        FreeFlowing
                    } else {
                        Congested
                    }
                })
                .collect();
            let sol = exact_network_solution(&f, &spec, &u_in, &u_out, &ahead).unwrap();
            for road in &sol.incoming {
                for &s in road.speeds() {
                    assert!(s <= 1e-12, "incoming wave {s} for {u_in:?} {u_out:?}");
                }
            }
            for road in &sol.outgoing {
                for &s in road.speeds() {
                    assert!(s >= -1e-12, "outgoing wave {s} for {u_in:?} {u_out:?}");
                }
            }
            count += 1;
        }
    }
    println!("acceptance 5 [junction wave-speed signs]: PASS ({count} scenarios, 0 violations)");
}

#[test]
fn acceptance_6_splitting_reduces_to_godunov_without_jump() {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for run in 0..100 {
        // Tent diagram with an exactly vanishing jump: peak at u_max/2 with
        // symmetric slopes, all products exact in binary.
        let d1: f64 = rng.gen_range(0.5..2.0);
        let u_max = if rng.gen_bool(0.5) { 1.0 } else { 2.0 };
        let u_star = 0.5 * u_max;
        let f = DiscFlux::new(d1, 0.0, -d1, d1 * u_max, u_star, u_max).unwrap();
        assert_eq!(f.jump_magnitude(), 0.0);

        let cells0: Vec<f64> = (0..rng.gen_range(5..60))
            .map(|_| rng.gen_range(0.0..=u_max))
            .collect();
        let r = rng.gen_range(0.0..=u_max);
        let s = rng.gen_range(0.0..=u_max);
        let lambda = rng.gen_range(0.1..=1.0 / d1.max(1.0));
        let steps = rng.gen_range(1..40);

        // Binary-exact width so the per-road grid recovers it bitwise.
        let dx = 0.0078125;
        let road = Road {
            id: "r".into(),
            origin: 0.0,
            length: (cells0.len() + 1) as f64 * dx,
            initial: InitialData::Piecewise(
                cells0
                    .iter()
                    .enumerate()
                    .map(|(j, &u)| (j as f64 * dx + dx / 2.0, u))
                    .collect(),
            ),
            left_boundary: BoundaryKind::Inflow {
                trace: Trace::constant(r),
            },
            right_boundary: BoundaryKind::Outflow {
                trace: Trace::constant(s),
                ahead: FreeFlowing,
            },
        };
        let net = RoadNetwork::assemble(f, vec![road], Vec::new()).unwrap();
        // Land strictly between steps so the floor stop rule is unambiguous.
        let mut cfg = SimulationConfig::new(
            dx,
            lambda,
            (steps as f64 + 0.5) * lambda * dx,
            SchemeKind::Splitting,
        );
        cfg.paper_time_stop = true;
        let traj = simulate(&net, &cfg).unwrap();

        // Independent classical Godunov on the same diagram.
        let mut ref_cells = traj.snapshots[0].roads[0].clone();
        for _ in 0..steps {
            ref_cells = godunov_step_tent(&f, &ref_cells, lambda, r, s);
        }
        assert_eq!(
            traj.final_state().roads[0],
            ref_cells,
            "run {run}: splitting and classical Godunov differ bitwise"
        );
    }
    println!("acceptance 6 [splitting = Godunov when the jump vanishes]: PASS (100 runs bitwise)");
}

#[test]
fn acceptance_7_riemann_solver_oracle() {
    let f = unit_drop_flux();
    let n = 50;
    let mut waves = 0;
    for i in 0..n {
        for j in 0..n {
            let u_l = i as f64 / (n - 1) as f64;
            let u_r = j as f64 / (n - 1) as f64;
            let fan = solve_riemann(&f, u_l, u_r).unwrap();
            let mine: Vec<(f64, f64, f64)> = fan
                .waves()
                .iter()
                .filter(|w| w.strength() > 1e-5)
                .map(|w| (w.left, w.right, w.speed))
                .collect();
            let oracle = hull_fan_limit(&f, 1e-6, u_l, u_r, 1e-5);
            assert_eq!(mine.len(), oracle.len(), "({u_l}, {u_r})");
            for (m, o) in mine.iter().zip(&oracle) {
                assert!((m.0 - o.0).abs() <= 1e-5, "({u_l}, {u_r}) left state");
                assert!((m.1 - o.1).abs() <= 1e-5, "({u_l}, {u_r}) right state");
                assert!(
                    (m.2 - o.2).abs() <= 1e-4,
                    "({u_l}, {u_r}) speed {} vs {}",
                    m.2,
                    o.2
                );
            }
            waves += mine.len();
        }
    }
    println!(
        "acceptance 7 [riemann hull oracle]: PASS ({}x{} grid, {waves} waves)",
        n, n
    );
}

#[test]
fn acceptance_8_conservation() {
    // Sealed network: vacuum behind the left end, jam against the right end,
    // an active profile and a junction in between. External fluxes cancel
    // exactly, so any drift is internal.
    let f = unit_drop_flux();
    let left = Road {
        id: "left".into(),
        origin: -2.0,
        length: 2.0,
        initial: InitialData::Piecewise(vec![(-2.0, 0.0), (-1.2, 0.45), (-0.6, 0.7)]),
        left_boundary: BoundaryKind::Inflow {
            trace: Trace::constant(0.0),
        },
        right_boundary: BoundaryKind::Outflow {
            trace: Trace::constant(0.7),
            ahead: FreeFlowing,
        },
    };
    let right = Road {
        id: "right".into(),
        origin: 0.0,
        length: 2.0,
        initial: InitialData::Piecewise(vec![(0.0, 0.7), (0.8, 1.0)]),
        left_boundary: BoundaryKind::Inflow {
            trace: Trace::constant(0.7),
        },
        right_boundary: BoundaryKind::Outflow {
            trace: Trace::constant(1.0),
            ahead: Congested,
        },
    };
    let net = RoadNetwork::assemble(
        f,
        vec![left, right],
        vec![JunctionDef::new(
            JunctionSpec::one_to_one(),
            vec![0],
            vec![1],
        )],
    )
    .unwrap();
    let dx = 0.001;
    let lambda = 0.25;
    let steps = 1000;
    let cfg = SimulationConfig::new(
        dx,
        lambda,
        steps as f64 * lambda * dx,
        SchemeKind::Splitting,
    );
    let traj = simulate(&net, &cfg).unwrap();
    let drift = traj.ledger.final_mass - traj.ledger.initial_mass;
    assert!(drift.abs() <= 1e-10, "sealed drift {drift}");
    assert!(traj.ledger.junction_residual_max <= 1e-12);

    // Open network: mass change equals the accumulated boundary fluxes.
    let mut open_worst = 0.0f64;
    for sc in scenarios::all() {
        for (lambda, scheme) in [
            (0.75, SchemeKind::Splitting),
            (0.1, SchemeKind::Splitting),
            (0.1, SchemeKind::Regularized { epsilon: 0.1 }),
        ] {
            let cfg = SimulationConfig::new(0.02, lambda, sc.eval_time, scheme);
            let traj = simulate(&sc.network, &cfg).unwrap();
            let imbalance =
                traj.ledger.final_mass - traj.ledger.initial_mass - traj.ledger.boundary_net_influx;
            assert!(
                imbalance.abs() <= 1e-10,
                "{} lambda={lambda}: imbalance {imbalance}",
                sc.name
            );
            assert!(traj.ledger.junction_residual_max <= 1e-12, "{}", sc.name);
            open_worst = open_worst.max(imbalance.abs());
        }
    }
    println!(
        "acceptance 8 [conservation]: PASS (sealed drift {:.2e} over {steps} steps, open imbalance <= {:.2e})",
        drift.abs(),
        open_worst
    );
}

#[test]
fn acceptance_9_g_range_invariant() {
    let f = unit_drop_flux();
    let sf = f.split();
    let alpha = f.jump_magnitude();
    let in_range = |g: f64| (-alpha - 1e-15..=1e-15).contains(&g);
    let mut checked: u64 = 0;

    // Interior sweep values over randomized states, seeds and grid constants.
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for _ in 0..2000 {
        let cells: Vec<f64> = (0..rng.gen_range(1..50))
            .map(|_| rng.gen_range(0.0..=1.0))
            .collect();
        let lambda = rng.gen_range(0.05..=1.0);
        let seed = -rng.gen_range(0.0..=1.0) * alpha;
        let (_, g) = half_step_g(&cells, &sf, lambda, seed);
        for &gv in &g {
            assert!(in_range(gv), "sweep g {gv}");
            checked += 1;
        }
    }

    // Downstream-boundary values over a density sweep and both flags.
    for k in 0..=1000 {
        let s = k as f64 / 1000.0;
        for ahead in [FreeFlowing, Congested] {
            let g = right_boundary_g(s, ahead, &f);
            assert!(in_range(g), "boundary g {g}");
            checked += 1;
        }
    }

    // Junction-side values of every step of the scenario runs.
    for sc in scenarios::all() {
        for lambda in [0.75, 0.1] {
            let mut cfg = SimulationConfig::new(0.02, lambda, sc.eval_time, SchemeKind::Splitting);
            cfg.record_traces = true;
            let traj = simulate(&sc.network, &cfg).unwrap();
            for step in &traj.traces {
                for trace in &step.traces {
                    for &g in trace.g_in.iter().chain(&trace.g_out) {
                        assert!(in_range(g), "junction g {g}");
                        checked += 1;
                    }
                }
            }
        }
    }
    println!(
        "acceptance 9 [g-range invariant]: PASS ({checked} values in [-alpha, 0], 0 violations)"
    );
}

#[test]
fn acceptance_support_total_mass_example() {
    // Constant 0.4 on a single road of length 2 carries mass 0.4*(2 - dx)
    // on the interior points.
    let net = RoadNetwork::assemble(
        unit_drop_flux(),
        vec![Road::uniform("r", 0.0, 2.0, 0.4)],
        Vec::new(),
    )
    .unwrap();
    let cfg = SimulationConfig::new(0.01, 0.5, 0.05, SchemeKind::Splitting);
    let traj = simulate(&net, &cfg).unwrap();
    let m = total_mass(&traj.grids, &traj.snapshots[0].roads);
    assert!((m - 0.4 * (2.0 - 0.01)).abs() < 1e-12);
}
