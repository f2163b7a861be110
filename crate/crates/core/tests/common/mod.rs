#![allow(dead_code)]

//! Shared oracles for the integration and acceptance suites. Everything in
//! here is deliberately independent of the solver's case analysis: fans come
//! from a geometric hull construction on the regularized flux, reference
//! steps from a freestanding Godunov update.

use dropflow::flux::DiscFlux;

/// A wave of an oracle fan: `(left_state, right_state, speed)`.
pub type OracleWave = (f64, f64, f64);

/// Exact Riemann fan of the width-`epsilon` regularization via the
/// smallest convex hull: lower hull of the flux graph for increasing data,
/// upper hull for decreasing data. Waves below `strength_tol` are dropped.
pub fn hull_fan(
    f: &DiscFlux,
    epsilon: f64,
    u_left: f64,
    u_right: f64,
    strength_tol: f64,
) -> Vec<OracleWave> {
    let rf = f.regularize(epsilon).unwrap();
    let eval = |u: f64| rf.eval(u).unwrap();
    let (lo, hi) = if u_left <= u_right {
        (u_left, u_right)
    } else {
        (u_right, u_left)
    };

    let mut us = vec![lo, hi];
    for b in [f.u_star(), f.u_star() + epsilon] {
        if b > lo && b < hi {
            us.push(b);
        }
    }
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pts: Vec<(f64, f64)> = us.iter().map(|&u| (u, eval(u))).collect();

    // Monotone-chain hull over the graph points. `sign = 1` keeps the lower
    // hull, `sign = -1` the upper one.
    let hull = |sign: f64| -> Vec<(f64, f64)> {
        let mut h: Vec<(f64, f64)> = Vec::new();
        for &p in &pts {
            while h.len() >= 2 {
                let o = h[h.len() - 2];
                let a = h[h.len() - 1];
                let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
                if sign * cross <= 0.0 {
                    h.pop();
                } else {
                    break;
                }
            }
            h.push(p);
        }
        h
    };

    let chain = if u_left <= u_right {
        hull(1.0)
    } else {
        hull(-1.0)
    };
    // Traverse from the left state's end of the chain to the right state's.
    let mut waves: Vec<OracleWave> = Vec::new();
    let segs: Vec<(f64, f64, f64)> = chain
        .windows(2)
        .map(|w| {
            let speed = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            (w[0].0, w[1].0, speed)
        })
        .collect();
    if u_left <= u_right {
        for (a, b, s) in segs {
            push_merged(&mut waves, (a, b, s));
        }
    } else {
        for (a, b, s) in segs.into_iter().rev() {
            push_merged(&mut waves, (b, a, s));
        }
    }
    waves.retain(|w| (w.1 - w.0).abs() > strength_tol);
    waves
}

/// Vanishing-width limit of [`hull_fan`]: the hull's states and speeds are
/// linear in `epsilon` near the critical density, so one Richardson step
/// from `epsilon` and `epsilon/2` removes the leading bias.
pub fn hull_fan_limit(
    f: &DiscFlux,
    epsilon: f64,
    u_left: f64,
    u_right: f64,
    strength_tol: f64,
) -> Vec<OracleWave> {
    let coarse = hull_fan(f, epsilon, u_left, u_right, strength_tol);
    let fine = hull_fan(f, epsilon / 2.0, u_left, u_right, strength_tol);
    assert_eq!(
        coarse.len(),
        fine.len(),
        "oracle wave count unstable in epsilon at ({u_left}, {u_right})"
    );
    coarse
        .iter()
        .zip(&fine)
        .map(|(c, h)| (2.0 * h.0 - c.0, 2.0 * h.1 - c.1, 2.0 * h.2 - c.2))
        .collect()
}

fn push_merged(waves: &mut Vec<OracleWave>, w: OracleWave) {
    if let Some(last) = waves.last_mut() {
        if (last.2 - w.2).abs() <= 1e-12 {
            last.1 = w.1;
            return;
        }
    }
    waves.push(w);
}

/// One step of the classical Godunov scheme on the discontinuous diagram
/// itself (sensible only when the jump vanishes), written independently of
/// the scheme module: plain demand/supply upwinding with ghost cells.
pub fn godunov_step_tent(
    f: &DiscFlux,
    cells: &[f64],
    lambda: f64,
    ghost_l: f64,
    ghost_r: f64,
) -> Vec<f64> {
    use dropflow::flux::TrafficAhead::FreeFlowing;
    let n = cells.len();
    let flux =
        |a: f64, b: f64| -> f64 { f.demand(a).unwrap().min(f.supply(b, FreeFlowing).unwrap()) };
    let mut out = vec![0.0; n];
    for j in 0..n {
        let fl = if j == 0 {
            flux(ghost_l, cells[0])
        } else {
            flux(cells[j - 1], cells[j])
        };
        let fr = if j + 1 == n {
            flux(cells[n - 1], ghost_r)
        } else {
            flux(cells[j], cells[j + 1])
        };
        out[j] = (cells[j] - lambda * (fr - fl)).clamp(0.0, f.u_max());
    }
    out
}

/// The reference diagram of the worked examples.
pub fn unit_drop_flux() -> DiscFlux {
    DiscFlux::new(1.0, 0.0, -0.5, 0.5, 0.5, 1.0).unwrap()
}
