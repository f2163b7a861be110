//! Exact Riemann solver for a single road.
//!
//! With affine branches every wave is a shock or a contact discontinuity;
//! the transcritical cases follow the smallest-convex-hull construction
//! applied to the regularized flux in the vanishing-width limit. Waves of
//! unbounded speed and vanishing strength that the limit produces are never
//! materialized: their only effect is the selection of the flux value at a
//! critical state, which lives at the boundary and junction level.

use crate::error::Result;
use crate::flux::DiscFlux;

/// Wave strengths at or below this are dropped from fans.
const STRENGTH_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind {
    Shock,
    Contact,
    /// Kept for a future strictly-concave extension; affine branches never
    /// produce one. Carries the head and tail speeds of the fan.
    Rarefaction {
        head: f64,
        tail: f64,
    },
}

/// One wave of a self-similar solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub left: f64,
    pub right: f64,
    pub speed: f64,
    pub kind: WaveKind,
}

impl Wave {
    pub fn strength(&self) -> f64 {
        (self.right - self.left).abs()
    }
}

/// Ordered fan of waves separating constant states.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFan {
    u_left: f64,
    u_right: f64,
    waves: Vec<Wave>,
}

impl WaveFan {
    pub fn constant(u: f64) -> Self {
        Self {
            u_left: u,
            u_right: u,
            waves: Vec::new(),
        }
    }

    fn from_waves(u_left: f64, u_right: f64, waves: Vec<Wave>) -> Self {
        let fan = Self {
            u_left,
            u_right,
            waves,
        };
        debug_assert!(fan.is_consistent(), "inconsistent fan: {fan:?}");
        fan
    }

    pub fn u_left(&self) -> f64 {
        self.u_left
    }

    pub fn u_right(&self) -> f64 {
        self.u_right
    }

    pub fn waves(&self) -> &[Wave] {
        &self.waves
    }

    pub fn is_empty(&self) -> bool {
        self.waves.is_empty()
    }

    /// States chain and speeds strictly increase.
    pub fn is_consistent(&self) -> bool {
        let mut state = self.u_left;
        let mut last_speed = f64::NEG_INFINITY;
        for w in &self.waves {
            if w.left != state || w.speed <= last_speed || !w.speed.is_finite() {
                return false;
            }
            state = w.right;
            last_speed = w.speed;
        }
        state == self.u_right
    }

    pub fn max_abs_speed(&self) -> f64 {
        self.waves.iter().map(|w| w.speed.abs()).fold(0.0, f64::max)
    }
}

/// Evaluate the self-similar solution at `xi = x/t`. On a wave speed
/// exactly, the right state wins.
pub fn evaluate_fan(fan: &WaveFan, xi: f64) -> f64 {
    let mut state = fan.u_left;
    for w in &fan.waves {
        match w.kind {
            WaveKind::Rarefaction { head, tail } if xi >= head && xi < tail => {
                let frac = (xi - head) / (tail - head);
                return w.left + frac * (w.right - w.left);
            }
            _ => {
                if xi >= w.speed {
                    state = w.right;
                } else {
                    return state;
                }
            }
        }
    }
    state
}

/// Solve the Riemann problem for the discontinuous flux.
///
/// Subcritical and supercritical data give a single classical wave. With
/// `u_l > u* > u_r` the solution is a backward shock onto `u*` followed by
/// a branch-1 contact. With `u_l < u* < u_r` the chord intersection
/// `gamma(u_r)` decides between a single shock (`u_l <= gamma`) and a
/// backward shock onto `u*` (carrying the post-drop flux) followed by a
/// branch-2 contact. Critical states count as branch-1 states, carrying
/// `f(u*-)`.
pub fn solve_riemann(f: &DiscFlux, u_left: f64, u_right: f64) -> Result<WaveFan> {
    let u_l = f.check_density(u_left)?;
    let u_r = f.check_density(u_right)?;
    if (u_l - u_r).abs() <= STRENGTH_TOL {
        return Ok(WaveFan::constant(u_l));
    }
    let u_star = f.u_star();
    let tol = f.critical_tol();
    let left_congested = u_l > u_star + tol;
    let right_congested = u_r > u_star + tol;

    let fan = match (left_congested, right_congested) {
        (false, false) => {
            // Both carry branch-1 flux values; affine branch, so a single
            // contact at the branch speed.
            single(u_l, u_r, f.branch1_slope(), WaveKind::Contact)
        }
        (true, true) => single(u_l, u_r, f.branch2_slope(), WaveKind::Contact),
        (true, false) => {
            // Downward-crossing data: backward shock onto u*, which carries
            // f(u*-), then a forward branch-1 contact to u_r.
            let s = (f.flux_before_drop() - f.eval(u_l)?) / (u_star - u_l);
            let mut waves = vec![Wave {
                left: u_l,
                right: u_star,
                speed: s,
                kind: WaveKind::Shock,
            }];
            if u_star - u_r > STRENGTH_TOL {
                waves.push(Wave {
                    left: u_star,
                    right: u_r,
                    speed: f.branch1_slope(),
                    kind: WaveKind::Contact,
                });
            }
            WaveFan::from_waves(
                u_l,
                if u_star - u_r > STRENGTH_TOL {
                    u_r
                } else {
                    u_star
                },
                waves,
            )
        }
        (false, true) => {
            let gamma = f.gamma(u_r);
            if u_l > gamma {
                // Shock onto u* selecting the post-drop flux there, then a
                // branch-2 contact. The shock degenerates when u_l is
                // already critical.
                let mut waves = Vec::with_capacity(2);
                let mut leftmost = u_l;
                if u_star - u_l > STRENGTH_TOL {
                    let s = (f.flux_after_drop() - f.eval(u_l)?) / (u_star - u_l);
                    waves.push(Wave {
                        left: u_l,
                        right: u_star,
                        speed: s,
                        kind: WaveKind::Shock,
                    });
                } else {
                    leftmost = u_star;
                }
                waves.push(Wave {
                    left: u_star,
                    right: u_r,
                    speed: f.branch2_slope(),
                    kind: WaveKind::Contact,
                });
                WaveFan::from_waves(leftmost, u_r, waves)
            } else {
                let s = (f.eval(u_r)? - f.eval(u_l)?) / (u_r - u_l);
                single(u_l, u_r, s, WaveKind::Shock)
            }
        }
    };
    Ok(fan)
}

fn single(u_l: f64, u_r: f64, speed: f64, kind: WaveKind) -> WaveFan {
    WaveFan::from_waves(
        u_l,
        u_r,
        vec![Wave {
            left: u_l,
            right: u_r,
            speed,
            kind,
        }],
    )
}
