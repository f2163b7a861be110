//! The discontinuous fundamental diagram and everything derived from it.
//!
//! [`DiscFlux`] is a piecewise-affine flux with an increasing branch below
//! the critical density `u*`, a decreasing branch above it, and a downward
//! jump of magnitude `alpha` at `u*`. The value at `u*` itself is taken
//! from the left branch by convention; wherever the two-valued closure
//! matters (outflow boundaries, junction supplies) a [`TrafficAhead`] flag
//! selects the branch.
//!
//! [`SplitFlux`] separates the jump into a scaled Heaviside part `g` and a
//! continuous remainder `p = f - g`, the decomposition the splitting scheme
//! advances in two half-steps. [`RegularizedFlux`] instead replaces the jump
//! by a steep affine segment of width `epsilon`, which is what the baseline
//! Godunov scheme runs on.

use crate::error::{Error, Result};

/// Relative tolerance (times `u_max`) below which a density counts as the
/// critical density. Case selection must be stable on binary-float inputs
/// that are meant to be exactly `u*`.
pub const CRITICAL_REL_TOL: f64 = 1e-12;

/// Densities violating the domain by more than this are hard errors;
/// smaller excursions are clamped since conservative updates can over- or
/// undershoot by rounding only.
pub const DOMAIN_HARD_TOL: f64 = 1e-9;

/// Absolute tolerance for flux comparisons (binding-supply detection,
/// demand ties, capacity ties).
pub const FLUX_CMP_TOL: f64 = 1e-12;

/// State of the traffic just beyond a boundary where the local density is
/// exactly critical; resolves which of the two flux values applies there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrafficAhead {
    FreeFlowing,
    Congested,
}

/// Piecewise-affine fundamental diagram with a single decreasing jump.
///
/// Branch 1 is `d1*u + d0` on `[0, u*]`, branch 2 is `e1*u + e0` on
/// `(u*, u_max]`, with `d1 > 0`, `e1 < 0`, `f(0) = f(u_max) = 0` and
/// `f(u*-) >= f(u*+)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscFlux {
    d1: f64,
    d0: f64,
    e1: f64,
    e0: f64,
    u_star: f64,
    u_max: f64,
}

impl DiscFlux {
    pub fn new(d1: f64, d0: f64, e1: f64, e0: f64, u_star: f64, u_max: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFlux(msg));
        if d1.is_nan() || d1 <= 0.0 {
            return bad(format!("branch-1 slope must be positive, got {d1}"));
        }
        if e1.is_nan() || e1 >= 0.0 {
            return bad(format!("branch-2 slope must be negative, got {e1}"));
        }
        if u_max.is_nan() || u_star.is_nan() || u_max <= 0.0 || u_star <= 0.0 || u_star >= u_max {
            return bad(format!(
                "need 0 < u_star < u_max, got u_star={u_star}, u_max={u_max}"
            ));
        }
        if d0.abs() > FLUX_CMP_TOL {
            return bad(format!("empty road must carry zero flux, got f(0)={d0}"));
        }
        let f_umax = e1 * u_max + e0;
        if f_umax.abs() > FLUX_CMP_TOL {
            return bad(format!(
                "jammed road must carry zero flux, got f(u_max)={f_umax}"
            ));
        }
        let flux = Self {
            d1,
            d0,
            e1,
            e0,
            u_star,
            u_max,
        };
        if flux.jump_magnitude() < -FLUX_CMP_TOL {
            return bad(format!(
                "jump must be decreasing: f(u*-)={} < f(u*+)={}",
                flux.flux_before_drop(),
                flux.flux_after_drop()
            ));
        }
        Ok(flux)
    }

    pub fn u_star(&self) -> f64 {
        self.u_star
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn branch1_slope(&self) -> f64 {
        self.d1
    }

    pub fn branch2_slope(&self) -> f64 {
        self.e1
    }

    /// `f(u*-)`, the maximal flux of the diagram.
    pub fn flux_before_drop(&self) -> f64 {
        self.branch1(self.u_star)
    }

    /// `f(u*+)`, the flux just after the drop.
    pub fn flux_after_drop(&self) -> f64 {
        self.branch2(self.u_star)
    }

    /// Jump magnitude `alpha = f(u*-) - f(u*+)`.
    pub fn jump_magnitude(&self) -> f64 {
        self.flux_before_drop() - self.flux_after_drop()
    }

    /// Absolute tolerance under which a density counts as `u*`.
    pub fn critical_tol(&self) -> f64 {
        CRITICAL_REL_TOL * self.u_max
    }

    pub fn is_critical(&self, u: f64) -> bool {
        (u - self.u_star).abs() <= self.critical_tol()
    }

    fn branch1(&self, u: f64) -> f64 {
        self.d1 * u + self.d0
    }

    fn branch2(&self, u: f64) -> f64 {
        self.e1 * u + self.e0
    }

    /// Density on branch 1 carrying flux `q`.
    pub fn branch1_inverse(&self, q: f64) -> f64 {
        (q - self.d0) / self.d1
    }

    /// Density on branch 2 carrying flux `q`.
    pub fn branch2_inverse(&self, q: f64) -> f64 {
        (q - self.e0) / self.e1
    }

    /// Validate a density, clamping rounding-level excursions.
    pub fn check_density(&self, u: f64) -> Result<f64> {
        if u < -DOMAIN_HARD_TOL || u > self.u_max + DOMAIN_HARD_TOL {
            return Err(Error::Domain {
                value: u,
                upper: self.u_max,
            });
        }
        Ok(u.clamp(0.0, self.u_max))
    }

    /// Evaluate the flux; `f(u*)` takes the left value.
    pub fn eval(&self, u: f64) -> Result<f64> {
        let u = self.check_density(u)?;
        Ok(self.eval_clamped(u))
    }

    pub(crate) fn eval_clamped(&self, u: f64) -> f64 {
        if u <= self.u_star + self.critical_tol() {
            self.branch1(u)
        } else {
            self.branch2(u)
        }
    }

    /// Maximal flux the road can send when the density is `u`.
    pub fn demand(&self, u: f64) -> Result<f64> {
        let u = self.check_density(u)?;
        Ok(if u < self.u_star - self.critical_tol() {
            self.branch1(u)
        } else {
            self.flux_before_drop()
        })
    }

    /// Maximal flux the road can absorb when the density is `u`. The
    /// `ahead` flag is consulted only when `u` is exactly critical.
    pub fn supply(&self, u: f64, ahead: TrafficAhead) -> Result<f64> {
        let u = self.check_density(u)?;
        Ok(if self.is_critical(u) {
            match ahead {
                TrafficAhead::FreeFlowing => self.flux_before_drop(),
                TrafficAhead::Congested => self.flux_after_drop(),
            }
        } else if u < self.u_star {
            self.flux_before_drop()
        } else {
            self.branch2(u)
        })
    }

    /// Density on the opposite branch carrying the same flux.
    ///
    /// For fluxes in the jump gap no such density exists and the critical
    /// density is returned instead; `eta(u*) = u*` by the same convention.
    pub fn eta(&self, u: f64) -> Result<f64> {
        let u = self.check_density(u)?;
        if self.is_critical(u) {
            return Ok(self.u_star);
        }
        let crossover = self.branch1_inverse(self.flux_after_drop());
        Ok(if u > self.u_star {
            self.branch1_inverse(self.branch2(u))
        } else if u <= crossover {
            self.branch2_inverse(self.branch1(u))
        } else {
            self.u_star
        })
    }

    /// Intersection of branch 1 with the chord from `(u*, f(u*+))` to the
    /// branch-2 point at `u_right`; separates the one-shock and two-wave
    /// transcritical Riemann solutions.
    ///
    /// Requires `u_right > u*`. At `u_right = u*` the chord degenerates;
    /// the horizontal-chord limit through `f(u*+)` is returned.
    pub fn gamma(&self, u_right: f64) -> f64 {
        let f_plus = self.flux_after_drop();
        if u_right - self.u_star <= self.critical_tol() {
            return self.branch1_inverse(f_plus);
        }
        let chord_slope = (self.branch2(u_right) - f_plus) / (u_right - self.u_star);
        // d1*g + d0 = f_plus + chord_slope*(g - u*)
        (f_plus - chord_slope * self.u_star - self.d0) / (self.d1 - chord_slope)
    }

    /// Decompose into the continuous part `p` and the Heaviside part `g`.
    pub fn split(&self) -> SplitFlux {
        SplitFlux {
            base: *self,
            alpha: self.jump_magnitude(),
        }
    }

    /// Replace the jump by an affine segment on `(u*, u* + epsilon)`.
    pub fn regularize(&self, epsilon: f64) -> Result<RegularizedFlux> {
        if epsilon.is_nan() || epsilon <= 0.0 || epsilon >= self.u_max - self.u_star {
            return Err(Error::InvalidFlux(format!(
                "regularization width must satisfy 0 < epsilon < {}, got {epsilon}",
                self.u_max - self.u_star
            )));
        }
        let mid_slope =
            -(self.branch1(self.u_star) - self.branch2(self.u_star + epsilon)) / epsilon;
        Ok(RegularizedFlux {
            base: *self,
            epsilon,
            mid_slope,
        })
    }
}

/// The decomposition `f = p + g` with `g = -alpha * H(u - u*)`.
///
/// `p` is continuous, unimodal with peak `p(u*) = f(u*-)`, and is the flux
/// the explicit Godunov half-step runs on; `g` carries the jump and is
/// advanced implicitly. The selection `g(u*) = 0` makes `p + g = f`
/// pointwise under the left-value convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitFlux {
    base: DiscFlux,
    alpha: f64,
}

impl SplitFlux {
    pub fn base(&self) -> &DiscFlux {
        &self.base
    }

    /// Jump magnitude `alpha` carried by `g`.
    pub fn jump(&self) -> f64 {
        self.alpha
    }

    pub fn u_star(&self) -> f64 {
        self.base.u_star
    }

    pub fn u_max(&self) -> f64 {
        self.base.u_max
    }

    /// Peak value `p(u*) = f(u*-)`.
    pub fn p_peak(&self) -> f64 {
        self.base.flux_before_drop()
    }

    /// The continuous part. Defined past `u_max` by extending branch 2,
    /// which the junction-coupled half-step may transiently need.
    pub fn p(&self, u: f64) -> f64 {
        if u <= self.base.u_star + self.base.critical_tol() {
            self.base.branch1(u)
        } else {
            self.base.branch2(u) + self.alpha
        }
    }

    /// The Heaviside part, with the selection `g(u*) = 0`.
    pub fn g(&self, u: f64) -> f64 {
        if u <= self.base.u_star + self.base.critical_tol() {
            0.0
        } else {
            -self.alpha
        }
    }

    /// Godunov demand of `p` (nondecreasing envelope).
    pub fn p_demand(&self, u: f64) -> f64 {
        if u < self.base.u_star - self.base.critical_tol() {
            self.base.branch1(u)
        } else {
            self.p_peak()
        }
    }

    /// Godunov supply of `p` (nonincreasing envelope).
    pub fn p_supply(&self, u: f64) -> f64 {
        if u <= self.base.u_star + self.base.critical_tol() {
            self.p_peak()
        } else {
            self.base.branch2(u) + self.alpha
        }
    }

    /// `G(z) = z - lambda*g(z)` under the `g(u*) = 0` selection.
    pub fn forward_map(&self, lambda: f64, z: f64) -> f64 {
        z - lambda * self.g(z)
    }

    /// Single-valued inverse of the multivalued closure of `G`.
    ///
    /// Identity below `u*`, collapses the plateau `[u*, u* + lambda*alpha)`
    /// to `u*`, shifts by `lambda*alpha` above it. Lipschitz, nondecreasing,
    /// with `0 <= result <= z` on `[0, u_max + lambda*alpha]`.
    pub fn g_inverse(&self, lambda: f64, z: f64) -> Result<f64> {
        let hi = self.base.u_max + lambda * self.alpha;
        if z < -DOMAIN_HARD_TOL || z > hi + DOMAIN_HARD_TOL {
            return Err(Error::Domain {
                value: z,
                upper: hi,
            });
        }
        let z = z.clamp(0.0, hi);
        let u_star = self.base.u_star;
        let la = lambda * self.alpha;
        Ok(if z < u_star {
            z
        } else if z < u_star + la {
            u_star
        } else {
            z - la
        })
    }
}

/// Continuous stand-in for [`DiscFlux`] with the jump smeared over a width
/// `epsilon`; agrees with branch 1 on `[0, u*]` and with branch 2 on
/// `[u* + epsilon, u_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedFlux {
    base: DiscFlux,
    epsilon: f64,
    mid_slope: f64,
}

impl RegularizedFlux {
    pub fn base(&self) -> &DiscFlux {
        &self.base
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Slope of the connecting segment; negative, and unbounded as
    /// `epsilon` shrinks.
    pub fn mid_slope(&self) -> f64 {
        self.mid_slope
    }

    pub fn u_star(&self) -> f64 {
        self.base.u_star
    }

    pub fn u_max(&self) -> f64 {
        self.base.u_max
    }

    /// Peak value, attained at `u*`.
    pub fn peak(&self) -> f64 {
        self.base.flux_before_drop()
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        let u = self.base.check_density(u)?;
        Ok(self.eval_clamped(u))
    }

    pub(crate) fn eval_clamped(&self, u: f64) -> f64 {
        let u_star = self.base.u_star;
        if u <= u_star {
            self.base.branch1(u)
        } else if u < u_star + self.epsilon {
            self.mid_slope * (u - u_star) + self.base.branch1(u_star)
        } else {
            self.base.branch2(u)
        }
    }

    /// Godunov demand of the regularized flux (peak at `u*`).
    pub fn demand(&self, u: f64) -> f64 {
        if u < self.base.u_star {
            self.base.branch1(u)
        } else {
            self.peak()
        }
    }

    /// Godunov supply of the regularized flux.
    pub fn supply(&self, u: f64) -> f64 {
        if u <= self.base.u_star {
            self.peak()
        } else {
            self.eval_clamped(u)
        }
    }

    /// Largest slope magnitude, the CFL-relevant wave speed bound.
    pub fn max_abs_slope(&self) -> f64 {
        self.base
            .d1
            .abs()
            .max(self.mid_slope.abs())
            .max(self.base.e1.abs())
    }
}
