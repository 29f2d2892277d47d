//! The rotating-plane deformation of the Hopf map, R² × [0,1] → S²:
//!
//!   y₁ = (1/r) sin f(r) (x₁ cos a(x₃) − x₂ sin a(x₃))
//!   y₂ = (1/r) sin f(r) (x₁ sin a(x₃) + x₂ cos a(x₃))
//!   y₃ = cos f(r),             r = √(x₁² + x₂²),
//!
//! with f(0) = π, f(∞) = 0 and a monotone schedule a: [0,1] → [0,2π].
//! Interpreting x₃ as time, the plane makes one full rotation, the world
//! lines of distinct points are linked once, and the configuration
//! carries one unit of Hopf charge.
//!
//! The charge is evaluated as the Chern-Simons quadrature
//! (1/16π²) ∫ d³x ε_{μνλ} A_μ F_νλ with the area-form components
//!
//!   F₁₂ = sin f f′/r,  F₂₃ = x₂ sin f f′ a′/r,  F₃₁ = −x₁ sin f f′ a′/r,
//!
//! and the potential in the axis-regular gauge
//!
//!   A₁ = (1 + cos f) x₂/r²,  A₂ = −(1 + cos f) x₁/r²,  A₃ = −a′ cos f,
//!
//! whose azimuthal part −(1 + cos f) dφ vanishes on the axis (f(0) = π).
//! The Chern-Simons density then reduces pointwise to 2 sin f f′ a′ / r,
//! so the signed invariant equals (cos f(0) − cos f(∞))/2 = −1 for the
//! stated endpoints; callers interested only in the charge magnitude
//! take |H|.

use super::HopfError;
use crate::algebra::S2Point;
use std::f64::consts::PI;
use std::sync::Arc;

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Deformed-map data: radial profile f, rotation schedule a (with
/// analytic derivatives) and the truncation radius of the plane.
#[derive(Clone)]
pub struct DeformedMapSpec {
    f: RadialFn,
    f_prime: RadialFn,
    a: RadialFn,
    a_prime: RadialFn,
    pub r_max: f64,
}

impl std::fmt::Debug for DeformedMapSpec {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("DeformedMapSpec")
            .field("r_max", &self.r_max)
            .finish_non_exhaustive()
    }
}

impl DeformedMapSpec {
    /// Validated spec: f(0) = π, f(r_max) ≤ 1e-3, a(0) = 0, a(1) = 2π,
    /// a nondecreasing on a 129-point sample.
    pub fn new(
        f: RadialFn,
        f_prime: RadialFn,
        a: RadialFn,
        a_prime: RadialFn,
        r_max: f64,
    ) -> Result<Self, HopfError> {
        let spec = Self::new_unchecked(f, f_prime, a, a_prime, r_max);
        let bad = |msg: String| Err(HopfError::InvalidDeformedSpec(msg));
        if !(r_max > 0.0) {
            return bad(format!("r_max must be positive, got {r_max}"));
        }
        if ((spec.f)(0.0) - PI).abs() > 1e-12 {
            return bad(format!("f(0) = {} but must equal π", (spec.f)(0.0)));
        }
        let tail = (spec.f)(r_max);
        if tail.abs() > 1e-3 {
            return bad(format!("f(r_max) = {tail:e} exceeds the 1e-3 tail bound"));
        }
        if (spec.a)(0.0).abs() > 1e-12 || ((spec.a)(1.0) - 2.0 * PI).abs() > 1e-12 {
            return bad("schedule must run from a(0) = 0 to a(1) = 2π".into());
        }
        let mut prev = (spec.a)(0.0);
        for k in 1..=128 {
            let t = k as f64 / 128.0;
            let v = (spec.a)(t);
            if v < prev - 1e-12 {
                return bad(format!("schedule is not monotone near t = {t}"));
            }
            prev = v;
        }
        Ok(spec)
    }

    /// No validation; used for experiments that deliberately break the
    /// endpoint conditions (e.g. a constant schedule).
    pub fn new_unchecked(
        f: RadialFn,
        f_prime: RadialFn,
        a: RadialFn,
        a_prime: RadialFn,
        r_max: f64,
    ) -> Self {
        DeformedMapSpec {
            f,
            f_prime,
            a,
            a_prime,
            r_max,
        }
    }

    /// The default family: f(r) = 2 arctan(1/r), a(t) = 2πt. The tail
    /// condition f(r_max) ≤ 1e-3 needs r_max ≥ 2000 for this profile.
    pub fn default_map(r_max: f64) -> Result<Self, HopfError> {
        Self::new(
            Arc::new(|r: f64| 2.0 * (1.0 / r).atan()),
            Arc::new(|r: f64| -2.0 / (1.0 + r * r)),
            Arc::new(|t: f64| 2.0 * PI * t),
            Arc::new(|_| 2.0 * PI),
            r_max,
        )
    }

    /// Constant schedule a ≡ 0 over the default profile; carries no charge.
    pub fn frozen_schedule(r_max: f64) -> Self {
        Self::new_unchecked(
            Arc::new(|r: f64| 2.0 * (1.0 / r).atan()),
            Arc::new(|r: f64| -2.0 / (1.0 + r * r)),
            Arc::new(|_| 0.0),
            Arc::new(|_| 0.0),
            r_max,
        )
    }

    pub fn f(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    pub fn f_prime(&self, r: f64) -> f64 {
        (self.f_prime)(r)
    }

    pub fn a(&self, t: f64) -> f64 {
        (self.a)(t)
    }

    pub fn a_prime(&self, t: f64) -> f64 {
        (self.a_prime)(t)
    }
}

/// Evaluate the deformed map at (x₁, x₂, x₃).
///
/// The rotation angle is reduced mod 2π, so x₃ = 0 and x₃ = 1 give
/// bit-identical images for any valid schedule.
pub fn deformed_map(x1: f64, x2: f64, x3: f64, spec: &DeformedMapSpec) -> S2Point {
    let r = (x1 * x1 + x2 * x2).sqrt();
    if r < 1e-30 {
        return S2Point([0.0, 0.0, spec.f(0.0).cos()]);
    }
    let f = spec.f(r);
    let ang = spec.a(x3).rem_euclid(2.0 * PI);
    let (sa, ca) = ang.sin_cos();
    let sf_over_r = f.sin() / r;
    S2Point([
        sf_over_r * (x1 * ca - x2 * sa),
        sf_over_r * (x1 * sa + x2 * ca),
        f.cos(),
    ])
}

/// Cylindrical quadrature grid over the truncated slab {r ≤ r_max} × [0,1]:
/// composite Simpson in r (odd node count), midpoint in the angle and in x₃.
#[derive(Clone, Copy, Debug)]
pub struct DeformedGrid {
    pub n_r: usize,
    pub n_psi: usize,
    pub n_x3: usize,
    pub workers: usize,
}

impl Default for DeformedGrid {
    fn default() -> Self {
        DeformedGrid {
            n_r: 49153,
            n_psi: 16,
            n_x3: 16,
            workers: 1,
        }
    }
}

impl DeformedGrid {
    fn validate(&self) -> Result<(), HopfError> {
        if self.n_r < 65 || self.n_psi < 8 || self.n_x3 < 8 {
            return Err(HopfError::ResolutionTooLow {
                cells: self.n_r.min(self.n_psi).min(self.n_x3),
                min: 8,
            });
        }
        if self.n_r % 2 == 0 {
            return Err(HopfError::InvalidDeformedSpec(
                "Simpson rule needs an odd radial node count".into(),
            ));
        }
        Ok(())
    }
}

/// Signed Hopf charge of the deformed map,
/// (1/16π²) ∫ ε_{μνλ} A_μ F_νλ d³x over {r ≤ r_max} × [0, 1].
///
/// A and F are evaluated componentwise from their closed forms at every
/// node and contracted numerically; nothing is simplified analytically
/// before the quadrature.
pub fn deformed_invariant(spec: &DeformedMapSpec, grid: &DeformedGrid) -> Result<f64, HopfError> {
    grid.validate()?;
    let h = spec.r_max / (grid.n_r - 1) as f64;
    let dpsi = 2.0 * PI / grid.n_psi as f64;
    let dx3 = 1.0 / grid.n_x3 as f64;
    let sum = crate::par::chunked_sum(grid.n_r, grid.workers, |range| {
        let mut acc = 0.0;
        for ir in range {
            let r = ir as f64 * h;
            // Simpson weights 1,4,2,…,2,4,1 (×h/3)
            let w_r = if ir == 0 || ir == grid.n_r - 1 {
                1.0
            } else if ir % 2 == 1 {
                4.0
            } else {
                2.0
            } * h
                / 3.0;
            if r == 0.0 {
                // ε A F · r → 2 sin f f′ a′ → 0 on the axis since f(0) = π
                continue;
            }
            let f = spec.f(r);
            let fp = spec.f_prime(r);
            let (sf, cf) = f.sin_cos();
            let mut ring = 0.0;
            for ipsi in 0..grid.n_psi {
                let psi = (ipsi as f64 + 0.5) * dpsi;
                let (x1, x2) = (r * psi.cos(), r * psi.sin());
                for it in 0..grid.n_x3 {
                    let t = (it as f64 + 0.5) * dx3;
                    let ap = spec.a_prime(t);
                    // axis-regular gauge potential and area-form components
                    let a1 = (1.0 + cf) * x2 / (r * r);
                    let a2 = -(1.0 + cf) * x1 / (r * r);
                    let a3 = -ap * cf;
                    let f12 = sf * fp / r;
                    let f23 = x2 * sf * fp * ap / r;
                    let f31 = -x1 * sf * fp * ap / r;
                    let density = 2.0 * (a1 * f23 + a2 * f31 + a3 * f12);
                    ring += density;
                }
            }
            acc += w_r * r * ring * dpsi * dx3;
        }
        acc
    });
    Ok(sum / (16.0 * PI * PI))
}

/// Closed form of the dimensionally-reduced charge over the truncated
/// domain: (1/8π²)·2π·2π·∫₀^{r_max} sin f f′ dr = (cos f(0) − cos f(r_max))/2.
pub fn analytic_reduction(spec: &DeformedMapSpec) -> f64 {
    0.5 * (spec.f(0.0).cos() - spec.f(spec.r_max).cos())
}
