//! Preimage circles of the Hopf map and their Gauss linking number.
//!
//! The fiber over y = (sin θ cos ϕ, sin θ sin ϕ, cos θ) is the circle
//! (z₁ e^{iφ}, z₂ e^{iφ}) with base spinor z₁ = cos(θ/2),
//! z₂ = sin(θ/2) e^{iϕ}. Any two distinct fibers form a Hopf link; their
//! linking number, computed by stereographic projection to R³ followed by
//! the Gauss double line integral, equals the Hopf invariant.

use super::{check_unit_s2, HopfError, ON_SPHERE_TOL};
use crate::algebra::{Point4, S2Point};
use std::f64::consts::PI;

/// Minimum admissible distance between the stereographic pole and a curve.
pub const POLE_CLEARANCE: f64 = 1e-3;

/// Minimum admissible distance between the two projected curves.
pub const CURVE_CLEARANCE: f64 = 1e-6;

/// Closed sampled preimage circle on S³. The sample list includes the
/// closing point, so `samples.first() ≈ samples.last()`.
#[derive(Clone, Debug)]
pub struct FiberCurve {
    pub samples: Vec<Point4>,
    pub base: S2Point,
}

impl FiberCurve {
    /// Number of distinct samples (the closing duplicate not counted).
    pub fn len(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Sample the preimage circle of `y` with `n_samples` distinct points.
pub fn preimage_circle(y: &S2Point, n_samples: usize) -> Result<FiberCurve, HopfError> {
    check_unit_s2(y)?;
    const MIN: usize = 16;
    if n_samples < MIN {
        return Err(HopfError::TooFewSamples {
            n: n_samples,
            min: MIN,
        });
    }
    let [y1, y2, y3] = y.0;
    let theta = y3.clamp(-1.0, 1.0).acos();
    let phi = y2.atan2(y1);
    let (sh, ch) = (0.5 * theta).sin_cos();
    // base spinor (z1, z2) = (cos θ/2, sin θ/2 e^{iϕ})
    let (z1re, z1im) = (ch, 0.0);
    let (z2re, z2im) = (sh * phi.cos(), sh * phi.sin());
    let mut samples = Vec::with_capacity(n_samples + 1);
    for k in 0..=n_samples {
        let a = 2.0 * PI * k as f64 / n_samples as f64;
        let (sa, ca) = a.sin_cos();
        samples.push(Point4([
            z1re * ca - z1im * sa,
            z1re * sa + z1im * ca,
            z2re * ca - z2im * sa,
            z2re * sa + z2im * ca,
        ]));
    }
    Ok(FiberCurve { samples, base: *y })
}

/// Stereographic projection of S³ ∖ {pole} onto the hyperplane pole^⊥,
/// expressed in an orthonormal basis of that hyperplane.
struct Stereographic {
    basis: [Point4; 3],
    pole: Point4,
}

impl Stereographic {
    /// The basis is oriented so that det[u, v, w, pole] = +1, which makes
    /// the projection consistent with the outward orientation of S³:
    /// distinct Hopf fibers link +1, matching the quadrature invariants.
    fn new(pole: &Point4) -> Result<Self, HopfError> {
        let norm = pole.norm();
        if (norm - 1.0).abs() > ON_SPHERE_TOL {
            return Err(HopfError::NotOnSphere { norm });
        }
        // drop the axis most aligned with the pole, orthonormalise the rest
        let dominant = (0..4)
            .max_by(|&i, &j| {
                pole.0[i]
                    .abs()
                    .partial_cmp(&pole.0[j].abs())
                    .expect("finite pole components")
            })
            .expect("non-empty index range");
        let mut basis: Vec<Point4> = Vec::with_capacity(3);
        for i in 0..4 {
            if i == dominant {
                continue;
            }
            let mut e = [0.0; 4];
            e[i] = 1.0;
            let mut v = Point4(e);
            // Gram-Schmidt against the pole and previous basis vectors
            let pv = v.dot(pole);
            for k in 0..4 {
                v.0[k] -= pv * pole.0[k];
            }
            for b in &basis {
                let c = v.dot(b);
                for k in 0..4 {
                    v.0[k] -= c * b.0[k];
                }
            }
            let n = v.norm();
            basis.push(v.scale(1.0 / n));
        }
        let mut basis: [Point4; 3] = [basis[0], basis[1], basis[2]];
        if crate::algebra::det4(&[basis[0], basis[1], basis[2], *pole]) < 0.0 {
            basis.swap(1, 2);
        }
        Ok(Stereographic {
            basis,
            pole: *pole,
        })
    }

    fn project(&self, q: &Point4) -> [f64; 3] {
        let qp = q.dot(&self.pole);
        let denom = 1.0 - qp;
        let mut out = [0.0; 3];
        for (o, b) in out.iter_mut().zip(self.basis.iter()) {
            *o = q.dot(b) / denom;
        }
        out
    }
}

fn min_distance_to_curve(pole: &Point4, curve: &FiberCurve) -> f64 {
    curve
        .samples
        .iter()
        .map(|q| {
            ((q.0[0] - pole.0[0]).powi(2)
                + (q.0[1] - pole.0[1]).powi(2)
                + (q.0[2] - pole.0[2]).powi(2)
                + (q.0[3] - pole.0[3]).powi(2))
            .sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Default stereographic pole for linking computations, perturbed away
/// from −x̂₄ deterministically (along x₁, then x₂, then x₃, with growing
/// steps) until it clears both curves.
pub fn choose_pole(c1: &FiberCurve, c2: &FiberCurve) -> Point4 {
    let base = Point4([0.0, 0.0, 0.0, -1.0]);
    let clear = |p: &Point4| {
        min_distance_to_curve(p, c1) > POLE_CLEARANCE
            && min_distance_to_curve(p, c2) > POLE_CLEARANCE
    };
    if clear(&base) {
        return base;
    }
    for step in [0.25, 0.5, 1.0] {
        for axis in 0..3 {
            let mut p = base;
            p.0[axis] += step;
            let p = p.scale(1.0 / p.norm());
            if clear(&p) {
                return p;
            }
        }
    }
    // a dense fiber pair would have to cover most of the sphere for every
    // candidate to fail; fall back to the last candidate
    Point4([1.0, 0.0, 0.0, 0.0])
}

/// Gauss linking number of two closed polylines in R³ by the midpoint
/// rule,
///   lk = (1/4π) Σ_i Σ_j (m_i − m_j) · (d_i × d_j) / |m_i − m_j|³ ,
/// with segment midpoints m and chords d. Points are the distinct
/// vertices of each loop (no closing duplicate).
pub fn linking_integral_r3(c1: &[[f64; 3]], c2: &[[f64; 3]]) -> f64 {
    let seg = |pts: &[[f64; 3]]| -> Vec<([f64; 3], [f64; 3])> {
        let n = pts.len();
        (0..n)
            .map(|i| {
                let a = pts[i];
                let b = pts[(i + 1) % n];
                (
                    [
                        0.5 * (a[0] + b[0]),
                        0.5 * (a[1] + b[1]),
                        0.5 * (a[2] + b[2]),
                    ],
                    [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
                )
            })
            .collect()
    };
    let s1 = seg(c1);
    let s2 = seg(c2);
    let mut sum = 0.0;
    for (m1, d1) in &s1 {
        for (m2, d2) in &s2 {
            let r = [m1[0] - m2[0], m1[1] - m2[1], m1[2] - m2[2]];
            let cx = [
                d1[1] * d2[2] - d1[2] * d2[1],
                d1[2] * d2[0] - d1[0] * d2[2],
                d1[0] * d2[1] - d1[1] * d2[0],
            ];
            let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            sum += (r[0] * cx[0] + r[1] * cx[1] + r[2] * cx[2]) / (r2 * r2.sqrt());
        }
    }
    sum / (4.0 * PI)
}

/// Linking number of two fiber curves: stereographic projection from
/// `pole` followed by the Gauss integral.
pub fn gauss_linking(
    c1: &FiberCurve,
    c2: &FiberCurve,
    pole: &Point4,
) -> Result<f64, HopfError> {
    let proj = Stereographic::new(pole)?;
    if min_distance_to_curve(pole, c1) <= POLE_CLEARANCE
        || min_distance_to_curve(pole, c2) <= POLE_CLEARANCE
    {
        return Err(HopfError::PoleOnCurve);
    }
    let p1: Vec<[f64; 3]> = c1.samples[..c1.len()].iter().map(|q| proj.project(q)).collect();
    let p2: Vec<[f64; 3]> = c2.samples[..c2.len()].iter().map(|q| proj.project(q)).collect();
    let mut min_dist: f64 = f64::INFINITY;
    for a in &p1 {
        for b in &p2 {
            let d2 = (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2);
            min_dist = min_dist.min(d2.sqrt());
        }
    }
    if min_dist <= CURVE_CLEARANCE {
        return Err(HopfError::CurvesIntersect { min_dist });
    }
    Ok(linking_integral_r3(&p1, &p2))
}

/// Linking number with the pole chosen automatically.
pub fn linking_number(c1: &FiberCurve, c2: &FiberCurve) -> Result<f64, HopfError> {
    gauss_linking(c1, c2, &choose_pole(c1, c2))
}
