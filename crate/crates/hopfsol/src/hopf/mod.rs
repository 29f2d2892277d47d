//! The Hopf map S³ → S², its pulled-back forms and the Hopf invariant.
//!
//! The map is y¹ = 2(x₁x₃ + x₂x₄), y² = 2(x₁x₄ − x₂x₃),
//! y³ = x₁² + x₂² − x₃² − x₄², i.e. yᵃ = z̄ᵢ σᵃ_{ij} zⱼ with
//! z₁ = x₁ + i x₂, z₂ = x₃ + i x₄. On S³ the pulled-back area form of the
//! target sphere simplifies to ω₂ = 4(dx₁∧dx₂ + dx₃∧dx₄) with potential
//! ω₁ = 2(x₁dx₂ − x₂dx₁ + x₃dx₄ − x₄dx₃), and the invariant is
//!
//!   H = (1/16π²) ∫_{S³} ω₁ ∧ ω₂
//!     = (1/32π²) ∫ d³u ε_{μνλ} A_μ F_νλ ,
//!
//! with A_μ = −i[z̄ᵢ∂_μzᵢ − (∂_μz̄ᵢ)zᵢ] and F_μν = ε^{ijk} yᵢ ∂_μyⱼ ∂_νyₖ.
//!
//! Orientation convention: integrals over S³ are reported for the
//! outward-normal orientation (positively-ordered tangent frames have
//! det[x, t₁, t₂, t₃] > 0), which gives the standard map invariant +1.
//! Quadratures correct the coordinate frame by the sign of that
//! determinant per node, so the value does not depend on how the sphere
//! is parametrised, only on the declared orientation.

pub mod deformed;
pub mod fiber;

use crate::algebra::{det4, wedge_density, ComplexPair, OneForm4, Point4, S2Point, TwoForm4};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub use deformed::{deformed_invariant, deformed_map, DeformedGrid, DeformedMapSpec};
pub use fiber::{gauss_linking, linking_integral_r3, preimage_circle, FiberCurve};

/// Tolerance on | |x| − 1 | for points required to lie on S³.
pub const ON_SPHERE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("point is not on the unit 3-sphere (|x| = {norm})")]
    NotOnSphere { norm: f64 },
    #[error("grid resolution too low: {cells} cells per dimension, minimum {min}")]
    ResolutionTooLow { cells: usize, min: usize },
    #[error("curves intersect after projection (min distance {min_dist:e})")]
    CurvesIntersect { min_dist: f64 },
    #[error("stereographic pole lies on a curve")]
    PoleOnCurve,
    #[error("need at least {min} fiber samples, got {n}")]
    TooFewSamples { n: usize, min: usize },
    #[error("invalid deformed-map specification: {0}")]
    InvalidDeformedSpec(String),
}

fn check_on_sphere(x: &Point4) -> Result<(), HopfError> {
    let norm = x.norm();
    if (norm - 1.0).abs() > ON_SPHERE_TOL {
        return Err(HopfError::NotOnSphere { norm });
    }
    Ok(())
}

pub(crate) fn check_unit_s2(y: &S2Point) -> Result<(), HopfError> {
    let norm = y.norm();
    if (norm - 1.0).abs() > ON_SPHERE_TOL {
        return Err(HopfError::NotOnSphere { norm });
    }
    Ok(())
}

/// The Hopf map for a point of S³.
pub fn hopf_map(x: &Point4) -> Result<S2Point, HopfError> {
    check_on_sphere(x)?;
    Ok(hopf_map_unchecked(x))
}

pub(crate) fn hopf_map_unchecked(x: &Point4) -> S2Point {
    let [x1, x2, x3, x4] = x.0;
    S2Point([
        2.0 * (x1 * x3 + x2 * x4),
        2.0 * (x1 * x4 - x2 * x3),
        x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4,
    ])
}

/// ω₁ = 2(x₁dx₂ − x₂dx₁ + x₃dx₄ − x₄dx₃) as a coefficient vector.
pub fn omega1(x: &Point4) -> Result<OneForm4, HopfError> {
    check_on_sphere(x)?;
    let [x1, x2, x3, x4] = x.0;
    Ok(OneForm4([-2.0 * x2, 2.0 * x1, -2.0 * x4, 2.0 * x3]))
}

/// ω₂ = 4(dx₁∧dx₂ + dx₃∧dx₄), the pulled-back S² area form simplified
/// on S³. Constant coefficients; valid as a bilinear form on tangent
/// vectors of the sphere.
pub fn omega2_pullback(x: &Point4) -> Result<TwoForm4, HopfError> {
    check_on_sphere(x)?;
    let mut f = TwoForm4::zero();
    f.set(0, 1, 4.0);
    f.set(2, 3, 4.0);
    Ok(f)
}

/// Which map S³ → S² a quadrature integrates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum S3Map {
    /// The standard Hopf map.
    Hopf,
    /// A constant map; every pullback vanishes.
    Constant,
}

/// Uniform quadrature grid on S³ in Hopf coordinates.
///
/// Nodes are cell centers of a uniform grid in (s, ξ₁, ξ₂) with
/// s = sin²η ∈ [0,1], so every cell has the exact volume
/// Δs/2 · Δξ₁ · Δξ₂ (the Jacobian cos η sin η dη = ½ ds is absorbed
/// exactly). The embedding is z₁ = cos η e^{iξ₁}, z₂ = sin η e^{iξ₂}.
#[derive(Clone, Debug)]
pub struct S3Grid {
    pub n_eta: usize,
    pub n_xi1: usize,
    pub n_xi2: usize,
    /// +1: outward-normal orientation of S³; −1: reversed (equivalent to
    /// swapping the roles of ξ₁ and ξ₂ in the parametrisation).
    orientation: f64,
    workers: usize,
}

/// Embedding data at one grid node.
pub(crate) struct S3Node {
    pub x: Point4,
    pub z: ComplexPair,
    /// ∂z/∂u for u = (s, ξ₁, ξ₂).
    pub dz: [[Complex64; 2]; 3],
    /// Columns ∂x/∂u.
    pub jac: [Point4; 3],
}

impl S3Grid {
    pub fn new(n_eta: usize, n_xi1: usize, n_xi2: usize) -> Self {
        assert!(n_eta > 0 && n_xi1 > 0 && n_xi2 > 0);
        S3Grid {
            n_eta,
            n_xi1,
            n_xi2,
            orientation: 1.0,
            workers: 1,
        }
    }

    /// Cubic grid with `n` cells per dimension.
    pub fn cubic(n: usize) -> Self {
        Self::new(n, n, n)
    }

    /// Same nodes, opposite orientation of S³ (the parametrisation with
    /// the roles of ξ₁ and ξ₂ exchanged).
    pub fn angle_swapped(mut self) -> Self {
        self.orientation = -self.orientation;
        self
    }

    /// Number of worker threads for the quadrature reduction. Results are
    /// bit-stable for a fixed worker count.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn cell_count(&self) -> usize {
        self.n_eta * self.n_xi1 * self.n_xi2
    }

    pub fn min_cells_per_dim(&self) -> usize {
        self.n_eta.min(self.n_xi1).min(self.n_xi2)
    }

    /// Exact volume of one cell (all cells are equal).
    pub fn cell_weight(&self) -> f64 {
        let ds = 1.0 / self.n_eta as f64;
        let dxi1 = 2.0 * PI / self.n_xi1 as f64;
        let dxi2 = 2.0 * PI / self.n_xi2 as f64;
        0.5 * ds * dxi1 * dxi2
    }

    /// Σ weights; equals the S³ surface area 2π² up to round-off.
    pub fn total_weight(&self) -> f64 {
        self.cell_weight() * self.cell_count() as f64
    }

    /// Hopf coordinates (η, ξ₁, ξ₂) of the cell-center node with flat index `idx`.
    pub fn node_coords(&self, idx: usize) -> (f64, f64, f64) {
        let k = idx % self.n_xi2;
        let j = (idx / self.n_xi2) % self.n_xi1;
        let i = idx / (self.n_xi2 * self.n_xi1);
        let s = (i as f64 + 0.5) / self.n_eta as f64;
        let eta = s.sqrt().asin();
        let xi1 = (j as f64 + 0.5) * 2.0 * PI / self.n_xi1 as f64;
        let xi2 = (k as f64 + 0.5) * 2.0 * PI / self.n_xi2 as f64;
        (eta, xi1, xi2)
    }

    pub(crate) fn node(&self, idx: usize) -> S3Node {
        let (eta, xi1, xi2) = self.node_coords(idx);
        let (se, ce) = eta.sin_cos();
        let (s1, c1) = xi1.sin_cos();
        let (s2, c2) = xi2.sin_cos();
        let e1 = Complex64::new(c1, s1);
        let e2 = Complex64::new(c2, s2);
        let z1 = ce * e1;
        let z2 = se * e2;
        let x = Point4([z1.re, z1.im, z2.re, z2.im]);
        // dη/ds = 1/(2 sin η cos η); cell centers keep sin η cos η > 0
        let deta_ds = 1.0 / (2.0 * se * ce);
        let dz_ds = [-se * e1 * deta_ds, ce * e2 * deta_ds];
        let dz_dxi1 = [Complex64::new(0.0, 1.0) * z1, Complex64::new(0.0, 0.0)];
        let dz_dxi2 = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0) * z2];
        let col = |dz: &[Complex64; 2]| Point4([dz[0].re, dz[0].im, dz[1].re, dz[1].im]);
        S3Node {
            x,
            z: ComplexPair { z1, z2 },
            dz: [dz_ds, dz_dxi1, dz_dxi2],
            jac: [col(&dz_ds), col(&dz_dxi1), col(&dz_dxi2)],
        }
    }

    /// Sign relating the coordinate frame (∂u₁, ∂u₂, ∂u₃) at `node` to the
    /// outward-normal orientation, times the grid's declared orientation.
    fn orientation_factor(&self, node: &S3Node) -> f64 {
        let d = det4(&[node.x, node.jac[0], node.jac[1], node.jac[2]]);
        d.signum() * self.orientation
    }

    fn check_resolution(&self) -> Result<(), HopfError> {
        const MIN: usize = 8;
        let cells = self.min_cells_per_dim();
        if cells < MIN {
            return Err(HopfError::ResolutionTooLow { cells, min: MIN });
        }
        Ok(())
    }

    /// Deterministic (fixed chunk order) quadrature Σ f(idx) · cell_weight-free.
    fn sum_over_cells(&self, f: impl Fn(usize) -> f64 + Sync) -> f64 {
        crate::par::chunked_sum(self.cell_count(), self.workers, |range| {
            range.map(&f).sum()
        })
    }

    /// Σ over cells of f(node)·(orientation factor)·Δ³u; the building
    /// block for Chern-Simons pullback quadratures over spheres.
    pub(crate) fn cs_sum_over_nodes(&self, f: impl Fn(&S3Node) -> f64 + Sync) -> f64 {
        let sum = self.sum_over_cells(|idx| {
            let node = self.node(idx);
            f(&node) * self.orientation_factor(&node)
        });
        sum * coordinate_cell_volume(self)
    }
}

/// Hopf invariant by quadrature of ω₁ ∧ ω₂ pulled back to the grid
/// coordinates by the chain rule.
pub fn hopf_invariant_forms(grid: &S3Grid) -> Result<f64, HopfError> {
    hopf_invariant_forms_of(grid, S3Map::Hopf)
}

/// Same quadrature for a chosen map (the constant map integrates to 0).
pub fn hopf_invariant_forms_of(grid: &S3Grid, map: S3Map) -> Result<f64, HopfError> {
    grid.check_resolution()?;
    let sum = grid.sum_over_cells(|idx| {
        let node = grid.node(idx);
        let density = match map {
            S3Map::Constant => 0.0,
            S3Map::Hopf => {
                let a4 = omega1(&node.x).expect("grid nodes lie on S³");
                let f4 = omega2_pullback(&node.x).expect("grid nodes lie on S³");
                // chain rule: a_μ = A·∂x/∂u_μ, f_μν = F(∂x/∂u_μ, ∂x/∂u_ν)
                let a = [
                    a4.pair(&node.jac[0]),
                    a4.pair(&node.jac[1]),
                    a4.pair(&node.jac[2]),
                ];
                let mut f = [[0.0; 3]; 3];
                for m in 0..3 {
                    for n in (m + 1)..3 {
                        let v = f4.bilinear(&node.jac[m], &node.jac[n]);
                        f[m][n] = v;
                        f[n][m] = -v;
                    }
                }
                // ω₁∧ω₂ coefficient = ½ ε_{μνλ} a_μ f_νλ
                0.5 * wedge_density(&a, &f) * grid.orientation_factor(&node)
            }
        };
        density
    });
    let dvol = coordinate_cell_volume(grid);
    Ok(sum * dvol / (16.0 * PI * PI))
}

/// Coordinate cell volume Δs·Δξ₁·Δξ₂ (without the ½ measure factor,
/// which belongs to the forms being integrated).
fn coordinate_cell_volume(grid: &S3Grid) -> f64 {
    (1.0 / grid.n_eta as f64)
        * (2.0 * PI / grid.n_xi1 as f64)
        * (2.0 * PI / grid.n_xi2 as f64)
}

/// Hopf invariant as the Chern-Simons quadrature
/// (1/32π²) ∫ d³u ε_{μνλ} A_μ F_νλ with A from the spinor and F from the
/// unit vector y, both differentiated analytically in grid coordinates.
pub fn hopf_invariant_cs(grid: &S3Grid) -> Result<f64, HopfError> {
    hopf_invariant_cs_shifted(grid, |_, _, _| [0.0; 3])
}

/// Chern-Simons quadrature with A_μ shifted by an analytic pure gradient
/// ∂_μχ, for gauge-invariance checks. `grad_chi` returns ∂χ/∂(s, ξ₁, ξ₂)
/// at the node coordinates (η, ξ₁, ξ₂); χ must be single-valued on S³.
pub fn hopf_invariant_cs_shifted(
    grid: &S3Grid,
    grad_chi: impl Fn(f64, f64, f64) -> [f64; 3] + Sync,
) -> Result<f64, HopfError> {
    grid.check_resolution()?;
    let sum = grid.sum_over_cells(|idx| {
        let node = grid.node(idx);
        let (a, f) = cs_data(&node);
        let (eta, xi1, xi2) = grid.node_coords(idx);
        let dchi = grad_chi(eta, xi1, xi2);
        let a = [a[0] + dchi[0], a[1] + dchi[1], a[2] + dchi[2]];
        wedge_density(&a, &f) * grid.orientation_factor(&node)
    });
    Ok(sum * coordinate_cell_volume(grid) / (32.0 * PI * PI))
}

/// A_μ = −i[z̄ᵢ∂_μzᵢ − (∂_μz̄ᵢ)zᵢ] = 2 Im(z̄ᵢ ∂_μzᵢ) and
/// F_μν = ε^{ijk} yᵢ ∂_μyⱼ ∂_νyₖ at a grid node.
pub(crate) fn cs_data(node: &S3Node) -> ([f64; 3], [[f64; 3]; 3]) {
    let z = [node.z.z1, node.z.z2];
    let mut a = [0.0; 3];
    let mut dy = [[0.0; 3]; 3]; // dy[μ][component]
    let y = hopf_map_unchecked(&node.x);
    for mu in 0..3 {
        let dz = node.dz[mu];
        a[mu] = 2.0 * (z[0].conj() * dz[0] + z[1].conj() * dz[1]).im;
        for c in 0..3 {
            let s = crate::algebra::pauli(c);
            let mut v = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    v += z[i].conj() * s[i][j] * dz[j];
                }
            }
            // ∂yᶜ = (∂z̄)σᶜz + z̄σᶜ(∂z) = 2 Re(z†σᶜ∂z)
            dy[mu][c] = 2.0 * v.re;
        }
    }
    let mut f = [[0.0; 3]; 3];
    for mu in 0..3 {
        for nu in (mu + 1)..3 {
            // y · (∂_μ y × ∂_ν y)
            let u = dy[mu];
            let v = dy[nu];
            let cx = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let val = y.0[0] * cx[0] + y.0[1] * cx[1] + y.0[2] * cx[2];
            f[mu][nu] = val;
            f[nu][mu] = -val;
        }
    }
    (a, f)
}
