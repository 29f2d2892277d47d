//! Unbroken-U(1) quantities at (and near) the spatial boundary.
//!
//! With ζᵢ = zᵢ/r the unit spinor, the topologically nontrivial part of
//! the U(1) potential is
//!
//!   A⁽²⁾_μ = −i[ζ̄ᵢ ∂_μζᵢ − (∂_μζ̄ᵢ) ζᵢ] = (2/r²)(−x₂, x₁, −x₄, x₃),
//!
//! whose exterior derivative carries one unit of Hopf flux; restricted to
//! a sphere it coincides with the ω₁/ω₂ pair of the Hopf map. The
//! trivial part A⁽¹⁾_μ = Aᵃ_μ mᵃ vanishes identically for the ansatz
//! (the gauge field is perpendicular to the vacuum direction), so
//! 𝓐 = A⁽¹⁾ + A⁽²⁾ and 𝓕 = d𝓐 are profile independent.
//!
//! Sign note: the U(1) projection of the non-Abelian field strength,
//! Fᵃ_μν mᵃ, approaches −d𝓐 at the boundary: the large-gauge ansatz has
//! Fᵃ_μν = −mᵃ ε_{bcd} m^b ∂_μm^c ∂_νm^d at g = 1, which restricts to
//! minus the pulled-back area form. Both objects are exposed; the
//! Chern-Simons boundary integral of (𝓐, d𝓐) is +1.

use super::{check_radius, eval_fields, field_strength_analytic, FieldError, RadialProfile};
use crate::algebra::{wedge_density, OneForm4, Point4, TwoForm4};
use crate::hopf::S3Grid;
use std::f64::consts::PI;

/// U(1) data at one point.
#[derive(Clone, Debug)]
pub struct BoundaryU1Sample {
    /// 𝓐 = A⁽¹⁾ + A⁽²⁾
    pub a_u1: OneForm4,
    /// 𝓕 = d𝓐 (analytic)
    pub f_u1: TwoForm4,
    /// A⁽¹⁾_μ = Aᵃ_μ mᵃ (zero for the ansatz, kept as a diagnostic)
    pub a1: OneForm4,
    /// A⁽²⁾_μ from the unit spinor
    pub a2: OneForm4,
    /// ζ = z/r as a 4-vector of real components (z₁.re, z₁.im, z₂.re, z₂.im)
    pub zeta: Point4,
}

/// Evaluate 𝓐 and 𝓕 at `x`.
pub fn boundary_u1(x: &Point4, prof: &RadialProfile) -> Result<BoundaryU1Sample, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let sample = eval_fields(x, prof)?;
    let r2 = r * r;
    let [x1, x2, x3, x4] = x.0;
    // A⁽²⁾ = 2 Im(ζ̄ᵢ∂_μζᵢ) = (2/r²)(−x₂, x₁, −x₄, x₃)
    let v = [-x2, x1, -x4, x3];
    let a2 = OneForm4([2.0 * v[0] / r2, 2.0 * v[1] / r2, 2.0 * v[2] / r2, 2.0 * v[3] / r2]);
    let mut a1 = OneForm4([0.0; 4]);
    for mu in 0..4 {
        a1.0[mu] = sample.a_real[mu].dot(&sample.m);
    }
    let a_u1 = OneForm4([
        a1.0[0] + a2.0[0],
        a1.0[1] + a2.0[1],
        a1.0[2] + a2.0[2],
        a1.0[3] + a2.0[3],
    ]);
    // 𝓕 = dA⁽²⁾ analytically (dA⁽¹⁾ = 0 since A⁽¹⁾ ≡ 0 for the ansatz):
    // ∂_μ(2 v_ν/r²) antisymmetrised, with ∂v encoded by the constant
    // pairing (1↔2, 3↔4)
    let mut f_u1 = TwoForm4::zero();
    let pair = |mu: usize, nu: usize| -> f64 {
        // (J_{μν} − J_{νμ}) for v = (−x₂, x₁, −x₄, x₃)
        match (mu, nu) {
            (0, 1) => 2.0,
            (2, 3) => 2.0,
            _ => 0.0,
        }
    };
    let r4 = r2 * r2;
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let val = 2.0 * pair(mu, nu) / r2
                - 4.0 * (v[nu] * x.0[mu] - v[mu] * x.0[nu]) / r4;
            f_u1.set(mu, nu, val);
        }
    }
    Ok(BoundaryU1Sample {
        a_u1,
        f_u1,
        a1,
        a2,
        zeta: Point4([x1 / r, x2 / r, x3 / r, x4 / r]),
    })
}

/// The U(1)-projected non-Abelian field strength Fᵃ_μν mᵃ; equals −𝓕 of
/// [`boundary_u1`] wherever g = 1.
pub fn u1_projected_field_strength(
    x: &Point4,
    prof: &RadialProfile,
) -> Result<TwoForm4, FieldError> {
    Ok(field_strength_analytic(x, prof)?.project_m())
}

/// Hopf number of the boundary configuration: Chern-Simons quadrature
/// (1/32π²) ∫ d³u ε_{μνλ} 𝓐_μ 𝓕_νλ over the radius-R sphere.
pub fn boundary_hopf_number(
    prof: &RadialProfile,
    grid: &S3Grid,
    radius: f64,
) -> Result<f64, FieldError> {
    let defect = (prof.g(radius) - 1.0).abs();
    if defect >= 1e-3 {
        return Err(FieldError::BoundaryNotAsymptotic { radius, defect });
    }
    Ok(u1_cs_quadrature(grid, |x| {
        let s = boundary_u1(x, prof).expect("grid nodes are away from the origin");
        (s.a_u1, s.f_u1)
    }, radius))
}

/// Same quadrature for the exact asymptotic potential A⁽²⁾ (profile free),
/// evaluated on the unit sphere.
pub fn asymptotic_hopf_number(grid: &S3Grid) -> f64 {
    u1_cs_quadrature(
        grid,
        |x| {
            let r2 = x.norm().powi(2);
            let [x1, x2, x3, x4] = x.0;
            let v = [-x2, x1, -x4, x3];
            let a = OneForm4([
                2.0 * v[0] / r2,
                2.0 * v[1] / r2,
                2.0 * v[2] / r2,
                2.0 * v[3] / r2,
            ]);
            let mut f = TwoForm4::zero();
            let r4 = r2 * r2;
            for mu in 0..4 {
                for nu in (mu + 1)..4 {
                    let j = match (mu, nu) {
                        (0, 1) | (2, 3) => 2.0,
                        _ => 0.0,
                    };
                    f.set(
                        mu,
                        nu,
                        2.0 * j / r2 - 4.0 * (v[nu] * x.0[mu] - v[mu] * x.0[nu]) / r4,
                    );
                }
            }
            (a, f)
        },
        1.0,
    )
}

fn u1_cs_quadrature(
    grid: &S3Grid,
    fields: impl Fn(&Point4) -> (OneForm4, TwoForm4) + Sync,
    radius: f64,
) -> f64 {
    let sum = grid.cs_sum_over_nodes(|node| {
        let x_r = node.x.scale(radius);
        let (a4, f4) = fields(&x_r);
        // pull back through the scaled embedding X = R·x(u)
        let jac = [
            node.jac[0].scale(radius),
            node.jac[1].scale(radius),
            node.jac[2].scale(radius),
        ];
        let a = [a4.pair(&jac[0]), a4.pair(&jac[1]), a4.pair(&jac[2])];
        let mut f = [[0.0; 3]; 3];
        for m in 0..3 {
            for n in (m + 1)..3 {
                let v = f4.bilinear(&jac[m], &jac[n]);
                f[m][n] = v;
                f[n][m] = -v;
            }
        }
        wedge_density(&a, &f)
    });
    sum / (32.0 * PI * PI)
}
