//! Yang-Mills-Higgs ansatz fields built from radial profiles.
//!
//! The vacuum direction is the unit adjoint field
//! mᵃ(x) = z̄ᵢ σᵃ_{ij} zⱼ / r², and the ansatz reads
//!
//!   φᵃ = f(r) mᵃ,   Aᵃ_k = −i ∂_k mᵃ g(r),   Āᵃ_k = i ∂̄_k mᵃ g(r),
//!
//! in complex coordinates z₁ = x₁ + i x₂, z₂ = x₃ + i x₄ with
//! ∂_k = ∂/∂z_k. The first derivatives of m are
//!
//!   ∂̄_k mᵃ = (σᵃ_{kj} zⱼ − mᵃ z_k)/r²,
//!   ∂_k mᵃ = (σᵃ_{jk} z̄ⱼ − mᵃ z̄_k)/r²,
//!
//! and the covariant derivative collapses to
//!
//!   D̄_kφᵃ = ∂̄_k mᵃ f(1−g) + mᵃ z_k f′/(2r).
//!
//! Units: v = e = 1 throughout.

pub mod boundary;
pub mod identities;
pub mod profile;
pub mod strength;

pub use boundary::{boundary_hopf_number, boundary_u1, BoundaryU1Sample};
pub use profile::RadialProfile;
pub use strength::{field_strength_analytic, field_strength_numeric, FieldStrengthSample};

use crate::algebra::{Adjoint, AdjointVector, AdjointVectorC, ComplexPair, Point4};
use num_complex::Complex64;
use thiserror::Error;

/// Points closer to the origin than this are rejected; densities there
/// are reconstructed from their known r³·(bounded) limits instead.
pub const R_MIN: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("point too close to the m-field singularity at the origin (r = {r:e})")]
    OriginSingular { r: f64 },
    #[error("cutoff r_c = {r_c} exceeds the profile mesh (r_max = {r_max})")]
    CutoffExceedsMesh { r_c: f64, r_max: f64 },
    #[error("profile is not asymptotic at R = {radius}: |g(R) - 1| = {defect:e}")]
    BoundaryNotAsymptotic { radius: f64, defect: f64 },
    #[error("finite-difference step {h:e} is invalid at r = {r:e}")]
    BadStep { h: f64, r: f64 },
}

/// Model couplings. The vev and gauge coupling are fixed to one; only the
/// quartic coupling λ varies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub lambda: f64,
}

impl ModelParams {
    pub const V: f64 = 1.0;
    pub const E: f64 = 1.0;

    pub fn new(lambda: f64) -> Self {
        assert!(lambda > 0.0, "quartic coupling must be positive");
        ModelParams { lambda }
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { lambda: 1.0 }
    }
}

fn check_radius(r: f64) -> Result<(), FieldError> {
    if r < R_MIN {
        return Err(FieldError::OriginSingular { r });
    }
    Ok(())
}

/// The unit vacuum direction mᵃ(x); scale invariant, m(cx) = m(x).
pub fn m_field(x: &Point4) -> Result<AdjointVector, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let z = ComplexPair::from_point4(x);
    let r2 = z.norm_sq();
    // m¹ + i m² = 2 z̄₁ z₂, m³ = (|z₁|² − |z₂|²)
    let w = z.z1.conj() * z.z2;
    Ok(Adjoint([
        2.0 * w.re / r2,
        2.0 * w.im / r2,
        (z.z1.norm_sqr() - z.z2.norm_sqr()) / r2,
    ]))
}

/// First derivatives of m in complex coordinates: (∂₁m, ∂₂m, ∂̄₁m, ∂̄₂m).
pub struct MDerivatives {
    pub holo: [AdjointVectorC; 2],
    pub antiholo: [AdjointVectorC; 2],
}

pub fn m_derivatives(x: &Point4) -> Result<MDerivatives, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let z = ComplexPair::from_point4(x);
    let m = m_field(x)?;
    let r2 = z.norm_sq();
    let zv = [z.z1, z.z2];
    let mut holo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    let mut antiholo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    for k in 0..2 {
        for a in 0..3 {
            let s = crate::algebra::pauli(a);
            // ∂̄_k mᵃ = (σᵃ_{kj} z_j − mᵃ z_k)/r²
            let num_bar = s[k][0] * zv[0] + s[k][1] * zv[1] - m.0[a] * zv[k];
            antiholo[k].0[a] = num_bar / r2;
            // ∂_k mᵃ = (σᵃ_{jk} z̄_j − mᵃ z̄_k)/r²
            let num = s[0][k] * zv[0].conj() + s[1][k] * zv[1].conj() - m.0[a] * zv[k].conj();
            holo[k].0[a] = num / r2;
        }
    }
    Ok(MDerivatives { holo, antiholo })
}

/// The ansatz fields evaluated at one point.
#[derive(Clone, Debug)]
pub struct FieldSample {
    pub x: Point4,
    pub r: f64,
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub g_prime: f64,
    /// unit vacuum direction mᵃ
    pub m: AdjointVector,
    /// φᵃ = f mᵃ
    pub phi: AdjointVector,
    /// real-index gauge field Aᵃ_μ, μ = 1..4 (0-based storage)
    pub a_real: [AdjointVector; 4],
    /// complex-index components Aᵃ_{z_k}
    pub a_holo: [AdjointVectorC; 2],
    /// Āᵃ_{z̄_k}
    pub a_antiholo: [AdjointVectorC; 2],
}

/// Evaluate φ and A from the profile at `x`.
pub fn eval_fields(x: &Point4, prof: &RadialProfile) -> Result<FieldSample, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let dm = m_derivatives(x)?;
    let m = m_field(x)?;
    let (f, g) = (prof.f(r), prof.g(r));
    let (fp, gp) = (prof.f_prime(r), prof.g_prime(r));
    let mut a_holo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    let mut a_antiholo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    for k in 0..2 {
        for a in 0..3 {
            a_holo[k].0[a] = -crate::algebra::I * dm.holo[k].0[a] * g;
            a_antiholo[k].0[a] = crate::algebra::I * dm.antiholo[k].0[a] * g;
        }
    }
    // A_1 = 2 Re A_{z1}, A_2 = −2 Im A_{z1}, similarly for (3,4) with z2
    let mut a_real = [Adjoint([0.0; 3]); 4];
    for a in 0..3 {
        a_real[0].0[a] = 2.0 * a_holo[0].0[a].re;
        a_real[1].0[a] = -2.0 * a_holo[0].0[a].im;
        a_real[2].0[a] = 2.0 * a_holo[1].0[a].re;
        a_real[3].0[a] = -2.0 * a_holo[1].0[a].im;
    }
    Ok(FieldSample {
        x: *x,
        r,
        f,
        g,
        f_prime: fp,
        g_prime: gp,
        m,
        phi: Adjoint([f * m.0[0], f * m.0[1], f * m.0[2]]),
        a_real,
        a_holo,
        a_antiholo,
    })
}

/// Covariant derivative of φ in complex indices.
#[derive(Clone, Debug)]
pub struct CovariantDerivative {
    /// D_kφᵃ = ∂_k mᵃ f(1−g) + mᵃ z̄_k f′/(2r)
    pub holo: [AdjointVectorC; 2],
    /// D̄_kφᵃ = ∂̄_k mᵃ f(1−g) + mᵃ z_k f′/(2r)
    pub antiholo: [AdjointVectorC; 2],
}

impl CovariantDerivative {
    /// D_μφᵃ (D_μφᵃ)† = 4 Σ_k D̄_kφᵃ D_kφᵃ; equals 8f²(1−g)²/r² + f′².
    pub fn kinetic_contraction(&self) -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..2 {
            s += self.antiholo[k].dot(&self.holo[k]);
        }
        4.0 * s.re
    }
}

pub fn covariant_derivative(
    x: &Point4,
    prof: &RadialProfile,
) -> Result<CovariantDerivative, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let dm = m_derivatives(x)?;
    let m = m_field(x)?;
    let z = ComplexPair::from_point4(x);
    let zv = [z.z1, z.z2];
    let (f, g, fp) = (prof.f(r), prof.g(r), prof.f_prime(r));
    let mut holo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    let mut antiholo = [Adjoint([Complex64::new(0.0, 0.0); 3]); 2];
    for k in 0..2 {
        for a in 0..3 {
            holo[k].0[a] = dm.holo[k].0[a] * f * (1.0 - g)
                + m.0[a] * zv[k].conj() * fp / (2.0 * r);
            antiholo[k].0[a] =
                dm.antiholo[k].0[a] * f * (1.0 - g) + m.0[a] * zv[k] * fp / (2.0 * r);
        }
    }
    Ok(CovariantDerivative { holo, antiholo })
}

/// Radial action density split into its three pieces, each already
/// multiplied by the measure r³:
///
///   kinetic   = r³ (4f²(1−g)²/r² + f′²/2)
///   gauge     = r³ · 4 (2(2g−g²)²/r⁴ + g′²/r²)
///   potential = r³ λ (f²−1)²
#[derive(Clone, Copy, Debug, Default)]
pub struct ActionDensity {
    pub kinetic: f64,
    pub gauge: f64,
    pub potential: f64,
}

impl ActionDensity {
    pub fn total(&self) -> f64 {
        self.kinetic + self.gauge + self.potential
    }
}

pub fn action_density_split(
    r: f64,
    prof: &RadialProfile,
    params: &ModelParams,
) -> Result<ActionDensity, FieldError> {
    check_radius(r)?;
    let (f, g) = (prof.f(r), prof.g(r));
    let (fp, gp) = (prof.f_prime(r), prof.g_prime(r));
    let r3 = r * r * r;
    let w = 2.0 * g - g * g;
    Ok(ActionDensity {
        kinetic: r3 * (4.0 * f * f * (1.0 - g) * (1.0 - g) / (r * r) + 0.5 * fp * fp),
        gauge: r3 * 4.0 * (2.0 * w * w / (r3 * r) + gp * gp / (r * r)),
        potential: r3 * params.lambda * (f * f - 1.0) * (f * f - 1.0),
    })
}

/// Total radial action density r³·[4f²(1−g)²/r² + f′²/2 + 4(2(2g−g²)²/r⁴ + g′²/r²) + λ(f²−1)²].
pub fn action_density(r: f64, prof: &RadialProfile, params: &ModelParams) -> Result<f64, FieldError> {
    Ok(action_density_split(r, prof, params)?.total())
}

/// S(r_c) = ∫ action_density dr from the first mesh point up to r_c by
/// composite Simpson quadrature. For solver profiles the mesh starts at
/// r = 0, where the density vanishes like r³·(bounded) and is evaluated
/// as its limit 0.
pub fn action_total(
    prof: &RadialProfile,
    params: &ModelParams,
    r_c: f64,
) -> Result<f64, FieldError> {
    let r_max = prof.r_max();
    if r_c > r_max * (1.0 + 1e-12) {
        return Err(FieldError::CutoffExceedsMesh { r_c, r_max });
    }
    let r_lo = prof.radii()[0];
    let nodes_below = prof.radii().iter().filter(|&&r| r <= r_c).count();
    let mut n = (4 * nodes_below).max(2048);
    if n % 2 == 1 {
        n += 1;
    }
    let h = (r_c - r_lo) / n as f64;
    let eval = |r: f64| -> f64 {
        if r < R_MIN {
            0.0
        } else {
            action_density(r, prof, params).expect("r >= R_MIN")
        }
    };
    let mut sum = eval(r_lo) + eval(r_c);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * eval(r_lo + i as f64 * h);
    }
    Ok(sum * h / 3.0)
}

/// The pointwise θ-term densities:
/// ε_{μνλρ} Fᵃ_μν Fᵃ_λρ (vanishes identically for the ansatz) and
/// ε_{μνλρ} 𝓕_μν 𝓕_λρ built from the U(1) projection 𝓕_μν = Fᵃ_μν mᵃ.
pub fn theta_densities(x: &Point4, prof: &RadialProfile) -> Result<(f64, f64), FieldError> {
    let fs = field_strength_analytic(x, prof)?;
    let mut fwf = 0.0;
    for a in 0..3 {
        fwf += crate::algebra::eps_contract(&fs.real[a], &fs.real[a]);
    }
    let proj = fs.project_m();
    let curly = crate::algebra::eps_contract(&proj, &proj);
    Ok((fwf, curly))
}
