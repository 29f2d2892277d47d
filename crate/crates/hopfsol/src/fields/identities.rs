//! Runtime verification of the algebraic identities satisfied by the
//! vacuum direction mᵃ and its derivatives. Each check evaluates both
//! sides from independent expressions and reports the largest residual.

use super::{check_radius, m_derivatives, m_field, FieldError};
use crate::algebra::{Adjoint, AdjointVectorC, ComplexPair, Point4, I};
use num_complex::Complex64;

/// One identity with the largest residual found at the probe point.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_residual: f64,
}

/// ∂_i∂̄_j mᵃ from the direct product-rule expansion of the first
/// derivatives (not the contracted closed form, which is what gets
/// verified against this).
fn second_derivative_direct(x: &Point4) -> [[AdjointVectorC; 2]; 2] {
    let z = ComplexPair::from_point4(x);
    let zv = [z.z1, z.z2];
    let m = m_field(x).expect("caller checked radius");
    let r2 = z.norm_sq();
    let r4 = r2 * r2;
    let zero = Adjoint([Complex64::new(0.0, 0.0); 3]);
    let mut out = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..3 {
                let s = crate::algebra::pauli(a);
                let mut v = s[j][i] / r2;
                let mut szk = Complex64::new(0.0, 0.0);
                let mut skz = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    szk += s[j][k] * zv[k];
                    skz += s[k][i] * zv[k].conj();
                }
                v -= szk * zv[i].conj() / r4;
                v -= skz * zv[j] / r4;
                v += 2.0 * m.0[a] * zv[i].conj() * zv[j] / r4;
                let delta = if i == j { 1.0 } else { 0.0 };
                v -= m.0[a] * delta / r2;
                out[i][j].0[a] = v;
            }
        }
    }
    out
}

/// Evaluate all m-field identities at `x` and report per-identity
/// residuals.
pub fn verify_m_identities(x: &Point4) -> Result<Vec<IdentityCheck>, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let z = ComplexPair::from_point4(x);
    let zv = [z.z1, z.z2];
    let m = m_field(x)?;
    let mc = m.to_complex();
    let dm = m_derivatives(x)?;
    let r2 = z.norm_sq();
    let r4 = r2 * r2;
    let d2 = second_derivative_direct(x);
    let mut checks = Vec::new();

    // ∂_i mᵃ = −i ε^{abc} m^b ∂_i m^c and the conjugate relation
    let mut res: f64 = 0.0;
    for k in 0..2 {
        let cross = mc.cross(&dm.holo[k]);
        let cross_bar = mc.cross(&dm.antiholo[k]);
        for a in 0..3 {
            res = res.max((dm.holo[k].0[a] + I * cross.0[a]).norm());
            res = res.max((dm.antiholo[k].0[a] - I * cross_bar.0[a]).norm());
        }
    }
    checks.push(IdentityCheck {
        name: "first derivative as cross product",
        max_residual: res,
    });

    // z_i = mᵃ σᵃ_{ij} z_j and the conjugate
    let mut res: f64 = 0.0;
    for i in 0..2 {
        let mut lhs = Complex64::new(0.0, 0.0);
        let mut lhs_bar = Complex64::new(0.0, 0.0);
        for a in 0..3 {
            let s = crate::algebra::pauli(a);
            for j in 0..2 {
                lhs += m.0[a] * s[i][j] * zv[j];
                lhs_bar += zv[j].conj() * m.0[a] * s[j][i];
            }
        }
        res = res.max((lhs - zv[i]).norm());
        res = res.max((lhs_bar - zv[i].conj()).norm());
    }
    checks.push(IdentityCheck {
        name: "spinor eigenrelation of m",
        max_residual: res,
    });

    // ∂_i m · ∂_j m = 0 (holomorphic pairs vanish; same for conjugates)
    let mut res: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            res = res.max(dm.holo[i].dot(&dm.holo[j]).norm());
            res = res.max(dm.antiholo[i].dot(&dm.antiholo[j]).norm());
        }
    }
    checks.push(IdentityCheck {
        name: "holomorphic derivative products vanish",
        max_residual: res,
    });

    // ∂_i m · ∂̄_j m = 2(r²δ_{ij} − z̄_i z_j)/r⁴
    let mut res: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { r2 } else { 0.0 };
            let want = 2.0 * (Complex64::new(delta, 0.0) - zv[i].conj() * zv[j]) / r4;
            res = res.max((dm.holo[i].dot(&dm.antiholo[j]) - want).norm());
        }
    }
    checks.push(IdentityCheck {
        name: "mixed derivative product",
        max_residual: res,
    });

    // trace: ∂_i m · ∂̄_i m = 2/r²
    let trace = dm.holo[0].dot(&dm.antiholo[0]) + dm.holo[1].dot(&dm.antiholo[1]);
    checks.push(IdentityCheck {
        name: "mixed derivative trace 2/r²",
        max_residual: (trace - Complex64::new(2.0 / r2, 0.0)).norm(),
    });

    // ε^{abc} m^b ∂_i∂̄_j m^c = 0
    let mut res: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let cross = mc.cross(&d2[i][j]);
            for a in 0..3 {
                res = res.max(cross.0[a].norm());
            }
        }
    }
    checks.push(IdentityCheck {
        name: "m × second derivative vanishes",
        max_residual: res,
    });

    // ∂_i∂̄_j mᵃ = −2(r²δ_{ij} − z̄_i z_j) mᵃ / r⁴
    let mut res: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { r2 } else { 0.0 };
            let coeff = -2.0 * (Complex64::new(delta, 0.0) - zv[i].conj() * zv[j]) / r4;
            for a in 0..3 {
                res = res.max((d2[i][j].0[a] - coeff * m.0[a]).norm());
            }
        }
    }
    checks.push(IdentityCheck {
        name: "second derivative closed form",
        max_residual: res,
    });

    // ε^{abc} m^a ∂_i m^b ∂_j m^c = 0 (and conjugate)
    let mut res: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            res = res.max(mc.dot(&dm.holo[i].cross(&dm.holo[j])).norm());
            res = res.max(mc.dot(&dm.antiholo[i].cross(&dm.antiholo[j])).norm());
        }
    }
    checks.push(IdentityCheck {
        name: "m-parallel derivative wedge vanishes",
        max_residual: res,
    });

    Ok(checks)
}

/// Largest residual across all identities at `x`.
pub fn max_identity_residual(x: &Point4) -> Result<f64, FieldError> {
    Ok(verify_m_identities(x)?
        .iter()
        .map(|c| c.max_residual)
        .fold(0.0, f64::max))
}
