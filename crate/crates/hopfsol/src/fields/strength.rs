//! Field strength of the ansatz gauge field, in complex and real indices.
//!
//! Closed forms (Δ_{ij} = r²δ_{ij} − z̄_i z_j):
//!
//!   Fᵃ_{i j̄} = 2i Δ_{ij} mᵃ (g² − 2g)/r⁴ + Cᵃ_{i j̄} g′,
//!   Cᵃ_{i j̄} = i [z̄_i ∂̄_j mᵃ + z_j ∂_i mᵃ]/(2r),
//!   Fᵃ_{ij}  = −i (z̄_i ∂_j mᵃ − z̄_j ∂_i mᵃ) g′/(2r),
//!   Fᵃ_{ī j̄} = +i (z_i ∂̄_j mᵃ − z_j ∂̄_i mᵃ) g′/(2r),
//!
//! with C traceless (C_{i ī} = 0) and perpendicular to the vacuum
//! direction (mᵃ Cᵃ_{i j̄} = 0). Real components follow from
//!
//!   F_{z₁,z̄₁} = (i/2) F₁₂,   F_{z₂,z̄₂} = (i/2) F₃₄,
//!   F_{z₁,z₂}  = ¼ (F₁₃ − F₂₄ − iF₁₄ − iF₂₃),
//!   F_{z₁,z̄₂} = ¼ (F₁₃ + F₂₄ + iF₁₄ − iF₂₃).

use super::{check_radius, eval_fields, m_derivatives, m_field, FieldError, RadialProfile};
use crate::algebra::{Adjoint, AdjointVector, AdjointVectorC, ComplexPair, Point4, TwoForm4, I};
use num_complex::Complex64;

/// The field strength at one point: complex-index components, the g′
/// coefficient tensor C, and the real-index components per adjoint index.
#[derive(Clone, Debug)]
pub struct FieldStrengthSample {
    /// Fᵃ_{z_i z̄_j}, indexed `mixed[i][j]`
    pub mixed: [[AdjointVectorC; 2]; 2],
    /// Fᵃ_{z₁ z₂}
    pub holo: AdjointVectorC,
    /// Fᵃ_{z̄₁ z̄₂}
    pub antiholo: AdjointVectorC,
    /// Cᵃ_{i j̄}
    pub c_tensor: [[AdjointVectorC; 2]; 2],
    /// Fᵃ_{μν} with real indices, one 2-form per adjoint component
    pub real: [TwoForm4; 3],
    /// unit vacuum direction at the point
    pub m: AdjointVector,
}

impl FieldStrengthSample {
    /// Fᵃ_{ī j} Fᵃ_{i j̄} = Σ |Fᵃ_{i j̄}|²; equals 4(2g−g²)²/r⁴ + g′²/r².
    pub fn mixed_contraction(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..3 {
                    s += self.mixed[i][j].0[a].norm_sqr();
                }
            }
        }
        s
    }

    /// Fᵃ_{ī j̄} Fᵃ_{ij} = 2 Σ_a |Fᵃ_{z₁z₂}|²; equals g′²/r².
    pub fn holo_contraction(&self) -> f64 {
        let mut s = 0.0;
        for a in 0..3 {
            s += self.holo.0[a].norm_sqr();
        }
        2.0 * s
    }

    /// Σ_{μν} Fᵃ_{μν} Fᵃ_{μν} = 8 Σ (F_{i j̄}F_{ī j} + F_{ī j̄}F_{ij}).
    pub fn f_squared_total(&self) -> f64 {
        8.0 * (self.mixed_contraction() + self.holo_contraction())
    }

    /// The unbroken-U(1) projection 𝓕_μν = Fᵃ_μν mᵃ.
    pub fn project_m(&self) -> TwoForm4 {
        let mut out = TwoForm4::zero();
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let mut v = 0.0;
                for a in 0..3 {
                    v += self.real[a].get(mu, nu) * self.m.0[a];
                }
                out.set(mu, nu, v);
            }
        }
        out
    }
}

/// Real-index 2-form from its complex-index components.
pub fn real_from_complex(
    f_z1zb1: Complex64,
    f_z2zb2: Complex64,
    f_z1z2: Complex64,
    f_z1zb2: Complex64,
) -> TwoForm4 {
    let mut f = TwoForm4::zero();
    f.set(0, 1, 2.0 * f_z1zb1.im);
    f.set(2, 3, 2.0 * f_z2zb2.im);
    let s = f_z1z2 + f_z1zb2;
    let d = f_z1zb2 - f_z1z2;
    f.set(0, 2, 2.0 * s.re);
    f.set(1, 2, -2.0 * s.im);
    f.set(1, 3, 2.0 * d.re);
    f.set(0, 3, 2.0 * d.im);
    f
}

/// Complex components (F_{z₁z̄₁}, F_{z₂z̄₂}, F_{z₁z₂}, F_{z₁z̄₂}) of a real
/// 2-form; inverse of [`real_from_complex`].
pub fn complex_from_real(f: &TwoForm4) -> (Complex64, Complex64, Complex64, Complex64) {
    let f_z1zb1 = I * 0.5 * f.get(0, 1);
    let f_z2zb2 = I * 0.5 * f.get(2, 3);
    let f_z1z2 = 0.25
        * Complex64::new(
            f.get(0, 2) - f.get(1, 3),
            -(f.get(0, 3) + f.get(1, 2)),
        );
    let f_z1zb2 = 0.25
        * Complex64::new(
            f.get(0, 2) + f.get(1, 3),
            f.get(0, 3) - f.get(1, 2),
        );
    (f_z1zb1, f_z2zb2, f_z1z2, f_z1zb2)
}

/// Analytic field strength of the ansatz at `x`.
pub fn field_strength_analytic(
    x: &Point4,
    prof: &RadialProfile,
) -> Result<FieldStrengthSample, FieldError> {
    let r = x.norm();
    check_radius(r)?;
    let z = ComplexPair::from_point4(x);
    let zv = [z.z1, z.z2];
    let m = m_field(x)?;
    let dm = m_derivatives(x)?;
    let (g, gp) = (prof.g(r), prof.g_prime(r));
    let r2 = r * r;
    let r4 = r2 * r2;
    let zero = Adjoint([Complex64::new(0.0, 0.0); 3]);
    let mut mixed = [[zero; 2]; 2];
    let mut c_tensor = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { r2 } else { 0.0 };
            let dij = Complex64::new(delta, 0.0) - zv[i].conj() * zv[j];
            let k_m = 2.0 * I * dij * (g * g - 2.0 * g) / r4;
            for a in 0..3 {
                let c = I * (zv[i].conj() * dm.antiholo[j].0[a] + zv[j] * dm.holo[i].0[a])
                    / (2.0 * r);
                c_tensor[i][j].0[a] = c;
                mixed[i][j].0[a] = k_m * m.0[a] + c * gp;
            }
        }
    }
    let mut holo = zero;
    let mut antiholo = zero;
    for a in 0..3 {
        holo.0[a] = -I * (zv[0].conj() * dm.holo[1].0[a] - zv[1].conj() * dm.holo[0].0[a]) * gp
            / (2.0 * r);
        antiholo.0[a] =
            I * (zv[0] * dm.antiholo[1].0[a] - zv[1] * dm.antiholo[0].0[a]) * gp / (2.0 * r);
    }
    let mut real = [TwoForm4::zero(); 3];
    for a in 0..3 {
        real[a] = real_from_complex(
            mixed[0][0].0[a],
            mixed[1][1].0[a],
            holo.0[a],
            mixed[0][1].0[a],
        );
    }
    Ok(FieldStrengthSample {
        mixed,
        holo,
        antiholo,
        c_tensor,
        real,
        m,
    })
}

/// Finite-difference field strength
/// Fᵃ_μν = ∂_μAᵃ_ν − ∂_νAᵃ_μ + ε^{abc} A^b_μ A^c_ν with central
/// differences of step `h` for the derivatives; the oracle for the
/// analytic route.
pub fn field_strength_numeric(
    x: &Point4,
    prof: &RadialProfile,
    h: f64,
) -> Result<[TwoForm4; 3], FieldError> {
    let r = x.norm();
    check_radius(r)?;
    if !(h > 0.0) || r < super::R_MIN + h {
        return Err(FieldError::BadStep { h, r });
    }
    let center = eval_fields(x, prof)?;
    // da[mu][nu] = ∂_μ Aᵃ_ν
    let mut da = [[Adjoint([0.0; 3]); 4]; 4];
    for mu in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp.0[mu] += h;
        xm.0[mu] -= h;
        let sp = eval_fields(&xp, prof)?;
        let sm = eval_fields(&xm, prof)?;
        for nu in 0..4 {
            for a in 0..3 {
                da[mu][nu].0[a] = (sp.a_real[nu].0[a] - sm.a_real[nu].0[a]) / (2.0 * h);
            }
        }
    }
    let mut out = [TwoForm4::zero(); 3];
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let comm = center.a_real[mu].cross(&center.a_real[nu]);
            for a in 0..3 {
                let v = da[mu][nu].0[a] - da[nu][mu].0[a] + comm.0[a];
                out[a].set(mu, nu, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil;
    use approx::assert_abs_diff_eq;

    fn smooth_profile() -> RadialProfile {
        RadialProfile::from_fn(
            60.0,
            3001,
            |r| r * r / (1.0 + r * r),
            |r| (0.7 * r).tanh().powi(2),
        )
    }

    #[test]
    fn vanishes_for_trivial_gauge_field() {
        let zeros = RadialProfile::constant(0.0, 10.0, 101);
        let fs = field_strength_analytic(&Point4([0.4, 0.3, 0.2, 0.1]), &zeros).unwrap();
        for a in 0..3 {
            assert_eq!(fs.real[a].max_abs(), 0.0);
        }
        assert_eq!(fs.holo.max_abs(), 0.0);
    }

    #[test]
    fn c_tensor_is_traceless_and_perpendicular_to_m() {
        let prof = smooth_profile();
        let mut rng = testutil::rng(71);
        for _ in 0..100 {
            let x = testutil::point_in_shell(&mut rng, 0.4, 4.4);
            let fs = field_strength_analytic(&x, &prof).unwrap();
            for a in 0..3 {
                let trace = fs.c_tensor[0][0].0[a] + fs.c_tensor[1][1].0[a];
                assert!(trace.norm() < 1e-12, "C trace {:e}", trace.norm());
            }
            for i in 0..2 {
                for j in 0..2 {
                    let along_m = fs.c_tensor[i][j].dot(&fs.m.to_complex());
                    assert!(along_m.norm() < 1e-12, "m·C = {:e}", along_m.norm());
                }
            }
        }
    }

    #[test]
    fn mixed_contraction_closed_form() {
        let prof = smooth_profile();
        let mut rng = testutil::rng(73);
        for _ in 0..100 {
            let x = testutil::point_in_shell(&mut rng, 0.4, 4.4);
            let r = x.norm();
            let fs = field_strength_analytic(&x, &prof).unwrap();
            let (g, gp) = (prof.g(r), prof.g_prime(r));
            let w = 2.0 * g - g * g;
            let want = 4.0 * w * w / r.powi(4) + gp * gp / (r * r);
            assert_abs_diff_eq!(
                fs.mixed_contraction(),
                want,
                epsilon = 1e-10 * (1.0 + want)
            );
            let want_holo = gp * gp / (r * r);
            assert_abs_diff_eq!(
                fs.holo_contraction(),
                want_holo,
                epsilon = 1e-10 * (1.0 + want_holo)
            );
        }
    }

    /// The explicit component list, re-derived independently in terms of
    /// z̄₁z₂, δᵃ = (1, i, 0) and δ_{a3}; an algebraically different route
    /// from the Δ/C construction in `field_strength_analytic`.
    fn component_list(x: &Point4, prof: &RadialProfile) -> [[AdjointVectorC; 2]; 2] {
        let z = ComplexPair::from_point4(x);
        let r = x.norm();
        let (r2, r4) = (r * r, r.powi(4));
        let m = m_field(x).unwrap();
        let (g, gp) = (prof.g(r), prof.g_prime(r));
        let w = g * g - 2.0 * g;
        let zero = Adjoint([Complex64::new(0.0, 0.0); 3]);
        let mut out = [[zero; 2]; 2];
        let delta_a = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ];
        let delta_a_bar = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
        ];
        let w12 = z.z1.conj() * z.z2;
        for a in 0..3 {
            let d_a3 = if a == 2 { 1.0 } else { 0.0 };
            // diagonal g′ coefficient i(δ_{a3} − mᵃ m³)/(2r)
            let diag = I * (d_a3 - m.0[a] * m.0[2]) / (2.0 * r);
            out[0][0].0[a] = 2.0 * I * z.z2.norm_sqr() * m.0[a] * w / r4 + diag * gp;
            out[1][1].0[a] = 2.0 * I * z.z1.norm_sqr() * m.0[a] * w / r4 - diag * gp;
            // off-diagonal g′ coefficient i(r²δᵃ − 2 z̄₁z₂ mᵃ)/(2r³)
            let off = I * (r2 * delta_a[a] - 2.0 * w12 * m.0[a]) / (2.0 * r2 * r);
            out[0][1].0[a] = -2.0 * I * w12 * m.0[a] * w / r4 + off * gp;
            let off_bar = I * (r2 * delta_a_bar[a] - 2.0 * w12.conj() * m.0[a]) / (2.0 * r2 * r);
            out[1][0].0[a] = -2.0 * I * w12.conj() * m.0[a] * w / r4 + off_bar * gp;
        }
        out
    }

    #[test]
    fn explicit_component_list_is_reproduced() {
        let prof = smooth_profile();
        let mut rng = testutil::rng(79);
        for _ in 0..100 {
            let x = testutil::point_in_shell(&mut rng, 0.4, 4.4);
            let fs = field_strength_analytic(&x, &prof).unwrap();
            let list = component_list(&x, &prof);
            for i in 0..2 {
                for j in 0..2 {
                    for a in 0..3 {
                        let diff = (fs.mixed[i][j].0[a] - list[i][j].0[a]).norm();
                        assert!(diff < 1e-12, "F[{i}][{j}][{a}] differs by {diff:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn index_conversion_round_trips() {
        let mut rng = testutil::rng(83);
        for _ in 0..100 {
            let mut f = TwoForm4::zero();
            for mu in 0..4 {
                for nu in (mu + 1)..4 {
                    f.set(mu, nu, testutil::uniform(&mut rng));
                }
            }
            let (a, b, c, d) = complex_from_real(&f);
            let back = real_from_complex(a, b, c, d);
            assert!(back.sub(&f).max_abs() < 1e-14);
        }
    }

    #[test]
    fn analytic_matches_finite_differences() {
        let prof = smooth_profile();
        let mut rng = testutil::rng(89);
        let mut max_rel: f64 = 0.0;
        for _ in 0..100 {
            let x = testutil::point_in_shell(&mut rng, 0.4, 4.4);
            let r = x.norm();
            let fs = field_strength_analytic(&x, &prof).unwrap();
            let fd = field_strength_numeric(&x, &prof, 1e-5 * r).unwrap();
            let scale = (0..3)
                .map(|a| fs.real[a].max_abs())
                .fold(0.0, f64::max)
                .max(1e-30);
            for a in 0..3 {
                let diff = fs.real[a].sub(&fd[a]).max_abs();
                max_rel = max_rel.max(diff / scale);
            }
        }
        assert!(max_rel < 1e-6, "max relative FD error {max_rel:e}");
    }

    #[test]
    fn finite_difference_error_is_second_order() {
        let prof = smooth_profile();
        let x = Point4([0.8, -0.4, 1.1, 0.3]);
        let fs = field_strength_analytic(&x, &prof).unwrap();
        let err = |h: f64| {
            let fd = field_strength_numeric(&x, &prof, h).unwrap();
            (0..3)
                .map(|a| fs.real[a].sub(&fd[a]).max_abs())
                .fold(0.0, f64::max)
        };
        let e1 = err(2e-4);
        let e2 = err(1e-4);
        let ratio = e1 / e2;
        assert!(
            (3.2..=4.8).contains(&ratio),
            "convergence ratio {ratio} not second order (e1={e1:e}, e2={e2:e})"
        );
    }

    #[test]
    fn pure_gauge_tail_has_no_holomorphic_strength() {
        // g ≡ 1 constant: g′ = 0 kills F_{ij} and F_{ī j̄}
        let vac = RadialProfile::constant(1.0, 10.0, 101);
        let fs = field_strength_analytic(&Point4([1.0, 0.7, -0.2, 0.4]), &vac).unwrap();
        assert!(fs.holo.max_abs() < 1e-14);
        assert!(fs.antiholo.max_abs() < 1e-14);
        // mixed components survive: (g²−2g) = −1
        assert!(fs.mixed_contraction() > 0.1);
    }

    #[test]
    fn bad_step_is_rejected() {
        let prof = smooth_profile();
        let x = Point4([0.5, 0.0, 0.0, 0.0]);
        assert!(matches!(
            field_strength_numeric(&x, &prof, 0.0),
            Err(FieldError::BadStep { .. })
        ));
    }
}
