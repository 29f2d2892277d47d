//! Pauli/su(2) algebra, complex coordinates on R⁴ and antisymmetric
//! form containers.
//!
//! Conventions used throughout the crate:
//!
//! * complex pairing: `z1 = x1 + i x2`, `z2 = x3 + i x4`;
//! * holomorphic derivatives: `∂_k = (∂/∂x_{2k-1} − i ∂/∂x_{2k})/2`,
//!   `∂̄_k = (∂/∂x_{2k-1} + i ∂/∂x_{2k})/2`;
//! * adjoint (a) and spacetime (μ) indices are 1-based in documentation
//!   and 0-based in code.

use num_complex::Complex64;

/// i as a `Complex64`.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix σᵃ in the standard basis, `a` being 0-based (σ¹=a0, σ²=a1, σ³=a2).
pub fn pauli(a: usize) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match a {
        0 => [[o, one], [one, o]],
        1 => [[o, -I], [I, o]],
        2 => [[one, o], [o, -one]],
        _ => panic!("adjoint index out of range: {a}"),
    }
}

/// Totally antisymmetric ε_{abc} on three indices (0-based).
pub fn eps3(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Totally antisymmetric ε_{μνλρ} on four indices (0-based), ε_{0123} = +1.
pub fn eps4(m: usize, n: usize, l: usize, r: usize) -> f64 {
    let idx = [m, n, l, r];
    for k in 0..4 {
        if !idx.contains(&k) {
            return 0.0;
        }
    }
    // sign of the permutation by counting inversions
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Point of R⁴, the domain of the Hopf map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point4(pub [f64; 4]);

impl Point4 {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Point4([x1, x2, x3, x4])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: f64) -> Self {
        Point4([self.0[0] * c, self.0[1] * c, self.0[2] * c, self.0[3] * c])
    }

    pub fn dot(&self, o: &Point4) -> f64 {
        (0..4).map(|i| self.0[i] * o.0[i]).sum()
    }
}

/// Point of S² ⊂ R³, the target of the Hopf map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S2Point(pub [f64; 3]);

impl S2Point {
    pub fn new(y1: f64, y2: f64, y3: f64) -> Self {
        S2Point([y1, y2, y3])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|y| y * y).sum::<f64>().sqrt()
    }
}

/// The pair (z1, z2) describing R⁴ in complex coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPair {
    /// z1 = x1 + i x2, z2 = x3 + i x4. Exact: components are copied bitwise.
    pub fn from_point4(x: &Point4) -> Self {
        ComplexPair {
            z1: Complex64::new(x.0[0], x.0[1]),
            z2: Complex64::new(x.0[2], x.0[3]),
        }
    }

    /// Inverse of [`ComplexPair::from_point4`]; exact round trip.
    pub fn to_point4(&self) -> Point4 {
        Point4([self.z1.re, self.z1.im, self.z2.re, self.z2.im])
    }

    pub fn norm_sq(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }
}

/// Vector in the su(2) adjoint representation, generic over real or
/// complex components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adjoint<T>(pub [T; 3]);

pub type AdjointVector = Adjoint<f64>;
pub type AdjointVectorC = Adjoint<Complex64>;

impl<T> Adjoint<T>
where
    T: Copy
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>,
{
    pub fn dot(&self, o: &Adjoint<T>) -> T {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    /// (a × b)ᵃ = ε_{abc} a_b b_c.
    pub fn cross(&self, o: &Adjoint<T>) -> Adjoint<T> {
        Adjoint([
            self.0[1] * o.0[2] - self.0[2] * o.0[1],
            self.0[2] * o.0[0] - self.0[0] * o.0[2],
            self.0[0] * o.0[1] - self.0[1] * o.0[0],
        ])
    }
}

impl AdjointVector {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn to_complex(&self) -> AdjointVectorC {
        Adjoint([
            Complex64::new(self.0[0], 0.0),
            Complex64::new(self.0[1], 0.0),
            Complex64::new(self.0[2], 0.0),
        ])
    }
}

impl AdjointVectorC {
    pub fn conj(&self) -> AdjointVectorC {
        Adjoint([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Antisymmetric 2-form F_μν at a point of R⁴. Only the six independent
/// components are stored, so F_μν = −F_νμ holds structurally.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TwoForm4 {
    // order: f12, f13, f14, f23, f24, f34
    c: [f64; 6],
}

impl TwoForm4 {
    pub fn zero() -> Self {
        TwoForm4 { c: [0.0; 6] }
    }

    fn slot(mu: usize, nu: usize) -> (usize, f64) {
        match (mu, nu) {
            (0, 1) => (0, 1.0),
            (1, 0) => (0, -1.0),
            (0, 2) => (1, 1.0),
            (2, 0) => (1, -1.0),
            (0, 3) => (2, 1.0),
            (3, 0) => (2, -1.0),
            (1, 2) => (3, 1.0),
            (2, 1) => (3, -1.0),
            (1, 3) => (4, 1.0),
            (3, 1) => (4, -1.0),
            (2, 3) => (5, 1.0),
            (3, 2) => (5, -1.0),
            _ => panic!("two-form indices must be distinct and in 0..4: ({mu},{nu})"),
        }
    }

    /// F_μν; reading (ν,μ) returns the negation of what was set at (μ,ν).
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        if mu == nu {
            return 0.0;
        }
        let (s, sign) = Self::slot(mu, nu);
        sign * self.c[s]
    }

    pub fn set(&mut self, mu: usize, nu: usize, v: f64) {
        let (s, sign) = Self::slot(mu, nu);
        self.c[s] = sign * v;
    }

    /// F(u, v) = F_μν u^μ v^ν as a bilinear form.
    pub fn bilinear(&self, u: &Point4, v: &Point4) -> f64 {
        let mut s = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                if mu != nu {
                    s += self.get(mu, nu) * u.0[mu] * v.0[nu];
                }
            }
        }
        s
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = *self;
        for v in &mut out.c {
            *v *= c;
        }
        out
    }

    pub fn sub(&self, o: &TwoForm4) -> Self {
        let mut out = *self;
        for (v, w) in out.c.iter_mut().zip(o.c.iter()) {
            *v -= w;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// ε_{μνλρ} F_μν G_λρ with the full sum over all four indices.
pub fn eps_contract(f: &TwoForm4, g: &TwoForm4) -> f64 {
    4.0 * (f.get(0, 1) * g.get(2, 3) + f.get(2, 3) * g.get(0, 1)
        - f.get(0, 2) * g.get(1, 3)
        - f.get(1, 3) * g.get(0, 2)
        + f.get(0, 3) * g.get(1, 2)
        + f.get(1, 2) * g.get(0, 3))
}

/// 1-form A_μ on R⁴.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OneForm4(pub [f64; 4]);

impl OneForm4 {
    /// A(u) = A_μ u^μ.
    pub fn pair(&self, u: &Point4) -> f64 {
        (0..4).map(|i| self.0[i] * u.0[i]).sum()
    }
}

/// Both sides of the Pauli product identity
/// Σ_a σᵃ_{ij} σᵃ_{kl} = 2 δ_{il} δ_{jk} − δ_{ij} δ_{kl}.
///
/// Spinor indices are 1-based as in the usual matrix notation. The left
/// side is evaluated from the explicit matrices, the right side from the
/// Kronecker deltas; the caller asserts equality.
pub fn pauli_identity_p1(i: usize, j: usize, k: usize, l: usize) -> (f64, f64) {
    check_spinor(&[i, j, k, l]);
    let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
    let mut lhs = Complex64::new(0.0, 0.0);
    for a in 0..3 {
        let s = pauli(a);
        lhs += s[i][j] * s[k][l];
    }
    let rhs = 2.0 * delta(i, l) * delta(j, k) - delta(i, j) * delta(k, l);
    debug_assert_eq!(lhs.im, 0.0);
    (lhs.re, rhs)
}

/// Both sides of the identity
/// ε_{abc} σᵇ_{ij} σᶜ_{kl} = i (σᵃ_{il} δ_{jk} − σᵃ_{kj} δ_{il}).
///
/// The adjoint index `a` is 1-based (1..3), spinor indices 1-based (1..2).
pub fn pauli_identity_p2(
    a: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> (Complex64, Complex64) {
    assert!((1..=3).contains(&a), "adjoint index out of range: {a}");
    check_spinor(&[i, j, k, l]);
    let (a, i, j, k, l) = (a - 1, i - 1, j - 1, k - 1, l - 1);
    let mut lhs = Complex64::new(0.0, 0.0);
    for b in 0..3 {
        for c in 0..3 {
            let e = eps3(a, b, c);
            if e != 0.0 {
                lhs += e * pauli(b)[i][j] * pauli(c)[k][l];
            }
        }
    }
    let sa = pauli(a);
    let rhs = I * (sa[i][l] * delta(j, k) - sa[k][j] * delta(i, l));
    (lhs, rhs)
}

fn check_spinor(idx: &[usize]) {
    for &i in idx {
        assert!((1..=2).contains(&i), "spinor index out of range: {i}");
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// ε_{μνλ} A_μ F_νλ for forms restricted to a 3-surface, the Chern-Simons
/// density evaluated at one point.
pub fn wedge_density(a: &[f64; 3], f: &[[f64; 3]; 3]) -> f64 {
    // the two ε terms per μ collapse to 2 (A₁F₂₃ + A₂F₃₁ + A₃F₁₂)
    2.0 * (a[0] * f[1][2] + a[1] * f[2][0] + a[2] * f[0][1])
}

/// Determinant of the 4×4 matrix with the given rows.
pub fn det4(rows: &[Point4; 4]) -> f64 {
    let m = rows;
    let det3 = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[r[0]].0[c[0]] * (m[r[1]].0[c[1]] * m[r[2]].0[c[2]] - m[r[1]].0[c[2]] * m[r[2]].0[c[1]])
            - m[r[0]].0[c[1]]
                * (m[r[1]].0[c[0]] * m[r[2]].0[c[2]] - m[r[1]].0[c[2]] * m[r[2]].0[c[0]])
            + m[r[0]].0[c[2]]
                * (m[r[1]].0[c[0]] * m[r[2]].0[c[1]] - m[r[1]].0[c[1]] * m[r[2]].0[c[0]])
    };
    m[0].0[0] * det3([1, 2, 3], [1, 2, 3]) - m[0].0[1] * det3([1, 2, 3], [0, 2, 3])
        + m[0].0[2] * det3([1, 2, 3], [0, 1, 3])
        - m[0].0[3] * det3([1, 2, 3], [0, 1, 2])
}
