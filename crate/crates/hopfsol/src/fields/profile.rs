//! Discretised radial profile functions f(r), g(r) with natural cubic
//! spline interpolation. Derivatives come from the spline, never from
//! finite differences, so action values and Euler-Lagrange residuals are
//! evaluated against one consistent interpolant.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("profile needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("mesh radii must be strictly increasing and nonnegative (node {0})")]
    BadMesh(usize),
    #[error("value arrays must match the mesh length")]
    LengthMismatch,
}

/// Natural cubic spline through (x_i, y_i); stores the nodal second
/// derivatives.
#[derive(Clone, Debug)]
struct Spline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for interior second derivatives,
            // natural boundary conditions m_0 = m_{n-1} = 0
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            let mut sub = vec![0.0; n];
            let mut sup = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                sub[i] = h0 / 6.0;
                diag[i] = (h0 + h1) / 3.0;
                sup[i] = h1 / 6.0;
                rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
            }
            // Thomas algorithm on rows 1..n-1
            for i in 2..n - 1 {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                let upper = if i + 1 < n - 1 { m[i + 1] } else { 0.0 };
                m[i] = (rhs[i] - sup[i] * upper) / diag[i];
            }
        }
        Spline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        }
    }

    fn segment(&self, r: f64) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|v| v.partial_cmp(&r).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.clamp(1, n - 1) - 1,
        }
    }

    fn eval(&self, r: f64) -> f64 {
        let i = self.segment(r);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - r, r - x0);
        self.m[i] * a * a * a / (6.0 * h)
            + self.m[i + 1] * b * b * b / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * a
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0) * b
    }

    fn derivative(&self, r: f64) -> f64 {
        let i = self.segment(r);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - r, r - x0);
        -self.m[i] * a * a / (2.0 * h)
            + self.m[i + 1] * b * b / (2.0 * h)
            + (self.y[i + 1] - self.y[i]) / h
            - (self.m[i + 1] - self.m[i]) * h / 6.0
    }
}

/// Radial profile pair (f, g) on a mesh r_0 < r_1 < … < r_N.
///
/// Solver-produced profiles satisfy f(0) = g(0) = 0 and carry boundary
/// values within the solver tolerance of 1; synthetic profiles used in
/// diagnostics are free to violate that.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    radii: Vec<f64>,
    f_nodes: Vec<f64>,
    g_nodes: Vec<f64>,
    f_spline: Spline,
    g_spline: Spline,
}

impl RadialProfile {
    pub fn new(radii: Vec<f64>, f: Vec<f64>, g: Vec<f64>) -> Result<Self, ProfileError> {
        if radii.len() < 3 {
            return Err(ProfileError::TooFewNodes(radii.len()));
        }
        if f.len() != radii.len() || g.len() != radii.len() {
            return Err(ProfileError::LengthMismatch);
        }
        if radii[0] < 0.0 {
            return Err(ProfileError::BadMesh(0));
        }
        for i in 1..radii.len() {
            if !(radii[i] > radii[i - 1]) {
                return Err(ProfileError::BadMesh(i));
            }
        }
        let f_spline = Spline::new(&radii, &f);
        let g_spline = Spline::new(&radii, &g);
        Ok(RadialProfile {
            radii,
            f_nodes: f,
            g_nodes: g,
            f_spline,
            g_spline,
        })
    }

    /// Constant profile f ≡ g ≡ c on a uniform mesh; handy for synthetic
    /// configurations such as the pure large-gauge tail f = g = 1.
    pub fn constant(c: f64, r_max: f64, n: usize) -> Self {
        let radii: Vec<f64> = (0..n).map(|i| r_max * i as f64 / (n - 1) as f64).collect();
        let vals = vec![c; n];
        Self::new(radii, vals.clone(), vals).expect("uniform mesh is valid")
    }

    /// Build from closures sampled on a uniform mesh over [0, r_max].
    pub fn from_fn(
        r_max: f64,
        n: usize,
        f: impl Fn(f64) -> f64,
        g: impl Fn(f64) -> f64,
    ) -> Self {
        let radii: Vec<f64> = (0..n).map(|i| r_max * i as f64 / (n - 1) as f64).collect();
        let fv = radii.iter().map(|&r| f(r)).collect();
        let gv = radii.iter().map(|&r| g(r)).collect();
        Self::new(radii, fv, gv).expect("uniform mesh is valid")
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn f_nodes(&self) -> &[f64] {
        &self.f_nodes
    }

    pub fn g_nodes(&self) -> &[f64] {
        &self.g_nodes
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("non-empty mesh")
    }

    pub fn f(&self, r: f64) -> f64 {
        self.f_spline.eval(r)
    }

    pub fn g(&self, r: f64) -> f64 {
        self.g_spline.eval(r)
    }

    pub fn f_prime(&self, r: f64) -> f64 {
        self.f_spline.derivative(r)
    }

    pub fn g_prime(&self, r: f64) -> f64 {
        self.g_spline.derivative(r)
    }

    /// True when f(0) = g(0) = 0 and both boundary values sit within
    /// `tol` of 1.
    pub fn satisfies_boundary_conditions(&self, tol: f64) -> bool {
        self.f_nodes[0] == 0.0
            && self.g_nodes[0] == 0.0
            && (self.f_nodes.last().unwrap() - 1.0).abs() <= tol
            && (self.g_nodes.last().unwrap() - 1.0).abs() <= tol
    }
}
