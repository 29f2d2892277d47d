//! Banded LU factorisation with partial pivoting, sized for the
//! block-tridiagonal Newton systems of the profile solver (kl = ku = 2
//! after interleaving the two fields).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BandedError {
    #[error("singular system: zero pivot in column {col}")]
    ZeroPivot { col: usize },
    #[error("entry ({i},{j}) outside the band (kl={kl}, ku={ku})")]
    OutOfBand { i: usize, j: usize, kl: usize, ku: usize },
}

/// Band storage with `kl` extra superdiagonals of workspace for pivoting
/// fill-in, LAPACK style: entry (i, j) lives at `data[j*stride + (i - j + kl + ku)]`.
#[derive(Clone, Debug)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    stride: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let stride = 2 * kl + ku + 1;
        BandedMatrix {
            n,
            kl,
            ku,
            stride,
            data: vec![0.0; n * stride],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize) -> Option<usize> {
        // during factorisation row i may reach ku + kl above the diagonal
        let lo = j.saturating_sub(self.ku + self.kl);
        let hi = (j + self.kl).min(self.n - 1);
        if i < lo || i > hi {
            return None;
        }
        Some(j * self.stride + (i + self.kl + self.ku - j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) -> Result<(), BandedError> {
        if i >= self.n || j >= self.n || (j > i && j - i > self.ku) || (i > j && i - j > self.kl)
        {
            return Err(BandedError::OutOfBand {
                i,
                j,
                kl: self.kl,
                ku: self.ku,
            });
        }
        let o = self.offset(i, j).expect("within declared band");
        self.data[o] = v;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self.offset(i, j) {
            Some(o) => self.data[o],
            None => 0.0,
        }
    }

    /// Solve A x = b in place by banded Gaussian elimination with partial
    /// pivoting; consumes the matrix.
    pub fn solve(mut self, b: &[f64]) -> Result<Vec<f64>, BandedError> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let kl = self.kl;
        let ku = self.ku;
        let mut x = b.to_vec();
        for k in 0..n {
            // pivot among the kl rows below the diagonal
            let i_max = (k + kl).min(n - 1);
            let mut piv = k;
            let mut piv_val = self.get(k, k).abs();
            for i in (k + 1)..=i_max {
                let v = self.get(i, k).abs();
                if v > piv_val {
                    piv = i;
                    piv_val = v;
                }
            }
            if piv_val == 0.0 {
                return Err(BandedError::ZeroPivot { col: k });
            }
            if piv != k {
                let j_max = (k + ku + kl).min(n - 1);
                for j in k..=j_max {
                    let a = self.get(k, j);
                    let b2 = self.get(piv, j);
                    let ok = self.offset(k, j).expect("row k in widened band");
                    let op = self.offset(piv, j).expect("pivot row in band");
                    self.data[ok] = b2;
                    self.data[op] = a;
                }
                x.swap(k, piv);
            }
            let pivot = self.get(k, k);
            for i in (k + 1)..=i_max {
                let l = self.get(i, k) / pivot;
                if l == 0.0 {
                    continue;
                }
                let oi = self.offset(i, k).expect("subdiagonal in band");
                self.data[oi] = 0.0;
                let j_max = (k + ku + kl).min(n - 1);
                for j in (k + 1)..=j_max {
                    let upd = self.get(i, j) - l * self.get(k, j);
                    let o = self.offset(i, j).expect("within widened band");
                    self.data[o] = upd;
                }
                x[i] -= l * x[k];
            }
        }
        // back substitution
        for k in (0..n).rev() {
            let j_max = (k + ku + kl).min(n - 1);
            let mut s = x[k];
            for j in (k + 1)..=j_max {
                s -= self.get(k, j) * x[j];
            }
            x[k] = s / self.get(k, k);
        }
        Ok(x)
    }
}
