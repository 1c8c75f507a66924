//! Signal equation `-d3 w'' + gamma w = alpha u + beta v` with homogeneous
//! Neumann ends, discretized with mirrored ghost nodes (`w[-1] = w[1]`).

use crate::error::{Error, Result};
use crate::model::{Grid1D, ModelParams};

/// Tridiagonal system `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
///
/// `sub[0]` and `sup[n-1]` are unused and kept at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// `max_i |(A x - rhs)_i|`.
    pub fn residual_inf(&self, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.rhs)
            .map(|(ax, b)| (ax - b).abs())
            .fold(0.0, f64::max)
    }

    /// Strict row diagonal dominance.
    pub fn is_diagonally_dominant(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let off = if i > 0 { self.sub[i].abs() } else { 0.0 }
                + if i + 1 < n { self.sup[i].abs() } else { 0.0 };
            self.diag[i].abs() > off
        })
    }
}

fn operator_coefficients(p: &ModelParams, g: &Grid1D) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = g.len();
    let c = p.d3 / (g.dx() * g.dx());
    let mut sub = vec![-c; n];
    let diag = vec![2.0 * c + p.gamma; n];
    let mut sup = vec![-c; n];
    sub[0] = 0.0;
    sup[n - 1] = 0.0;
    // mirrored ghost: the single interior neighbour is counted twice
    sup[0] = -2.0 * c;
    sub[n - 1] = -2.0 * c;
    (sub, diag, sup)
}

/// Assembles the discrete signal equation for densities `u`, `v`.
pub fn assemble(p: &ModelParams, g: &Grid1D, u: &[f64], v: &[f64]) -> Result<TridiagonalSystem> {
    g.check_len(u.len())?;
    g.check_len(v.len())?;
    let (sub, diag, sup) = operator_coefficients(p, g);
    let rhs = u
        .iter()
        .zip(v)
        .map(|(&ui, &vi)| p.alpha * ui + p.beta * vi)
        .collect();
    Ok(TridiagonalSystem {
        sub,
        diag,
        sup,
        rhs,
    })
}

/// Thomas algorithm: one forward elimination and one back substitution.
pub fn solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    if sys.sub.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: sys.sub.len(),
        });
    }
    if sys.sup.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: sys.sup.len(),
        });
    }
    if sys.rhs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: sys.rhs.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut pivot = sys.diag[0];
    if pivot == 0.0 {
        return Err(Error::ZeroPivot { row: 0 });
    }
    c[0] = sys.sup[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        if pivot == 0.0 {
            return Err(Error::ZeroPivot { row: i });
        }
        c[i] = sys.sup[i] / pivot;
        x[i] = (sys.rhs[i] - sys.sub[i] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Signal solver with the LU factors of the (time-independent) operator
/// computed once. Immutable after construction; `solve_into` needs no
/// scratch beyond the output buffer.
#[derive(Debug, Clone)]
pub struct EllipticSolver {
    alpha: f64,
    beta: f64,
    gamma: f64,
    sub: Vec<f64>,
    /// `sup[i] / pivot[i]`
    upper: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl EllipticSolver {
    pub fn new(p: &ModelParams, g: &Grid1D) -> Result<Self> {
        let (sub, diag, sup) = operator_coefficients(p, g);
        let n = diag.len();
        let mut upper = vec![0.0; n];
        let mut inv_pivot = vec![0.0; n];
        for i in 0..n {
            let pivot = if i == 0 {
                diag[0]
            } else {
                diag[i] - sub[i] * upper[i - 1]
            };
            if pivot == 0.0 {
                return Err(Error::ZeroPivot { row: i });
            }
            inv_pivot[i] = 1.0 / pivot;
            upper[i] = sup[i] / pivot;
        }
        Ok(Self {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            sub,
            upper,
            inv_pivot,
        })
    }

    pub fn len(&self) -> usize {
        self.sub.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub.is_empty()
    }

    /// Solves in place: `buf` holds the right-hand side on entry and the
    /// solution on return.
    ///
    /// Constants are exact eigenvectors (`A 1 = gamma 1`), so the solve runs
    /// on `rhs - rhs[0]` and adds `rhs[0] / gamma` back. Constant input then
    /// comes out exact and roundoff scales with the spread of the source
    /// rather than its size.
    pub fn solve_in_place(&self, buf: &mut [f64]) {
        let n = buf.len();
        debug_assert_eq!(n, self.len());
        let base = buf[0];
        for b in buf.iter_mut() {
            *b -= base;
        }
        buf[0] *= self.inv_pivot[0];
        for i in 1..n {
            buf[i] = (buf[i] - self.sub[i] * buf[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            buf[i] -= self.upper[i] * buf[i + 1];
        }
        let offset = base / self.gamma;
        for b in buf.iter_mut() {
            *b += offset;
        }
    }

    /// Writes the signal generated by `u`, `v` into `w`.
    pub fn solve_into(&self, u: &[f64], v: &[f64], w: &mut [f64]) -> Result<()> {
        let n = self.len();
        for len in [u.len(), v.len(), w.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        for ((wi, &ui), &vi) in w.iter_mut().zip(u).zip(v) {
            *wi = self.alpha * ui + self.beta * vi;
        }
        self.solve_in_place(w);
        Ok(())
    }

    pub fn signal(&self, u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        let mut w = vec![0.0; self.len()];
        self.solve_into(u, v, &mut w)?;
        Ok(w)
    }
}
