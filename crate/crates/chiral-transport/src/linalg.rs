//! Dense complex linear algebra helpers: Hermitian eigendecomposition,
//! PSD square roots, positivity tests and the matrix exponential.
//!
//! Everything here targets the small dense matrices this crate works with
//! (density matrices up to dim ~64, superoperators up to 4096), so the
//! implementations favour robustness over asymptotic cleverness.

use ndarray::Array2;
use num_complex::Complex64;

type C64 = Complex64;

/// Maximum absolute deviation from Hermiticity, max_ij |A_ij - conj(A_ji)|.
pub fn hermiticity_defect(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (a[[i, j]] - a[[j, i]].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Frobenius norm.
pub fn frobenius_norm(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute entry.
#[cfg_attr(not(test), allow(dead_code))]
pub fn max_abs(a: &Array2<C64>) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and the matching
/// eigenvectors as columns.
///
/// Only the Hermitian part of the input is used; callers are expected to
/// pass matrices that are Hermitian up to rounding.
pub fn hermitian_eigen(a: &Array2<C64>) -> (Vec<f64>, Array2<C64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "hermitian_eigen: square matrix required");
    // Work on the explicitly Hermitized copy so rounding in the input
    // cannot drive the iteration off the Hermitian manifold.
    let mut m = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = 0.5 * (a[[i, j]] + a[[j, i]].conj());
        }
    }
    let mut v = Array2::<C64>::eye(n);
    if n <= 1 {
        let evals = if n == 1 { vec![m[[0, 0]].re] } else { vec![] };
        return (evals, v);
    }

    let scale = frobenius_norm(&m).max(1.0);
    let tol = 1e-30 * scale * scale; // on squared off-diagonal mass
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]].norm_sqr();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                let abs_apq = apq.norm();
                let phase = apq / abs_apq; // e^{i beta}
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c); // complex sine
                // Columns: [p q] <- [p q] * [[c, s], [-conj(s), c]]
                for i in 0..n {
                    let mip = m[[i, p]];
                    let miq = m[[i, q]];
                    m[[i, p]] = c * mip - s.conj() * miq;
                    m[[i, q]] = s * mip + c * miq;
                }
                // Rows: conjugate-transpose action.
                for j in 0..n {
                    let mpj = m[[p, j]];
                    let mqj = m[[q, j]];
                    m[[p, j]] = c * mpj - s * mqj;
                    m[[q, j]] = s.conj() * mpj + c * mqj;
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = c * vip - s.conj() * viq;
                    v[[i, q]] = s * vip + c * viq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals_raw: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
    order.sort_by(|&i, &j| evals_raw[i].partial_cmp(&evals_raw[j]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| evals_raw[i]).collect();
    let mut vecs = Array2::<C64>::zeros((n, n));
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vecs[[r, k]] = v[[r, i]];
        }
    }
    (evals, vecs)
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &Array2<C64>) -> Vec<f64> {
    hermitian_eigen(a).0
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &Array2<C64>) -> f64 {
    *hermitian_eigenvalues(a)
        .first()
        .expect("min_eigenvalue: empty matrix")
}

/// PSD square root via eigendecomposition. Slightly negative eigenvalues
/// (floating-point noise at rank-deficient inputs) are clamped to zero;
/// callers are responsible for rejecting genuinely indefinite matrices.
pub fn sqrt_psd(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let (evals, vecs) = hermitian_eigen(a);
    let roots: Vec<f64> = evals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    // V diag(sqrt) V^dag
    let mut out = Array2::<C64>::zeros((n, n));
    for k in 0..n {
        if roots[k] == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vecs[[i, k]] * roots[k];
            for j in 0..n {
                out[[i, j]] += vik * vecs[[j, k]].conj();
            }
        }
    }
    out
}

/// Cheap positive-semidefiniteness test: true iff min eig(A) >= -tol,
/// decided by attempting a Cholesky factorization of A + tol*I with a
/// small pivot allowance for rounding.
pub fn is_psd_within(a: &Array2<C64>, tol: f64) -> bool {
    let n = a.nrows();
    let scale = (0..n).map(|i| a[[i, i]].re.abs()).fold(1.0f64, f64::max);
    let pivot_floor = -1e-12 * scale;
    let mut l = Array2::<C64>::zeros((n, n));
    for j in 0..n {
        let mut d = a[[j, j]].re + tol;
        for k in 0..j {
            d -= l[[j, k]].norm_sqr();
        }
        if d < pivot_floor {
            return false;
        }
        let dj = d.max(0.0).sqrt();
        l[[j, j]] = C64::new(dj, 0.0);
        if dj <= 1e-150 {
            continue;
        }
        for i in (j + 1)..n {
            let mut s = 0.5 * (a[[i, j]] + a[[j, i]].conj());
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]].conj();
            }
            l[[i, j]] = s / dj;
        }
    }
    true
}

fn one_norm(a: &Array2<C64>) -> f64 {
    let (n, m) = (a.nrows(), a.ncols());
    let mut best = 0.0f64;
    for j in 0..m {
        let mut col = 0.0;
        for i in 0..n {
            col += a[[i, j]].norm();
        }
        best = best.max(col);
    }
    best
}

/// Matrix exponential by scaling-and-squaring with a truncated Taylor
/// series. Accurate to near machine precision for the dissipative
/// generators this crate produces.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let norm = one_norm(a);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(s as i32));
    let mut result = Array2::<C64>::eye(n);
    let mut term = Array2::<C64>::eye(n);
    for k in 1..=64u32 {
        term = term.dot(&scaled) / C64::new(k as f64, 0.0);
        result = result + &term;
        if one_norm(&term) < 1e-18 * one_norm(&result) {
            break;
        }
    }
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}
