//! Symmetric tridiagonal eigenvalues by implicit-shift QL.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Diagonalizes the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples rows `i` and `i+1`; length `n − 1`).
///
/// Returns eigenvalues in ascending order. When `first_row` is true the second
/// vector holds the first component of each (unit-norm) eigenvector, in the
/// same order; otherwise it is empty.
pub(crate) fn eigen(diag: &[f64], off: &[f64], first_row: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1), "off-diagonal must have length n - 1");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = if first_row {
        let mut z = vec![0.0; n];
        if n > 0 {
            z[0] = 1.0;
        }
        z
    } else {
        Vec::new()
    };

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence(MAX_SWEEPS));
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if first_row {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let first = if first_row { order.iter().map(|&i| z[i]).collect() } else { Vec::new() };
    Ok((values, first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_by_one() {
        let (v, z) = eigen(&[3.5], &[], true).unwrap();
        assert_eq!(v, vec![3.5]);
        assert_eq!(z, vec![1.0]);
    }

    #[test]
    fn two_by_two() {
        // [[2, 1], [1, 2]] → 1, 3 with first components ∓1/√2
        let (v, z) = eigen(&[2.0, 2.0], &[1.0], true).unwrap();
        assert_relative_eq!(v[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(v[1], 3.0, epsilon = 1e-15);
        assert_relative_eq!(z[0].abs(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(z[1].abs(), 0.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 − 2cos(kπ/(n+1)).
        let n = 40;
        let (v, z) = eigen(&vec![2.0; n], &vec![-1.0; n - 1], true).unwrap();
        for (k, value) in v.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            assert_relative_eq!(*value, 2.0 - 2.0 * theta.cos(), epsilon = 1e-13);
        }
        let total: f64 = z.iter().map(|c| c * c).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn already_diagonal() {
        let (v, _) = eigen(&[3.0, 1.0, 2.0], &[0.0, 0.0], false).unwrap();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }
}
