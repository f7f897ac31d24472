//! Generalized Gauss–Laguerre quadrature for `∫₀^∞ f(ζ) ζ^α e^{−ζ} dζ`.
//!
//! Nodes are the eigenvalues of the `K×K` Jacobi matrix of the Laguerre
//! recurrence (diagonal `2k+α+1`, off-diagonal `√(k(k+α))`), polished by a
//! Newton step on `L_K^α`. Each weight is `Γ(α+1) v₀²` where `v₀` is the first
//! component of the unit eigenvector; `v₀²` is evaluated as `1 / Σ_j p_j(x)²`
//! from the orthonormal polynomials, which keeps full relative precision in
//! the exponentially small tail weights.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::gamma;
use crate::tridiag;

pub const MAX_ORDER: usize = 512;

/// Values a quadrature rule can sum.
pub trait Integrand: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn is_finite_value(&self) -> bool;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Quadrature order that integrates every overlap and ladder integrand with
/// `n <= n_max`, `|m| <= m_abs_max` exactly.
pub fn default_order(n_max: usize, m_abs_max: usize) -> usize {
    2 * (n_max + m_abs_max) + 16
}

fn jacobi_matrix(alpha: f64, order: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..order).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off = (1..order).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
    (diag, off)
}

const RESCALE_AT: f64 = 1e150;

/// `L_K^α(x) / L_K^α'(x)`, computed with rescaling so large `K` cannot overflow.
fn newton_ratio(order: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..order {
        let k = k as f64;
        let next = ((2.0 * k + alpha + 1.0 - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            prev /= RESCALE_AT;
        }
    }
    let k = order as f64;
    let deriv = (k * cur - (k + alpha) * prev) / x;
    cur / deriv
}

fn polish(order: usize, alpha: f64, x0: f64) -> f64 {
    let mut x = x0;
    for _ in 0..3 {
        let step = newton_ratio(order, alpha, x);
        if !step.is_finite() || step.abs() > 1e-6 * x.max(1.0) {
            return x;
        }
        x -= step;
        if step.abs() <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    x
}

/// `1 / Σ_{j<K} p_j(x)²` for the orthonormal Laguerre polynomials of the
/// normalized weight, i.e. the squared first eigenvector component.
fn christoffel(order: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    let mut log_scale = 0.0;
    for j in 0..order.saturating_sub(1) {
        let jf = j as f64;
        let b_next = ((jf + 1.0) * (jf + 1.0 + alpha)).sqrt();
        let b_cur = (jf * (jf + alpha)).sqrt();
        let next = ((x - (2.0 * jf + alpha + 1.0)) * cur - b_cur * prev) / b_next;
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            prev /= RESCALE_AT;
            sum /= RESCALE_AT * RESCALE_AT;
            log_scale += 2.0 * RESCALE_AT.ln();
        }
    }
    if log_scale == 0.0 {
        1.0 / sum
    } else {
        (-sum.ln() - log_scale).exp()
    }
}

impl QuadratureRule {
    /// Builds the `order`-point rule for weight `ζ^alpha e^{−ζ}`.
    pub fn new(alpha: f64, order: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "quadrature weight exponent must be finite and >= 0, got {alpha}"
            )));
        }
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidParameter(format!("quadrature order must be in 1..={MAX_ORDER}, got {order}")));
        }
        let (diag, off) = jacobi_matrix(alpha, order);
        let (eigenvalues, _) = tridiag::eigen(&diag, &off, false)?;
        let mass = gamma(alpha + 1.0);
        let nodes: Vec<f64> = eigenvalues.iter().map(|&x| polish(order, alpha, x)).collect();
        let weights = nodes.iter().map(|&x| mass * christoffel(order, alpha, x)).collect();
        Ok(Self { alpha, nodes, weights })
    }

    /// Rule used by overlap and ladder checks over the given quantum-number range.
    pub fn for_range(n_max: usize, m_abs_max: usize) -> Result<Self> {
        Self::new(0.0, default_order(n_max, m_abs_max))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ_k w_k f(x_k)`, summed in node order.
    pub fn integrate<T: Integrand>(&self, f: impl Fn(f64) -> T) -> Result<T> {
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite_value() {
                return Err(Error::NonFinite { node: x });
            }
            acc = acc + v * w;
        }
        Ok(acc)
    }

    /// First eigenvector components straight from the QL rotations. Loses
    /// relative accuracy in tiny tail weights; used as a cross-check.
    pub fn eigenvector_weights(alpha: f64, order: usize) -> Result<Vec<f64>> {
        let (diag, off) = jacobi_matrix(alpha, order);
        let (_, first) = tridiag::eigen(&diag, &off, true)?;
        let mass = gamma(alpha + 1.0);
        Ok(first.iter().map(|v| mass * v * v).collect())
    }
}
