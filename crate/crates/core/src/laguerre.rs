//! Associated Laguerre polynomials `L_n^α(x)`.
//!
//! Values come from the forward three-term recurrence in `n`,
//!
//! ```text
//! (n+1) L_{n+1}^α = (2n+α+1−x) L_n^α − (n+α) L_{n−1}^α,   L_0 = 1,  L_1 = 1+α−x,
//! ```
//!
//! and derivatives from the quotient identity
//! `d/dx L_n^α = (n L_n^α − (n+α) L_{n−1}^α) / x`, which is why derivative
//! entry points reject `x <= 0`.

use crate::error::{Error, Result};

/// Degree `n` and order `α` of an associated Laguerre polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreIndex {
    n: usize,
    alpha: f64,
}

impl LaguerreIndex {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!("Laguerre order must be finite and >= 0, got {alpha}")));
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `(L_n^α(x), L_{n−1}^α(x))` with `L_{−1} = 0`. Accepts any real `α`.
pub(crate) fn pair_raw(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let k = k as f64;
        let next = ((2.0 * k + alpha + 1.0 - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `L_n^α(x)` for signed `n` (negative degrees are the zero polynomial).
pub(crate) fn eval_raw(n: i64, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        0.0
    } else {
        pair_raw(n as usize, alpha, x).0
    }
}

/// First derivative through the quotient identity; `x` must be nonzero.
pub(crate) fn deriv_raw(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (ln, lm1) = pair_raw(n, alpha, x);
    (n as f64 * ln - (n as f64 + alpha) * lm1) / x
}

fn check_nonnegative(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Laguerre argument must be finite and >= 0, got {x}")));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Laguerre argument must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// `L_n^α(x)` for `x >= 0`.
pub fn eval(idx: LaguerreIndex, x: f64) -> Result<f64> {
    check_nonnegative(x)?;
    Ok(pair_raw(idx.n, idx.alpha, x).0)
}

/// `d/dx L_n^α(x)` for `x > 0`.
pub fn deriv(idx: LaguerreIndex, x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok(deriv_raw(idx.n, idx.alpha, x))
}

/// `d²/dx² L_n^α(x)` for `x > 0`, from differentiating the quotient identity:
/// `L'' = ((n−1) L_n' − (n+α) L_{n−1}') / x`.
pub fn second_deriv(idx: LaguerreIndex, x: f64) -> Result<f64> {
    check_positive(x)?;
    let n = idx.n;
    if n < 2 {
        return Ok(0.0);
    }
    let d_n = deriv_raw(n, idx.alpha, x);
    let d_nm1 = deriv_raw(n - 1, idx.alpha, x);
    Ok(((n as f64 - 1.0) * d_n - (n as f64 + idx.alpha) * d_nm1) / x)
}

/// Recurrence and derivative identities of the associated Laguerre
/// polynomials used in building the ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `L' = (n L_n − (n+α) L_{n−1}) / x`.
    DerivativeQuotient,
    /// `x L_n^{α+1} = (n+α) L_{n−1}^α − (n+α+1−x) L_n^α`, as commonly printed.
    /// This form is false (already at `n = 0`); its residual equals
    /// `(α+1)|L_n^α(x)|`. Kept so the discrepancy stays measurable.
    ContiguousPrinted,
    /// `x L_n^{α+1} = (n+α) L_{n−1}^α − (n−x) L_n^α`.
    Contiguous,
    /// `(n+1) L_{n+1} = (2n+α+1−x) L_n − (n+α) L_{n−1}`.
    ThreeTerm,
    /// `L_n^α' = (2+α+2n−x)/(1+n−x) L_n^α − (n+1)/(n+1−x) L_{n+1}^{α+1}`.
    RaisingDerivative,
    /// `L_n^{α−1} = L_n^α − L_{n−1}^α`.
    OrderLowering,
    /// `n L_n = (2n+α−1−x) L_{n−1} − (n+α−1) L_{n−2}`.
    ThreeTermShifted,
    /// `L_n^α' = (n+α−1)/(n−x) [ (n+α)/x L_{n−1}^{α−1} − n(α+x)/(x(n+α−1)) L_n^α ]`.
    LoweringDerivative,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::DerivativeQuotient,
        Identity::ContiguousPrinted,
        Identity::Contiguous,
        Identity::ThreeTerm,
        Identity::RaisingDerivative,
        Identity::OrderLowering,
        Identity::ThreeTermShifted,
        Identity::LoweringDerivative,
    ];

    /// Identities that hold; excludes [`Identity::ContiguousPrinted`].
    pub const VALID: [Identity; 7] = [
        Identity::DerivativeQuotient,
        Identity::Contiguous,
        Identity::ThreeTerm,
        Identity::RaisingDerivative,
        Identity::OrderLowering,
        Identity::ThreeTermShifted,
        Identity::LoweringDerivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DerivativeQuotient => "derivative_quotient",
            Identity::ContiguousPrinted => "contiguous_printed",
            Identity::Contiguous => "contiguous",
            Identity::ThreeTerm => "three_term",
            Identity::RaisingDerivative => "raising_derivative",
            Identity::OrderLowering => "order_lowering",
            Identity::ThreeTermShifted => "three_term_shifted",
            Identity::LoweringDerivative => "lowering_derivative",
        }
    }

    /// Center of the window where the identity is 0/0, if any.
    pub fn singular_point(self, n: usize) -> Option<f64> {
        match self {
            Identity::RaisingDerivative => Some(n as f64 + 1.0),
            Identity::LoweringDerivative => Some(n as f64),
            _ => None,
        }
    }
}

/// Half-width of the excluded window around [`Identity::singular_point`].
pub const SINGULAR_WINDOW: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityResidual {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    /// `|LHS − RHS| / (1 + |LHS|)`.
    pub fn scaled(&self) -> f64 {
        self.residual() / (1.0 + self.lhs.abs())
    }
}

/// Evaluates both sides of `which` at `(n, α, x)`.
///
/// Derivative left-hand sides use `d/dx L_n^α = −L_{n−1}^{α+1}` so they do not
/// share a code path with the quotient identity.
pub fn identity_residual(which: Identity, idx: LaguerreIndex, x: f64) -> Result<IdentityResidual> {
    check_positive(x)?;
    if let Some(c) = which.singular_point(idx.n) {
        if (x - c).abs() <= SINGULAR_WINDOW {
            return Err(Error::Domain(format!(
                "{} is singular at x = {c}; x = {x} lies inside the exclusion window",
                which.name()
            )));
        }
    }
    let n = idx.n as i64;
    let nf = idx.n as f64;
    let a = idx.alpha;
    let l = |k: i64, order: f64| eval_raw(k, order, x);
    let exact_deriv = -l(n - 1, a + 1.0);

    let (lhs, rhs) = match which {
        Identity::DerivativeQuotient => (exact_deriv, (nf * l(n, a) - (nf + a) * l(n - 1, a)) / x),
        Identity::ContiguousPrinted => (x * l(n, a + 1.0), (nf + a) * l(n - 1, a) - (nf + a + 1.0 - x) * l(n, a)),
        Identity::Contiguous => (x * l(n, a + 1.0), (nf + a) * l(n - 1, a) - (nf - x) * l(n, a)),
        Identity::ThreeTerm => ((nf + 1.0) * l(n + 1, a), (2.0 * nf + a + 1.0 - x) * l(n, a) - (nf + a) * l(n - 1, a)),
        Identity::RaisingDerivative => (
            exact_deriv,
            (2.0 + a + 2.0 * nf - x) / (1.0 + nf - x) * l(n, a) - (nf + 1.0) / (nf + 1.0 - x) * l(n + 1, a + 1.0),
        ),
        Identity::OrderLowering => (l(n, a - 1.0), l(n, a) - l(n - 1, a)),
        Identity::ThreeTermShifted => {
            (nf * l(n, a), (2.0 * nf + a - 1.0 - x) * l(n - 1, a) - (nf + a - 1.0) * l(n - 2, a))
        }
        Identity::LoweringDerivative => {
            // (n+α−1) distributed into the bracket so α = 0, n = 1 stays finite.
            let bracket = (nf + a - 1.0) * (nf + a) / x * l(n - 1, a - 1.0) - nf * (a + x) / x * l(n, a);
            (exact_deriv, bracket / (nf - x))
        }
    };
    Ok(IdentityResidual { lhs, rhs })
}
