//! All-variable ladder operators `L±` connecting `ψ_{n,m}` and `ψ_{n±1,m±1}`.
//!
//! Acting on `ψ_{n,m} = (2π)^{−1/2} R(ζ) e^{imφ}`, the angular factor `e^{±iφ}`
//! only shifts `m`, so each operator reduces to a radial action `D±` whose
//! coefficients depend on the source `(n, |m|)`:
//!
//! ```text
//! D⁺R = (n+1−ζ)√ζ [−R' + (½ − (n+|m|/2+1)/ζ) R] + (n+1)(n+|m|+1) R/√ζ
//! D⁻R = (n−ζ)√ζ  [ R' − (−½ + |m|/(2ζ)) R]     + n(|m|+ζ) R/√ζ
//! ```
//!
//! These are the factored operators with `(n+1−ζ)` (resp. `(n−ζ)`) cancelled
//! against the pole of the last bracket term, so they stay finite at
//! `ζ = n+1` (resp. `ζ = n`). The closed-form actions are
//!
//! ```text
//! L⁺ψ_{n,m} = √((n+1)(n+|m|+1)(n+|m|+2)) ψ_{n+1,m+1}     (m >= 0)
//! L⁻ψ_{n,m} = √(n(n+|m|)(n+|m|−1))       ψ_{n−1,m−1}     (m >= 1, or n = 0)
//! ```

use crate::error::{Error, Result};
use crate::quadrature::QuadratureRule;
use crate::states::{FieldConfig, LandauState, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LadderDirection {
    Raise,
    Lower,
}

impl LadderDirection {
    pub fn name(self) -> &'static str {
        match self {
            LadderDirection::Raise => "raise",
            LadderDirection::Lower => "lower",
        }
    }

    /// `(n±1, m±1)`, or `None` when lowering `n = 0`.
    pub fn target(self, qn: QuantumNumbers) -> Option<QuantumNumbers> {
        match self {
            LadderDirection::Raise => Some(QuantumNumbers::new(qn.n + 1, qn.m + 1)),
            LadderDirection::Lower => qn.n.checked_sub(1).map(|n| QuantumNumbers::new(n, qn.m - 1)),
        }
    }

    /// Whether the closed-form action is established for `qn`.
    pub fn in_validated_domain(self, qn: QuantumNumbers) -> bool {
        match self {
            LadderDirection::Raise => qn.m >= 0,
            LadderDirection::Lower => qn.m >= 1 || qn.n == 0,
        }
    }

    pub fn check_domain(self, qn: QuantumNumbers) -> Result<()> {
        if self.in_validated_domain(qn) {
            return Ok(());
        }
        let need = match self {
            LadderDirection::Raise => "m >= 0",
            LadderDirection::Lower => "m >= 1 or n = 0",
        };
        Err(Error::OutOfDomain(format!("{} from (n={}, m={}) requires {need}", self.name(), qn.n, qn.m)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// `√((n+1)(n+|m|+1)(n+|m|+2))`.
pub fn raise_coefficient(qn: QuantumNumbers) -> f64 {
    let n = qn.n as f64;
    let am = qn.abs_m() as f64;
    ((n + 1.0) * (n + am + 1.0) * (n + am + 2.0)).sqrt()
}

/// `√(n(n+|m|)(n+|m|−1))`, exactly zero for `n = 0`.
pub fn lower_coefficient(qn: QuantumNumbers) -> f64 {
    if qn.n == 0 {
        return 0.0;
    }
    let n = qn.n as f64;
    let am = qn.abs_m() as f64;
    (n * (n + am) * (n + am - 1.0)).sqrt()
}

pub fn coefficient(dir: LadderDirection, qn: QuantumNumbers) -> f64 {
    match dir {
        LadderDirection::Raise => raise_coefficient(qn),
        LadderDirection::Lower => lower_coefficient(qn),
    }
}

/// Regularized radial action `D±` given `R(ζ)` and `R'(ζ)`, with operator
/// parameters taken from the source quantum numbers.
pub fn radial_action(dir: LadderDirection, source: QuantumNumbers, zeta: f64, r: f64, dr: f64) -> f64 {
    let n = source.n as f64;
    let am = source.abs_m() as f64;
    let sz = zeta.sqrt();
    match dir {
        LadderDirection::Raise => {
            let pre = (n + 1.0 - zeta) * sz;
            -pre * dr + pre * (0.5 - (n + am / 2.0 + 1.0) / zeta) * r + (n + 1.0) * (n + am + 1.0) * r / sz
        }
        LadderDirection::Lower => {
            let pre = (n - zeta) * sz;
            pre * dr - pre * (-0.5 + am / (2.0 * zeta)) * r + n * (am + zeta) * r / sz
        }
    }
}

/// The operator exactly as factored, `(n+1−ζ)√ζ[−∂ζ + (½ − (n+|m|/2+1)/ζ + (n+1)(n+|m|+1)/(ζ(n+1−ζ)))]`,
/// or its lowering counterpart. Singular at `ζ = n+1` (raise) / `ζ = n` (lower).
pub fn radial_action_factored(dir: LadderDirection, source: QuantumNumbers, zeta: f64, r: f64, dr: f64) -> f64 {
    let n = source.n as f64;
    let am = source.abs_m() as f64;
    let sz = zeta.sqrt();
    match dir {
        LadderDirection::Raise => {
            let bracket = 0.5 - (n + am / 2.0 + 1.0) / zeta + (n + 1.0) * (n + am + 1.0) / (zeta * (n + 1.0 - zeta));
            (n + 1.0 - zeta) * sz * (-dr + bracket * r)
        }
        LadderDirection::Lower => {
            let bracket = -0.5 + am / (2.0 * zeta) - n * (am + zeta) / (zeta * (n - zeta));
            (n - zeta) * sz * (dr - bracket * r)
        }
    }
}

/// Result of applying `L±` to sampled radial profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderApplication {
    pub direction: LadderDirection,
    pub source: QuantumNumbers,
    /// `None` when lowering annihilates an `n = 0` state.
    pub target: Option<QuantumNumbers>,
    pub coefficient: f64,
    /// `(ζ, (D±R_source)(ζ))`, including the source normalization.
    pub samples: Vec<(f64, f64)>,
}

/// Smallest `ζ` accepted in analytic mode; the derivative identity divides by `ζ`.
pub const ANALYTIC_MIN_ZETA: f64 = 1e-12;

fn fd_step(zeta: f64) -> f64 {
    (1e-6 * zeta.max(1.0)).min(zeta / 2.0)
}

fn central_difference(f: &impl Fn(f64) -> f64, zeta: f64) -> f64 {
    let h = fd_step(zeta);
    (f(zeta + h) - f(zeta - h)) / (2.0 * h)
}

/// Applies `D±` for the operator indexed by `source` to an arbitrary profile
/// using central differences.
pub fn apply_to_profile(
    dir: LadderDirection,
    source: QuantumNumbers,
    profile: impl Fn(f64) -> f64,
    zetas: &[f64],
) -> Result<Vec<f64>> {
    zetas
        .iter()
        .map(|&z| {
            check_zeta(z)?;
            Ok(radial_action(dir, source, z, profile(z), central_difference(&profile, z)))
        })
        .collect()
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !zeta.is_finite() || zeta <= 0.0 {
        return Err(Error::Domain(format!("ladder operators need ζ > 0, got {zeta}")));
    }
    Ok(())
}

/// `D±R` without its `e^{−ζ/2}` factor, evaluated analytically.
fn reduced_action(dir: LadderDirection, state: &LandauState, zeta: f64) -> f64 {
    let r = state.reduced_raw(zeta);
    let dr = state.reduced_deriv_raw(zeta) - 0.5 * r;
    radial_action(dir, state.qn(), zeta, r, dr)
}

/// Applies `L±` to `state`, sampling the transformed radial profile at `zetas`.
pub fn apply_ladder(
    state: &LandauState,
    dir: LadderDirection,
    zetas: &[f64],
    mode: DerivativeMode,
) -> Result<LadderApplication> {
    let qn = state.qn();
    dir.check_domain(qn)?;
    let samples = match mode {
        DerivativeMode::Analytic => zetas
            .iter()
            .map(|&z| {
                check_zeta(z)?;
                if z < ANALYTIC_MIN_ZETA {
                    return Err(Error::Domain(format!("analytic mode needs ζ >= {ANALYTIC_MIN_ZETA:e}, got {z:e}")));
                }
                Ok((z, (-z / 2.0).exp() * reduced_action(dir, state, z)))
            })
            .collect::<Result<Vec<_>>>()?,
        DerivativeMode::FiniteDifference => {
            let profile = |z: f64| (-z / 2.0).exp() * state.reduced_raw(z);
            let values = apply_to_profile(dir, qn, profile, zetas)?;
            zetas.iter().copied().zip(values).collect()
        }
    };
    Ok(LadderApplication {
        direction: dir,
        source: qn,
        target: dir.target(qn),
        coefficient: coefficient(dir, qn),
        samples,
    })
}

/// Outcome of checking `L±ψ_source = c ψ_target` on a quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderCheck {
    pub direction: LadderDirection,
    pub source: QuantumNumbers,
    pub target: Option<QuantumNumbers>,
    pub field: FieldConfig,
    pub coefficient: f64,
    /// `max_k |D±R(ζ_k) − c R_t(ζ_k)| / max_k |c R_t(ζ_k)|`; the denominator is
    /// the source normalization constant when `c = 0`.
    pub pointwise_deviation: f64,
    /// `⟨ψ_target | L± ψ_source⟩` (0 when there is no target).
    pub overlap: f64,
    /// `|overlap − c|`, or `‖L± ψ_source‖` when there is no target.
    pub overlap_deviation: f64,
}

impl LadderCheck {
    pub fn max_deviation(&self) -> f64 {
        self.pointwise_deviation.max(self.overlap_deviation)
    }
}

/// Checks the closed-form action of `L±` on `ψ_{qn}` at the nodes of `rule`.
///
/// Rejects `qn` outside the validated domain; see [`verify_ladder_unchecked`]
/// for exploratory runs.
pub fn verify_ladder(
    qn: QuantumNumbers,
    field: FieldConfig,
    dir: LadderDirection,
    rule: &QuadratureRule,
) -> Result<LadderCheck> {
    dir.check_domain(qn)?;
    verify_ladder_unchecked(qn, field, dir, rule)
}

/// [`verify_ladder`] without the domain check. For `m < 0` the closed-form
/// action does not hold and the reported deviations are large.
pub fn verify_ladder_unchecked(
    qn: QuantumNumbers,
    field: FieldConfig,
    dir: LadderDirection,
    rule: &QuadratureRule,
) -> Result<LadderCheck> {
    let source = LandauState::new(qn, field);
    let target_qn = dir.target(qn);
    let target = target_qn.map(|t| LandauState::new(t, field));
    let c = coefficient(dir, qn);
    let two_sigma = 2.0 * field.sigma();
    let alpha = rule.alpha();

    let mut max_diff = 0.0f64;
    let mut max_expected = 0.0f64;
    for &z in rule.nodes() {
        let decay = (-z / 2.0).exp();
        let got = decay * reduced_action(dir, &source, z);
        let expected = target.map_or(0.0, |t| c * decay * t.reduced_raw(z));
        max_diff = max_diff.max((got - expected).abs());
        max_expected = max_expected.max(expected.abs());
    }
    let denominator = if c > 0.0 { max_expected } else { source.norm_const() };
    let pointwise_deviation = max_diff / denominator;

    let weight_fix = |z: f64| if alpha == 0.0 { 1.0 } else { z.powf(-alpha) };
    let (overlap, overlap_deviation) = match target {
        Some(t) => {
            let v =
                rule.integrate(|z| t.reduced_raw(z) * reduced_action(dir, &source, z) * weight_fix(z) / two_sigma)?;
            (v, (v - c).abs())
        }
        None => {
            let norm2 = rule.integrate(|z| {
                let a = reduced_action(dir, &source, z);
                a * a * weight_fix(z) / two_sigma
            })?;
            (0.0, norm2.max(0.0).sqrt())
        }
    };

    Ok(LadderCheck {
        direction: dir,
        source: qn,
        target: target_qn,
        field,
        coefficient: c,
        pointwise_deviation,
        overlap,
        overlap_deviation,
    })
}

/// Applies `L⁺` analytically and then `L⁻` (indexed by `(n+1, m+1)`) by
/// finite differences; returns the max deviation from
/// `raise_coefficient(n,m) · lower_coefficient(n+1,m+1) · R_{n,m}`, relative
/// to the largest expected magnitude.
pub fn round_trip_deviation(qn: QuantumNumbers, field: FieldConfig, zetas: &[f64]) -> Result<f64> {
    LadderDirection::Raise.check_domain(qn)?;
    let source = LandauState::new(qn, field);
    let raised = QuantumNumbers::new(qn.n + 1, qn.m + 1);
    let scale = raise_coefficient(qn) * lower_coefficient(raised);
    let profile = |z: f64| (-z / 2.0).exp() * reduced_action(LadderDirection::Raise, &source, z);
    let back = apply_to_profile(LadderDirection::Lower, raised, profile, zetas)?;
    let mut max_diff = 0.0f64;
    let mut max_expected = 0.0f64;
    for (&z, got) in zetas.iter().zip(back) {
        let expected = scale * source.radial_value(z)?;
        max_diff = max_diff.max((got - expected).abs());
        max_expected = max_expected.max(expected.abs());
    }
    Ok(max_diff / max_expected)
}
