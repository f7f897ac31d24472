//! Landau-level eigenstates in the symmetric gauge.
//!
//! With `σ = B/2` and `ζ = σρ²`, the normalized eigenfunctions are
//!
//! ```text
//! ψ_{n,m}(ρ, φ) = (2π)^{−1/2} R_{n,m}(ζ) e^{imφ},
//! R_{n,m}(ζ)    = √(2σ n!/(n+|m|)!) e^{−ζ/2} ζ^{|m|/2} L_n^{|m|}(ζ),
//! ```
//!
//! with energy `E = B(n + m/2 + (|m|+1)/2)`. Inner products use the measure
//! `ρ dρ dφ = dζ dφ / (2σ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laguerre::{self, LaguerreIndex};
use crate::quadrature::QuadratureRule;
use crate::special::ln_gamma;

/// Uniform field strength `B > 0` in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    b: f64,
    sigma: f64,
}

impl FieldConfig {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::InvalidParameter(format!("field strength must be finite and > 0, got {b}")));
        }
        Ok(Self { b, sigma: b / 2.0 })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `σ = B/2`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn zeta(&self, rho: f64) -> f64 {
        self.sigma * rho * rho
    }
}

/// Radial quantum number `n` and azimuthal quantum number `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, m: i32) -> Self {
        Self { n, m }
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    pub(crate) fn laguerre_index(&self) -> LaguerreIndex {
        LaguerreIndex::new(self.n as usize, self.abs_m() as f64).expect("|m| is a valid order")
    }
}

/// `E = B(n + m/2 + (|m|+1)/2)`.
///
/// For `m <= 0` the `m` terms cancel to exactly `1/2` in floating point, so
/// the degenerate branch `B(n + 1/2)` holds bitwise.
pub fn energy(qn: QuantumNumbers, field: FieldConfig) -> f64 {
    let level = qn.n as f64 + qn.m as f64 / 2.0 + (qn.abs_m() as f64 + 1.0) / 2.0;
    field.b() * level
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    /// `β = 2E`
    pub beta: f64,
    /// `τ = β − 2σm`
    pub tau: f64,
    /// `λ = τ/(4σ)`
    pub lambda: f64,
}

impl SpectralParams {
    /// `λ − (|m|+1)/2`, which equals `n` for an eigenstate.
    pub fn radial_index(&self, qn: QuantumNumbers) -> f64 {
        self.lambda - (qn.abs_m() as f64 + 1.0) / 2.0
    }
}

pub fn spectral_params(qn: QuantumNumbers, field: FieldConfig) -> SpectralParams {
    let beta = 2.0 * energy(qn, field);
    let tau = beta - 2.0 * field.sigma() * qn.m as f64;
    let lambda = tau / (4.0 * field.sigma());
    SpectralParams { beta, tau, lambda }
}

/// A normalized eigenstate `ψ_{n,m}` in a given field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauState {
    qn: QuantumNumbers,
    field: FieldConfig,
    norm_const: f64,
}

impl LandauState {
    pub fn new(qn: QuantumNumbers, field: FieldConfig) -> Self {
        let n = qn.n as f64;
        let am = qn.abs_m() as f64;
        let log_norm = 0.5 * (ln_gamma(n + 1.0) - ln_gamma(n + am + 1.0)) + 0.5 * (2.0 * field.sigma()).ln();
        Self { qn, field, norm_const: log_norm.exp() }
    }

    pub fn qn(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    /// `√(2σ n!/(n+|m|)!)`.
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    pub fn energy(&self) -> f64 {
        energy(self.qn, self.field)
    }

    fn check_zeta(zeta: f64) -> Result<()> {
        if !zeta.is_finite() || zeta < 0.0 {
            return Err(Error::Domain(format!("ζ must be finite and >= 0, got {zeta}")));
        }
        Ok(())
    }

    /// `R(ζ) e^{ζ/2} = c ζ^{|m|/2} L_n^{|m|}(ζ)`, with no `ζ` validation.
    pub(crate) fn reduced_raw(&self, zeta: f64) -> f64 {
        let am = self.qn.abs_m();
        let power = if am == 0 { 1.0 } else { zeta.powf(am as f64 / 2.0) };
        self.norm_const * power * laguerre::pair_raw(self.qn.n as usize, am as f64, zeta).0
    }

    /// `d/dζ` of [`Self::reduced_raw`] for `ζ > 0`.
    pub(crate) fn reduced_deriv_raw(&self, zeta: f64) -> f64 {
        let am = self.qn.abs_m() as f64;
        let n = self.qn.n as usize;
        let l = laguerre::pair_raw(n, am, zeta).0;
        let dl = laguerre::deriv_raw(n, am, zeta);
        let power = zeta.powf(am / 2.0);
        self.norm_const * power * (am / (2.0 * zeta) * l + dl)
    }

    /// `R_{n,m}(ζ)`.
    pub fn radial_value(&self, zeta: f64) -> Result<f64> {
        Self::check_zeta(zeta)?;
        Ok((-zeta / 2.0).exp() * self.reduced_raw(zeta))
    }

    /// `dR_{n,m}/dζ` for `ζ > 0`.
    pub fn radial_derivative(&self, zeta: f64) -> Result<f64> {
        Self::check_zeta(zeta)?;
        if zeta == 0.0 {
            return Err(Error::Domain("radial derivative requires ζ > 0".into()));
        }
        Ok((-zeta / 2.0).exp() * (self.reduced_deriv_raw(zeta) - 0.5 * self.reduced_raw(zeta)))
    }

    /// `ψ_{n,m}(ρ, φ)`.
    pub fn wavefunction_value(&self, rho: f64, phi: f64) -> Result<Complex64> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::Domain(format!("ρ must be finite and >= 0, got {rho}")));
        }
        let amplitude = self.radial_value(self.field.zeta(rho))? / (2.0 * std::f64::consts::PI).sqrt();
        Ok(Complex64::from_polar(amplitude, self.qn.m as f64 * phi))
    }
}

/// `⟨a|b⟩ = ∫∫ ψ_a* ψ_b ρ dρ dφ`.
///
/// The angular integral is done analytically (zero unless `m_a = m_b`); the
/// radial one with `rule`, whatever its weight exponent: the integrand handed
/// to the rule is `R_a R_b e^{ζ} ζ^{−α} / (2σ)`.
pub fn overlap(a: &LandauState, b: &LandauState, rule: &QuadratureRule) -> Result<Complex64> {
    if a.field != b.field {
        return Err(Error::FieldMismatch { left: a.field.b(), right: b.field.b() });
    }
    if a.qn.m != b.qn.m {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let two_sigma = 2.0 * a.field.sigma();
    let alpha = rule.alpha();
    let ia = a.qn.laguerre_index();
    let ib = b.qn.laguerre_index();
    let exponent = (a.qn.abs_m() + b.qn.abs_m()) as f64 / 2.0 - alpha;
    let radial = rule.integrate(|z| {
        let power = if exponent == 0.0 { 1.0 } else { z.powf(exponent) };
        let la = laguerre::pair_raw(ia.n(), ia.alpha(), z).0;
        let lb = laguerre::pair_raw(ib.n(), ib.alpha(), z).0;
        a.norm_const * b.norm_const * power * la * lb / two_sigma
    })?;
    Ok(Complex64::new(radial, 0.0))
}

/// Residual of `ζG'' + (1+|m|−ζ)G' + nG = 0`, together with the scale
/// `1 + |G| + |G'| + |G''|` it should be compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeResidual {
    pub value: f64,
    pub scale: f64,
}

impl OdeResidual {
    pub fn relative(&self) -> f64 {
        self.value.abs() / self.scale
    }
}

/// Kummer-form residual for arbitrary `G, G', G''` values at `ζ`, using the
/// spectral parameter `λ − (|m|+1)/2` of `qn`.
pub fn kummer_residual(qn: QuantumNumbers, field: FieldConfig, zeta: f64, g: f64, dg: f64, d2g: f64) -> OdeResidual {
    let shift = spectral_params(qn, field).radial_index(qn);
    let am = qn.abs_m() as f64;
    let value = zeta * d2g + (1.0 + am - zeta) * dg + shift * g;
    OdeResidual { value, scale: 1.0 + g.abs() + dg.abs() + d2g.abs() }
}

/// Residual of the Kummer equation with `G = L_n^{|m|}`.
pub fn ode_residual(qn: QuantumNumbers, zeta: f64) -> Result<OdeResidual> {
    if !zeta.is_finite() || zeta <= 0.0 {
        return Err(Error::Domain(format!("ODE residual requires ζ > 0, got {zeta}")));
    }
    let idx = qn.laguerre_index();
    let g = laguerre::eval(idx, zeta)?;
    let dg = laguerre::deriv(idx, zeta)?;
    let d2g = laguerre::second_deriv(idx, zeta)?;
    // λ − (|m|+1)/2 = n does not depend on B; any field gives the same shift.
    let field = FieldConfig::new(1.0)?;
    Ok(kummer_residual(qn, field, zeta, g, dg, d2g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn field(b: f64) -> FieldConfig {
        FieldConfig::new(b).unwrap()
    }

    fn state(n: u32, m: i32, b: f64) -> LandauState {
        LandauState::new(QuantumNumbers::new(n, m), field(b))
    }

    #[test]
    fn field_validation() {
        assert!(FieldConfig::new(0.0).is_err());
        assert!(FieldConfig::new(-1.0).is_err());
        assert!(FieldConfig::new(f64::INFINITY).is_err());
        assert_eq!(field(3.0).sigma(), 1.5);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(QuantumNumbers::new(0, 0), field(1.0)), 0.5);
        assert_eq!(energy(QuantumNumbers::new(2, -3), field(2.0)), 5.0);
        assert_eq!(energy(QuantumNumbers::new(1, 2), field(1.0)), 3.5);
    }

    #[test]
    fn spectral_param_examples() {
        let p = spectral_params(QuantumNumbers::new(0, 0), field(1.0));
        assert_eq!((p.beta, p.tau, p.lambda), (1.0, 1.0, 0.5));
        let qn = QuantumNumbers::new(1, 1);
        let p = spectral_params(qn, field(2.0));
        assert_eq!((p.beta, p.tau, p.lambda), (10.0, 8.0, 2.0));
        assert_eq!(p.radial_index(qn), 1.0);
        let qn = QuantumNumbers::new(3, -2);
        let p = spectral_params(qn, field(1.0));
        assert_eq!((p.beta, p.tau, p.lambda), (7.0, 9.0, 4.5));
        assert_eq!(p.radial_index(qn), 3.0);
    }

    #[test]
    fn radial_examples() {
        assert_relative_eq!(state(0, 0, 2.0).radial_value(0.0).unwrap(), 2f64.sqrt(), max_relative = 1e-15);
        assert_eq!(state(0, 3, 0.7).radial_value(0.0).unwrap(), 0.0);
        assert_eq!(state(1, 1, 2.0).radial_value(2.0).unwrap(), 0.0);
        assert!(state(1, 1, 2.0).radial_value(-1e-9).is_err());
    }

    #[test]
    fn wavefunction_examples() {
        let v = state(0, 0, 2.0).wavefunction_value(0.0, 0.0).unwrap();
        assert_relative_eq!(v.re, 1.0 / PI.sqrt(), max_relative = 1e-15);
        assert_eq!(v.im, 0.0);
        assert_relative_eq!(v.re, 0.5641895835, epsilon = 1e-10);
        assert_eq!(state(0, 1, 1.0).wavefunction_value(0.0, 1.3).unwrap().norm(), 0.0);
        let v = state(0, 2, 1.0).wavefunction_value(1.0, PI / 2.0).unwrap();
        assert!(v.re < 0.0);
        assert!(v.im.abs() < 1e-15 * v.re.abs());
        assert!(state(0, 0, 1.0).wavefunction_value(-1.0, 0.0).is_err());
    }

    #[test]
    fn magnitude_is_phase_independent() {
        let s = state(2, -3, 1.3);
        let base = s.wavefunction_value(1.7, 0.0).unwrap().norm();
        for phi in [0.3, 1.0, 2.5, -4.0] {
            assert_relative_eq!(s.wavefunction_value(1.7, phi).unwrap().norm(), base, max_relative = 1e-14);
        }
    }

    #[test]
    fn radial_derivative_matches_finite_difference() {
        let s = state(3, 2, 1.0);
        let h = 1e-6;
        for z in [0.2, 1.5, 4.0, 9.0] {
            let fd = (s.radial_value(z + h).unwrap() - s.radial_value(z - h).unwrap()) / (2.0 * h);
            assert!((fd - s.radial_derivative(z).unwrap()).abs() < 1e-8);
        }
        assert!(s.radial_derivative(0.0).is_err());
    }

    #[test]
    fn norm_const_survives_large_factorials() {
        let s = state(90, 60, 1.0);
        assert!(s.norm_const().is_finite() && s.norm_const() > 0.0);
        let direct = state(4, 3, 2.0).norm_const();
        assert_relative_eq!(direct, (2.0 * 1.0 * 24.0 / 5040.0f64).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn overlap_examples() {
        let rule = QuadratureRule::for_range(3, 3).unwrap();
        let v = overlap(&state(0, 0, 1.0), &state(0, 0, 1.0), &rule).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-12);
        assert_eq!(overlap(&state(0, 1, 1.0), &state(0, 2, 1.0), &rule).unwrap().norm(), 0.0);
        assert!(overlap(&state(2, 3, 1.0), &state(1, 3, 1.0), &rule).unwrap().norm() < 1e-12);
        assert!(matches!(overlap(&state(0, 0, 1.0), &state(0, 0, 2.0), &rule), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn overlap_with_matched_weight_exponent() {
        let rule = QuadratureRule::new(4.0, 20).unwrap();
        let v = overlap(&state(3, -4, 0.5), &state(3, -4, 0.5), &rule).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-12);
        let v = overlap(&state(3, -4, 0.5), &state(5, -4, 0.5), &rule).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn ode_residual_examples() {
        assert_eq!(ode_residual(QuantumNumbers::new(0, 0), 1.0).unwrap().value, 0.0);
        assert!(ode_residual(QuantumNumbers::new(1, 2), 3.0).unwrap().value.abs() <= 1e-12);
        assert!(ode_residual(QuantumNumbers::new(1, 2), 0.0).is_err());
    }

    #[test]
    fn ode_residual_detects_perturbation() {
        // G = L_1 + εζ; the exact residual is ε(1−ζ) + εζ = ε.
        let eps = 1e-3;
        let qn = QuantumNumbers::new(1, 0);
        let z = 1.0;
        let g = 1.0 - z + eps * z;
        let dg = -1.0 + eps;
        let r = kummer_residual(qn, field(1.0), z, g, dg, 0.0);
        assert_relative_eq!(r.value, eps, max_relative = 1e-12);
        assert!(r.value.abs() > 1e-4);
    }
}
