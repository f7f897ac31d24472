//! Gamma function helpers.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest integer argument whose factorial is finite in `f64`.
const MAX_EXACT: f64 = 171.0;

fn small_integer(x: f64) -> Option<u32> {
    ((1.0..=MAX_EXACT).contains(&x) && x.fract() == 0.0).then_some(x as u32)
}

/// `(k-1)!` by direct product, for `1 <= k <= 171`.
fn factorial_product(k: u32) -> f64 {
    (2..k).fold(1.0, |acc, j| acc * j as f64)
}

/// Natural log of `Γ(x)` for `x > 0`.
///
/// Integers up to 171 go through the exact product; everything else uses a
/// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
pub fn ln_gamma(x: f64) -> f64 {
    if let Some(k) = small_integer(x) {
        return factorial_product(k).ln();
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    match small_integer(x) {
        Some(k) => factorial_product(k),
        None => ln_gamma(x).exp(),
    }
}
