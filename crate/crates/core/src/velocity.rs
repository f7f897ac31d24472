//! Velocity operators `v = p + A` (electron, `q = −1`) in the symmetric gauge
//! `A = (−By/2, Bx/2)` on a uniform Cartesian grid.
//!
//! Derivatives are second-order central differences. Each stencil application
//! invalidates one more ring of boundary points; norms and residuals only look
//! at points that are still valid (and never at the outermost two rings).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::states::{FieldConfig, LandauState, QuantumNumbers};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Rings always excluded from norms and residuals.
pub const BOUNDARY_RINGS: usize = 2;

/// Points per axis used by the default verification grid.
pub const DEFAULT_POINTS: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianGrid {
    half_extent: f64,
    points: usize,
    spacing: f64,
}

impl CartesianGrid {
    /// Grid on `[−L, L]²` with `points` (odd, >= 33) samples per axis.
    pub fn new(half_extent: f64, points: usize) -> Result<Self> {
        if !half_extent.is_finite() || half_extent <= 0.0 {
            return Err(Error::InvalidParameter(format!("grid half extent must be > 0, got {half_extent}")));
        }
        if points < 33 || points.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("grid needs an odd point count >= 33, got {points}")));
        }
        Ok(Self { half_extent, points, spacing: 2.0 * half_extent / (points - 1) as f64 })
    }

    /// `L = 6 max(1, √((2n+|m|+1)/σ))` with [`DEFAULT_POINTS`] points.
    pub fn default_for(qn: QuantumNumbers, field: FieldConfig) -> Self {
        let turning = ((2 * qn.n + qn.abs_m() + 1) as f64 / field.sigma()).sqrt();
        Self::new(6.0 * turning.max(1.0), DEFAULT_POINTS).expect("default grid is valid")
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Coordinate of index `i` along either axis; the center index is exactly 0.
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - ((self.points - 1) / 2) as f64) * self.spacing
    }
}

/// Complex samples on a [`CartesianGrid`], row-major with `values[j·N + i] = f(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    grid: CartesianGrid,
    values: Vec<Complex64>,
    invalid_rings: usize,
}

impl GridField {
    pub fn from_fn(grid: CartesianGrid, exec: Execution, f: impl Fn(f64, f64) -> Complex64 + Sync + Send) -> Self {
        let n = grid.points;
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        exec.for_each_chunk(&mut values, n, |j, row| {
            let y = grid.coord(j);
            for (i, v) in row.iter_mut().enumerate() {
                *v = f(grid.coord(i), y);
            }
        });
        Self { grid, values, invalid_rings: 0 }
    }

    pub fn grid(&self) -> &CartesianGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[j * self.grid.points + i]
    }

    /// Boundary rings whose values are not meaningful (stencil footprint).
    pub fn invalid_rings(&self) -> usize {
        self.invalid_rings
    }

    fn interior(&self) -> std::ops::Range<usize> {
        let skip = self.invalid_rings.max(BOUNDARY_RINGS);
        skip..self.grid.points - skip
    }

    fn check_same_grid(&self, other: &GridField) {
        assert_eq!(self.grid, other.grid, "grid fields live on different grids");
    }

    /// `a·self + b·other`; the invalid region is the union of both.
    pub fn combine(&self, a: Complex64, other: &GridField, b: Complex64) -> GridField {
        self.check_same_grid(other);
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        GridField { grid: self.grid, values, invalid_rings: self.invalid_rings.max(other.invalid_rings) }
    }

    pub fn difference(&self, other: &GridField) -> GridField {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, other, -one)
    }

    pub fn scale(&self, s: f64) -> GridField {
        GridField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
            invalid_rings: self.invalid_rings,
        }
    }

    /// Largest magnitude over the valid interior.
    pub fn interior_max(&self) -> f64 {
        let n = self.grid.points;
        let range = self.interior();
        let mut max = 0.0f64;
        for j in range.clone() {
            for i in range.clone() {
                max = max.max(self.values[j * n + i].norm());
            }
        }
        max
    }

    /// `Σ |f|² h²` over the valid interior, summed row by row in index order.
    pub fn norm_sq(&self) -> f64 {
        let n = self.grid.points;
        let range = self.interior();
        let mut total = 0.0;
        for j in range.clone() {
            for i in range.clone() {
                total += self.values[j * n + i].norm_sqr();
            }
        }
        total * self.grid.spacing * self.grid.spacing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Samples `ψ_{n,m}` at every grid point; the origin is taken as `ρ = 0, φ = 0`.
pub fn sample_state(state: &LandauState, grid: CartesianGrid, exec: Execution) -> GridField {
    GridField::from_fn(grid, exec, |x, y| {
        state.wavefunction_value(x.hypot(y), y.atan2(x)).expect("ρ from hypot is non-negative")
    })
}

/// `(−i ∂_axis + A_axis) f` with `A = (−By/2, Bx/2)`.
pub fn velocity_apply(axis: Axis, field: FieldConfig, f: &GridField, exec: Execution) -> GridField {
    let grid = f.grid;
    let n = grid.points;
    let ring = f.invalid_rings + 1;
    let inv_2h = 1.0 / (2.0 * grid.spacing);
    let half_b = field.b() / 2.0;
    let src = &f.values;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    exec.for_each_chunk(&mut out, n, |j, row| {
        if j < ring || j >= n - ring {
            return;
        }
        let y = grid.coord(j);
        for (i, cell) in row.iter_mut().enumerate().take(n - ring).skip(ring) {
            let k = j * n + i;
            let (derivative, potential) = match axis {
                Axis::X => ((src[k + 1] - src[k - 1]) * inv_2h, -half_b * y),
                Axis::Y => ((src[k + n] - src[k - n]) * inv_2h, half_b * grid.coord(i)),
            };
            *cell = -I * derivative + src[k] * potential;
        }
    });
    GridField { grid, values: out, invalid_rings: ring }
}

/// `H f = ½ (v_x² + v_y²) f`.
pub fn hamiltonian_apply(field: FieldConfig, f: &GridField, exec: Execution) -> GridField {
    let vx = velocity_apply(Axis::X, field, f, exec);
    let vy = velocity_apply(Axis::Y, field, f, exec);
    let vxx = velocity_apply(Axis::X, field, &vx, exec);
    let vyy = velocity_apply(Axis::Y, field, &vy, exec);
    let half = Complex64::new(0.5, 0.0);
    vxx.combine(half, &vyy, half)
}

/// `max |([v_x, v_y] + iB) f| / max |f|` over the valid interior.
pub fn commutator_residual(field: FieldConfig, f: &GridField, exec: Execution) -> f64 {
    let vx = velocity_apply(Axis::X, field, f, exec);
    let vy = velocity_apply(Axis::Y, field, f, exec);
    let vxy = velocity_apply(Axis::X, field, &vy, exec);
    let vyx = velocity_apply(Axis::Y, field, &vx, exec);
    let one = Complex64::new(1.0, 0.0);
    let commutator = vxy.combine(one, &vyx, -one);
    let residual = commutator.combine(one, f, I * field.b());
    residual.interior_max() / f.restricted(residual.invalid_rings).interior_max()
}

/// `Q = v_x / √B`.
pub fn q_apply(field: FieldConfig, f: &GridField, exec: Execution) -> GridField {
    velocity_apply(Axis::X, field, f, exec).scale(1.0 / field.b().sqrt())
}

/// `P = −v_y / √B`, the sign making `[Q, P] = i` given `[v_x, v_y] = −iB`.
pub fn p_apply(field: FieldConfig, f: &GridField, exec: Execution) -> GridField {
    velocity_apply(Axis::Y, field, f, exec).scale(-1.0 / field.b().sqrt())
}

/// `(B/2)(Q² + P²) f`, algebraically the same operator as [`hamiltonian_apply`].
pub fn qp_hamiltonian_apply(field: FieldConfig, f: &GridField, exec: Execution) -> GridField {
    let qq = q_apply(field, &q_apply(field, f, exec), exec);
    let pp = p_apply(field, &p_apply(field, f, exec), exec);
    let half_b = Complex64::new(field.b() / 2.0, 0.0);
    qq.combine(half_b, &pp, half_b)
}

/// `max |([Q, P] − i) f| / max |f|` over the valid interior.
pub fn qp_commutator_residual(field: FieldConfig, f: &GridField, exec: Execution) -> f64 {
    let qp = q_apply(field, &p_apply(field, f, exec), exec);
    let pq = p_apply(field, &q_apply(field, f, exec), exec);
    let one = Complex64::new(1.0, 0.0);
    let residual = qp.combine(one, &pq, -one).combine(one, f, -I);
    residual.interior_max() / f.restricted(residual.invalid_rings).interior_max()
}

/// `‖H f − E f‖ / ‖f‖` over the valid interior of `H f`.
pub fn eigen_residual(field: FieldConfig, f: &GridField, energy: f64, exec: Execution) -> f64 {
    let hf = hamiltonian_apply(field, f, exec);
    let one = Complex64::new(1.0, 0.0);
    let residual = hf.combine(one, f, Complex64::new(-energy, 0.0));
    (residual.norm_sq() / f.restricted(residual.invalid_rings).norm_sq()).sqrt()
}

/// `log₂(coarse / fine)` for residuals at spacings `h` and `h/2`.
pub fn observed_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

impl GridField {
    /// Same values, with norms restricted to the interior of a field that has
    /// `rings` invalid rings.
    fn restricted(&self, rings: usize) -> GridField {
        GridField { grid: self.grid, values: self.values.clone(), invalid_rings: self.invalid_rings.max(rings) }
    }
}
