use std::collections::BTreeMap;
use std::io::Write;

use landau::ladder::{self, DerivativeMode, LadderDirection};
use landau::quadrature::QuadratureRule;
use landau::states::{self, FieldConfig, LandauState, QuantumNumbers};
use landau::velocity::{self, CartesianGrid};
use landau::Execution;

use crate::record::{fmt_f64, json_str, Status};
use crate::suites::{run_suites, Suite, SuiteConfig};
use crate::{CliError, DirectionArg, EvalArgs, Format, LadderArgs, ModeArg, SpectrumArgs, SuiteArg, VerifyArgs};

pub const MAX_SPECTRUM_N: i64 = 50;

/// A table row; cells are written in column order.
enum Cell {
    Int(i64),
    Float(f64),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_f64(*v),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(v) if !v.is_finite() => json_str(&fmt_f64(*v)),
            _ => self.text(),
        }
    }
}

struct Table<'a> {
    format: Format,
    columns: &'a [&'a str],
    out: &'a mut dyn Write,
}

impl<'a> Table<'a> {
    fn start(format: Format, columns: &'a [&'a str], out: &'a mut dyn Write) -> Result<Self, CliError> {
        if format == Format::Csv {
            writeln!(out, "{}", columns.join(","))?;
        }
        Ok(Self { format, columns, out })
    }

    fn row(&mut self, cells: &[Cell]) -> Result<(), CliError> {
        debug_assert_eq!(cells.len(), self.columns.len());
        match self.format {
            Format::Csv => {
                let line: Vec<String> = cells.iter().map(Cell::text).collect();
                writeln!(self.out, "{}", line.join(","))?;
            }
            Format::Json => {
                let fields: Vec<String> =
                    self.columns.iter().zip(cells).map(|(k, v)| format!("{}:{}", json_str(k), v.json())).collect();
                writeln!(self.out, "{{{}}}", fields.join(","))?;
            }
        }
        Ok(())
    }
}

fn field(b: f64) -> Result<FieldConfig, CliError> {
    FieldConfig::new(b).map_err(|e| CliError::Usage(e.to_string()))
}

fn quantum_numbers(n: i64, m: i64) -> Result<QuantumNumbers, CliError> {
    let n = u32::try_from(n).map_err(|_| CliError::Usage(format!("--n must be a non-negative integer, got {n}")))?;
    let m = i32::try_from(m).map_err(|_| CliError::Usage(format!("--m out of range: {m}")))?;
    Ok(QuantumNumbers::new(n, m))
}

pub fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let field = field(args.field)?;
    if !(0..=MAX_SPECTRUM_N).contains(&args.n_max) {
        return Err(CliError::Usage(format!("--n-max must be in 0..={MAX_SPECTRUM_N}, got {}", args.n_max)));
    }
    let m_min = i32::try_from(args.m_min).map_err(|_| CliError::Usage("--m-min out of range".into()))?;
    let m_max = i32::try_from(args.m_max).map_err(|_| CliError::Usage("--m-max out of range".into()))?;
    let mut table = Table::start(args.format, &["n", "m", "energy"], out)?;
    for n in 0..=args.n_max as u32 {
        for m in m_min..=m_max {
            let e = states::energy(QuantumNumbers::new(n, m), field);
            table.row(&[Cell::Int(n as i64), Cell::Int(m as i64), Cell::Float(e)])?;
        }
    }
    Ok(0)
}

pub fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let field = field(args.field)?;
    let state = LandauState::new(quantum_numbers(args.n, args.m)?, field);
    let grid_mode = args.grid_l.is_some() || args.grid_n.is_some();
    let modes = [!args.zeta.is_empty(), !args.rho.is_empty(), grid_mode].iter().filter(|&&b| b).count();
    if modes != 1 {
        return Err(CliError::Usage("choose exactly one of --zeta, --rho, or --grid-L/--grid-N".into()));
    }
    if !args.zeta.is_empty() {
        let mut table = Table::start(args.format, &["zeta", "R"], out)?;
        for &z in &args.zeta {
            let r = state.radial_value(z).map_err(|e| CliError::Usage(e.to_string()))?;
            table.row(&[Cell::Float(z), Cell::Float(r)])?;
        }
    } else if !args.rho.is_empty() {
        let mut table = Table::start(args.format, &["rho", "phi", "re", "im"], out)?;
        for &rho in &args.rho {
            for &phi in &args.phi {
                let v = state.wavefunction_value(rho, phi).map_err(|e| CliError::Usage(e.to_string()))?;
                table.row(&[Cell::Float(rho), Cell::Float(phi), Cell::Float(v.re), Cell::Float(v.im)])?;
            }
        }
    } else {
        let default = CartesianGrid::default_for(state.qn(), field);
        let grid =
            CartesianGrid::new(args.grid_l.unwrap_or(default.half_extent()), args.grid_n.unwrap_or(default.points()))
                .map_err(|e| CliError::Usage(e.to_string()))?;
        let sampled = velocity::sample_state(&state, grid, Execution::default());
        let mut table = Table::start(args.format, &["x", "y", "re", "im"], out)?;
        for j in 0..grid.points() {
            for i in 0..grid.points() {
                let v = sampled.at(i, j);
                table.row(&[
                    Cell::Float(grid.coord(i)),
                    Cell::Float(grid.coord(j)),
                    Cell::Float(v.re),
                    Cell::Float(v.im),
                ])?;
            }
        }
    }
    Ok(0)
}

pub fn ladder(args: &LadderArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let field = field(args.field)?;
    let qn = quantum_numbers(args.n, args.m)?;
    let dir = match args.direction {
        DirectionArg::Raise => LadderDirection::Raise,
        DirectionArg::Lower => LadderDirection::Lower,
    };
    let mode = match args.mode {
        ModeArg::Analytic => DerivativeMode::Analytic,
        ModeArg::Fd => DerivativeMode::FiniteDifference,
    };
    dir.check_domain(qn).map_err(|e| CliError::Usage(e.to_string()))?;
    let zetas = if args.zeta.is_empty() {
        QuadratureRule::for_range(qn.n as usize + 1, qn.abs_m() as usize + 1)?.nodes().to_vec()
    } else {
        args.zeta.clone()
    };
    let state = LandauState::new(qn, field);
    let app = ladder::apply_ladder(&state, dir, &zetas, mode).map_err(|e| CliError::Usage(e.to_string()))?;
    let target = app.target.map(|t| LandauState::new(t, field));
    let expected: Vec<f64> = app
        .samples
        .iter()
        .map(|&(z, _)| target.map_or(Ok(0.0), |t| t.radial_value(z).map(|r| app.coefficient * r)))
        .collect::<Result<_, _>>()?;
    let scale =
        if app.coefficient > 0.0 { expected.iter().map(|v| v.abs()).fold(0.0, f64::max) } else { state.norm_const() };
    let mut table = Table::start(args.format, &["zeta", "value", "coefficient", "target_value", "deviation"], out)?;
    let mut ok = true;
    for (&(z, v), &e) in app.samples.iter().zip(&expected) {
        let deviation = (v - e).abs() / scale;
        ok &= deviation <= args.tol;
        let target_value = if app.coefficient > 0.0 { e / app.coefficient } else { 0.0 };
        table.row(&[
            Cell::Float(z),
            Cell::Float(v),
            Cell::Float(app.coefficient),
            Cell::Float(target_value),
            Cell::Float(deviation),
        ])?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn parse_tolerances(raw: &[String], cfg: &mut SuiteConfig) -> Result<(), CliError> {
    let bad = |s: &str| CliError::Usage(format!("invalid --tol value '{s}' (expected VALUE or CHECK=VALUE)"));
    let mut specific = BTreeMap::new();
    for item in raw {
        match item.split_once('=') {
            Some((name, value)) => {
                let v: f64 = value.parse().map_err(|_| bad(item))?;
                if !crate::suites::DEFAULT_TOLERANCES.iter().any(|(n, _)| *n == name) {
                    return Err(CliError::Usage(format!("unknown check name in --tol: {name}")));
                }
                specific.insert(name.to_string(), v);
            }
            None => cfg.global_tolerance = Some(item.parse().map_err(|_| bad(item))?),
        }
    }
    cfg.tolerances = specific;
    Ok(())
}

pub fn suite_config(args: &VerifyArgs) -> Result<SuiteConfig, CliError> {
    let mut cfg = SuiteConfig::default();
    if !args.fields.is_empty() {
        cfg.fields = args.fields.clone();
    }
    for &b in &cfg.fields {
        field(b)?;
    }
    let non_negative = |v: Option<i64>, flag: &str| -> Result<Option<usize>, CliError> {
        v.map(|x| usize::try_from(x).map_err(|_| CliError::Usage(format!("{flag} must be >= 0, got {x}")))).transpose()
    };
    cfg.n_max = non_negative(args.n_max, "--n-max")?;
    cfg.m_max = non_negative(args.m_max, "--m-max")?;
    if cfg.n_max.unwrap_or(0) > 40 || cfg.m_max.unwrap_or(0) > 40 {
        return Err(CliError::Usage("--n-max and --m-max are limited to 40".into()));
    }
    cfg.grid_half_extent = args.grid_l;
    cfg.grid_points = args.grid_n;
    if let Some(l) = args.grid_l {
        if !(l.is_finite() && l > 0.0) {
            return Err(CliError::Usage(format!("--grid-L must be > 0, got {l}")));
        }
    }
    if let Some(n) = args.grid_n {
        if n < 65 || n % 4 != 1 {
            return Err(CliError::Usage(format!("--grid-N must be >= 65 and 1 mod 4, got {n}")));
        }
    }
    parse_tolerances(&args.tol, &mut cfg)?;
    cfg.identity_samples = args.samples;
    cfg.seed = args.seed;
    cfg.timings = args.timings;
    cfg.exec = match args.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be >= 1".into())),
        Some(1) => Execution::Sequential,
        _ => Execution::default(),
    };
    Ok(cfg)
}

fn selected_suites(arg: SuiteArg) -> Vec<Suite> {
    match arg {
        SuiteArg::Laguerre => vec![Suite::Laguerre],
        SuiteArg::Quadrature => vec![Suite::Quadrature],
        SuiteArg::States => vec![Suite::States],
        SuiteArg::Ladder => vec![Suite::Ladder],
        SuiteArg::Velocity => vec![Suite::Velocity],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(_jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    Ok(f())
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = suite_config(args)?;
    let suites = selected_suites(args.suite);
    let records = with_jobs(args.jobs, || run_suites(&suites, &cfg))??;
    if args.format == Format::Csv {
        writeln!(out, "{}", crate::record::VerificationRecord::CSV_HEADER)?;
    }
    let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
    for r in &records {
        match r.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::Skipped => skipped += 1,
        }
        match args.format {
            Format::Json => writeln!(out, "{}", r.to_json_line())?,
            Format::Csv => writeln!(out, "{}", r.to_csv_line())?,
        }
    }
    writeln!(err, "verify: {} records, {pass} pass, {fail} fail, {skipped} skipped", records.len())?;
    Ok(if fail == 0 { 0 } else { 1 })
}
