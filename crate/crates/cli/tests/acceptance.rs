//! End-to-end acceptance criteria. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use landau::ladder::{self, DerivativeMode, LadderDirection};
use landau::laguerre::{self, Identity, LaguerreIndex, SINGULAR_WINDOW};
use landau::quadrature::{default_order, QuadratureRule};
use landau::states::{self, FieldConfig, LandauState, QuantumNumbers};
use landau::velocity::{self, CartesianGrid};
use landau::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = (&'static str, fn() -> Outcome);

const FIELDS: [f64; 3] = [0.5, 1.0, 2.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn field(b: f64) -> FieldConfig {
    FieldConfig::new(b).unwrap()
}

fn spectrum() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    for b in FIELDS {
        let f = field(b);
        for n in 0..=10u32 {
            for m in -10..=10i32 {
                let e = states::energy(QuantumNumbers::new(n, m), f);
                let branch = if m <= 0 { b * (n as f64 + 0.5) } else { b * (n as f64 + m as f64 + 0.5) };
                mismatches += usize::from(e != branch);
                if m <= 0 {
                    let up = states::energy(QuantumNumbers::new(n + 1, m), f);
                    mismatches += usize::from(up - e != b);
                }
                checked += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("{checked} levels, {mismatches} inexact"))
}

fn orthonormality() -> Outcome {
    let rule = QuadratureRule::for_range(10, 10).unwrap();
    let mut worst = 0.0f64;
    for b in FIELDS {
        let f = field(b);
        let all: Vec<LandauState> =
            (0..=10u32).flat_map(|n| (-10..=10).map(move |m| LandauState::new(QuantumNumbers::new(n, m), f))).collect();
        for a in &all {
            for c in &all {
                let delta = if a.qn() == c.qn() { 1.0 } else { 0.0 };
                worst = worst.max((states::overlap(a, c, &rule).unwrap() - delta).norm());
            }
        }
    }
    outcome(worst <= 1e-10, format!("max |<a|b> - delta| = {worst:.3e} (tol 1e-10)"))
}

fn ladder_action() -> Outcome {
    let rule = QuadratureRule::new(0.0, default_order(9, 9)).unwrap();
    let (mut pointwise, mut overlap) = (0.0f64, 0.0f64);
    let mut cases = 0;
    for b in FIELDS {
        for n in 0..=8u32 {
            for m in 0..=8i32 {
                for dir in [LadderDirection::Raise, LadderDirection::Lower] {
                    if dir == LadderDirection::Lower && m < 1 {
                        continue;
                    }
                    let c = ladder::verify_ladder(QuantumNumbers::new(n, m), field(b), dir, &rule).unwrap();
                    pointwise = pointwise.max(c.pointwise_deviation);
                    overlap = overlap.max(c.overlap_deviation);
                    cases += 1;
                }
            }
        }
    }
    outcome(
        pointwise <= 1e-8 && overlap <= 1e-8,
        format!("{cases} cases, pointwise {pointwise:.3e}, overlap {overlap:.3e} (tol 1e-8)"),
    )
}

fn annihilation() -> Outcome {
    let rule = QuadratureRule::for_range(1, 11).unwrap();
    let mut worst = 0.0f64;
    let mut nonzero = 0;
    for b in FIELDS {
        for m in -10..=10 {
            let qn = QuantumNumbers::new(0, m);
            nonzero += usize::from(ladder::lower_coefficient(qn) != 0.0);
            let s = LandauState::new(qn, field(b));
            let app = ladder::apply_ladder(&s, LadderDirection::Lower, rule.nodes(), DerivativeMode::Analytic).unwrap();
            let max = app.samples.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);
            worst = worst.max(max / s.norm_const());
        }
    }
    outcome(
        worst <= 1e-10 && nonzero == 0,
        format!("max |sample|/norm = {worst:.3e} (tol 1e-10), nonzero coefficients {nonzero}"),
    )
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    let mut worst = 0.0f64;
    let mut taken = 0;
    while taken < 10_000 {
        let n = rng.gen_range(0..=20usize);
        let alpha = rng.gen_range(0.0..=20.0);
        let x = rng.gen_range(0.1..60.0);
        let idx = LaguerreIndex::new(n, alpha).unwrap();
        let mut used = false;
        for which in Identity::VALID {
            if which.singular_point(n).is_some_and(|p| (x - p).abs() <= SINGULAR_WINDOW) {
                continue;
            }
            worst = worst.max(laguerre::identity_residual(which, idx, x).unwrap().scaled());
            used = true;
        }
        taken += usize::from(used);
    }
    let printed = laguerre::identity_residual(Identity::ContiguousPrinted, LaguerreIndex::new(0, 0.0).unwrap(), 1.0)
        .unwrap()
        .scaled();
    outcome(
        worst <= 1e-10,
        format!("10000 samples, max residual/(1+|lhs|) = {worst:.3e} (tol 1e-10); printed contiguous form off by {printed:.3e}"),
    )
}

fn ode() -> Outcome {
    let rule = QuadratureRule::for_range(10, 10).unwrap();
    let mut worst = 0.0f64;
    let mut weakest = f64::INFINITY;
    let eps = 1e-3;
    for n in 0..=10u32 {
        for m in -10..=10i32 {
            let qn = QuantumNumbers::new(n, m);
            let idx = LaguerreIndex::new(n as usize, m.unsigned_abs() as f64).unwrap();
            let mut detected = 0.0f64;
            for &z in rule.nodes() {
                worst = worst.max(states::ode_residual(qn, z).unwrap().relative());
                let g = laguerre::eval(idx, z).unwrap() + eps * z;
                let dg = laguerre::deriv(idx, z).unwrap() + eps;
                let d2g = laguerre::second_deriv(idx, z).unwrap();
                detected = detected.max(states::kummer_residual(qn, field(1.0), z, g, dg, d2g).value.abs());
            }
            weakest = weakest.min(detected);
        }
    }
    outcome(
        worst <= 1e-9 && weakest > 1e-4,
        format!("max scaled residual {worst:.3e} (tol 1e-9), weakest perturbation residual {weakest:.3e} (> 1e-4)"),
    )
}

fn quadrature() -> Outcome {
    let (mut mono, mut sums) = (0.0f64, 0.0f64);
    for alpha in 0..=12u32 {
        let a = alpha as f64;
        let gamma = landau::special::gamma(a + 1.0);
        for k in 1..=32usize {
            let rule = QuadratureRule::new(a, k).unwrap();
            let total: f64 = rule.weights().iter().sum();
            sums = sums.max((total - gamma).abs() / gamma);
            for j in 0..2 * k {
                let got = rule.integrate(|x| x.powi(j as i32)).unwrap();
                let exact = landau::special::gamma(a + j as f64 + 1.0);
                mono = mono.max((got - exact).abs() / exact);
            }
        }
    }
    outcome(
        mono <= 1e-11 && sums <= 1e-12,
        format!("monomials {mono:.3e} (tol 1e-11), weight sums {sums:.3e} (tol 1e-12)"),
    )
}

fn velocity_orders() -> Outcome {
    let f = field(1.0);
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, m, expected) in [(0u32, 0i32, 0.5), (1, 2, 3.5)] {
        let state = LandauState::new(QuantumNumbers::new(n, m), f);
        pass &= state.energy() == expected;
        let mut comm = Vec::new();
        let mut eig = Vec::new();
        for points in [129, 257] {
            let grid = CartesianGrid::new(10.0, points).unwrap();
            let psi = velocity::sample_state(&state, grid, Execution::default());
            comm.push(velocity::commutator_residual(f, &psi, Execution::default()));
            eig.push(velocity::eigen_residual(f, &psi, state.energy(), Execution::default()));
        }
        let pc = velocity::observed_order(comm[0], comm[1]);
        let pe = velocity::observed_order(eig[0], eig[1]);
        pass &= (pc - 2.0).abs() <= 0.3 && (pe - 2.0).abs() <= 0.3;
        lines.push(format!("psi{n}{m} E={expected}: commutator order {pc:.3}, eigen order {pe:.3}"));
    }
    outcome(pass, lines.join("; "))
}

fn run_cli(args: &[&str], env: &[(&str, &str)]) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_landau"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn landau");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn determinism() -> Outcome {
    let invocations: [&[&str]; 6] = [
        &["verify"],
        &["verify", "--format", "csv", "--suite", "ladder", "-B", "1"],
        &["spectrum", "-B", "2", "--n-max", "10", "--m-min", "-10", "--m-max", "10", "--format", "json"],
        &["eval", "--n", "2", "--m", "-1", "--grid-L", "6", "--grid-N", "33"],
        &["eval", "--n", "3", "--m", "2", "--zeta", "0.1,1,5,20", "--format", "json"],
        &["ladder", "--n", "3", "--m", "2", "--direction", "raise", "--mode", "fd"],
    ];
    let mut differing = Vec::new();
    for args in invocations {
        let (reference, code) = run_cli(args, &[]);
        if code != 0 || reference.is_empty() {
            differing.push(format!("{} exited {code}", args.join(" ")));
            continue;
        }
        let mut variants = vec![
            run_cli(args, &[]),
            run_cli(args, &[("RAYON_NUM_THREADS", "1")]),
            run_cli(args, &[("RAYON_NUM_THREADS", "7")]),
        ];
        if args[0] == "verify" {
            for jobs in ["1", "2", "5"] {
                let mut with_jobs = args.to_vec();
                with_jobs.extend(["--jobs", jobs]);
                variants.push(run_cli(&with_jobs, &[]));
            }
        }
        if variants.iter().any(|(bytes, c)| *c != code || *bytes != reference) {
            differing.push(args.join(" "));
        }
    }
    let pass = differing.is_empty();
    let detail = if pass {
        "6 invocations byte-identical across repeats, thread counts and --jobs".to_string()
    } else {
        format!("differs: {}", differing.join(", "))
    };
    outcome(pass, detail)
}

fn main() -> ExitCode {
    let criteria: [Check; 9] = [
        ("spectrum branches and level spacing", spectrum),
        ("state normalization and orthogonality", orthonormality),
        ("ladder action pointwise and overlap", ladder_action),
        ("ground-state annihilation", annihilation),
        ("Laguerre identity residuals", identities),
        ("radial ODE residual and perturbation detection", ode),
        ("Gauss-Laguerre exactness and weight sums", quadrature),
        ("velocity-operator convergence order", velocity_orders),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("criterion {} {:<48} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
