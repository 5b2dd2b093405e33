//! Acceptance criteria for the bundled data and the default seed.
//!
//! Runs without the libtest harness and prints one PASS/FAIL line per
//! criterion; the process fails if any criterion does.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use elections::io::bundled_dataset;
use elections::runner::{run_parallel, run_serial};
use elections_core::generator::{draw_noise, raw_shares};
use elections_core::linalg::{dot, Matrix};
use elections_core::montecarlo::{DEFAULT_BIN_WIDTH, DEFAULT_SWEEP};
use elections_core::pca::{center, covariance};
use elections_core::scenario::{run_scenario, SCENARIOS};
use elections_core::{OutcomeCode, PcaModel, StateId};

const TRIALS: u64 = 20_000;
const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail.push_str(&format!(" [{:.0} ms]", took.as_secs_f64() * 1e3));
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail.push_str(&format!(" exceeds {:?}", limit));
        }
    }
    o
}

fn table_exactness() -> Outcome {
    // (code, popular A/B, full A/B, house A/B)
    let expected = [
        (OutcomeCode::LW, (253.0, 247.0), (5, 6), (3, 2)),
        (OutcomeCode::LL, (261.0, 239.0), (3, 8), (1, 4)),
        (OutcomeCode::WL, (253.0, 247.0), (6, 5), (2, 3)),
    ];
    let mut bad = Vec::new();
    for (s, (code, pop, full, house)) in SCENARIOS.iter().zip(expected) {
        let r = run_scenario(s).expect("no ties");
        let (a, b) = r.popular();
        let ok = r.code == code
            && (a - pop.0).abs() < 1e-9
            && (b - pop.1).abs() < 1e-9
            && (r.full.dem_electors, r.full.rep_electors) == full
            && (r.house.dem_electors, r.house.rep_electors) == house;
        if !ok {
            bad.push(code.as_str());
        }
    }
    let cli = Command::new(env!("CARGO_BIN_EXE_elections"))
        .arg("scenario")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&cli.stdout);
    let cli_ok = cli.status.success() && text.matches("matches the expected table").count() == 3;
    check(
        bad.is_empty() && cli_ok,
        format!("mismatched scenarios {:?}, command exit ok {}", bad, cli_ok),
    )
}

fn eigen_spectrum() -> Outcome {
    let m = PcaModel::fit_dataset(&bundled_dataset()).expect("fit");
    let l1 = m.eigenvalues()[0];
    let rel = (l1 - 0.2217).abs() / 0.2217;
    let ve = m.variance_explained(3).expect("rank >= 3");
    check(
        rel <= 0.10 && (0.86..=0.91).contains(&ve),
        format!("lambda1 {:.4} (rel err {:.3}), first three explain {:.4}", l1, rel, ve),
    )
}

fn loading_structure() -> Outcome {
    let m = PcaModel::fit_dataset(&bundled_dataset()).expect("fit");
    let e1 = &m.eigenvectors()[0];
    let positives = e1.iter().filter(|c| **c > 0.0).count();
    let majority_positive = 2 * positives > e1.len();
    let discordant: Vec<&str> = e1
        .iter()
        .enumerate()
        .filter(|(_, c)| (**c > 0.0) != majority_positive)
        .map(|(i, _)| StateId::new(i).unwrap().name())
        .collect();

    let mut order: Vec<usize> = (0..51).collect();
    let e2 = &m.eigenvectors()[1];
    order.sort_by(|&a, &b| e2[b].partial_cmp(&e2[a]).unwrap());
    let top: BTreeSet<&str> = order[..6].iter().map(|&i| StateId::new(i).unwrap().name()).collect();
    let southern: BTreeSet<&str> = ["Mississippi", "Alabama", "Georgia", "Arkansas", "Louisiana", "South Carolina"]
        .into_iter()
        .collect();
    check(
        discordant == ["Mississippi"] && top == southern,
        format!("first-component discordant {:?}, second-component top six {:?}", discordant, top),
    )
}

fn correlation_claim() -> Outcome {
    let r = bundled_dataset().state_correlations();
    let high = r.iter().filter(|&&x| x > 0.70).count();
    check(
        r.len() == 1275 && 2 * high > r.len(),
        format!("{} of {} pairs above 0.70 ({:.3})", high, r.len(), high as f64 / r.len() as f64),
    )
}

fn headline_and_ordering() -> (Outcome, Outcome) {
    let start = Instant::now();
    let d = bundled_dataset();
    let m = PcaModel::fit_dataset(&d).expect("fit");
    let out = run_parallel(&m, d.structure(), SEED, TRIALS, &DEFAULT_SWEEP, false, None).expect("run");
    let s = out.accumulator.summary(SEED, DEFAULT_BIN_WIDTH);
    let took = start.elapsed();
    let in_range = (0.039..=0.060).contains(&s.unpopular_full)
        && (0.059..=0.080).contains(&s.unpopular_house)
        && (0.050..=0.072).contains(&s.states_won_unpopular)
        && (0.40..=0.48).contains(&s.dem_win_rate);
    let five = check(
        in_range && took < Duration::from_secs(30),
        format!(
            "full {:.4}, house {:.4}, states-won {:.4}, Democratic wins {:.4} [{:.0} ms]",
            s.unpopular_full,
            s.unpopular_house,
            s.states_won_unpopular,
            s.dem_win_rate,
            took.as_secs_f64() * 1e3
        ),
    );
    let h = &s.diff_histogram;
    let six = check(
        s.unpopular_house > s.unpopular_full && h.positive > h.negative,
        format!(
            "house {:.4} > full {:.4}; unpopular differences {} positive vs {} negative",
            s.unpopular_house, s.unpopular_full, h.positive, h.negative
        ),
    );
    (five, six)
}

fn generator_moments() -> Outcome {
    const N: usize = 50_000;
    let m = PcaModel::fit_dataset(&bundled_dataset()).expect("fit");
    let dim = m.dim();
    let mut sum = vec![0.0; dim];
    let mut draws = Vec::with_capacity(N);
    for t in 0..N as u64 {
        let x = raw_shares(&m, &draw_noise(SEED, t, m.rank()).z).expect("dims");
        for (s, v) in sum.iter_mut().zip(&x) {
            *s += v;
        }
        draws.push(x);
    }
    let mean: Vec<f64> = sum.iter().map(|s| s / N as f64).collect();
    let mean_err = mean.iter().zip(m.mean()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let mut cov = Matrix::zeros(dim, dim);
    for x in &draws {
        for i in 0..dim {
            let di = x[i] - mean[i];
            for j in i..dim {
                cov[(i, j)] += di * (x[j] - mean[j]);
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            cov[(i, j)] /= (N - 1) as f64;
            cov[(j, i)] = cov[(i, j)];
        }
    }
    let cov_err = cov.max_abs_diff(&m.reconstructed_covariance());
    check(
        mean_err <= 0.01 && cov_err <= 0.01,
        format!("max mean error {:.5}, max covariance error {:.5}", mean_err, cov_err),
    )
}

/// Worst residual, orthonormality and relative trace errors of a fitted model.
fn numerical_errors(shares: &Matrix) -> (f64, f64, f64) {
    let cov = covariance(&center(shares)).expect("n >= 2");
    let m = PcaModel::fit(shares).expect("fit");
    let l1 = m.eigenvalues()[0];
    let mut residual: f64 = 0.0;
    for (lambda, e) in m.eigenvalues().iter().zip(m.eigenvectors()) {
        let ce = cov.mul_vec(e);
        let r = ce.iter().zip(e).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        residual = residual.max(r / l1);
    }
    let mut ortho: f64 = 0.0;
    for (i, a) in m.eigenvectors().iter().enumerate() {
        for (j, b) in m.eigenvectors().iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((dot(a, b) - want).abs());
        }
    }
    let trace = (m.eigenvalues().iter().sum::<f64>() - cov.trace()).abs() / cov.trace();
    (residual, ortho, trace)
}

fn numerical_core() -> Outcome {
    let mut worst = numerical_errors(bundled_dataset().shares());
    for k in 0..100u64 {
        // Synthetic share tables around one half, from a stream the simulations never use.
        let z = draw_noise(u64::MAX - k, 0, 12 * 51).z;
        let x = Matrix::from_vec(12, 51, z.iter().map(|v| 0.5 + 0.1 * v).collect());
        let e = numerical_errors(&x);
        worst = (worst.0.max(e.0), worst.1.max(e.1), worst.2.max(e.2));
    }
    check(
        worst.0 <= 1e-10 && worst.1 <= 1e-10 && worst.2 <= 1e-10,
        format!(
            "bundled + 100 synthetic: residual/lambda1 {:.1e}, orthonormality {:.1e}, trace {:.1e}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn determinism() -> Outcome {
    let d = bundled_dataset();
    let m = PcaModel::fit_dataset(&d).expect("fit");
    let serial = run_serial(&m, d.structure(), SEED, TRIALS, &DEFAULT_SWEEP, false).expect("run");
    let parallel = run_parallel(&m, d.structure(), SEED, TRIALS, &DEFAULT_SWEEP, false, Some(4)).expect("run");
    let a = serde_json::to_string(&serial.accumulator.summary(SEED, DEFAULT_BIN_WIDTH)).unwrap();
    let b = serde_json::to_string(&parallel.accumulator.summary(SEED, DEFAULT_BIN_WIDTH)).unwrap();
    check(a == b, format!("{} bytes of summary JSON, identical {}", a.len(), a == b))
}

fn main() {
    let second = Some(Duration::from_secs(1));
    let (five, six) = headline_and_ordering();
    let results = [
        ("three-state scenarios", timed(second, table_exactness)),
        ("eigen spectrum", timed(second, eigen_spectrum)),
        ("loading structure", timed(second, loading_structure)),
        ("correlation claim", timed(None, correlation_claim)),
        ("headline frequencies", five),
        ("ordering property", six),
        ("generator moments", timed(None, generator_moments)),
        ("numerical core", timed(None, numerical_core)),
        ("determinism", timed(None, determinism)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {}. {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
