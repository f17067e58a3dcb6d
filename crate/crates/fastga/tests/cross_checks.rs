//! Cross-module consistency: the sampler against the exact moments, and the
//! measured one-iteration progress frequencies against the analytic table.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fastga::algorithms::LambdaController;
use fastga::bounds::{expected_lambda_exact, lambda_variance_exact, progress_bound};
use fastga::harness::estimate_progress_probability;
use fastga::sampling::PowerLawDist;

#[test]
fn sampler_mean_matches_exact_expectation() {
    let draws = 1_000_000u32;
    for (beta, u, seed) in [
        (2.5, 64u64, 1u64),
        (2.0, 256, 2),
        (1.5, 100, 3),
        (0.5, 16, 4),
        (3.0, 1000, 5),
    ] {
        let dist = PowerLawDist::new(beta, u).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sum = 0u64;
        for _ in 0..draws {
            sum += dist.sample(&mut rng);
        }
        let mean = sum as f64 / draws as f64;
        let exact = expected_lambda_exact(beta, u);
        let stderr = (lambda_variance_exact(beta, u) / draws as f64).sqrt();
        assert!(
            (mean - exact).abs() < 5.0 * stderr,
            "beta={beta}, u={u}: sampler mean {mean} vs exact {exact} (se {stderr})"
        );
    }
}

#[test]
fn measured_progress_tracks_the_table_in_d() {
    // Small-u regime of the progress table at beta = 2.5, u = 4, n = 1024:
    // the cell is d*u^(3-beta)/n, linear in d. The measured one-iteration
    // improvement frequency should scale the same way (log-log slope 1
    // within 0.15) and stay above a fitted multiple of the formula.
    let n = 1024usize;
    let u = 4u64;
    let beta = 2.5;
    let dist = Arc::new(PowerLawDist::new(beta, u).unwrap());
    let controller = LambdaController::heavy_tailed(dist);
    let trials = 100_000u32;
    let mut rng = ChaCha8Rng::seed_from_u64(77);

    let distances = [8usize, 16, 32, 64];
    let mut measured = Vec::new();
    let mut formula = Vec::new();
    for &d in &distances {
        let (p, _) =
            estimate_progress_probability(n, d, &controller, trials, &mut rng).unwrap();
        let cell = progress_bound(beta, u, n as u64, d as u64).unwrap();
        assert_eq!(cell.expression, "d*u^(3-beta)/n");
        measured.push(p);
        formula.push(cell.value);
    }

    // Least-squares slope of ln(p) against ln(d).
    let xs: Vec<f64> = distances.iter().map(|&d| (d as f64).ln()).collect();
    let ys: Vec<f64> = measured.iter().map(|&p| p.ln()).collect();
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
    assert!(
        (slope - 1.0).abs() <= 0.15,
        "log-log slope {slope} deviates from the formula exponent 1"
    );

    // The measurement dominates a fitted constant times the formula.
    let ratios: Vec<f64> = measured
        .iter()
        .zip(&formula)
        .map(|(p, f)| p / f)
        .collect();
    let fitted = ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64;
    let fitted = fitted.exp();
    for (i, r) in ratios.iter().enumerate() {
        assert!(
            *r >= 0.5 * fitted,
            "d={}: measured/formula ratio {r} falls below the fitted constant {fitted}",
            distances[i]
        );
    }
}
