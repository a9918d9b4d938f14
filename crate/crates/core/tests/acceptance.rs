//! Acceptance checks. Each test prints one `PASS`/`FAIL` line and then
//! asserts on it, so `cargo test --test acceptance -- --nocapture` doubles as
//! a report.

use brjuno::bounds::{b_star_iterate, g_enclosure, verify_cylinder_dominance, BoundContext};
use brjuno::certified::{check_w_positive, localization_margin, verify_contraction};
use brjuno::cf::{self, orbit_enclosures};
use brjuno::eval::{eval_enclosure, eval_periodic_exact, functional_equation_residual, Enclosure};
use brjuno::minima::{crossing, localize, phase_scan, sigma_star, sigma_star_asymptote, CandidateFamily};
use brjuno::scaling::{estimate_exponent, lambda_bounds, run_orbit, Seed};
use brjuno::{CfSpec, Precision, SigmaParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

fn report(id: &str, passed: bool, detail: impl AsRef<str>) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id}: {tag} {}", detail.as_ref());
    assert!(passed, "criterion {id} failed: {}", detail.as_ref());
}

fn p50() -> Precision {
    Precision::digits(50).unwrap()
}

fn sigma_int(n: u64) -> SigmaParam {
    SigmaParam::from_rational(Rational::from(n), p50()).unwrap()
}

/// `η_m^{-1/σ} / (1 - η_m)` straight from `η_m = (√(m²+4) - m)/2`.
fn fixed_point_oracle(m: u64, sigma: &Float) -> Float {
    let prec = sigma.prec();
    let disc = Float::with_val(prec, m * m + 4).sqrt();
    let eta = (disc - m) / 2u32;
    let pw = Float::with_val(prec, eta.ln_ref()) / sigma;
    let num = (-pw).exp();
    let one_minus = Float::with_val(prec, 1u32 - &eta);
    num / one_minus
}

/// `B ≥ g` cannot be refuted at `spec`: `B.hi >= g.lo`.
fn dominates_g(spec: &CfSpec, sigma: &SigmaParam, value: &Enclosure) -> bool {
    let prec = sigma.work_bits();
    let x = orbit_enclosures(spec, 0, prec).unwrap().swap_remove(0);
    let g = g_enclosure(&x, &sigma.interval(prec)).unwrap();
    *value.hi() >= *g.lo()
}

fn random_periodic(rng: &mut ChaCha8Rng) -> CfSpec {
    let pre: Vec<u64> = (0..rng.gen_range(0..5)).map(|_| rng.gen_range(1..=50)).collect();
    let per: Vec<u64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=50)).collect();
    CfSpec::periodic(pre, per).unwrap()
}

#[test]
fn criterion_1_closed_form_identity() {
    let mut worst_rel = Float::with_val(64, 0);
    let mut bad = Vec::new();
    for n in 1..=20u64 {
        let s = sigma_int(n);
        let spec = CfSpec::fixed_point(n + 1).unwrap();
        let exact = eval_periodic_exact(&spec, &s).unwrap().value;
        let oracle = fixed_point_oracle(n + 1, &Float::with_val(400, n));
        let rel = Float::with_val(64, (exact.mid() - &oracle) / &oracle).abs();
        if rel > worst_rel {
            worst_rel = rel.clone();
        }
        if rel > 1e-30 {
            bad.push(format!("n={n} rel={rel:.3e}"));
        }
        for k in 10..=100 {
            let enc = eval_enclosure(&spec, &s, k, Some(n + 1)).unwrap().value;
            if exact.hi() < enc.lo() || exact.lo() > enc.hi() {
                bad.push(format!("n={n} K={k} closed form outside partial-sum enclosure"));
            }
        }
    }
    report(
        "1",
        bad.is_empty(),
        format!("n=1..20, K=10..100; worst relative error {worst_rel:.3e} {bad:?}"),
    );
}

#[test]
fn criterion_2_fixed_point_wins_at_integer_sigma() {
    let family = CandidateFamily::default();
    let rows = phase_scan(&Rational::from(1), &Rational::from(8), 8, &family, p50()).unwrap();
    let mut bad = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(*row.sigma.sigma(), n);
        if row.argmin_spec != CfSpec::fixed_point(n + 1).unwrap() {
            bad.push(format!("sigma={n}: argmin {}", row.argmin_spec));
        }
        let oracle = fixed_point_oracle(n + 1, &Float::with_val(400, n));
        let diff = Float::with_val(64, row.min_value.mid() - &oracle).abs();
        if diff > 1e-8 {
            bad.push(format!("sigma={n}: min off by {diff:.3e}"));
        }
        if row.net.beats_family {
            bad.push(format!("sigma={n}: net point beats the family"));
        }
        if row.net.evaluated + row.net.pruned != family.net_points {
            bad.push(format!("sigma={n}: net incomplete"));
        }
    }
    report("2", bad.is_empty(), format!("sigma=1..8, family {family} {bad:?}"));
}

#[test]
fn criterion_3a_sigma_star_1() {
    let v = sigma_star(1, p50()).unwrap().to_f64();
    report("3a", (v - 0.93554).abs() <= 1e-4, format!("sigma*_1 = {v:.10} vs 0.93554 +- 1e-4"));
}

#[test]
fn criterion_3b_sigma_star_2() {
    let v = sigma_star(2, p50()).unwrap().to_f64();
    report("3b", (v - 1.79952).abs() <= 1e-4, format!("sigma*_2 = {v:.10} vs 1.79952 +- 1e-4"));
}

#[test]
fn criterion_3c_bisection_agrees() {
    let tol = Rational::from((1, 100_000_000_000u64));
    let mut bad = Vec::new();
    for n in [1u64, 2] {
        let closed = sigma_star(n, p50()).unwrap();
        let (lo, hi) = crossing(
            n,
            n + 1,
            &Rational::from((2 * n as i64 - 1, 2)),
            &Rational::from(n + 1),
            &tol,
            p50(),
        )
        .unwrap();
        let mid = Float::with_val(200, Rational::from(&lo + &hi) / 2u32);
        let d = Float::with_val(64, &mid - &closed).abs();
        if d > 1e-10 {
            bad.push(format!("n={n}: |bisection - formula| = {d:.3e}"));
        }
    }
    report("3c", bad.is_empty(), format!("bisection vs closed form to 1e-10 {bad:?}"));
}

#[test]
fn criterion_3d_asymptotics() {
    let mut worst: f64 = 0.0;
    for n in [50u64, 100, 200] {
        let v = sigma_star(n, p50()).unwrap().to_f64();
        worst = worst.max((v - sigma_star_asymptote(n)).abs() * (n * n) as f64);
    }
    report("3d", worst <= 1.0, format!("max n^2 |sigma*_n - (n - 1/2 + 5/(6n))| = {worst:.4}"));
}

#[test]
fn criterion_4_localization_margins() {
    let cert = check_w_positive(2, 800, p50()).unwrap();
    let failures = cert.failures();
    let mut out_of_band = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for n in 100..=800u64 {
        let m = localization_margin(n, p50().bits()).unwrap();
        let scaled = m.mid().to_f64() * (n as f64).powi(3);
        lo = lo.min(scaled);
        hi = hi.max(scaled);
        if !(0.45..=0.55).contains(&scaled) {
            out_of_band.push(n);
        }
    }
    report(
        "4",
        failures.is_empty() && out_of_band.is_empty(),
        format!("delta_n > 0 for n=2..800 (failures {failures:?}); n^3 delta_n in [{lo:.4}, {hi:.4}] for n=100..800"),
    );
}

#[test]
fn criterion_5_contraction() {
    let cert = verify_contraction(4096, p50()).unwrap();
    let top = cert.domain.hi().clone();
    let inside = cert
        .subdivision
        .iter()
        .all(|pc| *pc.image.lo() >= 0 && *pc.image.hi() <= top);
    let half = cert.max_fprime <= 0.5;
    report(
        "5",
        cert.passed() && inside && half && cert.verdict.exit_code() == 0,
        format!(
            "max F' = {:.6} over {} pieces, images inside J: {inside}, exit code {}",
            cert.max_fprime.to_f64(),
            cert.subdivision.len(),
            cert.verdict.exit_code()
        ),
    );
}

#[test]
fn criterion_6_scaling_exponent() {
    let mut bad = Vec::new();
    let mut taus = Vec::new();
    for n in [2u64, 4] {
        let fit = estimate_exponent(n, 12, p50()).unwrap();
        taus.push(fit.tau_hat);
        if !(0.45..=0.55).contains(&fit.tau_hat) {
            bad.push(format!("n={n}: tau_hat {}", fit.tau_hat));
        }
        let min = fit.ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = fit.ratios.iter().cloned().fold(0.0, f64::max);
        if !(min > 0.0 && min > 0.5 * max) {
            bad.push(format!("n={n}: E ratios {:?}", fit.ratios));
        }
        let run = run_orbit(n, &Seed::Quadratic, 12, p50()).unwrap();
        for k in 1..=run.lambdas.len() {
            let (lo, hi) = lambda_bounds(n, k).unwrap();
            let l = run.lambda(k);
            if !(lo <= *l && *l <= hi) {
                bad.push(format!("n={n}: lambda_{k} outside bracket"));
            }
        }
    }
    report("6", bad.is_empty(), format!("tau_hat {taus:?} {bad:?}"));
}

#[test]
fn criterion_7a_beta_q_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..1000 {
        let spec = random_periodic(&mut rng);
        let t = cf::expand(&spec, 30, p50()).unwrap();
        for n in 0..30i64 {
            let v = Float::with_val(t.prec(), t.beta(n) * t.q(n + 1));
            if !(v > 0.5 && v < 1) {
                bad += 1;
            }
        }
    }
    report("7a", bad == 0, format!("1000 specs x depth 30, {bad} violations"));
}

#[test]
fn criterion_7b_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut bad = 0;
    for _ in 0..1000 {
        let spec = random_periodic(&mut rng);
        let t = cf::expand(&spec, 30, p50()).unwrap();
        for n in 0..=31i64 {
            let det = rug::Integer::from(t.p(n) * t.q(n - 1)) - rug::Integer::from(t.p(n - 1) * t.q(n));
            let want = if n % 2 == 0 { -1 } else { 1 };
            if det != want {
                bad += 1;
            }
        }
    }
    report("7b", bad == 0, format!("p_n q_(n-1) - p_(n-1) q_n = (-1)^(n+1), {bad} violations"));
}

#[test]
fn criterion_7c_b_above_g() {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    let mut check = |spec: &CfSpec, s: &SigmaParam| {
        let v = eval_periodic_exact(spec, s).unwrap().value;
        checked += 1;
        if !dominates_g(spec, s, &v) {
            bad.push(format!("{spec} at sigma={}", s.to_f64()));
        }
    };
    for n in 1..=20u64 {
        check(&CfSpec::fixed_point(n + 1).unwrap(), &sigma_int(n));
    }
    let family = CandidateFamily::default();
    for n in 1..=8u64 {
        for spec in family.candidates() {
            check(&spec, &sigma_int(n));
        }
    }
    for n in [2u64, 4] {
        for k in 1..=12usize {
            let mut prefix = vec![n + 1; k - 1];
            prefix.push(n + 2);
            check(&CfSpec::periodic(prefix, vec![n + 1]).unwrap(), &sigma_int(n));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for sv in [0.7, 1.0, 2.5] {
        let s = SigmaParam::new(sv, p50()).unwrap();
        for _ in 0..100 {
            check(&random_periodic(&mut rng), &s);
        }
    }
    report("7c", bad.is_empty(), format!("{checked} points {bad:?}"));
}

#[test]
fn criterion_7d_cylinder_dominance() {
    let mut bad = Vec::new();
    let mut worst_tangency = Float::with_val(64, 0);
    for sv in [1u64, 2, 3] {
        let ctx = BoundContext::new(&sigma_int(sv));
        for k in 1..=6 {
            let c = verify_cylinder_dominance(k, &ctx, 200).unwrap();
            if c.tangency_gap > worst_tangency {
                worst_tangency = Float::with_val(64, &c.tangency_gap);
            }
            if !c.passed {
                bad.push(format!("sigma={sv} k={k}"));
            }
        }
    }
    report(
        "7d",
        bad.is_empty(),
        format!("g_k >= g, k=1..6, sigma=1,2,3; worst |g_k(p) - g(p)| {worst_tangency:.3e} {bad:?}"),
    );
}

#[test]
fn criterion_7e_b_star_iteration() {
    let mut bad = Vec::new();
    for sv in [0.5, 1.0, 2.0, 5.0] {
        let it = b_star_iterate(&SigmaParam::new(sv, p50()).unwrap(), 1000).unwrap();
        if !(it.strictly_increasing && it.converged) {
            bad.push(format!("sigma={sv}: {} terms", it.values.len()));
        }
    }
    report("7e", bad.is_empty(), format!("phi iteration from b_1 = 1 {bad:?}"));
}

#[test]
fn criterion_7f_functional_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst = Float::with_val(64, 0);
    for sv in [0.7, 1.0, 2.5] {
        let s = SigmaParam::new(sv, p50()).unwrap();
        for _ in 0..100 {
            let r = functional_equation_residual(&random_periodic(&mut rng), &s).unwrap();
            if r > worst {
                worst = Float::with_val(64, &r);
            }
        }
    }
    report("7f", worst < 1e-45, format!("300 specs, worst residual {worst:.3e}"));
}

#[test]
fn criterion_8_localization_stability() {
    let mut bad = Vec::new();
    for n in 1..=10u64 {
        for i in 0..21i64 {
            // n - 0.05 + i/200
            let s = Rational::from(n) - Rational::from((1, 20)) + Rational::from((i, 200));
            let sigma = SigmaParam::from_rational(s.clone(), p50()).unwrap();
            let c = localize(n, &sigma).unwrap();
            if !c.passed {
                bad.push(format!("n={n} sigma={}", s.to_f64()));
            }
        }
    }
    report("8", bad.is_empty(), format!("n=1..10, 21 sigma each {bad:?}"));
}
