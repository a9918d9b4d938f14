//! Square-root cusp of `B_n` at its minimizer `η = η_{n+1}`.
//!
//! The orbit `x_{k+1} = Ψ(x_k) = 1/((n+1) + x_k)` approaches `η` from
//! alternating sides with `δ_{k+1} = -η x_{k+1} δ_k`, and
//!
//! ```text
//! x_k = (G_{k-1} + x_1 H_{k-1}) / (G_k + x_1 H_k),
//! G_{k+1} = (n+1) G_k + G_{k-1},  G_1 = 1, G_2 = n+1,  H_1 = 0, H_2 = 1.
//! ```
//!
//! With `E_k = B_n(x_k) - B_n(η)` the functional equation gives
//! `E_{k+2} >= λ E_k` for even `k`, `λ_k = x_{2k+2} x_{2k+1}`, and the
//! log-log slope of `E_k` against `|δ_k|` is the cusp exponent `1/2`.
//!
//! Two seeds are supported. The default is the quadratic irrational
//! `x_1 = [0; n+2, (n+1)]`, whose orbit stays in closed form, so `E_k` is
//! exact. A rational seed such as `(n+1)/((n+1)²+1)` has a rational orbit
//! where `B_n = +∞`; there `E_k` uses the full finite sum of the terminating
//! expansion and is only a one-sided probe.

use rug::{Float, Integer, Rational};

use crate::cf::{eta_interval, orbit_enclosures, CfSpec};
use crate::error::{Error, Result};
use crate::eval::{eval_periodic_exact, finite_sum, fixed_point_enclosure, Enclosure, SigmaParam};
use crate::precision::Precision;

/// Starting point of the orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seed {
    /// `[0; n+2, (n+1)]`.
    Quadratic,
    Rational(Rational),
}

#[derive(Debug, Clone)]
pub struct ScalingRun {
    pub n: u64,
    pub seed: Seed,
    /// `x_1, ..., x_steps`.
    pub orbit: Vec<Float>,
    /// `δ_k = x_k - η_{n+1}`.
    pub delta: Vec<Float>,
    /// `E_k = B_n(x_k) - B_n(η_{n+1})`.
    pub energy: Vec<Enclosure>,
    /// `E_k` came from finite sums at rational points.
    pub one_sided: bool,
    /// `λ_k = x_{2k+2} x_{2k+1}` for `k = 1, 2, ...` while `2k+2 <= steps`.
    pub lambdas: Vec<Float>,
    /// `G_0, ..., G_{steps+2}` and the same for `H`.
    pub g: Vec<Integer>,
    pub h: Vec<Integer>,
    /// Largest gap between iterated and closed-form orbit points.
    pub closed_form_error: Float,
    pub eta: Float,
}

impl ScalingRun {
    pub fn steps(&self) -> usize {
        self.orbit.len()
    }

    /// `x_k`, 1-based.
    pub fn x(&self, k: usize) -> &Float {
        &self.orbit[k - 1]
    }

    pub fn delta(&self, k: usize) -> &Float {
        &self.delta[k - 1]
    }

    pub fn energy(&self, k: usize) -> &Enclosure {
        &self.energy[k - 1]
    }

    /// `λ_k`, 1-based.
    pub fn lambda(&self, k: usize) -> &Float {
        &self.lambdas[k - 1]
    }

    /// `|x_{k+1} δ_k + δ_{k+1} + (n + η) δ_{k+1}|`, which vanishes identically.
    pub fn delta_identity_residual(&self, k: usize) -> Float {
        let p = self.eta.prec();
        let d0 = self.delta(k);
        let d1 = self.delta(k + 1);
        let lhs = Float::with_val(p, self.x(k + 1) * d0) + d1;
        let c = Float::with_val(p, &self.eta + self.n);
        Float::with_val(p, lhs + c * d1).abs()
    }

    /// `|x_{k+1} δ_k + δ_{k+1} - ((n+1+x_k) δ_{k+1} - n δ_k)|`: the same
    /// identity in the form printed for `n = 2`, which does not hold.
    pub fn printed_identity_residual(&self, k: usize) -> Float {
        let p = self.eta.prec();
        let d0 = self.delta(k);
        let d1 = self.delta(k + 1);
        let lhs = Float::with_val(p, self.x(k + 1) * d0) + d1;
        let a = Float::with_val(p, self.x(k) + (self.n + 1)) * d1;
        let rhs = a - Float::with_val(p, d0 * self.n);
        Float::with_val(p, lhs - rhs).abs()
    }
}

/// `G_0..=G_upto` and `H_0..=H_upto` for `G_{k+1} = (n+1) G_k + G_{k-1}`.
pub fn gh_sequences(n: u64, upto: usize) -> (Vec<Integer>, Vec<Integer>) {
    let mut g = vec![Integer::from(0), Integer::from(1)];
    let mut h = vec![Integer::from(1), Integer::from(0)];
    while g.len() <= upto {
        let k = g.len();
        g.push(Integer::from(&g[k - 1] * (n + 1)) + &g[k - 2]);
        h.push(Integer::from(&h[k - 1] * (n + 1)) + &h[k - 2]);
    }
    g.truncate(upto + 1);
    h.truncate(upto + 1);
    (g, h)
}

/// `[G_{2k}/G_{2k+2}, G_{2k+2}/G_{2k+4}]`, which contains `λ_k` for any
/// `x_1 ∈ [0, (n+1)/((n+1)²+1)]`.
pub fn lambda_bounds(n: u64, k: usize) -> Result<(Rational, Rational)> {
    if k == 0 {
        return Err(Error::Domain("lambda_bounds needs k >= 1".into()));
    }
    let (g, _) = gh_sequences(n, 2 * k + 4);
    Ok((
        Rational::from((g[2 * k].clone(), g[2 * k + 2].clone())),
        Rational::from((g[2 * k + 2].clone(), g[2 * k + 4].clone())),
    ))
}

fn quadratic_spec(n: u64, k: usize) -> Result<CfSpec> {
    let mut prefix = vec![n + 1; k - 1];
    prefix.push(n + 2);
    CfSpec::periodic(prefix, vec![n + 1])
}

/// Runs the orbit for `steps` points at `σ = n`.
pub fn run_orbit(n: u64, seed: &Seed, steps: usize, precision: Precision) -> Result<ScalingRun> {
    if n < 2 {
        return Err(Error::Domain("scaling needs n >= 2".into()));
    }
    if steps < 2 {
        return Err(Error::Domain("scaling needs steps >= 2".into()));
    }
    let bound = Rational::from((n + 1, (n + 1) * (n + 1) + 1));
    if let Seed::Rational(r) = seed {
        if *r <= 0 || *r > bound {
            return Err(Error::Domain(format!("x1 = {r} must lie in (0, {bound}]")));
        }
    }
    let sigma = SigmaParam::from_rational(Rational::from(n), precision)?;
    let prec = sigma.work_bits();
    let out = precision.bits();
    let s = sigma.interval(prec);
    let eta_iv = eta_interval(n + 1, prec);
    let eta = Float::with_val(out, eta_iv.mid());
    let b_eta = fixed_point_enclosure(n + 1, &s, prec)?;
    let (g, h) = gh_sequences(n, steps + 2);

    let mut orbit = Vec::with_capacity(steps);
    let mut energy = Vec::with_capacity(steps);
    match seed {
        Seed::Quadratic => {
            for k in 1..=steps {
                let spec = quadratic_spec(n, k)?;
                let x = orbit_enclosures(&spec, 0, prec)?.swap_remove(0);
                orbit.push(Float::with_val(out, x.mid()));
                let b = eval_periodic_exact(&spec, &sigma)?.value.to_interval();
                energy.push(Enclosure::from_interval(b.sub(&b_eta)));
            }
        }
        Seed::Rational(r) => {
            let mut x = r.clone();
            for _ in 0..steps {
                orbit.push(Float::with_val(out, &x));
                let (b, _, _) = finite_sum(&x, &s, prec)?;
                energy.push(Enclosure::from_interval(b.sub(&b_eta)));
                x = Rational::from((x + (n + 1)).recip_ref());
            }
        }
    }

    // direct iteration against the G/H closed form
    let x1 = orbit[0].clone();
    let mut it = x1.clone();
    let mut err = Float::new(out);
    for k in 1..=steps {
        let num = Float::with_val(out, &x1 * &h[k - 1]) + &g[k - 1];
        let den = Float::with_val(out, &x1 * &h[k]) + &g[k];
        let closed = num / den;
        let e = Float::with_val(out, &it - &closed).abs();
        if e > err {
            err = e;
        }
        let d = Float::with_val(out, &orbit[k - 1] - &it).abs();
        if d > err {
            err = d;
        }
        it = Float::with_val(out, &it + (n + 1)).recip();
    }

    let delta = orbit.iter().map(|x| Float::with_val(out, x - &eta)).collect();
    let lambdas = (1..)
        .take_while(|k| 2 * k + 2 <= steps)
        .map(|k| Float::with_val(out, &orbit[2 * k + 1] * &orbit[2 * k]))
        .collect();
    Ok(ScalingRun {
        n,
        seed: seed.clone(),
        orbit,
        delta,
        energy,
        one_sided: matches!(seed, Seed::Rational(_)),
        lambdas,
        g,
        h,
        closed_form_error: err,
        eta,
    })
}

#[derive(Debug, Clone)]
pub struct ExponentFit {
    /// Least-squares slope of `log E_k` against `log |δ_k|`.
    pub tau_hat: f64,
    /// `exp` of the intercept.
    pub c_hat: f64,
    /// Orbit indices `k` used in the fit.
    pub window: Vec<usize>,
    /// `E_k / η^{k-2}` over the window (`k = 2m+2` gives `E_{2m+2}/η^{2m}`).
    pub ratios: Vec<f64>,
    /// `exp(Σ log(λ_k/η²))` over the computed `λ_k`.
    pub lambda_constant: f64,
    /// `exp(-Σ log(G_{2k+2}/G_{2k})) = G_2/G_{2K+2}`, the constant as
    /// printed; it tends to `0`.
    pub printed_constant: f64,
}

/// Fits the cusp exponent on the even orbit indices of `run`, dropping the
/// first two and any whose `E` enclosure is wider than 1% of its value.
pub fn fit_exponent(run: &ScalingRun) -> Result<ExponentFit> {
    let mut window = Vec::new();
    for k in (2..=run.steps()).step_by(2).skip(2) {
        let e = run.energy(k);
        if *e.lo() <= 0 || !e.is_bounded() {
            continue;
        }
        if e.width() > Float::with_val(e.lo().prec(), e.lo() / 100) {
            continue;
        }
        window.push(k);
    }
    if window.len() < 3 {
        return Err(Error::InsufficientDecay(format!(
            "only {} usable even indices out of {} steps",
            window.len(),
            run.steps()
        )));
    }
    let ln = |f: &Float| Float::with_val(f.prec(), f.ln_ref()).to_f64();
    let pts: Vec<(f64, f64)> = window
        .iter()
        .map(|&k| (ln(&Float::with_val(run.eta.prec(), run.delta(k).abs_ref())), ln(&run.energy(k).mid())))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let tau_hat = sxy / sxx;
    let c_hat = (my - tau_hat * mx).exp();

    let ln_eta = ln(&run.eta);
    let ratios = window
        .iter()
        .map(|&k| (ln(&run.energy(k).mid()) - (k as f64 - 2.0) * ln_eta).exp())
        .collect();
    let eta2 = Float::with_val(run.eta.prec(), run.eta.square_ref());
    let lambda_constant = run
        .lambdas
        .iter()
        .map(|l| ln(&Float::with_val(l.prec(), l / &eta2)))
        .sum::<f64>()
        .exp();
    let kk = run.lambdas.len();
    let printed_constant = Rational::from((run.g[2].clone(), run.g[2 * kk + 2].clone())).to_f64();
    Ok(ExponentFit {
        tau_hat,
        c_hat,
        window,
        ratios,
        lambda_constant,
        printed_constant,
    })
}

/// [`run_orbit`] from the quadratic seed followed by [`fit_exponent`].
pub fn estimate_exponent(n: u64, steps: usize, precision: Precision) -> Result<ExponentFit> {
    if steps < 6 || steps % 2 != 0 {
        return Err(Error::Domain("estimate_exponent needs an even steps >= 6".into()));
    }
    fit_exponent(&run_orbit(n, &Seed::Quadratic, steps, precision)?)
}
