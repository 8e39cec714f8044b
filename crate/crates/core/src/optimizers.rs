//! Derivative-free minimizers: Nelder-Mead for exact objectives and SPSA for
//! noisy ones. Both return the best point ever evaluated.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cost function together with a call counter.
pub struct Objective<F> {
    arity: usize,
    func: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Objective<F> {
    pub fn new(arity: usize, func: F) -> Self {
        Objective {
            arity,
            func,
            evaluations: 0,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Calls the function once; non-finite values abort the optimization.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        debug_assert_eq!(x.len(), self.arity);
        self.evaluations += 1;
        let v = (self.func)(x);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                value: v,
                evaluation: self.evaluations,
            });
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct BestSeen {
    params: Vec<f64>,
    value: f64,
}

impl BestSeen {
    fn new(arity: usize) -> Self {
        BestSeen {
            params: vec![0.0; arity],
            value: f64::INFINITY,
        }
    }

    fn offer(&mut self, x: &[f64], v: f64) {
        if v < self.value {
            self.value = v;
            self.params.clear();
            self.params.extend_from_slice(x);
        }
    }
}

fn check_start<F>(obj: &Objective<F>, x0: &[f64]) -> Result<()> {
    if obj.arity == 0 {
        return Err(Error::Shape("objective must take at least one parameter".into()));
    }
    if x0.len() != obj.arity {
        return Err(Error::Shape(format!(
            "start point has {} coordinates, objective takes {}",
            x0.len(),
            obj.arity
        )));
    }
    Ok(())
}

/// Per-coordinate offset of the initial simplex (radians).
pub const SIMPLEX_STEP: f64 = 0.1;

/// Upper bound on Nelder-Mead evaluations for `n` parameters.
pub fn nelder_mead_budget(n: usize, max_iter: usize) -> usize {
    (n + 1) + max_iter * (n + 2)
}

/// Downhill simplex with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5. Stops when the spread of simplex values falls below `tol`
/// while every vertex lies within `sqrt(tol)` of the best one (a flat but
/// wide simplex can straddle a minimum), or after `max_iter` iterations.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    obj: &mut Objective<F>,
    x0: &[f64],
    max_iter: usize,
    tol: f64,
) -> Result<OptResult> {
    check_start(obj, x0)?;
    let n = x0.len();
    let start_evals = obj.evaluations;
    let mut best = BestSeen::new(n);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut x = x0.to_vec();
        if i > 0 {
            x[i - 1] += SIMPLEX_STEP;
        }
        let v = obj.evaluate(&x)?;
        best.offer(&x, v);
        simplex.push((x, v));
    }

    let mut converged = false;
    let mut iterations = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let width = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if simplex[n].1 - simplex[0].1 < tol && width <= tol.sqrt() {
            converged = true;
            break;
        }
        if iterations == max_iter {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let toward = |from: &[f64], scale: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, f)| c + scale * (f - c))
                .collect()
        };

        let worst = simplex[n].clone();
        let reflected = toward(&worst.0, -1.0);
        let fr = obj.evaluate(&reflected)?;
        best.offer(&reflected, fr);

        if fr < simplex[0].1 {
            let expanded = toward(&worst.0, -2.0);
            let fe = obj.evaluate(&expanded)?;
            best.offer(&expanded, fe);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, accept_below) = if fr < worst.1 {
            (toward(&reflected, 0.5), fr)
        } else {
            (toward(&worst.0, 0.5), worst.1)
        };
        let fc = obj.evaluate(&contracted)?;
        best.offer(&contracted, fc);
        if fc < accept_below || (fr < worst.1 && fc <= fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, a) in x.iter_mut().zip(&anchor) {
                *xi = a + 0.5 * (*xi - a);
            }
            *v = obj.evaluate(x)?;
            best.offer(x, *v);
        }
    }

    Ok(OptResult {
        best_params: best.params,
        best_value: best.value,
        evaluations: obj.evaluations - start_evals,
        converged,
    })
}

/// SPSA gain schedule: `a_k = a / (k + 1 + A)^alpha`, `c_k = c / (k + 1)^gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpsaGains {
    pub a: f64,
    pub c: f64,
    /// Stability constant; `None` means a tenth of the iteration budget.
    pub big_a: Option<f64>,
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for SpsaGains {
    fn default() -> Self {
        SpsaGains {
            a: 0.2,
            c: 0.1,
            big_a: None,
            alpha: 0.602,
            gamma: 0.101,
        }
    }
}

/// Simultaneous perturbation stochastic approximation.
///
/// Evaluates the start point once, then spends exactly two evaluations per
/// iteration at `x ± c_k Δ` with Rademacher `Δ`. The returned point is the
/// best of all `2 * max_iter + 1` evaluations.
pub fn spsa<F: FnMut(&[f64]) -> f64, R: Rng + ?Sized>(
    obj: &mut Objective<F>,
    x0: &[f64],
    max_iter: usize,
    gains: &SpsaGains,
    rng: &mut R,
) -> Result<OptResult> {
    check_start(obj, x0)?;
    let n = x0.len();
    let start_evals = obj.evaluations;
    let big_a = gains.big_a.unwrap_or(max_iter as f64 / 10.0);
    let mut best = BestSeen::new(n);

    let mut x = x0.to_vec();
    let f0 = obj.evaluate(&x)?;
    best.offer(&x, f0);

    let mut delta = vec![0.0; n];
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for k in 0..max_iter {
        let ak = gains.a / (k as f64 + 1.0 + big_a).powf(gains.alpha);
        let ck = gains.c / (k as f64 + 1.0).powf(gains.gamma);
        for d in delta.iter_mut() {
            *d = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        }
        for i in 0..n {
            plus[i] = x[i] + ck * delta[i];
            minus[i] = x[i] - ck * delta[i];
        }
        let fp = obj.evaluate(&plus)?;
        best.offer(&plus, fp);
        let fm = obj.evaluate(&minus)?;
        best.offer(&minus, fm);
        let diff = (fp - fm) / (2.0 * ck);
        for i in 0..n {
            x[i] -= ak * diff / delta[i];
        }
    }

    Ok(OptResult {
        best_params: best.params,
        best_value: best.value,
        evaluations: obj.evaluations - start_evals,
        converged: false,
    })
}

/// Exact number of SPSA evaluations for `max_iter` iterations.
pub fn spsa_budget(max_iter: usize) -> usize {
    2 * max_iter + 1
}

/// Optimizer selection shared by the evolution loop and the VQE baselines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimizer {
    NelderMead {
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Spsa {
        #[serde(default, flatten)]
        gains: SpsaGains,
    },
}

fn default_tol() -> f64 {
    1e-10
}

impl Default for Optimizer {
    fn default() -> Self {
        Optimizer::NelderMead { tol: default_tol() }
    }
}

impl Optimizer {
    pub fn minimize<F: FnMut(&[f64]) -> f64, R: Rng + ?Sized>(
        &self,
        obj: &mut Objective<F>,
        x0: &[f64],
        max_iter: usize,
        rng: &mut R,
    ) -> Result<OptResult> {
        match self {
            Optimizer::NelderMead { tol } => nelder_mead(obj, x0, max_iter, *tol),
            Optimizer::Spsa { gains } => spsa(obj, x0, max_iter, gains, rng),
        }
    }

    pub fn budget(&self, n: usize, max_iter: usize) -> usize {
        match self {
            Optimizer::NelderMead { .. } => nelder_mead_budget(n, max_iter),
            Optimizer::Spsa { .. } => spsa_budget(max_iter),
        }
    }
}
