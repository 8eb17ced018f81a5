//! Outer iteration: simultaneous steps for both players, running means and
//! the reward / bound diagnostics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::RewardMatrix;
use crate::simplex::SimplexVector;
use crate::subproblems::{cg_vertex, euclidean_prox, kl_prox, PenaltyWeight, PlayerSense, SubproblemResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ConditionalGradient,
    EuclideanPenalized,
    KlPenalized,
}

impl Method {
    pub fn is_penalized(self) -> bool {
        !matches!(self, Method::ConditionalGradient)
    }

    /// Short name used on the command line and in summaries.
    pub fn name(self) -> &'static str {
        match self {
            Method::ConditionalGradient => "cg",
            Method::EuclideanPenalized => "euclid",
            Method::KlPenalized => "kl",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cg" => Ok(Method::ConditionalGradient),
            "euclid" => Ok(Method::EuclideanPenalized),
            "kl" => Ok(Method::KlPenalized),
            other => Err(Error::Config(format!("unknown method {other:?} (expected cg, euclid or kl)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitialPoint {
    #[default]
    Uniform,
    Given(SimplexVector),
}

impl InitialPoint {
    fn resolve(&self, n: usize, what: &str) -> Result<SimplexVector> {
        match self {
            InitialPoint::Uniform => SimplexVector::uniform(n),
            InitialPoint::Given(v) => {
                v.check_dim(n, what)?;
                Ok(v.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Step size, in `[0, 1]`.
    pub alpha: f64,
    /// Penalty strength; required by the penalized methods, rejected otherwise.
    pub beta: Option<f64>,
    pub iterations: usize,
    pub init_x: InitialPoint,
    pub init_y: InitialPoint,
    /// Keep every `record_every`-th iteration (plus the first and last).
    pub record_every: usize,
}

impl SolverConfig {
    pub fn new(method: Method, alpha: f64) -> Self {
        SolverConfig {
            method,
            alpha,
            beta: None,
            iterations: 1000,
            init_x: InitialPoint::Uniform,
            init_y: InitialPoint::Uniform,
            record_every: 1,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_init(mut self, x: InitialPoint, y: InitialPoint) -> Self {
        self.init_x = x;
        self.init_y = y;
        self
    }

    pub fn with_record_every(mut self, record_every: usize) -> Self {
        self.record_every = record_every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be at least 1".into()));
        }
        match (self.method.is_penalized(), self.beta) {
            (true, None) => Err(Error::Config(format!("method {} requires beta", self.method))),
            (false, Some(_)) => Err(Error::Config(format!(
                "beta is not a parameter of method {}",
                self.method
            ))),
            (true, Some(b)) => PenaltyWeight::new(b).map(|_| ()),
            (false, None) => Ok(()),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Config(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub x: SimplexVector,
    pub y: SimplexVector,
    pub x_hat: SimplexVector,
    pub y_hat: SimplexVector,
    /// `F(x̂, ŷ)`.
    pub reward: f64,
    /// `max_x F(x, ŷ)`.
    pub upper: f64,
    /// `min_y F(x̂, y)`.
    pub lower: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub records: Vec<IterationRecord>,
    pub final_x_hat: SimplexVector,
    pub final_y_hat: SimplexVector,
    pub config: SolverConfig,
}

/// `vᵏ + α(v̄ − vᵏ)`.
pub fn step(v_k: &SimplexVector, v_bar: &SimplexVector, alpha: f64) -> Result<SimplexVector> {
    check_alpha(alpha)?;
    v_bar.check_dim(v_k.dim(), "step target")?;
    Ok(SimplexVector::from_raw(convex_step(v_k.as_slice(), v_bar.as_slice(), alpha)))
}

fn convex_step(v_k: &[f64], v_bar: &[f64], alpha: f64) -> Vec<f64> {
    v_k.iter()
        .zip(v_bar)
        .map(|(&a, &b)| if alpha == 1.0 { b } else { a + alpha * (b - a) })
        .collect()
}

/// Incremental mean, where `count` includes `v_new`.
pub fn running_mean(prev_mean: &SimplexVector, v_new: &SimplexVector, count: usize) -> Result<SimplexVector> {
    if count == 0 {
        return Err(Error::Config("running mean count must be at least 1".into()));
    }
    v_new.check_dim(prev_mean.dim(), "new iterate")?;
    Ok(SimplexVector::from_raw(mean_update(prev_mean.as_slice(), v_new.as_slice(), count)))
}

fn mean_update(prev: &[f64], new: &[f64], count: usize) -> Vec<f64> {
    if count == 1 {
        return new.to_vec();
    }
    let count = count as f64;
    prev.iter().zip(new).map(|(&m, &v)| m + (v - m) / count).collect()
}

/// Best-response values against the means: `(maxᵢ (Aŷ)ᵢ, minⱼ (Aᵀx̂)ⱼ)`.
pub fn bounds(a: &RewardMatrix, x_hat: &SimplexVector, y_hat: &SimplexVector) -> Result<(f64, f64)> {
    let upper = a.grad_x(y_hat)?.into_iter().fold(f64::NEG_INFINITY, f64::max);
    let lower = a.grad_y(x_hat)?.into_iter().fold(f64::INFINITY, f64::min);
    Ok((upper, lower))
}

fn solve_subproblem(
    method: Method,
    beta: Option<PenaltyWeight>,
    g: &[f64],
    v_k: &SimplexVector,
    sense: PlayerSense,
) -> Result<SubproblemResult> {
    match (method, beta) {
        (Method::ConditionalGradient, _) => cg_vertex(g, sense),
        (Method::EuclideanPenalized, Some(b)) => euclidean_prox(g, v_k, b, sense),
        (Method::KlPenalized, Some(b)) => kl_prox(g, v_k, b, sense),
        (m, None) => Err(Error::Config(format!("method {m} requires beta"))),
    }
}

fn record(
    a: &RewardMatrix,
    k: usize,
    x: &[f64],
    y: &[f64],
    x_hat: &[f64],
    y_hat: &[f64],
) -> Result<IterationRecord> {
    let at = |e: Error| match e {
        Error::Numeric(m) => Error::Numeric(format!("iteration {k}: {m}")),
        Error::InvalidInput(m) => Error::Numeric(format!("iteration {k}: iterate left the simplex: {m}")),
        other => other,
    };
    let x = SimplexVector::new(x.to_vec()).map_err(at)?;
    let y = SimplexVector::new(y.to_vec()).map_err(at)?;
    let x_hat = SimplexVector::new(x_hat.to_vec()).map_err(at)?;
    let y_hat = SimplexVector::new(y_hat.to_vec()).map_err(at)?;
    let reward = a.payoff(&x_hat, &y_hat)?;
    let (upper, lower) = bounds(a, &x_hat, &y_hat)?;
    if !(reward.is_finite() && upper.is_finite() && lower.is_finite()) {
        return Err(Error::Numeric(format!("iteration {k}: non-finite diagnostics")));
    }
    Ok(IterationRecord {
        k,
        x,
        y,
        x_hat,
        y_hat,
        reward,
        upper,
        lower,
        gap: upper - lower,
    })
}

/// Runs `config.iterations` simultaneous steps on `a`.
///
/// Both gradients are taken at the same pair `(xᵏ, yᵏ)` before either player
/// moves. The means include the initial point. Iteration 0 is always
/// recorded, then every `record_every`-th iteration and the last one.
pub fn run(a: &RewardMatrix, config: &SolverConfig) -> Result<RunResult> {
    config.validate()?;
    let n = a.dim();
    let beta = config.beta.map(PenaltyWeight::new).transpose()?;
    let mut x = config.init_x.resolve(n, "initial x")?;
    let mut y = config.init_y.resolve(n, "initial y")?;
    let mut x_hat = x.as_slice().to_vec();
    let mut y_hat = y.as_slice().to_vec();

    let mut records = vec![record(a, 0, x.as_slice(), y.as_slice(), &x_hat, &y_hat)?];
    for k in 1..=config.iterations {
        let with_k = |e: Error| match e {
            Error::Numeric(m) => Error::Numeric(format!("iteration {k}: {m}")),
            other => other,
        };
        let g_x = a.grad_x(&y)?;
        let g_y = a.grad_y(&x)?;
        let x_bar = solve_subproblem(config.method, beta, &g_x, &x, PlayerSense::Maximizer).map_err(with_k)?;
        let y_bar = solve_subproblem(config.method, beta, &g_y, &y, PlayerSense::Minimizer).map_err(with_k)?;
        let x_next = convex_step(x.as_slice(), x_bar.solution.as_slice(), config.alpha);
        let y_next = convex_step(y.as_slice(), y_bar.solution.as_slice(), config.alpha);
        if x_next.iter().chain(&y_next).any(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("iteration {k}: non-finite iterate")));
        }
        x_hat = mean_update(&x_hat, &x_next, k + 1);
        y_hat = mean_update(&y_hat, &y_next, k + 1);
        x = SimplexVector::from_raw(x_next);
        y = SimplexVector::from_raw(y_next);

        if k % config.record_every == 0 || k == config.iterations {
            records.push(record(a, k, x.as_slice(), y.as_slice(), &x_hat, &y_hat)?);
        }
    }

    let last = records.last().expect("initial record always present");
    Ok(RunResult {
        final_x_hat: last.x_hat.clone(),
        final_y_hat: last.y_hat.clone(),
        records,
        config: config.clone(),
    })
}
