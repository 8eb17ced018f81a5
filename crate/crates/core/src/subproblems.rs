//! Inner minimizations producing the step targets `x̄` and `ȳ`.
//!
//! With `g` the payoff gradient of the moving player (`Ay` for the maximizer,
//! `Aᵀx` for the minimizer) every subproblem is written as
//!
//! ```text
//! minimize  sᵀ(v − vᵏ) + penalty(v, vᵏ)   over Δⁿ
//! ```
//!
//! with the signed gradient `s = −g` for the maximizer and `s = +g` for the
//! minimizer.

use crate::error::{Error, Result};
use crate::simplex::SimplexVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayerSense {
    /// The row player `x`, maximizing the payoff.
    Maximizer,
    /// The column player `y`, minimizing the payoff.
    Minimizer,
}

impl PlayerSense {
    /// Turns a payoff gradient into the gradient of the linear term being
    /// minimized.
    pub fn signed_gradient(self, g: &[f64]) -> Vec<f64> {
        match self {
            PlayerSense::Maximizer => g.iter().map(|v| -v).collect(),
            PlayerSense::Minimizer => g.to_vec(),
        }
    }
}

/// Strictly positive penalty strength β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyWeight(f64);

impl PenaltyWeight {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Config(format!("beta must be a positive finite number, got {beta}")));
        }
        Ok(PenaltyWeight(beta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Solution of one inner problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemResult {
    pub solution: SimplexVector,
    /// Coordinates allowed to be nonzero, ascending. Every other coordinate
    /// of `solution` is exactly zero.
    pub active_set: Vec<usize>,
    /// Common value of the subproblem partials over the active set (penalized
    /// methods only).
    pub lambda: Option<f64>,
}

fn check_gradient(g: &[f64]) -> Result<()> {
    if g.is_empty() {
        return Err(Error::Dimension("gradient is empty".into()));
    }
    if let Some(i) = g.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!("gradient entry {i} is not finite ({})", g[i])));
    }
    Ok(())
}

/// Conditional-gradient target: the vertex `e_j` minimizing `sᵀv`, i.e. the
/// argmax of `g` for the maximizer and the argmin for the minimizer. Ties go
/// to the lowest index.
pub fn cg_vertex(g: &[f64], sense: PlayerSense) -> Result<SubproblemResult> {
    check_gradient(g)?;
    let s = sense.signed_gradient(g);
    let mut best = 0;
    for (i, &si) in s.iter().enumerate().skip(1) {
        if si < s[best] {
            best = i;
        }
    }
    Ok(SubproblemResult {
        solution: SimplexVector::vertex(g.len(), best)?,
        active_set: (0..g.len()).collect(),
        lambda: None,
    })
}

/// Exact minimizer of `sᵀ(v − vᵏ) + β‖v − vᵏ‖²` over the simplex.
///
/// Stationarity on an active set `S` of size `m` gives
/// `vᵢ = (λ − dᵢ) / 2β` with `dᵢ = sᵢ − 2β·vᵏᵢ` and λ fixed by `Σ_S vᵢ = 1`.
/// Starting from all coordinates, the coordinate with the largest `dᵢ` (the
/// smallest `vᵢ`) is dropped one at a time until the solve has no negative
/// entry.
pub fn euclidean_prox(
    g: &[f64],
    v_k: &SimplexVector,
    beta: PenaltyWeight,
    sense: PlayerSense,
) -> Result<SubproblemResult> {
    check_gradient(g)?;
    v_k.check_dim(g.len(), "previous iterate")?;
    let n = g.len();
    let two_beta = 2.0 * beta.get();
    let s = sense.signed_gradient(g);
    let d: Vec<f64> = s
        .iter()
        .zip(v_k.as_slice())
        .map(|(&si, &vi)| si - two_beta * vi)
        .collect();

    let mut active = vec![true; n];
    let mut m = n;
    let mut coords = vec![0.0; n];
    let lambda = loop {
        let d_sum: f64 = (0..n).filter(|&i| active[i]).map(|i| d[i]).sum();
        let lambda = (two_beta + d_sum) / m as f64;
        let mut negative = false;
        for i in 0..n {
            coords[i] = if active[i] { (lambda - d[i]) / two_beta } else { 0.0 };
            negative |= coords[i] < 0.0;
        }
        if !negative || m == 1 {
            break lambda;
        }
        // drop the largest d, lowest index on ties
        let mut worst = None;
        for i in (0..n).filter(|&i| active[i]) {
            match worst {
                Some(w) if d[i] <= d[w] => {}
                _ => worst = Some(i),
            }
        }
        let worst = worst.expect("active set is nonempty");
        active[worst] = false;
        m -= 1;
    };

    let solution = normalize(coords, "euclidean subproblem")?;
    Ok(SubproblemResult {
        solution,
        active_set: (0..n).filter(|&i| active[i]).collect(),
        lambda: Some(lambda),
    })
}

/// Exact minimizer of `sᵀ(v − vᵏ) + β·Σ vᵢ log(vᵢ / vᵏᵢ)` over the simplex:
/// `vᵢ ∝ vᵏᵢ · exp(−sᵢ / β)`, evaluated in log-space. Coordinates where
/// `vᵏ` is zero stay zero; the active set is the support of `vᵏ`.
pub fn kl_prox(
    g: &[f64],
    v_k: &SimplexVector,
    beta: PenaltyWeight,
    sense: PlayerSense,
) -> Result<SubproblemResult> {
    check_gradient(g)?;
    v_k.check_dim(g.len(), "previous iterate")?;
    let beta = beta.get();
    let s = sense.signed_gradient(g);
    let support = v_k.support();
    if support.is_empty() {
        return Err(Error::InvalidInput("previous iterate has no positive coordinate".into()));
    }

    let mut logits = vec![f64::NEG_INFINITY; g.len()];
    for &i in &support {
        logits[i] = -s[i] / beta + v_k[i].ln();
    }
    let max = support
        .iter()
        .map(|&i| logits[i])
        .fold(f64::NEG_INFINITY, f64::max);
    let mut coords = vec![0.0; g.len()];
    for &i in &support {
        coords[i] = (logits[i] - max).exp();
    }
    let partial_sum: f64 = coords.iter().sum();
    // partials s + β(1 + log(v/vᵏ)) all equal β(1 − log Z), Z = Σ vᵏ exp(−s/β)
    let log_z = max + partial_sum.ln();
    let lambda = beta * (1.0 - log_z);

    let solution = normalize(coords, "KL subproblem")?;
    Ok(SubproblemResult {
        solution,
        active_set: support,
        lambda: Some(lambda),
    })
}

/// Divides by the coordinate sum once so the result sits on the simplex up
/// to a single rounding.
fn normalize(mut coords: Vec<f64>, what: &str) -> Result<SimplexVector> {
    let sum: f64 = coords.iter().sum();
    if !(sum.is_finite() && sum > 0.0) {
        return Err(Error::Numeric(format!("{what} produced coordinate sum {sum}")));
    }
    for c in coords.iter_mut() {
        *c /= sum;
    }
    Ok(SimplexVector::from_raw(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use PlayerSense::*;

    fn sv(c: &[f64]) -> SimplexVector {
        SimplexVector::new(c.to_vec()).unwrap()
    }

    fn beta(b: f64) -> PenaltyWeight {
        PenaltyWeight::new(b).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn cg_examples() {
        let g = [0.2, 0.7, 0.1];
        assert_eq!(cg_vertex(&g, Maximizer).unwrap().solution.as_slice(), &[0.0, 1.0, 0.0]);
        assert_eq!(cg_vertex(&g, Minimizer).unwrap().solution.as_slice(), &[0.0, 0.0, 1.0]);
        let tied = [0.5, 0.5, 0.0];
        assert_eq!(cg_vertex(&tied, Maximizer).unwrap().solution.as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(cg_vertex(&[0.0, 0.0], Minimizer).unwrap().solution.as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn cg_errors() {
        assert!(matches!(cg_vertex(&[], Maximizer), Err(Error::Dimension(_))));
        assert!(matches!(cg_vertex(&[0.0, f64::NAN], Maximizer), Err(Error::Numeric(_))));
    }

    #[test]
    fn euclidean_zero_gradient_returns_previous() {
        let u = SimplexVector::uniform(3).unwrap();
        for b in [0.1, 0.5, 7.0] {
            let r = euclidean_prox(&[0.0; 3], &u, beta(b), Maximizer).unwrap();
            assert_close(r.solution.as_slice(), u.as_slice(), 1e-15);
            assert_eq!(r.active_set, vec![0, 1, 2]);
        }
    }

    #[test]
    fn euclidean_pushes_to_vertex() {
        // vᵏ + g/2β = (4/3, 1/3, 1/3) projects onto (1, 0, 0)
        let u = SimplexVector::uniform(3).unwrap();
        let r = euclidean_prox(&[1.0, 0.0, 0.0], &u, beta(0.5), Maximizer).unwrap();
        assert_close(r.solution.as_slice(), &[1.0, 0.0, 0.0], 1e-12);
    }

    #[test]
    fn euclidean_active_set_elimination() {
        // full solve gives (1.0, 0.3, -0.3): drop index 2, re-solve on {0, 1}
        let v_k = sv(&[0.5, 0.3, 0.2]);
        let r = euclidean_prox(&[0.5, 0.0, -0.5], &v_k, beta(0.5), Maximizer).unwrap();
        assert_close(r.solution.as_slice(), &[0.85, 0.15, 0.0], 1e-12);
        assert_eq!(r.active_set, vec![0, 1]);
        assert_eq!(r.solution[2], 0.0);
    }

    #[test]
    fn euclidean_single_point_simplex() {
        let one = sv(&[1.0]);
        for g in [-3.0, 0.0, 12.5] {
            for sense in [Maximizer, Minimizer] {
                let r = euclidean_prox(&[g], &one, beta(0.5), sense).unwrap();
                assert_eq!(r.solution.as_slice(), &[1.0]);
            }
        }
    }

    #[test]
    fn euclidean_minimizer_sign() {
        // the minimizer moves away from large gradient entries
        let u = SimplexVector::uniform(2).unwrap();
        let r = euclidean_prox(&[0.2, -0.2], &u, beta(1.0), Minimizer).unwrap();
        assert_close(r.solution.as_slice(), &[0.4, 0.6], 1e-15);
        let r = euclidean_prox(&[0.2, -0.2], &u, beta(1.0), Maximizer).unwrap();
        assert_close(r.solution.as_slice(), &[0.6, 0.4], 1e-15);
    }

    #[test]
    fn penalty_weight_validation() {
        assert!(matches!(PenaltyWeight::new(0.0), Err(Error::Config(_))));
        assert!(PenaltyWeight::new(-1.0).is_err());
        assert!(PenaltyWeight::new(f64::NAN).is_err());
        assert!(PenaltyWeight::new(f64::INFINITY).is_err());
    }

    #[test]
    fn kl_examples() {
        let v_k = sv(&[0.2, 0.5, 0.3]);
        let r = kl_prox(&[0.0; 3], &v_k, beta(0.3), Minimizer).unwrap();
        assert_close(r.solution.as_slice(), v_k.as_slice(), 1e-15);

        let b = 0.25;
        let e = std::f64::consts::E;
        let u = SimplexVector::uniform(3).unwrap();
        let r = kl_prox(&[b, 0.0, 0.0], &u, beta(b), Maximizer).unwrap();
        let z = e + 2.0;
        assert_close(r.solution.as_slice(), &[e / z, 1.0 / z, 1.0 / z], 1e-15);

        let vertex = sv(&[1.0, 0.0, 0.0]);
        let r = kl_prox(&[-4.0, 9.0, 2.0], &vertex, beta(0.01), Maximizer).unwrap();
        assert_eq!(r.solution.as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(r.active_set, vec![0]);
    }

    #[test]
    fn kl_extreme_ratio_stays_finite() {
        let u = SimplexVector::uniform(3).unwrap();
        let r = kl_prox(&[1e3, -1e3, 0.0], &u, beta(1e-3), Maximizer).unwrap();
        assert_close(r.solution.as_slice(), &[1.0, 0.0, 0.0], 1e-300);
        let r = kl_prox(&[1e3, -1e3, 0.0], &u, beta(1e-3), Minimizer).unwrap();
        assert_close(r.solution.as_slice(), &[0.0, 1.0, 0.0], 1e-300);
    }

    #[test]
    fn kl_lambda_equalizes_partials() {
        let v_k = sv(&[0.1, 0.6, 0.3]);
        let g = [0.4, -0.2, 0.9];
        let b = 0.7;
        let r = kl_prox(&g, &v_k, beta(b), Minimizer).unwrap();
        let lambda = r.lambda.unwrap();
        for i in 0..3 {
            let partial = g[i] + b * (1.0 + (r.solution[i] / v_k[i]).ln());
            assert!((partial - lambda).abs() < 1e-12);
        }
    }

    #[test]
    fn prox_dimension_mismatch() {
        let u = SimplexVector::uniform(2).unwrap();
        assert!(matches!(
            euclidean_prox(&[0.0; 3], &u, beta(1.0), Maximizer),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            kl_prox(&[0.0; 3], &u, beta(1.0), Maximizer),
            Err(Error::Dimension(_))
        ));
    }
}
