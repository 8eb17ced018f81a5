//! Independent oracles shared by the integration tests. Nothing here calls
//! into the solver code paths it is used to check.

#![allow(dead_code)]

pub mod thresholds;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const RPS: [[f64; 3]; 3] = [[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]];

/// `Σᵢⱼ xᵢ Aᵢⱼ yⱼ` over a dense row list.
pub fn bilinear(a: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            total += x[i] * a[i][j] * y[j];
        }
    }
    total
}

/// Euclidean projection onto the simplex by sorting.
pub fn project_simplex(u: &[f64]) -> Vec<f64> {
    let mut sorted = u.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &v) in sorted.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    u.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Uniform point on the simplex (normalized exponentials).
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -rng.gen_range(1e-12f64..1.0).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Signed gradient: the maximizer minimizes `−gᵀv`, the minimizer `gᵀv`.
pub fn signed(g: &[f64], maximizer: bool) -> Vec<f64> {
    g.iter().map(|v| if maximizer { -v } else { *v }).collect()
}

pub fn euclid_objective(s: &[f64], v_k: &[f64], beta: f64, v: &[f64]) -> f64 {
    s.iter()
        .zip(v_k)
        .zip(v)
        .map(|((si, vk), vi)| si * (vi - vk) + beta * (vi - vk) * (vi - vk))
        .sum()
}

pub fn kl_objective(s: &[f64], v_k: &[f64], beta: f64, v: &[f64]) -> f64 {
    s.iter()
        .zip(v_k)
        .zip(v)
        .map(|((si, vk), vi)| {
            let ent = if *vi > 0.0 { vi * (vi / vk).ln() } else { 0.0 };
            si * (vi - vk) + beta * ent
        })
        .sum()
}

/// Minimizes `f` over Δ³ by a coarse grid followed by shrinking local grids.
pub fn grid_minimize_3(f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let mut step = 0.02;
    let mut best = [1.0 / 3.0, 1.0 / 3.0];
    let mut best_val = f64::INFINITY;
    let steps = (1.0 / step) as i64;
    for i in 0..=steps {
        for j in 0..=(steps - i) {
            let (a, b) = (i as f64 * step, j as f64 * step);
            let v = f(&[a, b, (1.0 - a - b).max(0.0)]);
            if v < best_val {
                best_val = v;
                best = [a, b];
            }
        }
    }
    while step > 1e-12 {
        let center = best;
        for i in -8..=8 {
            for j in -8..=8 {
                let a = center[0] + i as f64 * step / 4.0;
                let b = center[1] + j as f64 * step / 4.0;
                if a < 0.0 || b < 0.0 || a + b > 1.0 {
                    continue;
                }
                let v = f(&[a, b, (1.0 - a - b).max(0.0)]);
                if v < best_val {
                    best_val = v;
                    best = [a, b];
                }
            }
        }
        step /= 4.0;
    }
    vec![best[0], best[1], (1.0 - best[0] - best[1]).max(0.0)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefMethod {
    Cg,
    Euclid(f64),
    Kl(f64),
}

/// Final state of a reference run.
#[derive(Debug, Clone)]
pub struct RefOutcome {
    pub x_hat: Vec<f64>,
    pub y_hat: Vec<f64>,
    pub gap: f64,
}

impl RefOutcome {
    /// L∞ distance of both means from the uniform strategy.
    pub fn distance_from_uniform(&self) -> f64 {
        let n = self.x_hat.len() as f64;
        self.x_hat
            .iter()
            .chain(&self.y_hat)
            .map(|v| (v - 1.0 / n).abs())
            .fold(0.0, f64::max)
    }
}

/// Straight transcription of the update formulas on a 3×3 game starting from
/// `(x0, y0)`: vertex targets for conditional gradient, grid-refined
/// targets for the Euclidean penalty, the unstabilized closed form for KL.
pub fn reference_run(
    a: [[f64; 3]; 3],
    method: RefMethod,
    alpha: f64,
    iterations: usize,
    x0: [f64; 3],
    y0: [f64; 3],
) -> RefOutcome {
    let n = 3;
    let mut x = x0.to_vec();
    let mut y = y0.to_vec();
    let mut sum_x = x.clone();
    let mut sum_y = y.clone();
    for _ in 0..iterations {
        let ay: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i][j] * y[j]).sum()).collect();
        let atx: Vec<f64> = (0..n).map(|j| (0..n).map(|i| a[i][j] * x[i]).sum()).collect();
        let (x_bar, y_bar) = match method {
            RefMethod::Cg => {
                let jx = (0..n).fold(0, |b, i| if ay[i] > ay[b] { i } else { b });
                let jy = (0..n).fold(0, |b, i| if atx[i] < atx[b] { i } else { b });
                let mut xb = vec![0.0; n];
                let mut yb = vec![0.0; n];
                xb[jx] = 1.0;
                yb[jy] = 1.0;
                (xb, yb)
            }
            RefMethod::Euclid(beta) => {
                let sx = signed(&ay, true);
                let sy = signed(&atx, false);
                (
                    grid_minimize_3(|v| euclid_objective(&sx, &x, beta, v)),
                    grid_minimize_3(|v| euclid_objective(&sy, &y, beta, v)),
                )
            }
            RefMethod::Kl(beta) => {
                let wx: Vec<f64> = (0..n).map(|i| x[i] * (ay[i] / beta).exp()).collect();
                let wy: Vec<f64> = (0..n).map(|i| y[i] * (-atx[i] / beta).exp()).collect();
                let zx: f64 = wx.iter().sum();
                let zy: f64 = wy.iter().sum();
                (wx.iter().map(|w| w / zx).collect(), wy.iter().map(|w| w / zy).collect())
            }
        };
        for i in 0..n {
            x[i] += alpha * (x_bar[i] - x[i]);
            y[i] += alpha * (y_bar[i] - y[i]);
            sum_x[i] += x[i];
            sum_y[i] += y[i];
        }
    }
    let count = (iterations + 1) as f64;
    let x_hat: Vec<f64> = sum_x.iter().map(|v| v / count).collect();
    let y_hat: Vec<f64> = sum_y.iter().map(|v| v / count).collect();
    let upper = (0..n)
        .map(|i| (0..n).map(|j| a[i][j] * y_hat[j]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let lower = (0..n)
        .map(|j| (0..n).map(|i| a[i][j] * x_hat[i]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    RefOutcome {
        x_hat,
        y_hat,
        gap: upper - lower,
    }
}
