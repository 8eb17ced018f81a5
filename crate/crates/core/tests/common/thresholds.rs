//! Equilibrium-recovery thresholds for the rock-paper-scissors runs
//! (α = 0.01, 1000 iterations). Each value is twice what the reference
//! transcription in `reference_run` reaches, rounded up to three significant
//! digits; `tests/reference.rs` recomputes them.

/// Initial point of the off-centre runs. The uniform start used by the
/// canonical runs is already the equilibrium.
pub const OFF_CENTRE_X0: [f64; 3] = [0.6, 0.3, 0.1];
pub const OFF_CENTRE_Y0: [f64; 3] = [0.1, 0.3, 0.6];

#[derive(Debug, Clone, Copy)]
pub struct Recovery {
    pub name: &'static str,
    /// `None` for conditional gradient.
    pub beta: Option<f64>,
    pub uniform_start: bool,
    /// Bound on the L∞ distance of x̂ and ŷ from (1/3, 1/3, 1/3).
    pub delta: f64,
    /// Bound on the final duality gap.
    pub gamma: f64,
}

pub const RECOVERY: [Recovery; 6] = [
    Recovery { name: "cg", beta: None, uniform_start: true, delta: 2.68e-5, gamma: 7.98e-5 },
    Recovery { name: "euclid", beta: Some(0.5), uniform_start: true, delta: 3.89e-14, gamma: 1.53e-13 },
    Recovery { name: "kl", beta: Some(0.25), uniform_start: true, delta: 3.00e-15, gamma: 0.0 },
    Recovery { name: "cg", beta: None, uniform_start: false, delta: 1.81e-2, gamma: 4.15e-2 },
    Recovery { name: "euclid", beta: Some(0.5), uniform_start: false, delta: 5.75e-2, gamma: 1.72e-1 },
    Recovery { name: "kl", beta: Some(0.25), uniform_start: false, delta: 2.21e-2, gamma: 6.25e-2 },
];
