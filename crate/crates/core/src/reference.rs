//! Published reference values for the threshold tables.
//!
//! These are the printed (rounded) values used as reproduction targets by the
//! `table` command and the acceptance suite. Every row uses the physical
//! exponent `p = 2` unless a `p` field says otherwise.

/// Summary row: one configuration, best ratio from the local problem
/// (`rho1`) and from the global-smallness problem (`rho2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    /// `μ`.
    pub mu: f64,
    /// `‖f‖∞`.
    pub f_inf: f64,
    /// `d`.
    pub d: f64,
    /// `d₀`.
    pub d0: f64,
    /// Printed ratio of the three-parameter problem.
    pub rho1: f64,
    /// Printed ratio of the global-smallness problem.
    pub rho2: f64,
}

/// Summary table (`p = 2`).
#[rustfmt::skip]
pub const TABLE1: [SummaryRow; 5] = [
    SummaryRow { mu: 1.0, f_inf: 1.1, d: 0.1, d0: 5.0, rho1: 0.1050, rho2: 0.2249 },
    SummaryRow { mu: 2.0, f_inf: 2.25, d: 0.1, d0: 4.0, rho1: 0.1182, rho2: 0.2111 },
    SummaryRow { mu: 3.0, f_inf: 3.5, d: 0.01, d0: 5.0, rho1: 0.1554, rho2: 0.2698 },
    SummaryRow { mu: 6.0, f_inf: 6.2, d: 0.01, d0: 10.0, rho1: 0.1682, rho2: 0.2856 },
    SummaryRow { mu: 10.0, f_inf: 10.0, d: 0.005, d0: 10.0, rho1: 0.1732, rho2: 0.2921 },
];

/// Weak-bump summary row (four-parameter problem, `p = 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakRow {
    /// `μ`.
    pub mu: f64,
    /// `‖f‖∞`.
    pub f_inf: f64,
    /// `d`.
    pub d: f64,
    /// `d₀`.
    pub d0: f64,
    /// Printed ratio.
    pub rho: f64,
}

/// Weak-bump summary table (`p = 2`, `0.37 < μ < 0.73`).
#[rustfmt::skip]
pub const TABLE2: [WeakRow; 4] = [
    WeakRow { mu: 0.7, f_inf: 0.8, d: 0.01, d0: 8.0, rho: 0.0815 },
    WeakRow { mu: 0.6, f_inf: 0.65, d: 0.05, d0: 10.0, rho: 0.0714 },
    WeakRow { mu: 0.5, f_inf: 0.6, d: 0.001, d0: 6.0, rho: 0.0137 },
    WeakRow { mu: 0.5, f_inf: 0.5, d: 0.01, d0: 7.0, rho: 0.0228 },
];

/// Optimal parameters and factors of the three-parameter problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Op1Row {
    /// `p`.
    pub p: f64,
    /// `μ`.
    pub mu: f64,
    /// `‖f‖∞`.
    pub f_inf: f64,
    /// `d`.
    pub d: f64,
    /// `d₀`.
    pub d0: f64,
    /// `τ*`.
    pub tau: f64,
    /// `β*`.
    pub beta: f64,
    /// `K*`.
    pub k: f64,
    /// `H̄(t₀)`.
    pub h: f64,
    /// `Ḡ(t₀)`.
    pub g: f64,
    /// `S(t₀, β*)`.
    pub s: f64,
    /// `ρ̄`.
    pub rho: f64,
}

macro_rules! op1 {
    ($p:expr, $mu:expr, $f:expr, $d:expr, $d0:expr, $tau:expr, $b:expr, $k:expr, $h:expr, $g:expr, $s:expr, $rho:expr) => {
        Op1Row {
            p: $p,
            mu: $mu,
            f_inf: $f,
            d: $d,
            d0: $d0,
            tau: $tau,
            beta: $b,
            k: $k,
            h: $h,
            g: $g,
            s: $s,
            rho: $rho,
        }
    };
}

/// Three-parameter problem: optimal parameters (13 rows).
#[rustfmt::skip]
pub const TABLE3: [Op1Row; 13] = [
    op1!(2.0, 1.0, 1.1, 0.1, 5.0, 0.7904, 1.74, 1.4787, 0.9220, 0.9140, 0.8452, 0.1050),
    op1!(2.0, 1.25, 1.3, 0.1, 3.0, 0.8094, 1.56, 1.1117, 0.8807, 0.8754, 0.7429, 0.1010),
    op1!(2.0, 2.0, 2.25, 0.1, 4.0, 0.8111, 1.22, 0.7184, 0.7629, 0.7650, 0.8966, 0.1182),
    op1!(2.0, 2.0, 2.25, 0.05, 4.0, 0.8201, 1.19, 0.8228, 0.7825, 0.7869, 0.9004, 0.1341),
    op1!(2.0, 3.0, 3.5, 0.01, 5.0, 0.8036, 0.99, 0.7402, 0.7757, 0.7710, 0.9510, 0.1554),
    op1!(2.0, 4.0, 4.1, 0.05, 5.0, 0.8001, 0.91, 0.7407, 0.8211, 0.8182, 0.9574, 0.1436),
    op1!(2.0, 4.0, 4.1, 0.01, 5.0, 0.8286, 0.87, 0.6705, 0.7582, 0.7517, 0.9623, 0.1643),
    op1!(2.0, 4.0, 7.0, 0.01, 5.0, 0.7905, 0.73, 0.9385, 0.7137, 0.7132, 0.9739, 0.1313),
    op1!(2.0, 6.0, 6.2, 0.01, 10.0, 0.8063, 0.73, 0.7879, 0.8252, 0.8223, 0.9917, 0.1682),
    op1!(2.0, 10.0, 10.0, 0.005, 10.0, 0.8037, 0.585, 0.6331, 0.7794, 0.7832, 0.9948, 0.1732),
    op1!(1.5, 10.0, 10.0, 0.005, 10.0, 0.7461, 0.585, 0.6298, 0.8390, 0.8335, 0.9932, 0.1857),
    op1!(1.0, 10.0, 10.0, 0.005, 10.0, 0.6611, 0.585, 0.6, 0.8643, 0.8643, 0.9909, 0.1992),
    op1!(0.5, 10.0, 10.0, 0.005, 10.0, 0.5724, 0.585, 0.48, 0.7972, 0.7991, 0.9877, 0.2157),
];

/// Optimal parameters and factors of the four-parameter problem (`p = 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Op2Row {
    /// `μ`.
    pub mu: f64,
    /// `‖f‖∞`.
    pub f_inf: f64,
    /// `d`.
    pub d: f64,
    /// `d₀`.
    pub d0: f64,
    /// `τ*`.
    pub tau: f64,
    /// `η*`.
    pub eta: f64,
    /// `β*`.
    pub beta: f64,
    /// `K*`.
    pub k: f64,
    /// `Ḡ(T̄)`.
    pub g_tbar: f64,
    /// `H̄(t₀)`.
    pub h_t0: f64,
    /// `Ḡ(t₀)`.
    pub g_t0: f64,
    /// `S(T̄, 0)`.
    pub s_tbar: f64,
    /// `S(t₀, β*)`.
    pub s_t0: f64,
    /// `ρ₂(τ*)`.
    pub rho2: f64,
    /// `ρ̄`.
    pub rho: f64,
}

/// Four-parameter problem: optimal parameters (4 rows).
#[rustfmt::skip]
pub const TABLE4: [Op2Row; 4] = [
    Op2Row { mu: 0.7, f_inf: 0.8, d: 0.01, d0: 8.0, tau: 0.58, eta: 0.8, beta: 2.71, k: 0.8, g_tbar: 0.6352, h_t0: 0.7322, g_t0: 0.9465, s_tbar: 0.6152, s_t0: 0.8492, rho2: 0.1405, rho: 0.0815 },
    Op2Row { mu: 0.6, f_inf: 0.65, d: 0.05, d0: 10.0, tau: 0.56, eta: 0.84, beta: 3.05, k: 1.0, g_tbar: 0.5770, h_t0: 0.7230, g_t0: 0.9311, s_tbar: 0.6289, s_t0: 0.8712, rho2: 0.0977, rho: 0.0714 },
    Op2Row { mu: 0.5, f_inf: 0.6, d: 0.001, d0: 6.0, tau: 0.38, eta: 0.88, beta: 3.801, k: 1.1, g_tbar: 0.4824, h_t0: 0.3440, g_t0: 0.9323, s_tbar: 0.1357, s_t0: 0.6551, rho2: 0.0187, rho: 0.0137 },
    Op2Row { mu: 0.5, f_inf: 0.5, d: 0.01, d0: 7.0, tau: 0.44, eta: 0.84, beta: 4.01, k: 0.9, g_tbar: 0.4907, h_t0: 0.4068, g_t0: 0.8983, s_tbar: 0.2167, s_t0: 0.6865, rho2: 0.0304, rho: 0.0228 },
];

/// Optimal parameters and factors of the global-smallness problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Op3Row {
    /// `p`.
    pub p: f64,
    /// `μ`.
    pub mu: f64,
    /// `‖f‖∞`.
    pub f_inf: f64,
    /// `d`.
    pub d: f64,
    /// `d₀`.
    pub d0: f64,
    /// `τ*`.
    pub tau: f64,
    /// `β*`.
    pub beta: f64,
    /// `K*`.
    pub k: f64,
    /// `Ḡ*`.
    pub gstar: f64,
    /// `S(t₀, β*)`.
    pub s: f64,
    /// `ρ₂(τ*)`.
    pub rho2: f64,
    /// `λ̄`.
    pub lambda: f64,
    /// `ρ̄`.
    pub rho: f64,
}

macro_rules! op3 {
    ($p:expr, $mu:expr, $f:expr, $d:expr, $d0:expr, $tau:expr, $b:expr, $k:expr, $g:expr, $s:expr, $r2:expr, $lam:expr, $rho:expr) => {
        Op3Row {
            p: $p,
            mu: $mu,
            f_inf: $f,
            d: $d,
            d0: $d0,
            tau: $tau,
            beta: $b,
            k: $k,
            gstar: $g,
            s: $s,
            rho2: $r2,
            lambda: $lam,
            rho: $rho,
        }
    };
}

/// Global-smallness problem: optimal parameters (13 rows).
#[rustfmt::skip]
pub const TABLE5: [Op3Row; 13] = [
    op3!(2.0, 1.0, 1.1, 0.1, 5.0, 0.8, 1.66, 0.68, 0.5474, 0.9899, 0.4521, 0.23, 0.2249),
    op3!(2.0, 1.25, 1.3, 0.1, 3.0, 0.8, 1.54, 0.56, 0.5735, 0.9809, 0.5423, 0.24, 0.2299),
    op3!(2.0, 2.0, 2.25, 0.1, 4.0, 0.8, 1.14, 0.62, 0.5601, 0.9929, 0.6482, 0.22, 0.2111),
    op3!(2.0, 2.0, 2.25, 0.05, 4.0, 0.78, 1.23, 0.5, 0.5712, 0.9923, 0.6272, 0.26, 0.2502),
    op3!(2.0, 3.0, 3.5, 0.01, 5.0, 0.8, 0.93, 0.64, 0.5591, 0.9968, 0.7106, 0.28, 0.2698),
    op3!(2.0, 4.0, 4.1, 0.05, 5.0, 0.78, 0.91, 0.42, 0.5930, 0.9971, 0.8071, 0.26, 0.2495),
    op3!(2.0, 4.0, 4.1, 0.01, 5.0, 0.72, 1.01, 0.32, 0.5726, 0.9965, 0.7631, 0.28, 0.2769),
    op3!(2.0, 4.0, 7.0, 0.01, 5.0, 0.74, 0.77, 0.66, 0.4653, 0.9981, 0.5327, 0.23, 0.2232),
    op3!(2.0, 6.0, 6.2, 0.01, 10.0, 0.78, 0.73, 0.46, 0.5957, 0.9994, 0.8529, 0.29, 0.2856),
    op3!(2.0, 10.0, 10.0, 0.005, 10.0, 0.8, 0.545, 0.52, 0.6007, 0.9997, 0.9310, 0.3, 0.2921),
    op3!(1.5, 10.0, 10.0, 0.005, 10.0, 0.74, 0.545, 0.38, 0.6349, 0.9996, 0.9074, 0.32, 0.3101),
    op3!(1.0, 10.0, 10.0, 0.005, 10.0, 0.68, 0.525, 0.3, 0.6762, 0.9995, 0.8755, 0.34, 0.3315),
    op3!(0.5, 10.0, 10.0, 0.005, 10.0, 0.62, 0.465, 0.26, 0.7503, 0.9993, 0.8231, 0.37, 0.3689),
];
