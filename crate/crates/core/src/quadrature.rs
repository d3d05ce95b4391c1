//! Composite Gauss-Legendre quadrature refined by panel doubling.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const GAUSS_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Stop once successive refinements differ by less than `rel_tol * |I|`...
    pub rel_tol: f64,
    /// ...or by less than this absolute amount.
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rel_tol: 1e-9,
            abs_tol: 1e-13,
            max_panels: 1 << 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub correction: f64,
    pub panels: usize,
}

/// Nodes and weights of the Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GAUSS_POINTS))
}

/// Fixed composite rule with `panels` equal panels.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = rule();
    let h = (b - a) / panels as f64;
    let half = 0.5 * h;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        let panel: f64 = nodes
            .iter()
            .zip(weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum();
        total += panel * half;
    }
    total
}

/// Integrates `f` over `[a, b]`, doubling the panel count from
/// `initial_panels` until two successive levels agree.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    opts: &QuadratureOptions,
    context: &dyn Fn() -> String,
) -> Result<QuadratureResult> {
    let mut panels = initial_panels.max(1);
    let mut prev = composite(&f, a, b, panels);
    loop {
        if panels * 2 > opts.max_panels {
            return Err(Error::Numerical {
                context: context(),
                value: prev,
                correction: f64::NAN,
                panels,
            });
        }
        panels *= 2;
        let next = composite(&f, a, b, panels);
        let correction = (next - prev).abs();
        if !next.is_finite() {
            return Err(Error::Numerical {
                context: context(),
                value: next,
                correction,
                panels,
            });
        }
        if correction <= opts.abs_tol.max(opts.rel_tol * next.abs()) {
            return Ok(QuadratureResult {
                value: next,
                correction,
                panels,
            });
        }
        prev = next;
    }
}
