//! Periodic trapezoid quadrature with node doubling.
//!
//! The trapezoid rule converges geometrically for smooth 2pi-periodic
//! integrands, which covers every boundary integral in this crate. Node
//! counts double until two successive values agree to 1e-12 absolute or the
//! hard cap of 2^18 nodes is hit. Accumulation is compensated (Kahan) so the
//! agreement test is not drowned by roundoff at large node counts.

use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;

pub const CONVERGE_ABS: f64 = 1e-12;
pub const MAX_NODES: usize = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureFailure {
    pub last_value: Complex64,
    pub last_delta: f64,
    pub nodes: usize,
}

impl fmt::Display for QuadratureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "periodic trapezoid did not converge: delta {} at {} nodes",
            self.last_delta, self.nodes
        )
    }
}

impl core::error::Error for QuadratureFailure {}

#[derive(Clone, Copy, Debug)]
pub struct QuadValue {
    pub value: Complex64,
    pub nodes: usize,
}

struct KahanC {
    sum: Complex64,
    comp: Complex64,
}

impl KahanC {
    fn new() -> Self {
        Self {
            sum: Complex64::new(0.0, 0.0),
            comp: Complex64::new(0.0, 0.0),
        }
    }

    fn add(&mut self, v: Complex64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Integrates `f` over one period [0, 2pi).
pub fn periodic_trapezoid<F: Fn(f64) -> Complex64>(
    f: F,
    n_start: usize,
) -> Result<QuadValue, QuadratureFailure> {
    let mut n = n_start.max(8).next_power_of_two();
    let mut acc = KahanC::new();
    for i in 0..n {
        acc.add(f(2.0 * PI * i as f64 / n as f64));
    }
    let mut prev = acc.sum * (2.0 * PI / n as f64);
    loop {
        // refine by adding the midpoints of the current grid
        for i in 0..n {
            acc.add(f(2.0 * PI * (i as f64 + 0.5) / n as f64));
        }
        n *= 2;
        let cur = acc.sum * (2.0 * PI / n as f64);
        let delta = (cur - prev).norm();
        if delta <= CONVERGE_ABS {
            return Ok(QuadValue {
                value: cur,
                nodes: n,
            });
        }
        if n >= MAX_NODES {
            return Err(QuadratureFailure {
                last_value: cur,
                last_delta: delta,
                nodes: n,
            });
        }
        prev = cur;
    }
}

/// Least-squares slope of `ln y` against `ln x`.
///
/// The pre-asymptotic head of a scan contaminates power-law fits, so the
/// `skip_smallest` leading points are dropped (callers in this crate use 2,
/// falling back so that at least two points remain).
pub fn loglog_slope(points: &[(f64, f64)], skip_smallest: usize) -> f64 {
    let usable = points.len().saturating_sub(skip_smallest).max(2);
    let pts = &points[points.len() - usable..];
    let n = pts.len() as f64;
    let mut mx = 0.0;
    let mut my = 0.0;
    for (x, y) in pts {
        mx += libm::log(*x);
        my += libm::log(y.max(1e-300));
    }
    mx /= n;
    my /= n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in pts {
        let dx = libm::log(*x) - mx;
        num += dx * (libm::log(y.max(1e-300)) - my);
        den += dx * dx;
    }
    num / den
}
