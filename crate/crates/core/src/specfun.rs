//! Minimal special-function kernel: Bessel J of integer order, its zeros and
//! the modified Bessel I0.
//!
//! Self-contained on purpose (ascending series, Miller's downward recurrence,
//! Hankel asymptotics) so the disk oracles used elsewhere stay auditable.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Evaluation route taken for a Bessel value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Asymptotic,
    Recurrence,
}

/// A single Bessel evaluation with the route recorded for reproducibility.
#[derive(Clone, Copy, Debug)]
pub struct BesselEval {
    pub order: u32,
    pub argument: f64,
    pub value: f64,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecfunError {
    OutOfRange,
}

impl fmt::Display for SpecfunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "argument or order outside the supported range")
    }
}

impl core::error::Error for SpecfunError {}

pub const MAX_ORDER: u32 = 60;
pub const MAX_ARG: f64 = 1e6;

const SERIES_CUTOFF: f64 = 12.0;
const RECURRENCE_CUTOFF: f64 = 3000.0;

/// `J_order(x)` with absolute accuracy around 1e-13 for |x| <= 100.
pub fn bessel_j(order: u32, x: f64) -> Result<f64, SpecfunError> {
    bessel_j_eval(order, x).map(|e| e.value)
}

/// Same as [`bessel_j`] but reports the evaluation route.
pub fn bessel_j_eval(order: u32, x: f64) -> Result<BesselEval, SpecfunError> {
    if order > MAX_ORDER || !x.is_finite() || x.abs() > MAX_ARG {
        return Err(SpecfunError::OutOfRange);
    }
    // J_m(-x) = (-1)^m J_m(x)
    let sign = if x < 0.0 && order % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let (value, method) = if ax <= SERIES_CUTOFF {
        (j_series(order, ax), Method::Series)
    } else if ax <= RECURRENCE_CUTOFF {
        (j_miller(order, ax), Method::Recurrence)
    } else {
        (j_asymptotic_chain(order, ax), Method::Asymptotic)
    };
    Ok(BesselEval {
        order,
        argument: x,
        value: sign * value,
        method,
    })
}

/// All orders `0..=max_order` at once (the collocation assembly needs whole
/// ladders; one Miller pass produces them all).
pub fn bessel_j_many(max_order: u32, x: f64) -> Result<Vec<f64>, SpecfunError> {
    if max_order > MAX_ORDER || !x.is_finite() || x.abs() > MAX_ARG {
        return Err(SpecfunError::OutOfRange);
    }
    let ax = x.abs();
    let mut vals: Vec<f64> = if ax <= SERIES_CUTOFF {
        (0..=max_order).map(|m| j_series(m, ax)).collect()
    } else if ax <= RECURRENCE_CUTOFF {
        j_miller_ladder(max_order, ax)
    } else {
        let mut v = Vec::with_capacity(max_order as usize + 1);
        for m in 0..=max_order {
            v.push(j_asymptotic_chain(m, ax));
        }
        v
    };
    if x < 0.0 {
        for (m, v) in vals.iter_mut().enumerate() {
            if m % 2 == 1 {
                *v = -*v;
            }
        }
    }
    Ok(vals)
}

fn j_miller_ladder(max_order: u32, x: f64) -> Vec<f64> {
    let start = miller_start(max_order, x);
    let mut vals = alloc::vec![0.0f64; max_order as usize + 1];
    let mut above = 0.0_f64;
    let mut cur = 1e-300_f64;
    let mut norm = 0.0_f64;
    let mut k = start as i64;
    loop {
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k <= max_order as i64 {
            vals[k as usize] = cur;
        }
        if cur.abs() > 1e280 {
            above /= 1e280;
            cur /= 1e280;
            norm /= 1e280;
            for v in vals.iter_mut() {
                *v /= 1e280;
            }
        }
        if k == 0 {
            break;
        }
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        k -= 1;
    }
    for v in vals.iter_mut() {
        *v /= norm;
    }
    vals
}

/// Derivative J_m'(x) via J_{m-1} - J_{m+1} = 2 J_m' (with J_{-1} = -J_1).
pub fn bessel_j_deriv(order: u32, x: f64) -> Result<f64, SpecfunError> {
    let upper = bessel_j(order + 1, x)?;
    let lower = if order == 0 {
        -bessel_j(1, x)?
    } else {
        bessel_j(order - 1, x)?
    };
    Ok(0.5 * (lower - upper))
}

/// Ascending series; safe for |x| <= 12 where the largest term stays small
/// enough that cancellation keeps ~1e-13 absolute accuracy.
fn j_series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^m / m! built as a product to avoid overflow at large m.
    let mut term = 1.0;
    for i in 1..=m {
        term *= half / i as f64;
    }
    let q = half * half;
    let mut sum = term;
    for j in 1..200u32 {
        term *= -q / (j as f64 * (m + j) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() + 1e-300 {
            break;
        }
    }
    sum
}

/// Miller's downward recurrence with the normalization
/// `J_0 + 2 J_2 + 2 J_4 + ... = 1`. Near machine precision for moderate x.
fn j_miller(m: u32, x: f64) -> f64 {
    let start = miller_start(m, x);
    let mut above = 0.0_f64; // unnormalized J_{k+1}
    let mut cur = 1e-300_f64; // unnormalized J_k, starting at k = start
    let mut norm = 0.0_f64;
    let mut result = 0.0_f64;
    let mut k = start as i64;
    loop {
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == m as i64 {
            result = cur;
        }
        if cur.abs() > 1e280 {
            above /= 1e280;
            cur /= 1e280;
            norm /= 1e280;
            result /= 1e280;
        }
        if k == 0 {
            break;
        }
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        k -= 1;
    }
    result / norm
}

fn miller_start(m: u32, x: f64) -> usize {
    let base = x.max(m as f64);
    (base + 14.0 * libm::cbrt(base) + 40.0) as usize
}

/// Hankel asymptotic expansion for large argument, then upward recurrence.
/// Only used for x > 3000 where both steps are comfortably stable for m <= 60.
fn j_asymptotic_chain(m: u32, x: f64) -> f64 {
    let j0 = j_hankel(0, x);
    if m == 0 {
        return j0;
    }
    let j1 = j_hankel(1, x);
    if m == 1 {
        return j1;
    }
    let mut prev = j0;
    let mut cur = j1;
    for k in 1..m {
        let next = (2.0 * k as f64 / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hankel expansion `J_m(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)]`,
/// `chi = x - (m/2 + 1/4) pi`, with
/// `t_j = prod_{i<=j} (mu - (2i-1)^2) / (j (8x))` and mu = 4 m^2.
fn j_hankel(m: u32, x: f64) -> f64 {
    let mu = 4.0 * (m as f64) * (m as f64);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    for j in 1..40u32 {
        let odd = (2 * j - 1) as f64;
        term *= (mu - odd * odd) / (j as f64 * 8.0 * x);
        let signed = if (j / 2) % 2 == 0 { term } else { -term };
        if j % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (0.5 * m as f64 + 0.25) * core::f64::consts::PI;
    libm::sqrt(2.0 / (core::f64::consts::PI * x)) * (p * libm::cos(chi) - q * libm::sin(chi))
}

/// k-th positive zero of J_order for order in {0,1,2}, k <= 20.
///
/// McMahon's expansion brackets the zero; bisection finishes to ~1e-14.
pub fn bessel_j_zero(order: u32, k: u32) -> Result<f64, SpecfunError> {
    if order > 2 || k == 0 || k > 20 {
        return Err(SpecfunError::OutOfRange);
    }
    let m = order as f64;
    let beta = (k as f64 + 0.5 * m - 0.25) * core::f64::consts::PI;
    let mu = 4.0 * m * m;
    let guess = beta - (mu - 1.0) / (8.0 * beta)
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * libm::pow(8.0 * beta, 3.0));
    let f = |x: f64| bessel_j(order, x).unwrap();
    let mut a = guess - 0.5;
    let mut b = guess + 0.5;
    // widen until the bracket straddles a sign change (it essentially always
    // does on the first try; zeros of J are ~pi apart)
    let mut tries = 0;
    while f(a) * f(b) > 0.0 {
        a -= 0.25;
        b += 0.25;
        tries += 1;
        if tries > 8 {
            return Err(SpecfunError::OutOfRange);
        }
    }
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
        if b - a < 1e-15 * b.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Modified Bessel I0: ascending series below 18, asymptotic beyond
/// (truncated at its smallest term; the series is divergent).
pub fn bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 18.0 {
        let q = 0.25 * ax * ax;
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 1..200u32 {
            term *= q / ((j * j) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum
    } else {
        // I0(x) ~ e^x / sqrt(2 pi x) (1 + 1/(8x) + 9/(2(8x)^2) + ...)
        let mut sum = 1.0;
        let mut term = 1.0;
        for j in 1..60u32 {
            let odd = (2 * j - 1) as f64;
            let next = term * odd * odd / (j as f64 * 8.0 * ax);
            if next.abs() >= term.abs() || next.abs() < 1e-18 {
                if next.abs() < 1e-18 {
                    sum += next;
                }
                break;
            }
            term = next;
            sum += term;
        }
        libm::exp(ax) / libm::sqrt(2.0 * core::f64::consts::PI * ax) * sum
    }
}

/// One identity check of the self-test suite.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Runs the identity suite backing the `selftest` CLI hook.
pub fn selftest() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let mut push = |name: &str, worst: f64, tol: f64| {
        out.push(IdentityCheck {
            name: String::from(name),
            worst,
            tolerance: tol,
            pass: worst <= tol,
        });
    };

    // Three-term recurrence J_{m-1} + J_{m+1} = (2m/x) J_m on a grid.
    let mut worst = 0.0_f64;
    let mut x = 0.5;
    while x <= 50.0 {
        for m in 1..=10u32 {
            let lhs = bessel_j(m - 1, x).unwrap() + bessel_j(m + 1, x).unwrap();
            let rhs = 2.0 * m as f64 / x * bessel_j(m, x).unwrap();
            worst = worst.max((lhs - rhs).abs());
        }
        x += 0.5;
    }
    push("recurrence_consistency", worst, 1e-10);

    // J0' = -J1 cross-checked by a fourth-order finite-difference stencil
    // (the step balances truncation against the ~1e-13 function accuracy).
    let mut worst = 0.0_f64;
    let hstep = 5e-3;
    let mut x = 0.5;
    while x <= 50.0 {
        let f = |y: f64| bessel_j(0, y).unwrap();
        let fd = (-f(x + 2.0 * hstep) + 8.0 * f(x + hstep) - 8.0 * f(x - hstep)
            + f(x - 2.0 * hstep))
            / (12.0 * hstep);
        worst = worst.max((fd + bessel_j(1, x).unwrap()).abs());
        x += 0.5;
    }
    push("derivative_identity_fd", worst, 1e-10);

    // Normalization sum_m J_m(10)^2 = 1 over m in [-40, 40].
    let x = 10.0;
    let mut total = bessel_j(0, x).unwrap() * bessel_j(0, x).unwrap();
    for m in 1..=40u32 {
        let v = bessel_j(m, x).unwrap();
        total += 2.0 * v * v;
    }
    push("squared_sum_normalization", (total - 1.0).abs(), 1e-10);

    // Tabulated zeros really are zeros.
    let mut worst = 0.0_f64;
    for order in 0..=2u32 {
        for k in 1..=5u32 {
            let z = bessel_j_zero(order, k).unwrap();
            worst = worst.max(bessel_j(order, z).unwrap().abs());
        }
    }
    push("zeros_are_zeros", worst, 1e-12);

    out
}
