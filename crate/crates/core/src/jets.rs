//! Truncated Taylor (jet) arithmetic.
//!
//! All high-order derivatives in this crate are obtained by propagating
//! truncated power series instead of hand-coded derivative formulas. The
//! working order is fixed at [`MAX_ORDER`]; the public [`Jet1D`] exposes
//! orders 0..=8.

use alloc::format;
use alloc::string::String;

/// Highest order carried by the internal series arithmetic.
pub const MAX_ORDER: usize = 10;
const LEN: usize = MAX_ORDER + 1;

/// Power series truncated at order [`MAX_ORDER`]: `sum_k c[k] x^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series {
    pub c: [f64; LEN],
}

impl Series {
    pub fn zero() -> Self {
        Self { c: [0.0; LEN] }
    }

    pub fn constant(v: f64) -> Self {
        let mut s = Self::zero();
        s.c[0] = v;
        s
    }

    /// The identity series `x`.
    pub fn x() -> Self {
        let mut s = Self::zero();
        s.c[1] = 1.0;
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = *self;
        for k in 0..LEN {
            r.c[k] += o.c[k];
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = *self;
        for k in 0..LEN {
            r.c[k] -= o.c[k];
        }
        r
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = *self;
        for k in 0..LEN {
            r.c[k] *= s;
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..LEN {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..LEN - i {
                r.c[i + j] += self.c[i] * o.c[j];
            }
        }
        r
    }

    /// Series of the derivative.
    pub fn derivative(&self) -> Self {
        let mut r = Self::zero();
        for k in 1..LEN {
            r.c[k - 1] = self.c[k] * k as f64;
        }
        r
    }

    /// Value of the k-th derivative at the expansion point.
    pub fn deriv_at0(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 1..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }

    /// Composition `self(inner)`, requiring `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Self {
        debug_assert!(inner.c[0] == 0.0);
        // Horner in the inner series.
        let mut r = Series::constant(self.c[LEN - 1]);
        for k in (0..LEN - 1).rev() {
            r = r.mul(inner);
            r.c[0] += self.c[k];
        }
        r
    }

    /// Compositional inverse of a series with `c[0] = 0`, `c[1] != 0`.
    ///
    /// Returns `g` with `self(g(x)) = x + O(x^{MAX_ORDER+1})`.
    pub fn revert(&self) -> Self {
        debug_assert!(self.c[0] == 0.0 && self.c[1] != 0.0);
        let inv_c1 = 1.0 / self.c[1];
        let mut g = Series::x().scale(inv_c1);
        // Fixed-point iteration gains at least one correct order per step.
        for _ in 0..LEN {
            let fg = self.compose(&g);
            let mut corr = Series::x().sub(&fg).scale(inv_c1);
            corr = corr.add(&g);
            g = corr;
        }
        g
    }

    /// Square root of a series with positive constant term.
    pub fn sqrt(&self) -> Self {
        debug_assert!(self.c[0] > 0.0);
        let mut b = Self::zero();
        b.c[0] = libm::sqrt(self.c[0]);
        for n in 1..LEN {
            let mut acc = 0.0;
            for j in 1..n {
                acc += b.c[j] * b.c[n - j];
            }
            b.c[n] = (self.c[n] - acc) / (2.0 * b.c[0]);
        }
        b
    }

    /// Exponential of the series.
    pub fn exp(&self) -> Self {
        let mut b = Self::zero();
        b.c[0] = libm::exp(self.c[0]);
        for n in 1..LEN {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += k as f64 * self.c[k] * b.c[n - k];
            }
            b.c[n] = acc / n as f64;
        }
        b
    }

    /// Series of `sin(a + x)`.
    pub fn sin_shifted(a: f64) -> Self {
        let (s, c) = (libm::sin(a), libm::cos(a));
        let cycle = [s, c, -s, -c];
        let mut r = Self::zero();
        let mut fact = 1.0;
        for k in 0..LEN {
            if k > 0 {
                fact *= k as f64;
            }
            r.c[k] = cycle[k % 4] / fact;
        }
        r
    }

    /// Series of `cos(a + x)`.
    pub fn cos_shifted(a: f64) -> Self {
        let (s, c) = (libm::sin(a), libm::cos(a));
        let cycle = [c, -s, -c, s];
        let mut r = Self::zero();
        let mut fact = 1.0;
        for k in 0..LEN {
            if k > 0 {
                fact *= k as f64;
            }
            r.c[k] = cycle[k % 4] / fact;
        }
        r
    }
}

/// Truncated Taylor coefficients of a univariate function at a point.
///
/// `coeffs[k]` is the k-th Taylor coefficient (derivative divided by k!);
/// orders above 8 are not exposed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet1D {
    pub center: f64,
    pub coeffs: [f64; 9],
}

impl Jet1D {
    pub fn new(center: f64, coeffs: [f64; 9]) -> Self {
        Self { center, coeffs }
    }

    pub fn from_series(center: f64, s: &Series, order: usize) -> Self {
        let mut coeffs = [0.0; 9];
        let upto = order.min(8);
        coeffs[..=upto].copy_from_slice(&s.c[..=upto]);
        Self { center, coeffs }
    }

    pub fn to_series(&self) -> Series {
        let mut s = Series::zero();
        for k in 0..9 {
            s.c[k] = self.coeffs[k];
        }
        s
    }

    /// Value of the k-th derivative at the center.
    pub fn deriv(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 1..=k {
            f *= i as f64;
        }
        self.coeffs[k] * f
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = *self;
        for c in r.coeffs.iter_mut() {
            *c *= s;
        }
        r
    }

    pub fn describe(&self) -> String {
        format!("jet at {:.6}: {:?}", self.center, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn mul_and_compose() {
        // (1+x)^2 = 1 + 2x + x^2
        let mut p = Series::zero();
        p.c[0] = 1.0;
        p.c[1] = 1.0;
        let q = p.mul(&p);
        assert_eq!(q.c[0], 1.0);
        assert_eq!(q.c[1], 2.0);
        assert_eq!(q.c[2], 1.0);

        // exp(sin-part): compose exp series with x - x^3/6
        let e = Series::x().exp();
        let s = Series::sin_shifted(0.0);
        let es = e.compose(&s);
        // e^{sin x} = 1 + x + x^2/2 - x^4/8 + ...
        assert_close(es.c[0], 1.0, 1e-15);
        assert_close(es.c[1], 1.0, 1e-15);
        assert_close(es.c[2], 0.5, 1e-15);
        assert_close(es.c[3], 0.0, 1e-15);
        assert_close(es.c[4], -1.0 / 8.0, 1e-15);
    }

    #[test]
    fn revert_recovers_inverse() {
        // f(s) = 2s + s^2; the inverse of f followed by f is the identity.
        let mut f = Series::zero();
        f.c[1] = 2.0;
        f.c[2] = 1.0;
        let g = f.revert();
        let id = f.compose(&g);
        assert_close(id.c[1], 1.0, 1e-14);
        for k in (0..LEN).filter(|&k| k != 1) {
            assert_close(id.c[k], 0.0, 1e-12);
        }
    }

    #[test]
    fn sqrt_of_one_minus_x2() {
        // sqrt(1 - x^2) = 1 - x^2/2 - x^4/8 - x^6/16 - 5 x^8/128
        let mut a = Series::zero();
        a.c[0] = 1.0;
        a.c[2] = -1.0;
        let b = a.sqrt();
        assert_close(b.c[0], 1.0, 1e-15);
        assert_close(b.c[2], -0.5, 1e-15);
        assert_close(b.c[4], -1.0 / 8.0, 1e-15);
        assert_close(b.c[6], -1.0 / 16.0, 1e-15);
        assert_close(b.c[8], -5.0 / 128.0, 1e-15);
    }

    #[test]
    fn deriv_at0_matches_factorial_scaling() {
        let e = Series::x().exp();
        for k in 0..=8 {
            assert_close(e.deriv_at0(k), 1.0, 1e-12);
        }
    }
}
