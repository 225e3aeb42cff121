//! Support-function geometry of strictly convex planar curves.
//!
//! A curve is represented by its support function `h(theta)`: the signed
//! distance from the origin to the tangent line with outward normal
//! `(cos theta, sin theta)`. The boundary point with that normal is
//! `x(theta) = h u + h' u_perp`, the arc element is `ds = rho dtheta` with
//! `rho = h + h''`, and the curvature is `1/rho`. This parametrization puts
//! the two critical points of any linear phase `<x, xi>` at the angles where
//! the normal is parallel to `xi`, with no root finding.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::jets::{Jet1D, Series};
use crate::vec2::Vec2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveError {
    /// The support function fails strict convexity: rho(theta) <= 0.
    NonConvex { theta: f64, rho: f64 },
    /// Requested jet order exceeds the available closed-form derivatives.
    JetOverflow { order: usize },
    /// Ellipse axes must satisfy a >= b > 0.
    InvalidEllipseAxes { a: f64, b: f64 },
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::NonConvex { theta, rho } => {
                write!(f, "curve is not strictly convex: rho({theta}) = {rho} <= 0")
            }
            CurveError::JetOverflow { order } => {
                write!(f, "jet order {order} exceeds the supported maximum of 8")
            }
            CurveError::InvalidEllipseAxes { a, b } => {
                write!(f, "ellipse axes must satisfy a >= b > 0, got a={a}, b={b}")
            }
        }
    }
}

impl core::error::Error for CurveError {}

/// A strictly convex planar boundary given by its support function.
#[derive(Clone, Debug)]
pub enum SupportCurve {
    /// Trigonometric polynomial `h = a0 + sum c_n cos n t + s_n sin n t`.
    Fourier {
        a0: f64,
        cos_coeffs: Vec<f64>,
        sin_coeffs: Vec<f64>,
    },
    /// Ellipse with semi-axes a >= b > 0: `h = sqrt(a^2 cos^2 + b^2 sin^2)`.
    Ellipse { a: f64, b: f64 },
}

/// Boundary data at one support angle.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub position: Vec2,
    pub outward_normal: Vec2,
    pub tangent: Vec2,
    pub curvature: f64,
}

/// Sampled direction-width data.
#[derive(Clone, Debug)]
pub struct WidthProfile {
    pub samples: Vec<(f64, f64)>,
    pub w_min: f64,
    pub w_max: f64,
    pub is_constant: bool,
    /// Mean width; the breadth L when `is_constant` holds.
    pub breadth: f64,
}

/// Outcome of the symmetry / constant-width / circle certificate.
#[derive(Clone, Copy, Debug)]
pub struct CircleCertificate {
    pub centrally_symmetric: bool,
    pub constant_width: bool,
    pub is_circle: bool,
    /// The translation that removes the first harmonic of h.
    pub center: Vec2,
    pub max_odd_harmonic: f64,
    pub max_even_harmonic: f64,
}

impl SupportCurve {
    pub fn fourier(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self, CurveError> {
        let curve = SupportCurve::Fourier {
            a0,
            cos_coeffs,
            sin_coeffs,
        };
        curve.check_convexity()?;
        Ok(curve)
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self, CurveError> {
        if !(a >= b && b > 0.0) {
            return Err(CurveError::InvalidEllipseAxes { a, b });
        }
        let curve = SupportCurve::Ellipse { a, b };
        curve.check_convexity()?;
        Ok(curve)
    }

    pub fn unit_disk() -> Self {
        SupportCurve::Fourier {
            a0: 1.0,
            cos_coeffs: Vec::new(),
            sin_coeffs: Vec::new(),
        }
    }

    /// Support function h(theta).
    pub fn h(&self, theta: f64) -> f64 {
        match self {
            SupportCurve::Fourier {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => {
                let mut v = *a0;
                for (i, c) in cos_coeffs.iter().enumerate() {
                    v += c * libm::cos((i + 1) as f64 * theta);
                }
                for (i, s) in sin_coeffs.iter().enumerate() {
                    v += s * libm::sin((i + 1) as f64 * theta);
                }
                v
            }
            SupportCurve::Ellipse { a, b } => {
                let c = libm::cos(theta);
                let s = libm::sin(theta);
                libm::sqrt(a * a * c * c + b * b * s * s)
            }
        }
    }

    /// First derivative h'(theta).
    pub fn h1(&self, theta: f64) -> f64 {
        match self {
            SupportCurve::Fourier {
                cos_coeffs,
                sin_coeffs,
                ..
            } => {
                let mut v = 0.0;
                for (i, c) in cos_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    v -= c * n * libm::sin(n * theta);
                }
                for (i, s) in sin_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    v += s * n * libm::cos(n * theta);
                }
                v
            }
            SupportCurve::Ellipse { a, b } => {
                // h' = q' / (2h), q = a^2 cos^2 + b^2 sin^2
                let q1 = (b * b - a * a) * libm::sin(2.0 * theta);
                q1 / (2.0 * self.h(theta))
            }
        }
    }

    /// Second derivative h''(theta).
    pub fn h2(&self, theta: f64) -> f64 {
        match self {
            SupportCurve::Fourier {
                cos_coeffs,
                sin_coeffs,
                ..
            } => {
                let mut v = 0.0;
                for (i, c) in cos_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    v -= c * n * n * libm::cos(n * theta);
                }
                for (i, s) in sin_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    v -= s * n * n * libm::sin(n * theta);
                }
                v
            }
            SupportCurve::Ellipse { a, b } => {
                let h = self.h(theta);
                let q1 = (b * b - a * a) * libm::sin(2.0 * theta);
                let q2 = 2.0 * (b * b - a * a) * libm::cos(2.0 * theta);
                q2 / (2.0 * h) - q1 * q1 / (4.0 * h * h * h)
            }
        }
    }

    /// Taylor series of h at `theta_c` (orders 0..=10).
    pub fn h_series(&self, theta_c: f64) -> Series {
        match self {
            SupportCurve::Fourier {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => {
                let mut s = Series::constant(*a0);
                for (i, c) in cos_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    // cos(n(theta_c + t)) as a series in t: scale orders by n^k
                    let base = Series::cos_shifted(n * theta_c);
                    let mut scaled = base;
                    let mut p = 1.0;
                    for k in 0..scaled.c.len() {
                        scaled.c[k] *= p * c;
                        p *= n;
                    }
                    s = s.add(&scaled);
                }
                for (i, coeff) in sin_coeffs.iter().enumerate() {
                    let n = (i + 1) as f64;
                    let base = Series::sin_shifted(n * theta_c);
                    let mut scaled = base;
                    let mut p = 1.0;
                    for k in 0..scaled.c.len() {
                        scaled.c[k] *= p * coeff;
                        p *= n;
                    }
                    s = s.add(&scaled);
                }
                s
            }
            SupportCurve::Ellipse { a, b } => {
                // q = (a^2+b^2)/2 + (a^2-b^2)/2 cos(2 theta); h = sqrt(q)
                let m0 = 0.5 * (a * a + b * b);
                let m2 = 0.5 * (a * a - b * b);
                let base = Series::cos_shifted(2.0 * theta_c);
                let mut q = base;
                let mut p = 1.0;
                for k in 0..q.c.len() {
                    q.c[k] *= p * m2;
                    p *= 2.0;
                }
                q.c[0] += m0;
                q.sqrt()
            }
        }
    }

    /// Radius of curvature rho = h + h''.
    pub fn rho(&self, theta: f64) -> f64 {
        self.h(theta) + self.h2(theta)
    }

    fn check_convexity(&self) -> Result<(), CurveError> {
        // Dense grid scan, then golden-section refinement near grid minima.
        const N: usize = 1024;
        let mut min_rho = f64::INFINITY;
        let mut min_idx = 0;
        let mut rhos = [0.0_f64; N];
        for i in 0..N {
            let theta = 2.0 * PI * i as f64 / N as f64;
            rhos[i] = self.rho(theta);
            if rhos[i] < min_rho {
                min_rho = rhos[i];
                min_idx = i;
            }
        }
        let step = 2.0 * PI / N as f64;
        let center = min_idx as f64 * step;
        let (theta_min, rho_min) =
            golden_min(|t| self.rho(t), center - step, center + step, 1e-12);
        if rho_min <= 0.0 {
            return Err(CurveError::NonConvex {
                theta: wrap_angle(theta_min),
                rho: rho_min,
            });
        }
        Ok(())
    }

    /// Boundary point with outward normal `(cos theta, sin theta)`.
    pub fn point_at(&self, theta: f64) -> Result<BoundaryPoint, CurveError> {
        let rho = self.rho(theta);
        if rho <= 0.0 {
            return Err(CurveError::NonConvex { theta, rho });
        }
        let u = Vec2::unit(theta);
        let up = u.perp();
        let h = self.h(theta);
        let h1 = self.h1(theta);
        Ok(BoundaryPoint {
            theta,
            position: u * h + up * h1,
            outward_normal: u,
            tangent: up,
            curvature: 1.0 / rho,
        })
    }

    /// Direction-width profile `w(theta) = h(theta) + h(theta + pi)`.
    pub fn width_profile(&self, n_samples: usize, tol: f64) -> WidthProfile {
        let n = n_samples.max(16);
        let mut samples = Vec::with_capacity(n);
        let mut w_min = f64::INFINITY;
        let mut w_max = f64::NEG_INFINITY;
        let mut mean = 0.0;
        for i in 0..n {
            let theta = 2.0 * PI * i as f64 / n as f64;
            let w = self.h(theta) + self.h(theta + PI);
            samples.push((theta, w));
            w_min = w_min.min(w);
            w_max = w_max.max(w);
            mean += w;
        }
        mean /= n as f64;
        let dev = (w_max - mean).max(mean - w_min);
        WidthProfile {
            samples,
            w_min,
            w_max,
            is_constant: dev <= tol * mean,
            breadth: mean,
        }
    }

    /// The point with opposite normal, the breadth of the chord, and the
    /// double-normal defect `|h'(theta) + h'(theta+pi)|`.
    ///
    /// The antipodal frame is built as the exact negation of the frame at
    /// `theta`, so `nu(p*) + nu(p) = 0` holds bitwise. The chord p p* is a
    /// double normal precisely when the residual vanishes.
    pub fn involution(&self, theta: f64) -> Result<(BoundaryPoint, f64, f64), CurveError> {
        let theta_star = theta + PI;
        let rho_star = self.rho(theta_star);
        if rho_star <= 0.0 {
            return Err(CurveError::NonConvex {
                theta: theta_star,
                rho: rho_star,
            });
        }
        let u_star = -Vec2::unit(theta);
        let up_star = u_star.perp();
        let h_star = self.h(theta_star);
        let h1_star = self.h1(theta_star);
        let p_star = BoundaryPoint {
            theta: theta_star,
            position: u_star * h_star + up_star * h1_star,
            outward_normal: u_star,
            tangent: up_star,
            curvature: 1.0 / rho_star,
        };
        let breadth = self.h(theta) + h_star;
        let residual = (self.h1(theta) + h1_star).abs();
        Ok((p_star, breadth, residual))
    }

    /// Harmonic amplitudes of h up to `n_max` (index 0 = mean).
    ///
    /// Exact for trig-polynomial support functions; spectrally accurate
    /// trapezoid projection for the ellipse.
    pub fn harmonic_amplitudes(&self, n_max: usize) -> Vec<f64> {
        match self {
            SupportCurve::Fourier {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => {
                let mut amps = Vec::with_capacity(n_max + 1);
                amps.push(a0.abs());
                for n in 1..=n_max {
                    let c = cos_coeffs.get(n - 1).copied().unwrap_or(0.0);
                    let s = sin_coeffs.get(n - 1).copied().unwrap_or(0.0);
                    amps.push(libm::hypot(c, s));
                }
                amps
            }
            SupportCurve::Ellipse { .. } => {
                const N: usize = 1024;
                let mut hs = Vec::with_capacity(N);
                for i in 0..N {
                    hs.push(self.h(2.0 * PI * i as f64 / N as f64));
                }
                let mut amps = Vec::with_capacity(n_max + 1);
                for n in 0..=n_max {
                    let mut c = 0.0;
                    let mut s = 0.0;
                    for (i, h) in hs.iter().enumerate() {
                        let ang = 2.0 * PI * (n * i) as f64 / N as f64;
                        c += h * libm::cos(ang);
                        s += h * libm::sin(ang);
                    }
                    let scale = if n == 0 { 1.0 / N as f64 } else { 2.0 / N as f64 };
                    amps.push(libm::hypot(c * scale, s * scale));
                }
                amps
            }
        }
    }

    /// First-harmonic vector of h: the translation that centers the curve.
    pub fn first_harmonic(&self) -> Vec2 {
        match self {
            SupportCurve::Fourier {
                cos_coeffs,
                sin_coeffs,
                ..
            } => Vec2::new(
                cos_coeffs.first().copied().unwrap_or(0.0),
                sin_coeffs.first().copied().unwrap_or(0.0),
            ),
            SupportCurve::Ellipse { .. } => Vec2::new(0.0, 0.0),
        }
    }

    /// Symmetry, constant-width and circle predicates at relative tolerance
    /// `tol` (harmonic amplitudes compared against `tol * mean(h)`).
    ///
    /// First-harmonic content is removed by translation before testing, so
    /// central symmetry is judged about the curve's own center. Constant
    /// width kills the even harmonics n >= 2, central symmetry the odd ones;
    /// together only the mean survives, which is the circle.
    pub fn symmetry_and_circle_certificate(&self, tol: f64) -> CircleCertificate {
        let center = self.first_harmonic();
        let n_max = self.harmonic_cutoff();
        let amps = self.harmonic_amplitudes(n_max);
        let scale = amps[0].max(f64::MIN_POSITIVE);
        let mut max_odd = 0.0_f64;
        let mut max_even = 0.0_f64;
        for (n, amp) in amps.iter().enumerate().skip(2) {
            if n % 2 == 0 {
                max_even = max_even.max(*amp);
            } else {
                max_odd = max_odd.max(*amp);
            }
        }
        let centrally_symmetric = max_odd <= tol * scale;
        let constant_width = max_even <= tol * scale;
        CircleCertificate {
            centrally_symmetric,
            constant_width,
            is_circle: centrally_symmetric && constant_width,
            center,
            max_odd_harmonic: max_odd,
            max_even_harmonic: max_even,
        }
    }

    fn harmonic_cutoff(&self) -> usize {
        match self {
            SupportCurve::Fourier {
                cos_coeffs,
                sin_coeffs,
                ..
            } => cos_coeffs.len().max(sin_coeffs.len()).max(2),
            // the ellipse spectrum decays geometrically; 64 harmonics reach
            // well below any tolerance this crate uses
            SupportCurve::Ellipse { .. } => 64,
        }
    }

    /// Taylor jet of the boundary graph `y(x1)` in the tangent /
    /// inward-normal frame at `theta_c`, so that `c0 = c1 = 0` and
    /// `c2 = curvature / 2`.
    ///
    /// Computed by jet arithmetic: series of the frame coordinates in the
    /// support parameter, reversion of the tangential coordinate, and
    /// composition. No hand-coded high derivatives.
    pub fn jet_at(&self, theta_c: f64, order: usize) -> Result<Jet1D, CurveError> {
        if order > 8 {
            return Err(CurveError::JetOverflow { order });
        }
        let rho = self.rho(theta_c);
        if rho <= 0.0 {
            return Err(CurveError::NonConvex {
                theta: theta_c,
                rho,
            });
        }
        let (_, y) = self.graph_series(theta_c);
        Ok(Jet1D::from_series(theta_c, &y, order))
    }

    /// Series (in the tangential coordinate x1) of the graph y(x1) at
    /// theta_c, together with the reverted parameter series s(x1).
    pub(crate) fn graph_series(&self, theta_c: f64) -> (Series, Series) {
        let h = self.h_series(theta_c);
        let h1 = h.derivative();
        let sin_s = Series::sin_shifted(0.0);
        let cos_s = Series::cos_shifted(0.0);
        // Frame: e1 = tangent u_perp(theta_c), e2 = inward normal -u(theta_c).
        // X(s) = h(tc+s) sin s + h'(tc+s) cos s - h'(tc)
        // Y(s) = h(tc) - h(tc+s) cos s + h'(tc+s) sin s
        let mut x = h.mul(&sin_s).add(&h1.mul(&cos_s));
        x.c[0] = 0.0; // subtracts h'(tc) exactly
        let mut y = h1.mul(&sin_s).sub(&h.mul(&cos_s));
        y.c[0] = 0.0; // adds h(tc) exactly
        let s_of_x = x.revert();
        (s_of_x, y.compose(&s_of_x))
    }

    /// Periodic-trapezoid boundary nodes `(position, ds weight)`.
    ///
    /// The weights sum to the perimeter spectrally fast; for the disk the sum
    /// is exact for every n.
    pub fn quad_nodes(&self, n: usize) -> Result<Vec<(Vec2, f64)>, CurveError> {
        let n = n.max(8);
        let step = 2.0 * PI / n as f64;
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            let theta = i as f64 * step;
            let p = self.point_at(theta)?;
            nodes.push((p.position, self.rho(theta) * step));
        }
        Ok(nodes)
    }

    /// Perimeter `int rho dtheta`; exact `2 pi a0` for trig polynomials,
    /// node-doubled trapezoid for the ellipse.
    pub fn perimeter(&self) -> f64 {
        match self {
            SupportCurve::Fourier { a0, .. } => 2.0 * PI * a0,
            SupportCurve::Ellipse { .. } => {
                let mut n = 64;
                let mut prev = self.perimeter_n(n);
                loop {
                    n *= 2;
                    let cur = self.perimeter_n(n);
                    if (cur - prev).abs() <= 1e-13 * cur.abs() || n >= 1 << 16 {
                        return cur;
                    }
                    prev = cur;
                }
            }
        }
    }

    fn perimeter_n(&self, n: usize) -> f64 {
        let step = 2.0 * PI / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            acc += self.rho(i as f64 * step);
        }
        acc * step
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t < 0.0 {
        t += two_pi;
    }
    t
}

/// Golden-section minimization on [a, b] to interval width `tol`.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618033988749894848;
    let mut a = a;
    let mut b = b;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < tol {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

pub(crate) use golden_min as golden_section_min;

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn disk_point() {
        let c = SupportCurve::unit_disk();
        let p = c.point_at(0.0).unwrap();
        assert_close(p.position.x, 1.0, 1e-15);
        assert_close(p.position.y, 0.0, 1e-15);
        assert_close(p.outward_normal.x, 1.0, 1e-15);
        assert_close(p.curvature, 1.0, 1e-15);
    }

    #[test]
    fn trig_poly_point() {
        // h = 1 + 0.1 cos 3t: rho(0) = 1.1 - 0.9 = 0.2, curvature 5
        let c = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.0, 0.1], Vec::new()).unwrap();
        let p = c.point_at(0.0).unwrap();
        assert_close(p.position.x, 1.1, 1e-15);
        assert_close(p.position.y, 0.0, 1e-15);
        assert_close(p.curvature, 5.0, 1e-12);
    }

    #[test]
    fn ellipse_vertex_points() {
        let c = SupportCurve::ellipse(2.0, 1.0).unwrap();
        let p0 = c.point_at(0.0).unwrap();
        assert_close(p0.position.x, 2.0, 1e-14);
        assert_close(p0.position.y, 0.0, 1e-14);
        // curvature at the (a, 0) vertex is a/b^2
        assert_close(p0.curvature, 2.0, 1e-12);
        // curvature at the (0, b) vertex is b/a^2
        let p1 = c.point_at(PI / 2.0).unwrap();
        assert_close(p1.position.y, 1.0, 1e-14);
        assert_close(p1.curvature, 0.25, 1e-12);
    }

    #[test]
    fn support_consistency_on_grid() {
        let curves = [
            SupportCurve::ellipse(2.0, 1.0).unwrap(),
            SupportCurve::fourier(1.0, alloc::vec![0.02, 0.0, 0.05], alloc::vec![0.01]).unwrap(),
        ];
        for c in &curves {
            for i in 0..64 {
                let theta = 2.0 * PI * i as f64 / 64.0;
                let p = c.point_at(theta).unwrap();
                let h = c.h(theta);
                assert!(
                    (p.position.dot(p.outward_normal) - h).abs() <= 1e-12 * h.abs().max(1.0)
                );
            }
        }
    }

    #[test]
    fn widths() {
        let disk = SupportCurve::Fourier {
            a0: 1.5,
            cos_coeffs: Vec::new(),
            sin_coeffs: Vec::new(),
        };
        let w = disk.width_profile(64, 1e-10);
        assert!(w.is_constant);
        assert_close(w.breadth, 3.0, 1e-14);

        let cw = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.0, 0.05], Vec::new()).unwrap();
        let w = cw.width_profile(128, 1e-10);
        assert!(w.is_constant, "odd harmonics cancel in h(t)+h(t+pi)");
        assert_close(w.breadth, 2.0, 1e-13);

        let ell = SupportCurve::ellipse(2.0, 1.0).unwrap();
        let w = ell.width_profile(256, 1e-10);
        assert!(!w.is_constant);
        assert_close(w.w_min, 2.0, 1e-10);
        assert_close(w.w_max, 4.0, 1e-10);
    }

    #[test]
    fn involution_cases() {
        let disk = SupportCurve::unit_disk();
        let (p_star, breadth, residual) = disk.involution(0.0).unwrap();
        assert_close(p_star.position.x, -1.0, 1e-15);
        assert_close(breadth, 2.0, 1e-15);
        assert_close(residual, 0.0, 1e-15);

        let cw = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.0, 0.05], Vec::new()).unwrap();
        for i in 0..16 {
            let theta = 2.0 * PI * i as f64 / 16.0;
            let (_, breadth, residual) = cw.involution(theta).unwrap();
            assert_close(breadth, 2.0, 1e-13);
            assert_close(residual, 0.0, 1e-13);
        }

        // h = 1 + 0.05 cos 2t at pi/8: residual = |-0.2 sin(pi/4)|
        let even = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.05], Vec::new()).unwrap();
        let (_, _, residual) = even.involution(PI / 8.0).unwrap();
        assert_close(residual, 0.14142135623730953, 1e-13);
    }

    #[test]
    fn normals_cancel_exactly() {
        let c = SupportCurve::fourier(1.0, alloc::vec![0.03, 0.04, 0.02], alloc::vec![0.01, 0.02])
            .unwrap();
        for i in 0..32 {
            let theta = 2.0 * PI * i as f64 / 32.0 + 0.1;
            let p = c.point_at(theta).unwrap();
            let (p_star, _, _) = c.involution(theta).unwrap();
            let sum = p.outward_normal + p_star.outward_normal;
            assert!(sum.x == 0.0 && sum.y == 0.0, "antipodal frame is exact");
        }
    }

    #[test]
    fn certificates() {
        let disk = SupportCurve::unit_disk();
        let cert = disk.symmetry_and_circle_certificate(1e-10);
        assert!(cert.centrally_symmetric && cert.constant_width && cert.is_circle);

        let cw = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.0, 0.05], Vec::new()).unwrap();
        let cert = cw.symmetry_and_circle_certificate(1e-10);
        assert!(!cert.centrally_symmetric);
        assert!(cert.constant_width);
        assert!(!cert.is_circle);

        let even = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.05], Vec::new()).unwrap();
        let cert = even.symmetry_and_circle_certificate(1e-10);
        assert!(cert.centrally_symmetric);
        assert!(!cert.constant_width);
        assert!(!cert.is_circle);

        // off-center circle: first harmonic only, still a circle about its center
        let shifted = SupportCurve::fourier(1.0, alloc::vec![0.2], alloc::vec![-0.1]).unwrap();
        let cert = shifted.symmetry_and_circle_certificate(1e-10);
        assert!(cert.is_circle);
        assert_close(cert.center.x, 0.2, 1e-15);
        assert_close(cert.center.y, -0.1, 1e-15);

        let ell = SupportCurve::ellipse(1.5, 1.0).unwrap();
        let cert = ell.symmetry_and_circle_certificate(1e-10);
        assert!(cert.centrally_symmetric);
        assert!(!cert.constant_width);
    }

    #[test]
    fn jets_on_circles() {
        let disk = SupportCurve::unit_disk();
        for theta_c in [0.0, 0.7, 2.3] {
            let j = disk.jet_at(theta_c, 6).unwrap();
            let want = [0.0, 0.0, 0.5, 0.0, 1.0 / 8.0, 0.0, 1.0 / 16.0];
            for (k, w) in want.iter().enumerate() {
                assert_close(j.coeffs[k], *w, 1e-12);
            }
        }
        // radius R: c2 = 1/(2R), c4 = 1/(8R^3), c6 = 1/(16R^5)
        let r = 2.5;
        let disk_r = SupportCurve::Fourier {
            a0: r,
            cos_coeffs: Vec::new(),
            sin_coeffs: Vec::new(),
        };
        let j = disk_r.jet_at(1.1, 6).unwrap();
        assert_close(j.coeffs[2], 1.0 / (2.0 * r), 1e-13);
        assert_close(j.coeffs[4], 1.0 / (8.0 * r * r * r), 1e-13);
        assert_close(j.coeffs[6], 1.0 / (16.0 * libm::pow(r, 5.0)), 1e-13);
    }

    #[test]
    fn jet_c2_is_half_curvature() {
        let curves = [
            SupportCurve::ellipse(2.0, 1.0).unwrap(),
            SupportCurve::fourier(1.0, alloc::vec![0.02, 0.03, 0.05], alloc::vec![0.01, 0.0, 0.02])
                .unwrap(),
        ];
        for c in &curves {
            for i in 0..64 {
                let theta = 2.0 * PI * i as f64 / 64.0;
                let j = c.jet_at(theta, 4).unwrap();
                let k = c.point_at(theta).unwrap().curvature;
                assert!((j.coeffs[2] - 0.5 * k).abs() <= 1e-12 * k.abs());
                assert_close(j.coeffs[0], 0.0, 1e-14);
                assert_close(j.coeffs[1], 0.0, 1e-13);
            }
        }
    }

    #[test]
    fn jet_order_cap() {
        let disk = SupportCurve::unit_disk();
        assert!(matches!(
            disk.jet_at(0.0, 9),
            Err(CurveError::JetOverflow { order: 9 })
        ));
    }

    #[test]
    fn quadrature_weights() {
        let disk = SupportCurve::unit_disk();
        let nodes = disk.quad_nodes(16).unwrap();
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert_close(total, 2.0 * PI, 1e-14);

        let cw = SupportCurve::fourier(1.0, alloc::vec![0.0, 0.0, 0.05], Vec::new()).unwrap();
        let total: f64 = cw.quad_nodes(256).unwrap().iter().map(|(_, w)| w).sum();
        // Barbier: perimeter of a constant-width curve is pi L = 2 pi
        assert_close(total, 2.0 * PI, 1e-12);
    }

    #[test]
    fn nonconvex_rejected() {
        assert!(matches!(
            SupportCurve::fourier(1.0, alloc::vec![0.0, 0.5], Vec::new()),
            Err(CurveError::NonConvex { .. })
        ));
        assert!(matches!(
            SupportCurve::ellipse(1.0, 2.0),
            Err(CurveError::InvalidEllipseAxes { .. })
        ));
    }
}
