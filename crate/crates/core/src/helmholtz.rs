//! Helmholtz eigensolver (Method of Particular Solutions) and
//! overdetermined-condition deviation metrics.
//!
//! Trial solutions are Fourier-Bessel fields `J_m(sqrt(alpha) r) cos/sin(m
//! theta)` in polar coordinates about the curve's center; they solve the
//! Helmholtz equation exactly, so only the boundary condition is enforced,
//! by collocation. Random interior points regularize the generalized
//! singular value problem (the Betcke-Trefethen subspace-angle form):
//! stacking boundary and interior blocks, taking a thin QR, and reading the
//! smallest singular value of the boundary part of Q gives a dip exactly at
//! the eigenvalues.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{golden_section_min, SupportCurve};
use crate::linalg::{jacobi_svd, qr_thin, solve_upper, Mat};
use crate::planewave::{self, IntegralKind, ScanOptions};
use crate::specfun;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HelmholtzError {
    /// No dip of the singular value curve inside the window.
    NoDipFound,
    /// Dips existed but none refined below the qualification threshold.
    IllConditioned { best_sigma: f64 },
    /// Boundary data is identically zero: the wrong quantity was sampled.
    DegenerateMode { rms: f64 },
    BadConfig { reason: &'static str },
}

impl fmt::Display for HelmholtzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HelmholtzError::NoDipFound => write!(f, "no singular-value dip in the scan window"),
            HelmholtzError::IllConditioned { best_sigma } => write!(
                f,
                "dips found but none refined below 1e-6 (best sigma = {best_sigma})"
            ),
            HelmholtzError::DegenerateMode { rms } => {
                write!(f, "boundary data rms {rms} is below 1e-12")
            }
            HelmholtzError::BadConfig { reason } => write!(f, "invalid scan config: {reason}"),
        }
    }
}

impl core::error::Error for HelmholtzError {}

/// Qualification threshold on the refined smallest singular value.
pub const SIGMA_QUALIFY: f64 = 1e-6;
/// Columns whose stacked norm falls below this relative floor are dropped
/// before QR; high orders with negligible J_m values would otherwise poison
/// the triangular solve for the coefficients.
const COLUMN_DROP_REL: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct EigenScanConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub scan_step: f64,
    /// Fourier-Bessel order cutoff M (2M+1 basis fields).
    pub basis_order: usize,
    pub boundary_nodes: usize,
    pub interior_points: usize,
    pub refine_tol: f64,
    pub seed: u64,
}

impl EigenScanConfig {
    pub fn window(alpha_min: f64, alpha_max: f64) -> Self {
        Self {
            alpha_min,
            alpha_max,
            scan_step: 0.05,
            basis_order: 25,
            boundary_nodes: 100,
            interior_points: 50,
            refine_tol: 1e-9,
            seed: 42,
        }
    }

    fn validate(&self) -> Result<(), HelmholtzError> {
        if !(self.alpha_min > 0.0) {
            return Err(HelmholtzError::BadConfig {
                reason: "alpha_min must be positive",
            });
        }
        if !(self.alpha_max > self.alpha_min) {
            return Err(HelmholtzError::BadConfig {
                reason: "alpha_max must exceed alpha_min",
            });
        }
        if self.basis_order >= self.boundary_nodes / 2 {
            return Err(HelmholtzError::BadConfig {
                reason: "need basis_order < boundary_nodes / 2",
            });
        }
        if self.interior_points < self.basis_order {
            return Err(HelmholtzError::BadConfig {
                reason: "need interior_points >= basis_order",
            });
        }
        if !(self.scan_step > 0.0 && self.refine_tol > 0.0) {
            return Err(HelmholtzError::BadConfig {
                reason: "scan_step and refine_tol must be positive",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenKind {
    Dirichlet,
    Neumann,
}

impl EigenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenKind::Dirichlet => "dirichlet",
            EigenKind::Neumann => "neumann",
        }
    }
}

/// A computed eigenpair with its overdetermined boundary trace.
#[derive(Clone, Debug)]
pub struct EigenMode {
    pub alpha: f64,
    pub kind: EigenKind,
    /// Coefficients on the (possibly column-filtered) Fourier-Bessel basis;
    /// entry i corresponds to `basis_index` i.
    pub coefficients: Vec<f64>,
    /// Overdetermined quantity on the boundary: `du/dnu` samples for
    /// Dirichlet modes, `u` samples for Neumann modes, rms-normalized.
    pub boundary_data: Vec<(f64, f64)>,
    pub deviation: f64,
    /// Number of singular values below the qualification threshold at this
    /// alpha (2 for a double eigenvalue).
    pub multiplicity: usize,
    /// Smallest singular value at the refined alpha.
    pub sigma: f64,
}

/// Collocation geometry shared across alpha evaluations.
struct Collocation {
    /// boundary: (r, phi, nu_r, nu_phi, theta)
    boundary: Vec<(f64, f64, f64, f64, f64)>,
    /// interior: (r, phi)
    interior: Vec<(f64, f64)>,
}

fn build_collocation(curve: &SupportCurve, cfg: &EigenScanConfig) -> Collocation {
    let center = curve.first_harmonic();
    let nb = cfg.boundary_nodes;
    let mut boundary = Vec::with_capacity(nb);
    for i in 0..nb {
        let theta = 2.0 * core::f64::consts::PI * i as f64 / nb as f64;
        let p = curve.point_at(theta).expect("validated curve");
        let rel = p.position - center;
        let r = rel.norm();
        let phi = rel.angle();
        let rhat = rel * (1.0 / r);
        let phat = rhat.perp();
        boundary.push((
            r,
            phi,
            p.outward_normal.dot(rhat),
            p.outward_normal.dot(phat),
            theta,
        ));
    }
    // polar radius lookup for the interior sampler
    const TBL: usize = 512;
    let mut table: Vec<(f64, f64)> = (0..TBL)
        .map(|i| {
            let theta = 2.0 * core::f64::consts::PI * i as f64 / TBL as f64;
            let p = curve.point_at(theta).expect("validated curve");
            let rel = p.position - center;
            (wrap_two_pi(rel.angle()), rel.norm())
        })
        .collect();
    table.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let radius_at = |phi: f64| -> f64 {
        let phi = wrap_two_pi(phi);
        let idx = table.partition_point(|e| e.0 <= phi);
        let (p0, r0) = if idx == 0 { let (p, r) = table[TBL - 1]; (p - 2.0 * core::f64::consts::PI, r) } else { table[idx - 1] };
        let (p1, r1) = if idx == TBL { let (p, r) = table[0]; (p + 2.0 * core::f64::consts::PI, r) } else { table[idx] };
        let w = if p1 > p0 { (phi - p0) / (p1 - p0) } else { 0.0 };
        r0 + w * (r1 - r0)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut unit = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let mut interior = Vec::with_capacity(cfg.interior_points);
    while interior.len() < cfg.interior_points {
        let phi = 2.0 * core::f64::consts::PI * unit();
        // sqrt for an area-uniform radial law, 0.9 margin off the boundary
        let s = libm::sqrt(unit());
        let r = 0.9 * s * radius_at(phi);
        interior.push((r, phi));
    }
    Collocation { boundary, interior }
}

fn wrap_two_pi(phi: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut p = phi % two_pi;
    if p < 0.0 {
        p += two_pi;
    }
    p
}

/// Basis column layout: m = 0 cosine, then (cos, sin) per m = 1..=M.
fn basis_count(m_max: usize) -> usize {
    2 * m_max + 1
}

/// Fills one row of boundary (value or normal-derivative) entries.
fn basis_row(
    k: f64,
    r: f64,
    phi: f64,
    m_max: usize,
    normal: Option<(f64, f64)>,
    out: &mut [f64],
) {
    let ladder = specfun::bessel_j_many(m_max as u32 + 1, k * r).expect("in-range bessel");
    let mut col = 0;
    for m in 0..=m_max {
        let jm = ladder[m];
        let (c, s) = (libm::cos(m as f64 * phi), libm::sin(m as f64 * phi));
        match normal {
            None => {
                out[col] = jm * c;
                col += 1;
                if m > 0 {
                    out[col] = jm * s;
                    col += 1;
                }
            }
            Some((nu_r, nu_phi)) => {
                let jprime = if m == 0 {
                    -ladder[1]
                } else {
                    0.5 * (ladder[m - 1] - ladder[m + 1])
                };
                let radial = k * jprime;
                let angular = m as f64 * jm / r;
                out[col] = nu_r * radial * c - nu_phi * angular * s;
                col += 1;
                if m > 0 {
                    out[col] = nu_r * radial * s + nu_phi * angular * c;
                    col += 1;
                }
            }
        }
    }
}

struct SigmaEval {
    sigma1: f64,
    sigma2: f64,
    /// coefficient vectors for the smallest and second-smallest directions,
    /// mapped back onto the full basis layout
    coef1: Vec<f64>,
    coef2: Vec<f64>,
}

/// Assembles the stacked boundary/interior matrix at `alpha` and returns the
/// two smallest singular values of the boundary block of the thin Q, plus
/// basis coefficients for their directions.
fn sigma_at(
    curve: &SupportCurve,
    kind: EigenKind,
    coll: &Collocation,
    cfg: &EigenScanConfig,
    alpha: f64,
) -> SigmaEval {
    let _ = curve;
    let k = libm::sqrt(alpha);
    let m_max = cfg.basis_order;
    let nb = coll.boundary.len();
    let ni = coll.interior.len();
    let ncols = basis_count(m_max);
    let mut stacked = Mat::zeros(nb + ni, ncols);
    let mut row = vec![0.0; ncols];
    for (i, &(r, phi, nu_r, nu_phi, _)) in coll.boundary.iter().enumerate() {
        match kind {
            EigenKind::Dirichlet => basis_row(k, r, phi, m_max, None, &mut row),
            EigenKind::Neumann => basis_row(k, r, phi, m_max, Some((nu_r, nu_phi)), &mut row),
        }
        for j in 0..ncols {
            stacked.set(i, j, row[j]);
        }
    }
    for (i, &(r, phi)) in coll.interior.iter().enumerate() {
        basis_row(k, r, phi, m_max, None, &mut row);
        for j in 0..ncols {
            stacked.set(nb + i, j, row[j]);
        }
    }
    // drop negligible columns (high orders whose J_m is ~0 here)
    let mut keep = Vec::with_capacity(ncols);
    let mut max_norm = 0.0_f64;
    let norms: Vec<f64> = (0..ncols).map(|j| stacked.col_norm(j)).collect();
    for &n in &norms {
        max_norm = max_norm.max(n);
    }
    for (j, &n) in norms.iter().enumerate() {
        if n > COLUMN_DROP_REL * max_norm {
            keep.push(j);
        }
    }
    let mut filtered = Mat::zeros(nb + ni, keep.len());
    for i in 0..nb + ni {
        for (jj, &j) in keep.iter().enumerate() {
            filtered.set(i, jj, stacked.at(i, j));
        }
    }
    let (q, r) = qr_thin(&filtered);
    let qb = q.top_rows(nb);
    let (sing, v) = jacobi_svd(&qb);
    let n = sing.len();
    let sigma1 = sing[n - 1];
    let sigma2 = if n >= 2 { sing[n - 2] } else { f64::INFINITY };
    let extract = |col: usize| -> Vec<f64> {
        let vcol: Vec<f64> = (0..n).map(|i| v.at(i, col)).collect();
        let reduced = solve_upper(&r, &vcol);
        let mut full = vec![0.0; ncols];
        for (jj, &j) in keep.iter().enumerate() {
            full[j] = reduced[jj];
        }
        full
    };
    let coef1 = extract(n - 1);
    let coef2 = if n >= 2 { extract(n - 2) } else { vec![0.0; ncols] };
    SigmaEval {
        sigma1,
        sigma2,
        coef1,
        coef2,
    }
}

/// Scans the window for eigenvalues and returns the qualified modes sorted
/// by alpha.
pub fn eigen_scan(
    curve: &SupportCurve,
    kind: EigenKind,
    cfg: &EigenScanConfig,
) -> Result<Vec<EigenMode>, HelmholtzError> {
    cfg.validate()?;
    let coll = build_collocation(curve, cfg);
    let sigma = |alpha: f64| sigma_at(curve, kind, &coll, cfg, alpha).sigma1;

    // coarse scan
    let mut alphas = Vec::new();
    let mut a = cfg.alpha_min;
    while a <= cfg.alpha_max + 1e-12 {
        alphas.push(a);
        a += cfg.scan_step;
    }
    let values: Vec<f64> = alphas.iter().map(|&a| sigma(a)).collect();

    // strict interior local minima below the dip prefilter
    const DIP_PREFILTER: f64 = 0.25;
    let mut candidates = Vec::new();
    for i in 1..alphas.len() - 1 {
        if values[i] < values[i - 1] && values[i] < values[i + 1] && values[i] < DIP_PREFILTER {
            candidates.push(i);
        }
    }
    if candidates.is_empty() {
        return Err(HelmholtzError::NoDipFound);
    }

    let mut modes = Vec::new();
    let mut best_sigma = f64::INFINITY;
    for idx in candidates {
        let (alpha_star, _) =
            golden_refine(&sigma, alphas[idx - 1], alphas[idx + 1], cfg.refine_tol);
        let eval = sigma_at(curve, kind, &coll, cfg, alpha_star);
        best_sigma = best_sigma.min(eval.sigma1);
        if eval.sigma1 >= SIGMA_QUALIFY {
            continue;
        }
        let multiplicity = if eval.sigma2 < SIGMA_QUALIFY { 2 } else { 1 };
        for which in 0..multiplicity {
            let coefficients = if which == 0 {
                eval.coef1.clone()
            } else {
                eval.coef2.clone()
            };
            let mode = finish_mode(
                kind,
                &coll,
                cfg,
                alpha_star,
                coefficients,
                multiplicity,
                eval.sigma1,
            )?;
            modes.push(mode);
        }
    }
    if modes.is_empty() {
        return Err(HelmholtzError::IllConditioned { best_sigma });
    }
    modes.sort_by(|a, b| a.alpha.partial_cmp(&b.alpha).unwrap());
    Ok(modes)
}

fn golden_refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    golden_section_min(f, a, b, tol)
}

fn finish_mode(
    kind: EigenKind,
    coll: &Collocation,
    cfg: &EigenScanConfig,
    alpha: f64,
    coefficients: Vec<f64>,
    multiplicity: usize,
    sigma: f64,
) -> Result<EigenMode, HelmholtzError> {
    let k = libm::sqrt(alpha);
    let m_max = cfg.basis_order;
    let ncols = basis_count(m_max);
    let mut row = vec![0.0; ncols];
    // overdetermined quantity: the complementary boundary trace
    let mut data = Vec::with_capacity(coll.boundary.len());
    for &(r, phi, nu_r, nu_phi, theta) in &coll.boundary {
        match kind {
            EigenKind::Dirichlet => basis_row(k, r, phi, m_max, Some((nu_r, nu_phi)), &mut row),
            EigenKind::Neumann => basis_row(k, r, phi, m_max, None, &mut row),
        }
        let mut v = 0.0;
        for j in 0..ncols {
            v += coefficients[j] * row[j];
        }
        data.push((theta, v));
    }
    let n = data.len() as f64;
    let rms = libm::sqrt(data.iter().map(|(_, v)| v * v).sum::<f64>() / n);
    if rms < 1e-12 {
        return Err(HelmholtzError::DegenerateMode { rms });
    }
    let mut mean = data.iter().map(|(_, v)| *v).sum::<f64>() / n;
    let flip = if mean < 0.0 { -1.0 } else { 1.0 };
    let scale = flip / rms;
    let mut coefficients = coefficients;
    for c in coefficients.iter_mut() {
        *c *= scale;
    }
    for d in data.iter_mut() {
        d.1 *= scale;
    }
    mean *= scale;
    let var = data.iter().map(|(_, v)| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(EigenMode {
        alpha,
        kind,
        coefficients,
        boundary_data: data,
        deviation: libm::sqrt(var),
        multiplicity,
        sigma,
    })
}

/// `std / rms` of the mode's overdetermined boundary quantity; zero means
/// the overdetermined condition holds exactly.
pub fn boundary_deviation(mode: &EigenMode) -> Result<f64, HelmholtzError> {
    let n = mode.boundary_data.len() as f64;
    if n == 0.0 {
        return Err(HelmholtzError::DegenerateMode { rms: 0.0 });
    }
    let rms = libm::sqrt(mode.boundary_data.iter().map(|(_, v)| v * v).sum::<f64>() / n);
    if rms < 1e-12 {
        return Err(HelmholtzError::DegenerateMode { rms });
    }
    let mean = mode.boundary_data.iter().map(|(_, v)| *v).sum::<f64>() / n;
    let var = mode
        .boundary_data
        .iter()
        .map(|(_, v)| (v - mean) * (v - mean))
        .sum::<f64>()
        / n;
    Ok(libm::sqrt(var) / rms)
}

/// Evaluates a mode at an arbitrary point (polar about the curve center).
pub fn mode_value(mode: &EigenMode, cfg: &EigenScanConfig, point_polar: (f64, f64)) -> f64 {
    let k = libm::sqrt(mode.alpha);
    let ncols = basis_count(cfg.basis_order);
    let mut row = vec![0.0; ncols];
    basis_row(k, point_polar.0, point_polar.1, cfg.basis_order, None, &mut row);
    row.iter()
        .zip(mode.coefficients.iter())
        .map(|(b, c)| b * c)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenVerdict {
    OverdeterminedSolvable,
    NoOverdeterminedModeInWindow,
}

impl EigenVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenVerdict::OverdeterminedSolvable => "OVERDETERMINED-SOLVABLE",
            EigenVerdict::NoOverdeterminedModeInWindow => "NO-OVERDETERMINED-MODE-IN-WINDOW",
        }
    }
}

/// One qualified overdetermined hit with its plane-wave cross-check.
#[derive(Clone, Copy, Debug)]
pub struct OverdeterminedHit {
    pub alpha: f64,
    pub deviation: f64,
    /// max |boundary integral| over 16 directions at this alpha, t = 1
    pub cross_max_integral: f64,
    pub cross_ok: bool,
}

#[derive(Clone, Debug)]
pub struct EigenReport {
    pub modes: Vec<EigenMode>,
    pub hits: Vec<OverdeterminedHit>,
    pub verdict: EigenVerdict,
    pub min_deviation: Option<f64>,
}

/// Scans the window, flags modes whose overdetermined deviation is below
/// `dev_tol`, and cross-checks each hit against the vanishing of the
/// plane-wave boundary integral at the same eigenvalue.
pub fn rigidity_verdict(
    curve: &SupportCurve,
    kind: EigenKind,
    cfg: &EigenScanConfig,
    dev_tol: f64,
) -> Result<EigenReport, HelmholtzError> {
    let modes = match eigen_scan(curve, kind, cfg) {
        Ok(m) => m,
        Err(HelmholtzError::NoDipFound) | Err(HelmholtzError::IllConditioned { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    verdict_for_modes(curve, kind, modes, dev_tol)
}

/// The verdict half of [`rigidity_verdict`], reusing already computed modes.
pub fn verdict_for_modes(
    curve: &SupportCurve,
    kind: EigenKind,
    modes: Vec<EigenMode>,
    dev_tol: f64,
) -> Result<EigenReport, HelmholtzError> {
    let integral_kind = match kind {
        EigenKind::Dirichlet => IntegralKind::Dirichlet,
        EigenKind::Neumann => IntegralKind::Neumann,
    };
    let cross_tol = 1e-6 * curve.perimeter() * match integral_kind {
        // the Neumann integrand carries a factor ~lambda
        IntegralKind::Neumann => 10.0,
        IntegralKind::Dirichlet => 1.0,
    };
    let mut hits = Vec::new();
    let mut min_dev: Option<f64> = None;
    for mode in &modes {
        min_dev = Some(match min_dev {
            None => mode.deviation,
            Some(d) => d.min(mode.deviation),
        });
        if mode.deviation < dev_tol {
            let report = planewave::rigidity_scan(
                curve,
                integral_kind,
                &[(libm::sqrt(mode.alpha + 1.0), 1.0)],
                16,
                ScanOptions {
                    allow_inadmissible: true,
                    tol: Some(cross_tol),
                },
            )
            .map_err(|_| HelmholtzError::BadConfig {
                reason: "cross-check scan failed",
            })?;
            hits.push(OverdeterminedHit {
                alpha: mode.alpha,
                deviation: mode.deviation,
                cross_max_integral: report.max_abs_integral,
                cross_ok: report.max_abs_integral < cross_tol,
            });
        }
    }
    let verdict = if hits.iter().any(|h| h.cross_ok) {
        EigenVerdict::OverdeterminedSolvable
    } else {
        EigenVerdict::NoOverdeterminedModeInWindow
    };
    Ok(EigenReport {
        modes,
        hits,
        verdict,
        min_deviation: min_dev,
    })
}
