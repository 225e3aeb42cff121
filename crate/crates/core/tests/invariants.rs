//! Cross-module invariants: geometric identities on random curves, exact
//! operator-calculus equivalences, and jet identities.

// frozen oracle constants keep every digit of their sources
#![allow(clippy::excessive_precision)]

use oscint_core::curve::SupportCurve;
use oscint_core::jets::Jet1D;
use oscint_core::opcalc::{
    self, apply_box, diamond_power, diamond_power_recursive, expand_box_power, leibniz_table,
    rat, Curvatures, ExpansionMode, MultiPoly, Rat,
};
use proptest::prelude::*;

use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// curve geometry

fn random_convex_fourier(rng: &mut impl FnMut() -> f64, harmonics: usize) -> SupportCurve {
    // keep sum n^2 |amp| well below a0 so rho > 0 is guaranteed
    let a0 = 1.0 + rng();
    let mut cos = vec![0.0; harmonics];
    let mut sin = vec![0.0; harmonics];
    let mut budget = 0.55 * a0;
    for n in 1..=harmonics {
        let weight = ((n * n) as f64).max(1.0);
        let room = budget / (weight * (harmonics - n + 1) as f64);
        cos[n - 1] = (2.0 * rng() - 1.0) * room;
        sin[n - 1] = (2.0 * rng() - 1.0) * room;
        budget -= weight * (cos[n - 1].abs() + sin[n - 1].abs());
    }
    SupportCurve::fourier(a0, cos, sin).expect("construction keeps rho positive")
}

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    }
}

#[test]
fn support_identity_dense() {
    let mut rng = lcg(7);
    for trial in 0..50 {
        let curve = random_convex_fourier(&mut rng, 1 + trial % 6);
        for i in 0..64 {
            let theta = 2.0 * PI * i as f64 / 64.0;
            let p = curve.point_at(theta).unwrap();
            let h = curve.h(theta);
            let err = (p.position.dot(p.outward_normal) - h).abs();
            assert!(err <= 1e-12 * h.abs(), "support identity failed: {err}");
        }
    }
}

#[test]
fn width_symmetry_and_involution_normals() {
    let mut rng = lcg(11);
    for _ in 0..50 {
        let curve = random_convex_fourier(&mut rng, 5);
        for i in 0..32 {
            let theta = 2.0 * PI * i as f64 / 32.0;
            let w1 = curve.h(theta) + curve.h(theta + PI);
            let w2 = curve.h(theta + PI) + curve.h(theta + 2.0 * PI);
            assert!((w1 - w2).abs() <= 1e-14 * w1, "w(theta) = w(theta+pi)");

            let p = curve.point_at(theta).unwrap();
            let (p_star, _, _) = curve.involution(theta).unwrap();
            let s = p.outward_normal + p_star.outward_normal;
            assert!(s.x == 0.0 && s.y == 0.0);
        }
    }
}

/// The certificate's core implication on 1000 random curves: whenever both
/// predicates pass at 1e-10, every nonconstant harmonic is below tolerance
/// and the curve is certified a circle.
#[test]
fn circle_certificate_on_random_curves() {
    let mut rng = lcg(42);
    let tol = 1e-10;
    let mut circles = 0;
    for trial in 0..1000 {
        // mix: plain random, symmetrized, width-constant, both
        let kind = trial % 4;
        let base = random_convex_fourier(&mut rng, 6);
        let (a0, mut cos, mut sin) = match &base {
            SupportCurve::Fourier {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => (*a0, cos_coeffs.clone(), sin_coeffs.clone()),
            _ => unreachable!(),
        };
        if kind == 1 || kind == 3 {
            // kill odd harmonics above 1: centrally symmetric
            for n in (3..=cos.len()).step_by(2) {
                cos[n - 1] = 0.0;
                sin[n - 1] = 0.0;
            }
        }
        if kind == 2 || kind == 3 {
            // kill even harmonics >= 2: constant width
            for n in (2..=cos.len()).step_by(2) {
                cos[n - 1] = 0.0;
                sin[n - 1] = 0.0;
            }
        }
        let curve = SupportCurve::fourier(a0, cos.clone(), sin.clone()).unwrap();
        let cert = curve.symmetry_and_circle_certificate(tol);
        if cert.centrally_symmetric && cert.constant_width {
            assert!(cert.is_circle);
            circles += 1;
            let amps = curve.harmonic_amplitudes(cos.len().max(2));
            for (n, amp) in amps.iter().enumerate().skip(2) {
                assert!(
                    *amp <= tol * amps[0],
                    "harmonic {n} = {amp} survived on a certified circle"
                );
            }
        }
        let width = curve.width_profile(256, tol);
        assert_eq!(cert.constant_width, width.is_constant,
            "harmonic and sampled width tests must agree (trial {trial})");
    }
    // kind == 3 always produces certified circles
    assert!(circles >= 250, "only {circles} certified circles in the mix");
}

#[test]
fn barbier_perimeter_for_constant_width() {
    let mut rng = lcg(5);
    for _ in 0..20 {
        let base = random_convex_fourier(&mut rng, 6);
        let (a0, mut cos, mut sin) = match &base {
            SupportCurve::Fourier {
                a0,
                cos_coeffs,
                sin_coeffs,
            } => (*a0, cos_coeffs.clone(), sin_coeffs.clone()),
            _ => unreachable!(),
        };
        for n in (2..=cos.len()).step_by(2) {
            cos[n - 1] = 0.0;
            sin[n - 1] = 0.0;
        }
        let curve = SupportCurve::fourier(a0, cos, sin).unwrap();
        let profile = curve.width_profile(128, 1e-10);
        assert!(profile.is_constant);
        let total: f64 = curve
            .quad_nodes(512)
            .unwrap()
            .iter()
            .map(|(_, w)| w)
            .sum();
        let barbier = PI * profile.breadth;
        assert!(
            (total - barbier).abs() <= 1e-10 * barbier,
            "Barbier: perimeter {total} vs pi L {barbier}"
        );
    }
}

#[test]
fn ellipse_perimeter_matches_elliptic_integral_oracle() {
    // independent oracle: arc length by adaptive Simpson on |x'(t)| in the
    // angle parametrization x = (a cos t, b sin t)
    fn speed(a: f64, b: f64, t: f64) -> f64 {
        let s = a * t.sin();
        let c = b * t.cos();
        (s * s + c * c).sqrt()
    }
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }
    let (a, b) = (2.0, 1.0);
    let f = |t: f64| speed(a, b, t);
    let mut n = 64;
    let mut prev = simpson(&f, 0.0, 2.0 * PI, n);
    let oracle = loop {
        n *= 2;
        let cur = simpson(&f, 0.0, 2.0 * PI, n);
        if (cur - prev).abs() < 1e-12 || n > 1 << 20 {
            break cur;
        }
        prev = cur;
    };
    // frozen reference from 30-digit arithmetic: 9.6884482205476762
    assert!((oracle - 9.6884482205476762).abs() < 1e-10);

    let curve = SupportCurve::ellipse(a, b).unwrap();
    let total: f64 = curve.quad_nodes(512).unwrap().iter().map(|(_, w)| w).sum();
    assert!((total - oracle).abs() <= 1e-10 * oracle);
}

// ---------------------------------------------------------------------------
// operator calculus

fn rat_in(rng: &mut impl FnMut() -> f64, lo: i64, hi: i64) -> Rat {
    let span = (hi - lo + 1) as f64;
    let num = lo + (rng() * span) as i64;
    let den = 1 + (rng() * 9.0) as i64;
    rat(num, den)
}

fn random_poly(rng: &mut impl FnMut() -> f64, n_vars: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n_vars).unwrap();
    let terms = 2 + (rng() * 5.0) as usize;
    for _ in 0..terms {
        let mut e = [0u16; 3];
        let mut total = 0u16;
        for slot in e.iter_mut().take(n_vars) {
            let room = 4 - total.min(4);
            let x = (rng() * (room as f64 + 1.0)) as u16;
            *slot = x.min(room);
            total += *slot;
        }
        let mut c = rat_in(rng, -9, 9);
        if c == rat(0, 1) {
            c = rat(1, 1);
        }
        p.add_term(e, c);
    }
    if p.is_zero() {
        p.add_term([1, 0, 0], rat(1, 1));
    }
    p
}

fn random_curvatures(rng: &mut impl FnMut() -> f64, n_vars: usize) -> Curvatures {
    let ks = (0..n_vars)
        .map(|_| {
            let mut k = rat_in(rng, -5, 5);
            if k == rat(0, 1) {
                k = rat(2, 1);
            }
            k
        })
        .collect();
    Curvatures::new(ks).unwrap()
}

/// Formula and brute-force expansions agree exactly: 50 random pairs per
/// dimension, all orders n <= 8.
#[test]
fn leibniz_formula_equals_bruteforce() {
    let mut rng = lcg(2024);
    for n_vars in 1..=3 {
        for _ in 0..50 {
            let u = random_poly(&mut rng, n_vars);
            let v = random_poly(&mut rng, n_vars);
            let kk = random_curvatures(&mut rng, n_vars);
            for n in 1..=8 {
                let a = expand_box_power(&u, &v, n, &kk, ExpansionMode::Formula).unwrap();
                let b = expand_box_power(&u, &v, n, &kk, ExpansionMode::BruteForce).unwrap();
                assert_eq!(a, b, "n = {n}, n_vars = {n_vars}");
            }
        }
    }
}

#[test]
fn table_identities_to_twelve() {
    let t = leibniz_table(12);
    for n in 1..=12usize {
        assert_eq!(t.get(2, n), 2 * n as i64, "d_2^n = 2n");
        assert_eq!(t.get(n + 1, n), 1i64 << n, "d_(n+1)^n = 2^n");
        if n >= 3 {
            assert_eq!(
                t.get(3, n),
                2 * (n as i64 - 2) * (n as i64 + 1) + 4,
                "closed form d_3^n"
            );
        }
        if n >= 4 {
            assert_eq!(t.get(n, n), n as i64 * (1i64 << (n - 1)), "d_n^n");
            assert_eq!(t.get(3, n) - t.get(3, n - 1), 4 * (n as i64 - 1));
        }
        // exponential sum identity: sum_k d_k^n 2^{n-k+1} = 4^n
        let mut acc: i64 = 0;
        for k in 1..=n + 1 {
            acc += t.get(k, n) << (n + 1 - k);
        }
        assert_eq!(acc, 1i64 << (2 * n), "sum_k d_k^n 2^(n-k+1) = 4^n");
    }
}

#[test]
fn diamond_multinomial_equals_recursive() {
    let mut rng = lcg(99);
    for n_vars in 1..=3 {
        for _ in 0..10 {
            let u = random_poly(&mut rng, n_vars);
            let v = random_poly(&mut rng, n_vars);
            let kk = random_curvatures(&mut rng, n_vars);
            for m in 0..=4 {
                let a = diamond_power(&u, &v, m, &kk).unwrap();
                let b = diamond_power_recursive(&u, &v, m, &kk).unwrap();
                assert_eq!(a, b, "m = {m}, n_vars = {n_vars}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// diamond^2(u, v) = box u box v for univariate pairs, and the even/odd
    /// power pattern diamond^{2m} = box^m u box^m v.
    #[test]
    fn diamond_even_powers_split(seed in 0u64..1_000_000) {
        let mut rng = lcg(seed.wrapping_add(17));
        let u = random_poly(&mut rng, 1);
        let v = random_poly(&mut rng, 1);
        let kk = random_curvatures(&mut rng, 1);
        for m in 1..=3usize {
            let lhs = diamond_power(&u, &v, 2 * m, &kk).unwrap();
            let mut bu = u.clone();
            let mut bv = v.clone();
            for _ in 0..m {
                bu = apply_box(&bu, &kk).unwrap();
                bv = apply_box(&bv, &kk).unwrap();
            }
            let rhs = bu.mul(&bv).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// (g^2)^{(6)}(0) = 20 g'''(0)^2 for any jet vanishing to third order.
    #[test]
    fn squared_jet_sixth_derivative(c3 in -3.0f64..3.0, c4 in -3.0f64..3.0,
                                    c5 in -3.0f64..3.0, c6 in -3.0f64..3.0) {
        let mut coeffs = [0.0; 9];
        coeffs[3] = c3;
        coeffs[4] = c4;
        coeffs[5] = c5;
        coeffs[6] = c6;
        let jet = Jet1D::new(0.0, coeffs);
        let s = jet.to_series();
        let g2_6 = s.mul(&s).deriv_at0(6);
        let g3 = jet.deriv(3);
        prop_assert!((g2_6 - 20.0 * g3 * g3).abs() <= 1e-12 * (1.0 + g2_6.abs()));
    }
}

#[test]
fn opcalc_dimension_guards() {
    let u = MultiPoly::var(2, 0).unwrap();
    let kk = Curvatures::new(vec![rat(1, 1)]).unwrap();
    assert_eq!(
        apply_box(&u, &kk).unwrap_err(),
        opcalc::OpcalcError::DimensionMismatch
    );
}
