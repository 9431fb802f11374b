use std::f64::consts::{FRAC_PI_2, PI};

use genpr::caps::{
    cap_area_fraction, cap_fraction_approx, cap_volume_fraction, nn_distance_event, nn_fraction,
    CapKind, CapQuery, DistanceEvent,
};
use genpr::samplers::{sample, scaled_pair, SupportFamily, SupportSpec};
use genpr::special::{ln_gamma, reg_inc_beta};
use genpr::{ErrorKind, PairFamily, PointCloud, RngSpec};
use proptest::prelude::*;

fn norms(c: &PointCloud) -> Vec<f64> {
    c.rows()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect()
}

fn draw(family: SupportFamily, scale: f64, d: usize, n: usize, seed: u64) -> PointCloud {
    sample(
        &SupportSpec::new(family, scale, d).unwrap(),
        n,
        RngSpec::new(seed, 0),
    )
    .unwrap()
}

#[test]
fn ball_radius_follows_power_law() {
    // P(|x| <= t) = t^d for the unit ball; Kolmogorov-Smirnov distance.
    for d in [2usize, 5, 16] {
        let mut r = norms(&draw(SupportFamily::Ball, 1.0, d, 100_000, d as u64));
        r.sort_by(f64::total_cmp);
        let n = r.len() as f64;
        let ks = r
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let cdf = t.powi(d as i32);
                (cdf - i as f64 / n)
                    .abs()
                    .max((cdf - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.02, "d={d}: KS {ks}");
    }
}

#[test]
fn gaussian_mean_and_variance() {
    let n = 50_000;
    let sigma = 2.5;
    let c = draw(SupportFamily::Gaussian, sigma, 6, n, 3);
    let tol = 4.0 * sigma / (n as f64).sqrt();
    for (j, m) in c.mean().iter().enumerate() {
        assert!(m.abs() < tol, "coordinate {j}: mean {m}");
    }
    let var = c.as_slice().iter().map(|v| v * v).sum::<f64>() / (6 * n) as f64;
    assert!((var / (sigma * sigma) - 1.0).abs() < 0.02, "{var}");
}

#[test]
fn sphere_directions_are_isotropic() {
    let c = draw(SupportFamily::SphereSurface, 1.0, 3, 60_000, 4);
    // each coordinate of a uniform point on S^2 is uniform on [-1, 1]
    for j in 0..3 {
        let upper = c.rows().filter(|r| r[j] > 0.5).count() as f64 / 60_000.0;
        assert!((upper - 0.25).abs() < 0.01, "axis {j}: {upper}");
    }
}

#[test]
fn cube_faces_are_balanced() {
    let d = 4;
    let c = draw(SupportFamily::CubeSurface, 1.0, d, 80_000, 5);
    let mut faces = vec![0usize; 2 * d];
    for row in c.rows() {
        let j = row.iter().position(|v| v.abs() == 1.0).unwrap();
        faces[2 * j + usize::from(row[j] < 0.0)] += 1;
    }
    for f in faces {
        assert!((f as f64 / 10_000.0 - 1.0).abs() < 0.06, "{f}");
    }
}

#[test]
fn streams_are_reproducible_and_distinct() {
    let spec = SupportSpec::new(SupportFamily::Gaussian, 1.0, 3).unwrap();
    let a = sample(&spec, 100, RngSpec::new(1, 0)).unwrap();
    assert_eq!(a, sample(&spec, 100, RngSpec::new(1, 0)).unwrap());
    assert_ne!(a, sample(&spec, 100, RngSpec::new(1, 1)).unwrap());
    assert_ne!(a, sample(&spec, 100, RngSpec::new(2, 0)).unwrap());
    let (r1, g1) = scaled_pair(PairFamily::Cube, 5, 1.1, 50, RngSpec::new(3, 0)).unwrap();
    let (r2, g2) = scaled_pair(PairFamily::Cube, 5, 1.1, 50, RngSpec::new(3, 0)).unwrap();
    assert_eq!((r1, g1), (r2, g2));
}

#[test]
fn cube_pair_scales_half_edge() {
    let (real, gen) = scaled_pair(PairFamily::Cube, 10, 1.3, 500, RngSpec::new(4, 0)).unwrap();
    let max_abs = |c: &PointCloud| {
        c.rows()
            .map(|r| r.iter().fold(0.0f64, |m, v| m.max(v.abs())))
            .collect::<Vec<_>>()
    };
    assert!(max_abs(&real).iter().all(|&m| m == 1.0));
    assert!(max_abs(&gen).iter().all(|&m| (m - 1.3).abs() < 1e-15));
}

/// Gamma at a positive integer or half-integer, by the recurrence from 1 or sqrt(pi).
fn gamma_half_int(z: f64) -> f64 {
    let (mut g, mut x) = if z.fract() == 0.0 {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    while x < z {
        g *= x;
        x += 1.0;
    }
    g
}

/// Simpson's rule for the numerator (smooth on [0, x] for a >= 1) over the
/// exact complete beta function.
fn beta_quadrature(x: f64, a: f64, b: f64) -> f64 {
    let f = |t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0);
    let m = 20_000;
    let h = x / m as f64;
    let mut s = f(0.0) + f(x);
    for i in 1..m {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let complete = gamma_half_int(a) * gamma_half_int(b) / gamma_half_int(a + b);
    s * h / 3.0 / complete
}

#[test]
fn incomplete_beta_matches_quadrature() {
    for &(a, b) in &[(1.0, 1.0), (2.0, 3.0), (4.5, 1.5), (7.0, 2.0), (3.5, 9.0)] {
        for x in [0.1, 0.35, 0.6, 0.9] {
            let got = reg_inc_beta(x, a, b).unwrap();
            let want = beta_quadrature(x, a, b);
            assert!(
                (got - want).abs() < 1e-9,
                "I_{x}({a},{b}) = {got}, quadrature {want}"
            );
        }
    }
}

#[test]
fn ln_gamma_recurrence() {
    for x in [0.3, 1.7, 4.2, 25.5, 170.25] {
        let lhs = ln_gamma(x + 1.0);
        let rhs = ln_gamma(x) + f64::ln(x);
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0), "x={x}");
    }
}

#[test]
fn beta_argument_errors_are_numeric() {
    for (x, a, b) in [
        (-0.1, 1.0, 1.0),
        (1.1, 1.0, 1.0),
        (0.5, 0.0, 1.0),
        (0.5, 1.0, -2.0),
    ] {
        assert_eq!(
            reg_inc_beta(x, a, b).unwrap_err().kind(),
            ErrorKind::Numeric
        );
    }
    assert_eq!(
        CapQuery::new(1, 1.0).unwrap_err().kind(),
        ErrorKind::Numeric
    );
    assert_eq!(
        CapQuery::new(3, 2.0).unwrap_err().kind(),
        ErrorKind::Numeric
    );
    let q = CapQuery::new(4, FRAC_PI_2).unwrap();
    assert!(cap_fraction_approx(q, CapKind::Area).is_err());
}

proptest! {
    #[test]
    fn beta_symmetry(x in 0.001f64..0.999, a in 0.5f64..300.0, b in 0.5f64..300.0) {
        let s = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
        prop_assert!((s - 1.0).abs() < 1e-12, "{}", s);
    }

    #[test]
    fn caps_increase_with_phi(d in 2usize..600, p1 in 0.01f64..1.5, gap in 0.01f64..0.07) {
        let lo = CapQuery::new(d, p1).unwrap();
        let hi = CapQuery::new(d, p1 + gap).unwrap();
        let (vl, vh) = (cap_volume_fraction(lo).unwrap(), cap_volume_fraction(hi).unwrap());
        let (al, ah) = (cap_area_fraction(lo).unwrap(), cap_area_fraction(hi).unwrap());
        prop_assert!(vl <= vh && al <= ah);
        if vh > 1e-300 {
            prop_assert!(vl < vh);
        }
        // a volume cap of order d + 1 is thinner than the area cap of order d - 1
        prop_assert!(vl <= al);
    }

    #[test]
    fn caps_shrink_with_dimension(d in 2usize..500, phi in 0.05f64..1.5) {
        let a = cap_volume_fraction(CapQuery::new(d, phi).unwrap()).unwrap();
        let b = cap_volume_fraction(CapQuery::new(d + 1, phi).unwrap()).unwrap();
        prop_assert!(b <= a);
        prop_assert!((0.0..=0.5).contains(&a));
    }
}

#[test]
fn cap_closed_forms() {
    for phi in [0.2, 0.7, 1.1, FRAC_PI_2] {
        let h = phi.cos();
        let q2 = CapQuery::new(2, phi).unwrap();
        // circle segment area over disk area, and arc length over circumference
        let seg = (phi - phi.sin() * h) / PI;
        assert!((cap_volume_fraction(q2).unwrap() - seg).abs() < 1e-12);
        assert!((cap_area_fraction(q2).unwrap() - phi / PI).abs() < 1e-12);
        let q3 = CapQuery::new(3, phi).unwrap();
        let spherical_cap = (1.0 - h) * (1.0 - h) * (2.0 + h) / 4.0;
        assert!((cap_volume_fraction(q3).unwrap() - spherical_cap).abs() < 1e-12);
        assert!((cap_area_fraction(q3).unwrap() - (1.0 - h) / 2.0).abs() < 1e-12);
    }
}

#[test]
fn cap_area_matches_sphere_monte_carlo() {
    let n = 400_000;
    for d in [4usize, 7] {
        let c = draw(SupportFamily::SphereSurface, 1.0, d, n, 20 + d as u64);
        for phi in [0.8f64, 1.3] {
            let mc = c.rows().filter(|r| r[0] >= phi.cos()).count() as f64 / n as f64;
            let exact = cap_area_fraction(CapQuery::new(d, phi).unwrap()).unwrap();
            assert!(
                (mc - exact).abs() < 5e-3,
                "d={d} phi={phi}: {mc} vs {exact}"
            );
        }
    }
}

#[test]
fn approximation_tracks_exact_at_large_d() {
    for d in [256usize, 512, 1024] {
        for phi in [0.6, 1.0] {
            let q = CapQuery::new(d, phi).unwrap();
            for kind in [CapKind::Volume, CapKind::Area] {
                let exact = match kind {
                    CapKind::Volume => cap_volume_fraction(q).unwrap(),
                    CapKind::Area => cap_area_fraction(q).unwrap(),
                };
                let ratio = cap_fraction_approx(q, kind).unwrap() / exact;
                // the neglected factor is cos(phi)
                assert!(
                    (ratio / phi.cos() - 1.0).abs() < 0.05,
                    "d={d} phi={phi}: {ratio}"
                );
            }
        }
    }
}

#[test]
fn nn_fraction_decreases_with_threshold() {
    let rng = RngSpec::new(30, 0);
    let mut prev = 1.0;
    for t in [0.0, 0.8, 1.1, 1.3, 1.5, 2.1] {
        let f = nn_fraction(16, 300, t, 4, rng).unwrap();
        assert!(f <= prev, "t={t}: {f} > {prev}");
        prev = f;
    }
    assert_eq!(nn_fraction(16, 300, 0.0, 4, rng).unwrap(), 1.0);
    assert_eq!(nn_fraction(16, 300, 2.1, 4, rng).unwrap(), 0.0);
}

#[test]
fn nn_fraction_decreases_with_n() {
    let f = |n| nn_fraction(16, n, 0.6, 10, RngSpec::new(31, n as u64)).unwrap();
    let (small, mid, large) = (f(20), f(200), f(2000));
    assert!(small > mid && mid > large, "{small} {mid} {large}");
}

#[test]
fn distance_events_concentrate() {
    let rng = RngSpec::new(32, 0);
    let high = nn_distance_event(512, 200, 1.2, DistanceEvent::MinExceeds, 10, rng).unwrap();
    assert_eq!((high.hits, high.trials), (10, 10));
    let max_ok = nn_distance_event(512, 200, 1.7, DistanceEvent::MaxBelow, 10, rng).unwrap();
    assert_eq!(max_ok.frequency, 1.0);
    let low = nn_distance_event(3, 200, 1.7, DistanceEvent::MaxBelow, 10, rng).unwrap();
    assert_eq!(low.frequency, 0.0);
}
