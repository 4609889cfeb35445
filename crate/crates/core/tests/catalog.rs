use fracdyn::systems::{
    default_guesses, find_equilibria, jacobian_eigenvalues, make_system, BenchmarkId, BenchmarkName, EQUILIBRIUM_TOL,
};
use num_complex::Complex;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn analytic_jacobians_match_central_differences() {
    let mut rng = StdRng::seed_from_u64(7);
    for name in BenchmarkName::ALL {
        let sys = make_system::<f64>(&BenchmarkId::new(name)).unwrap();
        let n = sys.dim();
        let mut tested = 0;
        while tested < 100 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-20.0..20.0)).collect();
            if name == BenchmarkName::Chua && ((x[0].abs() - 1.0).abs() < 1e-3) {
                continue;
            }
            let t = rng.gen_range(0.0..10.0);
            let jac = sys.jacobian_at(t, &x).unwrap();
            for j in 0..n {
                let step = 1e-6 * x[j].abs().max(1.0);
                let (mut xp, mut xm) = (x.clone(), x.clone());
                xp[j] += step;
                xm[j] -= step;
                let (fp, fm) = (sys.field_at(t, &xp), sys.field_at(t, &xm));
                for i in 0..n {
                    let fd = (fp[i] - fm[i]) / (2.0 * step);
                    let an = jac[i * n + j];
                    assert!((fd - an).abs() <= 1e-6 * an.abs().max(1.0), "{name} J[{i}][{j}]: {an} vs {fd}");
                }
            }
            tested += 1;
        }
    }
}

#[test]
fn lorenz_eigenvalues_sum_to_the_trace() {
    let sys = make_system::<f64>(&BenchmarkId::new(BenchmarkName::Lorenz)).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-30.0..30.0)).collect();
        let sum: Complex<f64> = jacobian_eigenvalues(&sys, &x).unwrap().iter().sum();
        assert!((sum.re + 41.0 / 3.0).abs() < 1e-9, "{sum}");
        assert!(sum.im.abs() < 1e-9);
    }
}

/// Real root of a monic cubic by bisection, then the deflated quadratic.
fn cubic_roots(b: f64, c: f64, d: f64) -> [Complex<f64>; 3] {
    let p = |x: f64| ((x + b) * x + c) * x + d;
    let (mut lo, mut hi) = (-1e3, 1e3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(lo) * p(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    // x³ + bx² + cx + d = (x - r)(x² + (b + r)x + (c + r(b + r)))
    let (qb, qc) = (b + r, c + r * (b + r));
    let disc = Complex::new(qb * qb - 4.0 * qc, 0.0).sqrt();
    [Complex::new(r, 0.0), (-qb + disc) / 2.0, (-qb - disc) / 2.0]
}

fn assert_same_spectrum(got: &[Complex<f64>], want: &[Complex<f64>]) {
    for w in want {
        assert!(got.iter().any(|g| (g - w).norm() < 1e-8), "missing {w} in {got:?}");
    }
}

#[test]
fn lorenz_spectra_match_characteristic_polynomials() {
    let (s, r, b): (f64, f64, f64) = (10.0, 28.0, 8.0 / 3.0);
    let sys = make_system::<f64>(&BenchmarkId::new(BenchmarkName::Lorenz)).unwrap();

    // origin: (λ + β)(λ² + (σ + 1)λ - σ(ρ - 1))
    let disc = ((s + 1.0) * (s + 1.0) + 4.0 * s * (r - 1.0)).sqrt();
    let origin = [(-(s + 1.0) + disc) / 2.0, -b, (-(s + 1.0) - disc) / 2.0].map(|v| Complex::new(v, 0.0));
    let got = jacobian_eigenvalues(&sys, &[0.0, 0.0, 0.0]).unwrap();
    assert_same_spectrum(&got, &origin);
    assert!((got[0].re - 11.8277).abs() < 1e-4 && (got[2].re + 22.8277).abs() < 1e-4);

    // C±: λ³ + (σ + β + 1)λ² + β(σ + ρ)λ + 2σβ(ρ - 1)
    let want = cubic_roots(s + b + 1.0, b * (s + r), 2.0 * s * b * (r - 1.0));
    let q = (b * (r - 1.0)).sqrt();
    for sign in [1.0, -1.0] {
        let got = jacobian_eigenvalues(&sys, &[sign * q, sign * q, r - 1.0]).unwrap();
        assert_same_spectrum(&got, &want);
        assert!((got[0].re - 0.0940).abs() < 1e-4 && (got[0].im.abs() - 10.1945).abs() < 1e-4);
        assert!((got[2].re + 13.8546).abs() < 1e-4);
    }
}

#[test]
fn equilibria_of_every_system_are_zeros_of_the_field() {
    for name in BenchmarkName::ALL {
        let sys = make_system::<f64>(&BenchmarkId::new(name)).unwrap();
        let found = find_equilibria(&sys, &default_guesses(sys.dim())).unwrap();
        for e in &found.equilibria {
            let f = sys.field_at(0.0, &e.point);
            let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(norm < EQUILIBRIUM_TOL, "{name}: {norm}");
            assert_eq!(e.eigenvalues.len(), sys.dim());
        }
    }
}

#[test]
fn newton_recovers_closed_form_equilibria() {
    for name in [BenchmarkName::Lorenz, BenchmarkName::Chen, BenchmarkName::Rossler, BenchmarkName::Chua] {
        let id = BenchmarkId::new(name);
        let sys = make_system::<f64>(&id).unwrap();
        let closed = id.closed_form_equilibria().unwrap();
        let found = find_equilibria(&sys, &closed).unwrap();
        assert_eq!(found.equilibria.len(), closed.len(), "{name}");
        assert_eq!(found.dropped, 0);
    }
    // Rössler from the default lattice finds both roots of a z² - c z + b.
    let sys = make_system::<f64>(&BenchmarkId::new(BenchmarkName::Rossler)).unwrap();
    let found = find_equilibria(&sys, &default_guesses(3)).unwrap();
    assert_eq!(found.equilibria.len(), 2);
}

#[test]
fn catalog_lines() {
    let line = BenchmarkId::new(BenchmarkName::Lorenz).describe();
    assert!(line.starts_with("lorenz  3  0.995  sigma=10 rho=28 beta=2.6666666666666665"), "{line}");
    let line = BenchmarkId::new(BenchmarkName::Duffing).describe();
    assert!(line.starts_with("duffing  9  0.9  delta=0.2"), "{line}");
}
