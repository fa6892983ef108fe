use ddflux_core::diagnostics::{energy, mass};
use ddflux_core::{
    average_k, project_initial, BoundaryCondition, Burgers, CapillarityStepper, CflMode,
    CoefficientK, Cubic, DispersiveStepper, Field, Grid1D, Linear, NumericalFlux, Piecewise,
    SchemeKind, SchemeParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn periodic(n: usize) -> Grid1D {
    Grid1D::new(0.0, 1.0, n, BoundaryCondition::Periodic).unwrap()
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Field {
    Field::new((0..n).map(|_| rng.gen_range(lo..hi)).collect(), 0.0).unwrap()
}

fn random_k(rng: &mut ChaCha8Rng, g: &Grid1D) -> CoefficientK {
    let faces = (0..g.n_interfaces())
        .map(|_| rng.gen_range(0.5..1.5))
        .collect();
    CoefficientK::from_face_values(g, faces).unwrap()
}

// Engquist-Osher for u²/2 written as f⁺(u) + f⁻(v).
fn burgers_eo(u: f64, v: f64) -> f64 {
    0.5 * u.max(0.0).powi(2) + 0.5 * v.min(0.0).powi(2)
}

// Engquist-Osher for u³ - u as f⁺(u) + f⁻(v), f' changing sign at ±1/√3.
fn cubic_eo(u: f64, v: f64) -> f64 {
    let f = |s: f64| s * s * s - s;
    let z = 1.0 / 3f64.sqrt();
    let plus = |s: f64| {
        if s > z {
            f(s) - f(z)
        } else if s < -z {
            f(s) - f(-z)
        } else {
            0.0
        }
    };
    plus(u) + (f(v) - plus(v))
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    let mut x = [0.0; 3];
    for (c, xc) in x.iter_mut().enumerate() {
        let mut m = a;
        for r in 0..3 {
            m[r][c] = b[r];
        }
        *xc = det(m) / d;
    }
    x
}

#[test]
fn capillarity_three_cell_step_by_hand() {
    let g = periodic(3);
    let dx = g.dx();
    let p = SchemeParams::default();
    let dt = 0.01;
    let u = [0.9, -0.3, 0.4];
    let h = |i: usize| burgers_eo(u[(i + 2) % 3], u[i]); // face left of cell i
    let c = p.gamma * p.mu(dx) / (dx * dx);
    let mut a = [[-c; 3]; 3];
    let mut rhs = [0.0; 3];
    for j in 0..3 {
        a[j][j] = 1.0 + 2.0 * c;
        let (um, up) = (u[(j + 2) % 3], u[(j + 1) % 3]);
        rhs[j] =
            dt * (-(h((j + 1) % 3) - h(j)) / dx + p.beta * dx * (up - 2.0 * u[j] + um) / (dx * dx));
    }
    let w = solve3(a, rhs);

    let mut s = CapillarityStepper::with_dt(
        g,
        CoefficientK::uniform(&g, 1.0),
        NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        }),
        p,
        dt,
    )
    .unwrap();
    let next = s.step(&Field::new(u.to_vec(), 0.0).unwrap()).unwrap();
    for j in 0..3 {
        assert!((next.values()[j] - (u[j] + w[j])).abs() < 1e-13, "cell {j}");
    }
    assert_eq!(next.time(), dt);
}

#[test]
fn dispersive_four_cell_step_by_hand() {
    let g = periodic(4);
    let dx = g.dx();
    let p = SchemeParams {
        beta: 5.0,
        gamma: 20.0,
        ..SchemeParams::default()
    };
    let dt = 1e-4;
    let u = [1.2, -0.7, 0.1, 2.0];
    let at = |j: isize| u[j.rem_euclid(4) as usize];
    let mut s = DispersiveStepper::with_dt(
        g,
        CoefficientK::uniform(&g, 1.0),
        NumericalFlux::engquist_osher(Cubic {
            bounds: (-2.0, 4.0),
        }),
        p,
        dt,
    )
    .unwrap();
    let next = s.step(&Field::new(u.to_vec(), 0.0).unwrap()).unwrap();
    let gm = p.gamma * p.mu(dx);
    for j in 0..4isize {
        let h_right = cubic_eo(at(j), at(j + 1));
        let h_left = cubic_eo(at(j - 1), at(j));
        let expected = at(j) - dt * (h_right - h_left) / dx
            + p.beta * dx * dt * (at(j + 1) - 2.0 * at(j) + at(j - 1)) / (dx * dx)
            + gm * dt * (at(j + 1) - 3.0 * at(j) + 3.0 * at(j - 1) - at(j - 2)) / (dx * dx * dx);
        let got = next.values()[j as usize];
        assert!(
            (got - expected).abs() <= 1e-14 * expected.abs().max(1.0),
            "cell {j}: {got} vs {expected}"
        );
    }
}

// Independent conservative update u_j - λ(h_{j+1/2} - h_{j-1/2}) with
// transposed arguments where k < 0.
fn explicit_monotone(u: &[f64], k: &[f64], lambda: f64) -> Vec<f64> {
    let n = u.len();
    let h = |i: usize| {
        let (l, r) = (u[(i + n - 1) % n], u[i]);
        let kf = k[i];
        if kf >= 0.0 {
            kf * burgers_eo(l, r)
        } else {
            kf * burgers_eo(r, l)
        }
    };
    (0..n)
        .map(|j| u[j] - lambda * (h((j + 1) % n) - h(j)))
        .collect()
}

#[test]
fn unregularized_schemes_reduce_to_monotone_update() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let g = periodic(24);
    let faces: Vec<f64> = (0..24).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let k = CoefficientK::from_face_values(&g, faces.clone()).unwrap();
    let p = SchemeParams {
        beta: 0.0,
        gamma: 0.0,
        ..SchemeParams::default()
    };
    let u = random_field(&mut rng, 24, -1.0, 1.0);
    let dt = 0.2 * g.dx() / 1.5;
    let expected = explicit_monotone(u.values(), &faces, dt / g.dx());
    let nf = || {
        NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        })
    };
    let mut cap = CapillarityStepper::with_dt(g, k.clone(), nf(), p, dt).unwrap();
    let mut dd = DispersiveStepper::with_dt(g, k, nf(), p, dt).unwrap();
    for out in [cap.step(&u).unwrap(), dd.step(&u).unwrap()] {
        for (a, b) in out.values().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

#[test]
fn linear_upwind_reduction_and_first_order_rate() {
    let p = SchemeParams {
        beta: 0.0,
        gamma: 0.0,
        cfl_number: 0.5,
        ..SchemeParams::default()
    };
    let profile = |x: f64| (2.0 * std::f64::consts::PI * x).sin();
    let mut errors = Vec::new();
    for n in [100, 200, 400, 800] {
        let g = periodic(n);
        let u0 = project_initial(&Piecewise::function(profile), &g).unwrap();
        let mut s = DispersiveStepper::new(
            g,
            CoefficientK::uniform(&g, 1.0),
            NumericalFlux::local_lax_friedrichs(Linear {
                bounds: (-1.0, 1.0),
            }),
            p,
            CflMode::Practical,
        )
        .unwrap();
        let lambda = s.dt() / g.dx();
        // One step against a hand-coded upwind update.
        let one = s.step(&u0).unwrap();
        let v = u0.values();
        for j in 0..n {
            let upwind = v[j] - lambda * (v[j] - v[(j + n - 1) % n]);
            assert!((one.values()[j] - upwind).abs() < 1e-14);
        }
        let mut u = u0.clone();
        while u.time() < 1.0 {
            let dt = s.dt().min(1.0 - u.time());
            u = s.step_dt(&u, dt).unwrap();
        }
        let err: f64 = u
            .values()
            .iter()
            .zip(u0.values())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * g.dx();
        errors.push(err);
    }
    for w in errors.windows(2) {
        let rate = (w[0] / w[1]).log2();
        assert!(
            (0.8..=1.1).contains(&rate),
            "rate {rate}, errors {errors:?}"
        );
    }
}

#[test]
fn mass_is_conserved_on_periodic_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..4 {
        let g = periodic(40 + trial);
        let k = random_k(&mut rng, &g);
        let u0 = random_field(&mut rng, g.n_cells(), -0.8, 0.8);
        let m0 = mass(&g, u0.values());
        let p = SchemeParams {
            beta: 5.0,
            gamma: 20.0,
            ..SchemeParams::default()
        };
        let nf = || {
            NumericalFlux::engquist_osher(Cubic {
                bounds: (-1.0, 1.0),
            })
        };
        let mut cap = CapillarityStepper::new(g, k.clone(), nf(), p, CflMode::Practical).unwrap();
        let mut dd = DispersiveStepper::new(g, k, nf(), p, CflMode::Practical).unwrap();
        let (mut a, mut b) = (u0.clone(), u0.clone());
        for _ in 0..200 {
            a = cap.step(&a).unwrap();
            b = dd.step(&b).unwrap();
        }
        for u in [&a, &b] {
            let drift = (mass(&g, u.values()) - m0).abs() / m0.abs().max(1e-300);
            assert!(drift <= 1e-10, "drift {drift}");
        }
    }
}

#[test]
fn energy_is_non_increasing_under_strict_cfl() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = periodic(64);
    let k = CoefficientK::uniform(&g, 1.0);
    let u0 = random_field(&mut rng, 64, -0.4, 0.4);
    let model = Burgers {
        bounds: (-0.5, 0.5),
    };
    for kind in [SchemeKind::Capillarity, SchemeKind::Dispersive] {
        let p = SchemeParams::default();
        let mut u = u0.clone();
        let mut e = energy(&g, u.values(), &p, kind);
        let nf = NumericalFlux::engquist_osher(model);
        let mut step: Box<dyn FnMut(&Field) -> Field> = match kind {
            SchemeKind::Capillarity => {
                let mut s = CapillarityStepper::new(g, k.clone(), nf, p, CflMode::Strict).unwrap();
                Box::new(move |u| s.step(u).unwrap())
            }
            SchemeKind::Dispersive => {
                let mut s = DispersiveStepper::new(g, k.clone(), nf, p, CflMode::Strict).unwrap();
                Box::new(move |u| s.step(u).unwrap())
            }
        };
        for n in 0..500 {
            u = step(&u);
            let next = energy(&g, u.values(), &p, kind);
            assert!(next <= e + 1e-12, "{kind:?} step {n}: {next} > {e}");
            e = next;
        }
    }
}

#[test]
fn monotone_scheme_keeps_initial_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let g = Grid1D::new(0.0, 2.0, 80, BoundaryCondition::Outflow).unwrap();
    let k = average_k(&Piecewise::constant(1.3), &g).unwrap();
    let u0 = random_field(&mut rng, 80, 0.1, 0.9);
    let p = SchemeParams {
        beta: 0.0,
        gamma: 0.0,
        ..SchemeParams::default()
    };
    let mut s = CapillarityStepper::new(
        g,
        k,
        NumericalFlux::local_lax_friedrichs(Burgers { bounds: (0.0, 1.0) }),
        p,
        CflMode::Practical,
    )
    .unwrap();
    let mut u = u0.clone();
    for _ in 0..300 {
        u = s.step(&u).unwrap();
        assert!(u.min() >= u0.min() - 1e-14 && u.max() <= u0.max() + 1e-14);
    }
}
