#![allow(clippy::needless_range_loop)]

mod common;

use common::inverse3;
use cvgeom::classv::{builtin_scenario, metrics_at, Family, MetricFrame, Scenario};
use cvgeom::curvature::{
    corollary_suite, deformation_direct, deformation_formula, metric_compatibility, q_orthogonal_vector,
    ricci_and_scalars, riemann, sectional_curvature, theorem18_curvature, theorem1_check, theorem2_chain_scenario,
    theorem2_chain_synthetic, transfer_rhs, BetaReading, ChainLink, Connection, CurvatureError, PointGeometry,
};
use cvgeom::fieldexpr::Point;
use cvgeom::tensor3::{first_bianchi_residual, lower_riemann, rel_defect, symmetry_defects, Mat3, Rank4, SymMat3};
use cvgeom::verify::sample_points;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M3 = [[f64; 3]; 3];
type T3 = [[[f64; 3]; 3]; 3];

#[derive(Clone, Copy)]
enum Which {
    G,
    GBar,
}

/// Metric components from plain field values, without jets.
fn metric_values(s: &Scenario, which: Which, p: &Point) -> M3 {
    let a = s.a.eval(p).unwrap();
    let b = s.b.eval(p).unwrap();
    let (diag, off) = match which {
        Which::G => (a, b),
        Which::GBar => {
            let al = s.alpha.as_ref().map_or(0.0, |f| f.eval(p).unwrap());
            let be = s.beta.as_ref().map_or(0.0, |f| f.eval(p).unwrap());
            (al * a + 2.0 * be * b, be * a + (al + be) * b)
        }
    };
    let mut m = [[off; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = diag;
    }
    m
}

/// Christoffel symbols `[s][k][i]` from central differences of the metric.
fn fd_christoffel(s: &Scenario, which: Which, p: &Point, h: f64) -> T3 {
    let g = metric_values(s, which, p);
    let inv = inverse3(g);
    let dg: [M3; 3] = [0, 1, 2].map(|k| {
        let plus = metric_values(s, which, &p.shifted(k, h));
        let minus = metric_values(s, which, &p.shifted(k, -h));
        let mut d = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                d[i][j] = (plus[i][j] - minus[i][j]) / (2.0 * h);
            }
        }
        d
    });
    let mut out = [[[0.0; 3]; 3]; 3];
    for s_ in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                out[s_][k][i] = (0..3)
                    .map(|a| 0.5 * inv[s_][a] * (dg[k][i][a] + dg[i][k][a] - dg[a][k][i]))
                    .sum();
            }
        }
    }
    out
}

/// Riemann tensor `[h][i][j][k]` from nested central differences.
fn fd_riemann(s: &Scenario, which: Which, p: &Point) -> [[[[f64; 3]; 3]; 3]; 3] {
    let (h_in, h_out) = (1e-4, 1e-3);
    let gm = fd_christoffel(s, which, p, h_in);
    let dgm: [T3; 3] = [0, 1, 2].map(|m| {
        let plus = fd_christoffel(s, which, &p.shifted(m, h_out), h_in);
        let minus = fd_christoffel(s, which, &p.shifted(m, -h_out), h_in);
        let mut d = [[[0.0; 3]; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    d[a][b][c] = (plus[a][b][c] - minus[a][b][c]) / (2.0 * h_out);
                }
            }
        }
        d
    });
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for h in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut v = dgm[j][h][i][k] - dgm[k][h][i][j];
                    for s_ in 0..3 {
                        v += gm[s_][i][k] * gm[h][s_][j] - gm[s_][i][j] * gm[h][s_][k];
                    }
                    r[h][i][j][k] = v;
                }
            }
        }
    }
    r
}

fn max_abs_t3(t: &T3) -> f64 {
    t.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

fn with_beta(mut s: Scenario, beta: &str) -> Scenario {
    s.beta = Some(beta.parse().unwrap());
    s
}

fn cases() -> Vec<(Scenario, Which)> {
    let general = builtin_scenario(&Family::general()).unwrap();
    vec![
        (general.clone(), Which::G),
        (builtin_scenario(&Family::u_family()).unwrap(), Which::G),
        (with_beta(general, "1/(x1+x2+x3+5)^2"), Which::GBar),
        (builtin_scenario(&Family::flat_bar()).unwrap(), Which::GBar),
    ]
}

fn connection(geom: &PointGeometry, which: Which) -> &Connection {
    match which {
        Which::G => &geom.base,
        Which::GBar => geom.deformed.as_ref().unwrap(),
    }
}

#[test]
fn christoffel_matches_finite_difference_oracle() {
    for (s, which) in cases() {
        for p in sample_points(&s, 10, 3).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let c = connection(&geom, which);
            let fd = fd_christoffel(&s, which, &p, 1e-4);
            let diff = (0..27)
                .map(|n| (c.gamma.get(n / 9, n / 3 % 3, n % 3) - fd[n / 9][n / 3 % 3][n % 3]).abs())
                .fold(0.0, f64::max);
            assert!(diff / (1.0 + max_abs_t3(&fd)) < 1e-5, "{} at {p}: {diff:e}", s.name);
        }
    }
}

#[test]
fn christoffel_derivative_matches_differenced_connection() {
    let h = 1e-4;
    for (s, which) in cases() {
        for p in sample_points(&s, 5, 8).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let c = connection(&geom, which);
            for m in 0..3 {
                let plus = PointGeometry::at(&s, &p.shifted(m, h)).unwrap();
                let minus = PointGeometry::at(&s, &p.shifted(m, -h)).unwrap();
                let fd = cvgeom::tensor3::Rank3::from_fn(|a, b, d| {
                    (connection(&plus, which).gamma.get(a, b, d) - connection(&minus, which).gamma.get(a, b, d))
                        / (2.0 * h)
                });
                let gap = c.dgamma[m].max_abs_diff(&fd) / (1.0 + fd.max_abs());
                assert!(gap < 1e-5, "{} at {p}, axis {m}: {gap:e}", s.name);
            }
        }
    }
}

#[test]
fn riemann_matches_nested_difference_oracle() {
    for (s, which) in cases() {
        for p in sample_points(&s, 4, 21).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let c = connection(&geom, which);
            let r = riemann(c);
            let fd = fd_riemann(&s, which, &p);
            let fd = Rank4::from_fn(r.variance, |h, i, j, k| fd[h][i][j][k]);
            let gap = r.max_abs_diff(&fd) / (1.0 + c.curvature_scale());
            assert!(gap < 1e-5, "{} at {p}: {gap:e}", s.name);
        }
    }
}

#[test]
fn constant_metric_has_vanishing_connection() {
    let s = builtin_scenario(&Family::constants()).unwrap();
    let geom = PointGeometry::at(&s, &Point::new(0.1, 0.2, 0.3)).unwrap();
    assert_eq!(geom.base.gamma.max_abs(), 0.0);
    assert!(geom.base.dgamma.iter().all(|d| d.max_abs() == 0.0));
    let r = riemann(&geom.base);
    assert_eq!(r.max_abs(), 0.0);
    let rep = ricci_and_scalars(&r, &geom.frame);
    assert_eq!((rep.tau, rep.tau_star), (0.0, 0.0));
}

#[test]
fn connections_are_metric_and_satisfy_bianchi() {
    let odd = Scenario::from_json(
        r#"{"name":"odd","A":"4 + x1^2 + sin(x2*x3)","B":"1 + 0.2*x2 + 0.1*x1*x3","domain":{"min":[-1,-1,-1],"max":[1,1,1]}}"#,
    )
    .unwrap();
    let mut all = cases();
    all.push((odd, Which::G));
    for (s, which) in all {
        for p in sample_points(&s, 40, 17).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let c = connection(&geom, which);
            let m = match which {
                Which::G => &geom.frame.g,
                Which::GBar => geom.frame.gbar.as_ref().unwrap(),
            };
            assert!(metric_compatibility(c, m) < 1e-11, "{} at {p}", s.name);
            assert!(c.gamma.lower_asymmetry() < 1e-14);
            let r = riemann(c);
            assert!(first_bianchi_residual(&r) / (1.0 + c.curvature_scale()) < 1e-10, "{} at {p}", s.name);
        }
    }
}

#[test]
fn class_v_families_keep_structure_parallel() {
    for s in [
        builtin_scenario(&Family::u_family()).unwrap(),
        builtin_scenario(&Family::general()).unwrap(),
        builtin_scenario(&Family::flat_bar()).unwrap(),
    ] {
        for p in sample_points(&s, 100, 4).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let af = &geom.frame.affinors;
            for m in [af.q, af.q_tilde, af.s, af.phi] {
                assert!(geom.base.covariant_derivative_affinor(&m).max_abs() < 1e-10);
            }
            let f = &geom.frame.f;
            assert!(geom.base.covariant_derivative_form(&f.value, &f.d).max_abs() < 1e-10);
        }
    }
}

#[test]
fn broken_gradient_condition_shows_in_nabla_q() {
    let s = Scenario::from_json(r#"{"name":"broken","A":"x1","B":"1","domain":{"min":[1.5,-1,-1],"max":[3,1,1]}}"#)
        .unwrap();
    for p in sample_points(&s, 20, 2).unwrap() {
        let geom = PointGeometry::at(&s, &p).unwrap();
        assert!(geom.base.covariant_derivative_affinor(&geom.frame.affinors.q).max_abs() > 1e-2);
    }
}

#[test]
fn curvature_values_by_family() {
    let u = builtin_scenario(&Family::u_family()).unwrap();
    for p in sample_points(&u, 100, 9).unwrap() {
        assert!(riemann(&PointGeometry::at(&u, &p).unwrap().base).max_abs() < 1e-9);
    }
    let gen = builtin_scenario(&Family::general()).unwrap();
    let r = riemann(&PointGeometry::at(&gen, &Point::new(0.3, -0.2, 0.5)).unwrap().base);
    assert!(r.max_abs() > 1e-6);
}

#[test]
fn theorem1_biconditional_both_ways() {
    let base = builtin_scenario(&Family::general()).unwrap();
    let mut good = with_beta(base.clone(), "exp(x1+x2+x3)");
    good.alpha = Some("exp(x1+x2+x3) + 1".parse().unwrap());
    for p in sample_points(&good, 20, 6).unwrap() {
        let t = theorem1_check(&PointGeometry::at(&good, &p).unwrap()).unwrap();
        assert!(t.condition_defect < 1e-8 && t.nabla_bar_q_defect < 1e-8, "{t:?}");
        assert!(t.biconditional_holds(1e-8));
    }
    let mut bad = with_beta(base.clone(), "1");
    bad.alpha = Some("x1".parse().unwrap());
    for p in sample_points(&bad, 20, 6).unwrap() {
        let t = theorem1_check(&PointGeometry::at(&bad, &p).unwrap()).unwrap();
        assert!((t.condition_defect - 1.0).abs() < 1e-12);
        assert!(t.nabla_bar_q_defect > 1e-3, "{t:?} at {p}");
        assert!(t.biconditional_holds(1e-8));
    }
    let mut constant = with_beta(base, "2");
    constant.alpha = Some("0.5".parse().unwrap());
    let t = theorem1_check(&PointGeometry::at(&constant, &Point::new(0.1, 0.2, 0.3)).unwrap()).unwrap();
    assert_eq!(t.condition_defect, 0.0);
    assert!(t.nabla_bar_q_defect < 1e-15);
}

#[test]
fn deformation_tensor_oracles() {
    let gen = builtin_scenario(&Family::general()).unwrap();
    let constant = with_beta(gen.clone(), "2.5");
    for p in sample_points(&constant, 10, 1).unwrap() {
        let geom = PointGeometry::at(&constant, &p).unwrap();
        assert!(deformation_direct(&geom).unwrap().max_abs() < 1e-12);
        assert_eq!(deformation_formula(&geom, BetaReading::HalfLog).unwrap().t.max_abs(), 0.0);
    }
    for s in [with_beta(gen, "1/(x1+x2+x3+5)^2"), builtin_scenario(&Family::flat_bar()).unwrap()] {
        let mut raw_worst = 0.0f64;
        for p in sample_points(&s, 50, 12).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let direct = deformation_direct(&geom).unwrap();
            assert!(direct.lower_asymmetry() < 1e-12);
            let half = deformation_formula(&geom, BetaReading::HalfLog).unwrap();
            let d = rel_defect(direct.max_abs_diff(&half.t), direct.max_abs(), half.t.max_abs());
            assert!(d < 1e-8, "{} at {p}: {d:e}", s.name);
            let raw = deformation_formula(&geom, BetaReading::Raw).unwrap();
            raw_worst = raw_worst.max(rel_defect(direct.max_abs_diff(&raw.t), direct.max_abs(), raw.t.max_abs()));
        }
        assert!(raw_worst > 1e-3, "{}: unnormalized reading should not match ({raw_worst:e})", s.name);
    }
}

#[test]
fn deformation_needs_beta_only_metric() {
    let gen = builtin_scenario(&Family::general()).unwrap();
    let geom = PointGeometry::at(&gen, &Point::new(0.0, 0.0, 0.0)).unwrap();
    assert!(matches!(deformation_direct(&geom), Err(CurvatureError::NotBetaDeformation)));
}

#[test]
fn transfer_law_triple_agreement_on_three_beta_fields() {
    let gen = builtin_scenario(&Family::general()).unwrap();
    for beta in ["1/(x1+x2+x3+5)^2", "exp(0.3*x1 - 0.2*x3)", "2 + sin(x1*x2)"] {
        let s = with_beta(gen.clone(), beta);
        for p in sample_points(&s, 100, 77).unwrap() {
            let geom = PointGeometry::at(&s, &p).unwrap();
            let pred = transfer_rhs(&geom).unwrap();
            let direct = riemann(geom.deformed.as_ref().unwrap());
            let rel = |a: &Rank4, b: &Rank4| rel_defect(a.max_abs_diff(b), a.max_abs(), b.max_abs());
            assert!(rel(&direct, &pred.via_beta) < 1e-6, "{beta} at {p}");
            assert!(rel(&direct, &pred.via_deformation) < 1e-6, "{beta} at {p}");
            assert!(pred.mutual_defect < 1e-6);
        }
    }
    let s = with_beta(gen, "3");
    let geom = PointGeometry::at(&s, &Point::new(0.2, 0.1, -0.4)).unwrap();
    let pred = transfer_rhs(&geom).unwrap();
    let r = riemann(&geom.base);
    assert!(pred.via_beta.max_abs_diff(&r) < 1e-15);
    assert!(pred.via_deformation.max_abs_diff(&r) < 1e-15);
}

#[test]
fn flat_bar_is_flat_and_premise_gates_scenario_chain() {
    let s = builtin_scenario(&Family::flat_bar()).unwrap();
    for p in sample_points(&s, 100, 42).unwrap() {
        let geom = PointGeometry::at(&s, &p).unwrap();
        let report = theorem2_chain_scenario(&geom, 1e-6).unwrap();
        assert!(report.premise_flatness.unwrap() < 1e-6);
        assert!(report.max_defect() < 1e-6, "{report:?}");
        let split = report.get(ChainLink::TauStarSplit).unwrap();
        assert!(split < 1e-6);
    }
    let curved = with_beta(builtin_scenario(&Family::general()).unwrap(), "1/(x1+x2+x3+5)^2");
    let geom = PointGeometry::at(&curved, &Point::new(0.3, -0.2, 0.5)).unwrap();
    assert!(matches!(
        theorem2_chain_scenario(&geom, 1e-6),
        Err(CurvatureError::PremiseNotSatisfied { .. })
    ));
}

#[test]
fn closed_form_curvature_properties() {
    for (a, b) in [(3.0, 1.0), (2.5, 0.5), (7.0, 0.3)] {
        let frame = MetricFrame::constant(a, b).unwrap();
        assert_eq!(theorem18_curvature(0.0, &frame).max_abs(), 0.0);
        for tau in [-3.0, 1.0, 6.0] {
            let r = theorem18_curvature(tau, &frame);
            assert!(symmetry_defects(&r).unwrap().max() < 1e-13);
            let g_inv = frame.g.inverse;
            let ricci = SymMat3::from_fn(|i, j| {
                (0..3)
                    .flat_map(|h| (0..3).map(move |k| (h, k)))
                    .map(|(h, k)| g_inv.get(k, h) * r.get(h, i, j, k))
                    .sum()
            });
            assert!((ricci.contract(&g_inv) - tau).abs() < 1e-12 * (1.0 + tau.abs()));
            assert!((ricci.contract(&frame.f.inverse) + tau).abs() < 1e-12 * (1.0 + tau.abs()));
        }
    }
}

#[test]
fn closed_form_curvature_recomputes_its_scalar_through_mixed_form() {
    let frame = MetricFrame::constant(3.0, 1.0).unwrap();
    let lower = theorem18_curvature(6.0, &frame);
    let mixed = cvgeom::tensor3::raise_riemann(&lower, &frame.g.inverse).unwrap();
    let rep = ricci_and_scalars(&mixed, &frame);
    assert!((rep.tau - 6.0).abs() < 1e-9);
    assert!(lower_riemann(&mixed, &frame.g.value).unwrap().max_abs_diff(&lower) < 1e-13);
}

/// The f-raised form of `Φ_k^a R_ia`: contracting with `f^ij` turns `g_ki`
/// into `½ S_k^j`, so the `τ*` term carries a factor `½`.
#[test]
fn f_raised_identity_needs_half_tau_star() {
    for (a, b) in [(3.0, 1.0), (2.5, 0.5)] {
        let frame = MetricFrame::constant(a, b).unwrap();
        let tau = 6.0;
        let tau_star = -tau;
        let g = frame.g.value.to_mat3();
        let f = frame.f.value.to_mat3();
        let f_inv = frame.f.inverse.to_mat3();
        let phi = frame.affinors.phi;
        let s = frame.affinors.s;
        let ricci = (g.scale(2.0) - f).scale(tau / 6.0);
        let phi_r = Mat3::from_fn(|k, i| (0..3).map(|a| phi.get(k, a) * ricci.get(i, a)).sum());
        let lhs = Mat3::from_fn(|k, j| (0..3).map(|i| phi_r.get(k, i) * f_inv.get(i, j)).sum());
        let id = Mat3::identity();
        let derived = (id.scale(tau_star / 2.0 + tau) + s.scale(tau_star / 2.0)).scale(1.0 / 3.0);
        let printed = (id.scale(tau_star / 2.0 + tau) + s.scale(tau_star)).scale(1.0 / 3.0);
        assert!(lhs.max_abs_diff(&derived) < 1e-12);
        assert!(lhs.max_abs_diff(&printed) > 0.1);
    }
}

#[test]
fn synthetic_chain_closes_for_all_scalars() {
    for (a, b) in [(3.0, 1.0), (2.5, 0.5)] {
        let frame = MetricFrame::constant(a, b).unwrap();
        for tau in [-3.0, 1.0, 6.0] {
            let rep = theorem2_chain_synthetic(tau, &frame).unwrap();
            assert!(rep.max_defect() < 1e-9, "{rep:?}");
            assert!((rep.tau_star + tau).abs() < 1e-12);
            assert!(rep.get(ChainLink::PhiRicci).unwrap() < 1e-12);
        }
    }
}

#[test]
fn sectional_curvature_examples() {
    let frame = MetricFrame::constant(3.0, 1.0).unwrap();
    let g = frame.g.value;
    let zero = Rank4::zero(cvgeom::tensor3::Variance::Lower);
    assert_eq!(sectional_curvature(&zero, &g, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap(), 0.0);
    assert!(matches!(
        sectional_curvature(&zero, &g, &[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]),
        Err(CurvatureError::DegeneratePlane { .. })
    ));
    let r = theorem18_curvature(6.0, &frame);
    let e1 = [1.0, 0.0, 0.0];
    let qe1 = frame.affinors.q.act(&e1);
    assert!((sectional_curvature(&r, &g, &e1, &qe1).unwrap() + 0.5).abs() < 1e-12);

    let c = corollary_suite(&frame, 6.0, &e1).unwrap();
    assert!((c.cos_angle - 1.0 / 3.0).abs() < 1e-15);
    assert!((c.mu_formula + 0.5).abs() < 1e-12 && (c.mu_direct + 0.5).abs() < 1e-12);

    let x = q_orthogonal_vector(&frame);
    assert!((x[2] - (-4.0 + 10f64.sqrt())).abs() < 1e-14);
    assert!(g.form(&x, &frame.affinors.q.act(&x)).abs() < 1e-12);
    for tau in [-3.0, 1.0, 6.0] {
        let c = corollary_suite(&frame, tau, &x).unwrap();
        assert!((c.mu_direct + tau / 6.0).abs() < 1e-12);
    }
    assert!(matches!(
        corollary_suite(&frame, 6.0, &[2.0, 2.0, 2.0]),
        Err(CurvatureError::ParallelToDiagonal(_))
    ));
    assert!(corollary_suite(&frame, 6.0, &[0.0; 3]).is_err());
}

#[test]
fn angle_range_and_scale_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hits_boundary = 0;
    for n in 0..10_000 {
        let b = rng.gen_range(0.05..3.0);
        let a = b + rng.gen_range(0.05..5.0);
        let frame = MetricFrame::constant(a, b).unwrap();
        let mut x = [0, 1, 2].map(|_| rng.gen_range(-1.0..1.0));
        if n % 10 == 0 {
            // project onto x1 + x2 + x3 = 0
            let m = (x[0] + x[1] + x[2]) / 3.0;
            x = x.map(|c| c - m);
            x[2] = -(x[0] + x[1]);
        }
        let tau = rng.gen_range(-6.0..6.0);
        let Ok(c) = corollary_suite(&frame, tau, &x) else {
            continue;
        };
        // g(x, qx) / g(x, x) loses about A / (A - B) ulps to cancellation
        let slack = 4.0 * f64::EPSILON * a / (a - b);
        assert!(c.cos_angle >= -0.5 - slack && c.cos_angle < 1.0, "cos = {} for {x:?}", c.cos_angle);
        let sum = x[0] + x[1] + x[2];
        if sum == 0.0 {
            assert!((c.cos_angle + 0.5).abs() <= slack);
            hits_boundary += 1;
        } else if sum.abs() > 1e-3 {
            assert!(c.cos_angle > -0.5);
        }
        assert!((c.mu_direct - c.mu_formula).abs() <= 1e-9 * (1.0 + c.mu_formula.abs()));
        assert!(c.ricci_det_normalized < 1e-12);
        let lambda = rng.gen_range(0.1..10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let scaled = corollary_suite(&frame, tau, &x.map(|v| v * lambda)).unwrap();
        assert!((scaled.mu_direct - c.mu_direct).abs() <= 1e-12 * (1.0 + c.mu_direct.abs()));
    }
    assert!(hits_boundary > 0);
}

#[test]
fn corollary_two_row_sums_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let b = rng.gen_range(0.05..3.0);
        let a = b + rng.gen_range(0.05..5.0);
        let tau = rng.gen_range(-10.0..10.0);
        let frame = metrics_at(
            &Scenario::from_json(&format!(
                r#"{{"name":"c","A":"{a}","B":"{b}","domain":{{"min":[-1,-1,-1],"max":[1,1,1]}}}}"#
            ))
            .unwrap(),
            &Point::new(0.0, 0.0, 0.0),
        )
        .unwrap();
        let ricci = (frame.g.value.scale(2.0) - frame.f.value).scale(tau / 6.0);
        for i in 0..3 {
            let row: f64 = (0..3).map(|j| ricci.get(i, j)).sum();
            assert!(row.abs() < 1e-12 * (1.0 + ricci.max_abs()));
        }
        let c = corollary_suite(&frame, tau, &[1.0, 0.0, 0.0]).unwrap();
        assert!(c.ricci_det_normalized < 1e-12);
    }
}
