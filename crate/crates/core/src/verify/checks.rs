//! Per-point measurements for each suite.

use rand::Rng;

use crate::classv::{gradient_condition_defect, structure_identities, MetricFrame, Scenario};
use crate::curvature::{
    corollary_suite, deformation_direct, deformation_formula, metric_compatibility, normalized_curvature,
    q_orthogonal_vector, riemann, theorem18_curvature, theorem1_check, theorem2_chain_scenario,
    theorem2_chain_synthetic, transfer_rhs, BetaReading, ChainReport, CurvatureError, PointGeometry,
};
use crate::fieldexpr::{fd_jet2_oracle, Point};
use crate::tensor3::{first_bianchi_residual, rel_defect};
use crate::tolerance::{TolClass, Tolerances};

use super::sampling::point_rng;
use super::Suite;

/// One defect value at one point.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Measurement {
    pub id: String,
    pub anchor: &'static str,
    pub class: TolClass,
    pub defect: f64,
}

pub(crate) struct PointContext<'a> {
    pub scenario: &'a Scenario,
    pub tolerances: &'a Tolerances,
    pub taus: &'a [f64],
    pub seed: u64,
    pub index: usize,
    pub scenario_chain: bool,
}

struct Sink(Vec<Measurement>);

impl Sink {
    fn push(&mut self, id: impl Into<String>, anchor: &'static str, class: TolClass, defect: f64) {
        self.0.push(Measurement {
            id: id.into(),
            anchor,
            class,
            defect,
        });
    }
}

const FD_STEP: f64 = 1e-4;

pub(crate) fn measure(ctx: &PointContext<'_>, suites: &[Suite], p: &Point) -> Result<Vec<Measurement>, CurvatureError> {
    let geom = PointGeometry::at(ctx.scenario, p)?;
    let mut sink = Sink(Vec::new());
    for suite in suites {
        match suite {
            Suite::Structure => structure(ctx, &geom, &mut sink),
            Suite::Connection => connection(ctx, &geom, &mut sink)?,
            Suite::Deformation => deformation(&geom, &mut sink)?,
            Suite::Transfer => transfer(&geom, &mut sink)?,
            Suite::Theorem2 => theorem2(ctx, &geom, &mut sink)?,
            Suite::Corollaries => corollaries(ctx, &geom.frame, &mut sink)?,
            Suite::All => unreachable!("expanded by the runner"),
        }
    }
    Ok(sink.0)
}

fn structure(ctx: &PointContext<'_>, geom: &PointGeometry, sink: &mut Sink) {
    let frame = &geom.frame;
    let d = structure_identities(frame);
    let anchors: [&'static str; 9] = [
        "q^3 = E",
        "g(qu, qv) = g(u, v)",
        "Phi_j^s g_is = f_ji",
        "Phi_j^s f_is = 2 g_ji + f_ji",
        "f_ji g^is = Phi_j^s",
        "g_ji f^is = S_j^s / 2",
        "S = Phi - E",
        "f_ij = g_ik q_j^k + g_jk q_i^k = circulant(2B, A + B)",
        "det f = 2 (A - B)^2 (A + 2B)",
    ];
    for ((name, value), anchor) in d.entries().into_iter().zip(anchors) {
        sink.push(format!("structure.{name}"), anchor, TolClass::Identity, value);
    }
    let (a, b) = (frame.a.value, frame.b.value);
    let min_eig = (a + 2.0 * b).min(a - b);
    let positivity = if min_eig > 0.0 { 0.0 } else { 1.0 + min_eig.abs() };
    sink.push(
        "structure.positivity",
        "0 < B < A => g positive definite (eigenvalues A + 2B, A - B)",
        TolClass::Identity,
        positivity,
    );

    let s = ctx.scenario;
    let fields = [Some(&s.a), Some(&s.b), s.alpha.as_ref(), s.beta.as_ref()];
    let mut worst: Option<f64> = None;
    for field in fields.into_iter().flatten() {
        let (Ok(ad), Ok(fd)) = (field.eval_jet2(&frame.point), fd_jet2_oracle(field, &frame.point, FD_STEP)) else {
            continue;
        };
        let scale = 1.0 + ad.value.abs();
        let grad = (0..3).map(|i| (ad.grad[i] - fd.grad[i]).abs()).fold(0.0, f64::max);
        // Hessian stencils carry O(eps/h^2) rounding; compared at 100x the gradient tolerance.
        let hess = ad.hess.max_abs_diff(&fd.hess) * 1e-2;
        let d = grad.max(hess) / scale;
        worst = Some(worst.map_or(d, |w: f64| w.max(d)));
    }
    if let Some(d) = worst {
        sink.push(
            "structure.jets_ad_vs_fd",
            "forward-mode jets agree with central differences",
            TolClass::AdFd,
            d,
        );
    }
}

fn connection(ctx: &PointContext<'_>, geom: &PointGeometry, sink: &mut Sink) -> Result<(), CurvatureError> {
    let frame = &geom.frame;
    let af = &frame.affinors;
    let base = &geom.base;
    sink.push(
        "connection.class_v",
        "grad A = grad B . S",
        TolClass::Identity,
        gradient_condition_defect(&frame.a, &frame.b, &af.s),
    );
    sink.push(
        "connection.nabla_g",
        "nabla g = 0",
        TolClass::Identity,
        metric_compatibility(base, &frame.g),
    );
    for (name, anchor, m) in [
        ("nabla_q", "nabla q = 0", &af.q),
        ("nabla_q_tilde", "nabla q~ = 0", &af.q_tilde),
        ("nabla_s", "nabla S = 0", &af.s),
        ("nabla_phi", "nabla Phi = 0", &af.phi),
    ] {
        sink.push(
            format!("connection.{name}"),
            anchor,
            TolClass::Identity,
            base.covariant_derivative_affinor(m).max_abs(),
        );
    }
    sink.push(
        "connection.nabla_f",
        "nabla f = 0",
        TolClass::Identity,
        base.covariant_derivative_form(&frame.f.value, &frame.f.d).max_abs(),
    );
    if let (Some(bar), Some(gbar)) = (&geom.deformed, &frame.gbar) {
        sink.push(
            "connection.nabla_bar_gbar",
            "nabla-bar gbar = 0",
            TolClass::Identity,
            metric_compatibility(bar, gbar),
        );
        let tol = ctx.tolerances.get(TolClass::Identity);
        let t1 = theorem1_check(geom)?;
        sink.push(
            "connection.theorem1",
            "nabla-bar q = 0 <=> grad alpha = grad beta . S",
            TolClass::Identity,
            t1.biconditional_defect(tol),
        );
    }
    Ok(())
}

fn deformation(geom: &PointGeometry, sink: &mut Sink) -> Result<(), CurvatureError> {
    let direct = deformation_direct(geom)?;
    let formula = deformation_formula(geom, BetaReading::HalfLog)?;
    sink.push(
        "deformation.formula_vs_direct",
        "T^s_ik = b_k d^s_i + b_i d^s_k - (1/2) b^a S_a^s f_ik, b_k = d_k beta / (2 beta)",
        TolClass::Deformation,
        rel_defect(direct.max_abs_diff(&formula.t), direct.max_abs(), formula.t.max_abs()),
    );
    sink.push(
        "deformation.lower_symmetry",
        "T^s_ik = T^s_ki",
        TolClass::Identity,
        direct.lower_asymmetry() / (1.0 + direct.max_abs()),
    );
    Ok(())
}

fn transfer(geom: &PointGeometry, sink: &mut Sink) -> Result<(), CurvatureError> {
    let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
    let pred = transfer_rhs(geom)?;
    let r_bar = riemann(bar);
    let r = riemann(&geom.base);
    let rel = |a: &crate::tensor3::Rank4, b: &crate::tensor3::Rank4| rel_defect(a.max_abs_diff(b), a.max_abs(), b.max_abs());
    sink.push(
        "transfer.direct_vs_deformation",
        "Rbar = R + nabla_j T^h_ik - nabla_k T^h_ij + T^s_ik T^h_sj - T^s_ij T^h_sk",
        TolClass::Transfer,
        rel(&r_bar, &pred.via_deformation),
    );
    sink.push(
        "transfer.direct_vs_beta",
        "Rbar = R + d^h_k(nabla_j b_i - b_i b_j + phi f_ij) - d^h_j(...) + (1/2) f_ij S_t^h(nabla_k b^t - b_k b^t) - (...)",
        TolClass::Transfer,
        rel(&r_bar, &pred.via_beta),
    );
    sink.push(
        "transfer.deformation_vs_beta",
        "both transfer predictions agree",
        TolClass::Transfer,
        rel(&pred.via_deformation, &pred.via_beta),
    );
    sink.push(
        "transfer.first_bianchi",
        "R^h_ijk + R^h_jki + R^h_kij = 0 (for R and Rbar)",
        TolClass::Identity,
        (first_bianchi_residual(&r) / (1.0 + geom.base.curvature_scale()))
            .max(first_bianchi_residual(&r_bar) / (1.0 + bar.curvature_scale())),
    );
    Ok(())
}

fn push_chain(sink: &mut Sink, prefix: &str, report: &ChainReport) {
    for (link, defect) in &report.defects {
        sink.push(format!("{prefix}.{}", link.id()), link.formula(), TolClass::Theorem, *defect);
    }
}

fn theorem2(ctx: &PointContext<'_>, geom: &PointGeometry, sink: &mut Sink) -> Result<(), CurvatureError> {
    for &tau in ctx.taus {
        let report = theorem2_chain_synthetic(tau, &geom.frame)?;
        push_chain(sink, "theorem2.synthetic", &report);
    }
    if ctx.scenario_chain {
        let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
        let tol = ctx.tolerances.get(TolClass::Flatness);
        let flatness = normalized_curvature(&riemann(bar), bar);
        sink.push(
            "theorem2.scenario.premise_flat",
            "Rbar = 0 (beta f locally flat)",
            TolClass::Flatness,
            flatness,
        );
        match theorem2_chain_scenario(geom, tol) {
            Ok(report) => push_chain(sink, "theorem2.scenario", &report),
            Err(CurvatureError::PremiseNotSatisfied { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn corollaries(ctx: &PointContext<'_>, frame: &MetricFrame, sink: &mut Sink) -> Result<(), CurvatureError> {
    let mut rng = point_rng(ctx.seed, ctx.index);
    let g = &frame.g.value;
    let q = &frame.affinors.q;
    let scalar = |a: f64, b: f64| rel_defect((a - b).abs(), a.abs(), b.abs());
    let random_x = loop {
        let x = [0, 1, 2].map(|_| rng.gen_range(-1.0..=1.0));
        if corollary_suite(frame, 1.0, &x).is_ok() {
            break x;
        }
    };
    let lambda: f64 = rng.gen_range(0.5..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    for &tau in ctx.taus {
        let e1 = corollary_suite(frame, tau, &[1.0, 0.0, 0.0])?;
        sink.push(
            "corollaries.sectional_e1",
            "mu(x, qx) = -(tau/6) tan^2(phi/2), x = e1",
            TolClass::Identity,
            scalar(e1.mu_direct, e1.mu_formula),
        );
        let rand = corollary_suite(frame, tau, &random_x)?;
        sink.push(
            "corollaries.sectional_random",
            "mu(x, qx) = -(tau/6) tan^2(phi/2)",
            TolClass::Identity,
            scalar(rand.mu_direct, rand.mu_formula),
        );
        let scaled_x = random_x.map(|c| c * lambda);
        let scaled = corollary_suite(frame, tau, &scaled_x)?;
        sink.push(
            "corollaries.scale_invariance",
            "mu(lambda x, q lambda x) = mu(x, qx)",
            TolClass::Identity,
            scalar(scaled.mu_direct, rand.mu_direct),
        );
        let (a, b) = (frame.a.value, frame.b.value);
        let slack = 4.0 * f64::EPSILON * a / (a - b);
        let cos = rand.cos_angle.min(e1.cos_angle);
        let in_range = |c: f64| c >= -0.5 - slack && c < 1.0;
        let out_of_range = if in_range(rand.cos_angle) && in_range(e1.cos_angle) {
            0.0
        } else {
            1.0 + cos.abs()
        };
        sink.push(
            "corollaries.angle_range",
            "cos phi in [-1/2, 1)",
            TolClass::Identity,
            out_of_range,
        );
        let x = q_orthogonal_vector(frame);
        let qx = q.act(&x);
        let orth = g.form(&x, &qx).abs() / g.form(&x, &x);
        let note = corollary_suite(frame, tau, &x)?;
        sink.push(
            "corollaries.q_orthogonal",
            "g(x, qx) = 0 => mu(x, qx) = -tau/6",
            TolClass::Identity,
            orth.max(scalar(note.mu_direct, -tau / 6.0)),
        );
        sink.push(
            "corollaries.ricci_degenerate",
            "det Ric = 0 for Ric = (tau/6)(2g - f)",
            TolClass::Identity,
            e1.ricci_det_normalized,
        );
        let closed = theorem18_curvature(tau, frame);
        let sym = crate::tensor3::symmetry_defects(&closed)?;
        sink.push(
            "corollaries.curvature_symmetries",
            "closed-form R has the symmetries of a curvature tensor",
            TolClass::Identity,
            sym.max(),
        );
    }
    Ok(())
}
