//! The `∇̄q` criterion for `ḡ = α g + β f`, and the identity chain that
//! forces the shape of the curvature of `g` when `β f` is locally flat.

use std::fmt;

use crate::classv::{gradient_condition_defect, MetricFrame};
use crate::fieldexpr::Jet2;
use crate::tensor3::{raise_riemann, rel_defect, symmetry_defects, Mat3, Rank4, SymMat3, Variance};

use super::deformation::{deformation_formula, BetaReading};
use super::riemann::{normalized_curvature, ricci_mat};
use super::{riemann, CurvatureError, PointGeometry};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theorem1Report {
    /// `max_i |∂_i α − S_i^j ∂_j β|`
    pub condition_defect: f64,
    /// `max|∇̄ q|` from the connection of `ḡ`.
    pub nabla_bar_q_defect: f64,
}

impl Theorem1Report {
    /// The biconditional holds when both sides are small or both are large.
    pub fn biconditional_holds(&self, tol: f64) -> bool {
        (self.condition_defect < tol) == (self.nabla_bar_q_defect < tol)
    }

    /// Single number for reporting: below `tol` exactly when the
    /// biconditional holds.
    pub fn biconditional_defect(&self, tol: f64) -> f64 {
        let (c, n) = (self.condition_defect, self.nabla_bar_q_defect);
        match (c < tol, n < tol) {
            (true, true) => c.max(n),
            (false, false) => 0.0,
            _ => c.max(n),
        }
    }
}

pub fn theorem1_check(geom: &PointGeometry) -> Result<Theorem1Report, CurvatureError> {
    let frame = &geom.frame;
    if frame.alpha.is_none() && frame.beta.is_none() {
        return Err(CurvatureError::NoDeformedMetric);
    }
    let zero = Jet2::constant(0.0);
    let alpha = frame.alpha.unwrap_or(zero);
    let beta = frame.beta.unwrap_or(zero);
    let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
    Ok(Theorem1Report {
        condition_defect: gradient_condition_defect(&alpha, &beta, &frame.affinors.s),
        nabla_bar_q_defect: bar.covariant_derivative_affinor(&frame.affinors.q).max_abs(),
    })
}

/// `R_{hijk} = τ/6 (2 g_kh g_ij − 2 g_hj g_ki + f_kh f_ij − f_hj f_ki)`.
pub fn theorem18_curvature(tau0: f64, frame: &MetricFrame) -> Rank4 {
    let g = &frame.g.value;
    let f = &frame.f.value;
    let c = tau0 / 6.0;
    Rank4::from_fn(Variance::Lower, |h, i, j, k| {
        c * (2.0 * g.get(k, h) * g.get(i, j) - 2.0 * g.get(h, j) * g.get(k, i) + f.get(k, h) * f.get(i, j)
            - f.get(h, j) * f.get(k, i))
    })
}

/// The links of the identity chain, in derivation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainLink {
    /// `R^h_{ijk} = δ^h_j P_ki − δ^h_k P_ij − f_ij Q_k^h + f_ik Q_j^h`
    PqAssembly,
    /// `R_ij = −P_ij − ψ f_ij`
    RicciFromP,
    /// `τ* = −2φ − 4ψ`
    TauStarSplit,
    /// `Q_k^h = −R_ka f^{ah} − (ψ + φ) δ_k^h`
    QFromRicci,
    /// `2 R_k^h = τ δ_k^h + (τ*/2) Φ_k^h − Φ_k^t R_ta f^{ah}`
    TracedCurvature,
    /// `Φ_k^a R_ia = ⅓((τ*/2 + τ) f_ki + τ* g_ki)`
    PhiRicci,
    /// `Φ_k^a R_ia f^{ij} = ⅓((τ*/2 + τ) δ_k^j + (τ*/2) S_k^j)`
    PhiRicciRaised,
    /// `R_k^h = (τ/3) δ_k^h + (τ*/6) Φ_k^h`
    ForcedRicci,
    /// `τ* = −τ`
    TauStarPlusTau,
    /// `R_ki = (τ/6)(2 g_ki − f_ki)`
    RicciForm,
    /// `R_hijk` equals the closed form with the recomputed `τ`
    Reconstruction,
}

impl ChainLink {
    pub const ALL: [ChainLink; 11] = [
        ChainLink::PqAssembly,
        ChainLink::RicciFromP,
        ChainLink::TauStarSplit,
        ChainLink::QFromRicci,
        ChainLink::TracedCurvature,
        ChainLink::PhiRicci,
        ChainLink::PhiRicciRaised,
        ChainLink::ForcedRicci,
        ChainLink::TauStarPlusTau,
        ChainLink::RicciForm,
        ChainLink::Reconstruction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ChainLink::PqAssembly => "pq_assembly",
            ChainLink::RicciFromP => "ricci_from_p",
            ChainLink::TauStarSplit => "tau_star_split",
            ChainLink::QFromRicci => "q_from_ricci",
            ChainLink::TracedCurvature => "traced_curvature",
            ChainLink::PhiRicci => "phi_ricci",
            ChainLink::PhiRicciRaised => "phi_ricci_raised",
            ChainLink::ForcedRicci => "forced_ricci",
            ChainLink::TauStarPlusTau => "tau_star_plus_tau",
            ChainLink::RicciForm => "ricci_form",
            ChainLink::Reconstruction => "reconstruction",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            ChainLink::PqAssembly => "R^h_ijk = d^h_j P_ki - d^h_k P_ij - f_ij Q_k^h + f_ik Q_j^h",
            ChainLink::RicciFromP => "R_ij = -P_ij - psi f_ij",
            ChainLink::TauStarSplit => "tau* = -2 phi - 4 psi",
            ChainLink::QFromRicci => "Q_k^h = -R_ka f^ah - (psi + phi) d_k^h",
            ChainLink::TracedCurvature => "2 R_k^h = tau d_k^h + (tau*/2) Phi_k^h - Phi_k^t R_ta f^ah",
            ChainLink::PhiRicci => "Phi_k^a R_ia = ((tau*/2 + tau) f_ki + tau* g_ki) / 3",
            ChainLink::PhiRicciRaised => "Phi_k^a R_ia f^ij = ((tau*/2 + tau) d_k^j + (tau*/2) S_k^j) / 3",
            ChainLink::ForcedRicci => "R_k^h = (tau/3) d_k^h + (tau*/6) Phi_k^h",
            ChainLink::TauStarPlusTau => "tau* = -tau",
            ChainLink::RicciForm => "R_ki = (tau/6)(2 g_ki - f_ki)",
            ChainLink::Reconstruction => "R_hijk = tau/6 (2 g_kh g_ij - 2 g_hj g_ki + f_kh f_ij - f_hj f_ki)",
        }
    }
}

impl fmt::Display for ChainLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Everything the chain consumes at one point.
#[derive(Clone, Debug)]
pub struct ChainInput<'a> {
    pub frame: &'a MetricFrame,
    /// Curvature of `g`, mixed variance.
    pub r_mixed: Rank4,
    /// `P_ki = ∇_k β_i − β_i β_k + φ f_ik`
    pub p: SymMat3,
    /// `Q_k^h`, stored `[k][h]`.
    pub q: Mat3,
    pub phi: f64,
    pub psi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub tau: f64,
    pub tau_star: f64,
    pub defects: Vec<(ChainLink, f64)>,
    /// Normalized `max|R̄|` (scenario mode only).
    pub premise_flatness: Option<f64>,
}

impl ChainReport {
    pub fn get(&self, link: ChainLink) -> Option<f64> {
        self.defects.iter().find(|(l, _)| *l == link).map(|(_, d)| *d)
    }

    pub fn max_defect(&self) -> f64 {
        self.defects.iter().map(|(_, d)| *d).fold(0.0, f64::max)
    }
}

fn mat_defect(a: &Mat3, b: &Mat3) -> f64 {
    rel_defect(a.max_abs_diff(b), a.max_abs(), b.max_abs())
}

fn scalar_defect(a: f64, b: f64) -> f64 {
    rel_defect((a - b).abs(), a.abs(), b.abs())
}

pub fn chain_defects(input: &ChainInput<'_>) -> ChainReport {
    let frame = input.frame;
    let g = frame.g.value.to_mat3();
    let g_inv = frame.g.inverse.to_mat3();
    let f = frame.f.value.to_mat3();
    let f_inv = frame.f.inverse.to_mat3();
    let af = &frame.affinors;
    let id = Mat3::identity();
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let r = &input.r_mixed;
    let (p, q, phi, psi) = (&input.p, &input.q, input.phi, input.psi);

    let ricci = ricci_mat(r).sym_part().to_mat3();
    let tau = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| ricci.get(i, j) * g_inv.get(i, j)).sum::<f64>();
    let tau_star = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| ricci.get(i, j) * f_inv.get(i, j)).sum::<f64>();

    let mut defects = Vec::with_capacity(ChainLink::ALL.len());

    let assembled = Rank4::from_fn(Variance::Mixed, |h, i, j, k| {
        delta(h, j) * p.get(k, i) - delta(h, k) * p.get(i, j) - f.get(i, j) * q.get(k, h) + f.get(i, k) * q.get(j, h)
    });
    defects.push((
        ChainLink::PqAssembly,
        rel_defect(r.max_abs_diff(&assembled), r.max_abs(), assembled.max_abs()),
    ));

    let ricci_from_p = Mat3::from_fn(|i, j| -p.get(i, j) - psi * f.get(i, j));
    defects.push((ChainLink::RicciFromP, mat_defect(&ricci, &ricci_from_p)));

    defects.push((ChainLink::TauStarSplit, scalar_defect(tau_star, -2.0 * phi - 4.0 * psi)));

    // R_ka f^{ah}
    let ricci_f = ricci * f_inv;
    let q_pred = ricci_f.scale(-1.0) - id.scale(psi + phi);
    defects.push((ChainLink::QFromRicci, mat_defect(q, &q_pred)));

    // R_k^h = g^{ij} R^h_{ijk}, stored [k][h]
    let traced = Mat3::from_fn(|k, h| {
        let mut v = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                v += g_inv.get(i, j) * r.get(h, i, j, k);
            }
        }
        v
    });
    let traced_rhs = id.scale(tau) + af.phi.scale(tau_star / 2.0) - af.phi * ricci_f;
    defects.push((ChainLink::TracedCurvature, mat_defect(&traced.scale(2.0), &traced_rhs)));

    // [k][i] = Φ_k^a R_ia
    let phi_ricci = af.phi * ricci.transpose();
    let phi_ricci_rhs = (f.scale(tau_star / 2.0 + tau) + g.scale(tau_star)).scale(1.0 / 3.0);
    defects.push((ChainLink::PhiRicci, mat_defect(&phi_ricci, &phi_ricci_rhs)));

    let raised = phi_ricci * f_inv;
    let raised_rhs = (id.scale(tau_star / 2.0 + tau) + af.s.scale(tau_star / 2.0)).scale(1.0 / 3.0);
    defects.push((ChainLink::PhiRicciRaised, mat_defect(&raised, &raised_rhs)));

    let forced = id.scale(tau / 3.0) + af.phi.scale(tau_star / 6.0);
    defects.push((ChainLink::ForcedRicci, mat_defect(&traced, &forced)));

    defects.push((ChainLink::TauStarPlusTau, (tau_star + tau).abs() / (1.0 + tau.abs())));

    let ricci_form = (g.scale(2.0) - f).scale(tau / 6.0);
    defects.push((ChainLink::RicciForm, mat_defect(&ricci, &ricci_form)));

    let r_lower = crate::tensor3::lower_riemann(r, &frame.g.value).expect("mixed input");
    let closed = theorem18_curvature(tau, frame);
    defects.push((
        ChainLink::Reconstruction,
        rel_defect(r_lower.max_abs_diff(&closed), r_lower.max_abs(), closed.max_abs()),
    ));

    ChainReport {
        tau,
        tau_star,
        defects,
        premise_flatness: None,
    }
}

/// Chain on the forced forms: `R` is the closed-form tensor with `τ = tau0`,
/// and `P`, `Q` are rebuilt from its Ricci tensor with `φ = ψ = tau0/6`
/// (any split with `2φ + 4ψ = tau0` satisfies the chain).
pub fn theorem2_chain_synthetic(tau0: f64, frame: &MetricFrame) -> Result<ChainReport, CurvatureError> {
    let lower = theorem18_curvature(tau0, frame);
    let sym = symmetry_defects(&lower)?;
    if sym.max() > 1e-12 {
        return Err(CurvatureError::NotPairSymmetric(sym.max()));
    }
    let r_mixed = raise_riemann(&lower, &frame.g.inverse)?;
    let phi = tau0 / 6.0;
    let psi = tau0 / 6.0;
    let ricci = ricci_mat(&r_mixed).sym_part();
    let p = SymMat3::from_fn(|i, j| -ricci.get(i, j) - psi * frame.f.value.get(i, j));
    let q = p.to_mat3() * frame.f.inverse.to_mat3() - Mat3::identity().scale(phi);
    Ok(chain_defects(&ChainInput {
        frame,
        r_mixed,
        p,
        q,
        phi,
        psi,
    }))
}

/// Chain on a scenario whose `ḡ = β f` is locally flat at the point.
pub fn theorem2_chain_scenario(geom: &PointGeometry, flatness_tol: f64) -> Result<ChainReport, CurvatureError> {
    let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
    let flatness = normalized_curvature(&riemann(bar), bar);
    if !(flatness < flatness_tol) {
        return Err(CurvatureError::PremiseNotSatisfied {
            flatness,
            tolerance: flatness_tol,
        });
    }
    let frame = &geom.frame;
    let data = deformation_formula(geom, BetaReading::HalfLog)?;
    let f = &frame.f.value;
    let s = &frame.affinors.s;
    let b = &data.beta_lower;
    let bu = &data.beta_upper;
    let p = SymMat3::from_fn(|k, i| data.nabla_beta.get(k, i) - b[i] * b[k] + data.phi * f.get(i, k));
    let q = Mat3::from_fn(|k, h| {
        0.5 * (0..3)
            .map(|t| s.get(t, h) * (data.nabla_beta_upper.get(k, t) - b[k] * bu[t]))
            .sum::<f64>()
    });
    let mut report = chain_defects(&ChainInput {
        frame,
        r_mixed: riemann(&geom.base),
        p,
        q,
        phi: data.phi,
        psi: data.psi,
    });
    report.premise_flatness = Some(flatness);
    Ok(report)
}
