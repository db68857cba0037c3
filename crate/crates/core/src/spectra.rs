//! Eigenvalues of the linearized Landau and non-cutoff Boltzmann operators.
//!
//! The Boltzmann eigenvalue is the angular integral
//!
//! ```text
//! λ_B(n,l) = ∫_0^{π/4} β(θ) F_{n,l}(θ) dθ,
//! F_{n,l}(θ) = 1 + δ_{n0}δ_{l0} - P_l(cos θ) cos^{2n+l} θ - P_l(sin θ) sin^{2n+l} θ,
//! ```
//!
//! with `β(θ) = 4π b(cos 2θ) sin 2θ ~ θ^{-1-2s}`. `F` is even and `O(θ²)`,
//! so the integrand behaves like `θ^{1-2s}` at the origin. The head
//! `[0, δ]` is integrated from the Taylor coefficients of `F`; the rest uses
//! adaptive Gauss–Kronrod on panels narrower than the `P_l` oscillation.

use crate::eigenbasis::ModeIndex;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quadrature::{integrate_adaptive, integrate_dyadic_to_zero, integrate_panels};
use crate::specfun::{gamma, legendre, one_minus_legendre_cos};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::sync::Arc;

/// Relative accuracy requested from every eigenvalue quadrature.
pub const QUAD_REL_TOL: f64 = 1e-12;
/// Absolute floor for eigenvalue quadratures (kernel modes integrate to 0).
pub const QUAD_ABS_TOL: f64 = 1e-14;
/// Quadrature accuracy target for eigenvalue integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: QUAD_REL_TOL,
            abs: QUAD_ABS_TOL,
        }
    }
}

impl Tolerance {
    /// Relative target in `[1e-14, 1e-4]`; the absolute floor scales along.
    pub fn relative(rel: f64) -> Result<Self> {
        if !(1e-14..=1e-4).contains(&rel) {
            return Err(Error::domain("Tolerance::relative", format!("{rel} not in [1e-14, 1e-4]")));
        }
        Ok(Self {
            rel,
            abs: rel * (QUAD_ABS_TOL / QUAD_REL_TOL),
        })
    }
}

/// Upper bound on the Taylor-head width.
pub const HEAD_SPLIT: f64 = 1e-3;

/// Angular kernel `β(θ) := 4π b(cos 2θ) sin 2θ` on `(0, π/4]`.
#[derive(Clone)]
pub enum CrossSectionModel {
    /// `β(θ) = θ^{-1-2s}`.
    NormalizedSingular { s: f64 },
    /// `β(θ) = θ^{-1-2s}` for `θ >= epsilon`, zero below.
    CutoffSingular { s: f64, epsilon: f64 },
    /// User kernel with declared singularity exponent.
    Custom {
        s: f64,
        name: String,
        beta: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for CrossSectionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NormalizedSingular { s } => write!(f, "NormalizedSingular {{ s: {s} }}"),
            Self::CutoffSingular { s, epsilon } => {
                write!(f, "CutoffSingular {{ s: {s}, epsilon: {epsilon} }}")
            }
            Self::Custom { s, name, .. } => write!(f, "Custom {{ s: {s}, name: {name:?} }}"),
        }
    }
}

fn check_exponent(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Kernel(format!("singularity exponent s = {s} not in (0, 1)")));
    }
    Ok(())
}

impl CrossSectionModel {
    pub fn normalized(s: f64) -> Result<Self> {
        check_exponent(s)?;
        Ok(Self::NormalizedSingular { s })
    }

    pub fn cutoff(s: f64, epsilon: f64) -> Result<Self> {
        check_exponent(s)?;
        if !(epsilon > 0.0 && epsilon < FRAC_PI_4) {
            return Err(Error::Kernel(format!("cutoff ε = {epsilon} not in (0, π/4)")));
        }
        Ok(Self::CutoffSingular { s, epsilon })
    }

    /// Custom kernels must be positive on `(0, π/4]` and behave like a
    /// multiple of `θ^{-1-2s}` near the origin.
    pub fn custom<F>(s: f64, name: impl Into<String>, beta: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_exponent(s)?;
        for k in 1..=64 {
            let theta = FRAC_PI_4 * k as f64 / 64.0;
            let b = beta(theta);
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::Kernel(format!("β({theta}) = {b} is not positive")));
            }
        }
        Ok(Self::Custom {
            s,
            name: name.into(),
            beta: Arc::new(beta),
        })
    }

    pub fn exponent(&self) -> f64 {
        match self {
            Self::NormalizedSingular { s } | Self::CutoffSingular { s, .. } | Self::Custom { s, .. } => *s,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::NormalizedSingular { .. } => "normalized",
            Self::CutoffSingular { .. } => "cutoff",
            Self::Custom { .. } => "custom",
        }
    }

    pub fn beta(&self, theta: f64) -> f64 {
        match self {
            Self::NormalizedSingular { s } => theta.powf(-1.0 - 2.0 * s),
            Self::CutoffSingular { s, epsilon } => {
                if theta >= *epsilon {
                    theta.powf(-1.0 - 2.0 * s)
                } else {
                    0.0
                }
            }
            Self::Custom { beta, .. } => beta(theta),
        }
    }

    pub fn describe(&self) -> KernelDescription {
        KernelDescription {
            kind: self.kind().to_string(),
            s: self.exponent(),
            epsilon: match self {
                Self::CutoffSingular { epsilon, .. } => Some(*epsilon),
                _ => None,
            },
            name: match self {
                Self::Custom { name, .. } => Some(name.clone()),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelDescription {
    pub kind: String,
    pub s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Linearized Landau eigenvalue.
///
/// Zero on the collisional invariants, `2 l(l+1)` on oscillator level 2
/// (which gives `12` for `l = 2`), and `2(2n+l) + l(l+1)` above.
pub fn landau_eigenvalue(mode: ModeIndex) -> f64 {
    let (level, l) = (mode.level() as f64, mode.l() as f64);
    match mode.level() {
        0 | 1 => 0.0,
        2 => 2.0 * l * (l + 1.0),
        _ => 2.0 * level + l * (l + 1.0),
    }
}

/// `1 - P_l(cos θ) cos^N θ` without cancellation near `θ = 0`.
fn one_minus_cos_part(l: u32, big_n: u32, theta: f64) -> f64 {
    let q = one_minus_legendre_cos(l, theta);
    let half = (0.5 * theta).sin();
    // ln cos θ = ln(1 - 2 sin²(θ/2))
    let log_cos = (-2.0 * half * half).ln_1p();
    let one_minus_pow = -(big_n as f64 * log_cos).exp_m1();
    q + (1.0 - q) * one_minus_pow
}

/// `P_l(sin θ) sin^N θ`, with the power evaluated as `exp(N ln sin θ)`.
fn sin_part(l: u32, big_n: u32, theta: f64) -> f64 {
    let s = theta.sin();
    if big_n == 0 {
        return legendre(l, s);
    }
    if s <= 0.0 {
        return 0.0;
    }
    legendre(l, s) * (big_n as f64 * s.ln()).exp()
}

/// `F_{n,l}(θ)` for `θ ∈ [0, π/4]`.
pub fn boltzmann_integrand(n: u32, l: u32, theta: f64) -> f64 {
    let big_n = 2 * n + l;
    let delta = if n == 0 && l == 0 { 1.0 } else { 0.0 };
    delta + one_minus_cos_part(l, big_n, theta) - sin_part(l, big_n, theta)
}

/// Scale on which `F_{n,l}` varies near the origin.
fn variation_scale(n: u32, l: u32) -> f64 {
    let big_n = (2 * n + l) as f64;
    let lf = l as f64;
    1.0 / (1.0 + big_n + lf * (lf + 1.0)).sqrt()
}

/// `∫_a^b θ^{-1-2s} g(θ) dθ` for even `g = O(θ²)`; when `a = 0` the head
/// `[0, δ]` comes from the Taylor coefficients `g₂, g₄`, estimated by
/// Richardson extrapolation of `g(h)/h²`.
fn power_law_integral<G: Fn(f64) -> f64>(
    g: G,
    s: f64,
    a: f64,
    b: f64,
    scale: f64,
    max_panel: f64,
    tol: Tolerance,
    context: &str,
) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let p = 2.0 * s;
    let weight = |t: f64| t.powf(-1.0 - p) * g(t);
    let mut head = 0.0;
    let mut start = a;
    let delta = HEAD_SPLIT.min(0.005 * scale).min(0.5 * b);
    if a < delta {
        let q = |h: f64| g(h) / (h * h);
        let (q1, q2, q4) = (q(delta), q(0.5 * delta), q(0.25 * delta));
        // q(h) = g₂ + g₄h² + g₆h⁴ + …; both estimates eliminate g₆
        let g4 = (17.0 * q2 - 16.0 * q4 - q1) / (2.25 * delta * delta);
        let g2 = (64.0 * q4 - 20.0 * q2 + q1) / 45.0;
        let moment = |k: f64| (delta.powf(k - p) - a.powf(k - p)) / (k - p);
        head = g2 * moment(2.0) + g4 * moment(4.0);
        start = delta;
    }
    let mut breaks = vec![start];
    let mut x = start;
    let geometric_end = (8.0 * scale).min(b);
    while 2.0 * x < geometric_end {
        x *= 2.0;
        breaks.push(x);
    }
    breaks.push(b);
    let body = integrate_panels(weight, &breaks, max_panel, tol.rel, tol.abs)
        .map_err(|e| annotate(e, context))?;
    Ok(head + body.value)
}

fn annotate(e: Error, context: &str) -> Error {
    match e {
        Error::Quadrature { achieved, target, .. } => Error::Quadrature {
            context: context.to_string(),
            achieved,
            target,
        },
        other => other,
    }
}

fn max_panel_width(l: u32) -> f64 {
    FRAC_PI_4 / (l as f64 + 1.0)
}

/// `λ_B(n,l,m)` for the given kernel; independent of `m`.
pub fn boltzmann_eigenvalue(mode: ModeIndex, kernel: &CrossSectionModel) -> Result<f64> {
    boltzmann_eigenvalue_nl(mode.n(), mode.l(), kernel)
}

pub fn boltzmann_eigenvalue_nl(n: u32, l: u32, kernel: &CrossSectionModel) -> Result<f64> {
    boltzmann_eigenvalue_tol(n, l, kernel, Tolerance::default())
}

pub fn boltzmann_eigenvalue_tol(n: u32, l: u32, kernel: &CrossSectionModel, tol: Tolerance) -> Result<f64> {
    let f = |t: f64| boltzmann_integrand(n, l, t);
    let scale = variation_scale(n, l);
    let context = format!("λ_B(n={n}, l={l}, {:?})", kernel);
    match kernel {
        CrossSectionModel::NormalizedSingular { s } => {
            power_law_integral(f, *s, 0.0, FRAC_PI_4, scale, max_panel_width(l), tol, &context)
        }
        CrossSectionModel::CutoffSingular { s, epsilon } => {
            power_law_integral(f, *s, *epsilon, FRAC_PI_4, scale, max_panel_width(l), tol, &context)
        }
        CrossSectionModel::Custom { beta, .. } => {
            let split = (8.0 * scale).min(FRAC_PI_4);
            let integrand = |t: f64| beta(t) * f(t);
            let head = integrate_dyadic_to_zero(integrand, split, tol.rel, tol.abs)
                .map_err(|e| annotate(e, &context))?;
            let body = integrate_panels(
                integrand,
                &[split, FRAC_PI_4],
                max_panel_width(l),
                tol.rel,
                tol.abs,
            )
            .map_err(|e| annotate(e, &context))?;
            Ok(head.value + body.value)
        }
    }
}

/// The three parts of `λ_B` for the normalized kernel:
///
/// ```text
/// λ₁ = -∫_0^{π/4}       θ^{-1-2s} P_l(sin θ) sin^{2n+l} θ dθ
/// λ₂ =  ∫_0^{1/(l+2)}   θ^{-1-2s} (1 - P_l(cos θ) cos^{2n+l} θ) dθ
/// λ₃ =  ∫_{1/(l+2)}^{π/4} θ^{-1-2s} (1 - P_l(cos θ) cos^{2n+l} θ) dθ
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSplit {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl LambdaSplit {
    pub fn total(&self) -> f64 {
        self.lambda1 + self.lambda2 + self.lambda3
    }
}

pub fn lambda_split(n: u32, l: u32, s: f64) -> Result<LambdaSplit> {
    lambda_split_tol(n, l, s, Tolerance::default())
}

pub fn lambda_split_tol(n: u32, l: u32, s: f64, tol: Tolerance) -> Result<LambdaSplit> {
    check_exponent(s)?;
    if 2 * n + l == 0 {
        return Err(Error::domain("lambda_split", "requires 2n + l >= 1"));
    }
    let big_n = 2 * n + l;
    let scale = variation_scale(n, l);
    let panel = max_panel_width(l);
    let split_point = 1.0 / (l as f64 + 2.0);
    let lambda1 = power_law_integral(
        |t| -sin_part(l, big_n, t),
        s,
        0.0,
        FRAC_PI_4,
        scale,
        panel,
        tol,
        &format!("λ₁(n={n}, l={l}, s={s})"),
    )?;
    let cos_part = |t: f64| one_minus_cos_part(l, big_n, t);
    let lambda2 = power_law_integral(
        cos_part,
        s,
        0.0,
        split_point,
        scale,
        panel,
        tol,
        &format!("λ₂(n={n}, l={l}, s={s})"),
    )?;
    let lambda3 = power_law_integral(
        cos_part,
        s,
        split_point,
        FRAC_PI_4,
        scale,
        panel,
        tol,
        &format!("λ₃(n={n}, l={l}, s={s})"),
    )?;
    Ok(LambdaSplit {
        lambda1,
        lambda2,
        lambda3,
    })
}

/// A test function for [`finite_part`], with its second derivative.
pub trait TestFunction: Sync {
    fn value(&self, x: f64) -> f64;
    fn second_derivative(&self, x: f64) -> f64;
}

impl<F, G> TestFunction for (F, G)
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.0)(x)
    }
    fn second_derivative(&self, x: f64) -> f64 {
        (self.1)(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinitePart {
    /// `lim_{ε→0} ∫_{|θ|>=ε} ν (φ - φ(0))`.
    pub limit: f64,
    /// `∫_0^1 ∫ θ² ν(θ) φ''(tθ) dθ (1-t) dt`.
    pub double_integral: f64,
    pub halvings: u32,
}

impl FinitePart {
    pub fn value(&self) -> f64 {
        self.limit
    }
}

/// Largest tolerated disagreement between the two finite-part routes.
pub const FINITE_PART_AGREEMENT: f64 = 1e-6;
const MAX_HALVINGS: u32 = 40;

/// Finite part `⟨fp(ν), φ⟩` for an even kernel `ν` supported in
/// `[-support, support]` with `θ²ν ∈ L¹`, computed by both the ε-limit and
/// the second-order Taylor double integral.
pub fn finite_part<N, T>(nu: N, support: f64, phi: &T) -> Result<FinitePart>
where
    N: Fn(f64) -> f64 + Sync,
    T: TestFunction,
{
    if !(support > 0.0 && support.is_finite()) {
        return Err(Error::domain("finite_part", "support must be positive and finite"));
    }
    let phi0 = phi.value(0.0);
    let sym = |t: f64| nu(t) * (phi.value(t) + phi.value(-t) - 2.0 * phi0);

    // ε-limit over dyadic ε = R 2^{-k}, Aitken-extrapolated
    let mut partial = 0.0;
    let mut increments: Vec<f64> = Vec::new();
    let mut extrapolated: Vec<f64> = Vec::new();
    let mut hi = support;
    let mut limit = None;
    let mut halvings = 0;
    for k in 0..MAX_HALVINGS {
        let lo = 0.5 * hi;
        let inc = integrate_adaptive(sym, lo, hi, 1e-13, 1e-15)?.value;
        partial += inc;
        increments.push(inc);
        let est = match increments.len() {
            n if n >= 2 => {
                let (d1, d2) = (increments[n - 2], increments[n - 1]);
                if d2 == 0.0 || d1 == d2 {
                    partial
                } else {
                    partial - d2 * d2 / (d2 - d1)
                }
            }
            _ => partial,
        };
        extrapolated.push(est);
        halvings = k + 1;
        if increments.iter().all(|&d| d == 0.0) && k >= 2 {
            limit = Some(0.0);
            break;
        }
        if extrapolated.len() >= 3 && k >= 6 {
            let n = extrapolated.len();
            let change = (extrapolated[n - 1] - extrapolated[n - 2]).abs();
            let prev_change = (extrapolated[n - 2] - extrapolated[n - 3]).abs();
            let tol = 1e-12 * extrapolated[n - 1].abs().max(1e-3);
            if change <= tol && prev_change <= 10.0 * tol {
                limit = Some(extrapolated[n - 1]);
                break;
            }
        }
        hi = lo;
    }
    let limit = match limit {
        Some(v) => v,
        None => {
            let n = extrapolated.len();
            return Err(Error::LimitNotConverged {
                halvings,
                last_change: (extrapolated[n - 1] - extrapolated[n - 2]).abs(),
            });
        }
    };

    let inner = |t: f64| -> Result<f64> {
        let h = |x: f64| x * x * nu(x) * (phi.second_derivative(t * x) + phi.second_derivative(-t * x));
        Ok(integrate_dyadic_to_zero(h, support, 1e-12, 1e-15)?.value)
    };
    // the outer integrand is smooth in t; fixed composite Gauss–Legendre
    let (gx, gw) = crate::quadrature::gauss_legendre(24);
    let panels = 4;
    let mut double_integral = 0.0;
    for p in 0..panels {
        let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
        for (x, w) in gx.iter().zip(&gw) {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            double_integral += 0.5 * (b - a) * w * (1.0 - t) * inner(t)?;
        }
    }

    if (limit - double_integral).abs() > FINITE_PART_AGREEMENT * limit.abs().max(1.0) {
        return Err(Error::FinitePartMismatch {
            limit,
            double_integral,
        });
    }
    Ok(FinitePart {
        limit,
        double_integral,
        halvings,
    })
}

/// `C_s = ∫_0^∞ θ^{-1-2s} (1 - e^{-θ²/2}) dθ` by quadrature.
pub fn grazing_constant(s: f64) -> Result<f64> {
    check_exponent(s)?;
    let near = integrate_dyadic_to_zero(
        |t: f64| -(-0.5 * t * t).exp_m1() * t.powf(-1.0 - 2.0 * s),
        1.0,
        1e-13,
        1e-16,
    )?;
    // θ = x^{-1/(2s)} maps [1, ∞) onto (0, 1] with θ^{-1-2s} dθ = dx/(2s)
    let far = integrate_adaptive(
        |x: f64| {
            if x <= 0.0 {
                return 1.0;
            }
            let t = x.powf(-0.5 / s);
            -(-0.5 * t * t).exp_m1()
        },
        0.0,
        1.0,
        1e-14,
        1e-16,
    )?;
    Ok(near.value + far.value / (2.0 * s))
}

/// `2^{-1-s} Γ(1-s) / s`: substitute `u = θ²/2`, then integrate by parts
/// `∫ u^{-1-s}(1 - e^{-u}) du = Γ(1-s)/s`.
pub fn grazing_constant_closed_form(s: f64) -> f64 {
    2f64.powf(-1.0 - s) * gamma(1.0 - s) / s
}

/// One row of an eigenvalue table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub mode: ModeIndex,
    pub lambda_l: f64,
    pub lambda_b: f64,
    /// Only for the normalized kernel and `2n+l >= 1`.
    pub split: Option<LambdaSplit>,
    /// `λ_B / λ_L^s`; `None` on the collisional invariants.
    pub ratio: Option<f64>,
}

/// Eigenvalue records for `modes` (in the given order). Each distinct
/// `(n, l)` is integrated once and shared across `m`.
pub fn eigenvalue_table(modes: &[ModeIndex], kernel: &CrossSectionModel) -> Result<Vec<EigenvalueRecord>> {
    eigenvalue_table_with(Execution::default(), modes, kernel, Tolerance::default())
}

pub fn eigenvalue_table_with(
    exec: Execution,
    modes: &[ModeIndex],
    kernel: &CrossSectionModel,
    tol: Tolerance,
) -> Result<Vec<EigenvalueRecord>> {
    let mut pairs: Vec<(u32, u32)> = modes.iter().map(|m| (m.n(), m.l())).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let with_split = matches!(kernel, CrossSectionModel::NormalizedSingular { .. });
    let s = kernel.exponent();
    let computed = exec.try_map(&pairs, |&(n, l)| -> Result<(f64, Option<LambdaSplit>)> {
        let lb = boltzmann_eigenvalue_tol(n, l, kernel, tol)?;
        let split = if with_split && 2 * n + l >= 1 {
            Some(lambda_split_tol(n, l, s, tol)?)
        } else {
            None
        };
        Ok((lb, split))
    })?;
    let lookup: BTreeMap<(u32, u32), (f64, Option<LambdaSplit>)> =
        pairs.into_iter().zip(computed).collect();
    Ok(modes
        .iter()
        .map(|&mode| {
            let (lambda_b, split) = lookup[&(mode.n(), mode.l())];
            let lambda_l = landau_eigenvalue(mode);
            let ratio = (!mode.is_collisional_invariant()).then(|| lambda_b / lambda_l.powf(s));
            EigenvalueRecord {
                mode,
                lambda_l,
                lambda_b,
                split,
                ratio,
            }
        })
        .collect())
}
