//! Numerical corroboration of the two-sided comparison `λ_B ≍ λ_L^s`, the
//! lemmas behind it, the Hilb approximation, and the coercive norms.
//!
//! Every check returns a serializable report with a `passed` flag; the
//! reports also render as aligned text.

use crate::eigenbasis::{modes_up_to_level, ModeIndex, SpectralCoefficients};
use crate::error::Result;
use crate::exec::Execution;
use crate::quadrature::integrate_adaptive;
use crate::semigroup::fractional_power;
use crate::spectra::{
    boltzmann_eigenvalue_nl, grazing_constant, lambda_split, landau_eigenvalue, CrossSectionModel,
};
use crate::specfun::{bessel_j0, legendre};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;
use std::fmt;

/// Default bound on `max/min` of the `λ_B / λ_L^s` ratio band.
pub const DEFAULT_BAND_BOUND: f64 = 50.0;
/// Relative tolerance for asymptotic ratios.
pub const ASYMPTOTIC_TOL: f64 = 0.05;
/// Default constant for the Hilb deviation `|P_l(cos θ) - …| / θ²`.
pub const DEFAULT_HILB_CONSTANT: f64 = 0.1;

/// Distinct `(n, l)` with `n <= n_max`, `l <= l_max` and, if given,
/// `2n + l <= level_max`, ordered by `(2n+l, l)`.
pub fn nl_grid(n_max: u32, l_max: u32, level_max: Option<u32>) -> Vec<(u32, u32)> {
    let top = level_max.unwrap_or(2 * n_max + l_max).min(2 * n_max + l_max);
    modes_up_to_level(top)
        .into_iter()
        .filter(|m| m.m() == 0 && m.n() <= n_max && m.l() <= l_max)
        .map(|m| (m.n(), m.l()))
        .collect()
}

fn is_kernel(n: u32, l: u32) -> bool {
    matches!((n, l), (0, 0) | (0, 1) | (1, 0))
}

fn landau_nl(n: u32, l: u32) -> f64 {
    landau_eigenvalue(ModeIndex::new(n, l, 0).expect("m = 0 is always valid"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub n: u32,
    pub l: u32,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub s: f64,
    pub kernel: String,
    pub n_max: u32,
    pub l_max: u32,
    pub level_max: Option<u32>,
    pub pairs: usize,
    /// Extremes of `λ_B / λ_L^s`.
    pub ratio_min: Extremum,
    pub ratio_max: Extremum,
    /// Extremes of `(1+λ_B) / (1 + (2n+l)^s + l^s (l+1)^s)`.
    pub norm_ratio_min: Extremum,
    pub norm_ratio_max: Extremum,
    pub band_width: f64,
    pub band_bound: f64,
    pub passed: bool,
}

/// `λ_B / λ_L^s` band for the normalized kernel over the `(n, l)` grid.
pub fn verify_theorem2(s: f64, n_max: u32, l_max: u32) -> Result<RatioReport> {
    verify_theorem2_with(
        Execution::default(),
        &CrossSectionModel::normalized(s)?,
        n_max,
        l_max,
        None,
        DEFAULT_BAND_BOUND,
    )
}

pub fn verify_theorem2_with(
    exec: Execution,
    kernel: &CrossSectionModel,
    n_max: u32,
    l_max: u32,
    level_max: Option<u32>,
    band_bound: f64,
) -> Result<RatioReport> {
    let s = kernel.exponent();
    let pairs: Vec<(u32, u32)> = nl_grid(n_max.max(1), l_max.max(1), level_max)
        .into_iter()
        .filter(|&(n, l)| !is_kernel(n, l))
        .collect();
    let lambdas = exec.try_map(&pairs, |&(n, l)| boltzmann_eigenvalue_nl(n, l, kernel))?;
    let mut rmin = Extremum { n: 0, l: 0, value: f64::INFINITY };
    let mut rmax = Extremum { n: 0, l: 0, value: f64::NEG_INFINITY };
    let (mut nmin, mut nmax) = (rmin, rmax);
    let mut finite = true;
    for (&(n, l), &lb) in pairs.iter().zip(&lambdas) {
        let ratio = lb / landau_nl(n, l).powf(s);
        let lf = l as f64;
        let norm = (1.0 + lb) / (1.0 + ((2 * n + l) as f64).powf(s) + lf.powf(s) * (lf + 1.0).powf(s));
        finite &= ratio.is_finite() && ratio > 0.0 && norm.is_finite() && norm > 0.0;
        let at = |value: f64| Extremum { n, l, value };
        if ratio < rmin.value {
            rmin = at(ratio);
        }
        if ratio > rmax.value {
            rmax = at(ratio);
        }
        if norm < nmin.value {
            nmin = at(norm);
        }
        if norm > nmax.value {
            nmax = at(norm);
        }
    }
    let band_width = rmax.value / rmin.value;
    Ok(RatioReport {
        s,
        kernel: kernel.kind().to_string(),
        n_max,
        l_max,
        level_max,
        pairs: pairs.len(),
        ratio_min: rmin,
        ratio_max: rmax,
        norm_ratio_min: nmin,
        norm_ratio_max: nmax,
        band_width,
        band_bound,
        passed: finite && !pairs.is_empty() && band_width <= band_bound,
    })
}

impl fmt::Display for RatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ratio band  s={}  kernel={}  pairs={}", self.s, self.kernel, self.pairs)?;
        writeln!(f, "  {:<28} {:>14} {:>10}", "quantity", "value", "(n,l)")?;
        for (name, e) in [
            ("min λ_B/λ_L^s", self.ratio_min),
            ("max λ_B/λ_L^s", self.ratio_max),
            ("min (1+λ_B)/(1+N^s+L^s)", self.norm_ratio_min),
            ("max (1+λ_B)/(1+N^s+L^s)", self.norm_ratio_max),
        ] {
            writeln!(f, "  {:<28} {:>14.6e} {:>10}", name, e.value, format!("({},{})", e.n, e.l))?;
        }
        write!(f, "  width {:.4} (bound {})  {}", self.band_width, self.band_bound, verdict(self.passed))
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Row {
    pub n: u32,
    pub l: u32,
    pub lambda1: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub s: f64,
    pub rows: Vec<Lemma1Row>,
    pub violations: Vec<(u32, u32)>,
    pub passed: bool,
}

/// `(π/4)^{N-2s} / (N-2s)` with `N = 2n+l`.
pub fn lemma1_bound(n: u32, l: u32, s: f64) -> f64 {
    let e = (2 * n + l) as f64 - 2.0 * s;
    FRAC_PI_4.powf(e) / e
}

/// `|λ₁(n,l)| <= (π/4)^{2n+l-2s} / (2n+l-2s)` for every grid pair with
/// `2n + l >= 2`.
pub fn lemma1_check(n_max: u32, l_max: u32, s: f64) -> Result<Lemma1Report> {
    lemma1_check_with(Execution::default(), n_max, l_max, None, s)
}

pub fn lemma1_check_with(
    exec: Execution,
    n_max: u32,
    l_max: u32,
    level_max: Option<u32>,
    s: f64,
) -> Result<Lemma1Report> {
    let pairs: Vec<(u32, u32)> = nl_grid(n_max, l_max, level_max)
        .into_iter()
        .filter(|&(n, l)| 2 * n + l >= 2)
        .collect();
    let rows = exec.try_map(&pairs, |&(n, l)| {
        Ok::<_, crate::Error>(Lemma1Row {
            n,
            l,
            lambda1: lambda_split(n, l, s)?.lambda1,
            bound: lemma1_bound(n, l, s),
        })
    })?;
    let violations: Vec<(u32, u32)> = rows
        .iter()
        .filter(|r| r.lambda1.abs() > r.bound + 1e-10)
        .map(|r| (r.n, r.l))
        .collect();
    Ok(Lemma1Report {
        s,
        passed: violations.is_empty() && !rows.is_empty(),
        rows,
        violations,
    })
}

impl fmt::Display for Lemma1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worst = self
            .rows
            .iter()
            .map(|r| r.lambda1.abs() / r.bound)
            .fold(0.0, f64::max);
        write!(
            f,
            "λ₁ bound  s={}  pairs={}  max |λ₁|/bound={:.4}  violations={}  {}",
            self.s,
            self.rows.len(),
            worst,
            self.violations.len(),
            verdict(self.passed)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Row {
    pub n: u32,
    pub level: u32,
    pub lambda2: f64,
    /// `λ₂ / ((2n+l)^s C_s)`.
    pub asymptotic_ratio: f64,
    /// `λ₂ / ((2n+l)^s + (l+2)^{2s})`.
    pub envelope_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub s: f64,
    pub l: u32,
    pub grazing_constant: f64,
    pub rows: Vec<Lemma2Row>,
    /// Envelope constant `C` from the first term and the limit `C_s`.
    pub envelope_constant: f64,
    pub final_ratio: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Convergence of `λ₂(n,l) / ((2n+l)^s C_s)` to 1 along `n_sequence`, plus
/// positivity and the envelope `λ₂ <= C((2n+l)^s + (l+2)^{2s})`.
///
/// The envelope ratio increases towards `C_s` from the small-`n` end, so
/// `C` is calibrated as the larger of the first-term ratio and `C_s`,
/// padded by the asymptotic tolerance.
pub fn lemma2_check(s: f64, l: u32, n_sequence: &[u32]) -> Result<Lemma2Report> {
    lemma2_check_with(Execution::default(), s, l, n_sequence)
}

pub fn lemma2_check_with(exec: Execution, s: f64, l: u32, n_sequence: &[u32]) -> Result<Lemma2Report> {
    let c_s = grazing_constant(s)?;
    let seq: Vec<u32> = n_sequence.iter().copied().filter(|&n| 2 * n + l >= 1).collect();
    let rows = exec.try_map(&seq, |&n| {
        let level = 2 * n + l;
        let lambda2 = lambda_split(n, l, s)?.lambda2;
        let big = (level as f64).powf(s);
        Ok::<_, crate::Error>(Lemma2Row {
            n,
            level,
            lambda2,
            asymptotic_ratio: lambda2 / (big * c_s),
            envelope_ratio: lambda2 / (big + (l as f64 + 2.0).powf(2.0 * s)),
        })
    })?;
    let first = rows.first().map(|r| r.envelope_ratio).unwrap_or(0.0);
    let envelope_constant = first.max(c_s) * (1.0 + ASYMPTOTIC_TOL);
    let final_ratio = rows.last().map(|r| r.asymptotic_ratio).unwrap_or(f64::NAN);
    let passed = !rows.is_empty()
        && rows.iter().all(|r| r.lambda2 > 0.0 && r.envelope_ratio <= envelope_constant)
        && (final_ratio - 1.0).abs() <= ASYMPTOTIC_TOL;
    Ok(Lemma2Report {
        s,
        l,
        grazing_constant: c_s,
        rows,
        envelope_constant,
        final_ratio,
        tolerance: ASYMPTOTIC_TOL,
        passed,
    })
}

impl fmt::Display for Lemma2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "λ₂ asymptotics  s={}  l={}  C_s={:.10}", self.s, self.l, self.grazing_constant)?;
        writeln!(f, "  {:>8} {:>16} {:>12} {:>12}", "2n+l", "λ₂", "λ₂/(N^s C_s)", "envelope")?;
        for r in &self.rows {
            writeln!(
                f,
                "  {:>8} {:>16.8e} {:>12.6} {:>12.6}",
                r.level, r.lambda2, r.asymptotic_ratio, r.envelope_ratio
            )?;
        }
        write!(f, "  final ratio {:.6} (tol {})  {}", self.final_ratio, self.tolerance, verdict(self.passed))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Row {
    pub n: u32,
    pub l: u32,
    pub lambda3: f64,
    /// `λ₃ / (1+l)^{2s}`.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub s: f64,
    pub rows: Vec<Lemma4Row>,
    pub band_min: f64,
    pub band_max: f64,
    /// `c` in `λ₃ >= c l^{2s}`, calibrated at `l = 2` and divided by the
    /// allowed band width.
    pub lower_constant: f64,
    pub l0_upper: f64,
    pub l1_lower: f64,
    pub l1_upper: f64,
    pub l0_ok: bool,
    pub l1_ok: bool,
    pub passed: bool,
}

/// Allowed `max/min` of `λ₃ / (1+l)^{2s}` for `l >= 2`.
pub const LEMMA4_BAND: f64 = 10.0;

/// Band of `λ₃(n,l)/(1+l)^{2s}` for `2 <= l <= l_max` at the probe `n`
/// values, plus the explicit bounds at `l = 0` and `l = 1`.
pub fn lemma4_check(l_max: u32, s: f64, n_probe: &[u32]) -> Result<Lemma4Report> {
    lemma4_check_with(Execution::default(), l_max, s, n_probe)
}

pub fn lemma4_check_with(exec: Execution, l_max: u32, s: f64, n_probe: &[u32]) -> Result<Lemma4Report> {
    let l_max = l_max.max(2);
    let pairs: Vec<(u32, u32)> = n_probe
        .iter()
        .flat_map(|&n| (0..=l_max).map(move |l| (n, l)))
        .filter(|&(n, l)| 2 * n + l >= 1)
        .collect();
    let rows = exec.try_map(&pairs, |&(n, l)| {
        let lambda3 = lambda_split(n, l, s)?.lambda3;
        Ok::<_, crate::Error>(Lemma4Row {
            n,
            l,
            lambda3,
            scaled: lambda3 / (1.0 + l as f64).powf(2.0 * s),
        })
    })?;
    let p = 2.0 * s;
    // ∫_a^b 2 θ^{-1-2s} dθ
    let two_over = |a: f64, b: f64| 2.0 * (a.powf(-p) - b.powf(-p)) / p;
    let l0_upper = two_over(0.5, FRAC_PI_4);
    let l1_upper = two_over(1.0 / 3.0, FRAC_PI_4);
    let l1_lower = integrate_adaptive(
        |t: f64| t.powf(-1.0 - p) * (1.0 - t.cos()),
        1.0 / 3.0,
        FRAC_PI_4,
        1e-13,
        0.0,
    )?
    .value;
    let mut l0_ok = true;
    let mut l1_ok = true;
    let (mut band_min, mut band_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        match r.l {
            0 => l0_ok &= r.lambda3 >= -1e-12 && r.lambda3 <= l0_upper + 1e-10,
            1 => l1_ok &= r.lambda3 >= l1_lower - 1e-10 && r.lambda3 <= l1_upper + 1e-10,
            _ => {
                band_min = band_min.min(r.scaled);
                band_max = band_max.max(r.scaled);
            }
        }
    }
    let at_two: Vec<f64> = rows.iter().filter(|r| r.l == 2).map(|r| r.lambda3).collect();
    let lower_constant = at_two.iter().copied().fold(f64::INFINITY, f64::min) / (2f64.powf(p) * LEMMA4_BAND);
    let lower_ok = rows
        .iter()
        .filter(|r| r.l >= 2)
        .all(|r| r.lambda3 >= lower_constant * (r.l as f64).powf(p));
    let passed = l0_ok && l1_ok && lower_ok && band_min > 0.0 && band_max / band_min <= LEMMA4_BAND;
    Ok(Lemma4Report {
        s,
        rows,
        band_min,
        band_max,
        lower_constant,
        l0_upper,
        l1_lower,
        l1_upper,
        l0_ok,
        l1_ok,
        passed,
    })
}

impl fmt::Display for Lemma4Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "λ₃ band  s={}  λ₃/(1+l)^2s ∈ [{:.6}, {:.6}] (ratio {:.3})  l=0 {}  l=1 {}  {}",
            self.s,
            self.band_min,
            self.band_max,
            self.band_max / self.band_min,
            if self.l0_ok { "ok" } else { "violated" },
            if self.l1_ok { "ok" } else { "violated" },
            verdict(self.passed)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbReport {
    pub l: u32,
    pub points: usize,
    pub max_scaled_deviation: f64,
    pub theta_at_max: f64,
}

/// `(θ / sin θ)^{1/2}`, equal to 1 at the origin.
pub fn hilb_factor(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        // θ/sin θ = 1 + θ²/6 + 7θ⁴/360
        let t2 = theta * theta;
        (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0).sqrt()
    } else {
        (theta / theta.sin()).sqrt()
    }
}

/// `|P_l(cos θ) - (θ/sin θ)^{1/2} J_0((l+½)θ)| / θ²`.
pub fn hilb_deviation(l: u32, theta: f64) -> f64 {
    let exact = legendre(l, theta.cos());
    let approx = hilb_factor(theta) * bessel_j0((l as f64 + 0.5) * theta);
    (exact - approx).abs() / (theta * theta)
}

/// Uniform grid `θ_k = k c / (l · points)`, `k = 1..=points`.
pub fn hilb_grid(l: u32, points: usize, c: f64) -> Vec<f64> {
    let top = c / l.max(1) as f64;
    (1..=points).map(|k| top * k as f64 / points as f64).collect()
}

pub fn hilb_check(l: u32, theta_grid: &[f64]) -> HilbReport {
    let mut worst = (0.0, f64::NAN);
    for &t in theta_grid {
        let d = hilb_deviation(l, t);
        if d > worst.0 || worst.1.is_nan() {
            worst = (d, t);
        }
    }
    HilbReport {
        l,
        points: theta_grid.len(),
        max_scaled_deviation: worst.0,
        theta_at_max: worst.1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbBattery {
    pub constant: f64,
    pub reports: Vec<HilbReport>,
    pub passed: bool,
}

/// Runs [`hilb_check`] on `(0, 1/l]` for each `l` and asserts one shared bound.
pub fn hilb_battery(ls: &[u32], points: usize, constant: f64) -> HilbBattery {
    let reports: Vec<HilbReport> = ls.iter().map(|&l| hilb_check(l, &hilb_grid(l, points, 1.0))).collect();
    let passed = reports.iter().all(|r| r.max_scaled_deviation <= constant);
    HilbBattery {
        constant,
        reports,
        passed,
    }
}

impl fmt::Display for HilbBattery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Hilb approximation  bound {}", self.constant)?;
        for r in &self.reports {
            writeln!(
                f,
                "  l={:>4}  max dev/θ² = {:.6e} at θ = {:.4e}",
                r.l, r.max_scaled_deviation, r.theta_at_max
            )?;
        }
        write!(f, "  {}", verdict(self.passed))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoerciveNorms {
    /// `Σ λ_B c²`.
    pub dirichlet: f64,
    /// `Σ_{non-kernel} (3/2 + 2n + l)^s c²`.
    pub hs_norm: f64,
    /// `Σ_{non-kernel} (l(l+1))^s c²`.
    pub sphere_norm: f64,
    /// `Σ c²`.
    pub l2_norm_sq: f64,
    /// `Σ (3/2 + 2n + l)^s c²` over all stored modes.
    pub hs_norm_full: f64,
    /// `Σ (l(l+1))^s c²` over all stored modes.
    pub sphere_norm_full: f64,
}

impl CoerciveNorms {
    /// `dirichlet / (hs + sphere)` on `(1-P)f`.
    pub fn projected_ratio(&self) -> f64 {
        self.dirichlet / (self.hs_norm + self.sphere_norm)
    }

    /// `(dirichlet + ‖f‖²) / (hs + sphere)` over the whole vector.
    pub fn shifted_ratio(&self) -> f64 {
        (self.dirichlet + self.l2_norm_sq) / (self.hs_norm_full + self.sphere_norm_full)
    }
}

fn hs_weight(mode: ModeIndex, s: f64) -> f64 {
    (1.5 + mode.level() as f64).powf(s)
}

fn sphere_weight(mode: ModeIndex, s: f64) -> f64 {
    fractional_power(mode.sphere_level() as f64, s)
}

pub fn coercive_norms(c: &SpectralCoefficients, s: f64, kernel: &CrossSectionModel) -> Result<CoerciveNorms> {
    let mut out = CoerciveNorms {
        dirichlet: 0.0,
        hs_norm: 0.0,
        sphere_norm: 0.0,
        l2_norm_sq: 0.0,
        hs_norm_full: 0.0,
        sphere_norm_full: 0.0,
    };
    let mut cache = std::collections::BTreeMap::new();
    for (mode, x) in c.iter() {
        let x2 = x * x;
        let key = (mode.n(), mode.l());
        let lb = match cache.get(&key) {
            Some(v) => *v,
            None => {
                let v = if mode.is_collisional_invariant() {
                    0.0
                } else {
                    boltzmann_eigenvalue_nl(key.0, key.1, kernel)?
                };
                cache.insert(key, v);
                v
            }
        };
        let (h, sp) = (hs_weight(mode, s), sphere_weight(mode, s));
        out.dirichlet += lb * x2;
        out.l2_norm_sq += x2;
        out.hs_norm_full += h * x2;
        out.sphere_norm_full += sp * x2;
        if !mode.is_collisional_invariant() {
            out.hs_norm += h * x2;
            out.sphere_norm += sp * x2;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoerciveBand {
    pub s: f64,
    pub level_max: u32,
    /// Extremes of `λ_B / ((3/2+2n+l)^s + (l(l+1))^s)` over non-kernel modes.
    pub projected_min: f64,
    pub projected_max: f64,
    /// Extremes of `(1 + λ_B) / ((3/2+2n+l)^s + (l(l+1))^s)` over all modes.
    pub shifted_min: f64,
    pub shifted_max: f64,
}

impl CoerciveBand {
    pub fn contains_projected(&self, ratio: f64) -> bool {
        ratio >= self.projected_min * (1.0 - 1e-12) && ratio <= self.projected_max * (1.0 + 1e-12)
    }

    pub fn contains_shifted(&self, ratio: f64) -> bool {
        ratio >= self.shifted_min * (1.0 - 1e-12) && ratio <= self.shifted_max * (1.0 + 1e-12)
    }
}

/// Both coercivity forms are ratios of diagonal quadratic forms, so their
/// ranges over all coefficient vectors are the per-mode extremes.
pub fn coercive_band(kernel: &CrossSectionModel, s: f64, level_max: u32) -> Result<CoerciveBand> {
    let pairs = nl_grid(level_max / 2, level_max, Some(level_max));
    let lambdas = Execution::default().try_map(&pairs, |&(n, l)| {
        if is_kernel(n, l) {
            Ok(0.0)
        } else {
            boltzmann_eigenvalue_nl(n, l, kernel)
        }
    })?;
    let mut band = CoerciveBand {
        s,
        level_max,
        projected_min: f64::INFINITY,
        projected_max: f64::NEG_INFINITY,
        shifted_min: f64::INFINITY,
        shifted_max: f64::NEG_INFINITY,
    };
    for (&(n, l), &lb) in pairs.iter().zip(&lambdas) {
        let mode = ModeIndex::new(n, l, 0)?;
        let denom = hs_weight(mode, s) + sphere_weight(mode, s);
        let shifted = (1.0 + lb) / denom;
        band.shifted_min = band.shifted_min.min(shifted);
        band.shifted_max = band.shifted_max.max(shifted);
        if !is_kernel(n, l) {
            let r = lb / denom;
            band.projected_min = band.projected_min.min(r);
            band.projected_max = band.projected_max.max(r);
        }
    }
    Ok(band)
}

/// Settings for the full verification battery.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub s: f64,
    pub n_max: u32,
    pub l_max: u32,
    pub level_max: Option<u32>,
    pub band_bound: f64,
    /// Values of `n` (with `l = 0`) probed for the λ₂ asymptotics.
    pub lemma2_n: Vec<u32>,
    pub lemma4_n: Vec<u32>,
    pub hilb_l: Vec<u32>,
    pub hilb_points: usize,
    pub hilb_constant: f64,
}

impl VerificationConfig {
    pub fn new(s: f64) -> Self {
        Self {
            s,
            n_max: 32,
            l_max: 64,
            level_max: Some(64),
            band_bound: DEFAULT_BAND_BOUND,
            // 2n = 2^4 .. 2^20: the tail of λ₂ decays like (2n)^{-s}
            lemma2_n: (3..=19).step_by(2).map(|k| 1u32 << k).collect(),
            lemma4_n: vec![0, 4, 16],
            hilb_l: vec![4, 16, 64, 256],
            hilb_points: 256,
            hilb_constant: DEFAULT_HILB_CONSTANT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: VerificationConfig,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}", verdict(c.passed), c.name)?;
            for line in c.summary.lines() {
                writeln!(f, "    {line}")?;
            }
        }
        write!(f, "overall: {}", verdict(self.passed))
    }
}

fn outcome<T: Serialize + fmt::Display>(name: &str, passed: bool, report: &T) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        summary: report.to_string(),
        detail: serde_json::to_value(report).unwrap_or(serde_json::Value::Null),
    }
}

/// Runs every check with the normalized kernel.
pub fn run_verification(config: &VerificationConfig) -> Result<VerificationReport> {
    let kernel = CrossSectionModel::normalized(config.s)?;
    let exec = Execution::default();
    let mut checks = Vec::new();

    let t2 = verify_theorem2_with(exec, &kernel, config.n_max, config.l_max, config.level_max, config.band_bound)?;
    checks.push(outcome("theorem2_band", t2.passed, &t2));

    let l1 = lemma1_check_with(exec, config.n_max, config.l_max, config.level_max, config.s)?;
    checks.push(outcome("lemma1_bound", l1.passed, &l1));

    let l2 = lemma2_check_with(exec, config.s, 0, &config.lemma2_n)?;
    checks.push(outcome("lemma2_asymptotics", l2.passed, &l2));

    let l4 = lemma4_check_with(exec, config.l_max, config.s, &config.lemma4_n)?;
    checks.push(outcome("lemma4_band", l4.passed, &l4));

    let hb = hilb_battery(&config.hilb_l, config.hilb_points, config.hilb_constant);
    checks.push(outcome("hilb", hb.passed, &hb));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        config: config.clone(),
        checks,
        passed,
    })
}
