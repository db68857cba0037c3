//! The shared eigenbasis `φ_{n,l,m}` of the harmonic oscillator and the
//! spherical Laplacian in ℝ³, quadrature grids in velocity space, and
//! conversion between point samples and spectral coefficients.
//!
//! ```text
//! φ_{n,l,m}(v) = 2^{-3/4} (2·n! / Γ(n+l+3/2))^{1/2} (|v|/√2)^l
//!                · L_n^{(l+1/2)}(|v|²/2) e^{-|v|²/4} Y_l^m(v/|v|)
//! ```
//!
//! `(-Δ + |v|²/4 - 3/2) φ = (2n+l) φ` and `-Δ_{S²} φ = l(l+1) φ`.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hermite_algebra::{multi_indices, HermiteCoefficients};
use crate::quadrature::{gauss_hermite, gauss_laguerre, gauss_legendre};
use crate::specfun::{hermite_psi, laguerre, ln_gamma, spherical_harmonic};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Eigenmode label `(n, l, m)` with `|m| <= l`.
///
/// Ordered lexicographically by `(2n+l, l, m)`, which groups oscillator
/// levels together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    n: u32,
    l: u32,
    m: i32,
}

impl ModeIndex {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidMode { n, l, m });
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Oscillator level `2n + l`.
    pub fn level(&self) -> u32 {
        2 * self.n + self.l
    }

    /// Spherical eigenvalue `l(l+1)`.
    pub fn sphere_level(&self) -> u32 {
        self.l * (self.l + 1)
    }

    /// One of the five collisional invariants.
    pub fn is_collisional_invariant(&self) -> bool {
        matches!((self.n, self.l), (0, 0) | (0, 1) | (1, 0))
    }

    fn key(&self) -> (u32, u32, i32) {
        (self.level(), self.l, self.m)
    }
}

impl PartialOrd for ModeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModeIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// The five modes spanning the collisional invariants.
pub const COLLISIONAL_INVARIANTS: [(u32, u32, i32); 5] =
    [(0, 0, 0), (0, 1, -1), (0, 1, 0), (0, 1, 1), (1, 0, 0)];

/// All modes with `2n + l <= max_level`, in canonical order.
pub fn modes_up_to_level(max_level: u32) -> Vec<ModeIndex> {
    let mut out = Vec::new();
    for level in 0..=max_level {
        for l in (level % 2..=level).step_by(2) {
            let n = (level - l) / 2;
            for m in -(l as i32)..=(l as i32) {
                out.push(ModeIndex { n, l, m });
            }
        }
    }
    out
}

/// All modes with `n <= n_max`, `l <= l_max`, and optionally
/// `2n + l <= level_max`, in canonical order.
pub fn modes_in_grid(n_max: u32, l_max: u32, level_max: Option<u32>) -> Vec<ModeIndex> {
    let top = level_max.unwrap_or(2 * n_max + l_max).min(2 * n_max + l_max);
    modes_up_to_level(top)
        .into_iter()
        .filter(|m| m.n <= n_max && m.l <= l_max)
        .collect()
}

/// Finite expansion `Σ c_{n,l,m} φ_{n,l,m}` with every mode at level
/// `<= cutoff`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectralCoefficients {
    cutoff: u32,
    coeffs: BTreeMap<ModeIndex, f64>,
}

impl SpectralCoefficients {
    pub fn zeros(cutoff: u32) -> Self {
        Self {
            cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(mode: ModeIndex, cutoff: u32) -> Result<Self> {
        let mut c = Self::zeros(cutoff);
        c.set(mode, 1.0)?;
        Ok(c)
    }

    pub fn from_pairs(cutoff: u32, pairs: impl IntoIterator<Item = (ModeIndex, f64)>) -> Result<Self> {
        let mut c = Self::zeros(cutoff);
        for (mode, v) in pairs {
            c.set(mode, v)?;
        }
        Ok(c)
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn get(&self, mode: &ModeIndex) -> f64 {
        self.coeffs.get(mode).copied().unwrap_or(0.0)
    }

    /// Stores a coefficient; an explicit zero is kept so the mode keeps its
    /// row in serialized output.
    pub fn set(&mut self, mode: ModeIndex, value: f64) -> Result<()> {
        if mode.level() > self.cutoff {
            return Err(Error::Truncation {
                degree: mode.level(),
                cutoff: self.cutoff,
            });
        }
        self.coeffs.insert(mode, value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModeIndex, f64)> + '_ {
        self.coeffs.iter().map(|(m, v)| (*m, *v))
    }

    pub fn modes(&self) -> impl Iterator<Item = ModeIndex> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficientwise map, keeping the mode set.
    pub fn map(&self, mut f: impl FnMut(ModeIndex, f64) -> f64) -> Self {
        Self {
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|(m, v)| (*m, f(*m, *v))).collect(),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.values().map(|v| v * v).fold(0.0, |acc, x| acc + x).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|m| (self.get(m) - other.get(m)).abs())
            .fold(0.0, f64::max)
    }
}

/// Restriction to the collisional-invariant modes (the projection **P**).
pub fn project_collisional_invariants(c: &SpectralCoefficients) -> SpectralCoefficients {
    SpectralCoefficients {
        cutoff: c.cutoff,
        coeffs: c
            .coeffs
            .iter()
            .filter(|(m, _)| m.is_collisional_invariant())
            .map(|(m, v)| (*m, *v))
            .collect(),
    }
}

/// `(1 - P) c`.
pub fn project_nonkernel(c: &SpectralCoefficients) -> SpectralCoefficients {
    SpectralCoefficients {
        cutoff: c.cutoff,
        coeffs: c
            .coeffs
            .iter()
            .filter(|(m, _)| !m.is_collisional_invariant())
            .map(|(m, v)| (*m, *v))
            .collect(),
    }
}

/// Radial factor of `φ_{n,l,m}` at radius `r`.
pub fn radial_factor(n: u32, l: u32, r: f64) -> f64 {
    let u = 0.5 * r * r;
    let log_norm = -0.75 * 2f64.ln()
        + 0.5 * (2f64.ln() + ln_gamma(n as f64 + 1.0) - ln_gamma(n as f64 + l as f64 + 1.5));
    let power = if l == 0 { 1.0 } else { (r / 2f64.sqrt()).powi(l as i32) };
    log_norm.exp() * power * laguerre(n, l as f64 + 0.5, u) * (-0.5 * u).exp()
}

/// Polar angle cosine and azimuth in `[0, 2π)` of a non-zero vector.
fn direction(v: [f64; 3], r: f64) -> (f64, f64) {
    let cos_alpha = (v[2] / r).clamp(-1.0, 1.0);
    let mut beta = v[1].atan2(v[0]);
    if beta < 0.0 {
        beta += 2.0 * PI;
    }
    if beta >= 2.0 * PI {
        beta = 0.0;
    }
    (cos_alpha, beta)
}

/// `φ_{n,l,m}(v)`.
pub fn eigenfunction_value(mode: ModeIndex, v: [f64; 3]) -> f64 {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r == 0.0 {
        if mode.l > 0 {
            return 0.0;
        }
        return radial_factor(mode.n, 0, 0.0) * (4.0 * PI).powf(-0.5);
    }
    let (cos_alpha, beta) = direction(v, r);
    radial_factor(mode.n, mode.l, r) * spherical_harmonic(mode.l, mode.m, cos_alpha, beta)
}

/// Product quadrature in velocity space: generalized Gauss–Laguerre in
/// `u = |v|²/2` (weight `u^{1/2} e^{-u}`) × Gauss–Legendre in `cos α` ×
/// uniform azimuth.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    radii: Vec<f64>,
    /// Weights for `∫ g(r) r² dr` at `radii` (Gaussian factor removed).
    radial_weights: Vec<f64>,
    directions: Vec<(f64, f64)>,
    angular_weights: Vec<f64>,
    l_max: u32,
}

impl QuadratureGrid {
    pub fn radial_count(&self) -> usize {
        self.radii.len()
    }

    pub fn angular_count(&self) -> usize {
        self.directions.len()
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Velocity nodes with weights for `∫_{ℝ³} f(v) dv`.
    pub fn nodes(&self) -> impl Iterator<Item = ([f64; 3], f64)> + '_ {
        self.radii.iter().zip(&self.radial_weights).flat_map(move |(&r, &wr)| {
            self.directions
                .iter()
                .zip(&self.angular_weights)
                .map(move |(&(ca, b), &wa)| {
                    let sa = (1.0 - ca * ca).max(0.0).sqrt();
                    ([r * sa * b.cos(), r * sa * b.sin(), r * ca], wr * wa)
                })
        })
    }

    pub fn integrate(&self, f: impl Fn([f64; 3]) -> f64) -> f64 {
        self.nodes().map(|(v, w)| w * f(v)).sum()
    }
}

/// Builds a grid exact for inner products of modes up to the radial
/// exactness `2 n_radial - 1` in `u` and angular band limit `l_max`.
pub fn build_quadrature(n_radial: usize, l_max: u32) -> Result<QuadratureGrid> {
    if n_radial == 0 {
        return Err(Error::domain("build_quadrature", "need at least one radial node"));
    }
    let (u, wu) = gauss_laguerre(n_radial, 0.5);
    // ∫ g r² dr = √2 ∫ g u^{1/2} du, and the rule integrates u^{1/2} e^{-u}
    let radii = u.iter().map(|u| (2.0 * u).sqrt()).collect();
    let radial_weights = u
        .iter()
        .zip(&wu)
        .map(|(u, w)| 2f64.sqrt() * w * u.exp())
        .collect();
    let (ca, wa) = gauss_legendre(l_max as usize + 1);
    let n_az = 2 * l_max as usize + 2;
    let mut directions = Vec::with_capacity(ca.len() * n_az);
    let mut angular_weights = Vec::with_capacity(ca.len() * n_az);
    for (c, w) in ca.iter().zip(&wa) {
        for k in 0..n_az {
            directions.push((*c, 2.0 * PI * k as f64 / n_az as f64));
            angular_weights.push(w * 2.0 * PI / n_az as f64);
        }
    }
    Ok(QuadratureGrid {
        radii,
        radial_weights,
        directions,
        angular_weights,
        l_max,
    })
}

/// Projects point values of `f` onto every mode with `2n+l <= cutoff`.
///
/// Accuracy assumes `f` decays at least like a polynomial times
/// `e^{-|v|²/8}`; outside that class the result is only as good as the grid.
pub fn expand<F>(f: F, grid: &QuadratureGrid, cutoff: u32) -> SpectralCoefficients
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    expand_with(Execution::default(), f, grid, cutoff)
}

pub fn expand_with<F>(exec: Execution, f: F, grid: &QuadratureGrid, cutoff: u32) -> SpectralCoefficients
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    let nodes: Vec<([f64; 3], f64)> = grid.nodes().collect();
    let weighted: Vec<f64> = nodes.iter().map(|(v, w)| w * f(*v)).collect();
    let n_ang = grid.directions.len();

    // Y_l^m at every direction, per (l, m)
    let mut ylm: BTreeMap<(u32, i32), Vec<f64>> = BTreeMap::new();
    for l in 0..=cutoff {
        for m in -(l as i32)..=(l as i32) {
            ylm.insert(
                (l, m),
                grid.directions
                    .iter()
                    .map(|&(ca, b)| spherical_harmonic(l, m, ca, b))
                    .collect(),
            );
        }
    }
    let modes = modes_up_to_level(cutoff);
    let values = exec.map(&modes, |mode| {
        let y = &ylm[&(mode.l, mode.m)];
        let mut acc = 0.0;
        for (i, &r) in grid.radii.iter().enumerate() {
            let rad = radial_factor(mode.n, mode.l, r);
            let row = &weighted[i * n_ang..(i + 1) * n_ang];
            let ang: f64 = row.iter().zip(y).map(|(a, b)| a * b).sum();
            acc += rad * ang;
        }
        acc
    });
    SpectralCoefficients {
        cutoff,
        coeffs: modes.into_iter().zip(values).collect(),
    }
}

/// Pointwise `Σ c φ(v)`.
pub fn synthesize(c: &SpectralCoefficients, v: [f64; 3]) -> f64 {
    c.iter().map(|(m, x)| x * eigenfunction_value(m, v)).sum()
}

/// Exact tensor-Hermite expansion of `φ_{n,l,m}` (it lies in the degree
/// `2n+l` Hermite eigenspace), computed with a tensor Gauss–Hermite rule
/// that integrates the polynomial products exactly.
pub fn hermite_expansion(mode: ModeIndex, cutoff: u32) -> Result<HermiteCoefficients> {
    let level = mode.level();
    if level > cutoff {
        return Err(Error::Truncation {
            degree: level,
            cutoff,
        });
    }
    let q = level as usize + 4;
    let (x, w) = gauss_hermite(q);
    let mut out = HermiteCoefficients::zeros(3, cutoff)?;
    let targets: Vec<_> = multi_indices(3, level)
        .into_iter()
        .filter(|a| a.degree() == level)
        .collect();
    let mut sums = vec![0.0; targets.len()];
    for (i, &x0) in x.iter().enumerate() {
        for (j, &x1) in x.iter().enumerate() {
            for (k, &x2) in x.iter().enumerate() {
                let v = [x0, x1, x2];
                let weight = w[i] * w[j] * w[k] * (0.5 * (x0 * x0 + x1 * x1 + x2 * x2)).exp();
                let phi = eigenfunction_value(mode, v) * weight;
                for (s, a) in sums.iter_mut().zip(&targets) {
                    *s += phi * hermite_psi(a.0[0], x0) * hermite_psi(a.0[1], x1) * hermite_psi(a.0[2], x2);
                }
            }
        }
    }
    for (a, s) in targets.iter().zip(sums) {
        out.set(*a, s)?;
    }
    Ok(out)
}
