//! Exact operator algebra on truncated tensor-Hermite expansions.
//!
//! A [`HermiteCoefficients`] value represents `f = Σ_α c_α Ψ_α` with
//! `Ψ_α(v) = Π_j ψ_{α_j}(v_j)` and `|α| <= K`. Position and derivative act
//! through the ladder relations
//!
//! ```text
//! v_j Ψ_α = √(α_j+1) Ψ_{α+e_j} + √α_j Ψ_{α-e_j}
//! ∂_j Ψ_α = ½ (√α_j Ψ_{α-e_j} - √(α_j+1) Ψ_{α+e_j})
//! ```
//!
//! Operations that would push a mode past the cutoff return
//! [`Error::Truncation`] instead of dropping it.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use std::collections::BTreeMap;

/// Multi-index `α ∈ ℕ^d`, `d <= 3`; unused trailing axes are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub [u32; 3]);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn unit(axis: usize) -> Self {
        let mut a = [0; 3];
        a[axis] = 1;
        MultiIndex(a)
    }

    fn shifted(&self, axis: usize, delta: i32) -> Option<Self> {
        let v = self.0[axis] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut a = self.0;
        a[axis] = v as u32;
        Some(MultiIndex(a))
    }
}

impl From<[u32; 3]> for MultiIndex {
    fn from(a: [u32; 3]) -> Self {
        MultiIndex(a)
    }
}

/// Finite expansion in the tensor Hermite basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCoefficients {
    dim: usize,
    cutoff: u32,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl HermiteCoefficients {
    pub fn zeros(dim: usize, cutoff: u32) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Dimension(format!("dimension {dim} not in 1..=3")));
        }
        Ok(Self {
            dim,
            cutoff,
            coeffs: BTreeMap::new(),
        })
    }

    /// Single basis function `Ψ_α`.
    pub fn basis(dim: usize, cutoff: u32, alpha: impl Into<MultiIndex>) -> Result<Self> {
        let mut c = Self::zeros(dim, cutoff)?;
        c.set(alpha, 1.0)?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn get(&self, alpha: impl Into<MultiIndex>) -> f64 {
        self.coeffs.get(&alpha.into()).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, alpha: impl Into<MultiIndex>, value: f64) -> Result<()> {
        let alpha = alpha.into();
        if alpha.0[self.dim..].iter().any(|&a| a != 0) {
            return Err(Error::Dimension(format!(
                "multi-index {:?} has entries beyond dimension {}",
                alpha.0, self.dim
            )));
        }
        if alpha.degree() > self.cutoff {
            return Err(Error::Truncation {
                degree: alpha.degree(),
                cutoff: self.cutoff,
            });
        }
        if value == 0.0 {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, value);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, f64)> + '_ {
        self.coeffs.iter().map(|(a, v)| (*a, *v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    pub fn inner(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .map(|(a, v)| v * other.coeffs.get(a).copied().unwrap_or(0.0))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.empty_like();
        for (a, v) in self.iter() {
            out.accumulate(a, factor * v);
        }
        out
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &Self, factor: f64) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, v) in other.iter() {
            out.accumulate(a, factor * v);
        }
        Ok(out)
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<MultiIndex> = self.coeffs.keys().copied().collect();
        keys.extend(other.coeffs.keys());
        keys.iter()
            .map(|a| (self.get(*a) - other.get(*a)).abs())
            .fold(0.0, f64::max)
    }

    fn empty_like(&self) -> Self {
        Self {
            dim: self.dim,
            cutoff: self.cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    fn accumulate(&mut self, alpha: MultiIndex, value: f64) {
        *self.coeffs.entry(alpha).or_insert(0.0) += value;
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, v| *v != 0.0);
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.cutoff != other.cutoff {
            return Err(Error::Dimension(format!(
                "(d={}, K={}) vs (d={}, K={})",
                self.dim, self.cutoff, other.dim, other.cutoff
            )));
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim {
            return Err(Error::Dimension(format!(
                "axis {axis} out of range for dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    fn check_raise(&self) -> Result<()> {
        if let Some(deg) = self.max_degree() {
            if deg >= self.cutoff {
                return Err(Error::Truncation {
                    degree: deg + 1,
                    cutoff: self.cutoff,
                });
            }
        }
        Ok(())
    }
}

/// Coefficients of `v_j · f`.
pub fn apply_position(c: &HermiteCoefficients, axis: usize) -> Result<HermiteCoefficients> {
    c.check_axis(axis)?;
    c.check_raise()?;
    let mut out = c.empty_like();
    for (a, v) in c.iter() {
        let n = a.0[axis] as f64;
        out.accumulate(a.shifted(axis, 1).expect("raise"), (n + 1.0).sqrt() * v);
        if let Some(lower) = a.shifted(axis, -1) {
            out.accumulate(lower, n.sqrt() * v);
        }
    }
    Ok(out.prune())
}

/// Coefficients of `∂_j f`.
pub fn apply_derivative(c: &HermiteCoefficients, axis: usize) -> Result<HermiteCoefficients> {
    c.check_axis(axis)?;
    c.check_raise()?;
    let mut out = c.empty_like();
    for (a, v) in c.iter() {
        let n = a.0[axis] as f64;
        out.accumulate(a.shifted(axis, 1).expect("raise"), -0.5 * (n + 1.0).sqrt() * v);
        if let Some(lower) = a.shifted(axis, -1) {
            out.accumulate(lower, 0.5 * n.sqrt() * v);
        }
    }
    Ok(out.prune())
}

/// `H = -Δ_v + |v|²/4`, diagonal with eigenvalue `d/2 + |α|`.
pub fn apply_harmonic_oscillator(c: &HermiteCoefficients) -> HermiteCoefficients {
    let half_d = c.dim as f64 / 2.0;
    let mut out = c.empty_like();
    for (a, v) in c.iter() {
        out.accumulate(a, (half_d + a.degree() as f64) * v);
    }
    out.prune()
}

/// Orthogonal projection onto the degree-`k` Hermite eigenspace.
pub fn project_degree(c: &HermiteCoefficients, k: u32) -> HermiteCoefficients {
    let mut out = c.empty_like();
    for (a, v) in c.iter().filter(|(a, _)| a.degree() == k) {
        out.accumulate(a, v);
    }
    out
}

/// One-dimensional second-order ladder words acting on `ψ_n`.
#[derive(Clone, Copy)]
enum Word {
    /// `x²`
    PositionSquared,
    /// `d²/dx²`
    DerivativeSquared,
    /// `x d/dx`
    PositionDerivative,
}

impl Word {
    /// `(shift, coefficient)` pairs for the action on `ψ_n`.
    fn action(self, n: u32) -> [(i32, f64); 3] {
        let nf = n as f64;
        let up = ((nf + 1.0) * (nf + 2.0)).sqrt();
        let down = (nf * (nf - 1.0)).max(0.0).sqrt();
        match self {
            Word::PositionSquared => [(2, up), (0, 2.0 * nf + 1.0), (-2, down)],
            Word::DerivativeSquared => [
                (2, 0.25 * up),
                (0, -0.25 * (2.0 * nf + 1.0)),
                (-2, 0.25 * down),
            ],
            Word::PositionDerivative => [(2, -0.5 * up), (0, -0.5), (-2, 0.5 * down)],
        }
    }
}

/// Applies `word_j ⊗ word_k` keeping only the terms whose shifts cancel.
///
/// For the rotation-field words the off-degree terms cancel identically
/// once summed, so only degree-preserving pieces are formed.
fn apply_pair_degree_preserving(
    c: &HermiteCoefficients,
    out: &mut HermiteCoefficients,
    j: usize,
    wj: Word,
    k: usize,
    wk: Word,
    weight: f64,
) {
    for (a, v) in c.iter() {
        for (sj, cj) in wj.action(a.0[j]) {
            for (sk, ck) in wk.action(a.0[k]) {
                if sj + sk != 0 || cj == 0.0 || ck == 0.0 {
                    continue;
                }
                let target = a.shifted(j, sj).and_then(|b| b.shifted(k, sk));
                if let Some(t) = target {
                    out.accumulate(t, weight * cj * ck * v);
                }
            }
        }
    }
}

fn apply_single_degree_preserving(
    c: &HermiteCoefficients,
    out: &mut HermiteCoefficients,
    j: usize,
    w: Word,
    weight: f64,
) {
    for (a, v) in c.iter() {
        for (s, cw) in w.action(a.0[j]) {
            if s == 0 {
                out.accumulate(a, weight * cw * v);
            }
        }
    }
}

/// Laplace–Beltrami operator `Δ_{S^{d-1}} = Σ_{j<k} (v_j∂_k - v_k∂_j)²`.
///
/// Each square expands to the six ladder words
/// `v_j²∂_k² + v_k²∂_j² - v_j∂_j - v_k∂_k - 2 (v_j∂_j)(v_k∂_k)`,
/// applied directly in degree-preserving form, so the operator never leaves
/// the truncated space.
pub fn apply_laplace_beltrami(c: &HermiteCoefficients) -> HermiteCoefficients {
    let mut out = c.empty_like();
    let d = c.dim;
    for j in 0..d {
        for k in (j + 1)..d {
            use Word::*;
            apply_pair_degree_preserving(c, &mut out, j, PositionSquared, k, DerivativeSquared, 1.0);
            apply_pair_degree_preserving(c, &mut out, k, PositionSquared, j, DerivativeSquared, 1.0);
            apply_single_degree_preserving(c, &mut out, j, PositionDerivative, -1.0);
            apply_single_degree_preserving(c, &mut out, k, PositionDerivative, -1.0);
            apply_pair_degree_preserving(
                c,
                &mut out,
                j,
                PositionDerivative,
                k,
                PositionDerivative,
                -2.0,
            );
        }
    }
    out.prune()
}

/// Linearized Landau operator for Maxwellian molecules,
///
/// ```text
/// L = (d-1)(H - d/2) - Δ_S
///   + [Δ_S - (d-1)(H - d/2)] ℙ_1
///   + [-Δ_S - (d-1)(H - d/2)] ℙ_2
/// ```
pub fn apply_linearized_landau(c: &HermiteCoefficients) -> Result<HermiteCoefficients> {
    if !(2..=3).contains(&c.dim) {
        return Err(Error::Dimension(format!(
            "linearized Landau operator needs d in {{2, 3}}, got {}",
            c.dim
        )));
    }
    let dm1 = c.dim as f64 - 1.0;
    let half_d = c.dim as f64 / 2.0;
    // (d-1)(H - d/2) g
    let shifted_oscillator = |g: &HermiteCoefficients| -> Result<HermiteCoefficients> {
        apply_harmonic_oscillator(g)
            .add_scaled(g, -half_d)
            .map(|x| x.scaled(dm1))
    };

    let main = shifted_oscillator(c)?.add_scaled(&apply_laplace_beltrami(c), -1.0)?;

    let p1 = project_degree(c, 1);
    let first = apply_laplace_beltrami(&p1).add_scaled(&shifted_oscillator(&p1)?, -1.0)?;

    let p2 = project_degree(c, 2);
    let second = apply_laplace_beltrami(&p2)
        .scaled(-1.0)
        .add_scaled(&shifted_oscillator(&p2)?, -1.0)?;

    Ok(main.add_scaled(&first, 1.0)?.add_scaled(&second, 1.0)?.prune())
}

/// All multi-indices with `|α| <= cutoff` in dimension `dim`, ordered by
/// degree then lexicographically.
pub fn multi_indices(dim: usize, cutoff: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for deg in 0..=cutoff {
        let mut level = Vec::new();
        match dim {
            1 => level.push(MultiIndex([deg, 0, 0])),
            2 => {
                for a in 0..=deg {
                    level.push(MultiIndex([a, deg - a, 0]));
                }
            }
            _ => {
                for a in 0..=deg {
                    for b in 0..=(deg - a) {
                        level.push(MultiIndex([a, b, deg - a - b]));
                    }
                }
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}

/// Dense matrix of a linear operator on the truncated space, with columns
/// the images of the basis vectors in [`multi_indices`] order.
pub fn operator_matrix<F>(dim: usize, cutoff: u32, op: F) -> Result<(Vec<MultiIndex>, DMatrix<f64>)>
where
    F: Fn(&HermiteCoefficients) -> Result<HermiteCoefficients>,
{
    let basis = multi_indices(dim, cutoff);
    let index: BTreeMap<MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut m = DMatrix::zeros(basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        let image = op(&HermiteCoefficients::basis(dim, cutoff, *alpha)?)?;
        for (a, v) in image.iter() {
            let row = *index.get(&a).ok_or(Error::Truncation {
                degree: a.degree(),
                cutoff,
            })?;
            m[(row, col)] = v;
        }
    }
    Ok((basis, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite;
    use crate::specfun::hermite_psi;

    fn basis3(a: [u32; 3]) -> HermiteCoefficients {
        HermiteCoefficients::basis(3, 10, a).unwrap()
    }

    fn assert_coeffs(c: &HermiteCoefficients, expect: &[([u32; 3], f64)], tol: f64) {
        let mut e = c.empty_like();
        for (a, v) in expect {
            e.accumulate(MultiIndex(*a), *v);
        }
        let d = c.max_abs_diff(&e);
        assert!(d <= tol, "got {c:?}, expected {expect:?}, diff {d}");
    }

    /// Verifies the 1-D ladder coefficients against quadrature inner products
    /// of `x ψ_n` and `ψ_n'` with `ψ_m`.
    #[test]
    fn ladder_coefficients_match_quadrature() {
        let (x, w) = gauss_hermite(40);
        let h = 1e-5;
        for n in 0..10u32 {
            for m in 0..12u32 {
                let pos: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&x, &w)| w * (0.5 * x * x).exp() * x * hermite_psi(n, x) * hermite_psi(m, x))
                    .sum();
                let der: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&x, &w)| {
                        let d = (hermite_psi(n, x + h) - hermite_psi(n, x - h)) / (2.0 * h);
                        w * (0.5 * x * x).exp() * d * hermite_psi(m, x)
                    })
                    .sum();
                let nf = n as f64;
                let (ep, ed) = if m == n + 1 {
                    ((nf + 1.0).sqrt(), -0.5 * (nf + 1.0).sqrt())
                } else if m + 1 == n {
                    (nf.sqrt(), 0.5 * nf.sqrt())
                } else {
                    (0.0, 0.0)
                };
                assert!((pos - ep).abs() < 1e-10, "x: n={n} m={m}");
                assert!((der - ed).abs() < 1e-8, "d/dx: n={n} m={m}");
            }
        }
    }

    #[test]
    fn position_examples() {
        let psi0 = basis3([0, 0, 0]);
        for k in 0..3 {
            let r = apply_position(&psi0, k).unwrap();
            assert_coeffs(&r, &[(MultiIndex::unit(k).0, 1.0)], 1e-15);
        }
        let r = apply_position(&apply_position(&psi0, 0).unwrap(), 2).unwrap();
        assert_coeffs(&r, &[([1, 0, 1], 1.0)], 1e-15);
        let r = apply_position(&apply_position(&psi0, 1).unwrap(), 1).unwrap();
        assert_coeffs(&r, &[([0, 2, 0], 2f64.sqrt()), ([0, 0, 0], 1.0)], 1e-15);
    }

    #[test]
    fn truncation_is_rejected() {
        let top = HermiteCoefficients::basis(3, 4, [2, 2, 0]).unwrap();
        assert!(matches!(apply_position(&top, 0), Err(Error::Truncation { .. })));
        assert!(matches!(apply_derivative(&top, 1), Err(Error::Truncation { .. })));
        let mut c = HermiteCoefficients::zeros(3, 4).unwrap();
        assert!(c.set([3, 2, 0], 1.0).is_err());
        assert!(apply_position(&basis3([0, 0, 0]), 3).is_err());
        assert!(HermiteCoefficients::zeros(2, 4).unwrap().set([0, 0, 1], 1.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        let psi0 = HermiteCoefficients::basis(1, 6, [0, 0, 0]).unwrap();
        let r = apply_derivative(&psi0, 0).unwrap();
        assert_coeffs(&r, &[([1, 0, 0], -0.5)], 1e-15);
    }

    #[test]
    fn derivative_is_antisymmetric_on_interior() {
        let k = 8;
        let (basis, m) = operator_matrix(3, k, |c| {
            let interior = c.max_degree().unwrap_or(0) < k;
            if interior {
                apply_derivative(c, 1)
            } else {
                Ok(c.empty_like())
            }
        })
        .unwrap();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if a.degree() < k && b.degree() < k {
                    assert!((m[(i, j)] + m[(j, i)]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn rotation_generator_kills_radial_functions() {
        // |v|² Ψ_0 = Σ_k (√2 Ψ_{2e_k} + Ψ_0)
        let mut radial = HermiteCoefficients::zeros(3, 6).unwrap();
        radial.set([0, 0, 0], 3.0).unwrap();
        for k in 0..3 {
            radial.set(MultiIndex::unit(k).0.map(|x| 2 * x), 2f64.sqrt()).unwrap();
        }
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            let a = apply_derivative(&radial, k).unwrap();
            let a = apply_position(&a, j).unwrap();
            let b = apply_derivative(&radial, j).unwrap();
            let b = apply_position(&b, k).unwrap();
            let gen = a.add_scaled(&b, -1.0).unwrap();
            assert!(gen.norm() < 1e-14);
        }
        assert!(apply_laplace_beltrami(&radial).norm() < 1e-10);
    }

    #[test]
    fn oscillator_examples() {
        let r = apply_harmonic_oscillator(&basis3([0, 0, 0]));
        assert_coeffs(&r, &[([0, 0, 0], 1.5)], 0.0);
        let r = apply_harmonic_oscillator(&basis3([2, 0, 0]));
        assert_coeffs(&r, &[([2, 0, 0], 3.5)], 0.0);
        let two = basis3([1, 0, 0]).add_scaled(&basis3([0, 1, 1]), 2.0).unwrap();
        let r = apply_harmonic_oscillator(&two);
        assert_coeffs(&r, &[([1, 0, 0], 2.5), ([0, 1, 1], 7.0)], 1e-15);
    }

    #[test]
    fn laplace_beltrami_identities() {
        for j in 0..3 {
            let e = MultiIndex::unit(j).0;
            let r = apply_laplace_beltrami(&basis3(e));
            assert_coeffs(&r, &[(e, -2.0)], 1e-12);

            let two = e.map(|x| 2 * x);
            let mut expect = vec![(two, -4.0)];
            for k in (0..3).filter(|&k| k != j) {
                expect.push((MultiIndex::unit(k).0.map(|x| 2 * x), 2.0));
            }
            assert_coeffs(&apply_laplace_beltrami(&basis3(two)), &expect, 1e-12);
        }
        assert_coeffs(&apply_laplace_beltrami(&basis3([1, 1, 0])), &[([1, 1, 0], -6.0)], 1e-12);
        for j in 0..2 {
            let e = MultiIndex::unit(j).0;
            let c = HermiteCoefficients::basis(2, 6, e).unwrap();
            assert_coeffs(&apply_laplace_beltrami(&c), &[(e, -1.0)], 1e-12);
        }
    }

    /// Expanding the squares through the raw ladder actions (with headroom
    /// for the transient degree) must agree with the degree-preserving form.
    #[test]
    fn symbolic_composition_matches_raw_ladder_products() {
        let k_small = 5;
        let k_big = k_small + 4;
        for alpha in multi_indices(3, k_small) {
            let c = HermiteCoefficients::basis(3, k_big, alpha).unwrap();
            let mut raw = c.empty_like();
            for (j, k) in [(0, 1), (0, 2), (1, 2)] {
                let rot = |g: &HermiteCoefficients| -> HermiteCoefficients {
                    let a = apply_position(&apply_derivative(g, k).unwrap(), j).unwrap();
                    let b = apply_position(&apply_derivative(g, j).unwrap(), k).unwrap();
                    a.add_scaled(&b, -1.0).unwrap()
                };
                raw = raw.add_scaled(&rot(&rot(&c)), 1.0).unwrap();
            }
            let fast = apply_laplace_beltrami(&c);
            assert!(raw.max_abs_diff(&fast) < 1e-12, "alpha {alpha:?}");
        }
    }

    #[test]
    fn projection_examples() {
        let e2 = basis3([0, 1, 0]);
        assert_eq!(project_degree(&e2, 1), e2);
        assert!(project_degree(&e2, 2).is_empty());
    }

    #[test]
    fn landau_examples() {
        let r = apply_linearized_landau(&basis3([0, 0, 0])).unwrap();
        assert!(r.norm() < 1e-14);
        let mut energy = HermiteCoefficients::zeros(3, 10).unwrap();
        for k in 0..3 {
            energy.set(MultiIndex::unit(k).0.map(|x| 2 * x), 1.0).unwrap();
        }
        assert!(apply_linearized_landau(&energy).unwrap().norm() < 1e-13);
        for j in 0..3 {
            let r = apply_linearized_landau(&basis3(MultiIndex::unit(j).0)).unwrap();
            assert!(r.norm() < 1e-14);
        }
        let one_d = HermiteCoefficients::basis(1, 4, [1, 0, 0]).unwrap();
        assert!(apply_linearized_landau(&one_d).is_err());
    }

    #[test]
    fn oscillator_commutes_with_laplace_beltrami() {
        let (_, h) = operator_matrix(3, 8, |c| Ok(apply_harmonic_oscillator(c))).unwrap();
        let (_, lb) = operator_matrix(3, 8, |c| Ok(apply_laplace_beltrami(c))).unwrap();
        let comm = &h * &lb - &lb * &h;
        assert!(comm.amax() < 1e-12);
    }

    #[test]
    fn landau_matrix_symmetric_psd_with_five_dimensional_kernel() {
        for k in [4, 6] {
            let (_, m) = operator_matrix(3, k, apply_linearized_landau).unwrap();
            assert!((&m - m.transpose()).amax() < 1e-12);
            let eig = nalgebra::SymmetricEigen::new(m);
            let zeros = eig.eigenvalues.iter().filter(|v| v.abs() < 1e-10).count();
            assert_eq!(zeros, 5);
            assert!(eig.eigenvalues.iter().all(|&v| v > -1e-10));
        }
    }
}
