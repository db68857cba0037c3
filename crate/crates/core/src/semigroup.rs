//! Functional calculus on the shared eigenbasis.
//!
//! Every operator here is diagonal in `φ_{n,l,m}`, so fractional powers,
//! the multiplier `α = λ_B / λ_L^s`, and `e^{-tL}` are coefficientwise.

use crate::eigenbasis::{ModeIndex, SpectralCoefficients};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::spectra::{boltzmann_eigenvalue_nl, landau_eigenvalue, CrossSectionModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub enum OperatorSpec {
    Landau,
    Boltzmann { kernel: CrossSectionModel },
    /// `L_L^s` by functional calculus.
    FractionalLandau { s: f64 },
}

impl OperatorSpec {
    pub fn fractional_landau(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Kernel(format!("exponent s = {s} not in (0, 1)")));
        }
        Ok(Self::FractionalLandau { s })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Landau => "landau",
            Self::Boltzmann { .. } => "boltzmann",
            Self::FractionalLandau { .. } => "fractional-landau",
        }
    }

    fn eigenvalue_nl(&self, n: u32, l: u32) -> Result<f64> {
        let mode = ModeIndex::new(n, l, 0)?;
        if mode.is_collisional_invariant() {
            return Ok(0.0);
        }
        Ok(match self {
            Self::Landau => landau_eigenvalue(mode),
            Self::FractionalLandau { s } => fractional_power(landau_eigenvalue(mode), *s),
            Self::Boltzmann { kernel } => boltzmann_eigenvalue_nl(n, l, kernel)?,
        })
    }
}

/// `x^s` for `x >= 0`, with `0^s = 0`.
pub fn fractional_power(x: f64, s: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(s)
    }
}

/// Eigenvalue of the operator on `mode`; exactly 0 on collisional invariants.
pub fn eigenvalue_of(spec: &OperatorSpec, mode: ModeIndex) -> Result<f64> {
    spec.eigenvalue_nl(mode.n(), mode.l())
}

/// `α(2n+l, l(l+1)) = λ_B / λ_L^s`, extended by 1 on the kernel so that the
/// multiplier stays a positive isomorphism.
pub fn alpha_multiplier(mode: ModeIndex, kernel: &CrossSectionModel) -> Result<f64> {
    if mode.is_collisional_invariant() {
        return Ok(1.0);
    }
    let lb = boltzmann_eigenvalue_nl(mode.n(), mode.l(), kernel)?;
    Ok(lb / fractional_power(landau_eigenvalue(mode), kernel.exponent()))
}

/// An operator with its eigenvalues cached per `(n, l)`.
#[derive(Clone, Debug)]
pub struct DiagonalOperator {
    spec: OperatorSpec,
    eigenvalues: BTreeMap<(u32, u32), f64>,
}

impl DiagonalOperator {
    /// Precomputes eigenvalues for every `(n, l)` appearing in `modes`.
    pub fn new(spec: OperatorSpec, modes: impl IntoIterator<Item = ModeIndex>) -> Result<Self> {
        Self::new_with(Execution::default(), spec, modes)
    }

    pub fn new_with(exec: Execution, spec: OperatorSpec, modes: impl IntoIterator<Item = ModeIndex>) -> Result<Self> {
        let mut pairs: Vec<(u32, u32)> = modes.into_iter().map(|m| (m.n(), m.l())).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let values = exec.try_map(&pairs, |&(n, l)| spec.eigenvalue_nl(n, l))?;
        Ok(Self {
            spec,
            eigenvalues: pairs.into_iter().zip(values).collect(),
        })
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn eigenvalue(&self, mode: ModeIndex) -> Result<f64> {
        match self.eigenvalues.get(&(mode.n(), mode.l())) {
            Some(v) => Ok(*v),
            None => self.spec.eigenvalue_nl(mode.n(), mode.l()),
        }
    }

    fn map(&self, c: &SpectralCoefficients, f: impl Fn(f64, f64) -> f64) -> Result<SpectralCoefficients> {
        let mut out = SpectralCoefficients::zeros(c.cutoff());
        for (mode, x) in c.iter() {
            out.set(mode, f(self.eigenvalue(mode)?, x))?;
        }
        Ok(out)
    }

    /// `L c`.
    pub fn apply(&self, c: &SpectralCoefficients) -> Result<SpectralCoefficients> {
        self.map(c, |lambda, x| lambda * x)
    }

    /// `e^{-tL} c`; kernel coefficients are returned bit-for-bit.
    pub fn evolve(&self, c: &SpectralCoefficients, t: f64) -> Result<SpectralCoefficients> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::domain("evolve", format!("time t = {t} must be finite and >= 0")));
        }
        self.map(c, |lambda, x| if lambda == 0.0 { x } else { x * (-lambda * t).exp() })
    }

    /// `(L c, c)`.
    pub fn dirichlet_form(&self, c: &SpectralCoefficients) -> Result<f64> {
        let mut acc = 0.0;
        for (mode, x) in c.iter() {
            acc += self.eigenvalue(mode)? * x * x;
        }
        Ok(acc)
    }

    /// Norms and Dirichlet form of `e^{-tL} c0` at each sample time.
    pub fn trace(&self, c0: &SpectralCoefficients, times: &[f64]) -> Result<Vec<TraceRow>> {
        times
            .iter()
            .map(|&t| {
                let c = self.evolve(c0, t)?;
                Ok(TraceRow {
                    t,
                    l2_norm: c.l2_norm(),
                    l2_norm_nonkernel: crate::eigenbasis::project_nonkernel(&c).l2_norm(),
                    dirichlet_form: self.dirichlet_form(&c)?,
                })
            })
            .collect()
    }
}

/// `e^{-tL} c0` for a one-off evaluation.
pub fn evolve(c0: &SpectralCoefficients, spec: &OperatorSpec, t: f64) -> Result<SpectralCoefficients> {
    DiagonalOperator::new(spec.clone(), c0.modes())?.evolve(c0, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: f64,
    pub l2_norm: f64,
    pub l2_norm_nonkernel: f64,
    pub dirichlet_form: f64,
}

/// Relative `ℓ²` residual between `L_B c` and `α · L_L^s c`.
pub fn compose_check(c: &SpectralCoefficients, kernel: &CrossSectionModel) -> Result<f64> {
    let s = kernel.exponent();
    let boltz = DiagonalOperator::new(OperatorSpec::Boltzmann { kernel: kernel.clone() }, c.modes())?;
    let frac = DiagonalOperator::new(OperatorSpec::FractionalLandau { s }, c.modes())?;
    let lhs = boltz.apply(c)?;
    let frac_c = frac.apply(c)?;
    let mut rhs = SpectralCoefficients::zeros(c.cutoff());
    for (mode, x) in frac_c.iter() {
        let alpha = if mode.is_collisional_invariant() {
            1.0
        } else {
            boltz.eigenvalue(mode)? / frac.eigenvalue(mode)?
        };
        rhs.set(mode, alpha * x)?;
    }
    let num: f64 = lhs.iter().map(|(m, x)| (x - rhs.get(&m)).powi(2)).sum::<f64>().sqrt();
    if num == 0.0 {
        return Ok(0.0);
    }
    Ok(num / lhs.l2_norm())
}
