//! Quadrature rules: Gauss–Legendre, Gauss–Hermite, generalized
//! Gauss–Laguerre, and globally adaptive Gauss–Kronrod (7/15) integration.

use crate::error::{Error, Result};
use crate::specfun::{laguerre, laguerre_derivative, ln_gamma};
use nalgebra::{DMatrix, SymmetricEigen};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Positive Kronrod abscissae on `[-1, 1]`; index 0 is the centre.
const XGK: [f64; 8] = [
    0.0,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.991_455_371_120_812_639_206_854_697_526_329,
];
const WGK: [f64; 8] = [
    0.209_482_141_084_727_828_012_999_174_891_714,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.022_935_322_010_529_224_963_732_008_058_970,
];
/// Gauss weights for Kronrod indices 0, 2, 4, 6.
const WG: [f64; 4] = [
    0.417_959_183_673_469_387_755_102_040_816_327,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.129_484_966_168_869_693_270_611_432_679_082,
];

const MAX_INTERVALS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// One G7/K15 panel: returns (Kronrod value, |Kronrod - Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for i in 1..8 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 0 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive G7/K15 over `[a, b]`.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    integrate_panels(f, &[a, b], f64::INFINITY, rel_tol, abs_tol)
}

/// Adaptive G7/K15 starting from the given breakpoints, with every initial
/// panel further split so that no panel is wider than `max_width`.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    max_width: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let pieces = if max_width.is_finite() {
            ((b - a) / max_width).ceil().max(1.0) as usize
        } else {
            1
        };
        let step = (b - a) / pieces as f64;
        for p in 0..pieces {
            let lo = a + p as f64 * step;
            let hi = if p + 1 == pieces { b } else { lo + step };
            let (value, error) = gk15(&f, lo, hi);
            evaluations += 15;
            heap.push(Segment {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
    }
    let total = |heap: &BinaryHeap<Segment>| -> (f64, f64) {
        // sum in a fixed order so the result does not depend on heap layout
        let mut segs: Vec<&Segment> = heap.iter().collect();
        segs.sort_by(|x, y| x.a.total_cmp(&y.a));
        segs.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut value, mut error) = total(&heap);
    let mut since_resum = 0;
    loop {
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature {
                context: "adaptive Gauss-Kronrod".into(),
                achieved: error,
                target,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            heap.push(worst);
            let (v, e) = total(&heap);
            if e <= abs_tol.max(rel_tol * v.abs()) * 10.0 {
                break;
            }
            return Err(Error::Quadrature {
                context: "adaptive Gauss-Kronrod (interval underflow)".into(),
                achieved: e,
                target: abs_tol.max(rel_tol * v.abs()),
            });
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evaluations += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        since_resum += 1;
        if since_resum == 64 {
            // refresh running sums to avoid drift from incremental updates
            let (v, e) = total(&heap);
            value = v;
            error = e;
            since_resum = 0;
        }
    }
    let (value, error) = total(&heap);
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

/// Integrates `f` over `(0, b]` where `f` may carry an integrable power-law
/// singularity at the origin.
///
/// Uses dyadic panels `[b 2^{-k-1}, b 2^{-k}]`; the contribution below the
/// last panel is extrapolated geometrically from the ratio of consecutive
/// panel integrals.
pub fn integrate_dyadic_to_zero<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    let max_panels = 1200;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut prev_panel: Option<f64> = None;
    let mut hi = b;
    for k in 0..max_panels {
        let lo = 0.5 * hi;
        let r = integrate_adaptive(&f, lo, hi, rel_tol * 0.1, abs_tol * 1e-3)?;
        value += r.value;
        error += r.error;
        evaluations += r.evaluations;
        let tail = match prev_panel {
            Some(p) if p != 0.0 => {
                let ratio = r.value / p;
                if (0.0..1.0).contains(&ratio) {
                    Some(r.value * ratio / (1.0 - ratio))
                } else {
                    None
                }
            }
            _ => None,
        };
        let target = abs_tol.max(rel_tol * value.abs());
        if r.value == 0.0 && k > 4 {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if let Some(t) = tail {
            if k >= 4 && t.abs() <= 0.5 * target {
                value += t;
                error += t.abs() * 0.1;
                return Ok(QuadResult {
                    value,
                    error,
                    evaluations,
                });
            }
        }
        prev_panel = Some(r.value);
        hi = lo;
        if hi < f64::MIN_POSITIVE {
            break;
        }
    }
    Err(Error::Quadrature {
        context: "dyadic integration toward the origin".into(),
        achieved: prev_panel.unwrap_or(f64::NAN).abs(),
        target: abs_tol.max(rel_tol * value.abs()),
    })
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre requires at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // P_n(z) and P_{n-1}(z)
            let (mut pm1, mut pn) = (1.0, z);
            for k in 1..n {
                let kf = k as f64;
                let next = ((2.0 * kf + 1.0) * z * pn - kf * pm1) / (kf + 1.0);
                pm1 = pn;
                pn = next;
            }
            dp = nf * (z * pn - pm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Golub–Welsch on a symmetric tridiagonal Jacobi matrix.
fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = diag[i];
        if i + 1 < n {
            jac[(i, i + 1)] = off[i];
            jac[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `n`-point Gauss rule for the weight `e^{-x²/2}` on ℝ.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64).sqrt()).collect();
    golub_welsch(&diag, &off, (2.0 * std::f64::consts::PI).sqrt())
}

/// `n`-point generalized Gauss–Laguerre rule for the weight `u^a e^{-u}` on
/// `(0, ∞)`, exact for polynomials of degree `<= 2n - 1`.
///
/// Nodes from Golub–Welsch are polished by Newton on `L_n^{(a)}`; weights
/// use `w_i = Γ(n+a+1) / (n! u_i [L_n^{(a)}'(u_i)]²)`.
pub fn gauss_laguerre(n: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1 && a > -1.0);
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect();
    let (mut nodes, _) = golub_welsch(&diag, &off, crate::specfun::gamma(a + 1.0));
    let nn = n as u32;
    let log_scale = ln_gamma(n as f64 + a + 1.0) - ln_gamma(n as f64 + 1.0);
    let weights = nodes
        .iter_mut()
        .map(|u| {
            for _ in 0..8 {
                let step = laguerre(nn, a, *u) / laguerre_derivative(nn, a, *u);
                *u -= step;
                if step.abs() <= 1e-15 * u.abs() {
                    break;
                }
            }
            let d = laguerre_derivative(nn, a, *u);
            (log_scale - u.ln() - 2.0 * d.abs().ln()).exp()
        })
        .collect();
    (nodes, weights)
}
