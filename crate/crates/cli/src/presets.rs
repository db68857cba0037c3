//! Named initial data for `evolve` and `norms`.
//!
//! | name                  | coefficients                                                   |
//! |-----------------------|----------------------------------------------------------------|
//! | `bimodal`             | (0,0,0)=1, (1,0,0)=0.2, (0,2,0)=0.5, (0,2,2)=-0.3, (2,0,0)=0.25, (1,2,1)=0.1, (0,4,0)=0.05 |
//! | `invariants`          | (0,0,0)=1, (0,1,-1)=0.1, (0,1,0)=-0.2, (0,1,1)=0.3, (1,0,0)=0.4 |
//! | `mode-N-L-M`          | unit coefficient on (N,L,M)                                    |
//! | `shifted-maxwellian`  | projection of `μ^{-1/2}(μ(v-u) - μ(v))`, `u = (0.5, 0, 0.3)`   |

use kinetic_spectra::eigenbasis::{build_quadrature, expand};
use kinetic_spectra::{ModeIndex, SpectralCoefficients};
use std::f64::consts::PI;

use crate::CliError;

pub const BIMODAL: &[(u32, u32, i32, f64)] = &[
    (0, 0, 0, 1.0),
    (1, 0, 0, 0.2),
    (0, 2, 0, 0.5),
    (0, 2, 2, -0.3),
    (2, 0, 0, 0.25),
    (1, 2, 1, 0.1),
    (0, 4, 0, 0.05),
];

pub const INVARIANTS: &[(u32, u32, i32, f64)] = &[
    (0, 0, 0, 1.0),
    (0, 1, -1, 0.1),
    (0, 1, 0, -0.2),
    (0, 1, 1, 0.3),
    (1, 0, 0, 0.4),
];

const SHIFT: [f64; 3] = [0.5, 0.0, 0.3];

fn from_table(table: &[(u32, u32, i32, f64)]) -> Result<SpectralCoefficients, CliError> {
    let pairs = table
        .iter()
        .map(|&(n, l, m, x)| Ok((ModeIndex::new(n, l, m)?, x)))
        .collect::<Result<Vec<_>, kinetic_spectra::Error>>()?;
    let cutoff = pairs.iter().map(|(m, _)| m.level()).max().unwrap_or(0);
    Ok(SpectralCoefficients::from_pairs(cutoff, pairs)?)
}

/// `level_max` and `radial_nodes` only affect presets built by quadrature.
pub fn preset(name: &str, level_max: u32, radial_nodes: usize) -> Result<SpectralCoefficients, CliError> {
    match name {
        "bimodal" => from_table(BIMODAL),
        "invariants" => from_table(INVARIANTS),
        "shifted-maxwellian" => {
            let grid = build_quadrature(radial_nodes, level_max)?;
            let f = |v: [f64; 3]| {
                let r2: f64 = v.iter().map(|x| x * x).sum();
                let d2: f64 = v.iter().zip(SHIFT).map(|(x, u)| (x - u).powi(2)).sum();
                (2.0 * PI).powf(-0.75) * ((-0.5 * d2 + 0.25 * r2).exp() - (-0.25 * r2).exp())
            };
            Ok(expand(f, &grid, level_max))
        }
        other => {
            if let Some(rest) = other.strip_prefix("mode-") {
                let parts: Vec<&str> = rest.splitn(3, '-').collect();
                // m may itself be negative: mode-0-2--1
                if parts.len() == 3 {
                    let n = parts[0].parse::<u32>();
                    let l = parts[1].parse::<u32>();
                    let m = parts[2].parse::<i32>();
                    if let (Ok(n), Ok(l), Ok(m)) = (n, l, m) {
                        let mode = ModeIndex::new(n, l, m)
                            .map_err(|_| CliError::Config(format!("invalid mode in preset {other:?}")))?;
                        return Ok(SpectralCoefficients::unit(mode, mode.level())?);
                    }
                }
            }
            Err(CliError::Config(format!(
                "unknown preset {other:?}; expected bimodal, invariants, shifted-maxwellian or mode-N-L-M"
            )))
        }
    }
}
