//! Leading-order level estimates from the harmonic model of each well.

use serde::{Deserialize, Serialize};

use crate::arnold::{harmonic_wells, HarmonicWell};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// `E_n = V(0) + (2n+1)·Λ·√(V''(0)/2)` for n = 0..=n_max.
pub fn central_levels(p: &Polynomial, n_max: usize, lambda: f64) -> Result<Vec<f64>> {
    let curvature = 2.0 * p.coeff(2);
    let slope = p.coeff(1);
    if slope != 0.0 || !(curvature > 0.0) {
        return Err(Error::OriginNotAWell { curvature });
    }
    let well = HarmonicWell {
        x: 0.0,
        depth: p.coeff(0),
        half_curvature: 0.5 * curvature,
    };
    Ok(off_central_levels(&well, n_max, lambda))
}

/// `E_m = F + (2m+1)·Λ·√G` for m = 0..=m_max. In a symmetric potential each
/// value stands for a parity doublet the harmonic model cannot split.
pub fn off_central_levels(well: &HarmonicWell, m_max: usize, lambda: f64) -> Vec<f64> {
    (0..=m_max).map(|m| well.level(m, lambda)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicSpectrum {
    pub central_levels: Vec<f64>,
    pub off_central_doublets: Vec<f64>,
    /// √c: level spacing / 2Λ in the central well.
    pub spring_central: f64,
    /// Ω: level spacing / 2Λ in the outermost right well.
    pub spring_off_central: f64,
    pub off_central_well: HarmonicWell,
}

/// Central and outermost-well ladders of a potential with a well at the
/// origin and at least one well at x > 0.
pub fn harmonic_spectrum(
    p: &Polynomial,
    window: f64,
    n_max: usize,
    m_max: usize,
    lambda: f64,
) -> Result<HarmonicSpectrum> {
    let central = central_levels(p, n_max, lambda)?;
    let wells = harmonic_wells(p, window)?;
    let outer = wells
        .iter()
        .copied()
        .filter(|w| w.x > 0.0)
        .max_by(|a, b| a.x.total_cmp(&b.x))
        .ok_or_else(|| Error::InvalidParameter("no off-central well at x > 0".into()))?;
    Ok(HarmonicSpectrum {
        central_levels: central,
        off_central_doublets: off_central_levels(&outer, m_max, lambda),
        spring_central: p.coeff(2).sqrt(),
        spring_off_central: outer.half_curvature.sqrt(),
        off_central_well: outer,
    })
}
