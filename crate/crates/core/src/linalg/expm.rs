//! Matrix exponential by scaling and squaring with a truncated Taylor series.

use super::CMat;
use crate::error::{Error, Result};

/// Scaled argument norm bound; with degree 18 the Taylor remainder is
/// below `0.5^19 / 19! ≈ 1.6e-23`.
const SCALED_NORM: f64 = 0.5;
const TAYLOR_DEGREE: usize = 18;

pub fn matrix_exp<const N: usize>(m: &CMat<N>) -> Result<CMat<N>> {
    m.ensure_finite()?;
    let norm = m.one_norm();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = m.scale_re(0.5_f64.powi(squarings));

    // Horner: I + A(I + A/2(I + A/3(...)))
    let id = CMat::<N>::identity();
    let mut acc = id;
    for k in (1..=TAYLOR_DEGREE).rev() {
        acc = id + (a * acc).scale_re(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = acc * acc;
        if !acc.is_finite() {
            return Err(Error::Overflow);
        }
    }
    if !acc.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(acc)
}
