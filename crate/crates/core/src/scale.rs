//! Threshold comparisons and level windows.
//!
//! Every "distance at most t" test in the crate goes through [`within`], and
//! every "distance at least t" test through [`at_least`]. Both absorb a
//! relative rounding error of [`REL_TOL`] so that a distance that equals a
//! threshold in exact arithmetic (say `1/36` against `(1/6)^2`) compares the
//! same way regardless of how the two floats were produced.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

pub const REL_TOL: f64 = 1e-9;

/// `d <= t`, non-strict, up to relative rounding.
#[inline]
pub fn within(d: f64, t: f64) -> bool {
    d <= t + REL_TOL * t.abs().max(f64::MIN_POSITIVE)
}

/// `d >= t`, non-strict, up to relative rounding.
#[inline]
pub fn at_least(d: f64, t: f64) -> bool {
    d >= t - REL_TOL * t.abs()
}

/// Parses a scale parameter given either as a decimal (`0.1666`) or as a
/// rational literal (`1/6`).
pub fn parse_ratio(text: &str) -> Result<f64> {
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            num / den
        }
        None => text
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {text:?}")))?,
    };
    if !value.is_finite() {
        return Err(Error::Parse(format!("not finite: {text:?}")));
    }
    Ok(value)
}

/// `r^k` for an integer level.
#[inline]
pub fn level_scale(r: f64, k: i32) -> f64 {
    r.powi(k)
}

pub fn check_parameter(r: f64, strict: bool) -> Result<()> {
    let upper_ok = if strict {
        r < 1.0 / 6.0 && !within(1.0 / 6.0, r)
    } else {
        within(r, 1.0 / 6.0)
    };
    if r > 0.0 && upper_ok {
        Ok(())
    } else if strict {
        Err(Error::InvalidParameter(format!(
            "r = {r} must lie in (0, 1/6)"
        )))
    } else {
        Err(Error::InvalidParameter(format!(
            "r = {r} must lie in (0, 1/6]"
        )))
    }
}

/// Range of levels actually built, together with the truncation that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelWindow {
    pub k_min: i32,
    pub k_max: i32,
    /// True when the window was clamped to the analyzable range of a space.
    pub truncated: bool,
}

impl LevelWindow {
    pub fn new(k_min: i32, k_max: i32) -> Result<Self> {
        if k_min > k_max {
            return Err(Error::InvalidParameter(format!(
                "empty level range {k_min}..={k_max}"
            )));
        }
        Ok(Self {
            k_min,
            k_max,
            truncated: false,
        })
    }

    pub fn len(&self) -> usize {
        (self.k_max - self.k_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i32) -> bool {
        (self.k_min..=self.k_max).contains(&k)
    }

    pub fn levels(&self) -> impl Iterator<Item = i32> {
        self.k_min..=self.k_max
    }
}

/// Levels `k` with `r^k` in `[min positive distance / 2, 2 * diameter]`.
///
/// Outside this window every Rips scale is either below all distances (all
/// points isolated) or above all of them (one clique), so the structure is
/// constant there. A space with fewer than two points has no positive
/// distance; its window is the single level 0.
pub fn analyzable_window(space: &FiniteMetricSpace, r: f64) -> LevelWindow {
    let (Some(dmin), diam) = (space.min_positive_distance(), space.diameter()) else {
        return LevelWindow {
            k_min: 0,
            k_max: 0,
            truncated: true,
        };
    };
    let ln_r = r.ln();
    // r < 1, so r^k <= 2 diam  <=>  k >= ln(2 diam) / ln r.
    let lo = ((2.0 * diam).ln() / ln_r - 1e-9).ceil() as i32;
    let hi = ((dmin / 2.0).ln() / ln_r + 1e-9).floor() as i32;
    LevelWindow {
        k_min: lo,
        k_max: hi.max(lo),
        truncated: true,
    }
}
