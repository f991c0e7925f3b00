//! Spline reconstruction of dropped samples.
//!
//! Every fitted spline is stored piecewise in local coordinates: on segment
//! `i` (between knots `x[i]` and `x[i+1]`) the polynomial is
//! `c0 + c1*d + c2*d^2 + c3*d^3` with `d = x - x[i]`. Knot abscissae are
//! sample indices, so global power-basis coefficients would be badly
//! conditioned for long signals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pcm_model::{AudioObject, ModelError, SparseObject};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpolationError {
    #[error("{order} spline needs at least {needed} knots, got {found}")]
    TooFewKnots {
        order: SplineOrder,
        needed: usize,
        found: usize,
    },
    #[error("knot abscissae must be strictly increasing (violated at index {index})")]
    NonMonotonicKnots { index: usize },
    #[error("knot set has {xs} abscissae but {ys} ordinates")]
    KnotLengthMismatch { xs: usize, ys: usize },
    #[error("knot {index} is not finite")]
    NonFiniteKnot { index: usize },
    #[error("object {object_index} has no known samples")]
    AllMissing { object_index: usize },
    #[error("mask has {mask} entries but object has {values} values")]
    MaskLengthMismatch { mask: usize, values: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplineOrder {
    Linear,
    Quadratic,
    #[default]
    Cubic,
}

impl SplineOrder {
    pub fn min_knots(self) -> usize {
        match self {
            SplineOrder::Linear => 2,
            SplineOrder::Quadratic => 3,
            SplineOrder::Cubic => 4,
        }
    }

    fn lower(self) -> Option<SplineOrder> {
        match self {
            SplineOrder::Linear => None,
            SplineOrder::Quadratic => Some(SplineOrder::Linear),
            SplineOrder::Cubic => Some(SplineOrder::Quadratic),
        }
    }

    /// Highest order not above `self` that `knots` knots can support.
    pub fn feasible(self, knots: usize) -> Option<SplineOrder> {
        let mut order = self;
        while knots < order.min_knots() {
            order = order.lower()?;
        }
        Some(order)
    }
}

impl fmt::Display for SplineOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SplineOrder::Linear => "linear",
            SplineOrder::Quadratic => "quadratic",
            SplineOrder::Cubic => "cubic",
        })
    }
}

impl FromStr for SplineOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(SplineOrder::Linear),
            "quadratic" => Ok(SplineOrder::Quadratic),
            "cubic" => Ok(SplineOrder::Cubic),
            other => Err(format!("unknown spline order '{other}'")),
        }
    }
}

/// Known `(x, f(x))` points with strictly increasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl KnotSet {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, InterpolationError> {
        if xs.len() != ys.len() {
            return Err(InterpolationError::KnotLengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if let Some(index) = xs
            .iter()
            .zip(&ys)
            .position(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(InterpolationError::NonFiniteKnot { index });
        }
        if let Some(w) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(InterpolationError::NonMonotonicKnots { index: w + 1 });
        }
        Ok(Self { xs, ys })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn slopes(&self) -> Vec<f64> {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    fn widths(&self) -> Vec<f64> {
        self.xs.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// A fitted spline: one local cubic (possibly with zero high-order terms) per
/// knot interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    order: SplineOrder,
    breaks: Vec<f64>,
    coeffs: Vec<[f64; 4]>,
}

impl PiecewisePolynomial {
    /// The order actually fitted, lower than requested if there were too few
    /// knots.
    pub fn order(&self) -> SplineOrder {
        self.order
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    /// Local coefficients `[c0, c1, c2, c3]` per segment.
    pub fn coeffs(&self) -> &[[f64; 4]] {
        &self.coeffs
    }

    pub fn segments(&self) -> usize {
        self.coeffs.len()
    }

    /// Segment whose interval contains `x`; outside the knot range the first
    /// or last segment is used.
    pub fn segment_index(&self, x: f64) -> usize {
        let interior = &self.breaks[1..self.breaks.len() - 1];
        interior.partition_point(|&b| b <= x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment_index(x);
        self.eval_segment(i, x)
    }

    pub fn eval_segment(&self, segment: usize, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.coeffs[segment];
        let d = x - self.breaks[segment];
        ((c3 * d + c2) * d + c1) * d + c0
    }

    /// `k`-th derivative (`k <= 3`) of segment `segment`'s polynomial at `x`.
    pub fn derivative_segment(&self, segment: usize, x: f64, k: u32) -> f64 {
        let [_, c1, c2, c3] = self.coeffs[segment];
        let d = x - self.breaks[segment];
        match k {
            0 => self.eval_segment(segment, x),
            1 => (3.0 * c3 * d + 2.0 * c2) * d + c1,
            2 => 6.0 * c3 * d + 2.0 * c2,
            3 => 6.0 * c3,
            _ => 0.0,
        }
    }

    pub fn derivative(&self, x: f64, k: u32) -> f64 {
        self.derivative_segment(self.segment_index(x), x, k)
    }
}

fn require(knots: &KnotSet, order: SplineOrder) -> Result<(), InterpolationError> {
    if knots.len() < order.min_knots() {
        return Err(InterpolationError::TooFewKnots {
            order,
            needed: order.min_knots(),
            found: knots.len(),
        });
    }
    Ok(())
}

/// Chords between consecutive knots.
pub fn fit_linear(knots: &KnotSet) -> Result<PiecewisePolynomial, InterpolationError> {
    require(knots, SplineOrder::Linear)?;
    let coeffs = knots
        .ys
        .iter()
        .zip(knots.slopes())
        .map(|(&y, s)| [y, s, 0.0, 0.0])
        .collect();
    Ok(PiecewisePolynomial {
        order: SplineOrder::Linear,
        breaks: knots.xs.clone(),
        coeffs,
    })
}

/// C¹ quadratic spline. The first segment is a straight line, which fixes the
/// one free start condition; each later segment inherits the slope at its
/// left knot.
///
/// With only two knots this degrades to [`fit_linear`].
pub fn fit_quadratic(knots: &KnotSet) -> Result<PiecewisePolynomial, InterpolationError> {
    if knots.len() < SplineOrder::Quadratic.min_knots() {
        return fit_linear(knots);
    }
    let slopes = knots.slopes();
    let widths = knots.widths();
    let mut coeffs = Vec::with_capacity(slopes.len());
    let mut d = slopes[0];
    for ((&y, &s), &h) in knots.ys.iter().zip(&slopes).zip(&widths) {
        let c2 = (s - d) / h;
        coeffs.push([y, d, c2, 0.0]);
        d += 2.0 * c2 * h;
    }
    Ok(PiecewisePolynomial {
        order: SplineOrder::Quadratic,
        breaks: knots.xs.clone(),
        coeffs,
    })
}

/// Natural cubic spline (zero second derivative at both ends), solved for the
/// knot second derivatives with the Thomas algorithm.
///
/// With two or three knots this degrades to [`fit_linear`] / [`fit_quadratic`].
pub fn fit_cubic(knots: &KnotSet) -> Result<PiecewisePolynomial, InterpolationError> {
    if knots.len() < SplineOrder::Cubic.min_knots() {
        return fit_quadratic(knots);
    }
    let slopes = knots.slopes();
    let h = knots.widths();
    let n = h.len();

    // Interior unknowns m[1..n]; m[0] = m[n] = 0.
    let mut m = vec![0.0; n + 1];
    let size = n - 1;
    let mut diag = vec![0.0; size];
    let mut upper = vec![0.0; size];
    let mut rhs = vec![0.0; size];
    for j in 0..size {
        let i = j + 1;
        diag[j] = 2.0 * (h[i - 1] + h[i]);
        upper[j] = h[i];
        rhs[j] = 6.0 * (slopes[i] - slopes[i - 1]);
    }
    // forward sweep; sub-diagonal entry of row j is h[j]
    for j in 1..size {
        let w = h[j] / diag[j - 1];
        diag[j] -= w * upper[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    m[size] = rhs[size - 1] / diag[size - 1];
    for j in (0..size - 1).rev() {
        m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
    }

    let coeffs = (0..n)
        .map(|i| {
            let c1 = slopes[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
            let c2 = m[i] / 2.0;
            let c3 = (m[i + 1] - m[i]) / (6.0 * h[i]);
            [knots.ys[i], c1, c2, c3]
        })
        .collect();
    Ok(PiecewisePolynomial {
        order: SplineOrder::Cubic,
        breaks: knots.xs.clone(),
        coeffs,
    })
}

pub fn fit(knots: &KnotSet, order: SplineOrder) -> Result<PiecewisePolynomial, InterpolationError> {
    match order {
        SplineOrder::Linear => fit_linear(knots),
        SplineOrder::Quadratic => fit_quadratic(knots),
        SplineOrder::Cubic => fit_cubic(knots),
    }
}

/// How the missing samples of a reconstruction were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AppliedOrder {
    /// Nothing was missing.
    None,
    /// A single known sample; everything else holds it.
    Hold,
    Spline(SplineOrder),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub object: AudioObject,
    pub applied: AppliedOrder,
}

/// Fill every missing sample of `sparse`.
///
/// Known samples are copied verbatim. Gaps between known samples are filled
/// by evaluating the spline at the missing index; samples before the first or
/// after the last known one hold the nearest known value.
pub fn reconstruct(
    sparse: &SparseObject,
    order: SplineOrder,
) -> Result<Reconstruction, InterpolationError> {
    if sparse.known_mask.len() != sparse.values.len() {
        return Err(InterpolationError::MaskLengthMismatch {
            mask: sparse.known_mask.len(),
            values: sparse.values.len(),
        });
    }
    let label = format!("obj{}", sparse.object_index);
    let known: Vec<usize> = sparse.known_indices().collect();
    let (&first, &last) = match (known.first(), known.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(InterpolationError::AllMissing {
                object_index: sparse.object_index,
            })
        }
    };

    let mut out = sparse.values.clone();
    out[..first].fill(sparse.values[first]);
    out[last + 1..].fill(sparse.values[last]);

    let interior_gaps = last + 1 - first > known.len();
    let applied = if known.len() == out.len() {
        AppliedOrder::None
    } else if known.len() == 1 {
        AppliedOrder::Hold
    } else {
        let effective = order.feasible(known.len()).unwrap_or(SplineOrder::Linear);
        if interior_gaps {
            let xs = known.iter().map(|&i| i as f64).collect();
            let ys = known.iter().map(|&i| f64::from(sparse.values[i])).collect();
            let spline = fit(&KnotSet::new(xs, ys)?, effective)?;
            for (segment, pair) in known.windows(2).enumerate() {
                let (lo, hi) = (pair[0] + 1, pair[1]);
                for (t, v) in (lo..hi).zip(&mut out[lo..hi]) {
                    *v = spline.eval_segment(segment, t as f64) as f32;
                }
            }
        }
        AppliedOrder::Spline(effective)
    };

    Ok(Reconstruction {
        object: AudioObject::new(label, out, sparse.sample_rate)?,
        applied,
    })
}
