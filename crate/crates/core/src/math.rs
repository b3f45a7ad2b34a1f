//! Thin wrappers over `libm` so the rest of the crate reads like std code.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// Distance between two floats in units in the last place of `scale`.
///
/// Comparing against the ulp of a reference magnitude (rather than of the
/// values themselves) is what makes "one rounding of a subtraction" a
/// meaningful bound when the result is much smaller than its operands.
pub fn ulps_at_scale(a: f64, b: f64, scale: f64) -> f64 {
    let ulp = ulp(scale.abs());
    if ulp == 0.0 {
        return if a == b { 0.0 } else { f64::INFINITY };
    }
    (a - b).abs() / ulp
}

/// Spacing between `x` and the next representable float above it.
pub fn ulp(x: f64) -> f64 {
    let x = x.abs();
    if !x.is_finite() {
        return f64::NAN;
    }
    let next = f64::from_bits(x.to_bits() + 1);
    next - x
}
