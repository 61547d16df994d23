use num_bigint::BigInt;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for the floating-point layer: f32 or f64. Exact counting
/// always uses arbitrary-precision integers; only root finding, limiting
/// laws and report probabilities are scalar-generic.
pub trait Real: Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Ratio of two big integers as a scalar, with the mantissa taken from the
/// leading bits when the operands exceed the f64 range.
pub fn big_ratio<F: Real>(num: &BigInt, den: &BigInt) -> F {
    let bits = num.bits().max(den.bits());
    let (n, d) = if bits > 900 {
        let shift = bits - 64;
        (num >> shift, den >> shift)
    } else {
        (num.clone(), den.clone())
    };
    let n = n.to_f64().unwrap_or(f64::NAN);
    let d = d.to_f64().unwrap_or(f64::NAN);
    F::from_f64(n / d).unwrap()
}
