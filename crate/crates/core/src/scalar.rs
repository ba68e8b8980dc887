//! Scalar abstraction shared by every geometric type in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable for coordinates and angles.
///
/// The tolerances are per-precision: they are the only place where the
/// algorithms make a numeric judgement call, so they live next to the type.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance for every angle comparison, in radians.
    const ANGLE_EPS: f64;
    /// Relative tolerance of the orientation predicate, scaled by the
    /// squared coordinate magnitude.
    const AREA_REL_EPS: f64;
    /// Per-vertex tolerance for the interior-angle-sum identity.
    const IDENTITY_EPS: f64;
    /// Angle-by-angle tolerance when comparing re-measured data.
    const ROUNDTRIP_EPS: f64;

    /// Converts an `f64` constant into this scalar.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn angle_eps() -> Self {
        Self::lit(Self::ANGLE_EPS)
    }

    /// Widens to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const ANGLE_EPS: f64 = 1e-7;
    const AREA_REL_EPS: f64 = 1e-12;
    const IDENTITY_EPS: f64 = 1e-9;
    const ROUNDTRIP_EPS: f64 = 1e-6;
}

// Single precision keeps about seven digits, so each tolerance is widened
// by the ratio of the two machine epsilons (rounded up to a power of ten).
impl Scalar for f32 {
    const ANGLE_EPS: f64 = 1e-3;
    const AREA_REL_EPS: f64 = 1e-6;
    const IDENTITY_EPS: f64 = 1e-4;
    const ROUNDTRIP_EPS: f64 = 1e-2;
}

/// Formats a value with 17 significant digits, `%.17g` style.
///
/// Output always uses `.` as decimal separator and parses back to the
/// identical `f64`.
pub fn format_sig17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, v);
        trim_fraction(&fixed).to_string()
    } else {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
