//! Small formatting helpers shared by the CSV/JSON emitters.

use crate::float::Real;

/// Formats a value with `sig` significant digits, plain decimal notation,
/// `.` separator. Zero prints as `0`; magnitudes outside a sane decimal
/// window fall back to scientific notation.
pub fn fmt_sig<F: Real>(value: F, sig: u32) -> String {
    let v = value.as_f64();
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = sig as i32 - 1 - magnitude;
    if !(0..=17).contains(&decimals) {
        return format!("{:.*e}", sig.saturating_sub(1) as usize, v);
    }
    format!("{:.*}", decimals as usize, v)
}
