//! Numeric output formatting: every float the tool prints carries 12
//! significant digits, positional where readable and scientific otherwise.

const SIG_DIGITS: usize = 12;

/// Formats with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.*}", SIG_DIGITS - 1, 0.0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..SIG_DIGITS as i32).contains(&exponent) {
        let decimals = (SIG_DIGITS as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", SIG_DIGITS - 1)
    }
}

/// Integers print bare; everything else through [`sig12`]. Used for
/// coefficient CSVs where quantized levels are whole numbers.
pub fn compact(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        sig12(x)
    }
}
