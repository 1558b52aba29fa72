//! Byte-stable text formatting for regression files.

/// 17 significant digits, choosing the shorter of fixed and lowercase
/// scientific notation (fixed on ties).
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let fixed = if exp <= 16 {
        let decimals = (16 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        format!("{x:.0}")
    };
    if fixed.len() <= sci.len() {
        fixed
    } else {
        sci
    }
}
