//! Locale-independent number formatting for reports.

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Shortest text of `x` rounded to 15 significant digits. Plain decimal for
/// moderate magnitudes, `1.5e-17` style otherwise; never locale dependent.
pub fn fmt15(x: f64) -> String {
    let r = round15(x);
    if r == 0.0 {
        // Also folds -0 into 0.
        return "0".to_string();
    }
    if (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}
