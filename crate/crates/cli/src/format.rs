//! Fixed-precision numeric text.

/// Formats with 9 significant digits: plain decimal when the rounded
/// magnitude lies in `[1e-4, 1e7)`, lowercase scientific otherwise.
///
/// Zero prints as `0.00000000`; non-finite values as `nan`, `inf`, `-inf`.
pub fn sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.00000000".into();
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("LowerExp always carries an exponent");
    if (-4..7).contains(&exp) {
        format!("{:.*}", (8 - exp) as usize, x)
    } else {
        sci
    }
}

/// Shortest text that parses back to the identical `f64`.
pub fn exact(x: f64) -> String {
    format!("{x:e}")
}
