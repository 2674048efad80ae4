use std::f64::consts::PI;

/// Largest denominator tried when printing an angle as a multiple of pi.
const MAX_PI_DENOMINATOR: i64 = 64;
const MAX_PI_NUMERATOR: i64 = 4096;

/// Parses `DECIMAL | [DECIMAL] "pi" ["/" INT]`. Returns a message on failure.
///
/// `p pi / q` is evaluated as `p * PI / q`; [`format_angle`] relies on this
/// exact expression to guarantee bit-exact round trips.
pub fn parse_angle(token: &str) -> Result<f64, String> {
    let bad = || format!("malformed angle '{token}'");
    let value = match token.find("pi") {
        None => parse_decimal(token).ok_or_else(bad)?,
        Some(at) => {
            let coeff = match &token[..at] {
                "" | "+" => 1.0,
                "-" => -1.0,
                s => parse_decimal(s).ok_or_else(bad)?,
            };
            let rest = &token[at + 2..];
            let denom = if rest.is_empty() {
                1.0
            } else {
                let digits = rest.strip_prefix('/').ok_or_else(bad)?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let q: u64 = digits.parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(format!("zero denominator in angle '{token}'"));
                }
                q as f64
            };
            coeff * PI / denom
        }
    };
    if !value.is_finite() {
        return Err(format!("angle '{token}' is not finite"));
    }
    Ok(value)
}

fn parse_decimal(s: &str) -> Option<f64> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().next()?.is_ascii_digit() && !body.starts_with('.') {
        return None;
    }
    if !body.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-')) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Canonical angle text: the shortest `p pi / q` that re-parses to the same
/// bits, otherwise the shortest round-trip decimal.
pub fn format_angle(value: f64) -> String {
    if value != 0.0 && value.is_finite() {
        for q in 1..=MAX_PI_DENOMINATOR {
            let p = (value * q as f64 / PI).round();
            if p == 0.0 || p.abs() > MAX_PI_NUMERATOR as f64 {
                continue;
            }
            if (p * PI / q as f64).to_bits() == value.to_bits() {
                let coeff = match p as i64 {
                    1 => String::new(),
                    -1 => "-".to_string(),
                    k => k.to_string(),
                };
                return if q == 1 { format!("{coeff}pi") } else { format!("{coeff}pi/{q}") };
            }
        }
    }
    // Display prints the shortest string that parses back to the same bits.
    format!("{value}")
}
