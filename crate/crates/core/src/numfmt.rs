//! Fixed-width decimal formatting used by the CSV writer and the JSON report.

/// Formats `x` with exactly 17 significant digits.
///
/// Values with a decimal exponent in `-5..=16` are written in positional
/// notation (`20.000000000000000`), everything else in scientific notation
/// (`1.2345678901234567e-7`). Seventeen digits always round-trip an `f64`, so
/// `format_sig17(x).parse::<f64>() == Ok(x)` for every finite `x`.
///
/// Non-finite inputs are written as Rust's `NaN`/`inf` and are not valid JSON;
/// callers are expected to reject them first.
pub fn format_sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 17);
    if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn positional_and_scientific() {
        assert_eq!(format_sig17(20.0), "20.000000000000000");
        assert_eq!(format_sig17(0.0), "0.0000000000000000");
        assert_eq!(format_sig17(-1.5), "-1.5000000000000000");
        assert_eq!(format_sig17(0.001), "0.0010000000000000000");
        assert_eq!(format_sig17(1e17), "1.0000000000000000e17");
        assert_eq!(format_sig17(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_sig17(12345678901234567.0), "12345678901234568");
    }

    proptest! {
        #[test]
        fn round_trips_bitwise(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let s = format_sig17(x);
            let back: f64 = s.parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
