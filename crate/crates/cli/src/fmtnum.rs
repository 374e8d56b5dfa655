//! Fixed float formatting for reproducible output files: C `%.17g`
//! equivalent (17 significant digits, `%e`/`%f` style selection, trailing
//! zeros stripped, two-digit exponent).

pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // {:.16e} rounds to 17 significant digits: "d.dddddddddddddddde<exp>"
    let sci = format!("{:.16e}", x);
    let neg = sci.starts_with('-');
    let body = if neg { &sci[1..] } else { &sci[..] };
    let epos = body.find('e').expect("exponent marker");
    let mantissa = &body[..epos];
    let exp: i32 = body[epos + 1..].parse().expect("exponent value");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 17);

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if !(-4..17).contains(&exp) {
        // scientific style
        let frac = digits[1..].trim_end_matches('0');
        out.push_str(&digits[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push(if exp < 0 { '-' } else { '+' });
        out.push_str(&format!("{:02}", exp.abs()));
    } else if exp >= 0 {
        let split = exp as usize + 1;
        out.push_str(&digits[..split]);
        let frac = digits[split..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(fmt_g17(0.0), "0");
        assert_eq!(fmt_g17(-0.0), "-0");
        assert_eq!(fmt_g17(1.5), "1.5");
        assert_eq!(fmt_g17(100.0), "100");
        assert_eq!(fmt_g17(0.1), "0.10000000000000001");
        assert_eq!(fmt_g17(1.35), "1.3500000000000001");
        assert_eq!(fmt_g17(-0.5), "-0.5");
        assert_eq!(fmt_g17(1e22), "1e+22");
        assert_eq!(fmt_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(fmt_g17(f64::INFINITY), "inf");
        assert_eq!(fmt_g17(f64::NAN), "nan");
    }

    #[test]
    fn round_trips() {
        for &v in &[
            std::f64::consts::PI,
            2.0 * std::f64::consts::PI,
            1.0 / 3.0,
            6.02214076e23,
            -4.9e-324, // subnormal
            123456789.12345679,
        ] {
            let s = fmt_g17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v, "{v} -> {s}");
        }
    }
}
