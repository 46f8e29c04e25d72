//! Number formatting for CSV output.

/// Formats `x` with `digits` significant digits, like C's `%.{digits}g`.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig(1.0, 12), "1");
        assert_eq!(sig(0.0, 12), "0");
        assert_eq!(sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(sig(1.0 / (1.0 - (-1f64).exp()), 12), "1.58197670687");
        assert_eq!(sig(12.642411176571148, 12), "12.6424111766");
        assert_eq!(sig(-2.5e-7, 12), "-2.5e-7");
        assert_eq!(sig(1234567890123.0, 12), "1.23456789012e12");
        assert_eq!(sig(100.0, 3), "100");
        assert_eq!(sig(999.96, 4), "1000");
    }
}
