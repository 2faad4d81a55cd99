/// Decimal rendering of output values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// `%.Ng`-style with `N` significant digits.
    Significant(usize),
    /// `%.17g`, which round-trips every finite double.
    Exact,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Significant(6)
    }
}

impl Precision {
    pub fn digits(self) -> usize {
        match self {
            Precision::Significant(n) => n.max(1),
            Precision::Exact => 17,
        }
    }

    pub fn format(self, x: f64) -> String {
        format_g(x, self.digits())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Formats `x` like C's `printf("%.*g", digits, x)`.
pub fn format_g(x: f64, digits: usize) -> String {
    let p = digits.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // The exponent after rounding to `p` significant digits picks the style.
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}
