use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use pcea_core::Ratio;

/// How exact values are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Format {
    pub precision: u32,
    /// Print `p/q` instead of a rounded decimal.
    pub exact: bool,
}

impl Default for Format {
    fn default() -> Self {
        Format { precision: 3, exact: false }
    }
}

impl Format {
    pub fn render(&self, x: &Ratio) -> String {
        if self.exact {
            x.to_string()
        } else {
            round_half_even(x, self.precision)
        }
    }
}

/// Decimal rounding to `precision` places, ties to even, with trailing zeros
/// and a trailing point removed.
pub fn round_half_even(x: &Ratio, precision: u32) -> String {
    let scale = BigInt::from(10u32).pow(precision);
    let numer = x.numer().abs() * &scale;
    let denom = x.denom();
    let (mut q, r) = numer.div_rem(denom);
    let twice: BigInt = r * 2u32;
    if twice > *denom || (twice == *denom && q.is_odd()) {
        q += 1u32;
    }
    let negative = x.is_negative() && !q.is_zero();
    let digits = q.to_string();
    let places = precision as usize;
    let (int_part, frac_part) = if digits.len() > places {
        let (a, b) = digits.split_at(digits.len() - places);
        (a.to_string(), b.to_string())
    } else {
        ("0".to_string(), format!("{digits:0>places$}"))
    };
    let frac = frac_part.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::frac(n, d)
    }

    #[test]
    fn table_cells() {
        assert_eq!(round_half_even(&r(100, 13), 3), "7.692");
        assert_eq!(round_half_even(&r(500, 13), 3), "38.462");
        assert_eq!(round_half_even(&r(700, 13), 3), "53.846");
        assert_eq!(round_half_even(&r(200, 23), 3), "8.696");
        assert_eq!(round_half_even(&r(155, 4), 3), "38.75");
        assert_eq!(round_half_even(&r(10, 1), 3), "10");
        assert_eq!(round_half_even(&r(0, 1), 3), "0");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(round_half_even(&r(5, 2), 0), "2");
        assert_eq!(round_half_even(&r(7, 2), 0), "4");
        assert_eq!(round_half_even(&r(1, 8), 2), "0.12");
        assert_eq!(round_half_even(&r(3, 8), 2), "0.38");
        assert_eq!(round_half_even(&r(-5, 2), 0), "-2");
        assert_eq!(round_half_even(&r(-1, 1000), 2), "0");
        assert_eq!(round_half_even(&r(1, 200), 2), "0");
        assert_eq!(round_half_even(&r(3, 200), 2), "0.02");
    }

    #[test]
    fn exact_rendering() {
        let f = Format { precision: 3, exact: true };
        assert_eq!(f.render(&r(100, 13)), "100/13");
        assert_eq!(f.render(&r(45, 1)), "45");
    }
}
