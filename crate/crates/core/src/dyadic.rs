//! Exact nonnegative dyadic rationals `m · 2^e`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A nonnegative dyadic rational, normalised so that the mantissa is odd
/// (or the value is zero with exponent 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: u64,
    exponent: i32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        mantissa: 0,
        exponent: 0,
    };

    /// `value · 2^exponent`.
    pub fn new(value: u64, exponent: i32) -> Self {
        if value == 0 {
            return Self::ZERO;
        }
        let tz = value.trailing_zeros();
        Dyadic {
            mantissa: value >> tz,
            exponent: exponent + tz as i32,
        }
    }

    pub fn from_int(value: u64) -> Self {
        Self::new(value, 0)
    }

    /// Parses strings like `"25"`, `"61/4"` or `"24.5"` (finite binary
    /// fractions only).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num.trim().parse().ok()?;
            let den: u64 = den.trim().parse().ok()?;
            if !den.is_power_of_two() {
                return None;
            }
            return Some(Self::new(num, -(den.trailing_zeros() as i32)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let digits = frac.len() as u32;
            let scale = 10u128.checked_pow(digits)?;
            let whole: u128 = int.parse().ok()?;
            let frac_val: u128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
            // value = (whole·10^d + frac) / (2^d · 5^d); exact only if 5^d divides.
            let num = whole.checked_mul(scale)?.checked_add(frac_val)?;
            let five = 5u128.pow(digits);
            if num % five != 0 {
                return None;
            }
            let num = u64::try_from(num / five).ok()?;
            return Some(Self::new(num, -(digits as i32)));
        }
        s.parse().ok().map(Self::from_int)
    }

    pub fn mantissa(&self) -> u64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    /// Integer value when it is one and fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.mantissa == 0 {
            return Some(0);
        }
        if self.exponent < 0 {
            return None;
        }
        let e = self.exponent as u32;
        (self.mantissa.leading_zeros() >= e).then(|| self.mantissa << e)
    }

    pub fn scale_pow2(&self, by: i32) -> Self {
        if self.mantissa == 0 {
            *self
        } else {
            Dyadic {
                mantissa: self.mantissa,
                exponent: self.exponent + by,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa as f64 * 2f64.powi(self.exponent)
    }

    /// Exact decimal expansion, e.g. `15.25`.
    pub fn to_decimal_string(&self) -> String {
        if let Some(v) = self.to_u64() {
            return v.to_string();
        }
        if self.exponent >= 0 {
            return format!("{}", self.to_f64());
        }
        let q = (-self.exponent) as u32;
        // m / 2^q = m·5^q / 10^q
        let scaled = 5u128.checked_pow(q).and_then(|f| f.checked_mul(self.mantissa as u128));
        match scaled {
            Some(v) => {
                let digits = format!("{:0>width$}", v, width = q as usize + 1);
                let (int, frac) = digits.split_at(digits.len() - q as usize);
                format!("{int}.{}", frac.trim_end_matches('0'))
            }
            None => format!("{}", self.to_f64()),
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.mantissa, other.mantissa) {
            (0, 0) => return Ordering::Equal,
            (0, _) => return Ordering::Less,
            (_, 0) => return Ordering::Greater,
            _ => {}
        }
        let shift = self.exponent as i64 - other.exponent as i64;
        // Mantissas are below 2^64, so a shift of 64 or more decides alone.
        if shift >= 64 {
            Ordering::Greater
        } else if shift <= -64 {
            Ordering::Less
        } else if shift >= 0 {
            ((self.mantissa as u128) << shift).cmp(&(other.mantissa as u128))
        } else {
            (self.mantissa as u128).cmp(&((other.mantissa as u128) << -shift))
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `p` for integers, `p/2^q` with the denominator written out otherwise
/// (`61/4`).
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_u64() {
            write!(f, "{v}")
        } else if self.exponent < 0 && self.exponent > -128 {
            write!(f, "{}/{}", self.mantissa, 1u128 << (-self.exponent))
        } else if self.exponent < 0 {
            write!(f, "{}/2^{}", self.mantissa, -self.exponent)
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Dyadic::new(25, 0).to_string(), "25");
        assert_eq!(Dyadic::new(61, -2).to_string(), "61/4");
        assert_eq!(Dyadic::new(49, -1).to_string(), "49/2");
        assert_eq!(Dyadic::new(12, 1).to_string(), "24");
        assert_eq!(Dyadic::new(343, -4).to_decimal_string(), "21.4375");
        assert_eq!(Dyadic::new(61, -2).to_decimal_string(), "15.25");
        assert_eq!(Dyadic::new(32, 0).to_decimal_string(), "32");
    }

    #[test]
    fn normalisation_and_equality() {
        assert_eq!(Dyadic::new(24, -3), Dyadic::new(3, 0));
        assert_eq!(Dyadic::new(0, 7), Dyadic::ZERO);
        assert!(Dyadic::new(3, 0).is_integer());
        assert!(!Dyadic::new(49, -1).is_integer());
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Dyadic::new(49, -1) < Dyadic::from_int(25));
        assert!(Dyadic::new(49, -1) > Dyadic::from_int(24));
        assert!(Dyadic::new(1, 100) > Dyadic::new(u64::MAX, 0));
        assert!(Dyadic::ZERO < Dyadic::new(1, -200));
    }

    #[test]
    fn parse_accepts_fraction_and_decimal() {
        assert_eq!(Dyadic::parse("61/4"), Some(Dyadic::new(61, -2)));
        assert_eq!(Dyadic::parse("24.5"), Some(Dyadic::new(49, -1)));
        assert_eq!(Dyadic::parse("21.4375"), Some(Dyadic::new(343, -4)));
        assert_eq!(Dyadic::parse("32"), Some(Dyadic::from_int(32)));
        assert_eq!(Dyadic::parse("21.43"), None);
        assert_eq!(Dyadic::parse("1/3"), None);
    }
}
