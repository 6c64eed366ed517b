use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale big operands down before converting so huge numerators don't overflow.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// Binomial with a half-integer lower index given as `twice_k`; zero unless `twice_k` is even.
pub fn binomial_half(n: i64, twice_k: i64) -> Rational {
    if twice_k.is_odd() {
        Rational::zero()
    } else {
        binomial(n, twice_k / 2)
    }
}

/// Rising factorial `a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

pub fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PoleConvention {
    #[default]
    Reject,
    /// `1/Γ(z)` at a nonpositive integer `z` evaluates to zero.
    ReciprocalZero,
}

/// `Γ(base + top) / Γ(base + bot)` as a Pochhammer product or its reciprocal.
pub fn gamma_ratio_shift(base: &Rational, top: i64, bot: i64) -> Result<Rational> {
    gamma_ratio_shift_with(base, top, bot, PoleConvention::Reject)
}

pub fn gamma_ratio_shift_with(
    base: &Rational,
    top: i64,
    bot: i64,
    conv: PoleConvention,
) -> Result<Rational> {
    let a = base + int(top);
    let b = base + int(bot);
    if is_nonpositive_integer(&a) {
        return Err(Error::Pole(format_rational(&a)));
    }
    if is_nonpositive_integer(&b) {
        return match conv {
            PoleConvention::Reject => Err(Error::Pole(format_rational(&b))),
            PoleConvention::ReciprocalZero => Ok(Rational::zero()),
        };
    }
    if top >= bot {
        Ok(pochhammer(&b, (top - bot) as usize))
    } else {
        Ok(pochhammer(&a, (bot - top) as usize).recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(3), 0), int(1));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio_shift(&int(3), 2, 0).unwrap(), int(12));
        assert_eq!(gamma_ratio_shift(&rat(1, 2), 1, 0).unwrap(), rat(1, 2));
        assert_eq!(gamma_ratio_shift(&rat(5, 2), -1, 1).unwrap(), rat(4, 15));
    }

    #[test]
    fn gamma_ratio_poles() {
        assert!(matches!(gamma_ratio_shift(&int(1), -1, 0), Err(Error::Pole(_))));
        assert!(matches!(gamma_ratio_shift(&int(1), 0, -2), Err(Error::Pole(_))));
        let z = gamma_ratio_shift_with(&int(1), 0, -2, PoleConvention::ReciprocalZero).unwrap();
        assert!(z.is_zero());
        assert!(gamma_ratio_shift_with(&int(1), -2, 0, PoleConvention::ReciprocalZero).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(5, 6), int(0));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial_half(4, 3), int(0));
        assert_eq!(binomial_half(4, 2), int(4));
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = Rational::new(BigInt::one() << 3000usize, (BigInt::one() << 3000usize) * 3);
        assert!((to_f64(&big) - 1.0 / 3.0).abs() < 1e-15);
    }
}
