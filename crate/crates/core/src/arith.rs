//! Exact rational arithmetic and integer combinatorics.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num/den`, panicking on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Checked division.
pub fn div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn factorial_int(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn factorial(n: usize) -> Rational {
    int(factorial_int(n))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial_int(n: usize, k: i64) -> BigInt {
    if k < 0 || k as u64 > n as u64 {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial(n: usize, k: i64) -> Rational {
    int(binomial_int(n, k))
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..n {
        acc *= &f;
        f += BigInt::one();
    }
    acc
}

/// Rising factorial of an integer start, `(a)_n`.
pub fn pochhammer_int(a: usize, n: usize) -> BigInt {
    (a..a + n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `lcm(1, 2, ..., n)`; `1` for `n = 0`.
pub fn lcm_upto(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc.lcm(&BigInt::from(i)))
}

pub fn pow(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

pub fn pow_int(base: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `10^-k` as an exact rational.
pub fn ten_pow_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

/// `(-1)^n` as a sign multiplier.
pub fn alt_sign(n: usize) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Smallest `b >= 0` with `2^-b <= eps`, for `eps > 0`.
pub fn bits_for(eps: &Rational) -> u64 {
    debug_assert!(eps.is_positive());
    let n = eps.numer().bits();
    let d = eps.denom().bits();
    (d + 1).saturating_sub(n)
}

/// Round `q` to the nearest multiple of `2^-bits` (ties upward).
/// The rounding error is at most `2^-(bits+1)`.
pub fn round_dyadic(q: &Rational, bits: u64) -> Rational {
    let scaled = q * int(pow2(bits));
    let two = BigInt::from(2);
    let n: BigInt = (scaled.numer() * &two + scaled.denom()).div_floor(&(scaled.denom() * &two));
    Rational::new(n, pow2(bits))
}

/// Smallest multiple of `2^-bits` that is `>= q`.
pub fn ceil_dyadic(q: &Rational, bits: u64) -> Rational {
    let scaled = q * int(pow2(bits));
    Rational::new(scaled.ceil().to_integer(), pow2(bits))
}

/// Rational upper bound on `sqrt(q)` for `q >= 0`, within `2^-bits`.
pub fn sqrt_upper(q: &Rational, bits: u64) -> Rational {
    let lo = sqrt_floor_scaled(q, bits);
    let up = Rational::new(lo + 1, pow2(bits));
    debug_assert!(&up * &up >= *q);
    up
}

/// Rational lower bound on `sqrt(q)` for `q >= 0`, within `2^-bits`.
pub fn sqrt_lower(q: &Rational, bits: u64) -> Rational {
    Rational::new(sqrt_floor_scaled(q, bits), pow2(bits))
}

fn sqrt_floor_scaled(q: &Rational, bits: u64) -> BigInt {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    // floor(sqrt(q) * 2^bits) = floor(sqrt(floor(q * 4^bits)))
    let scaled = (q * int(pow2(2 * bits))).floor().to_integer();
    Roots::sqrt(&scaled)
}

/// Decimal rendering of `q` with exactly `digits` fractional digits,
/// rounding half to even. No floating point is involved.
pub fn decimal_render(q: &Rational, digits: usize) -> Result<String> {
    if digits == 0 {
        return invalid("decimal_render needs at least one fractional digit");
    }
    let scale = num_traits::pow(BigInt::from(10), digits);
    let mag = q.abs() * int(scale.clone());
    let (quot, rem) = mag.numer().div_rem(mag.denom());
    let twice: BigInt = &rem * BigInt::from(2);
    let rounded = match twice.cmp(mag.denom()) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    Ok(format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits
    ))
}

/// Parse a plain decimal literal such as `-1.25` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty()
        || !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit())
    {
        return invalid(format!("not a decimal literal: {s:?}"));
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| {
        Error::InvalidArgument(format!("not a decimal literal: {s:?}"))
    })?;
    let q = Rational::new(digits, num_traits::pow(BigInt::from(10), fp.len()));
    Ok(if neg { -q } else { q })
}

/// Parse `a/b`, an integer, or a decimal literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
        let b: BigInt = b
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(a, b));
    }
    parse_decimal(s)
}

/// `ln |q|` as an `f64`, robust for magnitudes far outside the `f64` range.
/// Used only for reporting and regression, never in a certified path.
pub fn ln_abs_f64(q: &Rational) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        let shift = bits.saturating_sub(60);
        let top = (n.magnitude() >> shift).to_f64().unwrap_or(f64::NAN);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_big(q.numer()) - ln_big(q.denom())
}

/// Nearest `f64`, for display purposes.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let l = ln_abs_f64(q);
        let s = if q.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
        s * l.exp()
    })
}
