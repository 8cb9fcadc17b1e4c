//! Ball arithmetic over exact rationals.
//!
//! A [`Ball`] `(c, r)` stands for the closed interval `[c - r, c + r]`. All
//! operations are outward-conservative: the result contains every pointwise
//! result of operands drawn from the input intervals. Radii are rationals, so
//! no floating-point rounding enters any enclosure.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, bits_for, ceil_dyadic, int, parse_decimal, ratio, round_dyadic, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    center: Rational,
    radius: Rational,
}

impl Ball {
    /// Ball with the given center and radius; panics on a negative radius.
    pub fn new(center: Rational, radius: Rational) -> Self {
        assert!(!radius.is_negative(), "negative ball radius");
        Ball { center, radius }
    }

    pub fn exact(center: Rational) -> Self {
        Ball {
            center,
            radius: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Ball::exact(Rational::zero())
    }

    pub fn one() -> Self {
        Ball::exact(Rational::one())
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_interval(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        let center = (&lo + &hi) / int(2);
        let radius = (&hi - &lo) / int(2);
        Ball { center, radius }
    }

    /// A decimal literal taken as the set of reals that round to it:
    /// `"1.25"` becomes `1.25 ± 0.005`.
    pub fn from_decimal(s: &str) -> Result<Self> {
        let center = parse_decimal(s)?;
        let places = s.trim().split_once('.').map_or(0, |(_, f)| f.len());
        let radius = Rational::new(
            BigInt::one(),
            BigInt::from(2) * num_traits::pow(BigInt::from(10), places),
        );
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn lo(&self) -> Rational {
        &self.center - &self.radius
    }

    pub fn hi(&self) -> Rational {
        &self.center + &self.radius
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag(&self) -> Rational {
        self.center.abs() + &self.radius
    }

    /// Lower bound on `|x|` over the ball (zero if the ball straddles zero).
    pub fn mig(&self) -> Rational {
        let m = self.center.abs() - &self.radius;
        if m.is_negative() {
            Rational::zero()
        } else {
            m
        }
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x - &self.center).abs() <= self.radius
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        (&other.center - &self.center).abs() + &other.radius <= self.radius
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        (&other.center - &self.center).abs() <= &self.radius + &other.radius
    }

    /// Strictly positive over the whole ball.
    pub fn is_positive(&self) -> bool {
        self.lo().is_positive()
    }

    /// Distance from `x` to the interval (zero when contained).
    pub fn distance_to(&self, x: &Rational) -> Rational {
        let d = (x - &self.center).abs() - &self.radius;
        if d.is_negative() {
            Rational::zero()
        } else {
            d
        }
    }

    /// Widen the radius by `extra >= 0`.
    pub fn widen(mut self, extra: &Rational) -> Self {
        assert!(!extra.is_negative());
        self.radius += extra;
        self
    }

    /// Multiply by an exact rational.
    pub fn scale(&self, q: &Rational) -> Ball {
        Ball {
            center: &self.center * q,
            radius: &self.radius * q.abs(),
        }
    }

    /// Divide by an exact rational.
    pub fn div_rat(&self, q: &Rational) -> Result<Ball> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&q.recip()))
    }

    /// Enclosure of `1/x`; fails when the ball contains zero.
    pub fn recip(&self) -> Result<Ball> {
        let m = self.mig();
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.center.abs();
        let radius = &self.radius / (&c * &m);
        Ok(Ball {
            center: self.center.recip(),
            radius,
        })
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: usize) -> Ball {
        let mut acc = Ball::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Round the center to a multiple of `2^-bits` and the radius up to one,
    /// absorbing the rounding error into the radius. Keeps denominators bounded
    /// in long computations; only the enclosure is guaranteed.
    pub fn coarsen(&self, bits: u64) -> Ball {
        let center = round_dyadic(&self.center, bits);
        let err = (&center - &self.center).abs();
        let radius = ceil_dyadic(&(&self.radius + err), bits);
        Ball { center, radius }
    }

    /// Enclosure of the convex hull of two balls.
    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        Ball::from_interval(lo, hi)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = arith::to_f64(&self.center);
        let r = arith::to_f64(&self.radius);
        write!(f, "[{c:.17e} +/- {r:.3e}]")
    }
}

impl From<Rational> for Ball {
    fn from(q: Rational) -> Self {
        Ball::exact(q)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            center: -&self.center,
            radius: self.radius.clone(),
        }
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl Add<&Ball> for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball {
            center: &self.center + &rhs.center,
            radius: &self.radius + &rhs.radius,
        }
    }
}

impl Sub<&Ball> for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball {
            center: &self.center - &rhs.center,
            radius: &self.radius + &rhs.radius,
        }
    }
}

impl Mul<&Ball> for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let radius = self.center.abs() * &rhs.radius
            + rhs.center.abs() * &self.radius
            + &self.radius * &rhs.radius;
        Ball {
            center: &self.center * &rhs.center,
            radius,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: &Ball) -> Ball {
                (&self).$m(rhs)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Smallest `n` with `n + 1 >= 2a` and `2 a^n/n! <= target`, together with
/// that bound. It dominates `sum_{i>=n} a^i/i!`, hence the Taylor remainder
/// of `e^x` for `|x| = a`.
///
/// For `n + 1 >= 2a` the remainder satisfies
/// `|R_n| <= a^n/n! * 1/(1 - a/(n+1)) <= 2 a^n/n!`.
pub(crate) fn factorial_cutoff(a: &Rational, target: &Rational) -> (usize, Rational) {
    let mut n = 0usize;
    let mut term = Rational::one(); // a^n / n!
    while int(n as i64 + 1) < a * int(2) {
        n += 1;
        term = term * a / int(n as i64);
    }
    loop {
        let bound = &term * int(2);
        if bound <= *target {
            return (n, bound);
        }
        n += 1;
        term = term * a / int(n as i64);
    }
}

/// Enclosure of `e^x` with radius at most `eps`.
///
/// Taylor partial sum whose length is fixed up front by the factorial bound
/// on the remainder; the center is then rounded to a dyadic rational.
pub fn exp_ball(x: &Rational, eps: &Rational) -> Result<Ball> {
    if !eps.is_positive() {
        return invalid("exp_ball needs eps > 0");
    }
    if x.is_zero() {
        return Ok(Ball::one());
    }
    let a = x.abs();
    let half = eps / int(2);
    let (n, bound) = factorial_cutoff(&a, &half);
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for i in 0..n {
        sum += &term;
        term = term * x / int(i as i64 + 1);
    }
    let bits = bits_for(&half) + 2;
    Ok(Ball::new(sum, bound).coarsen(bits))
}

/// Natural logarithm enclosure for `x > 0`, radius at most `eps`.
///
/// Uses `ln x = k ln 2 + ln y` with `y = x / 2^k` in `[3/4, 3/2)` and the
/// series `ln y = 2 atanh((y-1)/(y+1))`, whose tail is geometric in
/// `((y-1)/(y+1))^2 <= 1/25`.
pub fn ln_ball(x: &Rational, eps: &Rational) -> Result<Ball> {
    if !x.is_positive() {
        return invalid("ln_ball needs x > 0");
    }
    if !eps.is_positive() {
        return invalid("ln_ball needs eps > 0");
    }
    let mut k: i64 = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let mut y = scale_pow2(x, -k);
    while y >= ratio(3, 2) {
        k += 1;
        y /= int(2);
    }
    while y < ratio(3, 4) {
        k -= 1;
        y *= int(2);
    }
    let share = eps / int(2 * (k.unsigned_abs() as i64 + 1));
    let mut out = atanh_log(&y, &share);
    if k != 0 {
        let ln2 = atanh_log(&int(2), &share);
        out = out + ln2.scale(&int(k));
    }
    Ok(out.coarsen(bits_for(eps) + 2))
}

fn scale_pow2(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        x * int(arith::pow2(e as u64))
    } else {
        x / int(arith::pow2((-e) as u64))
    }
}

/// `ln y = 2 sum_j z^(2j+1)/(2j+1)`, `z = (y-1)/(y+1)`, for `y` with `|z| <= 1/3`.
fn atanh_log(y: &Rational, eps: &Rational) -> Ball {
    let z = (y - int(1)) / (y + int(1));
    if z.is_zero() {
        return Ball::zero();
    }
    let z2 = &z * &z;
    let denom_geo = int(1) - &z2;
    // tail after J terms <= 2 |z|^(2J+1) / ((2J+1)(1 - z^2))
    let mut j = 0usize;
    let mut zp = z.abs();
    let tail = loop {
        let t = &zp * int(2) / (int(2 * j as i64 + 1) * &denom_geo);
        if t <= *eps {
            break t;
        }
        j += 1;
        zp *= &z2;
    };
    let mut sum = Rational::zero();
    let mut p = z.clone();
    for i in 0..j {
        sum += &p / int(2 * i as i64 + 1);
        p *= &z2;
    }
    Ball::new(sum * int(2), tail)
}
