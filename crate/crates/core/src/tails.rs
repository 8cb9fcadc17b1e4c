//! Tails of series weighted by first-kind Stirling numbers.
//!
//! Several series in this crate have terms `|s(m,k)|/(m-1)! * w(m)` with a
//! rational weight `w(m) = O(1/m^2)`. Because `|s(m,k)|/(m-1)!` grows like
//! `(ln m)^(k-1)`, plain truncation converges only like `(ln M)^(k-1)/M`. This
//! module encloses the whole tail `sum_{m > M}` in closed form instead.
//!
//! Write `h_k(m) = |s(m,k)|/(m-1)! = e_{k-1}(1, 1/2, ..., 1/(m-1))` (elementary
//! symmetric polynomial) and expand the weight as an inverse factorial series
//! `w(m) = sum_{j>=1} c_j / (m)_{j+1}`. The telescoping sum
//! `sum_{m>i} 1/(m)_{j+1} = 1/(j (i+1)_j)` and the split
//! `h_k(m) = h_k(M+1) + sum_{M<i<m} h_{k-1}(i)/i` give
//!
//! ```text
//! sum_{m>M} h_k(m) w(m) = sum_{r=0}^{k-1} h_{k-r}(M+1) * sum_{j>=1} c_j / (j^(r+1) (M+1)_j)
//! ```
//!
//! and every inner series has an explicit remainder bound.

use num_traits::{One, Signed, Zero};

use crate::arith::{bits_for, int, pochhammer_int, Rational};
use crate::ball::Ball;
use crate::error::{invalid, Result};

/// Inverse factorial weights used by the callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// `w(m) = 1/(m (m)_q)`, `q >= 1`; `q = 1` is `1/m^2`.
    /// Coefficients `c_j = (q)_{j-q}` for `j >= q`.
    ReciprocalRising(usize),
    /// `w(m) = 1/(m)_{j0+1}`, `j0 >= 1`: a single coefficient.
    Rising(usize),
}

/// `e_0, ..., e_{k-1}` of `(1, 1/2, ..., 1/M)`; `e_r = h_{r+1}(M+1)`.
pub fn harmonic_symmetric(k: usize, m: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); k];
    if k == 0 {
        return e;
    }
    e[0] = Rational::one();
    for i in 1..=m {
        let x = Rational::new(1.into(), i.into());
        for r in (1..k).rev() {
            let add = &e[r - 1] * &x;
            e[r] += add;
        }
    }
    e
}

/// Enclosure of `sum_{j>=1} c_j / (j^(r+1) (M+1)_j)` with radius at most `eps`.
fn inner_series(weight: Weight, m: usize, r: usize, eps: &Rational) -> Ball {
    let m_big = int(m as i64);
    let jpow = |j: usize| int(num_traits::pow(num_bigint::BigInt::from(j), r + 1));
    match weight {
        Weight::Rising(j0) => Ball::exact(Rational::new(1.into(), pochhammer_int(m + 1, j0)) / jpow(j0)),
        Weight::ReciprocalRising(q) => {
            // u_j = (q)_{j-q} / (M+1)_j, u_{j+1} = u_j * j / (M+1+j).
            // sum_{j>=J} u_j / j^(r+1) <= u_J (M+J) / (M J^(r+1)).
            let bits = bits_for(eps) + 20;
            let mut u = Rational::new(1.into(), pochhammer_int(m + 1, q));
            let mut j = q;
            let mut sum = Ball::zero();
            loop {
                let tail = &u * int((m + j) as i64) / (&m_big * jpow(j));
                if tail <= eps / int(2) {
                    // all terms are positive: enclose [sum, sum + tail]
                    let half = tail / int(2);
                    let center = sum.center() + &half;
                    return Ball::new(center, half).widen(sum.radius()).coarsen(bits);
                }
                sum = (&sum + &Ball::exact(&u / jpow(j))).coarsen(bits);
                u = u * int(j as i64) / int((m + 1 + j) as i64);
                j += 1;
            }
        }
    }
}

/// Enclosure of `sum_{m > cutoff} h_k(m) w(m)` where `h_k(m) = |s(m,k)|/(m-1)!`,
/// with radius at most `eps`.
///
/// Requires `k >= 1` and `cutoff >= 1`.
pub fn harmonic_tail(k: usize, cutoff: usize, weight: Weight, eps: &Rational) -> Result<Ball> {
    if k < 1 || cutoff < 1 {
        return invalid("harmonic_tail needs k >= 1 and cutoff >= 1");
    }
    if !eps.is_positive() {
        return invalid("harmonic_tail needs eps > 0");
    }
    match weight {
        Weight::ReciprocalRising(q) | Weight::Rising(q) if q < 1 => {
            return invalid("weight parameter must be >= 1")
        }
        _ => {}
    }
    let e = harmonic_symmetric(k, cutoff);
    let mut total = Ball::zero();
    for r in 0..k {
        let coeff = &e[k - 1 - r];
        if coeff.is_zero() {
            continue;
        }
        let share = eps / (int(2 * k as i64) * coeff);
        let inner = inner_series(weight, cutoff, r, &share);
        total = total + inner.scale(coeff);
    }
    Ok(total.coarsen(bits_for(eps) + 4))
}

/// Crude upper bound on `sum_{m > cutoff} h_k(m) / m^2` from
/// `h_k(m) <= (1 + ln m)^(k-1) / (k-1)!` and an integral comparison. Slow
/// (`O((ln M)^(k-1)/M)`) but independent of [`harmonic_tail`].
pub fn harmonic_tail_crude(k: usize, cutoff: usize) -> Result<Rational> {
    use crate::arith::{factorial, pow};
    if k < 1 || cutoff < 1 {
        return invalid("harmonic_tail_crude needs k >= 1 and cutoff >= 1");
    }
    // sum_{m>M} (1+ln m)^j / m^2 <= int_M^inf (1+ln x)^j / x^2 dx
    //   = (1/M) sum_{i=0}^{j} j!/(j-i)! (1 + ln M)^(j-i),
    // valid while (1+ln x)^j / x^2 is decreasing on [M, inf), i.e. M >= e^(j/2 - 1).
    let j = k - 1;
    let ln = crate::ball::ln_ball(&int(cutoff as i64), &crate::arith::ten_pow_neg(20))?;
    if ln.lo() + int(1) < int(j as i64) / int(2) {
        return invalid("cutoff too small for the monotone comparison");
    }
    let u = ln.hi() + int(1);
    let mut acc = Rational::zero();
    for i in 0..=j {
        acc += factorial(j) / factorial(j - i) * pow(&u, j - i);
    }
    Ok(acc / int(cutoff as i64) / factorial(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial_int, ratio, ten_pow_neg};
    use crate::stirling::stirling1_table;

    fn h(table: &crate::stirling::StirlingFirstTable, m: usize, k: usize) -> Rational {
        Rational::new(table.unsigned(m, k), factorial_int(m - 1))
    }

    fn weight_value(w: Weight, m: usize) -> Rational {
        match w {
            Weight::ReciprocalRising(q) => Rational::new(1.into(), pochhammer_int(m, q) * m),
            Weight::Rising(j0) => Rational::new(1.into(), pochhammer_int(m, j0 + 1)),
        }
    }

    #[test]
    fn symmetric_polynomials_match_stirling() {
        let t = stirling1_table(30);
        for k in 1..5 {
            let e = harmonic_symmetric(k, 20);
            for r in 0..k {
                assert_eq!(e[r], h(&t, 21, r + 1));
            }
        }
    }

    /// Compare the closed-form tail from cutoff `a` with the closed-form tail
    /// from cutoff `b > a` plus the explicit terms in between.
    #[test]
    fn tails_are_consistent_across_cutoffs() {
        let t = stirling1_table(90);
        let eps = ten_pow_neg(40);
        for k in 1..=4 {
            for w in [
                Weight::ReciprocalRising(1),
                Weight::ReciprocalRising(3),
                Weight::Rising(1),
                Weight::Rising(4),
            ] {
                let (a, b) = (20, 80);
                let ta = harmonic_tail(k, a, w, &eps).unwrap();
                let tb = harmonic_tail(k, b, w, &eps).unwrap();
                let mut mid = Rational::zero();
                for m in a + 1..=b {
                    mid += h(&t, m, k) * weight_value(w, m);
                }
                let rebuilt = tb + Ball::exact(mid);
                assert!(ta.intersects(&rebuilt), "k = {k}, w = {w:?}");
                assert!(ta.radius() <= &eps);
            }
        }
    }

    #[test]
    fn full_sums_give_zeta_values() {
        // sum_{m>=k} |s(m,k)|/(m m!) = zeta(k+1)
        let t = stirling1_table(40);
        let eps = ten_pow_neg(40);
        let refs = [
            (1, "1.64493406684822643647241516664602518921894990120679843773556"),
            (2, "1.20205690315959428539973816151144999076498629234049888179227"),
            (3, "1.08232323371113819151600369654116790277475095191872690768298"),
        ];
        for (k, digits) in refs {
            let cut = 30;
            let mut head = Rational::zero();
            for m in k..=cut {
                head += h(&t, m, k) / int((m * m) as i64);
            }
            let total = Ball::exact(head) + harmonic_tail(k, cut, Weight::ReciprocalRising(1), &eps).unwrap();
            assert!(total.intersects(&Ball::from_decimal(digits).unwrap()), "k = {k}");
        }
    }

    #[test]
    fn crude_bound_dominates() {
        for k in 1..=3 {
            let tight = harmonic_tail(k, 60, Weight::ReciprocalRising(1), &ten_pow_neg(30)).unwrap();
            let crude = harmonic_tail_crude(k, 60).unwrap();
            assert!(tight.hi() <= crude, "k = {k}");
        }
        assert_eq!(harmonic_tail_crude(1, 10).unwrap(), ratio(1, 10));
    }

    #[test]
    fn argument_checks() {
        let eps = ten_pow_neg(10);
        assert!(harmonic_tail(0, 5, Weight::Rising(1), &eps).is_err());
        assert!(harmonic_tail(1, 0, Weight::Rising(1), &eps).is_err());
        assert!(harmonic_tail(1, 5, Weight::Rising(0), &eps).is_err());
        assert!(harmonic_tail(1, 5, Weight::Rising(1), &int(0)).is_err());
    }
}
