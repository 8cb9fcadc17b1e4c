//! Rational approximants `ζ_N(p)`, the exact split of `ζ(p)` at a parameter
//! `R`, the error decomposition at `R = N`, and two independent enclosures of
//! `ζ(p)` used as ground truth.
//!
//! With `k = p - 1`, `m = n + k` and `h(m) = |s(m,k)|/(m-1)!` the split reads
//!
//! ```text
//! ζ(p) = sum_n S_n^p R^(n+1)/(n+1)
//!      + sum_{m>=k} h(m)/m^2 * (γ(m+1,R)/R^m + e^{-R})
//! ```
//!
//! and `ζ_N(p)` keeps `n <= 4N` in the first sum and replaces
//! `γ(m+1,N)/m!` by `1` for `m < N` in the second.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    bits_for, factorial, factorial_int, int, pow, pow2, ratio, sqrt_upper, ten_pow_neg, Rational,
};
use crate::ball::{exp_ball, Ball};
use crate::error::{invalid, Error, Result};
use crate::series::{partial_exp, stirling_weighted_tail};
use crate::stirling::{gen_stirling_row, stirling1_table};
use crate::tails::{harmonic_tail, Weight};

/// `ζ_N(p)` and its two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaApproxResult {
    pub p: usize,
    pub n: usize,
    pub value: Rational,
    pub first_sum: Rational,
    pub second_sum: Rational,
}

fn check_p_n(p: usize, n: usize) -> Result<()> {
    if p < 2 {
        return invalid(format!("p must be >= 2, got {p}"));
    }
    if n < p {
        return invalid(format!("N must be >= p, got N = {n}, p = {p}"));
    }
    Ok(())
}

/// `ζ_N(p) = sum_{n<=4N} S_n^p N^(n+1)/(n+1) + sum_{n<=N-p} |s(n+p-1,p-1)|/((n+p-1) N^(n+p-1))`.
pub fn zeta_n_approx(p: usize, n: usize) -> Result<ZetaApproxResult> {
    check_p_n(p, n)?;
    zeta_n_approx_with_limits(p, n, 4 * n, n - p)
}

/// `ζ_N(p)` with the upper summation limits of both sums chosen freely
/// (`first_limit = 4N`, `second_limit = N - p` give [`zeta_n_approx`]).
pub fn zeta_n_approx_with_limits(
    p: usize,
    n: usize,
    first_limit: usize,
    second_limit: usize,
) -> Result<ZetaApproxResult> {
    if p < 2 || n < 1 {
        return invalid("need p >= 2 and N >= 1");
    }
    let big_n = BigInt::from(n);
    let row = gen_stirling_row(p, first_limit)?;
    // S_n^p N^(n+1)/(n+1) over the common denominator (first_limit+1)! lcm-free:
    // accumulate numerators against a running denominator.
    let mut first = Rational::zero();
    let mut npow = big_n.clone();
    for (i, s) in row.values().iter().enumerate() {
        first += s * Rational::new(npow.clone(), BigInt::from(i + 1));
        npow *= &big_n;
    }

    let k = p - 1;
    let table = stirling1_table(second_limit + k);
    let mut second = Rational::zero();
    for i in 0..=second_limit {
        let m = i + k;
        second += Rational::new(table.unsigned(m, k), BigInt::from(m) * num_traits::pow(big_n.clone(), m));
    }
    Ok(ZetaApproxResult {
        p,
        n,
        value: &first + &second,
        first_sum: first,
        second_sum: second,
    })
}

fn check_oracle(p: usize, eps: &Rational) -> Result<()> {
    if p < 2 {
        return invalid(format!("ζ(p) needs p >= 2, got {p}"));
    }
    if !eps.is_positive() {
        return invalid("eps must be positive");
    }
    Ok(())
}

/// Enclosure of `ζ(p)` with radius `<= eps`, from the Chebyshev-accelerated
/// alternating series for `η(p) = (1 - 2^(1-p)) ζ(p)`
/// (Cohen, Rodriguez Villegas and Zagier).
///
/// With `d = T_n(3)` the accelerated partial sum differs from `η(p)` by at
/// most `2 η(p)/d <= 2/d`, because `1/(k+1)^p` are the moments of a positive
/// measure on `[0, 1]`.
pub fn zeta_oracle(p: usize, eps: &Rational) -> Result<Ball> {
    check_oracle(p, eps)?;
    let factor = Rational::new(pow2(p as u64 - 1), pow2(p as u64 - 1) - 1);
    let target = eps / (int(4) * &factor);
    // T_0 = 1, T_1 = 3, T_{j+1} = 6 T_j - T_{j-1}
    let (mut t_prev, mut t_cur, mut n) = (BigInt::one(), BigInt::from(3), 1usize);
    while Rational::new(BigInt::from(2), t_cur.clone()) > target {
        let next = &t_cur * 6 - &t_prev;
        t_prev = std::mem::replace(&mut t_cur, next);
        n += 1;
    }
    let d = int(t_cur);
    let ni = n as i64;
    let mut b = int(-1);
    let mut c = -d.clone();
    let mut s = Rational::zero();
    for k in 0..n {
        c = &b - &c;
        s += &c / int(crate::arith::pow_int(k + 1, p));
        let ki = k as i64;
        b = b * int((ki + ni) * (ki - ni) * 2) / int((2 * ki + 1) * (ki + 1));
    }
    let eta = Ball::new(s / &d, int(2) / &d);
    Ok(eta.scale(&factor).coarsen(bits_for(eps) + 3))
}

/// `B_0, ..., B_m` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += crate::arith::binomial(i + 1, j as i64) * bj;
        }
        b.push(-acc / int(i as i64 + 1));
    }
    b
}

/// Enclosure of `ζ(p)` with radius `<= eps` by Euler–Maclaurin summation:
///
/// ```text
/// ζ(s) = sum_{k<K} k^-s + K^(1-s)/(s-1) + K^-s/2
///      + sum_{j=1}^{m} B_2j/(2j)! (s)_{2j-1} K^(1-s-2j) + R,
/// |R| <= 2 ζ(2m+1)/(2π)^(2m+1) (s)_{2m} K^(-s-2m).
/// ```
///
/// The remainder uses `ζ(2m+1) <= 5/4` and `1/(2π) < 25/157`.
pub fn zeta_euler_maclaurin(p: usize, eps: &Rational) -> Result<Ball> {
    check_oracle(p, eps)?;
    let s = p;
    let half = eps / int(2);
    let remainder = |big_k: usize, m: usize| -> Rational {
        let two_pi_inv = pow(&ratio(25, 157), 2 * m + 1);
        ratio(5, 2) * two_pi_inv * crate::arith::pochhammer(&int(s as i64), 2 * m)
            / int(crate::arith::pow_int(big_k, s + 2 * m))
    };
    // the bound shrinks while 2m stays below about 2πK; grow K until it
    // reaches eps/2
    let mut big_k = 10usize;
    let (big_k, m) = 'search: loop {
        for m in 1..=(3 * big_k) {
            if remainder(big_k, m) <= half {
                break 'search (big_k, m);
            }
        }
        big_k *= 2;
    };
    let bern = bernoulli_numbers(2 * m);
    let kq = int(big_k as i64);
    let mut sum = Rational::zero();
    for i in 1..big_k {
        sum += Rational::new(BigInt::one(), crate::arith::pow_int(i, s));
    }
    let k_pow_s = int(crate::arith::pow_int(big_k, s));
    sum += &kq / (&k_pow_s * int(s as i64 - 1));
    sum += (int(2) * &k_pow_s).recip();
    for j in 1..=m {
        let term = &bern[2 * j] / factorial(2 * j)
            * crate::arith::pochhammer(&int(s as i64), 2 * j - 1)
            / (&k_pow_s * pow(&kq, 2 * j - 1));
        sum += term;
    }
    Ok(Ball::new(sum, remainder(big_k, m)).coarsen(bits_for(eps) + 3))
}

/// Bound `R^(n+2)/(n+2)! / (1 - R/(n+3))` on `sum_{n'>n} |S_n'^p| R^(n'+1)/(n'+1)`.
fn first_series_tail(r: &Rational, nmax: usize) -> Result<Rational> {
    let q = r / int(nmax as i64 + 3);
    if q >= Rational::one() {
        return Err(Error::Divergent(format!("nmax = {nmax} too small for R = {r}")));
    }
    Ok(pow(r, nmax + 2) / factorial(nmax + 2) / (int(1) - q))
}

/// `sum_{n=lo}^{hi} S_n^p R^(n+1)/(n+1)`, exact.
fn first_series(p: usize, r: &Rational, lo: usize, hi: usize) -> Result<Rational> {
    let row = gen_stirling_row(p, hi)?;
    let mut acc = Rational::zero();
    let mut rp = pow(r, lo + 1);
    for n in lo..=hi {
        acc += row.get(n) * &rp / int(n as i64 + 1);
        rp *= r;
    }
    Ok(acc)
}

/// Enclosure of the right-hand side of the split of `ζ(p)` at `R > 0`:
/// the first series up to `n = nmax1` with the factorial tail bound, the
/// second up to `n = nmax2` with its remainder enclosed in closed form
/// (see [`crate::tails`]). The radius is the first-series tail plus at most
/// `eps`.
pub fn zeta_split_eval(p: usize, r: &Rational, nmax1: usize, nmax2: usize, eps: &Rational) -> Result<Ball> {
    if p < 2 {
        return invalid("p must be >= 2");
    }
    if !r.is_positive() {
        return invalid("R must be positive");
    }
    if !eps.is_positive() {
        return invalid("eps must be positive");
    }
    let first = Ball::new(first_series(p, r, 0, nmax1)?, first_series_tail(r, nmax1)?);

    // second series head: a_m = |s(m,k)|/(m m!), term a_m (m!/R^m (1 - e^{-R} Q_{m+1}(R)) + e^{-R})
    //   = a_m m!/R^m - e^{-R} a_m (m! Q_{m+1}(R)/R^m - 1)
    let k = p - 1;
    let big_m = k + nmax2;
    let table = stirling1_table(big_m);
    let mut a_sum = Rational::zero();
    let mut b_sum = Rational::zero();
    for m in k..=big_m {
        let a = Rational::new(table.unsigned(m, k), BigInt::from(m) * factorial_int(m));
        let scale = factorial(m) / pow(r, m);
        a_sum += &a * &scale;
        b_sum += &a * (scale * partial_exp(r, m + 1) - int(1));
    }
    let e = exp_ball(&-r, &(eps / (int(4) * (&b_sum + int(2)))))?;
    let head = Ball::exact(a_sum) - e.scale(&b_sum);

    // tail: e^{-R} (sum_{m>M} h(m)/m^2 + R sum_l R^l sum_{m>M} h(m)/(m (m)_{l+2}))
    let plain = harmonic_tail(k, big_m, Weight::ReciprocalRising(1), &(eps / int(8)))?;
    let (g, _) = stirling_weighted_tail(k, big_m, r, 2, eps / (int(8) * (r + int(1))))?;
    let tail = &e * &(plain + g.scale(r));

    Ok((first + head + tail).coarsen(bits_for(eps) + 6))
}

/// The four error terms of `ζ(p) - ζ_N(p)` at `R = N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonBreakdown {
    pub p: usize,
    pub n: usize,
    /// `sum_{n>4N} S_n^p N^(n+1)/(n+1)`.
    pub eps1: Ball,
    /// `sum_{m<N} |s(m,k)|/(m N^m) (1 - γ(m+1,N)/m!)`.
    pub eps2: Ball,
    /// `sum_{m>=N} |s(m,k)|/(m N^m) γ(m+1,N)/m!`.
    pub eps3: Ball,
    /// `e^{-N} sum_{m>=k} |s(m,k)|/(m m!)`.
    pub eps4: Ball,
    /// Certified lower end of `e^{-N}/√N`.
    pub eps1_bound: Rational,
    /// Upper end of the part of `ε3` past the 200 explicit terms.
    pub eps3_tail: Rational,
}

impl EpsilonBreakdown {
    /// `ε1 - ε2 + ε3 + ε4`, which equals `ζ(p) - ζ_N(p)`.
    pub fn combined(&self) -> Ball {
        &(&(&self.eps1 - &self.eps2) + &self.eps3) + &self.eps4
    }
}

/// Number of explicit terms in `ε3` before the closed-form tail.
pub const EPS3_TERMS: usize = 200;

/// Enclosures of `ε1, ..., ε4` for `ζ(p) - ζ_N(p)`, each with radius
/// well below `10^-30` except for the `ε1` factorial tail.
pub fn epsilon_breakdown(p: usize, n: usize) -> Result<EpsilonBreakdown> {
    check_p_n(p, n)?;
    let eps = ten_pow_neg(40);
    let k = p - 1;
    let x = int(n as i64);

    // ε1: n = 4N+1 ..= 8N explicitly, then the factorial tail
    let eps1 = Ball::new(first_series(p, &x, 4 * n + 1, 8 * n)?, first_series_tail(&x, 8 * n)?);

    let last = n + EPS3_TERMS - 1;
    let table = stirling1_table(last);
    // c_m = |s(m,k)|/(m N^m); ε2 = e^{-N} sum_{m<N} c_m Q_{m+1}(N),
    // ε3 head = sum_{N<=m<=last} c_m (1 - e^{-N} Q_{m+1}(N))
    let mut two = Rational::zero();
    let mut three_c = Rational::zero();
    let mut three_q = Rational::zero();
    for m in k..=last {
        let c = Rational::new(table.unsigned(m, k), BigInt::from(m) * num_traits::pow(BigInt::from(n), m));
        let cq = &c * partial_exp(&x, m + 1);
        if m < n {
            two += cq;
        } else {
            three_c += c;
            three_q += cq;
        }
    }
    let e = exp_ball(&-&x, &(&eps / (&two + &three_q + int(1))))?;
    let eps2 = e.scale(&two);
    let head3 = Ball::exact(three_c) - e.scale(&three_q);
    // ε3 tail = N e^{-N} sum_j N^j sum_{m>last} h(m)/(m (m)_{j+2})
    let (t3, _) = stirling_weighted_tail(k, last, &x, 2, &eps / int(n as i64))?;
    let tail3 = (&e * &t3).scale(&x);
    let eps3_tail = tail3.hi();
    let eps3 = head3 + tail3;

    // ε4 = e^{-N} sum_m h(m)/m^2
    let mut four = Rational::zero();
    for m in k..=last {
        four += Rational::new(table.unsigned(m, k), BigInt::from(m) * factorial_int(m));
    }
    let four = Ball::exact(four) + harmonic_tail(k, last, Weight::ReciprocalRising(1), &eps)?;
    let eps4 = &e * &four;

    let bits = bits_for(&eps) + 8;
    let bound = exp_ball(&-&x, &eps)?.lo() / sqrt_upper(&x, bits);
    Ok(EpsilonBreakdown {
        p,
        n,
        eps1,
        eps2: eps2.coarsen(bits),
        eps3: eps3.coarsen(bits),
        eps4: eps4.coarsen(bits),
        eps1_bound: bound,
        eps3_tail,
    })
}

/// One point of the error sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRecord {
    pub p: usize,
    pub n: usize,
    pub zeta_n: Rational,
    pub oracle: Ball,
    /// Distance from `ζ_N(p)` to the oracle interval plus the oracle radius.
    pub abs_err: Rational,
    /// `abs_err e^N / N`, with `e^N` replaced by an upper bound.
    pub ratio: Rational,
}

/// Sweep record for a single `N`.
pub fn sweep_record(p: usize, n: usize) -> Result<SweepRecord> {
    check_p_n(p, n)?;
    let x = int(n as i64);
    let e_neg = exp_ball(&-&x, &ten_pow_neg(60))?;
    let scaled = &x * e_neg.lo() / int(1_000_000);
    let tol = ten_pow_neg(40).min(scaled);
    let oracle = zeta_oracle(p, &tol)?;
    let zeta_n = zeta_n_approx(p, n)?.value;
    let abs_err = oracle.distance_to(&zeta_n) + oracle.radius();
    let e_pos = exp_ball(&x, &ten_pow_neg(10))?;
    let ratio = &abs_err * e_pos.hi() / &x;
    Ok(SweepRecord {
        p,
        n,
        zeta_n,
        oracle,
        abs_err,
        ratio,
    })
}

/// Sweep records for each `N` in order.
pub fn error_sweep(p: usize, ns: &[usize]) -> Result<Vec<SweepRecord>> {
    ns.iter().map(|&n| sweep_record(p, n)).collect()
}

/// Least-squares slope of `ln(abs_err)` against `N`; `None` with fewer than
/// two records.
pub fn fit_log_slope(records: &[SweepRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.n as f64, crate::arith::ln_abs_f64(&r.abs_err)))
        .collect();
    least_squares_slope(&pts)
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `abs_err` as `f64`, for reporting.
pub fn abs_err_f64(r: &SweepRecord) -> f64 {
    r.abs_err.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA2: &str = "1.64493406684822643647241516664602518921894990120679843773556";
    const ZETA3: &str = "1.20205690315959428539973816151144999076498629234049888179227";
    const ZETA5: &str = "1.03692775514336992633136548645703416805708091950191281197419";

    fn dec(s: &str) -> Ball {
        Ball::from_decimal(s).unwrap()
    }

    #[test]
    fn approximant_at_n_equals_p() {
        let r = zeta_n_approx(2, 2).unwrap();
        assert_eq!(r.second_sum, ratio(1, 2));
        assert_eq!(r.value, Rational::new(14049550433u64.into(), 9001692000u64.into()));
        assert_eq!(&r.first_sum + &r.second_sum, r.value);
    }

    #[test]
    fn approximant_errors() {
        assert!(zeta_n_approx(2, 1).is_err());
        assert!(zeta_n_approx(1, 5).is_err());
        let z = zeta_n_approx(2, 10).unwrap().value;
        assert!(dec(ZETA2).distance_to(&z) < ratio(1, 100));
        let z = zeta_n_approx(3, 20).unwrap().value;
        assert!(dec(ZETA3).distance_to(&z) < ten_pow_neg(5));
    }

    #[test]
    fn oracle_reference_values() {
        for (p, s) in [(2, ZETA2), (3, ZETA3), (5, ZETA5)] {
            let eps = ten_pow_neg(40);
            let a = zeta_oracle(p, &eps).unwrap();
            let b = zeta_euler_maclaurin(p, &eps).unwrap();
            assert!(a.radius() <= &eps && b.radius() <= &eps);
            assert!(a.intersects(&dec(s)) && b.intersects(&dec(s)), "p = {p}");
        }
        assert!(zeta_oracle(1, &ten_pow_neg(5)).is_err());
        assert!(zeta_euler_maclaurin(2, &int(0)).is_err());
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[2], ratio(1, 6));
        assert_eq!(b[3], Rational::zero());
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[8], ratio(-1, 30));
    }

    #[test]
    fn split_contains_zeta() {
        let eps = ten_pow_neg(12);
        let z = zeta_split_eval(3, &int(5), 120, 120, &eps).unwrap();
        assert!(z.intersects(&dec(ZETA3)));
        assert!(z.radius() <= &ten_pow_neg(10));
        let z = zeta_split_eval(2, &int(1), 80, 80, &eps).unwrap();
        assert!(z.intersects(&dec(ZETA2)));
    }

    #[test]
    fn breakdown_identity() {
        let b = epsilon_breakdown(2, 10).unwrap();
        let z = zeta_n_approx(2, 10).unwrap().value;
        let truth = dec(ZETA2) - Ball::exact(z);
        assert!(b.combined().intersects(&truth));
        // ε4 = e^{-N} ζ(p)
        let e = exp_ball(&int(-10), &ten_pow_neg(50)).unwrap();
        assert!(b.eps4.intersects(&(&e * &dec(ZETA2))));
        assert!(b.eps1.hi() <= b.eps1_bound);
    }
}
