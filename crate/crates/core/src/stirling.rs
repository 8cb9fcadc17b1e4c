//! Stirling numbers of the first kind and the generalized Stirling numbers of
//! the second kind
//!
//! ```text
//! S_n^p = (-1)^n / n! * sum_{k=0}^{n} (-1)^k C(n,k) / (k+1)^p ,   n >= 0, p >= 1.
//! ```
//!
//! `S_n^p` is available through three independent routes (explicit sum, the
//! recurrence in `p`, and the negative-order form `S(1-p, n+1)`), which agree
//! exactly. The explicit sum is the defining one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    alt_sign, binomial_int, factorial, factorial_int, int, lcm_upto, pochhammer, pow, pow_int,
    ten_pow_neg, Rational,
};
use crate::ball::ln_ball;
use crate::error::{invalid, Error, Result};

/// Triangular table of signed Stirling numbers of the first kind `s(n, k)`,
/// `0 <= k <= n <= nmax`, with `s(n,k) = (-1)^(n-k) |s(n,k)|`.
#[derive(Clone, Debug)]
pub struct StirlingFirstTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingFirstTable {
    /// Builds the table with `s(n+1, k) = s(n, k-1) - n s(n, k)`.
    pub fn new(nmax: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(nmax + 1);
        rows.push(vec![BigInt::one()]);
        for n in 0..nmax {
            let prev = &rows[n];
            let mut next = vec![BigInt::zero(); n + 2];
            for (k, slot) in next.iter_mut().enumerate().skip(1) {
                let left = &prev[k - 1];
                *slot = match prev.get(k) {
                    Some(here) => left - here * n,
                    None => left.clone(),
                };
            }
            rows.push(next);
        }
        StirlingFirstTable { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)`; zero for `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        assert!(n <= self.nmax(), "s({n}, {k}) beyond table size {}", self.nmax());
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// `|s(n, k)|`.
    pub fn unsigned(&self, n: usize, k: usize) -> BigInt {
        self.get(n, k).abs()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

pub fn stirling1_table(nmax: usize) -> StirlingFirstTable {
    StirlingFirstTable::new(nmax)
}

/// Certified rational upper bound on `|s(n+1, m+1)|` for `n >= 2`,
/// `1 <= m <= n-1`:
///
/// ```text
/// |s(n+1, m+1)| <= n! (ln n)^m / m! * (1 + m / ln n)
/// ```
///
/// with `ln n` replaced by the upper end of a certified enclosure in the
/// numerator and the lower end in the denominator.
pub fn stirling1_bound(n: usize, m: usize) -> Result<Rational> {
    if n < 2 || m < 1 || m >= n {
        return invalid(format!("stirling1_bound needs n >= 2 and 1 <= m <= n-1, got n = {n}, m = {m}"));
    }
    let ln = ln_ball(&int(n as i64), &ten_pow_neg(30))?;
    let (lo, hi) = (ln.lo(), ln.hi());
    let mut b = factorial(n) * pow(&hi, m) / factorial(m);
    b *= int(1) + int(m as i64) / lo;
    Ok(b)
}

/// `S_n^p` by the explicit alternating sum, computed over the common
/// denominator `n! lcm(1..n+1)^p` with incremental binomial updates.
pub fn gen_stirling_explicit(n: usize, p: usize) -> Result<Rational> {
    if p < 1 {
        return invalid("generalized Stirling numbers need p >= 1");
    }
    let l = num_traits::pow(lcm_upto(n + 1), p);
    let mut binom = BigInt::one();
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let term = &binom * (&l / pow_int(k + 1, p));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        binom = binom * (n - k) / (k + 1);
    }
    Ok(Rational::new(alt_sign(n) * acc, factorial_int(n) * l))
}

/// `S_n^p` as the Stirling number of negative order `S(1-p, n+1)`:
///
/// ```text
/// (-1)^(n+1) / (n+1)! * sum_{k=1}^{n+1} (-1)^k C(n+1,k) / k^(p-1)
/// ```
pub fn gen_stirling_butzer(n: usize, p: usize) -> Result<Rational> {
    if p < 1 {
        return invalid("generalized Stirling numbers need p >= 1");
    }
    let m = n + 1;
    let l = num_traits::pow(lcm_upto(m), p - 1);
    let mut binom = BigInt::from(m); // C(m, 1)
    let mut acc = BigInt::zero();
    for k in 1..=m {
        let term = &binom * (&l / pow_int(k, p - 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        binom = binom * (m - k) / (k + 1);
    }
    Ok(Rational::new(alt_sign(m) * acc, factorial_int(m) * l))
}

/// `S_0^p, ..., S_nmax^p` for one `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenStirlingRow {
    p: usize,
    values: Vec<Rational>,
}

impl GenStirlingRow {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn base(nmax: usize) -> Self {
        // S_n^1 = (-1)^n / (n+1)!
        let mut values = Vec::with_capacity(nmax + 1);
        let mut fact = BigInt::one();
        for n in 0..=nmax {
            fact *= n + 1;
            values.push(Rational::new(alt_sign(n), fact.clone()));
        }
        GenStirlingRow { p: 1, values }
    }

    /// Row `p + 1` from row `p` via `(n+1) S_n^{p+1} = S_n^p - S_{n-1}^{p+1}`.
    fn next(&self) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(self.values.len());
        for (n, s) in self.values.iter().enumerate() {
            let v = match values.last() {
                Some(prev) => (s - prev) / int(n as i64 + 1),
                None => s.clone(),
            };
            values.push(v);
        }
        GenStirlingRow {
            p: self.p + 1,
            values,
        }
    }
}

/// Row `p` built by the recurrence in `p` starting from `S_n^1`.
pub fn gen_stirling_row(p: usize, nmax: usize) -> Result<GenStirlingRow> {
    Ok(gen_stirling_rows(p, nmax)?.pop().expect("at least one row"))
}

/// Rows `1..=pmax`, each up to `nmax`.
pub fn gen_stirling_rows(pmax: usize, nmax: usize) -> Result<Vec<GenStirlingRow>> {
    if pmax < 1 {
        return invalid("generalized Stirling numbers need p >= 1");
    }
    let mut rows = vec![GenStirlingRow::base(nmax)];
    while rows.len() < pmax {
        let next = rows.last().unwrap().next();
        rows.push(next);
    }
    Ok(rows)
}

fn check_pole(n: usize, x: &Rational) -> Result<()> {
    if x.is_integer() && !x.is_positive() && x.numer().abs() <= BigInt::from(n) {
        return Err(Error::Pole {
            x: x.to_string(),
            len: n + 1,
        });
    }
    Ok(())
}

/// `g_n(x) = (-1)^n / (x)_{n+1}`.
pub fn g_value(n: usize, x: &Rational) -> Result<Rational> {
    check_pole(n, x)?;
    Ok(int(alt_sign(n)) / pochhammer(x, n + 1))
}

/// `g_n(x)` in partial-fraction form
/// `(-1)^n / n! * sum_k (-1)^k C(n,k) / (k + x)`.
pub fn g_partial_fraction(n: usize, x: &Rational) -> Result<Rational> {
    check_pole(n, x)?;
    let mut acc = Rational::zero();
    for k in 0..=n {
        let term = int(binomial_int(n, k as i64)) / (x + int(k as i64));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * int(alt_sign(n)) / factorial(n))
}

fn check_unit_interval(t: &Rational) -> Result<()> {
    if !t.is_positive() || *t >= int(1) {
        return invalid(format!("t must lie in (0, 1), got {t}"));
    }
    Ok(())
}

/// Partial sum of the generating function in `p`:
/// `sum_{q=0}^{pmax} S_n^{q+1} t^q`, which tends to `(-1)^n / (1-t)_{n+1}`.
pub fn vertical_gf_partial(n: usize, t: &Rational, pmax: usize) -> Result<Rational> {
    check_unit_interval(t)?;
    // S_n^p = (-1)^n/n! sum_k (-1)^k C(n,k) (k+1)^-p, summed over p as
    // geometric series in t/(k+1) per k.
    let mut acc = Rational::zero();
    for k in 0..=n {
        let ratio = t / int(k as i64 + 1);
        let geo = (int(1) - pow(&ratio, pmax + 1)) / (int(1) - &ratio);
        let term = int(binomial_int(n, k as i64)) * geo / int(k as i64 + 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * int(alt_sign(n)) / factorial(n))
}

/// Same partial sum, accumulated term by term from the explicit `S_n^p`.
pub fn vertical_gf_partial_termwise(n: usize, t: &Rational, pmax: usize) -> Result<Rational> {
    check_unit_interval(t)?;
    let mut acc = Rational::zero();
    let mut tp = Rational::one();
    for q in 0..=pmax {
        acc += gen_stirling_explicit(n, q + 1)? * &tp;
        tp *= t;
    }
    Ok(acc)
}

/// Bound `(2^n/n!) t^(pmax+1) / (1-t)` on the truncation error of
/// [`vertical_gf_partial`].
pub fn vertical_gf_tail_bound(n: usize, t: &Rational, pmax: usize) -> Result<Rational> {
    check_unit_interval(t)?;
    Ok(int(crate::arith::pow2(n as u64)) / factorial(n) * pow(t, pmax + 1) / (int(1) - t))
}

/// The limit `(-1)^n / (1-t)_{n+1} = g_n(1-t)`.
pub fn vertical_gf_limit(n: usize, t: &Rational) -> Result<Rational> {
    check_unit_interval(t)?;
    g_value(n, &(int(1) - t))
}
