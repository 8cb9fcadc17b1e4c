//! Truncated series with certified enclosures: `pFp[1..1; 2..2; t]`, the
//! integer-shape lower incomplete gamma function, polylogarithms, and the
//! identities tying them to `S_n^p`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    bits_for, factorial, factorial_int, int, pow, pow2, pow_int, ratio, Rational,
};
use crate::ball::{exp_ball, factorial_cutoff, Ball};
use crate::error::{invalid, Error, Result};
use crate::stirling::{gen_stirling_row, stirling1_table};
use crate::tails::{harmonic_tail, Weight};

/// A truncated series: the enclosure of the full sum, the index at which the
/// explicit summation stopped, and the bound used for what was left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesEnclosure {
    pub value: Ball,
    pub terms_used: usize,
    pub tail_bound: Rational,
}

fn require_eps(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        invalid("eps must be positive")
    }
}

/// `pFp[1,...,1; 2,...,2; t] = sum_k t^k / (k! (k+1)^p)`, radius `<= eps`.
pub fn pfp_ones_twos(p: usize, t: &Rational, eps: &Rational) -> Result<SeriesEnclosure> {
    require_eps(eps)?;
    if t.is_negative() {
        return invalid("pfp_ones_twos needs t >= 0");
    }
    // term_k <= t^k/k!, so the factorial tail bounds the remainder
    let (n, bound) = factorial_cutoff(t, &(eps / int(2)));
    let mut sum = Rational::zero();
    let mut tk = Rational::one(); // t^k / k!
    for k in 0..n {
        sum += &tk / int(pow_int(k + 1, p));
        tk = tk * t / int(k as i64 + 1);
    }
    let half = &bound / int(2);
    let value = Ball::new(sum + &half, half).coarsen(bits_for(eps) + 3);
    Ok(SeriesEnclosure {
        value,
        terms_used: n,
        tail_bound: bound,
    })
}

/// `sum_{n<=nmax} S_n^p t^n` with the remainder bounded by `|S_n^p| <= 1/n!`.
pub fn horizontal_gf_partial(p: usize, t: &Rational, nmax: usize) -> Result<SeriesEnclosure> {
    if t.is_negative() {
        return invalid("horizontal_gf_partial needs t >= 0");
    }
    let row = gen_stirling_row(p, nmax)?;
    let mut sum = Rational::zero();
    let mut tn = Rational::one();
    for s in row.values() {
        sum += s * &tn;
        tn *= t;
    }
    // sum_{n>nmax} t^n/n! <= t^(nmax+1)/(nmax+1)! / (1 - t/(nmax+2))
    let q = t / int(nmax as i64 + 2);
    if q >= Rational::one() {
        return Err(Error::Divergent(format!("nmax = {nmax} too small for t = {t}")));
    }
    let tail = pow(t, nmax + 1) / factorial(nmax + 1) / (int(1) - q);
    Ok(SeriesEnclosure {
        value: Ball::new(sum, tail.clone()),
        terms_used: nmax + 1,
        tail_bound: tail,
    })
}

/// The closed form `e^{-t} pFp[1..1; 2..2; t]` of the horizontal generating
/// function, radius `<= eps`.
pub fn horizontal_gf_closed(p: usize, t: &Rational, eps: &Rational) -> Result<Ball> {
    require_eps(eps)?;
    let f = pfp_ones_twos(p, t, &(eps / int(4)))?.value;
    // e^t bounds pFp, so e^{-t} needs radius eps / (4 e^t); e^t < 3^ceil(t)
    let grow = int(pow_int(3, t.ceil().to_integer().to_usize().unwrap_or(0)));
    let e = exp_ball(&-t, &(eps / (int(4) * grow)))?;
    Ok(&e * &f)
}

/// `e^{-x}` together with the partial exponential sums `Q_a(x) = sum_{j<a} x^j/j!`,
/// giving `γ(a, x)/(a-1)! = 1 - e^{-x} Q_a(x)` for integer `a >= 1`.
#[derive(Clone, Debug)]
pub struct IncompleteGamma {
    x: Rational,
    exp_neg: Ball,
}

impl IncompleteGamma {
    /// `x >= 0`; `e^{-x}` is enclosed with radius `<= eps_exp`.
    pub fn new(x: &Rational, eps_exp: &Rational) -> Result<Self> {
        require_eps(eps_exp)?;
        if x.is_negative() {
            return invalid("incomplete gamma needs x >= 0");
        }
        Ok(IncompleteGamma {
            x: x.clone(),
            exp_neg: exp_ball(&-x, eps_exp)?,
        })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn exp_neg(&self) -> &Ball {
        &self.exp_neg
    }

    /// `Q_a(x) = sum_{j<a} x^j/j!`.
    pub fn partial_exp(&self, a: usize) -> Rational {
        partial_exp(&self.x, a)
    }

    /// `γ(a, x)/(a-1)!`; radius `Q_a(x) * rad(e^{-x})`.
    pub fn regularized(&self, a: usize) -> Ball {
        if self.x.is_zero() {
            return Ball::zero();
        }
        Ball::one() - self.exp_neg.scale(&self.partial_exp(a))
    }

    /// `γ(a, x)`.
    pub fn lower(&self, a: usize) -> Ball {
        self.regularized(a).scale(&factorial(a - 1))
    }
}

/// `sum_{j<a} x^j/j!`.
pub fn partial_exp(x: &Rational, a: usize) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for j in 0..a {
        sum += &term;
        term = term * x / int(j as i64 + 1);
    }
    sum
}

/// Lower incomplete gamma `γ(a, x)` for integer `a >= 1`, radius `<= eps`.
pub fn lower_gamma_int(a: usize, x: &Rational, eps: &Rational) -> Result<Ball> {
    require_eps(eps)?;
    if a < 1 {
        return invalid("lower_gamma_int needs a >= 1");
    }
    if x.is_negative() {
        return invalid("lower_gamma_int needs x >= 0");
    }
    if x.is_zero() {
        return Ok(Ball::zero());
    }
    let scale = factorial(a - 1) * partial_exp(x, a);
    let g = IncompleteGamma::new(x, &(eps / scale))?;
    Ok(g.lower(a))
}

/// `sum_j x^j / (a+j)!` with a certified geometric tail, radius `<= eps`.
/// With `jmax = None` the cutoff is chosen from the bound.
fn temme_series(a: usize, x: &Rational, jmax: Option<usize>, eps: &Rational) -> Result<Ball> {
    // term_{j+1} / term_j = x/(a+j+1), so after J terms the rest is at most
    // term_J / (1 - x/(a+J+1)) once a+J+1 > x.
    let tail_after = |j: usize, term: &Rational| -> Option<Rational> {
        let q = x / int((a + j + 1) as i64);
        (q < Rational::one()).then(|| term / (int(1) - q))
    };
    let mut sum = Rational::zero();
    let mut term = Rational::new(BigInt::one(), factorial_int(a));
    let mut j = 0usize;
    loop {
        let done = match jmax {
            Some(m) => j > m,
            None => {
                matches!(tail_after(j, &term), Some(t) if x * int(2) < int((a + j + 1) as i64) && t <= *eps)
            }
        };
        if done {
            let tail = tail_after(j, &term).ok_or_else(|| {
                Error::Divergent(format!("jmax too small: x = {x} >= a + jmax + 2"))
            })?;
            let half = tail / int(2);
            return Ok(Ball::new(sum + &half, half));
        }
        sum += &term;
        j += 1;
        term = term * x / int((a + j) as i64);
    }
}

/// Both sides of `γ(a, N)/(a-1)! = e^{-N} N^a sum_j N^j/(a+j)!`, `a = n + p`:
/// the left from the closed form, the right from the series. Each has radius
/// `<= eps`.
pub fn gamma_temme_check(
    n: usize,
    p: usize,
    big_n: usize,
    jmax: Option<usize>,
    eps: &Rational,
) -> Result<(Ball, Ball)> {
    require_eps(eps)?;
    let a = n + p;
    if a < 1 {
        return invalid("gamma_temme_check needs n + p >= 1");
    }
    let x = int(big_n as i64);
    if big_n == 0 {
        return Ok((Ball::zero(), Ball::zero()));
    }
    let lhs = lower_gamma_int(a, &x, &(eps * factorial(a - 1)))?.div_rat(&factorial(a - 1))?;
    let xa = pow(&x, a);
    // e^{-N} <= 1 and the sum is <= e^N/N^a, so split eps evenly
    let s = temme_series(a, &x, jmax, &(eps / (int(2) * &xa)))?;
    let w = &xa * s.hi() + int(1);
    let e = exp_ball(&-&x, &(eps / (int(2) * w)))?;
    let rhs = (&e * &s).scale(&xa);
    Ok((lhs, rhs))
}

/// The `n`-th term of the delta expansion, `m = n + p - 1`:
/// `e^t |s(m, p-1)| γ(m+1, t) / (m! t^(m+1))`, written with the closed form as
/// `|s(m, p-1)| (e^t - Q_{m+1}(t)) / t^(m+1)`.
///
/// Returns the exact coefficients `c_n = |s(m,p-1)|/t^(m+1)` and
/// `d_n = c_n Q_{m+1}(t)` so that term `n` is `c_n e^t - d_n`.
fn delta_coefficients(p: usize, t: &Rational, nmax: usize) -> Vec<(Rational, Rational)> {
    let k = p - 1;
    let table = stirling1_table(nmax + k);
    (0..=nmax)
        .map(|n| {
            let m = n + k;
            let c = Rational::from_integer(table.unsigned(m, k)) / pow(t, m + 1);
            let d = &c * partial_exp(t, m + 1);
            (c, d)
        })
        .collect()
}

fn check_delta_args(p: usize, t: &Rational, eps: &Rational) -> Result<()> {
    require_eps(eps)?;
    if p < 2 {
        return invalid("the delta expansion needs p >= 2");
    }
    if !t.is_positive() {
        return invalid("the delta expansion needs t > 0");
    }
    Ok(())
}

/// Enclosures of the individual terms `n = 0..=nmax` of the delta expansion
/// of `pFp[1..1; 2..2; t]`, each with radius `<= eps`.
pub fn delta_expansion_terms(p: usize, t: &Rational, nmax: usize, eps: &Rational) -> Result<Vec<Ball>> {
    check_delta_args(p, t, eps)?;
    let coeffs = delta_coefficients(p, t, nmax);
    let cmax = coeffs.iter().map(|(c, _)| c.clone()).max().unwrap_or_else(Rational::one);
    let e = exp_ball(t, &(eps / (cmax + int(1))))?;
    Ok(coeffs
        .iter()
        .map(|(c, d)| e.scale(c) - Ball::exact(d.clone()))
        .collect())
}

/// The delta expansion `e^t sum_n |s(n+p-1, p-1)| γ(n+p, t) / ((n+p-1)! t^(n+p))`
/// of `pFp[1..1; 2..2; t]`: terms `n <= nmax` explicitly, the rest through the
/// closed-form Stirling-weighted tail. Radius `<= eps`.
///
/// Expanding `γ` by its series, term `m = n + p - 1` equals
/// `sum_l t^l h(m) / (m)_{l+2}` with `h(m) = |s(m,p-1)|/(m-1)!`, so the
/// remainder is `sum_l t^l T(M, 1/(m)_{l+2})` where `T` is
/// [`harmonic_tail`].
pub fn delta_expansion_partial(p: usize, t: &Rational, nmax: usize, eps: &Rational) -> Result<SeriesEnclosure> {
    check_delta_args(p, t, eps)?;
    let k = p - 1;
    let coeffs = delta_coefficients(p, t, nmax);
    let csum: Rational = coeffs.iter().map(|(c, _)| c.clone()).sum();
    let dsum: Rational = coeffs.iter().map(|(_, d)| d.clone()).sum();
    let e = exp_ball(t, &(eps / (int(4) * (&csum + int(1)))))?;
    let head = e.scale(&csum) - Ball::exact(dsum);

    let (tail, tail_bound) = stirling_weighted_tail(k, nmax + k, t, 0, eps / int(2))?;
    Ok(SeriesEnclosure {
        value: (head + tail).coarsen(bits_for(eps) + 4),
        terms_used: nmax + 1,
        tail_bound,
    })
}

/// Enclosure of `sum_{m>M} h_k(m) sum_{l>=0} x^l w_l(m)` where
/// `w_l = 1/(m)_{l+1+shift}` (`shift = 0`, [`Weight::Rising`]) or
/// `w_l = 1/(m (m)_{l+shift})` (`shift >= 1`, [`Weight::ReciprocalRising`]).
///
/// Returns the enclosure and the total truncation uncertainty. The `l`-series
/// is geometric with ratio at most `x/(M+3)` resp. `x/(M+1+shift)`.
pub(crate) fn stirling_weighted_tail(
    k: usize,
    cutoff: usize,
    x: &Rational,
    shift: usize,
    eps: Rational,
) -> Result<(Ball, Rational)> {
    let weight = |l: usize| {
        if shift == 0 {
            Weight::Rising(l + 1)
        } else {
            Weight::ReciprocalRising(l + shift)
        }
    };
    let ratio_den = if shift == 0 { cutoff + 3 } else { cutoff + 1 + shift };
    let q = x / int(ratio_den as i64);
    if q >= Rational::one() {
        return Err(Error::Divergent(format!(
            "cutoff {cutoff} too small for argument {x}"
        )));
    }
    let first = harmonic_tail(k, cutoff, weight(0), &(&eps / int(8)))?;
    // choose L with first.hi * q^L / (1 - q) <= eps/4
    let geo = first.hi() / (int(1) - &q);
    let mut l_count = 1usize;
    let mut rest = &geo * &q;
    while rest > &eps / int(4) {
        l_count += 1;
        rest *= &q;
    }
    let mut total = first;
    let mut xl = Rational::one();
    for l in 1..l_count {
        xl *= x;
        let share = &eps / (int(2 * l_count as i64) * &xl);
        total = total + harmonic_tail(k, cutoff, weight(l), &share)?.scale(&xl);
    }
    let half = &rest / int(2);
    let total = Ball::new(total.center() + &half, total.radius() + &half);
    let bound = total.radius().clone();
    Ok((total, bound))
}

/// `Li_p(x) = sum_{k>=1} x^k / k^p` truncated after `kmax` terms, `|x| <= 1`.
///
/// Tail: `|x|^(kmax+1) / ((kmax+1)^p (1-|x|))` for `|x| < 1`; the integral
/// test interval `[(kmax+1)^(1-p), kmax^(1-p)]/(p-1)` at `x = 1`; the first
/// omitted term at `x = -1`.
pub fn polylog_partial(p: usize, x: &Rational, kmax: usize) -> Result<SeriesEnclosure> {
    if p < 1 {
        return invalid("polylog_partial needs p >= 1");
    }
    if kmax < 1 {
        return invalid("polylog_partial needs kmax >= 1");
    }
    let ax = x.abs();
    if ax > Rational::one() {
        return invalid("polylog_partial needs |x| <= 1");
    }
    let unit = ax.is_one();
    if x.is_one() && p == 1 {
        return Err(Error::Divergent("Li_1(1) is the harmonic series".into()));
    }
    if x.is_zero() {
        return Ok(SeriesEnclosure {
            value: Ball::zero(),
            terms_used: kmax,
            tail_bound: Rational::zero(),
        });
    }
    let k1 = int(pow_int(kmax + 1, p));
    let (tail_center, tail_radius) = if !unit {
        let b = pow(&ax, kmax + 1) / (&k1 * (int(1) - &ax));
        (Rational::zero(), b)
    } else if x.is_one() {
        let lo = Rational::new(BigInt::from(kmax + 1), pow_int(kmax + 1, p)) / int(p as i64 - 1);
        let hi = Rational::new(BigInt::from(kmax), pow_int(kmax, p)) / int(p as i64 - 1);
        ((&lo + &hi) / int(2), (hi - lo) / int(2))
    } else {
        (Rational::zero(), k1.recip())
    };

    let head = if unit && kmax > 2048 {
        fixed_point_unit_sum(p, x.is_negative(), kmax, &tail_radius)
    } else {
        let mut sum = Rational::zero();
        let mut xk = Rational::one();
        for k in 1..=kmax {
            xk *= x;
            sum += &xk / int(pow_int(k, p));
        }
        Ball::exact(sum)
    };
    let value = Ball::new(head.center() + tail_center, head.radius() + &tail_radius);
    Ok(SeriesEnclosure {
        value,
        terms_used: kmax,
        tail_bound: tail_radius,
    })
}

/// `sum_{k<=kmax} (±1)^k / k^p` in fixed point, with the per-term truncation
/// errors (one ulp each, one-sided) kept in the radius. The scale is chosen
/// so the accumulated error stays below `tail / 64`.
fn fixed_point_unit_sum(p: usize, alternating: bool, kmax: usize, tail: &Rational) -> Ball {
    let bits = bits_for(&(tail / int(64 * kmax as i64)));
    let one = pow2(bits);
    let mut acc = BigInt::zero();
    for k in 1..=kmax {
        let term = &one / pow_int(k, p); // floor, error in [0, 1) ulp
        if alternating && k % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    let scale = Rational::new(BigInt::one(), one);
    let lo = int(acc.clone()) * &scale - if alternating { int(kmax as i64) * &scale } else { Rational::zero() };
    let hi = int(acc + kmax) * &scale;
    Ball::from_interval(lo, hi)
}

/// Coefficient of `t^k` in `qFr[1,...,1; 2,...,2; t]` with `q` ones and `r`
/// twos, straight from the Pochhammer definition:
/// `(1)_k^q / ((2)_k^r k!)`.
pub fn pfq_ones_twos_coefficient(q: usize, r: usize, k: usize) -> Rational {
    let one_k = factorial_int(k); // (1)_k
    let two_k = factorial_int(k + 1); // (2)_k
    Rational::new(
        num_traits::pow(one_k.clone(), q),
        num_traits::pow(two_k, r) * one_k,
    )
}

/// Both sides of the Laplace transform identity
/// `∫_0^∞ e^{-st} pFp[1..1; 2..2; t] dt = Li_p(1/s)` in series form.
///
/// Left: the `pFp` coefficients integrated term by term, `∫ e^{-st} t^k = k!/s^{k+1}`,
/// with the tail of the resulting series bounded geometrically. Right:
/// [`polylog_partial`] at `1/s`. Both use `kmax` terms.
pub fn laplace_identity_check(p: usize, s: &Rational, kmax: usize) -> Result<(Ball, Ball)> {
    if p < 1 {
        return invalid("laplace_identity_check needs p >= 1");
    }
    if *s <= Rational::one() {
        return invalid("laplace_identity_check needs s > 1");
    }
    if kmax < 1 {
        return invalid("laplace_identity_check needs kmax >= 1");
    }
    let inv = s.recip();
    let mut lhs = Rational::zero();
    let mut sk = inv.clone(); // 1/s^{k+1}
    for k in 0..kmax {
        lhs += pfq_ones_twos_coefficient(p, p, k) * factorial(k) * &sk;
        sk *= &inv;
    }
    // terms are 1/((k+1)^p s^{k+1}); the rest from k = kmax is geometric
    let tail = &sk / (int(pow_int(kmax + 1, p)) * (int(1) - &inv));
    let lhs = Ball::new(lhs, tail);
    let rhs = polylog_partial(p, &inv, kmax)?.value;
    Ok((lhs, rhs))
}

/// `n! (p-1)! (-1)^n S_n^p`, the exact value of
/// `∫_0^∞ (1 - e^{-t})^n e^{-t} t^{p-1} dt`.
pub fn integral_rep_exact(n: usize, p: usize) -> Result<Rational> {
    if p < 1 {
        return invalid("integral representation needs p >= 1");
    }
    let s = crate::stirling::gen_stirling_explicit(n, p)?;
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    Ok(factorial(n) * factorial(p - 1) * sign * s)
}

// 10-point Gauss–Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_4,
    0.219_086_362_515_982_0,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

fn gauss_legendre(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        let half = 0.5 * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            total += w * (f(mid - half * x) + f(mid + half * x));
        }
    }
    total * 0.5 * h
}

/// Floating-point quadrature of `∫_0^∞ (1 - e^{-t})^n e^{-t} t^{p-1} dt`, for
/// comparison with [`integral_rep_exact`]. Test support only: the radius is
/// a step-halving estimate plus the analytic tail, not a certified bound.
///
/// Requires `tol >= 1e-12`.
pub fn quadrature_integral_rep(n: usize, p: usize, tol: &Rational) -> Result<Ball> {
    if p < 1 {
        return invalid("integral representation needs p >= 1");
    }
    if *tol < crate::arith::ten_pow_neg(12) {
        return invalid("quadrature tolerance must be >= 1e-12");
    }
    let tol_f = crate::arith::to_f64(tol);
    // the integrand is below e^{-t} t^{p-1}, whose tail is
    // Γ(p, T) = (p-1)! e^{-T} sum_{j<p} T^j/j!
    let upper_tail = |big_t: f64| {
        let mut term = 1.0;
        let mut sum = 0.0;
        for j in 0..p {
            sum += term;
            term *= big_t / (j + 1) as f64;
        }
        (1..p).map(|i| i as f64).product::<f64>() * (-big_t).exp() * sum
    };
    let mut big_t = 8.0;
    while upper_tail(big_t) > tol_f / 2.0 {
        big_t += 4.0;
    }
    let f = move |t: f64| (-(-t).exp_m1()).powi(n as i32) * (-t).exp() * t.powi(p as i32 - 1);
    let panels = (big_t * 2.0).ceil() as usize;
    let coarse = gauss_legendre(&f, 0.0, big_t, panels);
    let fine = gauss_legendre(&f, 0.0, big_t, 2 * panels);
    let err = (fine - coarse).abs() + upper_tail(big_t) + 4.0 * f64::EPSILON * fine.abs();
    let center = Rational::from_float(fine).ok_or_else(|| Error::Divergent("quadrature overflow".into()))?;
    let radius = Rational::from_float(err).unwrap_or_else(|| ratio(1, 1));
    Ok(Ball::new(center, radius))
}
