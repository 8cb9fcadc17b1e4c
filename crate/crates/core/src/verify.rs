//! Runnable identity checks, grouped into suites. Each check names the
//! formula it exercises and reports a short detail line.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::arith::{factorial, int, ratio, ten_pow_neg, to_f64};
use crate::ball::Ball;
use crate::series;
use crate::stirling;
use crate::zeta;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Stirling,
    Gf,
    Gamma,
    Integral,
    Zeta,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "stirling", "gf", "gamma", "integral", "zeta"];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "stirling" => Suite::Stirling,
            "gf" => Suite::Gf,
            "gamma" => Suite::Gamma,
            "integral" => Suite::Integral,
            "zeta" => Suite::Zeta,
            _ => return Err(format!("unknown suite {s:?}; expected one of {:?}", Suite::NAMES)),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::All, Suite::Stirling, Suite::Gf, Suite::Gamma, Suite::Integral, Suite::Zeta]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

/// A check that has not run yet. `run` returns a detail line on success and
/// a description of the first violation on failure.
#[derive(Clone, Copy)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    /// The formula the check validates.
    pub formula: &'static str,
    pub run: fn() -> Result<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub name: &'static str,
    pub formula: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn execute(&self) -> Outcome {
        let (passed, detail) = match (self.run)() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Outcome {
            suite: self.suite,
            name: self.name,
            formula: self.formula,
            passed,
            detail,
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crate::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The checks belonging to `suite` (every check for [`Suite::All`]).
pub fn checks(suite: Suite) -> Vec<Check> {
    let all = [
        Check {
            suite: Suite::Stirling,
            name: "three-routes",
            formula: "S_n^p: explicit sum = recurrence in p = S(1-p, n+1), n <= 150, p <= 8",
            run: three_routes,
        },
        Check {
            suite: Suite::Stirling,
            name: "size-and-sign",
            formula: "|S_n^p| <= 1/n! and sign S_n^p = (-1)^n",
            run: size_and_sign,
        },
        Check {
            suite: Suite::Stirling,
            name: "first-kind-sums",
            formula: "sum_k s(n,k) x^k = x(x-1)...(x-n+1) at x = 1, -1, 2",
            run: first_kind_sums,
        },
        Check {
            suite: Suite::Stirling,
            name: "first-kind-bound",
            formula: "|s(n+1,m+1)| <= n! (ln n)^m / m! (1 + m/ln n)",
            run: first_kind_bound,
        },
        Check {
            suite: Suite::Stirling,
            name: "g-partial-fractions",
            formula: "(-1)^n/(x)_{n+1} = (-1)^n/n! sum_k (-1)^k C(n,k)/(k+x)",
            run: g_partial_fractions,
        },
        Check {
            suite: Suite::Gf,
            name: "horizontal-gf",
            formula: "sum_n S_n^p t^n = e^{-t} pFp[1..1; 2..2; t]",
            run: horizontal_gf,
        },
        Check {
            suite: Suite::Gf,
            name: "vertical-gf",
            formula: "sum_p S_n^p t^(p-1) = (-1)^n / (1-t)_{n+1}",
            run: vertical_gf,
        },
        Check {
            suite: Suite::Gf,
            name: "delta-expansion",
            formula: "pFp[1..1; 2..2; t] = e^t sum_n (-1)^n s(n+p-1,p-1) γ(n+p,t) / ((n+p-1)! t^(n+p))",
            run: delta_expansion,
        },
        Check {
            suite: Suite::Gf,
            name: "laplace-polylog",
            formula: "∫ e^{-st} pFp[1..1; 2..2; t] dt = Li_p(1/s)",
            run: laplace_polylog,
        },
        Check {
            suite: Suite::Gamma,
            name: "closed-form-vs-series",
            formula: "1 - e^{-N} sum_{j<a} N^j/j! = e^{-N} N^a sum_j N^j/(a+j)!",
            run: closed_form_vs_series,
        },
        Check {
            suite: Suite::Gamma,
            name: "lower-gamma-range",
            formula: "0 < γ(a,x) < (a-1)!, increasing in x",
            run: lower_gamma_range,
        },
        Check {
            suite: Suite::Integral,
            name: "integral-representation",
            formula: "∫_0^∞ (1-e^{-t})^n e^{-t} t^(p-1) dt = n! (p-1)! (-1)^n S_n^p",
            run: integral_representation,
        },
        Check {
            suite: Suite::Zeta,
            name: "oracle-agreement",
            formula: "accelerated η(p)/(1-2^(1-p)) meets Euler-Maclaurin ζ(p) at 1e-30",
            run: oracle_agreement,
        },
        Check {
            suite: Suite::Zeta,
            name: "split-representation",
            formula: "ζ(p) = sum S_n^p R^(n+1)/(n+1) + sum |s(m,p-1)|/(m m!) (γ(m+1,R)/R^m + e^{-R})",
            run: split_representation,
        },
        Check {
            suite: Suite::Zeta,
            name: "error-decomposition",
            formula: "ζ(p) - ζ_N(p) = ε1 - ε2 + ε3 + ε4 and ε1 <= e^{-N}/√N",
            run: error_decomposition,
        },
        Check {
            suite: Suite::Zeta,
            name: "approximant-decay",
            formula: "|ζ(p) - ζ_N(p)| <= C N e^{-N}",
            run: approximant_decay,
        },
    ];
    all.into_iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .collect()
}

/// Runs the checks of `suite` sequentially.
pub fn run_suite(suite: Suite) -> Vec<Outcome> {
    checks(suite).iter().map(Check::execute).collect()
}

fn three_routes() -> Result<String, String> {
    let rows = lib(stirling::gen_stirling_rows(8, 150))?;
    for row in &rows {
        let p = row.p();
        for n in 0..=150 {
            let e = lib(stirling::gen_stirling_explicit(n, p))?;
            let b = lib(stirling::gen_stirling_butzer(n, p))?;
            ensure(&e == row.get(n) && e == b, || format!("routes differ at n = {n}, p = {p}"))?;
        }
    }
    Ok("1208 values equal across explicit, recurrence and negative-order routes".into())
}

fn size_and_sign() -> Result<String, String> {
    let rows = lib(stirling::gen_stirling_rows(8, 150))?;
    for row in &rows {
        for (n, s) in row.values().iter().enumerate() {
            ensure(s.abs() <= factorial(n).recip(), || format!("|S_{n}^{}| > 1/n!", row.p()))?;
            let sign_ok = if n % 2 == 0 { s.is_positive() } else { s.is_negative() };
            ensure(sign_ok, || format!("sign of S_{n}^{} is wrong", row.p()))?;
        }
    }
    Ok("n <= 150, p <= 8".into())
}

fn first_kind_sums() -> Result<String, String> {
    let t = stirling::stirling1_table(40);
    for n in 0..=40usize {
        let row = t.row(n);
        let at = |x: i64| -> num_bigint::BigInt {
            row.iter()
                .enumerate()
                .map(|(k, s)| s * num_bigint::BigInt::from(x).pow(k as u32))
                .sum()
        };
        let falling = |x: i64| -> num_bigint::BigInt { (0..n as i64).map(|i| num_bigint::BigInt::from(x - i)).product() };
        for x in [1, -1, 2] {
            ensure(at(x) == falling(x), || format!("falling factorial mismatch at n = {n}, x = {x}"))?;
        }
    }
    Ok("n <= 40".into())
}

fn first_kind_bound() -> Result<String, String> {
    let t = stirling::stirling1_table(61);
    for n in 2..=60usize {
        for m in 1..n {
            let b = lib(stirling::stirling1_bound(n, m))?;
            ensure(int(t.unsigned(n + 1, m + 1)) <= b, || format!("bound fails at n = {n}, m = {m}"))?;
        }
    }
    Ok("2 <= n <= 60, 1 <= m < n".into())
}

fn g_partial_fractions() -> Result<String, String> {
    for n in 0..=12 {
        for x in [ratio(1, 2), ratio(-3, 2), int(3), ratio(7, 3)] {
            let a = lib(stirling::g_value(n, &x))?;
            let b = lib(stirling::g_partial_fraction(n, &x))?;
            ensure(a == b, || format!("mismatch at n = {n}, x = {x}"))?;
        }
    }
    Ok("n <= 12, four rational points".into())
}

fn horizontal_gf() -> Result<String, String> {
    let eps = ten_pow_neg(25);
    for p in 2..=4 {
        for t in [ratio(1, 2), int(1), ratio(3, 2)] {
            let lhs = lib(series::horizontal_gf_partial(p, &t, 60))?;
            let rhs = lib(series::horizontal_gf_closed(p, &t, &eps))?;
            ensure(lhs.value.radius() + rhs.radius() <= eps, || format!("radius too large at p = {p}, t = {t}"))?;
            ensure(lhs.value.intersects(&rhs), || format!("no intersection at p = {p}, t = {t}"))?;
        }
    }
    Ok("p in 2..=4, t in {1/2, 1, 3/2}, radius <= 1e-25".into())
}

fn vertical_gf() -> Result<String, String> {
    let t = ratio(1, 2);
    for n in [1, 5, 10] {
        let partial = lib(stirling::vertical_gf_partial(n, &t, 80))?;
        let termwise = lib(stirling::vertical_gf_partial_termwise(n, &t, 80))?;
        let limit = lib(stirling::vertical_gf_limit(n, &t))?;
        let bound = lib(stirling::vertical_gf_tail_bound(n, &t, 80))?;
        ensure(partial == termwise, || format!("closed and termwise partial sums differ at n = {n}"))?;
        ensure((limit - partial).abs() <= bound, || format!("tail bound violated at n = {n}"))?;
    }
    Ok("pmax = 80, t = 1/2, n in {1, 5, 10}".into())
}

fn delta_expansion() -> Result<String, String> {
    let eps = ten_pow_neg(10);
    for p in [2, 3] {
        for t in [2, 5] {
            let t = int(t);
            let d = lib(series::delta_expansion_partial(p, &t, 60, &eps))?;
            let f = lib(series::pfp_ones_twos(p, &t, &eps))?;
            ensure(d.value.intersects(&f.value), || format!("no intersection at p = {p}, t = {t}"))?;
        }
    }
    Ok("p in {2, 3}, t in {2, 5}, nmax = 60, 1e-10".into())
}

fn laplace_polylog() -> Result<String, String> {
    for p in 2..=4 {
        for s in [2, 3] {
            let (l, r) = lib(series::laplace_identity_check(p, &int(s), 200))?;
            ensure(l.intersects(&r), || format!("no intersection at p = {p}, s = {s}"))?;
        }
    }
    Ok("p in 2..=4, s in {2, 3}, 200 terms".into())
}

fn closed_form_vs_series() -> Result<String, String> {
    let eps = ten_pow_neg(18);
    for n in 0..=5 {
        for p in [2, 3] {
            for big_n in [5, 10] {
                let (l, r) = lib(series::gamma_temme_check(n, p, big_n, None, &eps))?;
                ensure(l.intersects(&r), || format!("no intersection at n = {n}, p = {p}, N = {big_n}"))?;
            }
        }
    }
    Ok("n <= 5, p in {2, 3}, N in {5, 10}, 1e-18".into())
}

fn lower_gamma_range() -> Result<String, String> {
    let eps = ten_pow_neg(20);
    for a in 1..=6 {
        let top = factorial(a - 1);
        let mut prev: Option<Ball> = None;
        for x in [1, 2, 4, 8, 16] {
            let g = lib(series::lower_gamma_int(a, &int(x), &eps))?;
            ensure(g.lo().is_positive() && g.hi() < top, || format!("γ({a}, {x}) out of range"))?;
            if let Some(pr) = &prev {
                ensure(pr.hi() < g.lo(), || format!("γ({a}, x) not increasing at x = {x}"))?;
            }
            prev = Some(g);
        }
    }
    Ok("a <= 6, x in {1, 2, 4, 8, 16}".into())
}

fn integral_representation() -> Result<String, String> {
    let tol = ten_pow_neg(9);
    let mut worst = 0.0f64;
    for n in 0..=10 {
        for p in 1..=5 {
            let q = lib(series::quadrature_integral_rep(n, p, &tol))?;
            let exact = lib(series::integral_rep_exact(n, p))?;
            let err = (q.center() - &exact).abs();
            ensure(err <= &tol * int(10), || format!("quadrature off by {:.3e} at n = {n}, p = {p}", to_f64(&err)))?;
            worst = worst.max(to_f64(&err));
        }
    }
    Ok(format!("n <= 10, p <= 5, worst error {worst:.2e}"))
}

fn oracle_agreement() -> Result<String, String> {
    let eps = ten_pow_neg(30);
    for p in [2, 3, 4, 5, 7] {
        let a = lib(zeta::zeta_oracle(p, &eps))?;
        let b = lib(zeta::zeta_euler_maclaurin(p, &eps))?;
        ensure(a.intersects(&b), || format!("oracles disagree at p = {p}"))?;
    }
    Ok("p in {2, 3, 4, 5, 7}".into())
}

fn split_representation() -> Result<String, String> {
    let eps = ten_pow_neg(12);
    for p in [2, 3] {
        let z = lib(zeta::zeta_oracle(p, &ten_pow_neg(40)))?;
        for r in [1, 5] {
            let s = lib(zeta::zeta_split_eval(p, &int(r), 120, 120, &eps))?;
            ensure(s.radius() + z.radius() <= ten_pow_neg(10), || format!("radius too large at p = {p}, R = {r}"))?;
            ensure(s.intersects(&z), || format!("split misses ζ({p}) at R = {r}"))?;
        }
    }
    Ok("p in {2, 3}, R in {1, 5}, radius <= 1e-10".into())
}

fn error_decomposition() -> Result<String, String> {
    for p in [2, 3] {
        let z = lib(zeta::zeta_oracle(p, &ten_pow_neg(40)))?;
        for n in [10, 15] {
            let b = lib(zeta::epsilon_breakdown(p, n))?;
            let approx = lib(zeta::zeta_n_approx(p, n))?.value;
            let truth = &z - &Ball::exact(approx);
            ensure(b.combined().intersects(&truth), || format!("decomposition fails at p = {p}, N = {n}"))?;
        }
    }
    for n in [10, 20] {
        let b = lib(zeta::epsilon_breakdown(3, n))?;
        ensure(b.eps1.hi() <= b.eps1_bound, || format!("ε1 exceeds e^-N/√N at N = {n}"))?;
    }
    Ok("identity at p in {2, 3}, N in {10, 15}; ε1 bound at p = 3, N in {10, 20}".into())
}

fn approximant_decay() -> Result<String, String> {
    let ns = [6, 10, 14, 18, 22];
    let mut details = Vec::new();
    for p in [2, 3, 5] {
        let recs = lib(zeta::error_sweep(p, &ns))?;
        for w in recs.windows(2) {
            ensure(w[1].abs_err < w[0].abs_err, || format!("error not decreasing at p = {p}, N = {}", w[1].n))?;
        }
        for r in &recs {
            ensure(r.oracle.radius() <= &ten_pow_neg(40), || "oracle radius above 1e-40".into())?;
            // 50 N e^{-N} <= 50 N (e^{-N} upper end)
            let e = lib(crate::ball::exp_ball(&-int(r.n as i64), &ten_pow_neg(30)))?;
            let envelope = int(50 * r.n as i64) * e.lo();
            ensure(r.abs_err <= envelope, || format!("abs_err above 50 N e^-N at p = {p}, N = {}", r.n))?;
        }
        let slope = zeta::fit_log_slope(&recs).unwrap_or(0.0);
        ensure(slope <= -0.9, || format!("log-error slope {slope:.3} > -0.9 at p = {p}"))?;
        let c = recs.iter().map(|r| to_f64(&r.ratio)).fold(0.0, f64::max);
        details.push(format!("p={p}: slope {slope:.3}, C {c:.3e}"));
    }
    Ok(details.join("; "))
}
