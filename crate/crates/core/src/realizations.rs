//! Concrete modules given by action coefficients on a finite index window.
//!
//! * The Witt algebra `x_m` acting on `span{I(n)}` by `x_m . I(n) = (n - m) I(m + n)`.
//! * Intermediate-series modules `A_{a,b}`: `L(m) . v_k = (a + k + b m) v_{k+m}`,
//!   with `I(m)`, `C`, `C1` acting as zero.
//!
//! Witt brackets follow the same convention as `L`: `[x_m, x_n] = (n - m) x_{m+n}`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{bracket_generators, Generator};
use crate::scalar::{rat, Rational, Scalar};

/// `x_m . I(n)`: coefficient `n - m` at index `m + n`.
pub fn witt_action(m: i64, n: i64) -> (i64, i64) {
    (n - m, m + n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateSeriesParams {
    pub a: Rational,
    pub b: Rational,
}

impl IntermediateSeriesParams {
    pub fn new(a: Rational, b: Rational) -> Self {
        IntermediateSeriesParams { a, b }
    }

    /// `A_{0,-1}`, which reproduces [`witt_action`].
    pub fn witt() -> Self {
        IntermediateSeriesParams::new(rat(0), rat(-1))
    }
}

/// Coefficient of `v_{k+m}` in `L(m) . v_k`.
pub fn intermediate_series_action(p: &IntermediateSeriesParams, m: i64, k: i64) -> Rational {
    &p.a + rat(k) + &p.b * rat(m)
}

/// Action of an arbitrary generator on `v_k`: `(coefficient, target index)`.
pub fn intermediate_series_generator(
    p: &IntermediateSeriesParams,
    g: Generator,
    k: i64,
) -> (Rational, i64) {
    match g {
        Generator::L(m) => (intermediate_series_action(p, m, k), k + m),
        Generator::I(m) => (rat(0), k + m),
        Generator::C | Generator::C1 => (rat(0), k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowFailure {
    pub indices: Vec<i64>,
    pub residual: String,
}

/// Result of checking an identity at every index tuple in `[-window, window]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub window: i64,
    pub checks: usize,
    pub failures: Vec<WindowFailure>,
}

impl WindowReport {
    fn new(window: i64) -> Self {
        WindowReport {
            window,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, indices: Vec<i64>, residual: &Rational) {
        self.checks += 1;
        if !Scalar::is_zero(residual) {
            self.failures.push(WindowFailure {
                indices,
                residual: residual.to_string(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for WindowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window {}: {} checks, {} failures",
            self.window,
            self.checks,
            self.failures.len()
        )
    }
}

fn window(w: i64) -> std::ops::RangeInclusive<i64> {
    -w..=w
}

/// `x_a.(x_b.I(n)) - x_b.(x_a.I(n)) - (b - a) x_{a+b}.I(n) = 0` for all
/// `|a|, |b|, |n| <= w`.
pub fn witt_module_check(w: i64) -> WindowReport {
    let mut report = WindowReport::new(w);
    let act = |m: i64, (q, n): (i64, i64)| {
        let (k, t) = witt_action(m, n);
        (q * k, t)
    };
    for a in window(w) {
        for b in window(w) {
            for n in window(w) {
                let (ab, t) = act(a, act(b, (1, n)));
                let (ba, t2) = act(b, act(a, (1, n)));
                let (k, t3) = witt_action(a + b, n);
                debug_assert!(t == t2 && t == t3);
                report.record(vec![a, b, n], &rat(ab - ba - (b - a) * k));
            }
        }
    }
    report
}

/// Module axiom `g.(h.v_k) - h.(g.v_k) = [g, h].v_k` for all generator pairs
/// with `|index| <= w` and `|k| <= w`. Central terms act as zero.
pub fn intermediate_series_check(p: &IntermediateSeriesParams, w: i64) -> WindowReport {
    module_check(|g, k| intermediate_series_generator(p, g, k), w)
}

/// Module axiom for any action sending `v_k` to a multiple of one basis vector.
fn module_check(act: impl Fn(Generator, i64) -> (Rational, i64), w: i64) -> WindowReport {
    let mut report = WindowReport::new(w);
    let gens: Vec<Generator> = window(w)
        .flat_map(|k| [Generator::L(k), Generator::I(k)])
        .collect();
    let twice = |g, h, k| {
        let (q1, k1) = act(h, k);
        let (q2, _) = act(g, k1);
        q1 * q2
    };
    for &g in &gens {
        for &h in &gens {
            let br = bracket_generators(g, h).expect("window indices are small");
            for k in window(w) {
                let lhs = twice(g, h, k) - twice(h, g, k);
                let mut rhs = rat(0);
                if let Some((z, c)) = br.mode {
                    rhs += act(z, k).0 * rat(c);
                }
                if let Some((z, c)) = &br.central {
                    rhs += act(*z, k).0 * c;
                }
                let (gi, hi) = (g.index().unwrap_or(0), h.index().unwrap_or(0));
                report.record(vec![gi, hi, k], &(lhs - rhs));
            }
        }
    }
    report
}

/// Checks that `[L(m), I(n)]` with its central term dropped is
/// `(n - m) I(m + n)` for `|m|, |n| <= w`.
pub fn semidirect_check(w: i64) -> WindowReport {
    let mut report = WindowReport::new(w);
    for m in window(w) {
        for n in window(w) {
            let br = bracket_generators(Generator::L(m), Generator::I(n))
                .expect("window indices are small")
                .to_element::<Rational>()
                .without_center();
            let (k, t) = witt_action(m, n);
            let residual = br.coefficient(Generator::I(t)) - rat(k);
            let stray = br
                .terms()
                .any(|(g, q)| g != Generator::I(t) && !Scalar::is_zero(q));
            report.record(vec![m, n], &if stray { rat(1) } else { residual });
        }
    }
    report
}

/// Pairs `(m, n)` where the `A_{a,b}` table differs from [`witt_action`].
pub fn table_mismatches(p: &IntermediateSeriesParams, w: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in window(w) {
        for n in window(w) {
            let (k, t) = witt_action(m, n);
            let (q, t2) = intermediate_series_generator(p, Generator::L(m), n);
            if q != rat(k) || t != t2 {
                out.push((m, n));
            }
        }
    }
    out
}
