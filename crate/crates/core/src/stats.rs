//! Unpaired two-sample Student's t-test with pooled variance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EPS: f64 = 1e-15;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 500;

/// Lanczos approximation (g = 7, n = 9) of `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Continued fraction for the incomplete beta function, modified Lentz method.
fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    // The fraction converges fast for x < (a+1)/(a+b+2); use the symmetry otherwise.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(x, a, b) / a
    } else {
        1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b
    }
}

/// Two-tailed tail mass `P(|T| >= |t|)` for `df` degrees of freedom.
fn two_tailed(t: f64, df: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    if t.is_infinite() {
        return 0.0;
    }
    regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5).clamp(0.0, 1.0)
}

/// CDF of Student's t distribution.
pub fn t_cdf(t: f64, df: f64) -> Result<f64> {
    if df.is_nan() || df < 1.0 {
        return Err(Error::InvalidDof(df));
    }
    if t == 0.0 {
        return Ok(0.5);
    }
    let tail = 0.5 * two_tailed(t, df);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

/// Result of an unpaired two-sample t-test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: usize,
    pub p_two_tailed: f64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub sd_a: f64,
    pub sd_b: f64,
}

fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Pooled-variance Student's t-test, two-tailed.
///
/// Zero pooled variance gives `t = 0, p = 1` for equal means and
/// `t = ±inf, p = 0` otherwise.
pub fn student_t_unpaired(xs: &[f64], ys: &[f64]) -> Result<TTestResult> {
    if xs.len() < 2 || ys.len() < 2 {
        return Err(Error::SampleTooSmall(xs.len(), ys.len()));
    }
    let (mean_a, sd_a) = mean_and_sd(xs);
    let (mean_b, sd_b) = mean_and_sd(ys);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let df = xs.len() + ys.len() - 2;
    let pooled = ((na - 1.0) * sd_a * sd_a + (nb - 1.0) * sd_b * sd_b) / df as f64;
    let diff = mean_a - mean_b;

    let (t, p) = if pooled == 0.0 {
        if diff == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY.copysign(diff), 0.0)
        }
    } else {
        let t = diff / (pooled * (1.0 / na + 1.0 / nb)).sqrt();
        (t, two_tailed(t, df as f64))
    };
    Ok(TTestResult {
        t,
        df,
        p_two_tailed: p,
        mean_a,
        mean_b,
        sd_a,
        sd_b,
    })
}
