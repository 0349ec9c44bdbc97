//! Pearson correlation with Student-t p-values, simple least squares, and
//! mean-response confidence bands.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Tail of Stirling's series, `ln Γ(z) - [(z - ½) ln z - z + ½ ln 2π]`.
fn stirling_tail(z: f64) -> f64 {
    let z2 = z * z;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z
}

/// `ln B(a, b)`. When one argument is large the difference
/// `ln Γ(big) - ln Γ(big + small)` is taken from Stirling's series directly
/// instead of subtracting two huge logs.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (small, big) = if a < b { (a, b) } else { (b, a) };
    if big < 10.0 {
        return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    }
    let sum = big + small;
    let diff = -(big - 0.5) * (small / big).ln_1p() - small * sum.ln() + small + stirling_tail(big)
        - stirling_tail(sum);
    ln_gamma(small) + diff
}

/// Regularized incomplete beta `I_x(a, b)`, given `x` and `y = 1 - x`
/// separately so callers can pass an accurate complement.
fn inc_beta(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        (ln_front.exp() * beta_continued_fraction(a, b, x) / a).clamp(0.0, 1.0)
    } else {
        (1.0 - ln_front.exp() * beta_continued_fraction(b, a, y) / b).clamp(0.0, 1.0)
    }
}

/// Continued fraction for the incomplete beta, modified Lentz evaluation.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    const MAX_ITER: usize = 10_000;

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

fn check_df(df: f64) -> Result<()> {
    if df >= 1.0 && df.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDegreesOfFreedom)
    }
}

/// Upper-tail probability `P(T > t)` of Student's t with `df` degrees of
/// freedom.
pub fn student_t_sf(t: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    Ok(t_sf_unchecked(t, df))
}

fn t_sf_unchecked(t: f64, df: f64) -> f64 {
    if t == 0.0 {
        return 0.5;
    }
    let t2 = t * t;
    let denom = df + t2;
    let tail = 0.5 * inc_beta(0.5 * df, 0.5, df / denom, t2 / denom);
    if t > 0.0 {
        tail
    } else {
        1.0 - tail
    }
}

/// Density of Student's t.
pub fn student_t_pdf(t: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    Ok(t_pdf_unchecked(t, df))
}

fn t_pdf_unchecked(t: f64, df: f64) -> f64 {
    let ln_norm = -ln_beta(0.5 * df, 0.5) - 0.5 * df.ln();
    (ln_norm - 0.5 * (df + 1.0) * (t * t / df).ln_1p()).exp()
}

/// Two-sided p-value `2·P(T > |t|)`.
pub fn two_sided_p(t: f64, df: f64) -> Result<f64> {
    Ok((2.0 * student_t_sf(t.abs(), df)?).clamp(0.0, 1.0))
}

/// The `t` with `P(T > t) = p`, by safeguarded Newton iteration on the
/// survival function.
pub fn student_t_inverse_sf(p: f64, df: f64) -> Result<f64> {
    check_df(df)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return Ok(-student_t_inverse_sf(1.0 - p, df)?);
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    while t_sf_unchecked(hi, df) > p {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Ok(f64::INFINITY);
        }
    }

    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = t_sf_unchecked(t, df) - p;
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let slope = -t_pdf_unchecked(t, df);
        let mut next = t - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-10 * t.abs().max(1.0) || hi - lo <= 1e-12 * hi.max(1.0) {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

/// Quantile `q` with `P(T <= q) = prob`.
pub fn student_t_quantile(prob: f64, df: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::InvalidProbability(prob));
    }
    student_t_inverse_sf(1.0 - prob, df)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub r: f64,
    pub t: f64,
    pub df: u64,
    pub p_two_sided: f64,
    pub n: u64,
}

impl CorrelationResult {
    /// Significance of a given `r` over `n` pairs.
    pub fn from_r(r: f64, n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewPoints {
                needed: 3,
                got: n as usize,
            });
        }
        let r = r.clamp(-1.0, 1.0);
        let df = n - 2;
        let dff = df as f64;
        let (t, p) = if r.abs() == 1.0 {
            (r.signum() * f64::INFINITY, 0.0)
        } else {
            let t = r * (dff / (1.0 - r * r)).sqrt();
            (t, two_sided_p(t, dff)?)
        };
        Ok(CorrelationResult {
            r,
            t,
            df,
            p_two_sided: p,
            n,
        })
    }

    /// The p-value underflowed to zero even though |r| < 1.
    pub fn p_underflow(&self) -> bool {
        self.p_two_sided == 0.0 && self.r.abs() < 1.0
    }
}

impl fmt::Display for CorrelationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = {:.4}, df = {}, ", self.r, self.df)?;
        if self.p_underflow() {
            write!(f, "p < {:e} (machine epsilon)", f64::EPSILON)
        } else {
            write!(f, "p = {:.6e}", self.p_two_sided)
        }
    }
}

fn check_pairs(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: x.len(),
        });
    }
    Ok(())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Centered second moments `(Sxx, Syy, Sxy)` and the means.
fn moments(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64, f64) {
    let mx = mean(x);
    let my = mean(y);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    (mx, my, sxx, syy, sxy)
}

/// Pearson's product-moment correlation with a two-sided t-test.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    check_pairs(x, y)?;
    let (_, _, sxx, syy, sxy) = moments(x, y);
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    CorrelationResult::from_r(sxy / (sxx * syy).sqrt(), x.len() as u64)
}

/// Least-squares line `y = intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Residual standard error, `sqrt(SSR / (n - 2))`.
    pub residual_se: f64,
    pub n: u64,
    pub x_mean: f64,
    /// Centered sum of squares of x.
    pub sxx: f64,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// Confidence band for the mean response at `at`:
    /// `ŷ ± t · s · sqrt(1/n + (at - x̄)² / Sxx)`.
    pub fn confidence_band(&self, at: f64, level: f64) -> Result<(f64, f64)> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::InvalidProbability(level));
        }
        if self.n < 3 {
            return Err(Error::TooFewPoints {
                needed: 3,
                got: self.n as usize,
            });
        }
        if self.sxx <= 0.0 {
            return Err(Error::ZeroVariance);
        }
        let t = student_t_quantile((1.0 + level) / 2.0, (self.n - 2) as f64)?;
        let dx = at - self.x_mean;
        let half = t * self.residual_se * (1.0 / self.n as f64 + dx * dx / self.sxx).sqrt();
        let y = self.predict(at);
        Ok((y - half, y + half))
    }
}

pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    check_pairs(x, y)?;
    let (mx, my, sxx, _, sxy) = moments(x, y);
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| {
            let e = b - (intercept + slope * a);
            e * e
        })
        .sum();
    let n = x.len();
    Ok(RegressionFit {
        slope,
        intercept,
        residual_se: (ssr / (n - 2) as f64).sqrt(),
        n: n as u64,
        x_mean: mx,
        sxx,
    })
}

/// Free-function form of [`RegressionFit::confidence_band`].
pub fn confidence_band(fit: &RegressionFit, at: f64, level: f64) -> Result<(f64, f64)> {
    fit.confidence_band(at, level)
}
