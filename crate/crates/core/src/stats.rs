//! Small statistics helpers shared by the experiments and the test suites.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Mean and sample standard deviation (`n − 1` denominator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub stddev: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let count = values.len();
        if count == 0 {
            return Summary {
                count,
                mean: f64::NAN,
                stddev: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let stddev = if count < 2 {
            0.0
        } else {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (count - 1) as f64).sqrt()
        };
        Summary { count, mean, stddev }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        self.stddev / (self.count as f64).sqrt()
    }
}

/// Pearson statistic of observed counts against a uniform expectation.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&o| {
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum()
}

/// Upper critical value of the chi-square distribution at significance `alpha`.
pub fn chi_square_critical(degrees_of_freedom: f64, alpha: f64) -> f64 {
    ChiSquared::new(degrees_of_freedom)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - alpha)
}

/// Probability distribution of a sum of `m` independent Bernoulli(`p`)
/// variables, built one variable at a time.
pub fn binomial_pmf(m: usize, p: f64) -> Vec<f64> {
    let mut dist = vec![0.0; m + 1];
    dist[0] = 1.0;
    for n in 1..=m {
        for j in (1..=n).rev() {
            dist[j] = dist[j] * (1.0 - p) + dist[j - 1] * p;
        }
        dist[0] *= 1.0 - p;
    }
    dist
}

/// `E[(Y − mp)^order]` for `Y ~ Binomial(m, p)`.
pub fn binomial_central_moment(m: usize, p: f64, order: u32) -> f64 {
    let mu = m as f64 * p;
    binomial_pmf(m, p)
        .iter()
        .enumerate()
        .map(|(j, w)| w * (j as f64 - mu).powi(order as i32))
        .sum()
}

/// Formats like C's `%.9g`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        let fixed = format!("{:.*}", (8 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
