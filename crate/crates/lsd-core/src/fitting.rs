//! Ordinary least-squares line fitting shared by the power-law, decay-scan,
//! and envelope-residual fits.

use crate::error::{Error, Result};

/// Result of fitting y = slope * x + intercept.
#[derive(Debug, Clone, Copy)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; `None` with fewer than 3 points.
    pub slope_stderr: Option<f64>,
    /// Euclidean norm of the residual vector.
    pub residual_norm: f64,
    pub points: usize,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    let n = x.len().min(y.len());
    if n < 2 {
        return Err(Error::TooFewPointsForFit(n));
    }
    let nf = n as f64;
    let x_mean = x[..n].iter().sum::<f64>() / nf;
    let y_mean = y[..n].iter().sum::<f64>() / nf;

    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = x[i] - x_mean;
        sxx += dx * dx;
        sxy += dx * (y[i] - y_mean);
    }
    if sxx == 0.0 {
        return Err(Error::TooFewPointsForFit(1));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let mut ssr = 0.0;
    for i in 0..n {
        let r = y[i] - (slope * x[i] + intercept);
        ssr += r * r;
    }
    let slope_stderr = if n > 2 {
        Some((ssr / (nf - 2.0) / sxx).sqrt())
    } else {
        None
    };

    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr,
        residual_norm: ssr.sqrt(),
        points: n,
    })
}
