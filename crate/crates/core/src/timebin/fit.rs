use thiserror::Error;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has non-positive value (x = {x}, y = {y})")]
    NonPositive { index: usize, x: f64, y: f64 },
    #[error("x and y have different lengths")]
    LengthMismatch,
}

/// Fits `y = exp(intercept) * x^slope`. A perfectly flat or perfectly linear
/// series has `r_squared = 1`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerFit, FitError> {
    if xs.len() != ys.len() {
        return Err(FitError::LengthMismatch);
    }
    if xs.len() < 3 {
        return Err(FitError::TooFewPoints(xs.len()));
    }
    for (index, (&x, &y)) in xs.iter().zip(ys).enumerate() {
        if !(x > 0.0 && y > 0.0) {
            return Err(FitError::NonPositive { index, x, y });
        }
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let ss_tot: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    // flat data: ss_tot is pure rounding noise
    let r_squared = if ss_tot <= 1e-24 * k { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerFit { slope, intercept, r_squared })
}
