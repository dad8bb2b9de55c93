//! Power-law fitting for runtime scaling measurements.

/// Least-squares slope of `ln(seconds)` against `ln(n)`.
///
/// Returns `None` with fewer than two distinct sizes or any non-positive value.
pub fn fit_power_law(samples: &[(usize, f64)]) -> Option<f64> {
    if samples.iter().any(|&(n, t)| n == 0 || !t.is_finite() || t <= 0.0) {
        return None;
    }
    let xs: Vec<f64> = samples.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, t)| t.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Median of a non-empty sample.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    })
}
