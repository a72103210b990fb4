//! Compensated summation and rational snapping.

use num_complex::Complex64;
use num_rational::Ratio;

/// Neumaier's improved Kahan summation.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn neumaier_sum_complex(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let (re, im): (Vec<f64>, Vec<f64>) = values.into_iter().map(|z| (z.re, z.im)).unzip();
    Complex64::new(neumaier_sum(re), neumaier_sum(im))
}

/// Nearest `p/q` with `q ≤ max_den` within `tol` of `x`, smallest denominator first.
pub fn snap_rational(x: f64, max_den: i64, tol: f64) -> Option<Ratio<i64>> {
    if !x.is_finite() {
        return None;
    }
    (1..=max_den).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= tol).then(|| Ratio::new(p as i64, q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(v), 2.0);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_rational(7.0 / 3.0, 64, 1e-9), Some(Ratio::new(7, 3)));
        assert_eq!(snap_rational(1.75 + 5e-10, 64, 1e-9), Some(Ratio::new(7, 4)));
        assert_eq!(snap_rational(1.0, 64, 1e-9), Some(Ratio::from_integer(1)));
        assert_eq!(snap_rational(std::f64::consts::PI, 64, 1e-9), None);
    }
}
