//! Scalar root finding and maximization on brackets.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Bisection for a sign change of `f` on `[a, b]`, stopping once the bracket
/// is narrower than `tol`.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NonConvergence(format!(
            "no sign change on [{a}, {b}]"
        )));
    }
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= tol * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// `points` values from `min` to `max` inclusive, evenly spaced in log.
pub fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let (lo, hi) = (min.ln(), max.ln());
            let step = (hi - lo) / (points - 1) as f64;
            (0..points)
                .map(|i| match i {
                    0 => min,
                    _ if i + 1 == points => max,
                    _ => (lo + step * i as f64).exp(),
                })
                .collect()
        }
    }
}

/// `points` values from `min` to `max` inclusive, evenly spaced.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i + 1 == points {
                        max
                    } else {
                        min + step * i as f64
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-12).is_err());
    }

    #[test]
    fn golden_finds_parabola_top() {
        let m = golden_max(|x| -(x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-12);
        assert!((m - 0.3).abs() < 1e-6);
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(1e-2, 1e2, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[4], 1e2);
        assert!((g[2] - 1.0).abs() < 1e-15);
        let l = linear_grid(0.0, 1.0, 3);
        assert_eq!(l, vec![0.0, 0.5, 1.0]);
    }
}
