//! Embedded Dormand–Prince 5(4) integrator for the two-amplitude ODE.
//!
//! The amplitude equations carry the optical carrier explicitly, so the
//! right-hand side oscillates at ω + ω₁; an adaptive step with local error
//! control is the only sane way to integrate it. The fifth-order solution is
//! propagated, the fourth-order embedded estimate drives the controller.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Amplitudes = [Complex64; 2];

// Dormand-Prince coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// b5 − b4: error estimate weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;

fn axpy(y: &Amplitudes, terms: &[(f64, &Amplitudes)], h: f64) -> Amplitudes {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

pub struct Integration {
    /// Accepted step times, starting at t0 and ending exactly at t1.
    pub times: Vec<f64>,
    /// Raw (un-renormalized) amplitudes at each accepted step.
    pub states: Vec<Amplitudes>,
    /// max |‖y‖² − 1| observed over the accepted steps.
    pub max_norm_drift: f64,
}

/// Integrate dy/dt = f(t, y) from t0 to t1 with relative/absolute tolerance
/// `rtol`/`atol` and a hard cap `h_max` on the step (used to guarantee
/// trajectory sampling density).
pub fn integrate<F>(
    f: F,
    t0: f64,
    t1: f64,
    y0: Amplitudes,
    rtol: f64,
    atol: f64,
    h_max: f64,
) -> Result<Integration>
where
    F: Fn(f64, &Amplitudes) -> Amplitudes,
{
    let span = t1 - t0;
    assert!(span > 0.0, "integration span must be positive");
    let h_max = h_max.min(span);
    let h_min_floor = span * 1e-14;

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = h_max.min(span / 100.0);

    let mut times = vec![t0];
    let mut states = vec![y0];
    let mut max_drift = (y0[0].norm_sqr() + y0[1].norm_sqr() - 1.0).abs();

    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &axpy(&y, &[(A21, &k1)], h));
        let k3 = f(t + C3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = f(t + C4 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = f(
            t + C5 * h,
            &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                h,
            ),
        );
        let y_new = axpy(
            &y,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            h,
        );
        // FSAL: the 7th stage is the derivative at the new point.
        let k7 = f(t + h, &y_new);

        let mut err_sq = 0.0;
        for i in 0..2 {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                    + E7 * k7[i]);
            let scale = atol + rtol * y[i].norm().max(y_new[i].norm());
            let r = e.norm() / scale;
            err_sq += r * r;
        }
        let err = (err_sq / 2.0).sqrt();

        if err <= 1.0 {
            t += h;
            y = y_new;
            k1 = k7;
            times.push(t);
            states.push(y);
            let drift = (y[0].norm_sqr() + y[1].norm_sqr() - 1.0).abs();
            if drift > max_drift {
                max_drift = drift;
            }
        }

        let scale = if err == 0.0 {
            MAX_SCALE
        } else {
            (SAFETY * err.powf(-0.2)).clamp(MIN_SCALE, MAX_SCALE)
        };
        h = (h * scale).min(h_max);
        if h < h_min_floor || t + h == t {
            return Err(Error::IntegrationFailure { t_reached: t });
        }
    }

    Ok(Integration {
        times,
        states,
        max_norm_drift: max_drift,
    })
}
