//! Pulse envelopes ℰ(t).
//!
//! The quasi-monochromatic approximation behind the closed-form evolutions
//! assumes a slowly varying amplitude, so hard rectangular edges are replaced
//! by raised-cosine ramps by default. The ramps are arranged symmetrically
//! around the nominal window so the pulse area ∫ℰ dt stays exactly
//! `amplitude × duration` for any edge width.

use crate::error::{Error, Result};

/// Fraction of the duration used for each raised-cosine edge by default.
pub const DEFAULT_EDGE_FRACTION: f64 = 0.05;

#[derive(Debug, Clone)]
enum Kind {
    /// Flat top of the given amplitude with raised-cosine edges of width
    /// `edge` centred on t = 0 and t = duration; support extends edge/2
    /// beyond the nominal window on each side. `edge = 0` is a hard
    /// rectangle.
    Rectangular {
        amplitude: f64,
        duration: f64,
        edge: f64,
    },
    /// peak · exp(−(t−centre)²/2σ²), truncated at ±8σ around the centre.
    Gaussian { peak: f64, sigma: f64, centre: f64 },
    /// Piecewise-linear interpolation of non-negative samples.
    Sampled { times: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct Envelope {
    kind: Kind,
}

const GAUSSIAN_HALF_SUPPORT_SIGMAS: f64 = 8.0;

impl Envelope {
    /// Rectangular envelope with the default 5% raised-cosine edges.
    pub fn rectangular(amplitude: f64, duration: f64) -> Result<Self> {
        Self::rectangular_with_edges(amplitude, duration, DEFAULT_EDGE_FRACTION * duration)
    }

    /// Rectangular envelope with explicit edge width (0 = hard edges).
    pub fn rectangular_with_edges(amplitude: f64, duration: f64, edge: f64) -> Result<Self> {
        if amplitude < 0.0 {
            return Err(Error::domain("envelope amplitude must be non-negative"));
        }
        if !(duration > 0.0) {
            return Err(Error::domain("envelope duration must be positive"));
        }
        if !(0.0..=duration).contains(&edge) {
            return Err(Error::domain(
                "edge width must lie between 0 and the pulse duration",
            ));
        }
        Ok(Envelope {
            kind: Kind::Rectangular {
                amplitude,
                duration,
                edge,
            },
        })
    }

    /// Gaussian envelope, centred so the support starts at t = 0.
    pub fn gaussian(peak: f64, sigma: f64) -> Result<Self> {
        if peak < 0.0 {
            return Err(Error::domain("envelope peak must be non-negative"));
        }
        if !(sigma > 0.0) {
            return Err(Error::domain("gaussian width must be positive"));
        }
        Ok(Envelope {
            kind: Kind::Gaussian {
                peak,
                sigma,
                centre: GAUSSIAN_HALF_SUPPORT_SIGMAS * sigma,
            },
        })
    }

    /// Custom envelope from samples, linearly interpolated.
    pub fn from_samples(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::domain(
                "sampled envelope needs at least two (time, value) pairs",
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("sample times must be strictly increasing"));
        }
        if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::domain(
                "sampled envelope values must be finite and non-negative",
            ));
        }
        Ok(Envelope {
            kind: Kind::Sampled { times, values },
        })
    }

    /// ℰ(t), in V/m.
    pub fn value(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Rectangular {
                amplitude,
                duration,
                edge,
            } => {
                let (a, big_t, e) = (*amplitude, *duration, *edge);
                if e == 0.0 {
                    if (0.0..=big_t).contains(&t) {
                        a
                    } else {
                        0.0
                    }
                } else if t < -e / 2.0 || t > big_t + e / 2.0 {
                    0.0
                } else if t < e / 2.0 {
                    a * 0.5 * (1.0 + (std::f64::consts::PI * t / e).sin())
                } else if t <= big_t - e / 2.0 {
                    a
                } else {
                    a * 0.5 * (1.0 + (std::f64::consts::PI * (big_t - t) / e).sin())
                }
            }
            Kind::Gaussian { peak, sigma, centre } => {
                let half = GAUSSIAN_HALF_SUPPORT_SIGMAS * sigma;
                if (t - centre).abs() > half {
                    0.0
                } else {
                    let u = (t - centre) / sigma;
                    peak * (-0.5 * u * u).exp()
                }
            }
            Kind::Sampled { times, values } => {
                let n = times.len();
                if t < times[0] || t > times[n - 1] {
                    return 0.0;
                }
                let i = match times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
                    Ok(i) => return values[i],
                    Err(i) => i,
                };
                let (t0, t1) = (times[i - 1], times[i]);
                let (v0, v1) = (values[i - 1], values[i]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Peak amplitude, V/m.
    pub fn peak(&self) -> f64 {
        match &self.kind {
            Kind::Rectangular { amplitude, .. } => *amplitude,
            Kind::Gaussian { peak, .. } => *peak,
            Kind::Sampled { values, .. } => values.iter().cloned().fold(0.0, f64::max),
        }
    }

    /// Interval outside of which ℰ(t) = 0.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            Kind::Rectangular {
                duration, edge, ..
            } => (-edge / 2.0, duration + edge / 2.0),
            Kind::Gaussian { sigma, centre, .. } => {
                let half = GAUSSIAN_HALF_SUPPORT_SIGMAS * sigma;
                (centre - half, centre + half)
            }
            Kind::Sampled { times, .. } => (times[0], *times.last().unwrap()),
        }
    }

    /// Points where the envelope is not smooth; quadrature integrates each
    /// smooth piece separately.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            Kind::Rectangular {
                duration, edge, ..
            } => {
                if *edge == 0.0 {
                    vec![0.0, *duration]
                } else {
                    vec![
                        -edge / 2.0,
                        edge / 2.0,
                        duration - edge / 2.0,
                        duration + edge / 2.0,
                    ]
                }
            }
            Kind::Gaussian { sigma, centre, .. } => {
                let half = GAUSSIAN_HALF_SUPPORT_SIGMAS * sigma;
                vec![centre - half, *centre, centre + half]
            }
            Kind::Sampled { times, .. } => times.clone(),
        }
    }

    /// Largest |dℰ/dt| anywhere on the support. Infinite for hard edges.
    pub fn max_slope(&self) -> f64 {
        match &self.kind {
            Kind::Rectangular {
                amplitude, edge, ..
            } => {
                if *amplitude == 0.0 {
                    0.0
                } else if *edge == 0.0 {
                    f64::INFINITY
                } else {
                    amplitude * std::f64::consts::PI / (2.0 * edge)
                }
            }
            Kind::Gaussian { peak, sigma, .. } => peak * (-0.5f64).exp() / sigma,
            Kind::Sampled { times, values } => times
                .windows(2)
                .zip(values.windows(2))
                .map(|(t, v)| ((v[1] - v[0]) / (t[1] - t[0])).abs())
                .fold(0.0, f64::max),
        }
    }

    /// Whether the envelope varies slowly compared to the carrier:
    /// max|dℰ/dt| / ℰ_peak ≤ 0.01 ω. A violation is a flag, not an error.
    pub fn quasi_monochromatic(&self, omega: f64) -> bool {
        let peak = self.peak();
        if peak == 0.0 {
            return true;
        }
        self.max_slope() / peak <= 0.01 * omega
    }
}
