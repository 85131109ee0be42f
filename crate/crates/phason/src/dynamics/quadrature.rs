//! Adaptive Gauss–Kronrod quadrature (G7, K15) for the pulse-area integrals.

/// Kronrod-15 abscissae on [0, 1] side of the symmetric rule.
const XK: [f64; 8] = [
    0.0,
    0.207_784_955_007_898_5,
    0.405_845_151_377_397_2,
    0.586_087_235_467_691_1,
    0.741_531_185_599_394_5,
    0.864_864_423_359_769_1,
    0.949_107_912_342_758_5,
    0.991_455_371_120_812_6,
];

const WK: [f64; 8] = [
    0.209_482_141_084_727_8,
    0.204_432_940_075_298_9,
    0.190_350_578_064_785_4,
    0.169_004_726_639_267_9,
    0.140_653_259_715_525_9,
    0.104_790_010_322_250_2,
    0.063_092_092_629_978_55,
    0.022_935_322_010_529_22,
];

/// Gauss-7 weights for the even-indexed Kronrod nodes (0, 2, 4, 6).
const WG: [f64; 4] = [
    0.417_959_183_673_469_4,
    0.381_830_050_505_118_9,
    0.279_705_391_489_276_7,
    0.129_484_966_168_869_7,
];

/// One G7/K15 evaluation: returns (kronrod, |kronrod − gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let f_c = f(c);
    let mut kron = WK[0] * f_c;
    let mut gauss = WG[0] * f_c;
    for i in 1..8 {
        let dx = h * XK[i];
        let fsum = f(c - dx) + f(c + dx);
        kron += WK[i] * fsum;
        if i % 2 == 0 {
            gauss += WG[i / 2] * fsum;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (whole, err) = gk15(f, a, b);
    if err <= tol || depth >= 40 || b - a < f64::EPSILON * (a.abs() + b.abs()) {
        return whole;
    }
    let c = 0.5 * (a + b);
    refine(f, a, c, 0.5 * tol, depth + 1) + refine(f, c, b, 0.5 * tol, depth + 1)
}

/// ∫ₐᵇ f dt with relative tolerance `rel_tol` (absolute floor tied to the
/// first whole-interval estimate).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let (first, _) = gk15(f, a, b);
    let tol = rel_tol * first.abs().max(f64::MIN_POSITIVE.sqrt());
    refine(f, a, b, tol, 0)
}

/// Integrate over smooth pieces delimited by sorted `breakpoints`, clipped to
/// [a, b]. Splitting at envelope kinks keeps the error estimator honest.
pub fn integrate_segmented<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
) -> f64 {
    if a >= b {
        return 0.0;
    }
    let mut edges = vec![a];
    for &p in breakpoints {
        if p > a && p < b {
            edges.push(p);
        }
    }
    edges.push(b);
    edges
        .windows(2)
        .map(|w| integrate(f, w[0], w[1], rel_tol))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let f = |x: f64| 3.0 * x * x;
        assert!((integrate(&f, 0.0, 2.0, 1e-12) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_integrand_converges() {
        // ∫0^1 sin(40 x) dx = (1 − cos 40)/40
        let f = |x: f64| (40.0 * x).sin();
        let exact = (1.0 - (40.0f64).cos()) / 40.0;
        assert!((integrate(&f, 0.0, 1.0, 1e-12) - exact).abs() < 1e-12);
    }

    #[test]
    fn gaussian_integral_matches_erf_free_reference() {
        // ∫ exp(−x²/2) over ±8 is √(2π) up to ~1e-15 truncation
        let f = |x: f64| (-0.5 * x * x).exp();
        let got = integrate(&f, -8.0, 8.0, 1e-12);
        assert!((got - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn segmented_handles_kinks() {
        // triangle: ∫0^2 min(x, 2−x) dx = 1
        let f = |x: f64| x.min(2.0 - x);
        let got = integrate_segmented(&f, 0.0, 2.0, &[1.0], 1e-12);
        assert!((got - 1.0).abs() < 1e-13);
    }

    #[test]
    fn empty_interval_is_zero() {
        let f = |_x: f64| 1.0;
        assert_eq!(integrate(&f, 1.0, 1.0, 1e-10), 0.0);
        assert_eq!(integrate(&f, 2.0, 1.0, 1e-10), 0.0);
    }
}
