//! Adaptive Gauss–Kronrod quadrature on finite and half-infinite intervals.

use thiserror::Error;

/// Kronrod abscissae on `[-1, 1]` (non-negative half, descending).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the 7-point rule sharing the odd Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature failed on [{a}, {b}]: {reason}")]
    QuadratureFailure { a: f64, b: f64, reason: String },
}

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

impl QuadratureOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self { abs_tol, ..Self::default() }
    }
}

/// A quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

impl Integral {
    pub const ZERO: Integral = Integral { value: 0.0, error: 0.0 };

    pub fn scaled(self, k: f64) -> Integral {
        Integral { value: self.value * k, error: self.error * k.abs() }
    }
}

impl std::ops::Add for Integral {
    type Output = Integral;
    fn add(self, rhs: Integral) -> Integral {
        Integral { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut finite = fc.is_finite();
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        finite &= pair.is_finite();
        kron += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    if !finite {
        return Err(QuadratureError::QuadratureFailure { a, b, reason: "integrand is not finite".into() });
    }
    Ok(Segment { a, b, value: kron * half, error: ((kron - gauss) * half).abs() })
}

/// Integrates `f` over `[a, b]`, splitting first at the interior `breaks`.
///
/// Refinement bisects the segment with the largest error estimate until the
/// total estimate is below `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Integral, QuadratureError> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(QuadratureError::QuadratureFailure { a, b, reason: "interval must be finite and ordered".into() });
    }
    if a == b {
        return Ok(Integral::ZERO);
    }
    let mut nodes = vec![a];
    let mut interior: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    interior.sort_by(f64::total_cmp);
    interior.dedup();
    nodes.extend(interior);
    nodes.push(b);

    let mut segs = Vec::with_capacity(64);
    for w in nodes.windows(2) {
        segs.push(kronrod(&f, w[0], w[1])?);
    }
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(Integral { value, error });
        }
        if segs.len() >= opts.max_intervals {
            return Err(QuadratureError::QuadratureFailure {
                a,
                b,
                reason: format!("error estimate {error:e} above tolerance after {} intervals", segs.len()),
            });
        }
        let worst = segs.iter().enumerate().fold(0, |best, (i, s)| if s.error > segs[best].error { i } else { best });
        let s = segs[worst];
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Err(QuadratureError::QuadratureFailure {
                a,
                b,
                reason: format!("segment [{}, {}] cannot be bisected further", s.a, s.b),
            });
        }
        segs[worst] = kronrod(&f, s.a, mid)?;
        segs.insert(worst + 1, kronrod(&f, mid, s.b)?);
    }
}

/// Integrates `f` over `[a, inf)` for integrands that decay at least like
/// `e^{-3t}` beyond the truncation point.
///
/// The integral is truncated at the first `T = a + k` (integer `k`) where
/// `|f|` is below `abs_tol` at `T`, `T + 1/2` and `T + 1`; the envelope tail
/// `|f(T)| / 3` is added to the error estimate.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    breaks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Integral, QuadratureError> {
    const MAX_LENGTH: usize = 400;
    let small = |t: f64| f(t).abs() <= opts.abs_tol;
    let cut = (1..=MAX_LENGTH)
        .map(|k| a + k as f64)
        .find(|&t| small(t) && small(t + 0.5) && small(t + 1.0))
        .ok_or_else(|| QuadratureError::QuadratureFailure {
            a,
            b: f64::INFINITY,
            reason: "integrand does not fall below tolerance".into(),
        })?;
    let body = integrate(&f, a, cut, breaks, opts)?;
    Ok(Integral { value: body.value, error: body.error + f(cut).abs() / 3.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_up_to_degree_22_are_exact_on_one_segment() {
        let f = |x: f64| x.powi(22);
        let seg = kronrod(&f, 0.0, 1.0).unwrap();
        assert!((seg.value - 1.0 / 23.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_decay_to_infinity() {
        let opts = QuadratureOptions::default();
        let r = integrate_to_infinity(|t| (-3.0 * t).exp(), 0.0, &[], &opts).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-10, "{r:?}");
        assert!(r.error <= 1e-10);
    }

    #[test]
    fn oscillatory_integral() {
        let opts = QuadratureOptions { abs_tol: 1e-13, ..Default::default() };
        let r = integrate(|t| (40.0 * t).sin(), 0.0, 1.0, &[], &opts).unwrap();
        let exact = (1.0 - 40f64.cos()) / 40.0;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn kink_at_breakpoint() {
        let opts = QuadratureOptions::default();
        let r = integrate(|t: f64| (t - 0.3).abs(), 0.0, 1.0, &[0.3], &opts).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn singular_integrand_fails() {
        let opts = QuadratureOptions { max_intervals: 200, ..Default::default() };
        let err = integrate(|t: f64| 1.0 / t.abs().sqrt().max(1e-300).powi(3), -1.0, 1.0, &[], &opts);
        assert!(matches!(err, Err(QuadratureError::QuadratureFailure { .. })));
    }

    #[test]
    fn non_finite_integrand_fails() {
        let r = integrate(|_| f64::NAN, 0.0, 1.0, &[], &QuadratureOptions::default());
        assert!(r.is_err());
    }

    #[test]
    fn degenerate_interval_is_zero() {
        let r = integrate(|t| t, 2.0, 2.0, &[], &QuadratureOptions::default()).unwrap();
        assert_eq!(r, Integral::ZERO);
    }
}
