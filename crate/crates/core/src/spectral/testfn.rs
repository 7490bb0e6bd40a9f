use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The smooth factor of a [`TestFunction`], in the unit variable
/// `u = (t - t0) / (t1 - t0)` except for the exponential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestKind {
    /// `constant + sum_k cos_k cos(k pi u) + sin_k sin(k pi u)`, `k = 1, 2, ...`.
    Fourier { constant: f64, cos: Vec<f64>, sin: Vec<f64> },
    /// `sum_k coefficients_k u^k`.
    Polynomial { coefficients: Vec<f64> },
    /// `amplitude * e^{rate t}` in the cylinder coordinate itself.
    Exponential { amplitude: f64, rate: f64 },
}

/// A function of `t` with its first derivative, optionally multiplied by the
/// C^2 bump `(1 - x^2)^3` on its support so that it is compactly supported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    #[serde(flatten)]
    pub kind: TestKind,
    pub support: (f64, f64),
    pub bump: bool,
}

impl TestFunction {
    pub fn zero(support: (f64, f64)) -> Self {
        Self { kind: TestKind::Polynomial { coefficients: vec![] }, support, bump: true }
    }

    pub fn constant(value: f64, support: (f64, f64)) -> Self {
        Self { kind: TestKind::Polynomial { coefficients: vec![value] }, support, bump: false }
    }

    pub fn exponential(amplitude: f64, rate: f64, support: (f64, f64)) -> Self {
        Self { kind: TestKind::Exponential { amplitude, rate }, support, bump: false }
    }

    /// The bump `(1 - x^2)^3` on the support, or `bump_scale * bump` with a constant factor.
    pub fn bump_only(support: (f64, f64)) -> Self {
        Self::constant(1.0, support).bumped()
    }

    pub fn bumped(mut self) -> Self {
        self.bump = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            TestKind::Fourier { constant, cos, sin } => *constant == 0.0 && cos.iter().chain(sin).all(|&c| c == 0.0),
            TestKind::Polynomial { coefficients } => coefficients.iter().all(|&c| c == 0.0),
            TestKind::Exponential { amplitude, .. } => *amplitude == 0.0,
        }
    }

    fn base(&self, t: f64) -> (f64, f64) {
        let (t0, t1) = self.support;
        let len = t1 - t0;
        let u = (t - t0) / len;
        match &self.kind {
            TestKind::Fourier { constant, cos, sin } => {
                let (mut v, mut d) = (*constant, 0.0);
                for (k, (&a, &b)) in cos.iter().zip(sin.iter().chain(std::iter::repeat(&0.0))).enumerate() {
                    let w = (k + 1) as f64 * PI;
                    let (s, c) = (w * u).sin_cos();
                    v += a * c + b * s;
                    d += w * (b * c - a * s);
                }
                for (k, &b) in sin.iter().enumerate().skip(cos.len()) {
                    let w = (k + 1) as f64 * PI;
                    let (s, c) = (w * u).sin_cos();
                    v += b * s;
                    d += w * b * c;
                }
                (v, d / len)
            }
            TestKind::Polynomial { coefficients } => {
                let (mut v, mut d) = (0.0, 0.0);
                for &c in coefficients.iter().rev() {
                    d = d * u + v;
                    v = v * u + c;
                }
                (v, d / len)
            }
            TestKind::Exponential { amplitude, rate } => {
                let v = amplitude * (rate * t).exp();
                (v, rate * v)
            }
        }
    }

    /// Value and first derivative at `t`; zero outside the support when bumped.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        if !self.bump {
            return self.base(t);
        }
        let (t0, t1) = self.support;
        if t <= t0 || t >= t1 {
            return (0.0, 0.0);
        }
        let w = 0.5 * (t1 - t0);
        let x = (t - 0.5 * (t0 + t1)) / w;
        let q = 1.0 - x * x;
        let (b, db) = (q * q * q, -6.0 * x * q * q / w);
        let (v, d) = self.base(t);
        (v * b, d * b + v * db)
    }

    /// A fixed-seed Fourier sum with `1..=max_modes` modes; coefficients decay like `1/k`.
    pub fn random_fourier<R: Rng>(rng: &mut R, support: (f64, f64), max_modes: usize, bump: bool) -> Self {
        let modes = rng.random_range(1..=max_modes.max(1));
        let mut coef = |k: usize| rng.random_range(-1.0..1.0) / k as f64;
        let constant = coef(1);
        let cos: Vec<f64> = (1..=modes).map(&mut coef).collect();
        let sin: Vec<f64> = (1..=modes).map(&mut coef).collect();
        Self { kind: TestKind::Fourier { constant, cos, sin }, support, bump }
    }

    /// A random polynomial of degree at most `max_degree` in the unit variable.
    pub fn random_polynomial<R: Rng>(rng: &mut R, support: (f64, f64), max_degree: usize, bump: bool) -> Self {
        let degree = rng.random_range(0..=max_degree);
        let coefficients = (0..=degree).map(|_| rng.random_range(-1.0..1.0)).collect();
        Self { kind: TestKind::Polynomial { coefficients }, support, bump }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_derivative(f: &TestFunction, ts: &[f64]) {
        let h = 1e-6;
        for &t in ts {
            let fd = (f.eval(t + h).0 - f.eval(t - h).0) / (2.0 * h);
            let d = f.eval(t).1;
            assert!((d - fd).abs() <= 1e-6 * (1.0 + d.abs()), "{f:?} at {t}: {d} vs {fd}");
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ts = [0.31, 0.5, 0.77, 1.2];
        for bump in [false, true] {
            for _ in 0..10 {
                check_derivative(&TestFunction::random_fourier(&mut rng, (0.2, 1.4), 8, bump), &ts);
                check_derivative(&TestFunction::random_polynomial(&mut rng, (0.2, 1.4), 6, bump), &ts);
            }
        }
        check_derivative(&TestFunction::exponential(2.0, 1.5, (0.0, 3.0)), &ts);
        let uneven = TestFunction {
            kind: TestKind::Fourier { constant: 0.0, cos: vec![1.0], sin: vec![0.5, 0.25, 0.1] },
            support: (0.0, 2.0),
            bump: false,
        };
        check_derivative(&uneven, &ts);
    }

    #[test]
    fn bumped_functions_vanish_at_the_ends() {
        let f = TestFunction::constant(3.0, (1.0, 2.0)).bumped();
        assert_eq!(f.eval(1.0), (0.0, 0.0));
        assert_eq!(f.eval(2.5), (0.0, 0.0));
        assert_eq!(f.eval(1.5), (3.0, 0.0));
        assert!(TestFunction::zero((0.0, 1.0)).is_zero());
    }

    #[test]
    fn serde_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = TestFunction::random_fourier(&mut rng, (0.0, 1.0), 3, true);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"kind\":\"fourier\""));
        assert_eq!(serde_json::from_str::<TestFunction>(&text).unwrap(), f);
    }
}
