//! Quintic Hermite bridges matching 2-jets at both ends of an interval.

/// Value, first and second derivative.
pub type Jet2 = (f64, f64, f64);

/// Monomial coefficients `a_0..a_5` in the local variable `s in [0, h]`
/// of the quintic with 2-jet `start` at `s = 0` and `end` at `s = h`.
pub fn quintic_bridge(h: f64, start: Jet2, end: Jet2) -> [f64; 6] {
    let (y0, d0, s0) = start;
    let (y1, d1, s1) = end;
    let r0 = y1 - (y0 + d0 * h + 0.5 * s0 * h * h);
    let r1 = d1 - (d0 + s0 * h);
    let r2 = s1 - s0;
    let (h2, h3) = (h * h, h * h * h);
    [
        y0,
        d0,
        0.5 * s0,
        (10.0 * r0 - 4.0 * r1 * h + 0.5 * r2 * h2) / h3,
        (-15.0 * r0 + 7.0 * r1 * h - r2 * h2) / (h3 * h),
        (6.0 * r0 - 3.0 * r1 * h + 0.5 * r2 * h2) / (h3 * h2),
    ]
}

/// Horner evaluation of value, first and second derivative at `s`.
pub fn eval_quintic(c: &[f64; 6], s: f64) -> Jet2 {
    let y = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
    let d = c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
    let dd = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
    (y, d, dd)
}

pub fn eval_quintic_value(c: &[f64; 6], s: f64) -> f64 {
    c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))))
}

/// Sums of absolute term sizes in value, first and second derivative at `s`,
/// the natural scale for round-off in [`eval_quintic`].
pub fn quintic_term_scale(c: &[f64; 6], s: f64) -> Jet2 {
    let (mut v, mut d, mut dd) = (0.0, 0.0, 0.0);
    for (k, &a) in c.iter().enumerate() {
        let k_f = k as f64;
        v += (a * s.powi(k as i32)).abs();
        if k >= 1 {
            d += (k_f * a * s.powi(k as i32 - 1)).abs();
        }
        if k >= 2 {
            dd += (k_f * (k_f - 1.0) * a * s.powi(k as i32 - 2)).abs();
        }
    }
    (v, d, dd)
}
