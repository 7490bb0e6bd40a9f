use super::{curvature_report, CurvatureReport, GeometryError, MetricJet, WarpedMetric};
use rayon::prelude::*;
use std::io::Write;

pub const CSV_HEADER: [&str; 15] = [
    "t",
    "phi",
    "dphi",
    "d2phi",
    "psi",
    "dpsi",
    "d2psi",
    "ric_t",
    "ric_theta",
    "ric_torus",
    "scalar",
    "mean_h",
    "b_t",
    "b_theta",
    "b_torus",
];

/// One sampled point: the jet and every curvature quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub jet: MetricJet,
    pub curvature: CurvatureReport,
}

impl GridRow {
    fn fields(&self) -> [f64; 15] {
        let (j, c) = (&self.jet, &self.curvature);
        [
            j.t,
            j.phi,
            j.dphi,
            j.d2phi,
            j.psi,
            j.dpsi,
            j.d2psi,
            c.ric_t,
            c.ric_theta,
            c.ric_torus,
            c.scalar,
            c.mean_h,
            c.b_t,
            c.b_theta,
            c.b_torus,
        ]
    }
}

/// `n` equally spaced points from `a` to `b` inclusive; the last point is `b` exactly.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i + 1 == n { b } else { a + step * i as f64 }).collect()
        }
    }
}

/// Evaluates the metric and its curvature at each `t`, in parallel, preserving order.
pub fn sample_grid<M: WarpedMetric + ?Sized>(metric: &M, ts: &[f64]) -> Result<Vec<GridRow>, GeometryError> {
    ts.par_iter()
        .map(|&t| {
            let jet = metric.jet_checked(t)?;
            Ok(GridRow { jet, curvature: curvature_report(&jet)? })
        })
        .collect()
}

fn format_17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes rows as CSV with a header and 17 significant digits per value.
pub fn write_grid_csv<W: Write>(rows: &[GridRow], out: W) -> Result<(), GeometryError> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| GeometryError::Csv(e.to_string());
    w.write_record(CSV_HEADER).map_err(err)?;
    for row in rows {
        w.write_record(row.fields().iter().map(|&x| format_17(x))).map_err(err)?;
    }
    w.flush().map_err(|e| GeometryError::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExactCusp, FlatCrossSection};

    #[test]
    fn grid_endpoints_are_exact() {
        let g = uniform_grid(0.0, 0.3, 7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[6], 0.3);
        assert!(uniform_grid(0.0, 1.0, 0).is_empty());
        assert_eq!(uniform_grid(2.0, 5.0, 1), vec![2.0]);
    }

    #[test]
    fn csv_round_trips_values() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 4.0);
        let rows = sample_grid(&cusp, &uniform_grid(0.0, 4.0, 5)).unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&rows, &mut buf).unwrap();
        let mut rdr = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER.to_vec());
        for (rec, row) in rdr.records().zip(&rows) {
            let parsed: Vec<f64> = rec.unwrap().iter().map(|s| s.parse().unwrap()).collect();
            assert_eq!(parsed, row.fields().to_vec());
        }
    }

    #[test]
    fn sampling_outside_domain_fails() {
        let cusp = ExactCusp::new(FlatCrossSection::unit(), 4.0);
        assert!(sample_grid(&cusp, &[5.0]).is_err());
    }
}
