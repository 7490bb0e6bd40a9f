use super::BudgetReport;
use num_rational::Ratio;
use serde::Serialize;

/// The three inequalities linking the scalar budget to `c1^2`, `chi`, `sigma`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub c1_sq: i64,
    pub chi: i64,
    pub sigma: i64,
    /// `2 chi - 3 |sigma|`.
    pub margin: i64,
    /// `c1^2 / 3`, exact.
    pub threshold: String,
    /// `(1/32 pi^2) int s^2 >= c1^2`.
    pub lebrun_holds: bool,
    /// `2 chi - 3 |sigma| >= (1/96 pi^2) int s^2`.
    pub daiwei_holds: bool,
    /// `2 chi - 3 |sigma| >= c1^2 / 3`.
    pub combined_holds: bool,
    /// The combined inequality fails, so no Einstein metric of the assumed kind exists.
    pub obstruction_fires: bool,
}

pub fn obstruction_chain(budget: &BudgetReport, c1_sq: i64, chi: i64, sigma: i64) -> ChainReport {
    let margin = 2 * chi - 3 * sigma.abs();
    let threshold = Ratio::new(c1_sq, 3);
    let combined_holds = Ratio::from_integer(margin) >= threshold;
    ChainReport {
        c1_sq,
        chi,
        sigma,
        margin,
        threshold: threshold.to_string(),
        lebrun_holds: budget.lebrun_lhs >= c1_sq as f64,
        daiwei_holds: margin as f64 >= budget.daiwei_rhs,
        combined_holds,
        obstruction_fires: !combined_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(l4: f64) -> BudgetReport {
        let daiwei_rhs = l4 / (96.0 * std::f64::consts::PI.powi(2));
        BudgetReport {
            truncation: f64::INFINITY,
            sup_phi_sq: 12.0,
            l4_budget: l4,
            fplus_budget: l4 / 8.0,
            lebrun_lhs: 3.0 * daiwei_rhs,
            daiwei_rhs,
            volume: 1.0 / 3.0,
            error: 0.0,
            regions: vec![],
        }
    }

    #[test]
    fn examples() {
        let r = obstruction_chain(&budget(48.0), 48, 6, 0);
        assert_eq!((r.margin, r.threshold.as_str()), (12, "16"));
        assert!(!r.combined_holds && r.obstruction_fires);

        let r = obstruction_chain(&budget(0.0), 0, 0, 0);
        assert!(r.combined_holds && r.daiwei_holds && r.lebrun_holds);

        let r = obstruction_chain(&budget(96.0 * std::f64::consts::PI.powi(2) * 5.0), 0, 2, 0);
        assert!(!r.daiwei_holds);

        assert_eq!(obstruction_chain(&budget(1.0), 50, 10, -2).threshold, "50/3");
        assert!(!obstruction_chain(&budget(1.0), 50, 10, -2).combined_holds);
    }
}
