use std::fmt;
use std::str::FromStr;

use crate::channel::{
    ChannelModel, ChannelRealization, Geometry, IrsConfig, PathLossModel, Point,
    SubsurfaceAggregation,
};
use crate::error::{invalid, Error, Result};
use crate::schemes::{NoisePower, TargetRates};
use crate::solvers::SolverConfig;

/// AP–IRS separation.
pub const AP_IRS_DISTANCE: f64 = 50.0;
/// Distance of a near-IRS user from the IRS.
pub const NEAR_USER_DISTANCE: f64 = 4.0;
/// Distance of the far-IRS user from the IRS in the asymmetric deployment.
pub const FAR_USER_DISTANCE: f64 = 30.0;
/// Angle between the IRS→AP direction and the IRS→near-user direction.
const NEAR_USER_ANGLE_DEG: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeploymentCase {
    /// Both users near the IRS, mirrored across the AP–IRS line.
    Case1,
    /// One near-IRS user and one far-IRS user at the same AP distance.
    Case2,
}

impl FromStr for DeploymentCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "case1" => Ok(DeploymentCase::Case1),
            "2" | "case2" => Ok(DeploymentCase::Case2),
            other => Err(invalid(
                "case",
                format!("unknown deployment case '{other}'"),
            )),
        }
    }
}

impl fmt::Display for DeploymentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeploymentCase::Case1 => "case1",
            DeploymentCase::Case2 => "case2",
        })
    }
}

/// AP at the origin, IRS at (50, 0).
///
/// Users are placed by convention since only the AP–IRS and near-user
/// distances are fixed. The near user sits 4 m from the IRS at 60° off the
/// IRS→AP direction. In case 1 the second user is its mirror image across the
/// AP–IRS axis, so both are equally far from the IRS and from the AP. In case 2
/// the second user is on the same circle around the AP but 30 m from the IRS.
pub fn build_case(case: DeploymentCase) -> Geometry {
    let ap = Point::new(0.0, 0.0);
    let irs = Point::new(AP_IRS_DISTANCE, 0.0);
    let a = NEAR_USER_ANGLE_DEG.to_radians();
    let user1 = Point::new(
        irs.x - NEAR_USER_DISTANCE * a.cos(),
        NEAR_USER_DISTANCE * a.sin(),
    );
    let user2 = match case {
        DeploymentCase::Case1 => Point::new(user1.x, -user1.y),
        DeploymentCase::Case2 => {
            let r = ap.distance(&user1);
            let d = FAR_USER_DISTANCE;
            let cos_psi =
                (r * r + AP_IRS_DISTANCE * AP_IRS_DISTANCE - d * d) / (2.0 * AP_IRS_DISTANCE * r);
            let psi = cos_psi.clamp(-1.0, 1.0).acos();
            Point::new(r * psi.cos(), -r * psi.sin())
        }
    };
    Geometry {
        ap,
        irs,
        user1,
        user2,
    }
}

/// Full description of one Monte Carlo experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub irs: IrsConfig,
    pub geometry: Geometry,
    pub pathloss: PathLossModel,
    pub aggregation: SubsurfaceAggregation,
    pub noise: NoisePower,
    pub rates: TargetRates,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl Scenario {
    /// 100 elements in 5 sub-surfaces, 8 phase levels, −80 dBm noise,
    /// 100 trials, 1 bps/Hz per user.
    pub fn defaults(case: DeploymentCase) -> Self {
        Self {
            irs: IrsConfig::default(),
            geometry: build_case(case),
            pathloss: PathLossModel::default(),
            aggregation: SubsurfaceAggregation::default(),
            noise: NoisePower::default(),
            rates: TargetRates {
                gamma1: 1.0,
                gamma2: 1.0,
            },
            trials: 100,
            seed: 2020,
            solver: SolverConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials", "need at least one trial"));
        }
        self.channel_model().validate()?;
        TargetRates::new(self.rates.gamma1, self.rates.gamma2)?;
        self.solver.validate()
    }

    pub fn channel_model(&self) -> ChannelModel {
        ChannelModel {
            irs: self.irs,
            geometry: self.geometry,
            pathloss: self.pathloss,
            aggregation: self.aggregation,
            seed: self.seed,
        }
    }

    pub fn realization(&self, trial: u64) -> ChannelRealization {
        self.channel_model().realization(trial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    /// `γ1 = γ2 = γ0`.
    CommonRate,
    /// `γ1` varies with `γ1 + γ2` held fixed.
    SplitRate,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::CommonRate => "common-rate",
            SweepVariable::SplitRate => "split-rate",
        }
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "common-rate" | "common" => Ok(SweepVariable::CommonRate),
            "split-rate" | "split" => Ok(SweepVariable::SplitRate),
            other => Err(invalid(
                "sweep.variable",
                format!("unknown sweep '{other}'"),
            )),
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    /// `γ1 + γ2` for [`SweepVariable::SplitRate`].
    pub sum_rate: f64,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, values: Vec<f64>, sum_rate: f64) -> Result<Self> {
        let spec = Self {
            variable,
            values,
            sum_rate,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// γ0 ∈ {0.5, 1.0, …, 6.0}.
    pub fn common_rate_default() -> Self {
        Self {
            variable: SweepVariable::CommonRate,
            values: (1..=12).map(|i| i as f64 * 0.5).collect(),
            sum_rate: 4.0,
        }
    }

    /// γ1 ∈ {0.5, 1.0, …, 3.5} with γ1 + γ2 = 4.
    pub fn split_rate_default() -> Self {
        Self {
            variable: SweepVariable::SplitRate,
            values: (1..=7).map(|i| i as f64 * 0.5).collect(),
            sum_rate: 4.0,
        }
    }

    pub fn default_for(variable: SweepVariable) -> Self {
        match variable {
            SweepVariable::CommonRate => Self::common_rate_default(),
            SweepVariable::SplitRate => Self::split_rate_default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(invalid("sweep.values", "grid is empty"));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("sweep.values", "grid must be strictly ascending"));
        }
        if self.variable == SweepVariable::SplitRate
            && !(self.sum_rate.is_finite() && self.sum_rate >= 0.0)
        {
            return Err(invalid("sweep.sum_rate", "must be finite and >= 0"));
        }
        for &v in &self.values {
            self.rates_at(v)?;
        }
        Ok(())
    }

    pub fn rates_at(&self, value: f64) -> Result<TargetRates> {
        match self.variable {
            SweepVariable::CommonRate => TargetRates::common(value),
            SweepVariable::SplitRate => TargetRates::new(value, self.sum_rate - value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_is_symmetric() {
        let g = build_case(DeploymentCase::Case1);
        let d = g.distances();
        assert!((d.ap_irs - 50.0).abs() < 1e-12);
        assert!((d.irs_user[0] - 4.0).abs() < 1e-12);
        assert!((d.irs_user[1] - 4.0).abs() < 1e-12);
        assert!((d.ap_user[0] - d.ap_user[1]).abs() < 1e-12);
    }

    #[test]
    fn case2_has_near_and_far_user() {
        let g = build_case(DeploymentCase::Case2);
        let d = g.distances();
        assert!((d.ap_irs - 50.0).abs() < 1e-12);
        assert!((d.irs_user[0] - 4.0).abs() < 1e-12);
        assert!((d.irs_user[1] - FAR_USER_DISTANCE).abs() < 1e-9);
        assert!(d.irs_user[1] > 5.0 * d.irs_user[0]);
        assert!((d.ap_user[0] - d.ap_user[1]).abs() < 1e-9);
    }

    #[test]
    fn sweep_validation() {
        assert!(SweepSpec::new(SweepVariable::CommonRate, vec![], 4.0).is_err());
        assert!(SweepSpec::new(SweepVariable::CommonRate, vec![2.0, 1.0], 4.0).is_err());
        assert!(SweepSpec::new(SweepVariable::SplitRate, vec![1.0, 5.0], 4.0).is_err());
        let s = SweepSpec::split_rate_default();
        let r = s.rates_at(1.5).unwrap();
        assert_eq!((r.gamma1, r.gamma2), (1.5, 2.5));
    }

    #[test]
    fn scenario_defaults_validate() {
        for case in [DeploymentCase::Case1, DeploymentCase::Case2] {
            Scenario::defaults(case).validate().unwrap();
        }
        let mut s = Scenario::defaults(DeploymentCase::Case1);
        s.trials = 0;
        assert!(s.validate().is_err());
    }
}
