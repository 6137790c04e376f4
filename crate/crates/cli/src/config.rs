//! TOML scenario files with unit-suffixed quantities.
//!
//! Every key is optional except the geometry, which comes either from a
//! `deployment = "case1" | "case2"` preset or from an explicit `[geometry]`
//! table. Physical quantities are strings carrying their unit, for example
//! `noise = "-80 dBm"`, `reference_loss = "30 dB"`, `user1 = ["48 m", "3.5 m"]`
//! and `gamma1 = "1 bps/Hz"`.

use serde::Deserialize;

use irs_noma::channel::{Geometry, IrsConfig, Point, SubsurfaceAggregation};
use irs_noma::experiments::{build_case, DeploymentCase, Scenario, SweepSpec, SweepVariable};
use irs_noma::schemes::{dbm_to_watts, NoisePower, TargetRates};
use irs_noma::solvers::SolverConfig;

use crate::CliError;

const PRESET_CASE1: &str = include_str!("../configs/case1.toml");
const PRESET_CASE2: &str = include_str!("../configs/case2.toml");

/// Shipped configuration document for a deployment case.
pub fn preset(case: DeploymentCase) -> &'static str {
    match case {
        DeploymentCase::Case1 => PRESET_CASE1,
        DeploymentCase::Case2 => PRESET_CASE2,
    }
}

/// A parsed and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub sweep: SweepSpec,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    deployment: Option<String>,
    seed: Option<u64>,
    trials: Option<usize>,
    irs: Option<RawIrs>,
    channel: Option<RawChannel>,
    geometry: Option<RawGeometry>,
    rates: Option<RawRates>,
    solver: Option<RawSolver>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIrs {
    elements: Option<usize>,
    subsurfaces: Option<usize>,
    phase_levels: Option<usize>,
    aggregation: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    noise: Option<String>,
    reference_loss: Option<String>,
    exponent_ap_user: Option<f64>,
    exponent_irs_user: Option<f64>,
    exponent_ap_irs: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    ap: [String; 2],
    irs: [String; 2],
    user1: [String; 2],
    user2: [String; 2],
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRates {
    gamma1: Option<String>,
    gamma2: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    eta_levels: Option<usize>,
    ao_iterations: Option<usize>,
    rps_ao_iterations: Option<usize>,
    ao_convergence: Option<f64>,
    enumeration_budget: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: Option<String>,
    values: Option<Vec<String>>,
    sum_rate: Option<String>,
}

fn config_error(field: impl Into<String>, reason: impl Into<String>) -> CliError {
    CliError::Config {
        field: field.into(),
        reason: reason.into(),
    }
}

/// Splits `"-80 dBm"` into its number and unit and checks the unit.
fn quantity<'u>(field: &str, text: &str, units: &[&'u str]) -> Result<(f64, &'u str), CliError> {
    let text = text.trim().replace('\u{2212}', "-");
    let split = text
        .find(|c: char| !(c.is_ascii_digit() || "+-.eE".contains(c)))
        .unwrap_or(text.len());
    let (number, unit) = (text[..split].trim(), text[split..].trim());
    let value: f64 = number
        .parse()
        .map_err(|_| config_error(field, format!("'{text}' does not start with a number")))?;
    if !value.is_finite() {
        return Err(config_error(field, format!("'{text}' is not finite")));
    }
    if unit.is_empty() {
        return Err(config_error(
            field,
            format!("'{text}' has no unit, expected one of {}", units.join(", ")),
        ));
    }
    let matched = units.iter().find(|&&u| u == unit).ok_or_else(|| {
        config_error(
            field,
            format!(
                "unit mismatch: got '{unit}', expected one of {}",
                units.join(", ")
            ),
        )
    })?;
    Ok((value, matched))
}

fn meters(field: &str, text: &str) -> Result<f64, CliError> {
    Ok(quantity(field, text, &["m"])?.0)
}

fn rate(field: &str, text: &str) -> Result<f64, CliError> {
    Ok(quantity(field, text, &["bps/Hz"])?.0)
}

fn point(field: &str, xy: &[String; 2]) -> Result<Point, CliError> {
    Ok(Point::new(meters(field, &xy[0])?, meters(field, &xy[1])?))
}

fn noise(text: &str) -> Result<NoisePower, CliError> {
    let field = "channel.noise";
    let watts = match quantity(field, text, &["dBm", "mW", "W"])? {
        (v, "dBm") => dbm_to_watts(v),
        (v, "mW") => v * 1e-3,
        (v, _) => v,
    };
    NoisePower::new(watts).map_err(|e| config_error(field, e.to_string()))
}

fn core_error(e: irs_noma::Error) -> CliError {
    match e {
        irs_noma::Error::InvalidParameter { field, reason } => config_error(field, reason),
        other => config_error("config", other.to_string()),
    }
}

fn deployment(text: &str) -> Result<DeploymentCase, CliError> {
    text.parse().map_err(|_| {
        config_error(
            "deployment",
            format!("unknown preset '{text}', expected case1 or case2"),
        )
    })
}

/// Parses a configuration document into a validated scenario and sweep grid.
///
/// Omitted keys take the documented defaults: 100 elements in 5
/// sub-surfaces, 8 phase levels, −80 dBm noise, 100 trials, `B = 8`,
/// `I = 2`, and the default grid of the chosen sweep variable.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| config_error("toml", e.message().to_owned()))?;

    let case = raw.deployment.as_deref().map(deployment).transpose()?;
    let geometry: Geometry = match (&raw.geometry, case) {
        (Some(g), _) => Geometry {
            ap: point("geometry.ap", &g.ap)?,
            irs: point("geometry.irs", &g.irs)?,
            user1: point("geometry.user1", &g.user1)?,
            user2: point("geometry.user2", &g.user2)?,
        },
        (None, Some(case)) => build_case(case),
        (None, None) => {
            return Err(config_error(
                "geometry",
                "missing: give a [geometry] table or deployment = \"case1\" / \"case2\"",
            ))
        }
    };

    let mut scenario = Scenario::defaults(case.unwrap_or(DeploymentCase::Case1));
    scenario.geometry = geometry;
    scenario.seed = raw.seed.unwrap_or(scenario.seed);
    scenario.trials = raw.trials.unwrap_or(scenario.trials);

    let irs = raw.irs.unwrap_or_default();
    let defaults = IrsConfig::default();
    scenario.irs = IrsConfig::new(
        irs.elements.unwrap_or(defaults.num_elements()),
        irs.subsurfaces.unwrap_or(defaults.num_subsurfaces()),
        irs.phase_levels.unwrap_or(defaults.phase_levels()),
    )
    .map_err(core_error)?;
    if let Some(a) = irs.aggregation {
        scenario.aggregation = match a.as_str() {
            "coherent" => SubsurfaceAggregation::Coherent,
            "incoherent" => SubsurfaceAggregation::Incoherent,
            other => {
                return Err(config_error(
                    "irs.aggregation",
                    format!("'{other}', expected coherent or incoherent"),
                ))
            }
        };
    }

    let channel = raw.channel.unwrap_or_default();
    if let Some(n) = channel.noise {
        scenario.noise = noise(&n)?;
    }
    let pl = &mut scenario.pathloss;
    if let Some(l) = channel.reference_loss {
        pl.reference_loss_db = quantity("channel.reference_loss", &l, &["dB"])?.0;
    }
    pl.exponent_ap_user = channel.exponent_ap_user.unwrap_or(pl.exponent_ap_user);
    pl.exponent_irs_user = channel.exponent_irs_user.unwrap_or(pl.exponent_irs_user);
    pl.exponent_ap_irs = channel.exponent_ap_irs.unwrap_or(pl.exponent_ap_irs);

    let rates = raw.rates.unwrap_or_default();
    let gamma =
        |field: &str, v: Option<String>, default: f64| v.map_or(Ok(default), |t| rate(field, &t));
    scenario.rates = TargetRates::new(
        gamma("rates.gamma1", rates.gamma1, scenario.rates.gamma1)?,
        gamma("rates.gamma2", rates.gamma2, scenario.rates.gamma2)?,
    )
    .map_err(core_error)?;

    let solver = raw.solver.unwrap_or_default();
    let d = SolverConfig::default();
    scenario.solver = SolverConfig {
        eta_levels: solver.eta_levels.unwrap_or(d.eta_levels),
        ao_iterations: solver.ao_iterations.unwrap_or(d.ao_iterations),
        rps_ao_iterations: solver.rps_ao_iterations.unwrap_or(d.rps_ao_iterations),
        ao_convergence: solver.ao_convergence.unwrap_or(d.ao_convergence),
        enumeration_budget: solver.enumeration_budget.unwrap_or(d.enumeration_budget),
        rps_seed: d.rps_seed,
    };
    scenario.validate().map_err(core_error)?;

    let sweep = raw.sweep.unwrap_or_default();
    let variable = match sweep.variable.as_deref() {
        Some(v) => v.parse::<SweepVariable>().map_err(core_error)?,
        None => SweepVariable::CommonRate,
    };
    let default = SweepSpec::default_for(variable);
    let values = match sweep.values {
        Some(v) => v
            .iter()
            .map(|t| rate("sweep.values", t))
            .collect::<Result<Vec<_>, _>>()?,
        None => default.values,
    };
    let sum_rate = match sweep.sum_rate {
        Some(t) => rate("sweep.sum_rate", &t)?,
        None => default.sum_rate,
    };
    let sweep = SweepSpec::new(variable, values, sum_rate).map_err(core_error)?;

    Ok(ExperimentConfig { scenario, sweep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(e: CliError) -> String {
        match e {
            CliError::Config { field, .. } => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn presets_give_defaults() {
        for case in [DeploymentCase::Case1, DeploymentCase::Case2] {
            let cfg = parse_config(preset(case)).unwrap();
            assert_eq!(cfg.scenario, Scenario::defaults(case));
            assert_eq!(cfg.sweep, SweepSpec::common_rate_default());
        }
    }

    #[test]
    fn minimal_document_matches_preset() {
        let cfg = parse_config("deployment = \"case2\"").unwrap();
        assert_eq!(cfg.scenario, Scenario::defaults(DeploymentCase::Case2));
    }

    #[test]
    fn noise_in_dbm() {
        let cfg = parse_config("deployment = \"case1\"\n[channel]\nnoise = \"-80 dBm\"").unwrap();
        assert!((cfg.scenario.noise.watts() - 1e-11).abs() < 1e-24);
        let cfg = parse_config("deployment = \"case1\"\n[channel]\nnoise = \"1e-8 mW\"").unwrap();
        assert!((cfg.scenario.noise.watts() - 1e-11).abs() < 1e-24);
    }

    #[test]
    fn subsurfaces_must_divide_elements() {
        let e = parse_config("deployment = \"case1\"\n[irs]\nelements = 100\nsubsurfaces = 7")
            .unwrap_err();
        assert!(field_of(e).starts_with("irs"));
    }

    #[test]
    fn unit_mismatch_names_the_field() {
        let e = parse_config("deployment = \"case1\"\n[channel]\nnoise = \"30 dB\"").unwrap_err();
        assert!(e.to_string().contains("unit mismatch"), "{e}");
        assert_eq!(field_of(e), "channel.noise");
        let e = parse_config("deployment = \"case1\"\n[rates]\ngamma1 = \"2\"").unwrap_err();
        assert_eq!(field_of(e), "rates.gamma1");
    }

    #[test]
    fn geometry_is_required_without_preset() {
        let e = parse_config("seed = 1").unwrap_err();
        assert_eq!(field_of(e), "geometry");
    }

    #[test]
    fn explicit_geometry() {
        let text = r#"
            [geometry]
            ap = ["0 m", "0 m"]
            irs = ["50 m", "0 m"]
            user1 = ["48 m", "3 m"]
            user2 = ["48 m", "-3 m"]
        "#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.scenario.geometry.user2, Point::new(48.0, -3.0));
        let e = parse_config(&text.replace("\"-3 m\"", "\"-3 km\"")).unwrap_err();
        assert_eq!(field_of(e), "geometry.user2");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = parse_config("deployment = \"case1\"\nsed = 4").unwrap_err();
        assert!(e.to_string().contains("sed"), "{e}");
    }

    #[test]
    fn split_rate_sweep() {
        let text = "deployment = \"case1\"\n[sweep]\nvariable = \"split-rate\"\nvalues = [\"1 bps/Hz\", \"2 bps/Hz\"]\nsum_rate = \"3 bps/Hz\"";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.sweep.values, vec![1.0, 2.0]);
        assert_eq!(cfg.sweep.rates_at(1.0).unwrap().gamma2, 2.0);
        let bad = text.replace("\"3 bps/Hz\"", "\"1.5 bps/Hz\"");
        assert!(parse_config(&bad).is_err());
    }

    #[test]
    fn quantity_forms() {
        assert_eq!(quantity("x", "4m", &["m"]).unwrap().0, 4.0);
        assert_eq!(quantity("x", " 2.5e1 m ", &["m"]).unwrap().0, 25.0);
        assert_eq!(quantity("x", "\u{2212}80 dBm", &["dBm"]).unwrap().0, -80.0);
        assert!(quantity("x", "dBm", &["dBm"]).is_err());
    }
}
