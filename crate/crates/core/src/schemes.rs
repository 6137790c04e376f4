//! Minimum transmit power of each multiple-access scheme in closed form.
//!
//! Once the rate constraints bind, every scheme's power is a weighted sum of
//! inverse channel gains `a1/λ1 + a2/λ2` (see [`WeightedInverseObjective`]).
//! The per-scheme functions here are thin wrappers over that form so that
//! solvers and direct evaluation share the exact same arithmetic.

use std::fmt;

use crate::error::{invalid, Error, Result};

/// Target spectral efficiencies in bps/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRates {
    pub gamma1: f64,
    pub gamma2: f64,
}

impl TargetRates {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        for (field, g) in [("rates.gamma1", gamma1), ("rates.gamma2", gamma2)] {
            if !(g.is_finite() && g >= 0.0) {
                return Err(invalid(field, format!("{g} must be finite and >= 0")));
            }
        }
        Ok(Self { gamma1, gamma2 })
    }

    pub fn common(gamma0: f64) -> Result<Self> {
        Self::new(gamma0, gamma0)
    }
}

/// Receiver noise power `σ²` in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisePower(f64);

impl NoisePower {
    pub fn new(sigma2_watts: f64) -> Result<Self> {
        if !(sigma2_watts.is_finite() && sigma2_watts > 0.0) {
            return Err(invalid(
                "noise.sigma2",
                format!("{sigma2_watts} W must be > 0"),
            ));
        }
        Ok(Self(sigma2_watts))
    }

    pub fn from_dbm(dbm: f64) -> Result<Self> {
        Self::new(dbm_to_watts(dbm))
    }

    pub fn watts(self) -> f64 {
        self.0
    }
}

impl Default for NoisePower {
    /// −80 dBm.
    fn default() -> Self {
        Self(1e-11)
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Power in dBm; zero maps to `-inf`.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// `Q = a1/λ1 + a2/λ2` with nonnegative weights.
///
/// A zero weight drops its term entirely, which also covers single-user
/// objectives such as one TDMA slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedInverseObjective {
    pub a1: f64,
    pub a2: f64,
}

impl WeightedInverseObjective {
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        for (field, a) in [("weights.a1", a1), ("weights.a2", a2)] {
            if !(a.is_finite() && a >= 0.0) {
                return Err(invalid(field, format!("{a} must be finite and >= 0")));
            }
        }
        Ok(Self { a1, a2 })
    }

    /// Weights of NOMA where user 1 is decoded interference-free.
    pub fn noma_order1(rates: TargetRates, noise: NoisePower) -> Self {
        let (e1, e2) = (rates.gamma1.exp2(), rates.gamma2.exp2());
        let s = noise.watts();
        Self {
            a1: (e1 - 1.0) * e2 * s,
            a2: (e2 - 1.0) * s,
        }
    }

    /// Weights of NOMA where user 2 is decoded interference-free.
    pub fn noma_order2(rates: TargetRates, noise: NoisePower) -> Self {
        let (e1, e2) = (rates.gamma1.exp2(), rates.gamma2.exp2());
        let s = noise.watts();
        Self {
            a1: (e1 - 1.0) * s,
            a2: (e2 - 1.0) * e1 * s,
        }
    }

    /// Half-band FDMA (and per-slot TDMA) weights `(2^{2γ_k} − 1)σ²/2`.
    pub fn orthogonal(rates: TargetRates, noise: NoisePower) -> Self {
        Self {
            a1: orthogonal_weight(rates.gamma1, noise),
            a2: orthogonal_weight(rates.gamma2, noise),
        }
    }

    /// Keeps only the term of `user` (1 or 2).
    pub fn single_user(self, user: crate::channel::User) -> Self {
        match user {
            crate::channel::User::One => Self {
                a1: self.a1,
                a2: 0.0,
            },
            crate::channel::User::Two => Self {
                a1: 0.0,
                a2: self.a2,
            },
        }
    }

    pub fn evaluate(&self, lambda1: f64, lambda2: f64) -> Result<f64> {
        Ok(inverse_term(self.a1, lambda1, 1)? + inverse_term(self.a2, lambda2, 2)?)
    }
}

fn orthogonal_weight(gamma: f64, noise: NoisePower) -> f64 {
    ((2.0 * gamma).exp2() - 1.0) * noise.watts() / 2.0
}

/// `a/λ`, exactly zero when `a == 0` whatever `λ` is.
fn inverse_term(weight: f64, lambda: f64, user: usize) -> Result<f64> {
    if weight == 0.0 {
        return Ok(0.0);
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InfeasibleGain {
            user,
            value: lambda,
        });
    }
    Ok(weight / lambda)
}

/// The four single-θ / per-slot formulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    /// User 1's signal is decoded without interference.
    NomaOrder1,
    /// User 2's signal is decoded without interference.
    NomaOrder2,
    Fdma,
    Tdma,
}

impl SchemeKind {
    pub fn weights(self, rates: TargetRates, noise: NoisePower) -> WeightedInverseObjective {
        match self {
            SchemeKind::NomaOrder1 => WeightedInverseObjective::noma_order1(rates, noise),
            SchemeKind::NomaOrder2 => WeightedInverseObjective::noma_order2(rates, noise),
            SchemeKind::Fdma | SchemeKind::Tdma => {
                WeightedInverseObjective::orthogonal(rates, noise)
            }
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::NomaOrder1 => "noma-order1",
            SchemeKind::NomaOrder2 => "noma-order2",
            SchemeKind::Fdma => "fdma",
            SchemeKind::Tdma => "tdma",
        })
    }
}

pub fn generic_objective(obj: WeightedInverseObjective, lambda1: f64, lambda2: f64) -> Result<f64> {
    obj.evaluate(lambda1, lambda2)
}

/// `(2^{γ1}−1)2^{γ2}σ²/λ1 + (2^{γ2}−1)σ²/λ2`.
pub fn noma_power_order1(
    lambda1: f64,
    lambda2: f64,
    rates: TargetRates,
    noise: NoisePower,
) -> Result<f64> {
    WeightedInverseObjective::noma_order1(rates, noise).evaluate(lambda1, lambda2)
}

/// `(2^{γ1}−1)σ²/λ1 + (2^{γ2}−1)2^{γ1}σ²/λ2`.
pub fn noma_power_order2(
    lambda1: f64,
    lambda2: f64,
    rates: TargetRates,
    noise: NoisePower,
) -> Result<f64> {
    WeightedInverseObjective::noma_order2(rates, noise).evaluate(lambda1, lambda2)
}

/// Smaller of the two decoding orders at fixed gains; ties go to order 1.
pub fn noma_power(
    lambda1: f64,
    lambda2: f64,
    rates: TargetRates,
    noise: NoisePower,
) -> Result<(f64, SchemeKind)> {
    let p1 = noma_power_order1(lambda1, lambda2, rates, noise)?;
    let p2 = noma_power_order2(lambda1, lambda2, rates, noise)?;
    Ok(if p1 <= p2 {
        (p1, SchemeKind::NomaOrder1)
    } else {
        (p2, SchemeKind::NomaOrder2)
    })
}

/// `(2^{2γ1}−1)σ²/(2λ1) + (2^{2γ2}−1)σ²/(2λ2)`.
pub fn fdma_power(
    lambda1: f64,
    lambda2: f64,
    rates: TargetRates,
    noise: NoisePower,
) -> Result<f64> {
    WeightedInverseObjective::orthogonal(rates, noise).evaluate(lambda1, lambda2)
}

/// The two separable TDMA summands. `lambda_k` is user k's gain under its
/// own slot's phase vector.
pub fn tdma_power_terms(
    lambda1: f64,
    lambda2: f64,
    rates: TargetRates,
    noise: NoisePower,
) -> Result<(f64, f64)> {
    let w = WeightedInverseObjective::orthogonal(rates, noise);
    Ok((
        inverse_term(w.a1, lambda1, 1)?,
        inverse_term(w.a2, lambda2, 2)?,
    ))
}
