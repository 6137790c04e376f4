//! AP–IRS–user channel model.
//!
//! The IRS has `N` elements grouped into `M` sub-surfaces that share one
//! reflection coefficient each, so every channel quantity below is indexed by
//! sub-surface. The effective channel of user `k` under phase vector `θ` is
//! `q_k^H θ + h_{d,k}` where `q_k^H = g_k^H diag(h_r)` is the cascaded
//! AP→IRS→user channel.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::rng::{self, StreamId};

/// One of the two users sharing the resource-block pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum User {
    One,
    Two,
}

impl User {
    pub const BOTH: [User; 2] = [User::One, User::Two];

    pub fn index(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }

    pub fn number(self) -> usize {
        self.index() + 1
    }
}

/// IRS layout: element count, sub-surface grouping and phase resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrsConfig {
    num_elements: usize,
    num_subsurfaces: usize,
    phase_levels: usize,
}

impl IrsConfig {
    pub fn new(num_elements: usize, num_subsurfaces: usize, phase_levels: usize) -> Result<Self> {
        if num_elements == 0 {
            return Err(invalid("irs.elements", "must be positive"));
        }
        if num_subsurfaces == 0 {
            return Err(invalid("irs.subsurfaces", "must be positive"));
        }
        if !num_elements.is_multiple_of(num_subsurfaces) {
            return Err(invalid(
                "irs.subsurfaces",
                format!("{num_subsurfaces} does not divide the element count {num_elements}"),
            ));
        }
        if phase_levels < 2 {
            return Err(invalid("irs.phase_levels", "need at least 2 levels"));
        }
        Ok(Self {
            num_elements,
            num_subsurfaces,
            phase_levels,
        })
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn num_subsurfaces(&self) -> usize {
        self.num_subsurfaces
    }

    pub fn phase_levels(&self) -> usize {
        self.phase_levels
    }

    /// `N̄ = N / M`.
    pub fn elements_per_subsurface(&self) -> usize {
        self.num_elements / self.num_subsurfaces
    }

    pub fn phase_step(&self) -> f64 {
        phase_step(self.phase_levels)
    }
}

impl Default for IrsConfig {
    fn default() -> Self {
        Self {
            num_elements: 100,
            num_subsurfaces: 5,
            phase_levels: 8,
        }
    }
}

pub(crate) fn phase_step(levels: usize) -> f64 {
    2.0 * PI / levels as f64
}

/// A discrete IRS configuration `θ ∈ F^M`, stored as lattice indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseShiftVector {
    levels: Vec<usize>,
    phase_levels: usize,
}

impl PhaseShiftVector {
    pub fn new(levels: Vec<usize>, phase_levels: usize) -> Result<Self> {
        if phase_levels == 0 {
            return Err(invalid("phase_levels", "must be positive"));
        }
        if let Some(&bad) = levels.iter().find(|&&l| l >= phase_levels) {
            return Err(invalid(
                "phase level",
                format!("{bad} is outside 0..{phase_levels}"),
            ));
        }
        Ok(Self {
            levels,
            phase_levels,
        })
    }

    pub fn zeros(len: usize, phase_levels: usize) -> Self {
        Self {
            levels: vec![0; len],
            phase_levels: phase_levels.max(1),
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn phase_levels(&self) -> usize {
        self.phase_levels
    }

    /// Overwrites one element. `level` must be below `phase_levels`.
    pub fn set(&mut self, index: usize, level: usize) {
        debug_assert!(level < self.phase_levels);
        self.levels[index] = level;
    }

    pub fn phase(&self, index: usize) -> f64 {
        self.levels[index] as f64 * phase_step(self.phase_levels)
    }

    /// `θ_m = e^{j·l_m·Δφ}`.
    pub fn coefficient(&self, index: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.phase(index))
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        (0..self.len()).map(|m| self.coefficient(m)).collect()
    }
}

impl fmt::Display for PhaseShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]/{}", self.phase_levels)
    }
}

/// Planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Top-view placement of the AP, the IRS and both users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub ap: Point,
    pub irs: Point,
    pub user1: Point,
    pub user2: Point,
}

/// Link distances derived from a [`Geometry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkDistances {
    pub ap_irs: f64,
    pub irs_user: [f64; 2],
    pub ap_user: [f64; 2],
}

impl Geometry {
    pub fn user(&self, user: User) -> Point {
        match user {
            User::One => self.user1,
            User::Two => self.user2,
        }
    }

    pub fn distances(&self) -> LinkDistances {
        LinkDistances {
            ap_irs: self.ap.distance(&self.irs),
            irs_user: [
                self.irs.distance(&self.user1),
                self.irs.distance(&self.user2),
            ],
            ap_user: [self.ap.distance(&self.user1), self.ap.distance(&self.user2)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.distances();
        let all = [
            ("geometry.ap-irs", d.ap_irs),
            ("geometry.irs-user1", d.irs_user[0]),
            ("geometry.irs-user2", d.irs_user[1]),
            ("geometry.ap-user1", d.ap_user[0]),
            ("geometry.ap-user2", d.ap_user[1]),
        ];
        for (field, dist) in all {
            if !(dist.is_finite() && dist > 0.0) {
                return Err(invalid(
                    field,
                    format!("distance {dist} m must be positive"),
                ));
            }
        }
        Ok(())
    }
}

/// Log-distance path loss with a common 1 m reference loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossModel {
    pub exponent_ap_user: f64,
    pub exponent_irs_user: f64,
    pub exponent_ap_irs: f64,
    pub reference_loss_db: f64,
}

impl Default for PathLossModel {
    fn default() -> Self {
        Self {
            exponent_ap_user: 3.2,
            exponent_irs_user: 2.6,
            exponent_ap_irs: 2.5,
            reference_loss_db: 30.0,
        }
    }
}

impl PathLossModel {
    pub fn validate(&self) -> Result<()> {
        for (field, e) in [
            ("pathloss.exponent_ap_user", self.exponent_ap_user),
            ("pathloss.exponent_irs_user", self.exponent_irs_user),
            ("pathloss.exponent_ap_irs", self.exponent_ap_irs),
        ] {
            if !(e.is_finite() && e >= 2.0) {
                return Err(invalid(field, format!("exponent {e} must be >= 2")));
            }
        }
        if !(self.reference_loss_db.is_finite() && self.reference_loss_db > 0.0) {
            return Err(invalid(
                "pathloss.reference_loss",
                format!("{} dB must be > 0", self.reference_loss_db),
            ));
        }
        Ok(())
    }

    /// Average power gain `10^(-L0/10) · d^(-α)`.
    pub fn power_gain(&self, distance: f64, exponent: f64) -> f64 {
        10f64.powf(-self.reference_loss_db / 10.0) * distance.powf(-exponent)
    }
}

/// How the `N̄` elements of a sub-surface combine into one link coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsurfaceAggregation {
    /// Elements within a sub-surface see the same fading draw, so the
    /// sub-surface coefficient is `N̄·h` and its power gain scales with `N̄²`.
    Coherent,
    /// Elements fade independently; the sub-surface coefficient is the sum of
    /// `N̄` i.i.d. element coefficients and its power gain scales with `N̄`.
    #[default]
    Incoherent,
}

impl SubsurfaceAggregation {
    /// Power scale applied to each AP→IRS and IRS→user link.
    pub fn power_scale(self, elements_per_subsurface: usize) -> f64 {
        let n = elements_per_subsurface as f64;
        match self {
            SubsurfaceAggregation::Coherent => n * n,
            SubsurfaceAggregation::Incoherent => n,
        }
    }
}

/// Average per-link power gains for one deployment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Per sub-surface, after aggregation.
    pub ap_irs: f64,
    /// Per sub-surface, after aggregation.
    pub irs_user: [f64; 2],
    pub ap_user: [f64; 2],
}

/// Everything needed to draw Rayleigh channel realizations for one deployment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    pub irs: IrsConfig,
    pub geometry: Geometry,
    pub pathloss: PathLossModel,
    pub aggregation: SubsurfaceAggregation,
    pub seed: u64,
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.pathloss.validate()
    }

    pub fn link_budget(&self) -> LinkBudget {
        let d = self.geometry.distances();
        let pl = &self.pathloss;
        let scale = self
            .aggregation
            .power_scale(self.irs.elements_per_subsurface());
        LinkBudget {
            ap_irs: scale * pl.power_gain(d.ap_irs, pl.exponent_ap_irs),
            irs_user: [
                scale * pl.power_gain(d.irs_user[0], pl.exponent_irs_user),
                scale * pl.power_gain(d.irs_user[1], pl.exponent_irs_user),
            ],
            ap_user: [
                pl.power_gain(d.ap_user[0], pl.exponent_ap_user),
                pl.power_gain(d.ap_user[1], pl.exponent_ap_user),
            ],
        }
    }

    /// Raw AP→IRS vector `h_r` for a trial.
    pub fn ap_irs_link(&self, trial: u64) -> Vec<Complex64> {
        let var = self.link_budget().ap_irs;
        let mut rng = rng::stream(self.seed, trial, StreamId::ApToIrs as u64);
        (0..self.irs.num_subsurfaces())
            .map(|_| rng::complex_gaussian(&mut rng, var))
            .collect()
    }

    /// Draws the fading realization for `trial`. Deterministic in
    /// `(seed, trial)` and independent of the order trials are drawn in.
    pub fn realization(&self, trial: u64) -> ChannelRealization {
        let budget = self.link_budget();
        let m = self.irs.num_subsurfaces();
        let h_r = self.ap_irs_link(trial);

        let irs_streams = [StreamId::IrsToUser1, StreamId::IrsToUser2];
        let direct_streams = [StreamId::ApToUser1, StreamId::ApToUser2];

        let mut q: [Vec<Complex64>; 2] = Default::default();
        let mut hd = [Complex64::new(0.0, 0.0); 2];
        for user in User::BOTH {
            let k = user.index();
            let mut rng = rng::stream(self.seed, trial, irs_streams[k] as u64);
            // g_k is drawn as the conjugated row g_k^H; q_k^H = g_k^H diag(h_r).
            q[k] = (0..m)
                .map(|i| {
                    let g_conj = rng::complex_gaussian(&mut rng, budget.irs_user[k]);
                    (g_conj * h_r[i]).conj()
                })
                .collect();
            let mut rng = rng::stream(self.seed, trial, direct_streams[k] as u64);
            hd[k] = rng::complex_gaussian(&mut rng, budget.ap_user[k]);
        }
        let [q1, q2] = q;
        ChannelRealization { q: [q1, q2], hd }
    }
}

/// Cascaded and direct channels of both users for one fading draw.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    q: [Vec<Complex64>; 2],
    hd: [Complex64; 2],
}

impl ChannelRealization {
    pub fn new(
        q1: Vec<Complex64>,
        q2: Vec<Complex64>,
        hd1: Complex64,
        hd2: Complex64,
    ) -> Result<Self> {
        if q1.len() != q2.len() {
            return Err(Error::Dimension {
                expected: q1.len(),
                actual: q2.len(),
            });
        }
        if q1.is_empty() {
            return Err(invalid("realization", "needs at least one sub-surface"));
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !(q1.iter().all(finite) && q2.iter().all(finite) && finite(&hd1) && finite(&hd2)) {
            return Err(invalid("realization", "channel entries must be finite"));
        }
        Ok(Self {
            q: [q1, q2],
            hd: [hd1, hd2],
        })
    }

    /// Same cascaded and direct channel for both users.
    pub fn symmetric(q: Vec<Complex64>, hd: Complex64) -> Result<Self> {
        Self::new(q.clone(), q, hd, hd)
    }

    pub fn num_subsurfaces(&self) -> usize {
        self.q[0].len()
    }

    pub fn cascaded(&self, user: User) -> &[Complex64] {
        &self.q[user.index()]
    }

    pub fn direct(&self, user: User) -> Complex64 {
        self.hd[user.index()]
    }

    /// `λ_k(θ) = |q_k^H θ + h_{d,k}|²`.
    pub fn channel_gain(&self, theta: &PhaseShiftVector, user: User) -> Result<f64> {
        let q = self.cascaded(user);
        if theta.len() != q.len() {
            return Err(Error::Dimension {
                expected: q.len(),
                actual: theta.len(),
            });
        }
        let step = phase_step(theta.phase_levels());
        let mut acc = self.direct(user);
        for (qm, &level) in q.iter().zip(theta.levels()) {
            acc += qm.conj() * Complex64::from_polar(1.0, level as f64 * step);
        }
        Ok(acc.norm_sqr())
    }

    /// Gain with an arbitrary (continuous) reflection vector.
    pub fn gain_with(&self, psi: &[Complex64], user: User) -> Result<f64> {
        let q = self.cascaded(user);
        if psi.len() != q.len() {
            return Err(Error::Dimension {
                expected: q.len(),
                actual: psi.len(),
            });
        }
        let acc = q
            .iter()
            .zip(psi)
            .fold(self.direct(user), |acc, (qm, p)| acc + qm.conj() * p);
        Ok(acc.norm_sqr())
    }

    /// Gain of the direct link alone, i.e. without any IRS.
    pub fn direct_gain(&self, user: User) -> f64 {
        self.direct(user).norm_sqr()
    }

    /// `u_k = e^{j∠h_{d,k}} e^{j∠q_k}`: every reflected path co-phased with
    /// the direct path.
    pub fn best_continuous_phases(&self, user: User) -> Vec<Complex64> {
        let direct_phase = angle(self.direct(user));
        self.cascaded(user)
            .iter()
            .map(|qm| Complex64::from_polar(1.0, direct_phase + angle(*qm)))
            .collect()
    }

    /// `(Σ_m |q_{k,m}| + |h_{d,k}|)²`, the largest gain any unit-modulus
    /// vector can reach.
    pub fn gain_upper_bound(&self, user: User) -> f64 {
        let s: f64 =
            self.cascaded(user).iter().map(|z| z.norm()).sum::<f64>() + self.direct(user).norm();
        s * s
    }

    /// Multiplies the effective channel of both users by `e^{jα}`: every
    /// entry of `q_k^H` and `h_{d,k}` is rotated. Gains are unchanged for any
    /// `θ`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let r = Complex64::from_polar(1.0, alpha);
        // q_k stores the column vector; rotating q_k^H by r rotates q_k by conj(r).
        let rot = |v: &Vec<Complex64>| v.iter().map(|z| z * r.conj()).collect::<Vec<_>>();
        Self {
            q: [rot(&self.q[0]), rot(&self.q[1])],
            hd: [self.hd[0] * r, self.hd[1] * r],
        }
    }

    /// Rotates only the reflected paths (`q_k^H` entries by `e^{jα}`), leaving
    /// the direct links untouched. For `α` a multiple of `Δφ` this is a shift
    /// of the phase lattice, so optimal discrete values are unchanged.
    pub fn reflection_rotated(&self, alpha: f64) -> Self {
        let r = Complex64::from_polar(1.0, alpha).conj();
        let rot = |v: &Vec<Complex64>| v.iter().map(|z| z * r).collect::<Vec<_>>();
        Self {
            q: [rot(&self.q[0]), rot(&self.q[1])],
            hd: self.hd,
        }
    }
}

/// Phase of `z`, with `∠0 = 0`.
pub fn angle(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.im.atan2(z.re)
    }
}
