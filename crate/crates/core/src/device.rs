//! Analytic transistor behavior for back-biased FDSOI devices.
//!
//! The models here are deliberately first-order:
//!
//! 1. **Threshold voltage**: `Vt = Vt0 - k_bb * Vbb + poly_dVt`, a linear
//!    back-bias response of 85 mV/V. `Vbb > 0` always means forward bias
//!    (threshold magnitude drops) regardless of polarity; the mapping to
//!    well voltages is kept internal.
//!
//! 2. **Stage delay**: alpha-power law, `delay ∝ C * Vswing / Vov^eta`
//!    with `eta` between 1 (fully velocity-saturated) and 2 (long-channel
//!    square law).
//!
//! 3. **Subthreshold leakage**: one decade of off-current per `swing`
//!    (60 mV/decade near-ideal slope) of threshold reduction below a fixed
//!    calibration threshold.
//!
//! The closed-form quaternary/binary energy and delay ratios live here too
//! since they are pure functions of these device parameters; the technology
//! constant `k_tech` cancels in every ratio.

use serde::Serialize;

use crate::float::{exp10, Real};

/// Channel polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Polarity {
    Nmos,
    Pmos,
}

/// Threshold flavor set by back-plane doping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// Regular-Vt: wide reverse-bias range, forward bias capped at +300 mV.
    Rvt,
    /// Low-Vt: wide forward-bias range, reverse bias capped at -300 mV.
    Lvt,
}

impl Flavor {
    /// Legal back-bias window in volts, `(min, max)`, forward positive.
    /// Outside it the substrate diodes forward-bias.
    pub fn bias_window(self) -> (f64, f64) {
        match self {
            Flavor::Rvt => (-3.0, 0.3),
            Flavor::Lvt => (-0.3, 3.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DeviceError {
    #[error("illegal back-bias {vbb} V on {flavor:?} device: legal window is [{min}, {max}] V")]
    IllegalBackBias {
        flavor: Flavor,
        vbb: f64,
        min: f64,
        max: f64,
    },
    #[error("non-functional stage: overdrive {overdrive} V cannot pull the swing")]
    NonFunctionalStage { overdrive: f64 },
    #[error("threshold target {target} V unreachable with the configured flavors and bias limits")]
    UnreachableVt { target: f64 },
    #[error("invalid device parameter: {0}")]
    InvalidParameter(String),
}

/// One transistor's electrical personality.
///
/// `vt0` is the zero-bias threshold magnitude for both polarities;
/// `poly_bias_dvt` is an additive threshold increase from gate lengthening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransistorSpec<F: Real> {
    pub polarity: Polarity,
    pub flavor: Flavor,
    pub vt0: F,
    pub vbb: F,
    pub poly_bias_dvt: F,
    pub width_mult: F,
}

impl<F: Real> TransistorSpec<F> {
    pub fn new(polarity: Polarity, flavor: Flavor, vt0: F) -> Self {
        TransistorSpec {
            polarity,
            flavor,
            vt0,
            vbb: F::zero(),
            poly_bias_dvt: F::zero(),
            width_mult: F::one(),
        }
    }

    pub fn with_vbb(mut self, vbb: F) -> Self {
        self.vbb = vbb;
        self
    }

    pub fn with_poly_bias(mut self, dvt: F) -> Self {
        self.poly_bias_dvt = dvt;
        self
    }

    pub fn with_width(mut self, width_mult: F) -> Self {
        self.width_mult = width_mult;
        self
    }

    pub fn validate(&self) -> Result<(), DeviceError> {
        if self.vt0 <= F::zero() {
            return Err(DeviceError::InvalidParameter(format!(
                "vt0 must be positive, got {}",
                self.vt0
            )));
        }
        if self.width_mult < F::one() || self.width_mult > F::of(4.0) {
            return Err(DeviceError::InvalidParameter(format!(
                "width_mult must lie in [1, 4], got {}",
                self.width_mult
            )));
        }
        validate_back_bias(self)
    }
}

/// Checks the back-bias against the flavor's legality window.
pub fn validate_back_bias<F: Real>(spec: &TransistorSpec<F>) -> Result<(), DeviceError> {
    let (min, max) = spec.flavor.bias_window();
    let vbb = spec.vbb.as_f64();
    if vbb < min || vbb > max {
        return Err(DeviceError::IllegalBackBias {
            flavor: spec.flavor,
            vbb,
            min,
            max,
        });
    }
    Ok(())
}

/// Threshold sensitivity to back-bias, V of Vt shift per V of bias.
pub const DEFAULT_K_BB: f64 = 0.085;

/// Effective threshold magnitude under back-bias and poly-bias.
/// Forward bias (`vbb > 0`) lowers it linearly at `k_bb` V/V.
pub fn effective_vt<F: Real>(spec: &TransistorSpec<F>, k_bb: F) -> Result<F, DeviceError> {
    validate_back_bias(spec)?;
    Ok(spec.vt0 - k_bb * spec.vbb + spec.poly_bias_dvt)
}

/// Alpha-power-law delay parameters.
///
/// `k_tech` carries the technology-dependent scale (seconds * V^(eta-1) / F)
/// and cancels in every quaternary/binary ratio; leave it at 1 unless
/// absolute numbers are wanted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayModel<F: Real> {
    pub eta: F,
    pub k_tech: F,
}

impl<F: Real> DelayModel<F> {
    pub fn new(eta: F, k_tech: F) -> Result<Self, DeviceError> {
        if eta < F::one() || eta > F::of(2.0) {
            return Err(DeviceError::InvalidParameter(format!(
                "eta must lie in [1, 2], got {eta}"
            )));
        }
        Ok(DelayModel { eta, k_tech })
    }
}

impl<F: Real> Default for DelayModel<F> {
    /// eta = 1.5, the midpoint of the velocity-saturation range.
    fn default() -> Self {
        DelayModel {
            eta: F::of(1.5),
            k_tech: F::one(),
        }
    }
}

/// Delay of one stage charging `c_load` through swing `v_swing` with gate
/// overdrive `v_overdrive`.
pub fn stage_delay<F: Real>(
    c_load: F,
    v_swing: F,
    v_overdrive: F,
    dm: &DelayModel<F>,
) -> Result<F, DeviceError> {
    if v_overdrive <= F::zero() {
        return Err(DeviceError::NonFunctionalStage {
            overdrive: v_overdrive.as_f64(),
        });
    }
    Ok(dm.k_tech * c_load * v_swing / v_overdrive.powf(dm.eta))
}

/// Subthreshold leakage law: one decade per `swing` volts of threshold
/// reduction below `vt_ref`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeakageModel<F: Real> {
    /// Off-current of a unit-width device at `vt_ref`.
    pub i0: F,
    /// Subthreshold slope, volts per decade.
    pub swing: F,
    /// Calibration threshold at which a unit-width device leaks exactly `i0`.
    pub vt_ref: F,
}

impl<F: Real> LeakageModel<F> {
    pub fn new(i0: F, swing: F, vt_ref: F) -> Result<Self, DeviceError> {
        if i0 <= F::zero() || swing <= F::zero() {
            return Err(DeviceError::InvalidParameter(
                "i0 and swing must be positive".into(),
            ));
        }
        Ok(LeakageModel { i0, swing, vt_ref })
    }
}

impl<F: Real> Default for LeakageModel<F> {
    fn default() -> Self {
        LeakageModel {
            i0: F::of(1e-9),
            swing: F::of(0.060),
            vt_ref: F::of(0.35),
        }
    }
}

/// Off-state leakage of a device at its effective threshold.
pub fn leakage_current<F: Real>(
    spec: &TransistorSpec<F>,
    lm: &LeakageModel<F>,
    k_bb: F,
) -> Result<F, DeviceError> {
    let vt = effective_vt(spec, k_bb)?;
    Ok(lm.i0 * exp10((lm.vt_ref - vt) / lm.swing) * spec.width_mult)
}

/// Input loading presented by repeaters: a quaternary repeater input is
/// exactly three binary buffer inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepeaterLoadModel<F: Real> {
    pub c_load_binary: F,
    pub quaternary_input_factor: F,
}

impl<F: Real> RepeaterLoadModel<F> {
    pub fn new(c_load_binary: F) -> Self {
        RepeaterLoadModel {
            c_load_binary,
            quaternary_input_factor: F::of(3.0),
        }
    }

    pub fn quaternary_input_cap(&self) -> F {
        self.c_load_binary * self.quaternary_input_factor
    }
}

/// Average-switching-energy ratio of one quaternary track versus the
/// two-wire binary bus carrying the same information:
/// `((c_wire + 3 c_l) * 5/18) / (2 (c_wire + c_l) * 1/2)`.
pub fn energy_ratio_quaternary<F: Real>(c_wire: F, c_l: F) -> F {
    let avg_q = F::of(5.0) / F::of(18.0);
    let num = (c_wire + F::of(3.0) * c_l) * avg_q;
    let den = c_wire + c_l; // 2 wires * 1/2 average
    num / den
}

/// Worst-case delay ratio of the quaternary repeater versus the binary
/// buffer at finite wire capacitance. The quaternary worst case is the
/// lowest-swing transition, `vdd/3`, driven at the forward-biased
/// threshold `vtn_prime`.
pub fn delay_ratio_quaternary<F: Real>(
    ceff_wire: F,
    c_l: F,
    vdd: F,
    vtn: F,
    vtn_prime: F,
    eta: F,
) -> Result<F, DeviceError> {
    let third = vdd / F::of(3.0);
    let ov_q = third - vtn_prime;
    if ov_q <= F::zero() {
        return Err(DeviceError::NonFunctionalStage {
            overdrive: ov_q.as_f64(),
        });
    }
    let ov_b = vdd - vtn;
    if ov_b <= F::zero() {
        return Err(DeviceError::NonFunctionalStage {
            overdrive: ov_b.as_f64(),
        });
    }
    let q = (ceff_wire + F::of(3.0) * c_l) * third / ov_q.powf(eta);
    let b = (ceff_wire + c_l) * vdd / ov_b.powf(eta);
    Ok(q / b)
}

/// Long-wire limit of [`delay_ratio_quaternary`]:
/// `3^(eta-1) * (vdd - vtn)^eta / (vdd - 3 vtn_prime)^eta`.
pub fn delay_ratio_long_wire<F: Real>(
    vdd: F,
    vtn: F,
    vtn_prime: F,
    eta: F,
) -> Result<F, DeviceError> {
    let den = vdd - F::of(3.0) * vtn_prime;
    if den <= F::zero() {
        return Err(DeviceError::NonFunctionalStage {
            overdrive: den.as_f64(),
        });
    }
    let three = F::of(3.0);
    Ok(three.powf(eta - F::one()) * ((vdd - vtn) / den).powf(eta))
}

/// Flavor bases and bias limits used to realize engineered thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceConfig<F: Real> {
    pub vt0_rvt: F,
    pub vt0_lvt: F,
    pub k_bb: F,
    /// Bias magnitude the threshold engineering will use, kept inside the
    /// legality window so a +/-10% supply excursion on the bias rail stays
    /// legal.
    pub max_engineered_bias: F,
}

impl<F: Real> Default for DeviceConfig<F> {
    fn default() -> Self {
        DeviceConfig {
            vt0_rvt: F::of(0.35),
            vt0_lvt: F::of(0.30),
            k_bb: F::of(DEFAULT_K_BB),
            max_engineered_bias: F::of(2.5),
        }
    }
}

impl<F: Real> DeviceConfig<F> {
    /// An unbiased regular-Vt device, the binary reference transistor.
    pub fn standard(&self, polarity: Polarity) -> TransistorSpec<F> {
        TransistorSpec::new(polarity, Flavor::Rvt, self.vt0_rvt)
    }

    /// Builds a spec whose effective threshold equals `target` exactly.
    ///
    /// Raised thresholds come from RVT + reverse bias (poly-bias covers
    /// anything past the usable bias range); lowered ones from LVT +
    /// forward bias. Mid-range targets use whichever flavor needs the
    /// smaller bias.
    pub fn engineer_vt(
        &self,
        polarity: Polarity,
        target: F,
    ) -> Result<TransistorSpec<F>, DeviceError> {
        let small = F::of(0.25); // within the 300 mV cross-flavor windows
        let spec = if target >= self.vt0_rvt {
            let shift = target - self.vt0_rvt;
            let vbb = -(shift / self.k_bb).min(self.max_engineered_bias);
            let poly = shift + self.k_bb * vbb;
            TransistorSpec::new(polarity, Flavor::Rvt, self.vt0_rvt)
                .with_vbb(vbb)
                .with_poly_bias(poly)
        } else if target >= self.vt0_lvt {
            let fbb_rvt = (self.vt0_rvt - target) / self.k_bb;
            let rbb_lvt = (target - self.vt0_lvt) / self.k_bb;
            if fbb_rvt <= small {
                TransistorSpec::new(polarity, Flavor::Rvt, self.vt0_rvt).with_vbb(fbb_rvt)
            } else if rbb_lvt <= small {
                TransistorSpec::new(polarity, Flavor::Lvt, self.vt0_lvt).with_vbb(-rbb_lvt)
            } else {
                let poly = target - self.vt0_lvt - self.k_bb * small;
                TransistorSpec::new(polarity, Flavor::Lvt, self.vt0_lvt)
                    .with_vbb(-small)
                    .with_poly_bias(poly)
            }
        } else {
            let fbb = (self.vt0_lvt - target) / self.k_bb;
            if fbb > self.max_engineered_bias {
                return Err(DeviceError::UnreachableVt {
                    target: target.as_f64(),
                });
            }
            TransistorSpec::new(polarity, Flavor::Lvt, self.vt0_lvt).with_vbb(fbb)
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Back-bias presets for the quaternary repeater's driving stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RepeaterMode {
    /// Heavy forward bias on the drivers: lowest delay, highest leakage.
    Fast,
    /// Moderate forward bias.
    Std,
    /// Minimal forward bias: lowest leakage, longest delay.
    LowLeakage,
}

impl RepeaterMode {
    /// Driving-stage threshold target, as a fraction of the binary
    /// reference threshold. Fast sits at `vtn/3`, where the long-wire
    /// delay ratio becomes `3^(eta-1)`.
    pub fn drive_vt_target<F: Real>(self, vtn_ref: F) -> F {
        match self {
            RepeaterMode::Fast => vtn_ref / F::of(3.0),
            RepeaterMode::Std => vtn_ref / F::of(2.0),
            RepeaterMode::LowLeakage => vtn_ref * F::of(5.0) / F::of(7.0),
        }
    }

    /// Cycle time each preset is evaluated at, seconds.
    pub fn default_cycle_s(self) -> f64 {
        match self {
            RepeaterMode::Fast => 10e-9,
            RepeaterMode::Std => 40e-9,
            RepeaterMode::LowLeakage => 70e-9,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepeaterMode::Fast => "FAST",
            RepeaterMode::Std => "STD",
            RepeaterMode::LowLeakage => "LL",
        }
    }
}

impl std::str::FromStr for RepeaterMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "FAST" => Ok(RepeaterMode::Fast),
            "STD" => Ok(RepeaterMode::Std),
            "LL" | "LOWLEAKAGE" | "LOW-LEAKAGE" => Ok(RepeaterMode::LowLeakage),
            other => Err(format!("unknown repeater mode {other:?} (FAST, STD, LL)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rvt(vbb: f64) -> TransistorSpec<f64> {
        TransistorSpec::new(Polarity::Nmos, Flavor::Rvt, 0.35).with_vbb(vbb)
    }

    fn lvt(vbb: f64) -> TransistorSpec<f64> {
        TransistorSpec::new(Polarity::Nmos, Flavor::Lvt, 0.30).with_vbb(vbb)
    }

    #[test]
    fn bias_windows_per_flavor() {
        assert!(validate_back_bias(&rvt(0.5)).is_err());
        assert!(validate_back_bias(&rvt(-2.0)).is_ok());
        assert!(validate_back_bias(&rvt(-3.0)).is_ok());
        assert!(validate_back_bias(&rvt(-3.1)).is_err());
        assert!(validate_back_bias(&lvt(2.0)).is_ok());
        assert!(validate_back_bias(&lvt(3.0)).is_ok());
        assert!(validate_back_bias(&lvt(-0.4)).is_err());
        match validate_back_bias(&rvt(0.5)) {
            Err(DeviceError::IllegalBackBias { flavor, max, .. }) => {
                assert_eq!(flavor, Flavor::Rvt);
                assert_eq!(max, 0.3);
            }
            other => panic!("expected illegal-bias error, got {other:?}"),
        }
    }

    #[test]
    fn effective_vt_is_linear_85mv_per_volt() {
        let k = 0.085;
        assert_relative_eq!(effective_vt(&rvt(0.3), k).unwrap(), 0.3245);
        assert_relative_eq!(effective_vt(&rvt(0.0), k).unwrap(), 0.35);
        assert_relative_eq!(effective_vt(&lvt(3.0), k).unwrap(), 0.045);
        // monotone decreasing in forward bias
        let mut last = f64::INFINITY;
        for step in 0..=30 {
            let vbb = f64::from(step) * 0.1;
            let vt = effective_vt(&lvt(vbb), k).unwrap();
            assert!(vt < last);
            last = vt;
        }
        assert!(effective_vt(&rvt(1.0), k).is_err());
    }

    #[test]
    fn stage_delay_scaling() {
        let dm = DelayModel::<f64>::default();
        let d1 = stage_delay(1e-15, 0.9, 0.55, &dm).unwrap();
        let d2 = stage_delay(2e-15, 0.9, 0.55, &dm).unwrap();
        assert_relative_eq!(d2, 2.0 * d1);
        let lin = DelayModel::new(1.0, 1.0).unwrap();
        let a = stage_delay(1e-15, 0.9, 0.4, &lin).unwrap();
        let b = stage_delay(1e-15, 0.9, 0.2, &lin).unwrap();
        assert_relative_eq!(b, 2.0 * a);
        assert!(stage_delay(1e-15, 0.9, 0.0, &dm).is_err());
        assert!(DelayModel::new(2.5, 1.0).is_err());
    }

    #[test]
    fn stage_delay_grows_unbounded_near_zero_overdrive() {
        let dm = DelayModel::<f64>::default();
        let mut last = 0.0;
        for ov in [0.5, 0.2, 0.1, 0.05, 0.01, 0.001] {
            let d = stage_delay(1e-15, 0.9, ov, &dm).unwrap();
            assert!(d > last);
            last = d;
        }
    }

    #[test]
    fn energy_ratio_reference_points() {
        // exact fractions at the ends of the wire-length range
        assert_relative_eq!(energy_ratio_quaternary(0.0, 1.0), 5.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(energy_ratio_quaternary(1.0, 1.0), 5.0 / 9.0, max_relative = 1e-15);
        let limit = energy_ratio_quaternary(1e6, 1.0);
        assert!((limit - 5.0 / 18.0).abs() < 1e-6);
    }

    #[test]
    fn energy_ratio_is_monotone_and_bounded() {
        let mut last = f64::INFINITY;
        for exp in -2..=7 {
            let c_wire = 10f64.powi(exp);
            let r = energy_ratio_quaternary(c_wire, 1.0);
            assert!(r < last);
            assert!(r > 5.0 / 18.0 && r <= 5.0 / 6.0);
            last = r;
        }
    }

    #[test]
    fn delay_ratio_finite_wire_example() {
        let r = delay_ratio_quaternary(10.0, 1.0, 0.9, 0.3, 0.1, 1.5).unwrap();
        // (13 * 0.3 / 0.2^1.5) * (0.6^1.5 / 9.9), evaluated independently
        assert_relative_eq!(r, 2.0469691362177644, max_relative = 1e-12);
        assert!((r - 2.047).abs() < 5e-4);
        assert!(delay_ratio_quaternary(10.0, 1.0, 0.9, 0.3, 0.31, 1.5).is_err());
    }

    #[test]
    fn long_wire_ratio_at_third_threshold() {
        // vtn' = vtn/3 makes the overdrives cancel, leaving 3^(eta-1)
        let r = delay_ratio_long_wire(0.9, 0.35, 0.35 / 3.0, 1.5).unwrap();
        assert_relative_eq!(r, 3f64.sqrt(), max_relative = 1e-12);
        let unity = delay_ratio_long_wire(0.9, 0.35, 0.35 / 3.0, 1.0).unwrap();
        assert_relative_eq!(unity, 1.0, max_relative = 1e-12);
        // degenerate zero-threshold case: pure 3^(eta-1)
        let r0 = delay_ratio_long_wire(0.9, 0.0, 0.0, 1.7).unwrap();
        assert_relative_eq!(r0, 3f64.powf(0.7), max_relative = 1e-12);
        assert!(delay_ratio_long_wire(0.9, 0.35, 0.3, 1.5).is_err());
    }

    #[test]
    fn finite_ratio_converges_to_long_wire_limit() {
        let limit = delay_ratio_long_wire(0.9, 0.35, 0.15, 1.5).unwrap();
        let near = delay_ratio_quaternary(1000.0, 1.0, 0.9, 0.35, 0.15, 1.5).unwrap();
        assert!((near - limit).abs() / limit < 0.01);
    }

    #[test]
    fn leakage_decades() {
        let lm = LeakageModel::<f64>::default();
        let k = 0.085;
        // calibration point: unit-width device at vt_ref leaks exactly i0
        assert_relative_eq!(leakage_current(&rvt(0.0), &lm, k).unwrap(), 1e-9, max_relative = 1e-12);
        // one decade per 60 mV of threshold reduction
        let lowered = TransistorSpec::new(Polarity::Nmos, Flavor::Lvt, 0.35 - 0.060);
        assert_relative_eq!(leakage_current(&lowered, &lm, k).unwrap(), 1e-8, max_relative = 1e-9);
        // 1 V of forward bias on a device at vt_ref: 85 mV shift, 26.1x
        let biased = TransistorSpec::new(Polarity::Nmos, Flavor::Lvt, 0.35).with_vbb(1.0);
        assert_relative_eq!(
            leakage_current(&biased, &lm, k).unwrap(),
            26.101572156825373e-9,
            max_relative = 1e-9
        );
        // monotone in forward bias, width scales linearly
        let mut last = 0.0;
        for step in 0..=10 {
            let i = leakage_current(&lvt(f64::from(step) * 0.3), &lm, k).unwrap();
            assert!(i > last);
            last = i;
        }
        let wide = lvt(1.0).with_width(4.0);
        assert_relative_eq!(
            leakage_current(&wide, &lm, k).unwrap(),
            4.0 * leakage_current(&lvt(1.0), &lm, k).unwrap()
        );
    }

    #[test]
    fn quaternary_input_is_three_binary_loads() {
        let loads = RepeaterLoadModel::new(0.2e-15);
        assert_relative_eq!(loads.quaternary_input_cap(), 0.6e-15);
    }

    #[test]
    fn engineered_thresholds_hit_targets() {
        let cfg = DeviceConfig::<f64>::default();
        for target in [0.116666, 0.15, 0.175, 0.20, 0.25, 0.33, 0.45, 0.75] {
            let spec = cfg.engineer_vt(Polarity::Nmos, target).unwrap();
            spec.validate().unwrap();
            let vt = effective_vt(&spec, cfg.k_bb).unwrap();
            assert_relative_eq!(vt, target, max_relative = 1e-9);
        }
        // below the reachable range
        assert!(matches!(
            cfg.engineer_vt(Polarity::Nmos, 0.05),
            Err(DeviceError::UnreachableVt { .. })
        ));
    }

    #[test]
    fn mode_targets() {
        assert_relative_eq!(RepeaterMode::Fast.drive_vt_target(0.35), 0.35 / 3.0);
        assert_relative_eq!(RepeaterMode::Std.drive_vt_target(0.35), 0.175);
        assert_relative_eq!(RepeaterMode::LowLeakage.drive_vt_target(0.35), 0.25);
        assert_eq!("ll".parse::<RepeaterMode>().unwrap(), RepeaterMode::LowLeakage);
        assert!("warp".parse::<RepeaterMode>().is_err());
    }
}
