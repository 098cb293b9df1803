//! Built-in netlists for the quaternary routing primitives and the
//! truth-table verification harness that exercises them through the
//! steady-state solver.
//!
//! The 12-transistor repeater splits the input with a mid-threshold
//! inverter (P0, N0) whose output SELECT steers the output stage: a
//! low-rail inverter pair (P1,N1)/(P2,N2) regenerates levels {0,1} between
//! VDD1 and VDD0 onto net V10, a high-rail pair (P3,N3)/(P4,N4)
//! regenerates {2,3} between VDD3 and VDD2 onto V32, and the pass devices
//! N5/P5 forward whichever branch matches the input's half.
//!
//! Down-literal converters are single inverters whose N/P thresholds are
//! engineered to sit between two adjacent levels. Multiplexers are NMOS
//! pass trees with boost-rail select drivers so every level passes
//! undegraded. The level/bit translators combine DLCs, a 2:1 transmission
//! gate mux and one-hot rail selection; note the emitted bit pair is the
//! complement of the plain binary code of the level.

use serde::Serialize;

use crate::device::{DeviceConfig, DeviceError, Polarity, RepeaterMode, TransistorSpec};
use crate::float::Real;
use crate::mvl::{Level, MvlError, Radix, VoltageMap};

use super::netlist::{Netlist, NetlistError};
use super::solver::{solve_steady_state, SolveError, SolverOptions, SteadyState, SwitchState};

const ON: SwitchState = SwitchState::On;
const OFF: SwitchState = SwitchState::Off;

/// Device ids of the repeater in state-table column order.
pub const REPEATER_DEVICE_ORDER: [&str; 12] = [
    "N0", "P0", "N1", "P1", "N2", "P2", "N3", "P3", "N4", "P4", "N5", "P5",
];

/// Expected ON/OFF state of each repeater device for input levels 0..3.
pub const REPEATER_STATE_TABLE: [[SwitchState; 12]; 4] = [
    [OFF, ON, OFF, ON, ON, OFF, OFF, ON, ON, OFF, ON, OFF],
    [OFF, ON, ON, OFF, OFF, ON, OFF, ON, ON, OFF, ON, OFF],
    [ON, OFF, ON, OFF, OFF, ON, OFF, ON, ON, OFF, OFF, ON],
    [ON, OFF, ON, OFF, OFF, ON, ON, OFF, OFF, ON, OFF, ON],
];

/// Down-literal converter outputs: row = input level, column = DLC index.
/// DLCk emits level 3 iff the input is at or below level k.
pub const DLC_TRUTH_TABLE: [[Level; 3]; 4] = [[3, 3, 3], [0, 3, 3], [0, 0, 3], [0, 0, 0]];

/// Level-to-bit-pair translation, `(level, s1, s0)`. The bits are the
/// complement of the binary code of the level; the reverse translator
/// uses the same convention, so the pair round-trips.
pub const TRANSLATOR_4TO2_TABLE: [(Level, u8, u8); 4] =
    [(0, 1, 1), (1, 1, 0), (2, 0, 1), (3, 0, 0)];

/// The buildable primitive circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrimitiveKind {
    Dlc0,
    Dlc1,
    Dlc2,
    QuaternaryRepeater,
    /// Pass-transistor mux with `select_bits` binary select inputs
    /// (2^select_bits data inputs).
    PassMuxTree { select_bits: u8 },
    Translator4to2,
    Translator2to4,
}

impl PrimitiveKind {
    /// The default verification set: all primitives, mux at 8:1.
    pub fn all_default() -> [PrimitiveKind; 7] {
        [
            PrimitiveKind::Dlc0,
            PrimitiveKind::Dlc1,
            PrimitiveKind::Dlc2,
            PrimitiveKind::QuaternaryRepeater,
            PrimitiveKind::PassMuxTree { select_bits: 3 },
            PrimitiveKind::Translator4to2,
            PrimitiveKind::Translator2to4,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            PrimitiveKind::Dlc0 => "dlc0".into(),
            PrimitiveKind::Dlc1 => "dlc1".into(),
            PrimitiveKind::Dlc2 => "dlc2".into(),
            PrimitiveKind::QuaternaryRepeater => "repeater".into(),
            PrimitiveKind::PassMuxTree { select_bits } => {
                format!("mux{}to1", 1usize << select_bits)
            }
            PrimitiveKind::Translator4to2 => "translator-4to2".into(),
            PrimitiveKind::Translator2to4 => "translator-2to4".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PrimitiveError {
    #[error("primitive requires a radix-4 voltage map, got radix {0}")]
    WrongRadix(u8),
    #[error("unsupported mux size: {0} select bits (supported: 1..=4)")]
    MuxSize(u8),
    #[error("no such down-literal converter: DLC{0} (supported: 0..=2)")]
    DlcIndex(u8),
    #[error("mux expects {expected} input levels, got {got}")]
    MuxInputs { expected: usize, got: usize },
    #[error("select index {index} out of range for {inputs} inputs")]
    SelectRange { index: usize, inputs: usize },
    #[error(transparent)]
    Mvl(#[from] MvlError),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Device(#[from] DeviceError),
    #[error("{primitive}: output {node} did not settle to a clean level ({detail})")]
    DirtyOutput {
        primitive: String,
        node: String,
        detail: String,
    },
}

/// Threshold targets used when reconstructing the primitives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveConfig<F: Real> {
    pub device: DeviceConfig<F>,
    /// Repeater driving-stage threshold (the back-bias optimization knob).
    pub drive_vt: F,
    /// Boosted pass-gate threshold; `vboost - vdd` keeps the top level
    /// undegraded.
    pub pass_vt: F,
}

impl<F: Real> PrimitiveConfig<F> {
    pub fn new(device: DeviceConfig<F>, vmap: &VoltageMap<F>, mode: RepeaterMode) -> Self {
        PrimitiveConfig {
            device,
            drive_vt: mode.drive_vt_target(device.vt0_rvt),
            pass_vt: vmap.vboost() - vmap.vdd(),
        }
    }

    /// Default devices with the STD repeater preset.
    pub fn standard(vmap: &VoltageMap<F>) -> Self {
        PrimitiveConfig::new(DeviceConfig::default(), vmap, RepeaterMode::Std)
    }

    fn nmos_at(&self, target: F) -> Result<TransistorSpec<F>, PrimitiveError> {
        Ok(self.device.engineer_vt(Polarity::Nmos, target)?)
    }

    fn pmos_at(&self, target: F) -> Result<TransistorSpec<F>, PrimitiveError> {
        Ok(self.device.engineer_vt(Polarity::Pmos, target)?)
    }

    pub fn solver_options(&self) -> SolverOptions<F> {
        SolverOptions {
            k_bb: self.device.k_bb,
            ..SolverOptions::default()
        }
    }
}

fn require_quaternary<F: Real>(vmap: &VoltageMap<F>) -> Result<(), PrimitiveError> {
    if vmap.radix() != Radix::QUATERNARY {
        return Err(PrimitiveError::WrongRadix(vmap.radix().value()));
    }
    Ok(())
}

/// Builds the netlist for a primitive.
pub fn build_primitive<F: Real>(
    kind: PrimitiveKind,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    require_quaternary(vmap)?;
    match kind {
        PrimitiveKind::Dlc0 => build_dlc(0, vmap, cfg),
        PrimitiveKind::Dlc1 => build_dlc(1, vmap, cfg),
        PrimitiveKind::Dlc2 => build_dlc(2, vmap, cfg),
        PrimitiveKind::QuaternaryRepeater => build_repeater(vmap, cfg),
        PrimitiveKind::PassMuxTree { select_bits } => build_mux(select_bits, vmap, cfg),
        PrimitiveKind::Translator4to2 => build_translator_4to2(vmap, cfg),
        PrimitiveKind::Translator2to4 => build_translator_2to4(vmap, cfg),
    }
}

/// Switching threshold of a DLC-k inverter: midway between levels k and k+1.
fn dlc_vtn_target<F: Real>(which: u8, vmap: &VoltageMap<F>) -> Result<F, PrimitiveError> {
    let lo = vmap.voltage_of(which)?;
    let hi = vmap.voltage_of(which + 1)?;
    Ok((lo + hi) / F::of(2.0))
}

fn build_dlc<F: Real>(
    which: u8,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    let vtn = dlc_vtn_target(which, vmap)?;
    let vtp = vmap.vdd() - vtn;
    let mut nl = Netlist::new(format!("dlc{which}"));
    let vdd3 = nl.rail("VDD3", vmap.vdd())?;
    let vdd0 = nl.rail("VDD0", F::zero())?;
    let input = nl.input("IN")?;
    let out = nl.output("OUT")?;
    nl.add_transistor("P0", Polarity::Pmos, input, vdd3, out, cfg.pmos_at(vtp)?)?;
    nl.add_transistor("N0", Polarity::Nmos, input, vdd0, out, cfg.nmos_at(vtn)?)?;
    Ok(nl)
}

fn build_repeater<F: Real>(
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    let half = vmap.spacing() / F::of(2.0);
    let select_vt = dlc_vtn_target(1, vmap)?; // between levels 1 and 2
    let wide = F::of(4.0);

    let mut nl = Netlist::new("quaternary-repeater");
    let vdd3 = nl.rail("VDD3", vmap.voltage_of(3)?)?;
    let vdd2 = nl.rail("VDD2", vmap.voltage_of(2)?)?;
    let vdd1 = nl.rail("VDD1", vmap.voltage_of(1)?)?;
    let vdd0 = nl.rail("VDD0", vmap.voltage_of(0)?)?;
    let input = nl.input("IN")?;
    let out = nl.output("OUT")?;
    let select = nl.internal("SELECT")?;
    let mid_a = nl.internal("MIDA")?;
    let v10 = nl.internal("V10")?;
    let mid_b = nl.internal("MIDB")?;
    let v32 = nl.internal("V32")?;

    // half-splitter driving SELECT
    nl.add_transistor("N0", Polarity::Nmos, input, vdd0, select, cfg.nmos_at(select_vt)?)?;
    nl.add_transistor("P0", Polarity::Pmos, input, vdd3, select, cfg.pmos_at(select_vt)?)?;
    // low branch: two inverters between VDD1 and VDD0 regenerate {0,1}
    nl.add_transistor("N1", Polarity::Nmos, input, vdd0, mid_a, cfg.nmos_at(half)?)?;
    nl.add_transistor("P1", Polarity::Pmos, input, vdd1, mid_a, cfg.pmos_at(half)?)?;
    nl.add_transistor(
        "N2",
        Polarity::Nmos,
        mid_a,
        vdd0,
        v10,
        cfg.nmos_at(cfg.drive_vt)?.with_width(wide),
    )?;
    nl.add_transistor(
        "P2",
        Polarity::Pmos,
        mid_a,
        vdd1,
        v10,
        cfg.pmos_at(cfg.drive_vt)?.with_width(wide),
    )?;
    // high branch: two inverters between VDD3 and VDD2 regenerate {2,3}
    nl.add_transistor("N3", Polarity::Nmos, input, vdd2, mid_b, cfg.nmos_at(half)?)?;
    nl.add_transistor("P3", Polarity::Pmos, input, vdd3, mid_b, cfg.pmos_at(half)?)?;
    nl.add_transistor(
        "N4",
        Polarity::Nmos,
        mid_b,
        vdd2,
        v32,
        cfg.nmos_at(cfg.drive_vt)?.with_width(wide),
    )?;
    nl.add_transistor(
        "P4",
        Polarity::Pmos,
        mid_b,
        vdd3,
        v32,
        cfg.pmos_at(cfg.drive_vt)?.with_width(wide),
    )?;
    // output stage: SELECT high passes the low branch, low passes the high one
    nl.add_transistor(
        "N5",
        Polarity::Nmos,
        select,
        v10,
        out,
        cfg.nmos_at(half)?.with_width(wide),
    )?;
    nl.add_transistor(
        "P5",
        Polarity::Pmos,
        select,
        v32,
        out,
        cfg.pmos_at(half)?.with_width(wide),
    )?;
    Ok(nl)
}

fn build_mux<F: Real>(
    select_bits: u8,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    if !(1..=4).contains(&select_bits) {
        return Err(PrimitiveError::MuxSize(select_bits));
    }
    let n = select_bits as usize;
    let leaves = 1usize << n;
    let driver_vt = vmap.spacing() / F::of(2.0);

    let mut nl = Netlist::new(format!("mux{leaves}to1"));
    let vboost = nl.rail("VBOOST", vmap.vboost())?;
    let vdd0 = nl.rail("VDD0", F::zero())?;
    let mut prev = Vec::with_capacity(leaves);
    for i in 0..leaves {
        prev.push(nl.input(&format!("IN{i}"))?);
    }
    let out = nl.output("OUT")?;

    // boosted select drivers: two cascaded inverters per bit, powered from
    // the boost rail, regenerating the binary config bit and its complement
    let mut sel = Vec::with_capacity(n);
    let mut sel_b = Vec::with_capacity(n);
    for b in 0..n {
        let cfg_in = nl.input(&format!("CFG{b}"))?;
        let sb = nl.internal(&format!("S{b}B"))?;
        let s = nl.internal(&format!("S{b}"))?;
        nl.add_transistor(
            format!("PSB{b}"),
            Polarity::Pmos,
            cfg_in,
            vboost,
            sb,
            cfg.pmos_at(driver_vt)?,
        )?;
        nl.add_transistor(
            format!("NSB{b}"),
            Polarity::Nmos,
            cfg_in,
            vdd0,
            sb,
            cfg.nmos_at(driver_vt)?,
        )?;
        nl.add_transistor(
            format!("PS{b}"),
            Polarity::Pmos,
            sb,
            vboost,
            s,
            cfg.pmos_at(driver_vt)?,
        )?;
        nl.add_transistor(
            format!("NS{b}"),
            Polarity::Nmos,
            sb,
            vdd0,
            s,
            cfg.nmos_at(driver_vt)?,
        )?;
        sel.push(s);
        sel_b.push(sb);
    }

    // binary pass tree, stage s steered by select bit s
    for s in 0..n {
        let pairs = prev.len() / 2;
        let mut next = Vec::with_capacity(pairs);
        for k in 0..pairs {
            let merge = if s + 1 == n {
                out
            } else {
                nl.internal(&format!("M{}_{k}", s + 1))?
            };
            nl.add_transistor(
                format!("MP{s}_{}", 2 * k),
                Polarity::Nmos,
                sel_b[s],
                prev[2 * k],
                merge,
                cfg.nmos_at(cfg.pass_vt)?,
            )?;
            nl.add_transistor(
                format!("MP{s}_{}", 2 * k + 1),
                Polarity::Nmos,
                sel[s],
                prev[2 * k + 1],
                merge,
                cfg.nmos_at(cfg.pass_vt)?,
            )?;
            next.push(merge);
        }
        prev = next;
    }
    Ok(nl)
}

fn build_translator_4to2<F: Real>(
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    let mut nl = Netlist::new("translator-4to2");
    let vdd3 = nl.rail("VDD3", vmap.vdd())?;
    let vdd0 = nl.rail("VDD0", F::zero())?;
    let input = nl.input("IN")?;
    let s0 = nl.output("S0")?;
    let s1 = nl.output("S1")?;
    let dlc0 = nl.internal("DLC0O")?;
    let dlc1 = nl.internal("DLC1O")?; // doubles as SELECT
    let dlc2 = nl.internal("DLC2O")?;
    let sel_b = nl.internal("SELB")?;
    let s1_mid = nl.internal("S1M")?;

    for (idx, node) in [(0u8, dlc0), (1, dlc1), (2, dlc2)] {
        let vtn = dlc_vtn_target(idx, vmap)?;
        let vtp = vmap.vdd() - vtn;
        nl.add_transistor(
            format!("PD{idx}"),
            Polarity::Pmos,
            input,
            vdd3,
            node,
            cfg.pmos_at(vtp)?,
        )?;
        nl.add_transistor(
            format!("ND{idx}"),
            Polarity::Nmos,
            input,
            vdd0,
            node,
            cfg.nmos_at(vtn)?,
        )?;
    }
    let std_n = cfg.device.standard(Polarity::Nmos);
    let std_p = cfg.device.standard(Polarity::Pmos);
    // SELECT complement
    nl.add_transistor("PI1", Polarity::Pmos, dlc1, vdd3, sel_b, std_p)?;
    nl.add_transistor("NI1", Polarity::Nmos, dlc1, vdd0, sel_b, std_n)?;
    // transmission-gate 2:1 mux onto S0: DLC0 when SELECT, DLC2 otherwise
    nl.add_transistor("NT0", Polarity::Nmos, dlc1, dlc0, s0, std_n)?;
    nl.add_transistor("PT0", Polarity::Pmos, sel_b, dlc0, s0, std_p)?;
    nl.add_transistor("NT2", Polarity::Nmos, sel_b, dlc2, s0, std_n)?;
    nl.add_transistor("PT2", Polarity::Pmos, dlc1, dlc2, s0, std_p)?;
    // S1 is SELECT, buffered
    nl.add_transistor("PI2", Polarity::Pmos, dlc1, vdd3, s1_mid, std_p)?;
    nl.add_transistor("NI2", Polarity::Nmos, dlc1, vdd0, s1_mid, std_n)?;
    nl.add_transistor("PI3", Polarity::Pmos, s1_mid, vdd3, s1, std_p)?;
    nl.add_transistor("NI3", Polarity::Nmos, s1_mid, vdd0, s1, std_n)?;
    Ok(nl)
}

fn build_translator_2to4<F: Real>(
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Netlist<F>, PrimitiveError> {
    let mut nl = Netlist::new("translator-2to4");
    let vdd3 = nl.rail("VDD3", vmap.voltage_of(3)?)?;
    let vdd2 = nl.rail("VDD2", vmap.voltage_of(2)?)?;
    let vdd1 = nl.rail("VDD1", vmap.voltage_of(1)?)?;
    let vdd0 = nl.rail("VDD0", vmap.voltage_of(0)?)?;
    let s1 = nl.input("S1")?;
    let s0 = nl.input("S0")?;
    let out = nl.output("OUT")?;
    let s1_b = nl.internal("S1B")?;
    let s0_b = nl.internal("S0B")?;

    let std_n = cfg.device.standard(Polarity::Nmos);
    let std_p = cfg.device.standard(Polarity::Pmos);
    nl.add_transistor("PI1", Polarity::Pmos, s1, vdd3, s1_b, std_p)?;
    nl.add_transistor("NI1", Polarity::Nmos, s1, vdd0, s1_b, std_n)?;
    nl.add_transistor("PI0", Polarity::Pmos, s0, vdd3, s0_b, std_p)?;
    nl.add_transistor("NI0", Polarity::Nmos, s0, vdd0, s0_b, std_n)?;

    // one series pair per rail; exactly one pair conducts for any bit pair
    let pass_n = cfg.nmos_at(cfg.pass_vt)?;
    let pass_p = cfg.pmos_at(cfg.pass_vt)?;
    let paths: [(&str, super::netlist::NodeId, super::netlist::NodeId, super::netlist::NodeId); 3] = [
        ("NA", vdd0, s1, s0),     // (1,1) -> level 0
        ("NB", vdd1, s1, s0_b),   // (1,0) -> level 1
        ("NC", vdd2, s1_b, s0),   // (0,1) -> level 2
    ];
    for (prefix, rail, g0, g1) in paths {
        let mid = nl.internal(&format!("{prefix}M"))?;
        nl.add_transistor(format!("{prefix}0"), Polarity::Nmos, g0, rail, mid, pass_n)?;
        nl.add_transistor(format!("{prefix}1"), Polarity::Nmos, g1, mid, out, pass_n)?;
    }
    // (0,0) -> level 3 through a PMOS pair, which passes the top rail cleanly
    let mid = nl.internal("PAM")?;
    nl.add_transistor("PA0", Polarity::Pmos, s1, vdd3, mid, pass_p)?;
    nl.add_transistor("PA1", Polarity::Pmos, s0, mid, out, pass_p)?;
    Ok(nl)
}

fn clean_level<F: Real>(
    nl: &Netlist<F>,
    ss: &SteadyState<F>,
    node: &str,
    vmap: &VoltageMap<F>,
) -> Result<Level, PrimitiveError> {
    let dirty = |detail: String| PrimitiveError::DirtyOutput {
        primitive: nl.name().to_string(),
        node: node.to_string(),
        detail,
    };
    if !ss.contention.is_empty() {
        return Err(dirty(format!("contention on {:?}", ss.contention)));
    }
    if !ss.floating.is_empty() {
        return Err(dirty(format!("floating {:?}", ss.floating)));
    }
    let v = ss
        .voltage(node)
        .ok_or_else(|| dirty("no voltage".into()))?;
    vmap.level_of(v, vmap.decode_tol())
        .ok_or_else(|| dirty(format!("voltage {v} decodes to no level")))
}

fn level_response<F: Real>(
    nl: &Netlist<F>,
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let vin = vmap.voltage_of(level)?;
    let ss = solve_steady_state(nl, &[("IN", vin)], &cfg.solver_options())?;
    clean_level(nl, &ss, "OUT", vmap)
}

/// Output level of DLC `which` (0..=2) for an input level, via the solver.
pub fn dlc_transfer<F: Real>(
    which: u8,
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let kind = match which {
        0 => PrimitiveKind::Dlc0,
        1 => PrimitiveKind::Dlc1,
        2 => PrimitiveKind::Dlc2,
        other => return Err(PrimitiveError::DlcIndex(other)),
    };
    let nl = build_primitive(kind, vmap, cfg)?;
    level_response(&nl, level, vmap, cfg)
}

/// Repeater output level for an input level; the repeater is an identity
/// buffer, so this returns the input when the circuit is healthy.
pub fn repeater_transfer<F: Real>(
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let nl = build_primitive(PrimitiveKind::QuaternaryRepeater, vmap, cfg)?;
    level_response(&nl, level, vmap, cfg)
}

/// Solved repeater state for one input level (all node voltages and
/// device states), for state-table inspection.
pub fn repeater_steady_state<F: Real>(
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<SteadyState<F>, PrimitiveError> {
    let nl = build_primitive(PrimitiveKind::QuaternaryRepeater, vmap, cfg)?;
    let vin = vmap.voltage_of(level)?;
    Ok(solve_steady_state(&nl, &[("IN", vin)], &cfg.solver_options())?)
}

/// Input assignment for a pass mux: data levels plus binary select config.
pub fn mux_assignment<F: Real>(
    select_bits: u8,
    select_index: usize,
    input_levels: &[Level],
    vmap: &VoltageMap<F>,
) -> Result<Vec<(String, F)>, PrimitiveError> {
    let leaves = 1usize << select_bits;
    if input_levels.len() != leaves {
        return Err(PrimitiveError::MuxInputs {
            expected: leaves,
            got: input_levels.len(),
        });
    }
    if select_index >= leaves {
        return Err(PrimitiveError::SelectRange {
            index: select_index,
            inputs: leaves,
        });
    }
    let mut assign = Vec::with_capacity(leaves + select_bits as usize);
    for (i, &lvl) in input_levels.iter().enumerate() {
        assign.push((format!("IN{i}"), vmap.voltage_of(lvl)?));
    }
    for b in 0..select_bits {
        let bit = (select_index >> b) & 1;
        let v = if bit == 1 { vmap.vdd() } else { F::zero() };
        assign.push((format!("CFG{b}"), v));
    }
    Ok(assign)
}

/// Selected-input level seen at the mux output.
pub fn mux_transfer<F: Real>(
    select_bits: u8,
    select_index: usize,
    input_levels: &[Level],
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let nl = build_primitive(PrimitiveKind::PassMuxTree { select_bits }, vmap, cfg)?;
    mux_response(&nl, select_bits, select_index, input_levels, vmap, cfg)
}

fn mux_response<F: Real>(
    nl: &Netlist<F>,
    select_bits: u8,
    select_index: usize,
    input_levels: &[Level],
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let assign = mux_assignment(select_bits, select_index, input_levels, vmap)?;
    let pairs: Vec<(&str, F)> = assign.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let ss = solve_steady_state(nl, &pairs, &cfg.solver_options())?;
    clean_level(nl, &ss, "OUT", vmap)
}

/// Level to complemented bit pair `(s1, s0)`, via the solver.
pub fn translate_4_to_2<F: Real>(
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<(u8, u8), PrimitiveError> {
    let nl = build_primitive(PrimitiveKind::Translator4to2, vmap, cfg)?;
    translator_4to2_response(&nl, level, vmap, cfg)
}

fn translator_4to2_response<F: Real>(
    nl: &Netlist<F>,
    level: Level,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<(u8, u8), PrimitiveError> {
    let vin = vmap.voltage_of(level)?;
    let ss = solve_steady_state(nl, &[("IN", vin)], &cfg.solver_options())?;
    let s1 = clean_level(nl, &ss, "S1", vmap)?;
    let s0 = clean_level(nl, &ss, "S0", vmap)?;
    let as_bit = |l: Level| if l == 3 { 1u8 } else { 0u8 };
    Ok((as_bit(s1), as_bit(s0)))
}

/// Complemented bit pair back to a level; errors if more than one rail
/// path conducts.
pub fn translate_2_to_4<F: Real>(
    s1: u8,
    s0: u8,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let nl = build_primitive(PrimitiveKind::Translator2to4, vmap, cfg)?;
    translator_2to4_response(&nl, s1, s0, vmap, cfg)
}

fn translator_2to4_response<F: Real>(
    nl: &Netlist<F>,
    s1: u8,
    s0: u8,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<Level, PrimitiveError> {
    let bit = |b: u8| if b != 0 { vmap.vdd() } else { F::zero() };
    let ss = solve_steady_state(
        nl,
        &[("S1", bit(s1)), ("S0", bit(s0))],
        &cfg.solver_options(),
    )?;
    // one-hot check: exactly one series pair may conduct
    let pairs = [("NA0", "NA1"), ("NB0", "NB1"), ("NC0", "NC1"), ("PA0", "PA1")];
    let active = pairs
        .iter()
        .filter(|(a, b)| ss.state(a) == Some(ON) && ss.state(b) == Some(ON))
        .count();
    if active != 1 {
        return Err(PrimitiveError::DirtyOutput {
            primitive: nl.name().to_string(),
            node: "OUT".into(),
            detail: format!("{active} rail paths active, expected exactly 1"),
        });
    }
    clean_level(nl, &ss, "OUT", vmap)
}

/// Runs the full exhaustive stimulus set for one primitive netlist,
/// returning false on any wrong level, dirty output or solve failure.
fn primitive_ok<F: Real>(
    kind: PrimitiveKind,
    nl: &Netlist<F>,
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> bool {
    let result = (|| -> Result<bool, PrimitiveError> {
        match kind {
            PrimitiveKind::Dlc0 | PrimitiveKind::Dlc1 | PrimitiveKind::Dlc2 => {
                let which = match kind {
                    PrimitiveKind::Dlc0 => 0usize,
                    PrimitiveKind::Dlc1 => 1,
                    _ => 2,
                };
                for level in 0..4u8 {
                    let got = level_response(nl, level, vmap, cfg)?;
                    if got != DLC_TRUTH_TABLE[level as usize][which] {
                        return Ok(false);
                    }
                }
            }
            PrimitiveKind::QuaternaryRepeater => {
                for level in 0..4u8 {
                    if level_response(nl, level, vmap, cfg)? != level {
                        return Ok(false);
                    }
                }
            }
            PrimitiveKind::PassMuxTree { select_bits } => {
                let leaves = 1usize << select_bits;
                for index in 0..leaves {
                    for level in 0..4u8 {
                        let mut levels = vec![3 - level; leaves];
                        levels[index] = level;
                        if mux_response(nl, select_bits, index, &levels, vmap, cfg)? != level {
                            return Ok(false);
                        }
                    }
                }
            }
            PrimitiveKind::Translator4to2 => {
                for &(level, s1, s0) in &TRANSLATOR_4TO2_TABLE {
                    if translator_4to2_response(nl, level, vmap, cfg)? != (s1, s0) {
                        return Ok(false);
                    }
                }
            }
            PrimitiveKind::Translator2to4 => {
                for &(level, s1, s0) in &TRANSLATOR_4TO2_TABLE {
                    if translator_2to4_response(nl, s1, s0, vmap, cfg)? != level {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })();
    result.unwrap_or(false)
}

/// Largest back-bias perturbation (as a +/- fraction of every nominal
/// Vbb, both signs applied) for which the primitive still passes its
/// exhaustive level checks. Scans the ascending grid and stops at the
/// first failure, so the result is the passing prefix; returns 0 when the
/// smallest tested fraction already fails.
pub fn vbb_functional_window<F: Real>(
    kind: PrimitiveKind,
    grid: &[f64],
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<f64, PrimitiveError> {
    let base = build_primitive(kind, vmap, cfg)?;
    let mut fractions: Vec<f64> = grid.to_vec();
    fractions.sort_by(|a, b| a.partial_cmp(b).expect("finite fractions"));
    fractions.dedup();
    let mut window = 0.0;
    for &f in &fractions {
        let up = base.with_scaled_vbb(F::of(1.0 + f));
        let down = base.with_scaled_vbb(F::of(1.0 - f));
        if primitive_ok(kind, &up, vmap, cfg) && primitive_ok(kind, &down, vmap, cfg) {
            window = f;
        } else {
            break;
        }
    }
    Ok(window)
}

/// One verification suite's tally.
#[derive(Debug, Clone, Serialize)]
pub struct VerifySuite {
    pub name: String,
    pub passed: u32,
    pub total: u32,
    pub failures: Vec<String>,
}

impl VerifySuite {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(describe());
        }
    }

    fn new(name: &str) -> Self {
        VerifySuite {
            name: name.to_string(),
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }
}

/// Results of all truth-table suites.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<VerifySuite>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed == s.total)
    }

    pub fn suite(&self, name: &str) -> Option<&VerifySuite> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Exercises every primitive against its truth table through the solver:
/// 12 DLC entries, 48 repeater device states plus the 4 identity
/// transfers, 4 translator rows plus the exhaustive round trip, and the
/// boosted mux passing every level on every input.
pub fn verify_primitives<F: Real>(
    vmap: &VoltageMap<F>,
    cfg: &PrimitiveConfig<F>,
) -> Result<VerifyReport, PrimitiveError> {
    let mut suites = Vec::new();

    let mut dlc = VerifySuite::new("dlc-truth-table");
    for which in 0..3u8 {
        for level in 0..4u8 {
            let got = dlc_transfer(which, level, vmap, cfg)?;
            let want = DLC_TRUTH_TABLE[level as usize][which as usize];
            dlc.check(got == want, || {
                format!("dlc{which}({level}) = {got}, expected {want}")
            });
        }
    }
    suites.push(dlc);

    let mut identity = VerifySuite::new("repeater-identity");
    let mut states = VerifySuite::new("repeater-states");
    for level in 0..4u8 {
        let ss = repeater_steady_state(level, vmap, cfg)?;
        let nl_out = {
            let v = ss.voltage("OUT");
            v.and_then(|v| vmap.level_of(v, vmap.decode_tol()))
        };
        identity.check(
            ss.is_clean() && nl_out == Some(level),
            || format!("repeater({level}) = {nl_out:?}"),
        );
        for (col, dev) in REPEATER_DEVICE_ORDER.iter().enumerate() {
            let got = ss.state(dev);
            let want = REPEATER_STATE_TABLE[level as usize][col];
            states.check(got == Some(want), || {
                format!("IN={level}: {dev} is {got:?}, expected {want}")
            });
        }
    }
    suites.push(identity);
    suites.push(states);

    let mut rows = VerifySuite::new("translator-4to2-rows");
    let mut round = VerifySuite::new("translator-round-trip");
    for &(level, s1, s0) in &TRANSLATOR_4TO2_TABLE {
        let got = translate_4_to_2(level, vmap, cfg)?;
        rows.check(got == (s1, s0), || {
            format!("4to2({level}) = {got:?}, expected ({s1}, {s0})")
        });
        let back = translate_2_to_4(got.0, got.1, vmap, cfg)?;
        round.check(back == level, || {
            format!("2to4(4to2({level})) = {back}, expected {level}")
        });
    }
    suites.push(rows);
    suites.push(round);

    let mut mux = VerifySuite::new("mux-boosted-pass");
    let bits = 3u8;
    let leaves = 1usize << bits;
    for index in 0..leaves {
        for level in 0..4u8 {
            let mut levels = vec![3 - level; leaves];
            levels[index] = level;
            let got = mux_transfer(bits, index, &levels, vmap, cfg)?;
            mux.check(got == level, || {
                format!("mux8[{index}]({level}) = {got}, expected {level}")
            });
        }
    }
    suites.push(mux);

    Ok(VerifyReport { suites })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn setup() -> (VoltageMap<f64>, PrimitiveConfig<f64>) {
        let vmap = VoltageMap::standard(Radix::QUATERNARY);
        let cfg = PrimitiveConfig::standard(&vmap);
        (vmap, cfg)
    }

    #[test]
    fn dlc_truth_table_is_reproduced() {
        let (vmap, cfg) = setup();
        for which in 0..3u8 {
            for level in 0..4u8 {
                assert_eq!(
                    dlc_transfer(which, level, &vmap, &cfg).unwrap(),
                    DLC_TRUTH_TABLE[level as usize][which as usize],
                    "dlc{which}({level})"
                );
            }
        }
    }

    #[test]
    fn dlc_netlists_are_single_inverters() {
        let (vmap, cfg) = setup();
        let nl = build_primitive(PrimitiveKind::Dlc1, &vmap, &cfg).unwrap();
        assert_eq!(nl.transistors().len(), 2);
    }

    #[test]
    fn repeater_has_the_canonical_twelve_devices() {
        let (vmap, cfg) = setup();
        let nl = build_primitive(PrimitiveKind::QuaternaryRepeater, &vmap, &cfg).unwrap();
        assert_eq!(nl.transistors().len(), 12);
        for dev in REPEATER_DEVICE_ORDER {
            assert!(nl.transistor(dev).is_some(), "missing {dev}");
        }
    }

    #[test]
    fn repeater_is_an_identity_buffer() {
        let (vmap, cfg) = setup();
        for level in 0..4u8 {
            assert_eq!(repeater_transfer(level, &vmap, &cfg).unwrap(), level);
        }
    }

    #[test]
    fn repeater_internal_nets_follow_the_split_design() {
        let (vmap, cfg) = setup();
        // input level 1: SELECT high, low branch regenerates 0.3 onto V10
        let ss = repeater_steady_state(1, &vmap, &cfg).unwrap();
        assert_relative_eq!(ss.voltage("SELECT").unwrap(), 0.9);
        assert_relative_eq!(ss.voltage("V10").unwrap(), 0.3);
        assert_relative_eq!(ss.voltage("V32").unwrap(), 0.6);
        assert_eq!(ss.state("N1"), Some(SwitchState::On));
        assert_eq!(ss.state("P1"), Some(SwitchState::Off));
        assert_eq!(ss.state("P2"), Some(SwitchState::On));
        assert_eq!(ss.state("N2"), Some(SwitchState::Off));
        // input level 0: N5 passes, P5 blocks
        let ss0 = repeater_steady_state(0, &vmap, &cfg).unwrap();
        assert_eq!(ss0.state("N5"), Some(SwitchState::On));
        assert_eq!(ss0.state("P5"), Some(SwitchState::Off));
    }

    #[test]
    fn repeater_states_match_table_for_all_levels() {
        let (vmap, cfg) = setup();
        for level in 0..4u8 {
            let ss = repeater_steady_state(level, &vmap, &cfg).unwrap();
            for (col, dev) in REPEATER_DEVICE_ORDER.iter().enumerate() {
                assert_eq!(
                    ss.state(dev).unwrap(),
                    REPEATER_STATE_TABLE[level as usize][col],
                    "IN={level} device {dev}"
                );
            }
        }
    }

    #[test]
    fn mux_counts_match_the_block_formulas() {
        let (vmap, cfg) = setup();
        let nl = build_primitive(PrimitiveKind::PassMuxTree { select_bits: 3 }, &vmap, &cfg)
            .unwrap();
        let pass = nl
            .transistors()
            .iter()
            .filter(|t| t.id.starts_with("MP"))
            .count();
        assert_eq!(pass, 14); // 2^(N+1) - 2
        assert_eq!(nl.transistors().len(), 26); // 4N select drivers + tree
        assert!(build_primitive(PrimitiveKind::PassMuxTree { select_bits: 5 }, &vmap, &cfg).is_err());
    }

    #[test]
    fn mux_passes_all_levels_undegraded() {
        let (vmap, cfg) = setup();
        for bits in 1..=3u8 {
            let leaves = 1usize << bits;
            for index in 0..leaves {
                for level in 0..4u8 {
                    let mut levels = vec![3 - level; leaves];
                    levels[index] = level;
                    assert_eq!(
                        mux_transfer(bits, index, &levels, &vmap, &cfg).unwrap(),
                        level,
                        "bits={bits} index={index} level={level}"
                    );
                }
            }
        }
    }

    #[test]
    fn translator_rows_and_round_trip() {
        let (vmap, cfg) = setup();
        let nl42 = build_primitive(PrimitiveKind::Translator4to2, &vmap, &cfg).unwrap();
        let nl24 = build_primitive(PrimitiveKind::Translator2to4, &vmap, &cfg).unwrap();
        assert_eq!(nl42.transistors().len(), 16);
        assert_eq!(nl24.transistors().len(), 12);
        for &(level, s1, s0) in &TRANSLATOR_4TO2_TABLE {
            assert_eq!(translate_4_to_2(level, &vmap, &cfg).unwrap(), (s1, s0));
            assert_eq!(translate_2_to_4(s1, s0, &vmap, &cfg).unwrap(), level);
        }
        // bijection over all four bit pairs
        for s1 in 0..2u8 {
            for s0 in 0..2u8 {
                let level = translate_2_to_4(s1, s0, &vmap, &cfg).unwrap();
                assert_eq!(translate_4_to_2(level, &vmap, &cfg).unwrap(), (s1, s0));
            }
        }
    }

    #[test]
    fn nominal_bias_passes_and_window_covers_ten_percent() {
        let (vmap, cfg) = setup();
        let grid = [0.0, 0.05, 0.10, 0.15, 0.20, 0.30, 0.50];
        for kind in PrimitiveKind::all_default() {
            let w = vbb_functional_window(kind, &grid, &vmap, &cfg).unwrap();
            assert!(w >= 0.10, "{} window {w}", kind.name());
        }
    }

    #[test]
    fn window_prefix_is_monotone_on_the_grid() {
        let (vmap, cfg) = setup();
        // per-fraction pass/fail for the repeater should be a prefix of passes
        let kind = PrimitiveKind::QuaternaryRepeater;
        let base = build_primitive(kind, &vmap, &cfg).unwrap();
        let grid = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0];
        let results: Vec<bool> = grid
            .iter()
            .map(|&f| {
                let up = base.with_scaled_vbb(1.0 + f);
                let down = base.with_scaled_vbb(1.0 - f);
                super::primitive_ok(kind, &up, &vmap, &cfg)
                    && super::primitive_ok(kind, &down, &vmap, &cfg)
            })
            .collect();
        let first_fail = results.iter().position(|ok| !ok).unwrap_or(results.len());
        assert!(results[..first_fail].iter().all(|&ok| ok));
        assert!(results[first_fail..].iter().all(|&ok| !ok));
    }

    #[test]
    fn verify_report_counts() {
        let (vmap, cfg) = setup();
        let report = verify_primitives(&vmap, &cfg).unwrap();
        assert!(report.all_passed(), "{report:?}");
        let totals: Vec<(String, u32)> = report
            .suites
            .iter()
            .map(|s| (s.name.clone(), s.total))
            .collect();
        assert_eq!(
            totals,
            vec![
                ("dlc-truth-table".to_string(), 12),
                ("repeater-identity".to_string(), 4),
                ("repeater-states".to_string(), 48),
                ("translator-4to2-rows".to_string(), 4),
                ("translator-round-trip".to_string(), 4),
                ("mux-boosted-pass".to_string(), 32),
            ]
        );
    }

    #[test]
    fn rejects_non_quaternary_maps() {
        let vmap = VoltageMap::<f64>::standard(Radix::TERNARY);
        let cfg = PrimitiveConfig::standard(&vmap);
        assert!(matches!(
            build_primitive(PrimitiveKind::Dlc0, &vmap, &cfg),
            Err(PrimitiveError::WrongRadix(3))
        ));
    }
}
