//! Steady-state fixpoint solver.
//!
//! Semantics:
//! - a transistor is ON iff its gate overdrive beats the effective
//!   threshold (NMOS: `Vg - Vs > Vt`, PMOS: `Vs - Vg > Vt`);
//! - an ON device propagates its source voltage to its drain, degraded by
//!   the pass limit (NMOS caps at `Vg - Vt`, PMOS floors at `Vg + Vt`);
//! - rails and assigned inputs never move; everything else is recomputed
//!   from scratch each sweep until the voltage picture stops changing.
//!
//! Voltages only ever enter a node from a rail or input through a chain of
//! ON devices, so the sweep count is bounded by the netlist diameter; the
//! solver still caps it at `nodes * transistors` and reports failure to
//! settle instead of spinning.

use std::collections::BTreeMap;

use crate::device::{effective_vt, DeviceError, Polarity, DEFAULT_K_BB};
use crate::float::Real;

use super::netlist::{Netlist, NetlistError, NodeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SwitchState {
    On,
    Off,
}

impl std::fmt::Display for SwitchState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SwitchState::On => "ON",
            SwitchState::Off => "OFF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error("input node {0:?} has no assigned voltage")]
    MissingInput(String),
    #[error("assignment targets unknown node {0:?}")]
    UnknownAssignment(String),
    #[error("assignment targets {0:?}, which is not an input node")]
    NotAnInput(String),
    #[error("transistor {id}: {source}")]
    Device {
        id: String,
        #[source]
        source: DeviceError,
    },
    #[error("no steady state within {0} sweeps")]
    NoFixpoint(usize),
}

#[derive(Debug, Clone)]
pub struct SolverOptions<F: Real> {
    /// Two drivers of one node disagreeing by more than this flag
    /// contention (default 1 mV).
    pub contention_tol: F,
    /// Threshold sensitivity to back-bias.
    pub k_bb: F,
    /// Overrides the `nodes * transistors` sweep bound when set.
    pub max_sweeps: Option<usize>,
}

impl<F: Real> Default for SolverOptions<F> {
    fn default() -> Self {
        SolverOptions {
            contention_tol: F::of(1e-3),
            k_bb: F::of(DEFAULT_K_BB),
            max_sweeps: None,
        }
    }
}

/// Solved operating point of a netlist under one input assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState<F: Real> {
    /// Voltages of every node that traced to a rail or input. Undriven
    /// nodes are absent.
    pub node_voltages: BTreeMap<String, F>,
    pub transistor_states: BTreeMap<String, SwitchState>,
    /// Nodes driven toward two voltages further apart than the tolerance.
    pub contention: Vec<String>,
    /// Output nodes left with no driven path.
    pub floating: Vec<String>,
}

impl<F: Real> SteadyState<F> {
    pub fn voltage(&self, node: &str) -> Option<F> {
        self.node_voltages.get(node).copied()
    }

    pub fn state(&self, transistor_id: &str) -> Option<SwitchState> {
        self.transistor_states.get(transistor_id).copied()
    }

    pub fn is_clean(&self) -> bool {
        self.contention.is_empty() && self.floating.is_empty()
    }
}

struct DriveSummary<F> {
    first: F,
    min: F,
    max: F,
}

/// Solves the netlist to a steady state under `inputs` (node name ->
/// volts). Every input node must be assigned.
pub fn solve_steady_state<F: Real>(
    netlist: &Netlist<F>,
    inputs: &[(&str, F)],
    opts: &SolverOptions<F>,
) -> Result<SteadyState<F>, SolveError> {
    netlist.validate()?;

    let n = netlist.node_count();
    let mut fixed: Vec<Option<F>> = vec![None; n];
    for (id, _, kind) in netlist.nodes() {
        if let NodeKind::Rail(v) = kind {
            fixed[id.0] = Some(v);
        }
    }
    for &(name, volts) in inputs {
        let id = netlist
            .node_id(name)
            .map_err(|_| SolveError::UnknownAssignment(name.to_string()))?;
        match netlist.node_kind(id) {
            NodeKind::Input => fixed[id.0] = Some(volts),
            _ => return Err(SolveError::NotAnInput(name.to_string())),
        }
    }
    for (id, name, kind) in netlist.nodes() {
        if matches!(kind, NodeKind::Input) && fixed[id.0].is_none() {
            return Err(SolveError::MissingInput(name.to_string()));
        }
    }

    let transistors = netlist.transistors();
    let mut vt_eff = Vec::with_capacity(transistors.len());
    for t in transistors {
        let vt = effective_vt(&t.spec, opts.k_bb).map_err(|source| SolveError::Device {
            id: t.id.clone(),
            source,
        })?;
        vt_eff.push(vt);
    }

    let bound = opts
        .max_sweeps
        .unwrap_or_else(|| (n * transistors.len()).max(4));
    let mut voltages = fixed.clone();
    let mut contention: Vec<usize> = Vec::new();
    let mut settled = false;
    for _ in 0..bound {
        let states = eval_states(transistors, &vt_eff, &voltages);
        let mut next = fixed.clone();
        let mut drives: Vec<Option<DriveSummary<F>>> = (0..n).map(|_| None).collect();
        for (t, (&on, &vt)) in transistors.iter().zip(states.iter().zip(&vt_eff)) {
            if !on {
                continue;
            }
            let (vg, vs) = match (voltages[t.gate.0], voltages[t.source.0]) {
                (Some(g), Some(s)) => (g, s),
                _ => continue,
            };
            if fixed[t.drain.0].is_some() {
                continue; // rails and inputs hold their voltage
            }
            let cand = match t.polarity {
                Polarity::Nmos => vs.min(vg - vt),
                Polarity::Pmos => vs.max(vg + vt),
            };
            match &mut drives[t.drain.0] {
                Some(d) => {
                    d.min = d.min.min(cand);
                    d.max = d.max.max(cand);
                }
                slot => {
                    *slot = Some(DriveSummary {
                        first: cand,
                        min: cand,
                        max: cand,
                    })
                }
            }
        }
        contention.clear();
        for (i, drive) in drives.iter().enumerate() {
            if let Some(d) = drive {
                next[i] = Some(d.first);
                if d.max - d.min > opts.contention_tol {
                    contention.push(i);
                }
            }
        }
        if next == voltages {
            settled = true;
            break;
        }
        voltages = next;
    }
    if !settled {
        return Err(SolveError::NoFixpoint(bound));
    }

    let states = eval_states(transistors, &vt_eff, &voltages);
    let mut node_voltages = BTreeMap::new();
    let mut floating = Vec::new();
    for (id, name, kind) in netlist.nodes() {
        match voltages[id.0] {
            Some(v) => {
                node_voltages.insert(name.to_string(), v);
            }
            None => {
                if matches!(kind, NodeKind::Output) {
                    floating.push(name.to_string());
                }
            }
        }
    }
    let transistor_states = transistors
        .iter()
        .zip(&states)
        .map(|(t, &on)| {
            (
                t.id.clone(),
                if on { SwitchState::On } else { SwitchState::Off },
            )
        })
        .collect();
    Ok(SteadyState {
        node_voltages,
        transistor_states,
        contention: contention
            .iter()
            .map(|&i| netlist.node_name(super::netlist::NodeId(i)).to_string())
            .collect(),
        floating,
    })
}

fn eval_states<F: Real>(
    transistors: &[super::netlist::Transistor<F>],
    vt_eff: &[F],
    voltages: &[Option<F>],
) -> Vec<bool> {
    transistors
        .iter()
        .zip(vt_eff)
        .map(|(t, &vt)| {
            match (voltages[t.gate.0], voltages[t.source.0]) {
                (Some(vg), Some(vs)) => match t.polarity {
                    Polarity::Nmos => vg - vs > vt,
                    Polarity::Pmos => vs - vg > vt,
                },
                // a device whose gate or source is undriven cannot conduct
                _ => false,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{Flavor, TransistorSpec};
    use approx::assert_relative_eq;

    fn nmos(vt0: f64) -> TransistorSpec<f64> {
        TransistorSpec::new(Polarity::Nmos, Flavor::Rvt, vt0)
    }

    fn pmos(vt0: f64) -> TransistorSpec<f64> {
        TransistorSpec::new(Polarity::Pmos, Flavor::Rvt, vt0)
    }

    #[test]
    fn single_nmos_without_overdrive_floats_its_drain() {
        let mut nl = Netlist::new("t");
        nl.rail("GND", 0.0).unwrap();
        let gnd = nl.node_id("GND").unwrap();
        let gate = nl.input("G").unwrap();
        let out = nl.output("OUT").unwrap();
        nl.add_transistor("N1", Polarity::Nmos, gate, gnd, out, nmos(0.35))
            .unwrap();
        let ss = solve_steady_state(&nl, &[("G", 0.0)], &SolverOptions::default()).unwrap();
        assert_eq!(ss.state("N1"), Some(SwitchState::Off));
        assert_eq!(ss.floating, vec!["OUT".to_string()]);
        assert_eq!(ss.voltage("OUT"), None);
    }

    #[test]
    fn boosted_pass_nmos_carries_full_swing() {
        // gate at 1.1 V, Vt 0.2: pass limit 0.9, so a 0.9 V input arrives intact
        let mut nl = Netlist::new("t");
        let src = nl.input("A").unwrap();
        let gate = nl.input("G").unwrap();
        let out = nl.output("OUT").unwrap();
        nl.rail("GND", 0.0).unwrap();
        nl.add_transistor("N1", Polarity::Nmos, gate, src, out, nmos(0.2))
            .unwrap();
        let ss =
            solve_steady_state(&nl, &[("A", 0.9), ("G", 1.1)], &SolverOptions::default()).unwrap();
        assert_relative_eq!(ss.voltage("OUT").unwrap(), 0.9);
        // at a 0.9 V gate the same device degrades the level to Vg - Vt
        let ss =
            solve_steady_state(&nl, &[("A", 0.9), ("G", 0.9)], &SolverOptions::default()).unwrap();
        assert_relative_eq!(ss.voltage("OUT").unwrap(), 0.7);
    }

    #[test]
    fn inverter_solves_both_ways() {
        let mut nl = Netlist::new("inv");
        let vdd = nl.rail("VDD", 0.9).unwrap();
        let gnd = nl.rail("GND", 0.0).unwrap();
        let a = nl.input("A").unwrap();
        let y = nl.output("Y").unwrap();
        nl.add_transistor("P1", Polarity::Pmos, a, vdd, y, pmos(0.35))
            .unwrap();
        nl.add_transistor("N1", Polarity::Nmos, a, gnd, y, nmos(0.35))
            .unwrap();
        let hi = solve_steady_state(&nl, &[("A", 0.0)], &SolverOptions::default()).unwrap();
        assert_relative_eq!(hi.voltage("Y").unwrap(), 0.9);
        assert!(hi.is_clean());
        let lo = solve_steady_state(&nl, &[("A", 0.9)], &SolverOptions::default()).unwrap();
        assert_relative_eq!(lo.voltage("Y").unwrap(), 0.0);
    }

    #[test]
    fn conflicting_drivers_flag_contention() {
        let mut nl = Netlist::new("t");
        let hi = nl.rail("HI", 0.9).unwrap();
        let lo = nl.rail("LO", 0.3).unwrap();
        let gate = nl.input("G").unwrap();
        let out = nl.output("OUT").unwrap();
        nl.add_transistor("N1", Polarity::Nmos, gate, hi, out, nmos(0.2))
            .unwrap();
        nl.add_transistor("N2", Polarity::Nmos, gate, lo, out, nmos(0.2))
            .unwrap();
        let ss = solve_steady_state(&nl, &[("G", 2.0)], &SolverOptions::default()).unwrap();
        assert_eq!(ss.contention, vec!["OUT".to_string()]);
        // drivers agreeing within tolerance do not flag
        let mut nl2 = Netlist::new("t2");
        let a = nl2.rail("A", 0.9).unwrap();
        let b = nl2.rail("B", 0.9).unwrap();
        let g = nl2.input("G").unwrap();
        let o = nl2.output("OUT").unwrap();
        nl2.add_transistor("N1", Polarity::Nmos, g, a, o, nmos(0.2))
            .unwrap();
        nl2.add_transistor("N2", Polarity::Nmos, g, b, o, nmos(0.2))
            .unwrap();
        let ss2 = solve_steady_state(&nl2, &[("G", 2.0)], &SolverOptions::default()).unwrap();
        assert!(ss2.contention.is_empty());
    }

    #[test]
    fn missing_input_is_an_error() {
        let mut nl = Netlist::new("t");
        nl.rail("GND", 0.0).unwrap();
        nl.input("A").unwrap();
        let err = solve_steady_state(&nl, &[], &SolverOptions::default()).unwrap_err();
        assert_eq!(err, SolveError::MissingInput("A".into()));
    }

    #[test]
    fn identical_runs_are_identical() {
        let mut nl = Netlist::new("inv");
        let vdd = nl.rail("VDD", 0.9).unwrap();
        let gnd = nl.rail("GND", 0.0).unwrap();
        let a = nl.input("A").unwrap();
        let y = nl.output("Y").unwrap();
        nl.add_transistor("P1", Polarity::Pmos, a, vdd, y, pmos(0.35))
            .unwrap();
        nl.add_transistor("N1", Polarity::Nmos, a, gnd, y, nmos(0.35))
            .unwrap();
        let s1 = solve_steady_state(&nl, &[("A", 0.3)], &SolverOptions::default()).unwrap();
        let s2 = solve_steady_state(&nl, &[("A", 0.3)], &SolverOptions::default()).unwrap();
        assert_eq!(s1, s2);
    }
}
