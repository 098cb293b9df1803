//! Switch-level simulation of small transistor netlists with multiple
//! supply rails and engineered thresholds.
//!
//! Transistors are abstracted to voltage-controlled switches with pass
//! degradation; there is no timing, charge sharing or drive-strength
//! resolution. That is enough to verify the steady-state truth tables of
//! the multi-valued routing primitives, which is all this solver is for.

mod format;
mod netlist;
mod primitives;
mod solver;

pub use format::{parse_netlist, write_netlist, FormatError};
pub use netlist::{Netlist, NetlistError, NodeId, NodeKind, Transistor};
pub use primitives::{
    build_primitive, dlc_transfer, mux_assignment, mux_transfer, repeater_transfer,
    translate_2_to_4, translate_4_to_2, vbb_functional_window, verify_primitives, PrimitiveConfig,
    PrimitiveError, PrimitiveKind, VerifyReport, VerifySuite, DLC_TRUTH_TABLE,
    REPEATER_STATE_TABLE, TRANSLATOR_4TO2_TABLE,
};
pub use solver::{solve_steady_state, SolveError, SolverOptions, SteadyState, SwitchState};
