//! Architecture-level resource accounting: transistor counts for the
//! routing blocks, tile totals for the binary bus-2 and quaternary
//! styles, and wire/layout area factors.
//!
//! Block sizes (transistors):
//! - mux with N binary selects: `4N` select drivers plus one pass tree of
//!   `2^(N+1) - 2` devices, doubled for a bus-2 pair;
//! - binary routing buffer 4 (a bus-2 pair is 8), quaternary repeater 12,
//!   4-to-2 translator 16, 2-to-4 translator 12.
//!
//! Mixed-flavor multi-rail cells pay a layout overhead factor (LOF) on
//! their area; the tile totals apply it to the quaternary-only blocks.

use serde::Serialize;

use crate::float::Real;
use crate::mvl::Radix;

/// Transistors in one binary routing buffer (half of a bus-2 pair).
pub const BINARY_BUFFER_T: u64 = 4;
/// Transistors buffering one bus-2 pair.
pub const BUS2_BUFFER_T: u64 = 2 * BINARY_BUFFER_T;
/// Transistors in the quaternary repeater.
pub const REPEATER_T: u64 = 12;
/// Transistors in the 4-to-2 translator.
pub const TRANSLATOR_4TO2_T: u64 = 16;
/// Transistors in the 2-to-4 translator.
pub const TRANSLATOR_2TO4_T: u64 = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArchError {
    #[error("invalid architecture parameter: {0}")]
    InvalidParameter(String),
}

/// Routing style being accounted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArchStyle {
    /// Two binary wires per logical signal, single-driver tracks.
    BinaryBus2,
    /// One quaternary wire per logical signal.
    Quaternary,
}

/// Transistor count of one routing mux with `n_select` binary select
/// inputs. The bus-2 style duplicates the pass tree for the wire pair.
pub fn mux_transistor_count(n_select: u32, style: ArchStyle) -> u64 {
    let n = u64::from(n_select);
    let tree = (1u64 << (n + 1)) - 2;
    match style {
        ArchStyle::BinaryBus2 => 4 * n + 2 * tree,
        ArchStyle::Quaternary => 4 * n + tree,
    }
}

/// FPGA tile parameters for the routing-resource tally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArchitectureSpec<F: Real> {
    pub luts_per_clb: u32,
    pub inputs_per_clb: u32,
    pub outputs_per_clb: u32,
    /// Routing tracks per channel (track pairs for bus-2).
    pub tracks_w: u32,
    /// Connection-box flexibility: fraction of tracks each input taps.
    pub fc_in: F,
    /// Layout overhead factor on mixed-flavor multi-rail cells.
    pub lof: F,
    pub style: ArchStyle,
}

impl<F: Real> ArchitectureSpec<F> {
    pub fn with_defaults(style: ArchStyle) -> Self {
        ArchitectureSpec {
            luts_per_clb: 4,
            inputs_per_clb: 16,
            outputs_per_clb: 4,
            tracks_w: 64,
            fc_in: F::of(0.25),
            lof: F::of(1.1),
            style,
        }
    }

    pub fn validate(&self) -> Result<(), ArchError> {
        if self.tracks_w == 0 || self.inputs_per_clb == 0 || self.outputs_per_clb == 0 {
            return Err(ArchError::InvalidParameter(
                "counts must be positive".into(),
            ));
        }
        if self.fc_in <= F::zero() || self.fc_in > F::one() {
            return Err(ArchError::InvalidParameter(format!(
                "fc_in must lie in (0, 1], got {}",
                self.fc_in
            )));
        }
        if self.lof < F::one() {
            return Err(ArchError::InvalidParameter(format!(
                "lof must be >= 1, got {}",
                self.lof
            )));
        }
        let taps = self.fc_in * F::of(f64::from(self.tracks_w));
        if (taps - taps.round()).abs() > F::of(1e-9) {
            return Err(ArchError::InvalidParameter(format!(
                "fc_in * tracks_w must be integral, got {taps}"
            )));
        }
        Ok(())
    }

    /// Tracks each CLB input can reach; sets the connection-box mux size.
    fn cb_mux_inputs(&self) -> Result<u32, ArchError> {
        self.validate()?;
        let taps = (self.fc_in * F::of(f64::from(self.tracks_w)))
            .round()
            .as_f64() as u32;
        if !taps.is_power_of_two() {
            return Err(ArchError::InvalidParameter(format!(
                "connection-box mux needs a power-of-two input count, got {taps}"
            )));
        }
        Ok(taps)
    }
}

/// One line of a resource report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceItem<F: Real> {
    pub name: String,
    pub unit_count: u64,
    pub transistors_each: u64,
    pub lof_applied: bool,
    pub subtotal: F,
}

/// Transistor tally for one tile's routing resources.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceReport<F: Real> {
    pub style: ArchStyle,
    pub items: Vec<ResourceItem<F>>,
    /// Exact total with LOF applied (fractional where LOF is).
    pub total_transistors: F,
    /// The total truncated to whole transistors, as usually printed.
    pub total_truncated: u64,
    /// Fractional saving versus the binary baseline; 0 for the baseline
    /// itself.
    pub reduction_vs_baseline: F,
}

fn push_item<F: Real>(
    items: &mut Vec<ResourceItem<F>>,
    name: &str,
    unit_count: u64,
    transistors_each: u64,
    lof: Option<F>,
) {
    let raw = F::of((unit_count * transistors_each) as f64);
    let subtotal = match lof {
        Some(f) => raw * f,
        None => raw,
    };
    items.push(ResourceItem {
        name: name.to_string(),
        unit_count,
        transistors_each,
        lof_applied: lof.is_some(),
        subtotal,
    });
}

/// Routing-resource transistor tally for one tile.
pub fn tile_resources<F: Real>(spec: &ArchitectureSpec<F>) -> Result<ResourceReport<F>, ArchError> {
    spec.validate()?;
    let w = u64::from(spec.tracks_w);
    let cb_inputs = spec.cb_mux_inputs()?;
    let cb_select = cb_inputs.trailing_zeros(); // log2 of a power of two
    let sb_select = 3; // 8:1 switch-point muxes on all four sides
    let mut items = Vec::new();
    match spec.style {
        ArchStyle::BinaryBus2 => {
            push_item(
                &mut items,
                "switchbox muxes (bus-2)",
                4 * w,
                mux_transistor_count(sb_select, ArchStyle::BinaryBus2),
                None,
            );
            push_item(
                &mut items,
                "routing buffers",
                u64::from(spec.inputs_per_clb) * w,
                BINARY_BUFFER_T,
                None,
            );
            push_item(
                &mut items,
                "connection-box muxes (bus-2)",
                u64::from(spec.inputs_per_clb),
                mux_transistor_count(cb_select, ArchStyle::BinaryBus2),
                None,
            );
        }
        ArchStyle::Quaternary => {
            push_item(
                &mut items,
                "switchbox muxes",
                4 * w,
                mux_transistor_count(sb_select, ArchStyle::Quaternary),
                None,
            );
            push_item(
                &mut items,
                "quaternary repeaters",
                8 * w,
                REPEATER_T,
                Some(spec.lof),
            );
            push_item(
                &mut items,
                "connection-box muxes",
                u64::from(spec.inputs_per_clb),
                mux_transistor_count(cb_select, ArchStyle::Quaternary),
                None,
            );
            push_item(
                &mut items,
                "4-to-2 translators",
                u64::from(spec.inputs_per_clb),
                TRANSLATOR_4TO2_T,
                Some(spec.lof),
            );
            push_item(
                &mut items,
                "2-to-4 translators",
                u64::from(spec.outputs_per_clb),
                TRANSLATOR_2TO4_T,
                Some(spec.lof),
            );
        }
    }
    let total: F = items.iter().map(|i| i.subtotal).sum();
    Ok(ResourceReport {
        style: spec.style,
        items,
        total_transistors: total,
        total_truncated: total.as_f64() as u64,
        reduction_vs_baseline: F::zero(),
    })
}

/// Tallies both styles with shared tile parameters and fills in the
/// quaternary reduction against the binary total.
pub fn compare_tiles<F: Real>(
    binary: &ArchitectureSpec<F>,
    quaternary: &ArchitectureSpec<F>,
) -> Result<(ResourceReport<F>, ResourceReport<F>), ArchError> {
    let b = tile_resources(binary)?;
    let mut q = tile_resources(quaternary)?;
    q.reduction_vs_baseline = (b.total_transistors - q.total_transistors) / b.total_transistors;
    Ok((b, q))
}

/// Plain-text table rendering of a report.
pub fn report_table<F: Real>(report: &ResourceReport<F>) -> String {
    let mut out = String::new();
    let style = match report.style {
        ArchStyle::BinaryBus2 => "binary bus-2",
        ArchStyle::Quaternary => "quaternary",
    };
    out.push_str(&format!("{style} routing resources\n"));
    out.push_str(&format!(
        "  {:<30} {:>8} {:>6} {:>5} {:>12}\n",
        "resource", "count", "each", "lof", "subtotal"
    ));
    for item in &report.items {
        out.push_str(&format!(
            "  {:<30} {:>8} {:>6} {:>5} {:>12.1}\n",
            item.name,
            item.unit_count,
            item.transistors_each,
            if item.lof_applied { "yes" } else { "-" },
            item.subtotal.as_f64(),
        ));
    }
    out.push_str(&format!(
        "  total: {:.1} transistors (printed as {})\n",
        report.total_transistors.as_f64(),
        report.total_truncated
    ));
    if report.reduction_vs_baseline != F::zero() {
        out.push_str(&format!(
            "  reduction vs binary bus-2 baseline: {:.2}%\n",
            report.reduction_vs_baseline.as_f64() * 100.0
        ));
    }
    out
}

/// Routing-wire area saved by carrying the same information on fewer
/// wires: 1/2 for quaternary (1 wire replaces 2), 1/3 for ternary
/// (2 wires replace 3), 0 for binary.
pub fn wire_area_reduction<F: Real>(radix: Radix) -> F {
    match radix {
        Radix::QUATERNARY => F::of(0.5),
        Radix::TERNARY => F::one() / F::of(3.0),
        _ => F::zero(),
    }
}

/// Metal-stack factors for the layout-level routing-area gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaFactors<F: Real> {
    /// Fraction of one routing layer consumed by the two extra supply
    /// rails of the quaternary cells.
    pub m2_supply_overhead: F,
    pub signal_layers: u32,
}

impl<F: Real> Default for AreaFactors<F> {
    fn default() -> Self {
        AreaFactors {
            m2_supply_overhead: F::of(0.15),
            signal_layers: 6,
        }
    }
}

/// Overall routing-area gain across the metal stack: every signal layer
/// gains the wire reduction, minus the supply overhead on the one layer
/// that carries the extra rails.
pub fn layout_adjusted_routing_gain<F: Real>(
    factors: &AreaFactors<F>,
    radix: Radix,
) -> Result<F, ArchError> {
    if factors.signal_layers == 0 {
        return Err(ArchError::InvalidParameter(
            "signal_layers must be >= 1".into(),
        ));
    }
    let reduction = wire_area_reduction::<F>(radix);
    let layers = F::of(f64::from(factors.signal_layers));
    let clean = (layers - F::one()) * reduction;
    let taxed = reduction - factors.m2_supply_overhead;
    Ok((clean + taxed) / layers)
}
