//! Line-oriented text format for netlists.
//!
//! ```text
//! # comment
//! rail VDD3 0.9
//! input IN
//! output OUT
//! N0 nmos IN VDD0 SELECT rvt 0.35 -1.18
//! P5 pmos SELECT V32 OUT lvt 0.30 1.76 0.0 4.0
//! ```
//!
//! Transistor lines are `id polarity gate source drain flavor vt0 vbb`,
//! with two optional trailing fields `poly_bias_dvt width_mult` (assumed
//! `0` and `1` when absent, and only written when they differ). Node names
//! not declared as `rail`/`input`/`output` become internal nodes on first
//! use. Voltages print with Rust's shortest-roundtrip float formatting, so
//! export/import is lossless.

use std::fmt::Write as _;

use crate::device::{Flavor, Polarity, TransistorSpec};
use crate::float::Real;

use super::netlist::{Netlist, NetlistError, NodeKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Netlist {
        line: usize,
        #[source]
        source: NetlistError,
    },
}

fn parse_field<T: std::str::FromStr>(
    tok: &str,
    what: &str,
    line: usize,
) -> Result<T, FormatError> {
    tok.parse().map_err(|_| FormatError::Parse {
        line,
        msg: format!("cannot parse {what} from {tok:?}"),
    })
}

/// Parses the text format into a netlist named `name`.
pub fn parse_netlist<F: Real>(name: &str, text: &str) -> Result<Netlist<F>, FormatError> {
    let mut nl = Netlist::new(name);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let wrap = |source: NetlistError| FormatError::Netlist { line, source };
        match toks[0] {
            "rail" => {
                if toks.len() != 3 {
                    return Err(FormatError::Parse {
                        line,
                        msg: "expected `rail name volts`".into(),
                    });
                }
                let volts: f64 = parse_field(toks[2], "rail voltage", line)?;
                nl.rail(toks[1], F::of(volts)).map_err(wrap)?;
            }
            "input" | "output" => {
                if toks.len() != 2 {
                    return Err(FormatError::Parse {
                        line,
                        msg: format!("expected `{} name`", toks[0]),
                    });
                }
                if toks[0] == "input" {
                    nl.input(toks[1]).map_err(wrap)?;
                } else {
                    nl.output(toks[1]).map_err(wrap)?;
                }
            }
            id => {
                if !(8..=10).contains(&toks.len()) {
                    return Err(FormatError::Parse {
                        line,
                        msg: "expected `id polarity gate source drain flavor vt0 vbb [poly width]`"
                            .into(),
                    });
                }
                let polarity = match toks[1].to_ascii_lowercase().as_str() {
                    "nmos" => Polarity::Nmos,
                    "pmos" => Polarity::Pmos,
                    other => {
                        return Err(FormatError::Parse {
                            line,
                            msg: format!("unknown polarity {other:?}"),
                        })
                    }
                };
                let flavor = match toks[5].to_ascii_lowercase().as_str() {
                    "rvt" => Flavor::Rvt,
                    "lvt" => Flavor::Lvt,
                    other => {
                        return Err(FormatError::Parse {
                            line,
                            msg: format!("unknown flavor {other:?}"),
                        })
                    }
                };
                let vt0: f64 = parse_field(toks[6], "vt0", line)?;
                let vbb: f64 = parse_field(toks[7], "vbb", line)?;
                let poly: f64 = if toks.len() > 8 {
                    parse_field(toks[8], "poly_bias_dvt", line)?
                } else {
                    0.0
                };
                let width: f64 = if toks.len() > 9 {
                    parse_field(toks[9], "width_mult", line)?
                } else {
                    1.0
                };
                let gate = nl.node_or_internal(toks[2]);
                let source = nl.node_or_internal(toks[3]);
                let drain = nl.node_or_internal(toks[4]);
                let spec = TransistorSpec::new(polarity, flavor, F::of(vt0))
                    .with_vbb(F::of(vbb))
                    .with_poly_bias(F::of(poly))
                    .with_width(F::of(width));
                nl.add_transistor(id, polarity, gate, source, drain, spec)
                    .map_err(wrap)?;
            }
        }
    }
    Ok(nl)
}

/// Writes a netlist in the text format: rails, inputs and outputs first,
/// then one transistor per line in insertion order.
pub fn write_netlist<F: Real>(nl: &Netlist<F>) -> String {
    let mut out = String::new();
    for (_, name, kind) in nl.nodes() {
        match kind {
            NodeKind::Rail(v) => writeln!(out, "rail {name} {v}").unwrap(),
            NodeKind::Input => writeln!(out, "input {name}").unwrap(),
            NodeKind::Output => writeln!(out, "output {name}").unwrap(),
            NodeKind::Internal => {}
        }
    }
    for t in nl.transistors() {
        let polarity = match t.polarity {
            Polarity::Nmos => "nmos",
            Polarity::Pmos => "pmos",
        };
        let flavor = match t.spec.flavor {
            Flavor::Rvt => "rvt",
            Flavor::Lvt => "lvt",
        };
        write!(
            out,
            "{} {} {} {} {} {} {} {}",
            t.id,
            polarity,
            nl.node_name(t.gate),
            nl.node_name(t.source),
            nl.node_name(t.drain),
            flavor,
            t.spec.vt0,
            t.spec.vbb
        )
        .unwrap();
        if t.spec.poly_bias_dvt != F::zero() || t.spec.width_mult != F::one() {
            write!(out, " {} {}", t.spec.poly_bias_dvt, t.spec.width_mult).unwrap();
        }
        out.push('\n');
    }
    out
}
