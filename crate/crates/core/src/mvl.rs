//! Multi-valued logic levels, their voltage encoding, and per-transition
//! switching energetics.
//!
//! A radix-R signal uses R evenly spaced voltage levels between 0 V and the
//! supply. Switching a capacitance C between levels a and b dissipates
//! `C * (V(b) - V(a))^2`, so the energy entries are exact rational multiples
//! of `C * vdd^2`; the tables here carry those rationals through and only
//! convert to floating point at the edges.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::float::Real;

/// A logic level, `0..R`.
pub type Level = u8;

/// Errors from level and radix handling.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MvlError {
    #[error("unsupported radix {0}: only 2, 3 and 4 are modeled")]
    UnsupportedRadix(u8),
    #[error("logic level {level} out of range for radix {radix}")]
    LevelOutOfRange { level: Level, radix: u8 },
}

/// Number of logic levels per wire. Only 2 (binary), 3 (ternary) and
/// 4 (quaternary) are meaningful for the circuits modeled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Radix(u8);

impl Radix {
    pub const BINARY: Radix = Radix(2);
    pub const TERNARY: Radix = Radix(3);
    pub const QUATERNARY: Radix = Radix(4);

    pub fn new(value: u8) -> Result<Self, MvlError> {
        match value {
            2..=4 => Ok(Radix(value)),
            other => Err(MvlError::UnsupportedRadix(other)),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// All levels, `0..R`.
    pub fn levels(self) -> impl Iterator<Item = Level> {
        0..self.0
    }

    /// Number of ordered transitions, including the R self-transitions.
    pub fn transition_count(self) -> usize {
        (self.0 as usize).pow(2)
    }

    pub fn check_level(self, level: Level) -> Result<(), MvlError> {
        if level < self.0 {
            Ok(())
        } else {
            Err(MvlError::LevelOutOfRange {
                level,
                radix: self.0,
            })
        }
    }
}

/// Voltage encoding of a radix-R signal: level k sits at `k * vdd / (R-1)`.
///
/// `vboost` is the raised gate rail used to drive pass transistors without
/// level degradation.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageMap<F: Real> {
    radix: Radix,
    vdd: F,
    vboost: F,
    levels: Vec<F>,
}

impl<F: Real> VoltageMap<F> {
    pub fn new(radix: Radix, vdd: F, vboost: F) -> Self {
        assert!(vdd > F::zero(), "vdd must be positive");
        let steps = F::of(f64::from(radix.value() - 1));
        let levels = radix
            .levels()
            .map(|k| F::of(f64::from(k)) * vdd / steps)
            .collect();
        VoltageMap {
            radix,
            vdd,
            vboost,
            levels,
        }
    }

    /// The default 0.9 V supply with a 1.1 V boosted gate rail.
    pub fn standard(radix: Radix) -> Self {
        VoltageMap::new(radix, F::of(0.9), F::of(1.1))
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn vdd(&self) -> F {
        self.vdd
    }

    pub fn vboost(&self) -> F {
        self.vboost
    }

    /// Spacing between adjacent levels, `vdd / (R-1)`.
    pub fn spacing(&self) -> F {
        self.vdd / F::of(f64::from(self.radix.value() - 1))
    }

    /// Voltage of a level.
    pub fn voltage_of(&self, level: Level) -> Result<F, MvlError> {
        self.radix.check_level(level)?;
        Ok(self.levels[level as usize])
    }

    /// Nearest level to `volts`, or `None` if the voltage is further than
    /// `tol` from every level.
    pub fn level_of(&self, volts: F, tol: F) -> Option<Level> {
        let mut best: Option<(Level, F)> = None;
        for (k, &v) in self.levels.iter().enumerate() {
            let d = (volts - v).abs();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((k as Level, d));
            }
        }
        best.and_then(|(k, d)| (d <= tol).then_some(k))
    }

    /// Decode tolerance used by the primitive checks: a quarter of the
    /// level spacing.
    pub fn decode_tol(&self) -> F {
        self.spacing() / F::of(4.0)
    }
}

/// Exact energy coefficient for one transition, in units of `C * vdd^2`:
/// `(b - a)^2 / (R - 1)^2`.
pub fn energy_coefficient(radix: Radix, from: Level, to: Level) -> Result<Ratio<i64>, MvlError> {
    radix.check_level(from)?;
    radix.check_level(to)?;
    let delta = i64::from(to) - i64::from(from);
    let steps = i64::from(radix.value()) - 1;
    Ok(Ratio::new(delta * delta, steps * steps))
}

/// Exact average over all R^2 ordered transitions, in units of `C * vdd^2`.
/// Evaluates to 1/2 (binary), 1/3 (ternary) and 5/18 (quaternary).
pub fn average_energy_coefficient(radix: Radix) -> Ratio<i64> {
    let mut sum = Ratio::new(0, 1);
    for a in radix.levels() {
        for b in radix.levels() {
            sum += energy_coefficient(radix, a, b).expect("levels in range");
        }
    }
    sum / Ratio::from_integer(radix.transition_count() as i64)
}

fn ratio_to_float<F: Real>(r: Ratio<i64>) -> F {
    F::of(*r.numer() as f64) / F::of(*r.denom() as f64)
}

/// Energy dissipated switching capacitance `cap` from one level to another.
pub fn transition_energy<F: Real>(
    from: Level,
    to: Level,
    cap: F,
    vmap: &VoltageMap<F>,
) -> Result<F, MvlError> {
    let coeff = energy_coefficient(vmap.radix(), from, to)?;
    Ok(ratio_to_float::<F>(coeff) * cap * vmap.vdd() * vmap.vdd())
}

/// Uniform average energy per transition for capacitance `cap`.
pub fn average_transition_energy<F: Real>(radix: Radix, cap: F, vmap: &VoltageMap<F>) -> F {
    ratio_to_float::<F>(average_energy_coefficient(radix)) * cap * vmap.vdd() * vmap.vdd()
}

/// Full R x R transition-energy matrix plus its uniform average.
#[derive(Debug, Clone)]
pub struct TransitionEnergyTable<F: Real> {
    radix: Radix,
    unit_cap: F,
    entries: Vec<Vec<F>>,
    average: F,
}

impl<F: Real> TransitionEnergyTable<F> {
    pub fn new(vmap: &VoltageMap<F>, unit_cap: F) -> Self {
        let radix = vmap.radix();
        let entries = radix
            .levels()
            .map(|a| {
                radix
                    .levels()
                    .map(|b| transition_energy(a, b, unit_cap, vmap).expect("levels in range"))
                    .collect()
            })
            .collect();
        TransitionEnergyTable {
            radix,
            unit_cap,
            entries,
            average: average_transition_energy(radix, unit_cap, vmap),
        }
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn unit_cap(&self) -> F {
        self.unit_cap
    }

    pub fn entry(&self, from: Level, to: Level) -> F {
        self.entries[from as usize][to as usize]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.entries
    }

    pub fn average(&self) -> F {
        self.average
    }
}

/// A level sequence together with its transition coverage counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestVector {
    radix: Radix,
    sequence: Vec<Level>,
    coverage: BTreeMap<(Level, Level), u32>,
}

impl TestVector {
    /// Wraps an arbitrary sequence, tallying its consecutive transitions.
    pub fn from_sequence(radix: Radix, sequence: Vec<Level>) -> Result<Self, MvlError> {
        for &l in &sequence {
            radix.check_level(l)?;
        }
        let mut coverage = BTreeMap::new();
        for pair in sequence.windows(2) {
            *coverage.entry((pair[0], pair[1])).or_insert(0) += 1;
        }
        Ok(TestVector {
            radix,
            sequence,
            coverage,
        })
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn sequence(&self) -> &[Level] {
        &self.sequence
    }

    pub fn coverage(&self) -> &BTreeMap<(Level, Level), u32> {
        &self.coverage
    }

    /// True when every ordered transition (self-transitions included)
    /// appears exactly once.
    pub fn is_transition_complete(&self) -> bool {
        self.coverage.len() == self.radix.transition_count()
            && self.coverage.values().all(|&c| c == 1)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (Level, Level)> + '_ {
        self.sequence.windows(2).map(|p| (p[0], p[1]))
    }
}

/// Builds a sequence of length R^2 + 1 in which every ordered level pair,
/// self-transitions included, occurs as a consecutive pair exactly once.
///
/// The complete digraph with self-loops over R nodes is connected and
/// balanced, so an Eulerian circuit always exists; a Hierholzer walk over
/// seed-shuffled edge orders makes the choice deterministic per seed.
pub fn transition_complete_sequence(radix: Radix, seed: u64) -> TestVector {
    let r = radix.value() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.random_range(0..r) as Level;
    let mut targets: Vec<Vec<Level>> = (0..r)
        .map(|_| {
            let mut t: Vec<Level> = radix.levels().collect();
            t.shuffle(&mut rng);
            t
        })
        .collect();
    // Hierholzer: walk unused edges, emitting nodes on backtrack.
    let mut next_edge = vec![0usize; r];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(r * r + 1);
    while let Some(&v) = stack.last() {
        let vi = v as usize;
        if next_edge[vi] < r {
            let w = targets[vi][next_edge[vi]];
            next_edge[vi] += 1;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    TestVector::from_sequence(radix, circuit).expect("levels in range by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn quaternary() -> VoltageMap<f64> {
        VoltageMap::standard(Radix::QUATERNARY)
    }

    #[test]
    fn radix_accepts_only_2_to_4() {
        assert!(Radix::new(2).is_ok());
        assert!(Radix::new(3).is_ok());
        assert!(Radix::new(4).is_ok());
        assert_eq!(Radix::new(5), Err(MvlError::UnsupportedRadix(5)));
        assert_eq!(Radix::new(1), Err(MvlError::UnsupportedRadix(1)));
    }

    #[test]
    fn voltage_ladder_matches_rail_values() {
        let vmap = quaternary();
        assert_relative_eq!(vmap.voltage_of(0).unwrap(), 0.0);
        assert_relative_eq!(vmap.voltage_of(1).unwrap(), 0.3);
        assert_relative_eq!(vmap.voltage_of(2).unwrap(), 0.6);
        assert_relative_eq!(vmap.voltage_of(3).unwrap(), 0.9);
        // ternary midpoint on the same uniform rule
        let t = VoltageMap::<f64>::standard(Radix::TERNARY);
        assert_relative_eq!(t.voltage_of(1).unwrap(), 0.45);
        assert!(vmap.voltage_of(4).is_err());
    }

    #[test]
    fn voltage_of_is_strictly_monotone() {
        for r in [Radix::BINARY, Radix::TERNARY, Radix::QUATERNARY] {
            let vmap = VoltageMap::<f64>::standard(r);
            let volts: Vec<f64> = r.levels().map(|k| vmap.voltage_of(k).unwrap()).collect();
            assert!(volts.windows(2).all(|w| w[1] > w[0]));
            assert_eq!(volts[0], 0.0);
            assert_relative_eq!(volts[volts.len() - 1], vmap.vdd());
        }
    }

    #[test]
    fn level_decode_rejects_mid_bin_voltages() {
        let vmap = quaternary();
        assert_eq!(vmap.level_of(0.61, vmap.decode_tol()), Some(2));
        assert_eq!(vmap.level_of(0.45, vmap.decode_tol()), None);
        assert_eq!(vmap.level_of(0.9, vmap.decode_tol()), Some(3));
    }

    #[test]
    fn transition_energy_table_values() {
        let unit = VoltageMap::new(Radix::QUATERNARY, 1.0, 1.1);
        assert_relative_eq!(
            transition_energy(0, 1, 1.0, &unit).unwrap(),
            1.0 / 9.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(transition_energy(0, 3, 1.0, &unit).unwrap(), 1.0);
        assert_eq!(transition_energy(2, 2, 123.0, &unit).unwrap(), 0.0);
        assert!(transition_energy(0, 4, 1.0, &unit).is_err());
    }

    #[test]
    fn averages_are_exact_rationals() {
        assert_eq!(
            average_energy_coefficient(Radix::QUATERNARY),
            Ratio::new(5, 18)
        );
        assert_eq!(average_energy_coefficient(Radix::TERNARY), Ratio::new(1, 3));
        assert_eq!(average_energy_coefficient(Radix::BINARY), Ratio::new(1, 2));
        let unit = VoltageMap::new(Radix::QUATERNARY, 1.0, 1.1);
        assert!((average_transition_energy(Radix::QUATERNARY, 1.0, &unit) - 40.0 / 144.0).abs() < 1e-15);
    }

    #[test]
    fn average_decreases_with_radix() {
        let avg = |r| average_energy_coefficient(r);
        assert!(avg(Radix::BINARY) > avg(Radix::TERNARY));
        assert!(avg(Radix::TERNARY) > avg(Radix::QUATERNARY));
    }

    #[test]
    fn table_is_symmetric_with_zero_diagonal() {
        for r in [Radix::BINARY, Radix::TERNARY, Radix::QUATERNARY] {
            let vmap = VoltageMap::<f64>::standard(r);
            let table = TransitionEnergyTable::new(&vmap, 1e-15);
            for a in r.levels() {
                assert_eq!(table.entry(a, a), 0.0);
                for b in r.levels() {
                    assert_eq!(table.entry(a, b), table.entry(b, a));
                }
            }
            // average equals the mean of the entries
            let sum: f64 = r
                .levels()
                .flat_map(|a| r.levels().map(move |b| (a, b)))
                .map(|(a, b)| table.entry(a, b))
                .sum();
            assert_relative_eq!(
                table.average(),
                sum / r.transition_count() as f64,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn binary_sequence_covers_all_four_transitions() {
        let v = transition_complete_sequence(Radix::BINARY, 7);
        assert_eq!(v.sequence().len(), 5);
        assert!(v.is_transition_complete());
    }

    #[test]
    fn quaternary_sequence_has_length_17() {
        let v = transition_complete_sequence(Radix::QUATERNARY, 1);
        assert_eq!(v.sequence().len(), 17);
        assert!(v.is_transition_complete());
    }

    #[test]
    fn same_seed_same_sequence() {
        for seed in [0, 1, 42, u64::MAX] {
            let a = transition_complete_sequence(Radix::QUATERNARY, seed);
            let b = transition_complete_sequence(Radix::QUATERNARY, seed);
            assert_eq!(a.sequence(), b.sequence());
        }
    }

    proptest! {
        #[test]
        fn any_seed_yields_exact_coverage(seed in any::<u64>(), r in 2u8..=4) {
            let radix = Radix::new(r).unwrap();
            let v = transition_complete_sequence(radix, seed);
            prop_assert_eq!(v.sequence().len(), radix.transition_count() + 1);
            prop_assert!(v.is_transition_complete());
            prop_assert_eq!(v.sequence().first(), v.sequence().last());
        }
    }
}
