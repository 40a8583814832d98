//! Elementary gates, circuits and structural operations on them.
//!
//! Conventions used throughout the crate:
//!
//! * Qubit 0 is least significant: basis state `|x⟩` has qubit `k` equal to
//!   bit `k` of `x`, so `x = Σ_k 2^k x_k`.
//! * Gates are stored in temporal order. `gates[0]` acts first on kets, so
//!   the circuit unitary is `U = G_{L-1} · … · G_1 · G_0`.
//! * Angles are radians in memory. The file formats serialize degrees (see
//!   [`crate::emit`]).

use std::fmt;

/// A control condition attached to a gate.
///
/// A true-polarity control fires when its qubit is `|1⟩`, a false-polarity
/// control when it is `|0⟩`. Carrying the polarity on the control avoids
/// wrapping X gates around gates that condition on 0-bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub polarity: bool,
}

impl Control {
    pub fn when_one(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: true,
        }
    }

    pub fn when_zero(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: false,
        }
    }

    /// Whether basis state `x` satisfies this control.
    pub fn matches(&self, x: u64) -> bool {
        ((x >> self.qubit) & 1 == 1) == self.polarity
    }
}

/// The elementary gate kinds.
///
/// Single-qubit action on the target, conditioned on all controls matching:
///
/// ```text
/// HAD      (1/√2) [[1, 1], [1, -1]]
/// PHAS(θ)  diag(1, e^{iθ})                  (= e^{iθn}, n the number operator)
/// ROTX(θ)  exp(iθσ_x) = [[cos θ, i sin θ], [i sin θ, cos θ]]
/// ROTZ(θ)  exp(iθσ_z) = diag(e^{iθ}, e^{-iθ})
/// SIGX     σ_x
/// SWAP     exchanges its two targets
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Had,
    Phas,
    Rotx,
    Rotz,
    Sigx,
    Swap,
}

impl GateKind {
    /// All kinds, in the fixed order used by gate counts and the Log file.
    pub const ALL: [GateKind; 6] = [
        GateKind::Had,
        GateKind::Phas,
        GateKind::Rotx,
        GateKind::Rotz,
        GateKind::Sigx,
        GateKind::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Had => "HAD",
            GateKind::Phas => "PHAS",
            GateKind::Rotx => "ROTX",
            GateKind::Rotz => "ROTZ",
            GateKind::Sigx => "SIGX",
            GateKind::Swap => "SWAP",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    /// PHAS, ROTX and ROTZ carry an angle; the other kinds must not.
    pub fn takes_angle(self) -> bool {
        matches!(self, GateKind::Phas | GateKind::Rotx | GateKind::Rotz)
    }

    /// One target qubit, except SWAP which has two.
    pub fn target_count(self) -> usize {
        if self == GateKind::Swap {
            2
        } else {
            1
        }
    }

    fn index(self) -> usize {
        GateKind::ALL.iter().position(|&k| k == self).unwrap()
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One elementary operation.
///
/// Constructors canonicalize the representation: SWAP targets are stored
/// larger-first and controls in decreasing qubit order, matching the English
/// file grammar so that emit/parse round-trips are structural identities.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    /// One target qubit, or two for SWAP.
    pub targets: Vec<usize>,
    /// Rotation angle in radians; present exactly for PHAS, ROTX, ROTZ.
    pub angle: Option<f64>,
    /// Controls, in decreasing qubit order.
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn had(target: usize) -> Gate {
        Gate {
            kind: GateKind::Had,
            targets: vec![target],
            angle: None,
            controls: Vec::new(),
        }
    }

    pub fn phas(angle: f64, target: usize) -> Gate {
        Gate {
            kind: GateKind::Phas,
            targets: vec![target],
            angle: Some(angle),
            controls: Vec::new(),
        }
    }

    pub fn rotx(angle: f64, target: usize) -> Gate {
        Gate {
            kind: GateKind::Rotx,
            targets: vec![target],
            angle: Some(angle),
            controls: Vec::new(),
        }
    }

    pub fn rotz(angle: f64, target: usize) -> Gate {
        Gate {
            kind: GateKind::Rotz,
            targets: vec![target],
            angle: Some(angle),
            controls: Vec::new(),
        }
    }

    pub fn sigx(target: usize) -> Gate {
        Gate {
            kind: GateKind::Sigx,
            targets: vec![target],
            angle: None,
            controls: Vec::new(),
        }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate {
            kind: GateKind::Swap,
            targets: vec![a.max(b), a.min(b)],
            angle: None,
            controls: Vec::new(),
        }
    }

    /// Attach controls, stored in decreasing qubit order.
    pub fn with_controls(mut self, mut controls: Vec<Control>) -> Gate {
        controls.sort_by_key(|c| std::cmp::Reverse(c.qubit));
        self.controls = controls;
        self
    }

    /// All basis-state bits this gate touches or conditions on.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.qubit))
    }
}

/// A qubit count plus a temporally ordered gate list.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub nb: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(nb: usize, gates: Vec<Gate>) -> Circuit {
        Circuit { nb, gates }
    }
}

/// Structural defects reported by [`validate_circuit`], each naming the
/// offending gate position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitError {
    IndexOutOfRange {
        gate: usize,
        qubit: usize,
        nb: usize,
    },
    DuplicateQubit {
        gate: usize,
        qubit: usize,
    },
    MissingAngle {
        gate: usize,
        kind: GateKind,
    },
    SpuriousAngle {
        gate: usize,
        kind: GateKind,
    },
    WrongTargetCount {
        gate: usize,
        kind: GateKind,
        got: usize,
    },
}

impl fmt::Display for CircuitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitError::IndexOutOfRange { gate, qubit, nb } => {
                write!(
                    f,
                    "IndexOutOfRange: gate {gate} uses qubit {qubit}, circuit has {nb}"
                )
            }
            CircuitError::DuplicateQubit { gate, qubit } => {
                write!(
                    f,
                    "DuplicateQubit: gate {gate} uses qubit {qubit} more than once"
                )
            }
            CircuitError::MissingAngle { gate, kind } => {
                write!(f, "MissingAngle: gate {gate} ({kind}) has no angle")
            }
            CircuitError::SpuriousAngle { gate, kind } => {
                write!(f, "SpuriousAngle: gate {gate} ({kind}) carries an angle")
            }
            CircuitError::WrongTargetCount { gate, kind, got } => {
                write!(
                    f,
                    "WrongTargetCount: gate {gate} ({kind}) has {got} targets, expects {}",
                    kind.target_count()
                )
            }
        }
    }
}

impl std::error::Error for CircuitError {}

pub(crate) fn validate_gate(g: &Gate, nb: usize, pos: usize) -> Result<(), CircuitError> {
    if g.targets.len() != g.kind.target_count() {
        return Err(CircuitError::WrongTargetCount {
            gate: pos,
            kind: g.kind,
            got: g.targets.len(),
        });
    }
    for q in g.qubits() {
        if q >= nb {
            return Err(CircuitError::IndexOutOfRange {
                gate: pos,
                qubit: q,
                nb,
            });
        }
    }
    let mut seen: Vec<usize> = Vec::with_capacity(g.targets.len() + g.controls.len());
    for q in g.qubits() {
        if seen.contains(&q) {
            return Err(CircuitError::DuplicateQubit {
                gate: pos,
                qubit: q,
            });
        }
        seen.push(q);
    }
    match (g.kind.takes_angle(), g.angle) {
        (true, None) => Err(CircuitError::MissingAngle {
            gate: pos,
            kind: g.kind,
        }),
        (false, Some(_)) => Err(CircuitError::SpuriousAngle {
            gate: pos,
            kind: g.kind,
        }),
        _ => Ok(()),
    }
}

/// Check index bounds, control/target distinctness and angle presence for
/// every gate.
pub fn validate_circuit(c: &Circuit) -> Result<(), CircuitError> {
    for (pos, g) in c.gates.iter().enumerate() {
        validate_gate(g, c.nb, pos)?;
    }
    Ok(())
}

/// Circuit whose unitary is the conjugate transpose of `c`'s: gate order
/// reversed, PHAS/ROTX/ROTZ angles negated, everything else unchanged.
pub fn invert_circuit(c: &Circuit) -> Circuit {
    let gates = c
        .gates
        .iter()
        .rev()
        .map(|g| {
            let angle = if g.kind.takes_angle() {
                g.angle.map(|a| -a)
            } else {
                g.angle
            };
            Gate { angle, ..g.clone() }
        })
        .collect();
    Circuit { nb: c.nb, gates }
}

/// Gate multiset counts per kind, in the fixed [`GateKind::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    counts: [usize; 6],
}

impl GateCounts {
    pub fn get(&self, kind: GateKind) -> usize {
        self.counts[kind.index()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GateKind, usize)> + '_ {
        GateKind::ALL.iter().map(move |&k| (k, self.get(k)))
    }
}

/// Count gates per kind.
pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts::default();
    for g in &c.gates {
        counts.counts[g.kind.index()] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_circuit_is_valid() {
        let c = Circuit::new(1, vec![Gate::had(0)]);
        assert_eq!(validate_circuit(&c), Ok(()));
    }

    #[test]
    fn control_equal_to_target_is_duplicate() {
        let c = Circuit::new(
            1,
            vec![Gate::sigx(0).with_controls(vec![Control::when_one(0)])],
        );
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::DuplicateQubit { gate: 0, qubit: 0 })
        );
    }

    #[test]
    fn phas_without_angle_is_rejected() {
        let mut g = Gate::phas(0.0, 1);
        g.angle = None;
        let c = Circuit::new(2, vec![Gate::had(0), g]);
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::MissingAngle {
                gate: 1,
                kind: GateKind::Phas
            })
        );
    }

    #[test]
    fn had_with_angle_is_rejected() {
        let mut g = Gate::had(0);
        g.angle = Some(1.0);
        let c = Circuit::new(1, vec![g]);
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::SpuriousAngle {
                gate: 0,
                kind: GateKind::Had
            })
        );
    }

    #[test]
    fn out_of_range_indices_are_rejected() {
        let c = Circuit::new(2, vec![Gate::had(2)]);
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::IndexOutOfRange {
                gate: 0,
                qubit: 2,
                nb: 2
            })
        );
        let c = Circuit::new(
            2,
            vec![Gate::sigx(0).with_controls(vec![Control::when_zero(5)])],
        );
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::IndexOutOfRange {
                gate: 0,
                qubit: 5,
                nb: 2
            })
        );
    }

    #[test]
    fn swap_needs_two_distinct_targets() {
        let c = Circuit::new(2, vec![Gate::swap(1, 1)]);
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::DuplicateQubit { gate: 0, qubit: 1 })
        );
        let bad = Gate {
            kind: GateKind::Swap,
            targets: vec![0],
            angle: None,
            controls: vec![],
        };
        let c = Circuit::new(2, vec![bad]);
        assert_eq!(
            validate_circuit(&c),
            Err(CircuitError::WrongTargetCount {
                gate: 0,
                kind: GateKind::Swap,
                got: 1
            })
        );
    }

    #[test]
    fn hadamard_inverts_to_itself() {
        let c = Circuit::new(1, vec![Gate::had(0)]);
        assert_eq!(invert_circuit(&c), c);
    }

    #[test]
    fn inversion_reverses_and_negates() {
        let c = Circuit::new(2, vec![Gate::phas(0.5, 0), Gate::sigx(1)]);
        let inv = invert_circuit(&c);
        assert_eq!(inv.gates, vec![Gate::sigx(1), Gate::phas(-0.5, 0)]);
    }

    #[test]
    fn inversion_is_an_involution() {
        let c = Circuit::new(
            3,
            vec![
                Gate::had(2),
                Gate::phas(0.25, 1).with_controls(vec![Control::when_one(0)]),
                Gate::rotx(-1.5, 0)
                    .with_controls(vec![Control::when_zero(2), Control::when_one(1)]),
                Gate::swap(0, 2),
                Gate::rotz(3.0, 1),
            ],
        );
        assert_eq!(invert_circuit(&invert_circuit(&c)), c);
    }

    #[test]
    fn empty_circuit_counts_are_zero() {
        let counts = gate_counts(&Circuit::new(3, vec![]));
        for (_, n) in counts.iter() {
            assert_eq!(n, 0);
        }
        assert_eq!(counts.total(), 0);
    }

    #[test]
    fn counts_match_gate_list() {
        let c = Circuit::new(
            3,
            vec![
                Gate::had(0),
                Gate::had(1),
                Gate::phas(1.0, 2),
                Gate::swap(0, 2),
            ],
        );
        let counts = gate_counts(&c);
        assert_eq!(counts.get(GateKind::Had), 2);
        assert_eq!(counts.get(GateKind::Phas), 1);
        assert_eq!(counts.get(GateKind::Swap), 1);
        assert_eq!(counts.get(GateKind::Rotx), 0);
        assert_eq!(counts.total(), c.gates.len());
    }

    #[test]
    fn controls_are_stored_in_decreasing_qubit_order() {
        let g = Gate::sigx(0).with_controls(vec![Control::when_zero(1), Control::when_one(2)]);
        assert_eq!(
            g.controls,
            vec![Control::when_one(2), Control::when_zero(1)]
        );
        let s = Gate::swap(0, 2);
        assert_eq!(s.targets, vec![2, 0]);
    }
}
