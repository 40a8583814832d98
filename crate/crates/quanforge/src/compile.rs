//! The four exact compilers — Fourier, state shift, glue, banded oracle —
//! plus the combinatorial routines they rest on: band validation, dyadic
//! interval covers and the XOR alignment ladder.
//!
//! Each compiler turns a validated input spec into a circuit whose unitary
//! equals the corresponding analytic target in [`crate::verify`] entrywise,
//! with no global-phase slack.

use std::f64::consts::PI;
use std::fmt;

use crate::circuit::invert_circuit;
use crate::circuit::{Circuit, Control, Gate};

/// Largest supported qubit count for the compilers; keeps all basis-state
/// index arithmetic inside u64.
pub const MAX_NBITS: usize = 63;

/// Invalid compiler inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecError {
    NbitsOutOfRange { nb: usize, min: usize, max: usize },
    ShiftOutOfRange { t: i64, ns: u64 },
    RowOutOfRange { row: u64, ns: u64 },
    EqualRows { row: u64 },
    NonFiniteCoupling { g: f64 },
    Band(BandError),
    InvalidInterval { a: u64, b: u64, nlvs: u64 },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::NbitsOutOfRange { nb, min, max } => {
                write!(f, "InvalidSpec: nbits {nb} outside {min}..={max}")
            }
            SpecError::ShiftOutOfRange { t, ns } => {
                write!(f, "InvalidSpec: shift {t} must satisfy -{ns} < t < {ns}")
            }
            SpecError::RowOutOfRange { row, ns } => {
                write!(f, "InvalidSpec: row {row} must lie in 0..{ns}")
            }
            SpecError::EqualRows { row } => {
                write!(
                    f,
                    "EqualRows: the two glued states must differ (both {row})"
                )
            }
            SpecError::NonFiniteCoupling { g } => {
                write!(f, "InvalidSpec: coupling constant {g} is not finite")
            }
            SpecError::Band(e) => e.fmt(f),
            SpecError::InvalidInterval { a, b, nlvs } => {
                write!(f, "InvalidInterval: [{a},{b}] is not inside [0,{})", nlvs)
            }
        }
    }
}

impl std::error::Error for SpecError {}

impl From<BandError> for SpecError {
    fn from(e: BandError) -> Self {
        SpecError::Band(e)
    }
}

fn check_nbits(nb: usize, min: usize) -> Result<(), SpecError> {
    if nb < min || nb > MAX_NBITS {
        return Err(SpecError::NbitsOutOfRange {
            nb,
            min,
            max: MAX_NBITS,
        });
    }
    Ok(())
}

fn check_coupling(g: f64) -> Result<(), SpecError> {
    if !g.is_finite() {
        return Err(SpecError::NonFiniteCoupling { g });
    }
    Ok(())
}

/// Input for the Fourier compiler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourierSpec {
    nb: usize,
}

impl FourierSpec {
    pub fn new(nb: usize) -> Result<FourierSpec, SpecError> {
        check_nbits(nb, 1)?;
        Ok(FourierSpec { nb })
    }

    pub fn nb(&self) -> usize {
        self.nb
    }
}

/// Input for the state-shift compiler: `|x⟩ → |(x + t) mod 2^nb⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftSpec {
    nb: usize,
    t: i64,
}

impl ShiftSpec {
    /// The shift must satisfy `-2^nb < t < 2^nb`.
    pub fn new(nb: usize, t: i64) -> Result<ShiftSpec, SpecError> {
        check_nbits(nb, 1)?;
        let ns = 1u64 << nb;
        if t.unsigned_abs() >= ns {
            return Err(SpecError::ShiftOutOfRange { t, ns });
        }
        Ok(ShiftSpec { nb, t })
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn t(&self) -> i64 {
        self.t
    }
}

/// Input for the glue compiler: couples the two basis states `r1` and `r2`
/// with strength `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlueSpec {
    nb: usize,
    r1: u64,
    r2: u64,
    g: f64,
}

impl GlueSpec {
    pub fn new(nb: usize, r1: u64, r2: u64, g: f64) -> Result<GlueSpec, SpecError> {
        check_nbits(nb, 1)?;
        check_coupling(g)?;
        let ns = 1u64 << nb;
        for row in [r1, r2] {
            if row >= ns {
                return Err(SpecError::RowOutOfRange { row, ns });
            }
        }
        if r1 == r2 {
            return Err(SpecError::EqualRows { row: r1 });
        }
        Ok(GlueSpec { nb, r1, r2, g })
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn r1(&self) -> u64 {
        self.r1
    }

    pub fn r2(&self) -> u64 {
        self.r2
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// Ordered inclusive integer intervals `[a_k, b_k]` of leaf indices.
///
/// `x_k = 1` exactly when leaf `k` lies in some band. The list itself is an
/// unvalidated container; [`validate_bands`] checks it against a leaf count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BandList {
    bands: Vec<(i64, i64)>,
}

impl BandList {
    pub fn new(bands: Vec<(i64, i64)>) -> BandList {
        BandList { bands }
    }

    pub fn bands(&self) -> &[(i64, i64)] {
        &self.bands
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// The leaf inputs `x_0..x_{nlvs-1}` this band list encodes.
    ///
    /// Only meaningful after [`validate_bands`] has passed.
    pub fn leaf_flags(&self, nlvs: u64) -> Vec<bool> {
        let mut flags = vec![false; nlvs as usize];
        for &(a, b) in &self.bands {
            for k in a..=b {
                if 0 <= k && (k as u64) < nlvs {
                    flags[k as usize] = true;
                }
            }
        }
        flags
    }
}

/// Band-list defects, in the order the checks run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandError {
    NegativeStart { a: i64 },
    EndBeyondLeaves { b: i64, nlvs: u64 },
    ReversedBand { index: usize, a: i64, b: i64 },
    MergeableBands { index: usize },
    OverlappingBands { index: usize },
}

impl fmt::Display for BandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandError::NegativeStart { a } => {
                write!(f, "NegativeStart: first band starts at {a}")
            }
            BandError::EndBeyondLeaves { b, nlvs } => {
                write!(
                    f,
                    "EndBeyondLeaves: last band ends at {b}, leaves stop at {}",
                    nlvs - 1
                )
            }
            BandError::ReversedBand { index, a, b } => {
                write!(f, "ReversedBand: band {index} is [{a},{b}] with b < a")
            }
            BandError::MergeableBands { index } => {
                write!(
                    f,
                    "MergeableBands: bands {index} and {} can be merged (gap 1)",
                    index + 1
                )
            }
            BandError::OverlappingBands { index } => {
                write!(
                    f,
                    "OverlappingBands: bands {index} and {} overlap",
                    index + 1
                )
            }
        }
    }
}

impl std::error::Error for BandError {}

/// Check a band list against a leaf count:
/// `0 ≤ a_1`, `b_n ≤ nlvs-1`, `b_k - a_k ≥ 0` for all k, and
/// `a_{k+1} - b_k ≥ 2` (a gap of 1 means the bands can be merged, a gap
/// ≤ 0 means they overlap).
pub fn validate_bands(bands: &BandList, nlvs: u64) -> Result<(), BandError> {
    let list = bands.bands();
    if let Some(&(a, _)) = list.first() {
        if a < 0 {
            return Err(BandError::NegativeStart { a });
        }
    }
    if let Some(&(_, b)) = list.last() {
        if b > nlvs as i64 - 1 {
            return Err(BandError::EndBeyondLeaves { b, nlvs });
        }
    }
    for (index, &(a, b)) in list.iter().enumerate() {
        if b - a < 0 {
            return Err(BandError::ReversedBand { index, a, b });
        }
    }
    for (index, pair) in list.windows(2).enumerate() {
        let gap = pair[1].0 - pair[0].1;
        if gap == 1 {
            return Err(BandError::MergeableBands { index });
        }
        if gap <= 0 {
            return Err(BandError::OverlappingBands { index });
        }
    }
    Ok(())
}

/// Input for the banded-oracle compiler.
///
/// The circuit acts on `nb ≥ 2` qubits (`2^nb` tree states); the lower half
/// of the basis states are the `nlvs = 2^(nb-1)` leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpec {
    nb: usize,
    bands: BandList,
    g: f64,
}

impl OracleSpec {
    pub fn new(nb: usize, bands: BandList, g: f64) -> Result<OracleSpec, SpecError> {
        check_nbits(nb, 2)?;
        check_coupling(g)?;
        validate_bands(&bands, 1u64 << (nb - 1))?;
        Ok(OracleSpec { nb, bands, g })
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn nlvs(&self) -> u64 {
        1u64 << (self.nb - 1)
    }

    pub fn bands(&self) -> &BandList {
        &self.bands
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// An aligned power-of-two block `[base, base+size)` of leaf indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicBlock {
    pub base: u64,
    pub size: u64,
}

/// Minimal canonical cover of the inclusive interval `[a, b]` by disjoint
/// aligned power-of-two blocks, in ascending base order.
///
/// Greedy: at each step take the largest size `s` such that the current base
/// is a multiple of `s` and `base + s - 1 ≤ b`.
pub fn dyadic_cover(a: u64, b: u64, nlvs: u64) -> Result<Vec<DyadicBlock>, SpecError> {
    if a > b || b >= nlvs {
        return Err(SpecError::InvalidInterval { a, b, nlvs });
    }
    let mut blocks = Vec::new();
    let mut base = a;
    while base <= b {
        let span = b - base + 1;
        let fit = 1u64 << (63 - span.leading_zeros());
        let align = if base == 0 {
            fit
        } else {
            1u64 << base.trailing_zeros()
        };
        let size = fit.min(align);
        blocks.push(DyadicBlock { base, size });
        base += size;
    }
    Ok(blocks)
}

/// The CNOT ladder that aligns two basis states onto a single qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    /// Lowest bit where the two states differ.
    pub pivot: usize,
    /// One SIGX controlled true on the pivot per remaining differing bit,
    /// ascending by target qubit.
    pub ladder: Vec<Gate>,
    /// Control pattern selecting the aligned pair, decreasing qubit order.
    pub pattern: Vec<Control>,
}

/// Plan the conjugation that maps `{|r1⟩, |r2⟩}` to a pair of states
/// differing only in the pivot bit and agreeing with `pattern` elsewhere.
///
/// The ladder fires on pivot = 1, so it fixes whichever of the two states
/// has a clear pivot bit and moves the other next to it; the pattern
/// therefore reads the non-pivot bits of the pivot-clear state.
pub fn alignment_ladder(r1: u64, r2: u64, nb: usize) -> Result<Alignment, SpecError> {
    assert!((1..=MAX_NBITS).contains(&nb), "qubit count out of range");
    let ns = 1u64 << nb;
    assert!(r1 < ns && r2 < ns, "rows must lie in 0..2^nb");
    if r1 == r2 {
        return Err(SpecError::EqualRows { row: r1 });
    }
    let diff = r1 ^ r2;
    let pivot = diff.trailing_zeros() as usize;
    let ladder: Vec<Gate> = (0..nb)
        .filter(|&j| j != pivot && (diff >> j) & 1 == 1)
        .map(|j| Gate::sigx(j).with_controls(vec![Control::when_one(pivot)]))
        .collect();
    let rep = if (r1 >> pivot) & 1 == 0 { r1 } else { r2 };
    let pattern: Vec<Control> = (0..nb)
        .rev()
        .filter(|&q| q != pivot)
        .map(|q| Control {
            qubit: q,
            polarity: (rep >> q) & 1 == 1,
        })
        .collect();
    Ok(Alignment {
        pivot,
        ladder,
        pattern,
    })
}

/// Exact circuit for the `2^nb`-point discrete Fourier transform
/// `U_{p,q} = ω^{pq}/√N` with `ω = e^{i2π/N}`.
///
/// For j = nb-1 down to 0: HAD at j, then one PHAS(2π/2^(j-i+1)) at j
/// controlled true on each i < j; finally SWAP(k, nb-1-k) reverses the
/// qubit order. Gate count: nb + nb(nb-1)/2 + ⌊nb/2⌋.
pub fn compile_fourier(spec: &FourierSpec) -> Circuit {
    let nb = spec.nb();
    let mut gates = Vec::with_capacity(nb + nb * (nb - 1) / 2 + nb / 2);
    for j in (0..nb).rev() {
        gates.push(Gate::had(j));
        for i in 0..j {
            let angle = PI / (1u64 << (j - i)) as f64;
            gates.push(Gate::phas(angle, j).with_controls(vec![Control::when_one(i)]));
        }
    }
    for k in 0..nb / 2 {
        gates.push(Gate::swap(k, nb - 1 - k));
    }
    Circuit::new(nb, gates)
}

/// Exact circuit for the cyclic state shift `|x⟩ → |(x + t) mod 2^nb⟩`.
///
/// A shift is circulant, so it diagonalizes in the Fourier basis: the
/// circuit is the DFT, one PHAS(φ·2^k) on each qubit k with φ = 2πt/N, then
/// the inverse DFT. A negative shift compiles as the inverse of the
/// corresponding positive one.
pub fn compile_shift(spec: &ShiftSpec) -> Circuit {
    if spec.t() < 0 {
        let forward = ShiftSpec::new(spec.nb(), -spec.t()).expect("range is symmetric");
        return invert_circuit(&compile_shift(&forward));
    }
    let nb = spec.nb();
    let fourier = compile_fourier(&FourierSpec::new(nb).expect("nb already validated"));
    let ns = (1u64 << nb) as f64;
    let phi = 2.0 * PI * spec.t() as f64 / ns;
    let mut gates = fourier.gates.clone();
    for k in 0..nb {
        gates.push(Gate::phas(phi * (1u64 << k) as f64, k));
    }
    gates.extend(invert_circuit(&fourier).gates);
    Circuit::new(nb, gates)
}

/// Exact circuit for `exp(ig(|r1⟩⟨r2| + |r2⟩⟨r1|))`.
///
/// Conjugating by the alignment ladder reduces the coupling to a single
/// ROTX(g) on the pivot qubit, selected by the full (nb-1)-control pattern.
pub fn compile_glue(spec: &GlueSpec) -> Circuit {
    let plan = alignment_ladder(spec.r1(), spec.r2(), spec.nb()).expect("spec already validated");
    let mut gates = plan.ladder.clone();
    gates.push(Gate::rotx(spec.g(), plan.pivot).with_controls(plan.pattern));
    gates.extend(plan.ladder.into_iter().rev());
    Circuit::new(spec.nb(), gates)
}

/// Exact circuit for the banded oracle `exp(ig·σ_x(MSB)⊗X)` with
/// `X = diag(x_0..x_{nlvs-1})` over the leaf qubits.
///
/// Since σ_x = H σ_z H, the circuit conjugates by HAD on the top qubit and
/// applies one ROTZ(g) there per dyadic block, controlled on the leaf bits
/// that pin the block.
pub fn compile_oracle(spec: &OracleSpec) -> Circuit {
    let nb = spec.nb();
    let msb = nb - 1;
    let nlvs = spec.nlvs();
    let mut gates = vec![Gate::had(msb)];
    for &(a, b) in spec.bands().bands() {
        let cover = dyadic_cover(a as u64, b as u64, nlvs).expect("bands already validated");
        for block in cover {
            let low = block.size.trailing_zeros() as usize;
            let controls: Vec<Control> = (low..=nb - 2)
                .rev()
                .map(|q| Control {
                    qubit: q,
                    polarity: (block.base >> q) & 1 == 1,
                })
                .collect();
            gates.push(Gate::rotz(spec.g(), msb).with_controls(controls));
        }
    }
    gates.push(Gate::had(msb));
    Circuit::new(nb, gates)
}
