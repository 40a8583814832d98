//! Dense-matrix verifier: analytic target unitaries for each operator
//! family, gate-by-gate circuit reconstruction, and entrywise comparison.
//!
//! Matrices are row-major with `(Uv)_p = Σ_q U[p][q] v_q`, so column `q` is
//! the image of basis state `|q⟩`. The targets are built from closed forms
//! only — every Hamiltonian here squares to a scalar on its support, so the
//! exponentials reduce to cos/sin blocks and the oracle side stays simpler
//! than the compilers it checks.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::circuit::{validate_gate, Circuit, CircuitError, Gate, GateKind};
use crate::compile::OracleSpec;

/// Largest qubit count the reconstruction will attempt by default.
pub const DEFAULT_QUBIT_CEILING: usize = 12;

/// Dense N×N complex matrix, N = 2^nb.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> UnitaryMatrix {
        let mut m = UnitaryMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        };
        for p in 0..dim {
            m.data[p * dim + p] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, p: usize, q: usize) -> Complex64 {
        self.data[p * self.dim + q]
    }

    fn set(&mut self, p: usize, q: usize, v: Complex64) {
        self.data[p * self.dim + q] = v;
    }

    fn row(&self, p: usize) -> &[Complex64] {
        &self.data[p * self.dim..(p + 1) * self.dim]
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = UnitaryMatrix {
            dim: n,
            data: vec![Complex64::ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a * rhs_row[j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> UnitaryMatrix {
        let n = self.dim;
        let mut out = UnitaryMatrix {
            dim: n,
            data: vec![Complex64::ZERO; n * n],
        };
        for p in 0..n {
            for q in 0..n {
                out.data[q * n + p] = self.data[p * n + q].conj();
            }
        }
        out
    }

    /// Max entrywise deviation of `U·U†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                let (ri, rj) = (self.row(i), self.row(j));
                for k in 0..n {
                    acc += ri[k] * rj[k].conj();
                }
                let expect = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }
}

/// Verifier failures.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    TooManyQubits { nb: usize, ceiling: usize },
    DimMismatch { a: usize, b: usize },
    Circuit(CircuitError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::TooManyQubits { nb, ceiling } => {
                write!(
                    f,
                    "TooManyQubits: {nb} qubits exceed the verifier ceiling of {ceiling}"
                )
            }
            VerifyError::DimMismatch { a, b } => {
                write!(f, "DimMismatch: comparing {a}x{a} against {b}x{b}")
            }
            VerifyError::Circuit(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<CircuitError> for VerifyError {
    fn from(e: CircuitError) -> Self {
        VerifyError::Circuit(e)
    }
}

/// Max over entries of `|a_pq - b_pq|` (complex modulus).
pub fn max_abs_diff(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64, VerifyError> {
    if a.dim != b.dim {
        return Err(VerifyError::DimMismatch { a: a.dim, b: b.dim });
    }
    let mut worst = 0.0f64;
    for (x, y) in a.data.iter().zip(&b.data) {
        worst = worst.max((x - y).norm());
    }
    Ok(worst)
}

fn control_masks(gate: &Gate) -> (u64, u64) {
    let mut must_one = 0u64;
    let mut must_zero = 0u64;
    for c in &gate.controls {
        if c.polarity {
            must_one |= 1 << c.qubit;
        } else {
            must_zero |= 1 << c.qubit;
        }
    }
    (must_one, must_zero)
}

fn single_qubit_matrix(kind: GateKind, angle: Option<f64>) -> [[Complex64; 2]; 2] {
    let re = Complex64::new;
    match kind {
        GateKind::Had => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            [[re(h, 0.0), re(h, 0.0)], [re(h, 0.0), re(-h, 0.0)]]
        }
        GateKind::Phas => {
            let t = angle.expect("validated gate");
            [
                [Complex64::ONE, Complex64::ZERO],
                [Complex64::ZERO, Complex64::from_polar(1.0, t)],
            ]
        }
        GateKind::Rotx => {
            let t = angle.expect("validated gate");
            let (s, c) = t.sin_cos();
            [[re(c, 0.0), re(0.0, s)], [re(0.0, s), re(c, 0.0)]]
        }
        GateKind::Rotz => {
            let t = angle.expect("validated gate");
            [
                [Complex64::from_polar(1.0, t), Complex64::ZERO],
                [Complex64::ZERO, Complex64::from_polar(1.0, -t)],
            ]
        }
        GateKind::Sigx => [
            [Complex64::ZERO, Complex64::ONE],
            [Complex64::ONE, Complex64::ZERO],
        ],
        GateKind::Swap => unreachable!("SWAP is not a single-qubit gate"),
    }
}

/// Left-multiply `u` by the gate's embedding; identical arithmetic to the
/// explicit `gate_unitary(g) · u` product, but O(N²) per gate.
fn apply_gate(u: &mut UnitaryMatrix, gate: &Gate) {
    let n = u.dim;
    let (must_one, must_zero) = control_masks(gate);
    let fires = |p: usize| {
        let p = p as u64;
        p & must_one == must_one && p & must_zero == 0
    };
    if gate.kind == GateKind::Swap {
        let bit_a = 1usize << gate.targets[0];
        let bit_b = 1usize << gate.targets[1];
        for p in 0..n {
            // Pick the representative with target-a set and target-b clear.
            if p & bit_a != 0 && p & bit_b == 0 && fires(p) {
                let q = p ^ bit_a ^ bit_b;
                for j in 0..n {
                    u.data.swap(p * n + j, q * n + j);
                }
            }
        }
        return;
    }
    let m = single_qubit_matrix(gate.kind, gate.angle);
    let bit = 1usize << gate.targets[0];
    for p0 in 0..n {
        if p0 & bit != 0 || !fires(p0) {
            continue;
        }
        let p1 = p0 | bit;
        let (lo, hi) = u.data.split_at_mut(p1 * n);
        let row0 = &mut lo[p0 * n..p0 * n + n];
        let row1 = &mut hi[..n];
        for j in 0..n {
            let a = row0[j];
            let b = row1[j];
            row0[j] = m[0][0] * a + m[0][1] * b;
            row1[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// The N×N embedding of one gate: basis states whose controls match get the
/// 2×2 (or SWAP) action on the target bit(s); all others are fixed.
pub fn gate_unitary(gate: &Gate, nb: usize) -> Result<UnitaryMatrix, VerifyError> {
    validate_gate(gate, nb, 0)?;
    if nb > DEFAULT_QUBIT_CEILING {
        return Err(VerifyError::TooManyQubits {
            nb,
            ceiling: DEFAULT_QUBIT_CEILING,
        });
    }
    let mut u = UnitaryMatrix::identity(1 << nb);
    apply_gate(&mut u, gate);
    Ok(u)
}

/// Reconstruct a circuit's unitary: the product
/// `gate_unitary(gates[L-1]) · … · gate_unitary(gates[0])`.
pub fn circuit_unitary(c: &Circuit) -> Result<UnitaryMatrix, VerifyError> {
    circuit_unitary_capped(c, DEFAULT_QUBIT_CEILING)
}

/// [`circuit_unitary`] with an explicit qubit ceiling.
pub fn circuit_unitary_capped(c: &Circuit, ceiling: usize) -> Result<UnitaryMatrix, VerifyError> {
    crate::circuit::validate_circuit(c)?;
    if c.nb > ceiling {
        return Err(VerifyError::TooManyQubits { nb: c.nb, ceiling });
    }
    let mut u = UnitaryMatrix::identity(1 << c.nb);
    for gate in &c.gates {
        apply_gate(&mut u, gate);
    }
    Ok(u)
}

fn assert_target_nb(nb: usize) {
    assert!(
        (1..=DEFAULT_QUBIT_CEILING).contains(&nb),
        "target builders support 1..={DEFAULT_QUBIT_CEILING} qubits, got {nb}"
    );
}

/// The DFT matrix `U_{p,q} = ω^{pq}/√N`, `ω = e^{i2π/N}`, `N = 2^nb`.
pub fn target_fourier(nb: usize) -> UnitaryMatrix {
    assert_target_nb(nb);
    let n = 1usize << nb;
    let scale = 1.0 / (n as f64).sqrt();
    let roots: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(scale, 2.0 * PI * m as f64 / n as f64))
        .collect();
    let mut u = UnitaryMatrix {
        dim: n,
        data: vec![Complex64::ZERO; n * n],
    };
    for p in 0..n {
        for q in 0..n {
            u.set(p, q, roots[(p * q) % n]);
        }
    }
    u
}

/// The cyclic permutation `|x⟩ → |(x + t) mod N⟩`: entry 1 at
/// (row `(x+t) mod N`, column `x`) for each `x`.
pub fn target_shift(nb: usize, t: i64) -> UnitaryMatrix {
    assert_target_nb(nb);
    let n = 1usize << nb;
    let mut u = UnitaryMatrix {
        dim: n,
        data: vec![Complex64::ZERO; n * n],
    };
    for x in 0..n {
        let row = (x as i64 + t).rem_euclid(n as i64) as usize;
        u.set(row, x, Complex64::ONE);
    }
    u
}

/// `exp(ig(|r1⟩⟨r2| + h.c.))`: identity except the 2×2 block
/// `[[cos g, i sin g], [i sin g, cos g]]` on rows/columns {r1, r2}.
pub fn target_glue(nb: usize, r1: u64, r2: u64, g: f64) -> UnitaryMatrix {
    assert_target_nb(nb);
    let n = 1usize << nb;
    assert!(
        r1 != r2 && (r1 as usize) < n && (r2 as usize) < n,
        "invalid glue rows"
    );
    let mut u = UnitaryMatrix::identity(n);
    let (s, c) = g.sin_cos();
    let (r1, r2) = (r1 as usize, r2 as usize);
    u.set(r1, r1, Complex64::new(c, 0.0));
    u.set(r2, r2, Complex64::new(c, 0.0));
    u.set(r1, r2, Complex64::new(0.0, s));
    u.set(r2, r1, Complex64::new(0.0, s));
    u
}

/// The banded-oracle evolution: for each leaf `k` with `x_k = 1`, the 2×2
/// cos/i·sin block on rows/columns {k, k + nlvs}; identity on the rest.
pub fn target_oracle(spec: &OracleSpec) -> UnitaryMatrix {
    let nb = spec.nb();
    assert_target_nb(nb);
    let nlvs = spec.nlvs() as usize;
    let mut u = UnitaryMatrix::identity(1 << nb);
    let (s, c) = spec.g().sin_cos();
    for (k, flag) in spec.bands().leaf_flags(spec.nlvs()).into_iter().enumerate() {
        if !flag {
            continue;
        }
        let hi = k + nlvs;
        u.set(k, k, Complex64::new(c, 0.0));
        u.set(hi, hi, Complex64::new(c, 0.0));
        u.set(k, hi, Complex64::new(0.0, s));
        u.set(hi, k, Complex64::new(0.0, s));
    }
    u
}
