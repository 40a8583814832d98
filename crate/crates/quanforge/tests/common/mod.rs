//! Parameter grids and helpers shared by the integration suites.
//!
//! The random pieces are seeded, so every run exercises the same specs.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use quanforge::{
    emit::ulp_distance, BandList, Circuit, FourierSpec, GlueSpec, OracleSpec, ShiftSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GLUE_COUPLINGS: [f64; 4] = [0.0, 0.7, std::f64::consts::FRAC_PI_2, -1.3];
pub const ORACLE_COUPLINGS: [f64; 3] = [0.0, 0.7, -1.3];

/// nb = 1..=8.
pub fn fourier_specs() -> Vec<FourierSpec> {
    (1..=8).map(|nb| FourierSpec::new(nb).unwrap()).collect()
}

/// For nb = 1..=8: t in {-N+1, -3, -1, 0, 1, 3, N-1}, clipped into range.
pub fn shift_specs() -> Vec<ShiftSpec> {
    let mut specs = Vec::new();
    for nb in 1..=8usize {
        let n = 1i64 << nb;
        let mut seen = Vec::new();
        for t in [-n + 1, -3, -1, 0, 1, 3, n - 1] {
            let t = t.clamp(-n + 1, n - 1);
            if !seen.contains(&t) {
                seen.push(t);
                specs.push(ShiftSpec::new(nb, t).unwrap());
            }
        }
    }
    specs
}

/// nb = 1..=5 exhaustive over r1 < r2, nb = 6..=7 over 100 seeded random
/// pairs; each pair at every coupling in [`GLUE_COUPLINGS`].
pub fn glue_specs() -> Vec<GlueSpec> {
    let mut specs = Vec::new();
    let mut push_pair = |nb: usize, r1: u64, r2: u64| {
        for g in GLUE_COUPLINGS {
            specs.push(GlueSpec::new(nb, r1, r2, g).unwrap());
        }
    };
    for nb in 1..=5usize {
        let n = 1u64 << nb;
        for r1 in 0..n {
            for r2 in (r1 + 1)..n {
                push_pair(nb, r1, r2);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x67_6c_75_65);
    for nb in 6..=7usize {
        let n = 1u64 << nb;
        for _ in 0..100 {
            let r1 = rng.gen_range(0..n);
            let mut r2 = rng.gen_range(0..n - 1);
            if r2 >= r1 {
                r2 += 1;
            }
            push_pair(nb, r1, r2);
        }
    }
    specs
}

/// A random band list that satisfies every bands check for `nlvs` leaves.
pub fn random_band_list(rng: &mut ChaCha8Rng, nlvs: u64) -> BandList {
    let mut bands = Vec::new();
    let mut pos = 0i64;
    let last = nlvs as i64 - 1;
    while pos <= last {
        if rng.gen_bool(0.4) {
            let len = rng.gen_range(0..=(last - pos).min(5));
            bands.push((pos, pos + len));
            pos += len + 2;
        } else {
            pos += 1;
        }
    }
    BandList::new(bands)
}

/// For nb = 2..=7: the empty and full-range band lists plus 50 seeded
/// random valid ones, each at every coupling in [`ORACLE_COUPLINGS`].
pub fn oracle_specs() -> Vec<OracleSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f_72_61);
    let mut specs = Vec::new();
    for nb in 2..=7usize {
        let nlvs = 1u64 << (nb - 1);
        let mut lists = vec![
            BandList::default(),
            BandList::new(vec![(0, nlvs as i64 - 1)]),
        ];
        for _ in 0..50 {
            lists.push(random_band_list(&mut rng, nlvs));
        }
        for list in lists {
            for g in ORACLE_COUPLINGS {
                specs.push(OracleSpec::new(nb, list.clone(), g).unwrap());
            }
        }
    }
    specs
}

/// Structural equality with angles compared at `max_ulps` resolution.
pub fn circuits_match(a: &Circuit, b: &Circuit, max_ulps: u64) -> bool {
    if a.nb != b.nb || a.gates.len() != b.gates.len() {
        return false;
    }
    a.gates.iter().zip(&b.gates).all(|(x, y)| {
        x.kind == y.kind
            && x.targets == y.targets
            && x.controls == y.controls
            && match (x.angle, y.angle) {
                (None, None) => true,
                (Some(p), Some(q)) => ulp_distance(p, q) <= max_ulps,
                _ => false,
            }
    })
}
