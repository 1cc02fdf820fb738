//! Invariants used to separate candidate bent functions across
//! extended-affine equivalence: algebraic degree, the absolute Walsh value
//! multiset, and a hyper-bentness profile over the coprime power classes.
//!
//! Degree and the Walsh multiset are invariant under every EA transform
//! f -> f∘A + L. The hyper profile is not: hyper-bentness rides on the
//! multiplicative (Desarguesian spread) structure, which general affine
//! maps destroy, so the profile is only stable under x -> cx^(2^j)
//! substitutions and constant addition. The profile is still a sharp
//! separator between function families presented in their natural form;
//! [`distinguish`] flags profile-only differences as not EA-conclusive.
//! This module separates, it never identifies: matching fingerprints say
//! nothing about equivalence.

use rand::Rng;

use crate::boolfun::{coprime_coset_reps, TruthTable};
use crate::error::{Error, Result};
use crate::gf2m::FieldElement;

/// Largest m for which the hyper profile is computed.
pub const HYPER_PROFILE_MAX_M: u32 = 12;

/// The separating invariants of one function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFingerprint {
    /// Algebraic degree of the ANF.
    pub degree: u32,
    /// Sorted (|W|, multiplicity) pairs of the Walsh spectrum.
    pub walsh_multiset: Vec<(u64, u32)>,
    /// Per coprime-exponent class i (ascending minimal representatives),
    /// whether x -> f(x^i) is bent; `None` (flagged) for m > 12.
    pub hyper_profile: Option<Vec<bool>>,
}

impl InvariantFingerprint {
    /// Single-line canonical form `degree|multiset|profile` for diffing;
    /// the profile renders as a hex-packed bit string, or `omitted`.
    pub fn canonical_string(&self) -> String {
        let multiset: Vec<String> = self
            .walsh_multiset
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect();
        let profile = match &self.hyper_profile {
            None => "omitted".to_string(),
            Some(bits) => {
                let mut packed = vec![0u8; bits.len().div_ceil(8)];
                for (i, &b) in bits.iter().enumerate() {
                    if b {
                        packed[i / 8] |= 1 << (i % 8);
                    }
                }
                let hex: String = packed.iter().map(|b| format!("{b:02x}")).collect();
                format!("{}/{hex}", bits.len())
            }
        };
        format!("deg={}|walsh={}|hyper={}", self.degree, multiset.join(","), profile)
    }
}

/// Assembles the three invariants; deterministic.
pub fn fingerprint(f: &TruthTable) -> InvariantFingerprint {
    let m = f.field().m();
    let hyper_profile = if m <= HYPER_PROFILE_MAX_M {
        let order = f.field().order();
        Some(
            coprime_coset_reps(order)
                .into_iter()
                .map(|i| f.compose_power(i).is_bent())
                .collect(),
        )
    } else {
        None
    };
    InvariantFingerprint {
        degree: f.anf_degree(),
        walsh_multiset: f.walsh().abs_multiset(),
        hyper_profile,
    }
}

/// Which fingerprint components differ between two functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishReport {
    pub degree: Option<(u32, u32)>,
    pub walsh_differs: bool,
    pub profile_differs: bool,
}

impl DistinguishReport {
    /// Separated by an EA-invariant component (degree or Walsh multiset):
    /// the functions are provably EA-inequivalent.
    pub fn ea_inequivalent(&self) -> bool {
        self.degree.is_some() || self.walsh_differs
    }

    /// No component differs.
    pub fn indistinguishable(&self) -> bool {
        self.degree.is_none() && !self.walsh_differs && !self.profile_differs
    }
}

impl std::fmt::Display for DistinguishReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.indistinguishable() {
            return write!(f, "indistinguishable by these invariants");
        }
        let mut parts = Vec::new();
        if let Some((d1, d2)) = self.degree {
            parts.push(format!("degree differs ({d1} vs {d2})"));
        }
        if self.walsh_differs {
            parts.push("walsh multiset differs".to_string());
        }
        if self.profile_differs {
            parts.push("hyper profile differs (not EA-conclusive)".to_string());
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Compares the fingerprints of two functions over the same field. A
/// difference in degree or Walsh multiset certifies EA-inequivalence;
/// "indistinguishable by these invariants" is an explicit outcome and
/// never a claim of equivalence.
pub fn distinguish(f: &TruthTable, g: &TruthTable) -> Result<DistinguishReport> {
    if !f.field().same_field(g.field()) {
        return Err(Error::FieldMismatch);
    }
    let pf = fingerprint(f);
    let pg = fingerprint(g);
    Ok(DistinguishReport {
        degree: (pf.degree != pg.degree).then_some((pf.degree, pg.degree)),
        walsh_differs: pf.walsh_multiset != pg.walsh_multiset,
        profile_differs: pf.hyper_profile != pg.hyper_profile,
    })
}

/// A random extended-affine transform f -> f(Mx + c) + <u, x> + e with M an
/// invertible GF(2) matrix; used by the invariance tests.
#[derive(Debug, Clone)]
pub struct AffineTransform {
    pub matrix: Vec<u16>,
    pub shift: u16,
    pub linear: u16,
    pub constant: u8,
}

impl AffineTransform {
    pub fn random(m: u32, rng: &mut impl Rng) -> Self {
        let matrix = loop {
            let rows: Vec<u16> = (0..m).map(|_| rng.random_range(1..1u32 << m) as u16).collect();
            if gf2_rank(&rows) == m {
                break rows;
            }
        };
        AffineTransform {
            matrix,
            shift: rng.random_range(0..1u32 << m) as u16,
            linear: rng.random_range(0..1u32 << m) as u16,
            constant: rng.random_range(0..2) as u8,
        }
    }

    pub fn apply(&self, f: &TruthTable) -> TruthTable {
        TruthTable::from_fn(f.field().clone(), |x| {
            let mut y = 0u16;
            for (i, &row) in self.matrix.iter().enumerate() {
                y |= (((row & x.0).count_ones() & 1) as u16) << i;
            }
            y ^= self.shift;
            f.get(FieldElement(y))
                ^ ((self.linear & x.0).count_ones() & 1) as u8
                ^ self.constant
        })
    }
}

fn gf2_rank(rows: &[u16]) -> u32 {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..16 {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank as u32
}
