//! Boolean functions on GF(2^m) as truth tables: trace-polynomial
//! construction, Walsh transforms (naive and fast), algebraic degree,
//! bentness, duals and definitional hyper-bentness.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldSpec};

/// A Boolean function on GF(2^m), stored as a 2^m-entry table of bits
/// indexed by the integer encoding of the field element.
#[derive(Debug, Clone)]
pub struct TruthTable {
    field: Arc<FieldSpec>,
    bits: Vec<u8>,
}

impl PartialEq for TruthTable {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.bits == other.bits
    }
}
impl Eq for TruthTable {}

/// The 2^m signed integers W_f(ω) = Σ_x (-1)^(f(x) + Tr(ωx)), indexed by ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn get(&self, omega: FieldElement) -> i64 {
        self.values[omega.0 as usize]
    }

    /// Σ_ω W(ω)^2, which Parseval fixes at 2^(2m).
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Sorted (|W|, multiplicity) pairs.
    pub fn abs_multiset(&self) -> Vec<(u64, u32)> {
        let mut m = std::collections::BTreeMap::new();
        for v in &self.values {
            *m.entry(v.unsigned_abs()).or_insert(0u32) += 1;
        }
        m.into_iter().collect()
    }

    /// CSV rows `omega_hex,value`, one per point.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "omega_hex,value")?;
        for (omega, v) in self.values.iter().enumerate() {
            writeln!(w, "{:#X},{}", omega, v)?;
        }
        Ok(())
    }
}

impl TruthTable {
    pub fn from_bits(field: Arc<FieldSpec>, bits: Vec<u8>) -> Self {
        assert_eq!(bits.len(), field.size() as usize, "table length must be 2^m");
        debug_assert!(bits.iter().all(|&b| b <= 1));
        TruthTable { field, bits }
    }

    pub fn from_fn<F: FnMut(FieldElement) -> u8>(field: Arc<FieldSpec>, mut f: F) -> Self {
        let bits = (0..field.size() as u16).map(|x| f(FieldElement(x)) & 1).collect();
        TruthTable { field, bits }
    }

    pub fn zero(field: Arc<FieldSpec>) -> Self {
        let len = field.size() as usize;
        TruthTable { field, bits: vec![0; len] }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, x: FieldElement) -> u8 {
        self.bits[x.0 as usize]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.iter().map(|&b| u32::from(b)).sum()
    }

    /// Pointwise complement f + 1.
    pub fn complement(&self) -> TruthTable {
        TruthTable {
            field: self.field.clone(),
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
        }
    }

    /// Pointwise sum (XOR) of two functions over the same field.
    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable> {
        if !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(TruthTable {
            field: self.field.clone(),
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// The function x -> f(x^i), built through the discrete-log tables.
    pub fn compose_power(&self, i: u32) -> TruthTable {
        let f = &self.field;
        let order = f.order();
        let bits = (0..f.size() as u16)
            .map(|x| {
                if x == 0 {
                    self.bits[0]
                } else {
                    let k = u64::from(f.log(FieldElement(x)).unwrap()) * u64::from(i);
                    self.bits[f.exp((k % u64::from(order)) as u32).0 as usize]
                }
            })
            .collect();
        TruthTable { field: f.clone(), bits }
    }

    /// Fast Walsh transform: a 2^m-point Hadamard butterfly over the ±1
    /// table, then a reindexing of each ω through the Gram matrix of the
    /// polynomial basis (Tr(ωx) = <Gω, x> as bit vectors).
    pub fn walsh(&self) -> WalshSpectrum {
        let mut buf: Vec<i64> = self.bits.iter().map(|&b| 1 - 2 * i64::from(b)).collect();
        hadamard_in_place(&mut buf);
        let f = self.field.base();
        let values = (0..self.bits.len())
            .map(|w| buf[f.linear_coords(FieldElement(w as u16)) as usize])
            .collect();
        WalshSpectrum { values }
    }

    /// Definitional double-loop Walsh transform; the independent slow route.
    pub fn walsh_naive(&self) -> WalshSpectrum {
        let f = &self.field;
        let values = (0..self.bits.len() as u16)
            .map(|w| {
                let w = FieldElement(w);
                (0..self.bits.len() as u16)
                    .map(|x| {
                        let x = FieldElement(x);
                        let e = self.bits[x.0 as usize] ^ f.trace_bit(f.mul(w, x));
                        1 - 2 * i64::from(e)
                    })
                    .sum()
            })
            .collect();
        WalshSpectrum { values }
    }

    /// True iff every Walsh value is ±2^(m/2). The even-degree precondition
    /// is enforced by `FieldSpec` itself.
    pub fn is_bent(&self) -> bool {
        let target = i64::from(self.field.q());
        let mut buf: Vec<i64> = self.bits.iter().map(|&b| 1 - 2 * i64::from(b)).collect();
        hadamard_in_place(&mut buf);
        buf.iter().all(|v| v.abs() == target)
    }

    /// The dual bent function f̃ with (-1)^f̃(x) = W_f(x)/2^n.
    pub fn dual(&self) -> Result<TruthTable> {
        let q = i64::from(self.field.q());
        let spectrum = self.walsh();
        let mut bits = Vec::with_capacity(self.bits.len());
        for v in &spectrum.values {
            match *v {
                x if x == q => bits.push(0),
                x if x == -q => bits.push(1),
                _ => return Err(Error::NotBent),
            }
        }
        Ok(TruthTable { field: self.field.clone(), bits })
    }

    /// Algebraic degree of the ANF, computed by the Möbius transform over
    /// the 2^m hypercube. The zero function has degree 0.
    pub fn anf_degree(&self) -> u32 {
        let mut a = self.bits.clone();
        moebius_in_place(&mut a);
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(idx, _)| idx.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Definitional hyper-bentness: f(x^i) is bent for every i coprime to
    /// 2^m - 1. Only one representative per cyclotomic coset is checked,
    /// since replacing i by 2i composes with the Frobenius and just permutes
    /// the spectrum. Refused for m > 12; use the circle weight criterion on
    /// Dillon-like functions instead.
    pub fn is_hyper_bent(&self) -> Result<bool> {
        let m = self.field.m();
        if m > 12 {
            return Err(Error::DegreeTooLargeForHyperBent { m, max: 12 });
        }
        let order = self.field.order();
        for i in coprime_coset_reps(order) {
            if !self.compose_power(i).is_bent() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serializes as a header line `m=<int>` followed by 2^m characters
    /// '0'/'1' in index order.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "m={}", self.field.m())?;
        let line: String = self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        writeln!(w, "{line}")?;
        Ok(())
    }

    /// Reads the `m=<int>` + bit-line format; the table is attached to the
    /// supplied field, whose degree must match the header.
    pub fn read_from<R: BufRead>(field: Arc<FieldSpec>, r: R) -> Result<TruthTable> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty truth table file".into()))??;
        let m: u32 = header
            .strip_prefix("m=")
            .ok_or_else(|| Error::Format(format!("expected `m=<int>` header, got `{header}`")))?
            .trim()
            .parse()
            .map_err(|e| Error::Format(format!("bad m in header: {e}")))?;
        if m != field.m() {
            return Err(Error::Format(format!(
                "table is for m={m}, field has m={}",
                field.m()
            )));
        }
        let line = lines
            .next()
            .ok_or_else(|| Error::Format("missing bit line".into()))??;
        let line = line.trim();
        if line.len() != field.size() as usize {
            return Err(Error::Format(format!(
                "expected {} bits, got {}",
                field.size(),
                line.len()
            )));
        }
        let mut bits = Vec::with_capacity(line.len());
        for c in line.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => return Err(Error::Format(format!("bad bit character `{other}`"))),
            }
        }
        Ok(TruthTable { field, bits })
    }
}

/// In-place 2^k-point Hadamard butterfly.
pub fn hadamard_in_place(buf: &mut [i64]) {
    debug_assert!(buf.len().is_power_of_two());
    let n = buf.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(h * 2) {
            for j in block..block + h {
                let (a, b) = (buf[j], buf[j + h]);
                buf[j] = a + b;
                buf[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// In-place Möbius (binary zeta) transform over GF(2).
pub fn moebius_in_place(bits: &mut [u8]) {
    debug_assert!(bits.len().is_power_of_two());
    let n = bits.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(h * 2) {
            for j in block..block + h {
                bits[j + h] ^= bits[j];
            }
        }
        h *= 2;
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Size of the cyclotomic coset of j modulo `order`.
pub fn cyclotomic_coset_size(j: u32, order: u32) -> u32 {
    if j == 0 {
        return 1;
    }
    let mut c = (j * 2) % order;
    let mut size = 1;
    while c != j {
        c = (c * 2) % order;
        size += 1;
    }
    size
}

/// Minimal element of the cyclotomic coset of j modulo `order`.
pub fn cyclotomic_coset_min(j: u32, order: u32) -> u32 {
    let mut min = j % order;
    let mut c = (j * 2) % order;
    while c != j % order {
        min = min.min(c);
        c = (c * 2) % order;
    }
    min
}

/// Minimal representatives of the cyclotomic cosets consisting of exponents
/// coprime to `order`, in increasing order.
pub fn coprime_coset_reps(order: u32) -> Vec<u32> {
    let mut reps = Vec::new();
    let mut seen = vec![false; order as usize];
    for i in 1..order {
        if seen[i as usize] || gcd(i, order) != 1 {
            continue;
        }
        let mut c = i;
        loop {
            seen[c as usize] = true;
            c = (c * 2) % order;
            if c == i {
                break;
            }
        }
        reps.push(i);
    }
    reps
}

/// A Boolean function in its unique trace-polynomial form: terms
/// (j, a_j) with j a minimal cyclotomic-coset representative and a_j in
/// GF(2^o(j)), plus the ε(1 + x^(2^m-1)) part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePoly {
    pub terms: Vec<(u32, FieldElement)>,
    pub epsilon: u8,
}

impl TracePoly {
    pub fn new(terms: Vec<(u32, FieldElement)>, epsilon: u8) -> Self {
        TracePoly { terms, epsilon: epsilon & 1 }
    }
}

/// Evaluates a trace polynomial into a truth table:
/// bits[x] = Σ_j Tr_1^o(j)(a_j x^j) + ε(1 + x^(2^m-1)).
pub fn from_trace_poly(field: &Arc<FieldSpec>, p: &TracePoly) -> Result<TruthTable> {
    let order = field.order();
    let terms: Vec<(u32, FieldElement)> =
        p.terms.iter().map(|&(j, a)| (j % order, a)).collect();
    let mut seen = std::collections::HashSet::new();
    for &(j, a) in &terms {
        if cyclotomic_coset_min(j, order) != j {
            return Err(Error::NotCosetRepresentative { exponent: j });
        }
        if !seen.insert(j) {
            return Err(Error::DuplicateCoset { exponent: j });
        }
        let o = cyclotomic_coset_size(j, order);
        // a_j must satisfy a^(2^o) = a
        if field.pow(a, 1i64 << o) != a {
            return Err(Error::CoefficientOutsideCosetField { exponent: j });
        }
    }

    let mut bits = vec![0u8; field.size() as usize];
    for x in field.elements() {
        let mut acc = p.epsilon * u8::from(x.is_zero());
        for &(j, a) in &terms {
            if j == 0 {
                acc ^= a.0 as u8; // constant coset: a_0 in GF(2)
                continue;
            }
            let o = cyclotomic_coset_size(j, order);
            let y = field.mul(a, field.pow(x, i64::from(j)));
            // Tr_1^o(y) by power sum; y lies in GF(2^o)
            let mut t = y;
            let mut s = y;
            for _ in 1..o {
                s = field.mul(s, s);
                t = field.add(t, s);
            }
            debug_assert!(t.0 <= 1);
            acc ^= t.0 as u8;
        }
        bits[x.0 as usize] = acc & 1;
    }
    Ok(TruthTable { field: field.clone(), bits })
}

/// The rational trace block Tr_1^2n(a / (x^(q-1) + b)) under the 1/0 = 0
/// convention; b must be nonzero, a = 0 gives the zero function.
pub fn rational_block(field: &Arc<FieldSpec>, a: FieldElement, b: FieldElement) -> Result<TruthTable> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let q = field.q();
    let bits = (0..field.size() as u16)
        .map(|x| {
            let x = FieldElement(x);
            let lam = field.pow(x, i64::from(q) - 1);
            field.trace_bit(field.mul(a, field.inv(field.add(lam, b))))
        })
        .collect();
    Ok(TruthTable { field: field.clone(), bits })
}
