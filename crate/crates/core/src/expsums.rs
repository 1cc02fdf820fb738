//! Kloosterman sums and the closed-form exponential sums used by the
//! bentness criteria, each paired with a brute-force route, plus a
//! persistent Kloosterman table.
//!
//! All sums adopt the 1/0 = 0 convention, so the x = 0 term of K_n(a)
//! contributes +1.

use std::io::{BufRead, Write};

use crate::boolfun::hadamard_in_place;
use crate::error::{Error, Result};
use crate::gf2m::{BinaryField, FieldElement, FieldSpec};

/// Which route to evaluate a sum by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// The closed form in terms of Kloosterman sums.
    Closed,
    /// Direct summation.
    Brute,
}

/// Binary Kloosterman sum K_n(a) = Σ_{x in GF(2^n)} (-1)^Tr(1/x + ax),
/// defined for nonzero a.
pub fn kloosterman(field: &BinaryField, a: FieldElement) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    Ok(kloosterman_unchecked(field, a))
}

fn kloosterman_unchecked(field: &BinaryField, a: FieldElement) -> i64 {
    field
        .elements()
        .map(|x| {
            let e = field.trace_bit(field.add(field.inv(x), field.mul(a, x)));
            1 - 2 * i64::from(e)
        })
        .sum()
}

/// All K_n values at once, indexed by the element value (index 0 carries
/// K_n(0) = 0). Computed as the Walsh transform of x -> Tr(1/x).
pub fn kloosterman_all(field: &BinaryField) -> Vec<i64> {
    let mut buf: Vec<i64> = field
        .elements()
        .map(|x| 1 - 2 * i64::from(field.trace_bit(field.inv(x))))
        .collect();
    hadamard_in_place(&mut buf);
    field
        .elements()
        .map(|a| buf[field.linear_coords(a) as usize])
        .collect()
}

/// The restricted-trace variant Σ_{y : Tr(a/y) = 1} (-1)^Tr(y), which
/// equals -K_n(a)/2.
pub fn kloosterman_variant(field: &BinaryField, a: FieldElement) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    Ok(field
        .elements()
        .filter(|&y| field.trace_bit(field.mul(a, field.inv(y))) == 1)
        .map(|y| 1 - 2 * i64::from(field.trace_bit(y)))
        .sum())
}

/// Exponential sum of a rational function with linear numerator and
/// quadratic denominator: S = Σ_x (-1)^Tr((Ax + B)/(x² + x + δ)) over
/// GF(2^n), for A != 0 and B²/A² + B/A + δ != 0.
///
/// With C = (AB + A²δ)^(1/2) and K = K_n(B + C), the closed form is
///   Tr(δ) = 1:  (-1)^Tr(A) + (-1)^Tr((B+C)/A) - K·(-1)^Tr(A)
///   Tr(δ) = 0:  2 - (-1)^Tr(A) - (-1)^Tr((B+C)/A) + K·(-1)^Tr(A)
pub fn rational_quadratic_sum(
    field: &BinaryField,
    a: FieldElement,
    b: FieldElement,
    delta: FieldElement,
    mode: EvalMode,
) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("A"));
    }
    let ia = field.inv(a);
    let ba = field.mul(b, ia);
    let hyp = field.add(field.add(field.mul(ba, ba), ba), delta);
    if hyp.is_zero() {
        return Err(Error::HypothesisViolated("B^2/A^2 + B/A + delta = 0"));
    }
    match mode {
        EvalMode::Brute => Ok(field
            .elements()
            .map(|x| {
                let num = field.add(field.mul(a, x), b);
                let den = field.add(field.add(field.mul(x, x), x), delta);
                let e = field.trace_bit(field.mul(num, field.inv(den)));
                1 - 2 * i64::from(e)
            })
            .sum()),
        EvalMode::Closed => {
            let c = field.sqrt(field.add(
                field.mul(a, b),
                field.mul(field.mul(a, a), delta),
            ));
            let bc = field.add(b, c);
            // (B+C)^2 = (B^2/A^2 + B/A + delta) A^2, nonzero by hypothesis
            assert!(!bc.is_zero());
            let u = 1 - 2 * i64::from(field.trace_bit(a));
            let v = 1 - 2 * i64::from(field.trace_bit(field.mul(bc, ia)));
            let k = kloosterman_unchecked(field, bc);
            Ok(if field.trace_bit(delta) == 1 {
                u + v - k * u
            } else {
                2 - u - v + k * u
            })
        }
    }
}

/// The unit-circle rational sum ξ(a, b) = Σ_{λ in U} (-1)^Tr(a/(λ + b)),
/// for b != 0 (a = 0 gives q + 1).
///
/// Closed form: with the norm N = b·b̄,
///   b in U, Tr_n^2n(a·b̄) = 0:  1 + q·(-1)^Tr_1^n(a·ā)
///   b in U, otherwise:          1
///   b not in U:  (1 - K_n(a·ā/(1+N²)))·(-1)^Tr(ā·b/(1+N))
pub fn circle_sum(
    field: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    mode: EvalMode,
) -> Result<i64> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    if a.is_zero() {
        return Ok(i64::from(field.q()) + 1);
    }
    match mode {
        EvalMode::Brute => Ok(field
            .circle_iter()
            .map(|lam| {
                let e = field.trace_bit(field.mul(a, field.inv(field.add(lam, b))));
                1 - 2 * i64::from(e)
            })
            .sum()),
        EvalMode::Closed => {
            let q = i64::from(field.q());
            let abar = field.conjugate(a);
            let bbar = field.conjugate(b);
            let norm_b = field.mul(b, bbar);
            if norm_b == FieldElement::ONE {
                let rel = field.rel_trace(field.mul(a, bbar));
                if rel.is_zero() {
                    let t = field.sub_trace_bit(field.norm(a));
                    Ok(1 + q * (1 - 2 * i64::from(t)))
                } else {
                    Ok(1)
                }
            } else {
                let one = FieldElement::ONE;
                let den = field.add(one, field.mul(norm_b, norm_b));
                let karg = field.div(field.norm(a), den);
                let k = field.subfield().kloosterman_at(karg)?;
                let sgn_arg = field.div(field.mul(abar, b), field.add(one, norm_b));
                let sgn = 1 - 2 * i64::from(field.trace_bit(sgn_arg));
                Ok((1 - k) * sgn)
            }
        }
    }
}

/// The punctured sum M(a, b) = Σ_{λ in U \ {1}} (-1)^Tr(a/(λ + b)), by
/// direct summation; ξ(a,b) = (-1)^Tr(a/(1+b)) + M(a,b).
pub fn punctured_circle_sum(field: &FieldSpec, a: FieldElement, b: FieldElement) -> Result<i64> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    Ok(field
        .circle_iter()
        .skip(1) // circle[0] = 1
        .map(|lam| {
            let e = field.trace_bit(field.mul(a, field.inv(field.add(lam, b))));
            1 - 2 * i64::from(e)
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableSource {
    Computed,
    Loaded,
}

/// K_n for every nonzero a of GF(2^n), keyed by residue value over the
/// default degree-n polynomial. Values are multiples of 4 in the
/// Lachaud–Wolfmann range [-2^(n/2+1)+1, 2^(n/2+1)+1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KloostermanTable {
    n: u32,
    /// indexed by element value; [0] = 0 is a placeholder, K is defined on
    /// the unit group
    values: Vec<i64>,
    source: TableSource,
}

impl KloostermanTable {
    pub fn compute(field: &BinaryField) -> Self {
        KloostermanTable {
            n: field.degree(),
            values: kloosterman_all(field),
            source: TableSource::Computed,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn source(&self) -> TableSource {
        self.source
    }

    pub fn get(&self, a: FieldElement) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ZeroArgument("a"));
        }
        self.values
            .get(a.0 as usize)
            .copied()
            .ok_or_else(|| Error::Format(format!("element {a} outside GF(2^{})", self.n)))
    }

    /// Entry count (all nonzero field elements).
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Raw values indexed by element value, for installing into a
    /// [`FieldSpec`](crate::gf2m::FieldSpec) subfield cache.
    pub fn raw_values(&self) -> &[i64] {
        &self.values
    }

    /// Every value must be a multiple of 4 inside the Lachaud–Wolfmann
    /// range; checked on load and available for self-audit.
    pub fn validate(&self) -> Result<()> {
        for (v, &k) in self.values.iter().enumerate().skip(1) {
            if k % 4 != 0 {
                return Err(Error::TableInvariant(format!(
                    "K_{}({v:#X}) = {k} is not a multiple of 4",
                    self.n
                )));
            }
            // |K - 1| <= 2^(n/2+1) checked exactly as (K-1)^2 <= 2^(n+2)
            let d = k - 1;
            if d * d > (1i64 << (self.n + 2)) {
                return Err(Error::TableInvariant(format!(
                    "K_{}({v:#X}) = {k} outside the admissible range",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// CSV with header `n=<int>` and rows `a_hex,value` in ascending order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n={}", self.n)?;
        for (v, &k) in self.values.iter().enumerate().skip(1) {
            writeln!(w, "{v:#X},{k}")?;
        }
        Ok(())
    }

    /// Reads the CSV format back, re-validating the divisibility and range
    /// invariants and requiring one row per nonzero element.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty kloosterman table".into()))??;
        let n: u32 = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::Format(format!("expected `n=<int>` header, got `{header}`")))?
            .trim()
            .parse()
            .map_err(|e| Error::Format(format!("bad n in header: {e}")))?;
        if n == 0 || n > crate::gf2m::MAX_DEGREE {
            return Err(Error::Format(format!("unsupported table degree n={n}")));
        }
        let size = 1usize << n;
        let mut values = vec![i64::MIN; size];
        values[0] = 0;
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (a_hex, val) = line
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("bad row `{line}`")))?;
            let a = crate::gf2m::parse_poly_hex(a_hex)? as usize;
            if a == 0 || a >= size {
                return Err(Error::Format(format!("element {a_hex} outside GF(2^{n})*")));
            }
            if values[a] != i64::MIN {
                return Err(Error::Format(format!("duplicate row for {a_hex}")));
            }
            values[a] = val
                .trim()
                .parse()
                .map_err(|e| Error::Format(format!("bad value in row `{line}`: {e}")))?;
        }
        if let Some(v) = values.iter().position(|&k| k == i64::MIN) {
            return Err(Error::TableInvariant(format!(
                "missing entry for {:#X}; table must cover all of GF(2^{n})*",
                v
            )));
        }
        let table = KloostermanTable { n, values, source: TableSource::Loaded };
        table.validate()?;
        Ok(table)
    }
}
