//! Bent functions built by combining rational trace blocks
//! f_i(x) = Tr(a_i/(x^(q-1) + b)) through a reduced polynomial
//! F(X_1, ..., X_t): the generic circle-sum bentness criterion, the
//! closed-form checkers for F = X1, X1X2 and the majority combiner, and
//! deterministic parameter-space sweeps.

use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfun::{hadamard_in_place, TruthTable};
use crate::error::{Error, Result};
use crate::expsums::{circle_sum, EvalMode};
use crate::gf2m::{FieldElement, FieldSpec};

/// A reduced polynomial F over t binary variables, as a 2^t-bit truth table
/// (X_1 is the least significant index bit) together with its exact
/// 2^t-point Walsh transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinerF {
    t: u32,
    table: Vec<u8>,
    walsh: Vec<i64>,
}

impl CombinerF {
    /// Builds a combiner from its truth-table bits, least significant bit
    /// first. Arities above 4 are out of scope.
    pub fn new(t: u32, table_bits: u32) -> Result<Self> {
        if t == 0 || t > 4 {
            return Err(Error::Format(format!("combiner arity {t} out of range 1..=4")));
        }
        let size = 1usize << t;
        if u64::from(table_bits) >> size != 0 {
            return Err(Error::Format(format!(
                "combiner table {table_bits:#X} does not fit in {size} bits"
            )));
        }
        let table: Vec<u8> = (0..size).map(|i| (table_bits >> i & 1) as u8).collect();
        let mut walsh: Vec<i64> = table.iter().map(|&b| 1 - 2 * i64::from(b)).collect();
        hadamard_in_place(&mut walsh);
        debug_assert_eq!(
            walsh.iter().map(|v| v * v).sum::<i64>(),
            1i64 << (2 * t)
        );
        Ok(CombinerF { t, table, walsh })
    }

    /// F = X1.
    pub fn single() -> Self {
        Self::new(1, 0b10).unwrap()
    }

    /// F = X1·X2.
    pub fn product2() -> Self {
        Self::new(2, 0b1000).unwrap()
    }

    /// F = X1X2 + X1X3 + X2X3, the majority of three.
    pub fn majority3() -> Self {
        Self::new(3, 0xE8).unwrap()
    }

    /// F = X1·X2·X3.
    pub fn product3() -> Self {
        Self::new(3, 0x80).unwrap()
    }

    pub fn arity(&self) -> u32 {
        self.t
    }

    pub fn table_bits(&self) -> u32 {
        self.table
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i))
    }

    pub fn table_hex(&self) -> String {
        format!("{:#X}", self.table_bits())
    }

    pub fn eval(&self, inputs: u32) -> u8 {
        self.table[inputs as usize & ((1 << self.t) - 1)]
    }

    /// W_F(α) = Σ_X (-1)^(F(X) + α·X).
    pub fn walsh_at(&self, alpha: u32) -> i64 {
        self.walsh[alpha as usize & ((1 << self.t) - 1)]
    }
}

/// Parameters of a combined function h(x) = F(f_1(x), ..., f_t(x)) with
/// f_i(x) = Tr(a_i/(x^(q-1) + b)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParams {
    pub a: Vec<FieldElement>,
    pub b: FieldElement,
    pub combiner: CombinerF,
}

impl RationalParams {
    pub fn new(a: Vec<FieldElement>, b: FieldElement, combiner: CombinerF) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroArgument("b"));
        }
        if a.len() != combiner.arity() as usize {
            return Err(Error::ArityMismatch { expected: combiner.arity() as usize, got: a.len() });
        }
        Ok(RationalParams { a, b, combiner })
    }
}

/// Builds the truth table of h = F(f_1, ..., f_t); always Dillon-like.
pub fn build_combined(field: &Arc<FieldSpec>, p: &RationalParams) -> Result<TruthTable> {
    if p.b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    if p.a.len() != p.combiner.arity() as usize {
        return Err(Error::ArityMismatch {
            expected: p.combiner.arity() as usize,
            got: p.a.len(),
        });
    }
    let q = i64::from(field.q());
    Ok(TruthTable::from_fn(field.clone(), |x| {
        let lam = field.pow(x, q - 1);
        let inv = field.inv(field.add(lam, p.b));
        let mut idx = 0u32;
        for (i, &a) in p.a.iter().enumerate() {
            idx |= u32::from(field.trace_bit(field.mul(a, inv))) << i;
        }
        p.combiner.eval(idx)
    }))
}

/// The value h(0) = F(Tr(a_1/b), ..., Tr(a_t/b)).
fn h_at_zero(field: &FieldSpec, p: &RationalParams) -> u8 {
    let ib = field.inv(p.b);
    let mut idx = 0u32;
    for (i, &a) in p.a.iter().enumerate() {
        idx |= u32::from(field.trace_bit(field.mul(a, ib))) << i;
    }
    p.combiner.eval(idx)
}

/// Generic bentness criterion for h = F(f_1, ..., f_t): h is bent iff
///
///   2^t·(-1)^h(0) = Σ_α W_F(α)·ξ(Σ_i s_i a_i, b),
///
/// evaluated with the closed-form ξ. Requires q > 2.
pub fn combiner_criterion(field: &FieldSpec, p: &RationalParams) -> Result<bool> {
    if field.q() <= 2 {
        return Err(Error::FieldTooSmall { n: field.n(), min: 2 });
    }
    if p.b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let t = p.combiner.arity();
    if p.a.len() != t as usize {
        return Err(Error::ArityMismatch { expected: t as usize, got: p.a.len() });
    }
    let lhs = (1i64 << t) * (1 - 2 * i64::from(h_at_zero(field, p)));
    let mut rhs = 0i64;
    for alpha in 0..(1u32 << t) {
        let w = p.combiner.walsh_at(alpha);
        if w == 0 {
            continue;
        }
        let mut arg = FieldElement::ZERO;
        for (i, &a) in p.a.iter().enumerate() {
            if alpha >> i & 1 == 1 {
                arg = field.add(arg, a);
            }
        }
        rhs += w * circle_sum(field, arg, p.b, EvalMode::Closed)?;
    }
    Ok(lhs == rhs)
}

fn require_base_coefficient(field: &FieldSpec, a1: FieldElement) -> Result<()> {
    if a1.is_zero() {
        return Err(Error::ZeroArgument("a1"));
    }
    if !field.in_subfield(a1) {
        return Err(Error::NotInSubfield("a1"));
    }
    Ok(())
}

/// Closed-form bentness check for the single block h(x) = Tr(a1/(x^(q-1)+b))
/// with a1 in GF(2^n)*. Returns the matched condition:
///   (1) b in U \ {1} and Tr(a1/b) = 0;
///   (2) b outside U, K_n(a1/(1+b·b̄)) = 0 and
///       Tr_1^n(a1(b+b̄)/((1+b·b̄)·b·b̄)) = 0.
/// b = 1 never yields a bent function.
pub fn check_single(field: &FieldSpec, a1: FieldElement, b: FieldElement) -> Result<Option<u8>> {
    require_base_coefficient(field, a1)?;
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    if b == FieldElement::ONE {
        return Ok(None);
    }
    if field.in_circle(b) {
        let t = field.trace_bit(field.div(a1, b));
        return Ok(if t == 0 { Some(1) } else { None });
    }
    let one = FieldElement::ONE;
    let nb = field.norm(b);
    let denom = field.add(one, nb);
    let k = field.subfield().kloosterman_at(field.div(a1, denom))?;
    let num = field.mul(a1, field.rel_trace(b)); // a1(b + b̄)
    let tr = field.sub_trace_bit(field.div(num, field.mul(denom, nb)));
    Ok(if k == 0 && tr == 0 { Some(2) } else { None })
}

/// Closed-form bentness check for the product h = f_1·f_2, with a1 in
/// GF(2^n)*, a2 != a1 nonzero, and n >= 6 (below that the non-bentness
/// argument for b outside U does not close). Conditions:
///   (1) b = 1, Tr_1^n(a1) = 1 and a2 outside GF(2^n);
///   (2) b in U \ {1}, Tr_n^2n(a2 b̄) = 0, Tr_1^n(a2 ā2) = 1, h(0) = 0;
///   (3) b in U \ {1}, Tr_n^2n((a1+a2) b̄) = 0,
///       Tr_1^n((a1+a2)(a1+ā2)) = 0, h(0) = 0.
/// b outside U never yields a bent product.
pub fn check_product(
    field: &FieldSpec,
    a1: FieldElement,
    a2: FieldElement,
    b: FieldElement,
) -> Result<Option<u8>> {
    if field.n() < 6 {
        return Err(Error::FieldTooSmall { n: field.n(), min: 6 });
    }
    require_base_coefficient(field, a1)?;
    if a2.is_zero() {
        return Err(Error::ZeroArgument("a2"));
    }
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    if a1 == a2 {
        return Err(Error::CoincidentArguments("a1, a2"));
    }
    if b == FieldElement::ONE {
        let ok = field.sub_trace_bit(a1) == 1 && !field.in_subfield(a2);
        return Ok(if ok { Some(1) } else { None });
    }
    if !field.in_circle(b) {
        return Ok(None);
    }
    let bbar = field.conjugate(b);
    let h0 = field.trace_bit(field.div(a1, b)) & field.trace_bit(field.div(a2, b));
    if h0 == 0 {
        if field.rel_trace(field.mul(a2, bbar)).is_zero()
            && field.sub_trace_bit(field.norm(a2)) == 1
        {
            return Ok(Some(2));
        }
        let s = field.add(a1, a2);
        if field.rel_trace(field.mul(s, bbar)).is_zero()
            && field.sub_trace_bit(field.mul(s, field.add(a1, field.conjugate(a2)))) == 0
        {
            return Ok(Some(3));
        }
    }
    Ok(None)
}

/// Closed-form bentness check for the majority combination
/// h = f_1f_2 + f_1f_3 + f_2f_3, with a1 in GF(2^n)*, a1, a2, a3 nonzero
/// pairwise distinct, a1+a2+a3 != 0 and n > 2. The six conditions are
/// checked under both orderings of (a2, a3); the smallest matching label
/// is returned.
pub fn check_majority(
    field: &FieldSpec,
    a1: FieldElement,
    a2: FieldElement,
    a3: FieldElement,
    b: FieldElement,
) -> Result<Option<u8>> {
    if field.n() <= 2 {
        return Err(Error::FieldTooSmall { n: field.n(), min: 3 });
    }
    require_base_coefficient(field, a1)?;
    if a2.is_zero() || a3.is_zero() {
        return Err(Error::ZeroArgument("a2/a3"));
    }
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    if a1 == a2 || a1 == a3 || a2 == a3 {
        return Err(Error::CoincidentArguments("a1, a2, a3"));
    }
    let s123 = field.add(field.add(a1, a2), a3);
    if s123.is_zero() {
        return Err(Error::HypothesisViolated("a1 + a2 + a3 = 0"));
    }

    let ib = field.inv(b);
    let bits: Vec<u8> = [a1, a2, a3]
        .iter()
        .map(|&a| field.trace_bit(field.mul(a, ib)))
        .collect();
    let h0 = (bits[0] & bits[1]) ^ (bits[0] & bits[2]) ^ (bits[1] & bits[2]);

    let mut best: Option<u8> = None;
    let note = |c: u8, best: &mut Option<u8>| {
        if best.map_or(true, |b| c < b) {
            *best = Some(c);
        }
    };

    for (p2, p3) in [(a2, a3), (a3, a2)] {
        if b == FieldElement::ONE {
            // the b = 1 conditions force h(0) = 0 on their own
            if field.in_subfield(p2)
                && !field.in_subfield(p3)
                && field.sub_trace_bit(field.add(a1, p2)) == 1
            {
                note(1, &mut best);
            }
            if !field.in_subfield(p2)
                && !field.in_subfield(p3)
                && field.in_subfield(field.add(p2, p3))
                && field.sub_trace_bit(field.add(p2, p3)) == 0
                && field.trace_bit(p2) == 0
            {
                note(2, &mut best);
            }
        } else if field.in_circle(b) {
            if h0 != 0 {
                continue;
            }
            let bbar = field.conjugate(b);
            let rel_zero = |x: FieldElement| field.rel_trace(field.mul(x, bbar)).is_zero();
            let (z2, z3, zs) = (rel_zero(p2), rel_zero(p3), rel_zero(s123));
            if z2 && z3 {
                let t = field.sub_trace_bit(field.add(field.norm(p2), field.norm(p3)));
                if t == 1 {
                    note(3, &mut best);
                }
            }
            if z2 && !z3 && zs {
                let rhs = field.mul(
                    s123,
                    field.add(a1, field.add(field.conjugate(p2), field.conjugate(p3))),
                );
                if field.sub_trace_bit(field.norm(p2)) == field.sub_trace_bit(rhs) {
                    note(4, &mut best);
                }
            }
            if !z2 && !z3 && !zs {
                note(5, &mut best);
            }
        } else {
            // b outside U: a four-term Kloosterman relation decides bentness
            let one = FieldElement::ONE;
            let nb = field.norm(b);
            let den1 = field.add(one, nb);
            let den2 = field.add(one, field.mul(nb, nb));
            let u = |x: FieldElement| -> Result<i64> {
                let arg = field.div(field.mul(field.conjugate(x), b), den1);
                Ok(i64::from(field.trace_bit(arg)))
            };
            let k = |x: FieldElement| -> Result<i64> {
                field.subfield().kloosterman_at(field.div(field.norm(x), den2))
            };
            let (u1, u2, u3) = (u(a1)?, u(p2)?, u(p3)?);
            let us = u(s123)?;
            let sgn = |e: i64| 1 - 2 * (e & 1);
            let lhs = 2 * (1 - 2 * i64::from(h0));
            let rhs = 2 * sgn(u1 * u2 + u1 * u3 + u2 * u3) + sgn(us) * k(s123)?
                - sgn(u1) * k(a1)?
                - sgn(u2) * k(p2)?
                - sgn(u3) * k(p3)?;
            if lhs == rhs {
                note(6, &mut best);
            }
        }
    }
    Ok(best)
}

/// Rewrites a1 = w^(i(q-1))·a with a in GF(2^n)* and applies the
/// substitution x -> w^i x, which divides every coefficient and b by the
/// circle factor; bentness is preserved and the first coefficient lands in
/// the subfield.
pub fn normalize_a1(field: &FieldSpec, p: &RationalParams) -> Result<RationalParams> {
    let a1 = *p.a.first().ok_or(Error::ArityMismatch { expected: 1, got: 0 })?;
    if a1.is_zero() {
        return Err(Error::ZeroArgument("a1"));
    }
    let (lambda, _) = field.polar_decompose(a1)?;
    let ilam = field.inv(lambda);
    Ok(RationalParams {
        a: p.a.iter().map(|&a| field.mul(a, ilam)).collect(),
        b: field.mul(p.b, ilam),
        combiner: p.combiner.clone(),
    })
}

/// Sweep scope: the full parameter space, or a deterministic sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScope {
    Exhaustive,
    Sample(u64),
}

/// Exhaustive sweeps above this many parameter sets are refused.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 24;

/// One emitted parameter set of a sweep, in the stable record schema
/// consumed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: u32,
    pub combiner_table_hex: String,
    pub a_list_hex: Vec<String>,
    pub b_hex: String,
    pub bent: bool,
    pub matched_condition: String,
    pub walsh_verified: bool,
}

/// Aggregate counters of a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub examined: u64,
    pub bent_found: u64,
}

/// A deterministic partition of the sweep into chunks; chunk results are
/// independent, so chunks may run on any schedule and the concatenated
/// output is still canonical.
#[derive(Debug, Clone, Copy)]
pub struct SweepPlan {
    pub items: u64,
    pub chunk_size: u64,
    pub chunks: u64,
    total_space: u128,
    scope: SweepScope,
    seed: u64,
}

impl SweepPlan {
    pub fn scope(&self) -> SweepScope {
        self.scope
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn space_size(field: &FieldSpec, t: u32) -> u128 {
    let order = u128::from(field.order());
    order.pow(t + 1)
}

/// Plans a sweep over all (a_1..a_t, b) with nonzero entries.
pub fn plan_sweep(
    field: &FieldSpec,
    combiner: &CombinerF,
    scope: SweepScope,
    seed: u64,
    chunk_size: u64,
) -> Result<SweepPlan> {
    let total_space = space_size(field, combiner.arity());
    let items = match scope {
        SweepScope::Exhaustive => {
            if total_space > EXHAUSTIVE_LIMIT {
                return Err(Error::ScopeTooLarge { size: total_space, limit: EXHAUSTIVE_LIMIT });
            }
            total_space as u64
        }
        SweepScope::Sample(k) => k,
    };
    let chunk_size = chunk_size.max(1);
    let chunks = items.div_ceil(chunk_size).max(1);
    Ok(SweepPlan { items, chunk_size, chunks, total_space, scope, seed })
}

/// Decodes the item with global index `idx` into (a_1..a_t, b). Exhaustive
/// indices enumerate b as the most significant digit, so ascending index
/// order is ascending (b, a_1, ..., a_t) order. Samples are drawn by a
/// counter-addressed ChaCha8 stream, so any sub-range can be regenerated
/// independently.
fn decode_item(
    field: &FieldSpec,
    t: u32,
    plan: &SweepPlan,
    idx: u64,
) -> (Vec<FieldElement>, FieldElement) {
    let order = u128::from(field.order());
    let point = match plan.scope {
        SweepScope::Exhaustive => u128::from(idx),
        SweepScope::Sample(_) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(plan.seed);
            rng.set_word_pos(u128::from(idx) * 4);
            let raw = (u128::from(rng.next_u64()) << 64) | u128::from(rng.next_u64());
            raw % plan.total_space
        }
    };
    let mut digits = Vec::with_capacity(t as usize + 1);
    let mut rest = point;
    for _ in 0..=t {
        digits.push((rest % order) as u16 + 1);
        rest /= order;
    }
    // digits were produced least significant first: a_t, ..., a_1, b
    let b = FieldElement(digits.pop().unwrap());
    digits.reverse();
    (digits.into_iter().map(FieldElement).collect(), b)
}

/// The condition label reported alongside a bent parameter set: the sweep
/// normalizes a_1 into the subfield and consults the matching closed-form
/// checker. Empty when no checker applies (unsupported combiner, field too
/// small, or checker preconditions unmet).
pub fn condition_label(field: &FieldSpec, p: &RationalParams) -> String {
    let normalized = match normalize_a1(field, p) {
        Ok(n) => n,
        Err(_) => return String::new(),
    };
    let label = |c: Option<u8>| c.map(|c| format!("({c})")).unwrap_or_default();
    let table = p.combiner.table_bits();
    match (p.combiner.arity(), table) {
        (1, 0b10) => label(check_single(field, normalized.a[0], normalized.b).ok().flatten()),
        (2, 0b1000) => label(
            check_product(field, normalized.a[0], normalized.a[1], normalized.b)
                .ok()
                .flatten(),
        ),
        (3, 0xE8) => label(
            check_majority(
                field,
                normalized.a[0],
                normalized.a[1],
                normalized.a[2],
                normalized.b,
            )
            .ok()
            .flatten(),
        ),
        _ => String::new(),
    }
}

/// Runs one chunk of the sweep, returning the records of parameter sets
/// that satisfy the combiner criterion (each verified against the full
/// Walsh transform) and the number of sets examined.
pub fn run_sweep_chunk(
    field: &Arc<FieldSpec>,
    combiner: &CombinerF,
    plan: &SweepPlan,
    chunk_idx: u64,
) -> Result<(Vec<SweepRecord>, SweepSummary)> {
    let start = chunk_idx * plan.chunk_size;
    let end = (start + plan.chunk_size).min(plan.items);
    if start >= end {
        return Ok((Vec::new(), SweepSummary::default()));
    }
    let t = combiner.arity();
    let records: Vec<SweepRecord> = (start..end)
        .into_par_iter()
        .filter_map(|idx| {
            let (a, b) = decode_item(field, t, plan, idx);
            let p = RationalParams { a, b, combiner: combiner.clone() };
            match combiner_criterion(field, &p) {
                Ok(true) => {
                    let verified =
                        build_combined(field, &p).map(|tbl| tbl.is_bent()).unwrap_or(false);
                    Some(SweepRecord {
                        m: field.m(),
                        combiner_table_hex: combiner.table_hex(),
                        a_list_hex: p.a.iter().map(|a| a.to_hex()).collect(),
                        b_hex: p.b.to_hex(),
                        bent: true,
                        matched_condition: condition_label(field, &p),
                        walsh_verified: verified,
                    })
                }
                _ => None,
            }
        })
        .collect();
    let summary = SweepSummary { examined: end - start, bent_found: records.len() as u64 };
    Ok((records, summary))
}

/// Canonical ordering and deduplication for emitted records.
pub fn canonicalize_records(records: &mut Vec<SweepRecord>) {
    records.sort_by(|x, y| (&x.b_hex, &x.a_list_hex).cmp(&(&y.b_hex, &y.a_list_hex)));
    records.dedup();
}

/// All (or k sampled) parameter sets for which the combiner criterion
/// holds, in canonical order; deterministic given the seed.
pub fn enumerate_bent(
    field: &Arc<FieldSpec>,
    combiner: &CombinerF,
    scope: SweepScope,
    seed: u64,
) -> Result<Vec<RationalParams>> {
    let plan = plan_sweep(field, combiner, scope, seed, 1 << 16)?;
    let t = combiner.arity();
    let mut found: Vec<(FieldElement, Vec<FieldElement>)> = Vec::new();
    for chunk in 0..plan.chunks {
        let start = chunk * plan.chunk_size;
        let end = (start + plan.chunk_size).min(plan.items);
        let mut part: Vec<(FieldElement, Vec<FieldElement>)> = (start..end)
            .into_par_iter()
            .filter_map(|idx| {
                let (a, b) = decode_item(field, t, &plan, idx);
                let p = RationalParams { a: a.clone(), b, combiner: combiner.clone() };
                match combiner_criterion(field, &p) {
                    Ok(true) => Some((b, a)),
                    _ => None,
                }
            })
            .collect();
        found.append(&mut part);
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|(b, a)| RationalParams::new(a, b, combiner.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::rational_block;
    use crate::dillon::detect_dillon;

    fn f6() -> Arc<FieldSpec> {
        FieldSpec::shared(6, None).unwrap()
    }

    #[test]
    fn combiner_walsh_values() {
        let s = CombinerF::single();
        assert_eq!((s.walsh_at(0), s.walsh_at(1)), (0, 2));
        let p = CombinerF::product2();
        for alpha in 0..4u32 {
            let expect = 2 * (1 - 2 * i64::from((alpha & 1) * (alpha >> 1 & 1)));
            assert_eq!(p.walsh_at(alpha), expect);
        }
        let m = CombinerF::majority3();
        for alpha in 0..8u32 {
            let (s1, s2, s3) = (alpha & 1, alpha >> 1 & 1, alpha >> 2 & 1);
            let expect = if (s1 ^ s2 ^ s3) == 0 {
                0
            } else {
                4 * (1 - 2 * i64::from(s2 & s3))
            };
            assert_eq!(m.walsh_at(alpha), expect, "alpha={alpha}");
        }
        let c = CombinerF::product3();
        assert_eq!(c.walsh_at(0), 6);
        for alpha in [1u32, 2, 4, 7] {
            assert_eq!(c.walsh_at(alpha), 2);
        }
        for alpha in [3u32, 5, 6] {
            assert_eq!(c.walsh_at(alpha), -2);
        }
        assert!(CombinerF::new(5, 0).is_err());
        assert!(CombinerF::new(1, 0b100).is_err());
    }

    #[test]
    fn single_block_build_matches_rational_block() {
        let f = f6();
        let b = f.gen_pow(7);
        let p = RationalParams::new(vec![FieldElement::ONE], b, CombinerF::single()).unwrap();
        assert_eq!(build_combined(&f, &p).unwrap(), rational_block(&f, FieldElement::ONE, b).unwrap());
    }

    #[test]
    fn combined_functions_are_dillon_like() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let f = f6();
        for combiner in [CombinerF::single(), CombinerF::product2(), CombinerF::majority3()] {
            for _ in 0..10 {
                let t = combiner.arity() as usize;
                let a = (0..t)
                    .map(|_| FieldElement(rng.random_range(1..64) as u16))
                    .collect();
                let b = FieldElement(rng.random_range(1..64) as u16);
                let p = RationalParams::new(a, b, combiner.clone()).unwrap();
                let table = build_combined(&f, &p).unwrap();
                assert!(detect_dillon(&table).is_some());
            }
        }
    }

    #[test]
    fn single_checker_matches_worked_example() {
        let f = f6();
        assert_eq!(check_single(&f, FieldElement::ONE, f.gen_pow(7)).unwrap(), Some(1));
        assert_eq!(check_single(&f, FieldElement::ONE, f.generator()).unwrap(), Some(2));
        assert_eq!(check_single(&f, FieldElement::ONE, FieldElement::ONE).unwrap(), None);
        assert!(check_single(&f, f.generator(), f.generator()).is_err()); // a1 outside subfield
        assert!(check_single(&f, FieldElement::ZERO, f.generator()).is_err());
    }

    #[test]
    fn single_checker_equals_walsh_oracle_m6() {
        let f = f6();
        let mut bent = 0;
        for a1 in f.nonzero_elements().filter(|&a| f.in_subfield(a)) {
            for b in f.nonzero_elements() {
                let by_thm = check_single(&f, a1, b).unwrap().is_some();
                let by_walsh = rational_block(&f, a1, b).unwrap().is_bent();
                assert_eq!(by_thm, by_walsh, "a1={a1} b={b}");
                bent += u32::from(by_thm);
            }
        }
        assert_eq!(bent, 102); // frozen count over GF(2^3)* x GF(2^6)*
    }

    #[test]
    fn product_checker_requires_n6() {
        let f = f6();
        assert!(matches!(
            check_product(&f, FieldElement::ONE, f.generator(), f.generator()),
            Err(Error::FieldTooSmall { n: 3, min: 6 })
        ));
    }

    #[test]
    fn majority_checker_preconditions() {
        let f = f6();
        let w = f.generator();
        assert!(matches!(
            check_majority(&f, FieldElement::ONE, w, w, w),
            Err(Error::CoincidentArguments(_))
        ));
        // a1 + a2 + a3 = 0
        let a2 = w;
        let a3 = f.add(FieldElement::ONE, w);
        assert!(matches!(
            check_majority(&f, FieldElement::ONE, a2, a3, w),
            Err(Error::HypothesisViolated(_))
        ));
        let f4 = FieldSpec::shared(4, None).unwrap();
        assert!(matches!(
            check_majority(&f4, FieldElement::ONE, f4.generator(), f4.gen_pow(2), f4.generator()),
            Err(Error::FieldTooSmall { n: 2, min: 3 })
        ));
    }

    #[test]
    fn criterion_agrees_with_walsh_for_single_blocks() {
        let f = f6();
        for a1 in f.nonzero_elements() {
            for b in f.nonzero_elements() {
                let p =
                    RationalParams::new(vec![a1], b, CombinerF::single()).unwrap();
                assert_eq!(
                    combiner_criterion(&f, &p).unwrap(),
                    build_combined(&f, &p).unwrap().is_bent()
                );
            }
        }
    }

    #[test]
    fn normalize_preserves_bentness_and_lands_in_subfield() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let f = f6();
        for _ in 0..200 {
            let a1 = FieldElement(rng.random_range(1..64) as u16);
            let b = FieldElement(rng.random_range(1..64) as u16);
            let p = RationalParams::new(vec![a1], b, CombinerF::single()).unwrap();
            let normalized = normalize_a1(&f, &p).unwrap();
            assert!(f.in_subfield(normalized.a[0]) && !normalized.a[0].is_zero());
            let before = build_combined(&f, &p).unwrap();
            let after = build_combined(&f, &normalized).unwrap();
            assert_eq!(before.is_bent(), after.is_bent());
            // identical up to the substitution x -> w^i x
            let (lambda, _) = f.polar_decompose(a1).unwrap();
            let i = f.log(lambda).unwrap() / (f.q() - 1);
            let wi = f.gen_pow(i64::from(i));
            for x in f.elements() {
                assert_eq!(after.get(x), before.get(f.mul(wi, x)));
            }
            if f.in_subfield(a1) {
                assert_eq!(normalized, p); // identity when already normalized
            }
        }
    }

    #[test]
    fn enumerate_single_blocks_recovers_checker_solution_set() {
        let f = f6();
        let found = enumerate_bent(&f, &CombinerF::single(), SweepScope::Exhaustive, 0).unwrap();
        // every found set is bent by the Walsh oracle
        for p in &found {
            assert!(build_combined(&f, p).unwrap().is_bent());
        }
        // cross-reference against the closed-form checker on the normalized set
        let by_checker: std::collections::HashSet<(u16, u16)> = found
            .iter()
            .map(|p| (p.a[0].0, p.b.0))
            .collect();
        for a1 in f.nonzero_elements() {
            for b in f.nonzero_elements() {
                let p = RationalParams::new(vec![a1], b, CombinerF::single()).unwrap();
                let n = normalize_a1(&f, &p).unwrap();
                let expect = check_single(&f, n.a[0], n.b).unwrap().is_some();
                assert_eq!(by_checker.contains(&(a1.0, b.0)), expect);
            }
        }
    }

    #[test]
    fn empty_combiner_yields_nothing() {
        let f = f6();
        let zero = CombinerF::new(2, 0).unwrap();
        let found = enumerate_bent(&f, &zero, SweepScope::Exhaustive, 0).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = FieldSpec::shared(12, None).unwrap();
        let combiner = CombinerF::product2();
        let plan = plan_sweep(&f, &combiner, SweepScope::Sample(500), 1, 128).unwrap();
        let mut all1 = Vec::new();
        let mut all2 = Vec::new();
        for c in 0..plan.chunks {
            all1.extend(run_sweep_chunk(&f, &combiner, &plan, c).unwrap().0);
        }
        for c in 0..plan.chunks {
            all2.extend(run_sweep_chunk(&f, &combiner, &plan, c).unwrap().0);
        }
        assert_eq!(all1, all2);
        for r in &all1 {
            assert!(r.bent && r.walsh_verified);
        }
    }

    #[test]
    fn exhaustive_scope_guard() {
        let f = FieldSpec::shared(12, None).unwrap();
        assert!(matches!(
            plan_sweep(&f, &CombinerF::product2(), SweepScope::Exhaustive, 0, 1024),
            Err(Error::ScopeTooLarge { .. })
        ));
    }
}
