//! Dillon-like structure: functions of the form f(x) = g(x^(q-1)), their
//! restricted Walsh formula on the unit circle, the circle bentness
//! criterion and the hyper-bentness weight criterion.

use std::io::Write;
use std::sync::Arc;

use crate::boolfun::{TruthTable, WalshSpectrum};
use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldSpec};

/// A Dillon-like function, stored as g restricted to U ∪ {0}: the criteria
/// depend on nothing else, and the full table is recovered through x^(q-1).
///
/// `g_on_circle[k]` is g at the k-th power of the circle generator w^(q-1).
#[derive(Debug, Clone)]
pub struct DillonFunction {
    field: Arc<FieldSpec>,
    g_on_circle: Vec<u8>,
    g_at_zero: u8,
}

impl PartialEq for DillonFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field)
            && self.g_on_circle == other.g_on_circle
            && self.g_at_zero == other.g_at_zero
    }
}
impl Eq for DillonFunction {}

/// Checks the multiplicative orbit condition f(w^(q+1) x) = f(x) directly
/// and reads the circle values off the table; `None` if f is not
/// Dillon-like. The orbit check is representation-independent and O(2^m).
pub fn detect_dillon(f: &TruthTable) -> Option<DillonFunction> {
    let fs = f.field();
    let gamma = fs.exp(fs.q() + 1); // generates the subfield unit group
    for x in fs.nonzero_elements() {
        if f.get(fs.mul(gamma, x)) != f.get(x) {
            return None;
        }
    }
    let g_on_circle = (0..fs.circle_len())
        .map(|k| f.get(fs.exp(k as u32))) // w^k has x^(q-1) = circle[k]
        .collect();
    Some(DillonFunction {
        field: fs.clone(),
        g_on_circle,
        g_at_zero: f.get(FieldElement::ZERO),
    })
}

impl DillonFunction {
    /// Builds directly from circle values (one bit per power of the circle
    /// generator) and the value at zero.
    pub fn from_circle_bits(field: Arc<FieldSpec>, g_on_circle: Vec<u8>, g_at_zero: u8) -> Self {
        assert_eq!(g_on_circle.len(), field.circle_len(), "need q+1 circle bits");
        DillonFunction { field, g_on_circle, g_at_zero: g_at_zero & 1 }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn g_at_zero(&self) -> u8 {
        self.g_at_zero
    }

    pub fn circle_bits(&self) -> &[u8] {
        &self.g_on_circle
    }

    /// g at the circle element with index k (k-th power of w^(q-1)).
    pub fn g_at_index(&self, k: usize) -> u8 {
        self.g_on_circle[k % self.g_on_circle.len()]
    }

    /// Reconstructs the full truth table of g(x^(q-1)).
    pub fn to_table(&self) -> TruthTable {
        let fs = &self.field;
        let qp1 = fs.circle_len();
        TruthTable::from_fn(fs.clone(), |x| {
            if x.is_zero() {
                self.g_at_zero
            } else {
                self.g_on_circle[fs.log(x).unwrap() as usize % qp1]
            }
        })
    }

    /// Σ_{λ in U} (-1)^g(λ).
    pub fn circle_sign_sum(&self) -> i64 {
        self.g_on_circle.iter().map(|&b| 1 - 2 * i64::from(b)).sum()
    }

    /// The Walsh transform evaluated through the circle restriction alone:
    /// for α != 0 it is (-1)^g(0) - Σ_{λ}(-1)^g(λ) + q·(-1)^g(α^(1-q)),
    /// and at α = 0 it is (-1)^g(0) + (q-1)·Σ_{λ}(-1)^g(λ̄²).
    pub fn restricted_walsh(&self, alpha: FieldElement) -> i64 {
        let fs = &self.field;
        let q = i64::from(fs.q());
        let qp1 = self.g_on_circle.len();
        let sign0 = 1 - 2 * i64::from(self.g_at_zero);
        if alpha.is_zero() {
            let conj_sq_sum: i64 = (0..qp1)
                .map(|k| {
                    // λ = c^k has λ̄² = c^(-2k)
                    let idx = (2 * (qp1 - k)) % qp1;
                    1 - 2 * i64::from(self.g_on_circle[idx])
                })
                .sum();
            return sign0 + (q - 1) * conj_sq_sum;
        }
        let s = self.circle_sign_sum();
        // α^(1-q) has circle index -log(α) mod (q+1)
        let k = fs.log(alpha).unwrap() as usize % qp1;
        let idx = (qp1 - k) % qp1;
        sign0 - s + q * (1 - 2 * i64::from(self.g_on_circle[idx]))
    }

    /// The full spectrum via the restricted formula.
    pub fn restricted_spectrum(&self) -> WalshSpectrum {
        let values = (0..self.field.size() as u16)
            .map(|a| self.restricted_walsh(FieldElement(a)))
            .collect();
        WalshSpectrum { values }
    }

    /// Circle bentness criterion: f is bent iff Σ_{λ}(-1)^g(λ) = (-1)^f(0).
    /// Only valid for q > 2.
    pub fn bent_criterion(&self) -> Result<bool> {
        if self.field.q() <= 2 {
            return Err(Error::FieldTooSmall { n: self.field.n(), min: 2 });
        }
        Ok(self.circle_sign_sum() == 1 - 2 * i64::from(self.g_at_zero))
    }

    /// Hyper-bentness by circle weight: for f(0) = 0 the weight of
    /// (f(1), f(w), ..., f(w^q)) must be q/2; for f(0) = 1 the criterion is
    /// applied to f + 1.
    pub fn hyperbent_weight_criterion(&self) -> bool {
        let q = self.field.q();
        let wt: u32 = self.g_on_circle.iter().map(|&b| u32::from(b)).sum();
        if self.g_at_zero == 0 {
            wt == q / 2
        } else {
            (q + 1 - wt) == q / 2
        }
    }

    /// The dual g(x^(q²-q)) of a bent Dillon-like function; as circle data
    /// this is conjugation of the index, g̃(λ) = g(λ̄).
    pub fn dual(&self) -> Result<DillonFunction> {
        if !self.bent_criterion()? {
            return Err(Error::NotBent);
        }
        let qp1 = self.g_on_circle.len();
        let g_on_circle = (0..qp1).map(|k| self.g_on_circle[(qp1 - k) % qp1]).collect();
        Ok(DillonFunction {
            field: self.field.clone(),
            g_on_circle,
            g_at_zero: self.g_at_zero,
        })
    }

    /// CSV rows `lambda_hex,g_bit`, ordered by powers of the circle
    /// generator.
    pub fn write_circle_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "lambda_hex,g_bit")?;
        for (k, &bit) in self.g_on_circle.iter().enumerate() {
            writeln!(w, "{},{}", self.field.circle_elt(k), bit)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::rational_block;
    use rand::{Rng, SeedableRng};

    fn f6() -> Arc<FieldSpec> {
        FieldSpec::shared(6, None).unwrap()
    }

    fn random_dillon(field: &Arc<FieldSpec>, rng: &mut impl Rng) -> DillonFunction {
        let bits = (0..field.circle_len()).map(|_| rng.random_range(0..2) as u8).collect();
        DillonFunction::from_circle_bits(field.clone(), bits, rng.random_range(0..2) as u8)
    }

    #[test]
    fn rational_blocks_are_detected_and_roundtrip() {
        let f = f6();
        for a in f.nonzero_elements() {
            for b in [f.generator(), f.gen_pow(7)] {
                let t = rational_block(&f, a, b).unwrap();
                let d = detect_dillon(&t).expect("rational blocks are Dillon-like");
                assert_eq!(d.to_table(), t);
            }
        }
    }

    #[test]
    fn linear_function_is_not_dillon_like() {
        let f = f6();
        let t = TruthTable::from_fn(f.clone(), |x| f.trace_bit(x));
        assert!(detect_dillon(&t).is_none());
    }

    #[test]
    fn dillon_monomials_detected() {
        let f = f6();
        for k in 0..7 {
            let a = f.gen_pow(k);
            let t = TruthTable::from_fn(f.clone(), |x| f.trace_bit(f.mul(a, f.pow(x, 7))));
            let d = detect_dillon(&t).unwrap();
            assert_eq!(d.to_table(), t);
        }
    }

    #[test]
    fn restricted_walsh_of_zero_function() {
        let f = f6();
        let d = DillonFunction::from_circle_bits(f.clone(), vec![0; 9], 0);
        // W(0) = 1 + (q-1)(q+1) = q^2
        assert_eq!(d.restricted_walsh(FieldElement::ZERO), 64);
        assert!(!d.bent_criterion().unwrap());
        assert!(!d.hyperbent_weight_criterion());
    }

    #[test]
    fn restricted_walsh_matches_full_walsh() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for m in [6u32, 8] {
            let f = FieldSpec::shared(m, None).unwrap();
            for _ in 0..20 {
                let d = random_dillon(&f, &mut rng);
                assert_eq!(d.restricted_spectrum().values, d.to_table().walsh().values);
            }
        }
    }

    #[test]
    fn example_block_criteria_agree() {
        let f = f6();
        for b in [f.gen_pow(7), f.generator()] {
            let t = rational_block(&f, FieldElement::ONE, b).unwrap();
            let d = detect_dillon(&t).unwrap();
            assert!(d.bent_criterion().unwrap());
            assert!(d.hyperbent_weight_criterion());
            assert!(t.is_bent());
        }
    }

    #[test]
    fn criteria_equivalent_on_random_circle_data() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let f = f6();
        let mut bent_seen = 0;
        for _ in 0..300 {
            let d = random_dillon(&f, &mut rng);
            let bent = d.to_table().is_bent();
            assert_eq!(d.bent_criterion().unwrap(), bent);
            assert_eq!(d.hyperbent_weight_criterion(), bent);
            bent_seen += u32::from(bent);
        }
        assert!(bent_seen > 0);
    }

    #[test]
    fn bent_criterion_refuses_q2() {
        let f = FieldSpec::shared(2, None).unwrap();
        let d = DillonFunction::from_circle_bits(f.clone(), vec![0, 1, 0], 0);
        assert!(matches!(d.bent_criterion(), Err(Error::FieldTooSmall { .. })));
    }

    #[test]
    fn dual_matches_table_dual_and_is_involution() {
        let f = f6();
        let t = rational_block(&f, FieldElement::ONE, f.gen_pow(7)).unwrap();
        let d = detect_dillon(&t).unwrap();
        let dd = d.dual().unwrap();
        assert_eq!(dd.to_table(), t.dual().unwrap());
        assert_eq!(dd.dual().unwrap(), d);
        assert!(dd.to_table().is_bent());
        // closed spectrum of a bent Dillon-like function:
        // W(α) = q (-1)^(g(α^(q²-q))) for α != 0, i.e. the dual's circle
        // value at α^(q-1)
        let q = i64::from(f.q());
        let w = t.walsh();
        for alpha in f.nonzero_elements() {
            let idx = f.dillon_index(alpha).unwrap();
            assert_eq!(w.get(alpha), q * (1 - 2 * i64::from(dd.g_at_index(idx))));
            // same thing written through g directly
            let y = f.pow(alpha, q * q - q);
            let k = f.log(y).unwrap() as usize;
            let qp1 = f.circle_len();
            assert_eq!(k % (q as usize - 1), 0, "α^(q²-q) lies on the circle");
            let circle_idx = (k / (q as usize - 1)) % qp1;
            assert_eq!(w.get(alpha), q * (1 - 2 * i64::from(d.g_at_index(circle_idx))));
        }
        let not_bent = DillonFunction::from_circle_bits(f.clone(), vec![0; 9], 0);
        assert!(not_bent.dual().is_err());
    }

    #[test]
    fn circle_csv_shape() {
        let f = f6();
        let d = DillonFunction::from_circle_bits(f.clone(), vec![1; 9], 0);
        let mut buf = Vec::new();
        d.write_circle_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().next(), Some("lambda_hex,g_bit"));
        assert_eq!(s.lines().nth(1), Some("0x1,1")); // circle[0] = 1
        assert_eq!(s.lines().count(), 10);
    }
}
