//! Expansion of the rational block Tr(a/(x^(q-1)+b)) into its ordinary
//! Dillon-exponent trace polynomial, and pointwise verification against the
//! rational form.

use std::io::Write;
use std::sync::Arc;

use crate::boolfun::{
    cyclotomic_coset_min, cyclotomic_coset_size, from_trace_poly, TracePoly, TruthTable,
};
use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldSpec};

/// The ordinary polynomial form of a rational block: only exponents
/// j(q-1) for j = 1..q, the top exponent q²-1, and a constant appear.
///
/// `coeffs[j]` (j = 1..=q) is the full coefficient of x^(j(q-1)) inside the
/// trace. `x_top_coeff` is the x^(q²-1) coefficient of the expansion of
/// 1/(x^(q-1)+b): the numerator coefficient a is deliberately not folded
/// into it, so the bent case is visible as Tr(a·x_top_coeff) = 0. The
/// constant is the bit Tr(a·b^(q²-2)).
#[derive(Debug, Clone)]
pub struct DillonPolynomial {
    field: Arc<FieldSpec>,
    a: FieldElement,
    b: FieldElement,
    /// indexed by j in 1..=q; slot 0 is unused
    coeffs: Vec<FieldElement>,
    constant: u8,
    x_top_coeff: FieldElement,
}

impl PartialEq for DillonPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field)
            && self.coeffs == other.coeffs
            && self.constant == other.constant
            && self.x_top_coeff == other.x_top_coeff
    }
}
impl Eq for DillonPolynomial {}

/// Expands Tr(a/(x^(q-1)+b)) into Dillon-exponent form. For b on the unit
/// circle the coefficient of x^(j(q-1)) is a·b^(-1-j) for odd j and zero
/// for even j, with top coefficient 1/b; off the circle the coefficient is
/// (a·b̄/(1+b·b̄))·b^(-j) for every j, with top coefficient 1/(b(1+b·b̄)).
pub fn expand_block(
    field: &Arc<FieldSpec>,
    a: FieldElement,
    b: FieldElement,
) -> Result<DillonPolynomial> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let q = field.q();
    let one = FieldElement::ONE;
    let mut coeffs = vec![FieldElement::ZERO; q as usize + 1];
    let x_top = if field.in_circle(b) {
        for j in 1..=q as i64 {
            if j % 2 == 1 {
                coeffs[j as usize] = field.mul(a, field.pow(b, -1 - j));
            }
        }
        field.inv(b)
    } else {
        let nb = field.norm(b);
        let scale = field.div(field.mul(a, field.conjugate(b)), field.add(one, nb));
        for j in 1..=q as i64 {
            coeffs[j as usize] = field.mul(scale, field.pow(b, -j));
        }
        field.inv(field.mul(b, field.add(one, nb)))
    };
    let constant = field.trace_bit(field.mul(a, field.pow(b, i64::from(field.order()) - 1)));
    Ok(DillonPolynomial { field: field.clone(), a, b, coeffs, constant, x_top_coeff: x_top })
}

impl DillonPolynomial {
    /// The (a, b) pair the block was expanded from.
    pub fn block_params(&self) -> (FieldElement, FieldElement) {
        (self.a, self.b)
    }

    pub fn coefficient(&self, j: u32) -> FieldElement {
        self.coeffs[j as usize]
    }

    pub fn constant(&self) -> u8 {
        self.constant
    }

    pub fn x_top_coeff(&self) -> FieldElement {
        self.x_top_coeff
    }

    /// Evaluates the polynomial form at one point:
    /// constant + Tr(a·x_top·x^(q²-1)) + Σ_j Tr(coeffs[j]·x^(j(q-1))).
    pub fn eval(&self, x: FieldElement) -> u8 {
        let f = &self.field;
        if x.is_zero() {
            return self.constant;
        }
        let q = i64::from(f.q());
        let mut acc = f.mul(self.a, self.x_top_coeff); // x^(q²-1) = 1 off zero
        // powers of x^(q-1) accumulated multiplicatively
        let step = f.pow(x, q - 1);
        let mut xp = FieldElement::ONE;
        for j in 1..=q as usize {
            xp = f.mul(xp, step);
            acc = f.add(acc, f.mul(self.coeffs[j], xp));
        }
        self.constant ^ f.trace_bit(acc)
    }

    /// The whole table of the polynomial form.
    pub fn to_table(&self) -> TruthTable {
        TruthTable::from_fn(self.field.clone(), |x| self.eval(x))
    }

    /// Collapses the Dillon-exponent terms into the canonical
    /// trace-polynomial representation (merging conjugate cosets), suitable
    /// for [`from_trace_poly`].
    pub fn to_trace_poly(&self) -> TracePoly {
        let f = &self.field;
        let order = f.order();
        let q = f.q();
        let m = i64::from(f.m());
        let mut by_rep: std::collections::BTreeMap<u32, FieldElement> =
            std::collections::BTreeMap::new();
        for j in 1..=q {
            let c = self.coeffs[j as usize];
            if c.is_zero() {
                continue;
            }
            let e = (j * (q - 1)) % order;
            let rep = cyclotomic_coset_min(e, order);
            // e = rep·2^k; Tr(c x^e) = Tr(c^(2^(m-k)) x^rep)
            let mut k = 0i64;
            let mut r = rep;
            while r != e {
                r = (r * 2) % order;
                k += 1;
            }
            let adj = f.pow(c, 1i64 << ((m - k) % m).rem_euclid(m));
            let slot = by_rep.entry(rep).or_insert(FieldElement::ZERO);
            *slot = f.add(*slot, adj);
        }
        // fold the absolute trace down to each coset subfield
        let mut terms = Vec::new();
        for (rep, total) in by_rep {
            let o = cyclotomic_coset_size(rep, order);
            let mut folded = total;
            let mut s = total;
            for _ in 1..(f.m() / o) {
                for _ in 0..o {
                    s = f.mul(s, s);
                }
                folded = f.add(folded, s);
            }
            if !folded.is_zero() {
                terms.push((rep, folded));
            }
        }
        // Tr(T·x^(q²-1)) contributes Tr(T) off zero: constant + epsilon part
        let top_bit = f.trace_bit(f.mul(self.a, self.x_top_coeff));
        let epsilon = top_bit;
        let a0 = self.constant ^ top_bit;
        if a0 == 1 {
            terms.insert(0, (0, FieldElement::ONE));
        }
        TracePoly::new(terms, epsilon)
    }

    /// CSV rows `exponent,coeff_hex` sorted by exponent; the constant bit is
    /// the exponent-0 row and the x^(q²-1) coefficient is the last row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let f = &self.field;
        let q = f.q();
        writeln!(w, "exponent,coeff_hex")?;
        writeln!(w, "0,{:#X}", self.constant)?;
        for j in 1..=q {
            writeln!(w, "{},{}", j * (q - 1), self.coeffs[j as usize])?;
        }
        writeln!(w, "{},{}", f.order(), self.x_top_coeff)?;
        Ok(())
    }
}

/// True iff the expanded polynomial form and the rational form agree on all
/// 2^m points.
pub fn verify_expansion(field: &Arc<FieldSpec>, a: FieldElement, b: FieldElement) -> Result<bool> {
    let poly = expand_block(field, a, b)?;
    let rational = crate::boolfun::rational_block(field, a, b)?;
    Ok(field.elements().all(|x| poly.eval(x) == rational.get(x)))
}

/// Convenience: the expansion routed through the canonical trace-polynomial
/// representation and [`from_trace_poly`]; used to cross-check the
/// coset-merging path.
pub fn expansion_via_trace_poly(
    field: &Arc<FieldSpec>,
    a: FieldElement,
    b: FieldElement,
) -> Result<TruthTable> {
    let poly = expand_block(field, a, b)?;
    from_trace_poly(field, &poly.to_trace_poly())
}
