//! Arithmetic for GF(2^m) with m = 2n: traces, conjugation, the unit circle,
//! polar decomposition and the quadratic-roots-in-the-circle test.
//!
//! Throughout, q = 2^n, conjugation is x̄ = x^q, and the unit circle is
//! U = { λ : λ^(q+1) = 1 }, of size q + 1.

mod binary_field;
mod subfield;

pub use binary_field::{BinaryField, FieldElement, MAX_DEGREE};
pub use subfield::Subfield;

use std::sync::Arc;

use crate::error::{Error, Result};

/// A validated GF(2^2n) together with its quadratic structure.
///
/// Immutable after construction; all operations are pure, so a `FieldSpec`
/// can be shared freely across threads (typically behind an [`Arc`]).
#[derive(Debug)]
pub struct FieldSpec {
    field: BinaryField,
    n: u32,
    q: u32,
    conj: Vec<u16>,
    /// The unit circle as powers of generator^(q-1); circle[0] = 1.
    circle: Vec<u16>,
    subfield: Subfield,
}

/// The q+1 solutions of λ^(q+1) = 1, ordered by powers of the circle
/// generator w^(q-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCircle {
    pub elements: Vec<FieldElement>,
}

/// Builds a validated field; `reduction_poly = None` selects the built-in
/// primitive polynomial for that degree.
pub fn field_new(m: u32, reduction_poly: Option<u32>) -> Result<FieldSpec> {
    FieldSpec::new(m, reduction_poly)
}

impl FieldSpec {
    pub fn new(m: u32, reduction_poly: Option<u32>) -> Result<Self> {
        if m < 2 || m > MAX_DEGREE || m % 2 != 0 {
            return Err(Error::UnsupportedDegree { m, even_required: true });
        }
        let field = match reduction_poly {
            Some(p) => BinaryField::new(m, p)?,
            None => BinaryField::with_default_poly(m)?,
        };
        let n = m / 2;
        let q = 1u32 << n;

        let mut conj = vec![0u16; field.size() as usize];
        for a in field.elements() {
            conj[a.0 as usize] = field.pow(a, i64::from(q)).0;
        }
        let circle: Vec<u16> = (0..=q).map(|k| field.exp(k * (q - 1)).0).collect();
        let subfield = Subfield::new(&field)?;
        Ok(FieldSpec { field, n, q, conj, circle, subfield })
    }

    pub fn shared(m: u32, reduction_poly: Option<u32>) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(m, reduction_poly)?))
    }

    pub fn base(&self) -> &BinaryField {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.field.degree()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// q = 2^n.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn size(&self) -> u32 {
        self.field.size()
    }

    pub fn poly(&self) -> u32 {
        self.field.poly()
    }

    pub fn generator(&self) -> FieldElement {
        self.field.generator()
    }

    /// generator^k, for the `w^k` notation used in reports and tests.
    pub fn gen_pow(&self, k: i64) -> FieldElement {
        self.field.pow(self.field.generator(), k)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        self.field.elements()
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        self.field.nonzero_elements()
    }

    // --- arithmetic (delegated) ---

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.field.add(a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.field.mul(a, b)
    }

    /// inv(0) = 0, making rational trace expressions total.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.field.inv(a)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.field.div(a, b)
    }

    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        self.field.pow(a, e)
    }

    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.field.sqrt(a)
    }

    pub fn log(&self, a: FieldElement) -> Option<u32> {
        self.field.log(a)
    }

    pub fn exp(&self, k: u32) -> FieldElement {
        self.field.exp(k)
    }

    // --- quadratic structure ---

    /// x̄ = x^(2^n); an involutive automorphism fixing exactly GF(2^n).
    pub fn conjugate(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.conj[a.0 as usize])
    }

    /// The norm x·x̄ onto GF(2^n).
    pub fn norm(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.conjugate(a))
    }

    /// Whether a lies in the subfield GF(2^n).
    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.conj[a.0 as usize] == a.0
    }

    /// Whether a lies on the unit circle (a·ā = 1).
    pub fn in_circle(&self, a: FieldElement) -> bool {
        self.norm(a) == FieldElement::ONE
    }

    /// Absolute trace Tr_1^m as a bit.
    pub fn trace_bit(&self, a: FieldElement) -> u8 {
        self.field.trace_bit(a)
    }

    /// Relative trace Tr_n^(2n)(a) = a + ā, a subfield element.
    pub fn rel_trace(&self, a: FieldElement) -> FieldElement {
        self.add(a, self.conjugate(a))
    }

    /// Subfield trace Tr_1^n as a bit; the argument must lie in GF(2^n).
    pub fn sub_trace_bit(&self, a: FieldElement) -> u8 {
        debug_assert!(self.in_subfield(a));
        let mut t = a;
        let mut s = a;
        for _ in 1..self.n {
            s = self.mul(s, s);
            t = self.add(t, s);
        }
        debug_assert!(t.0 <= 1);
        t.0 as u8
    }

    /// Tr_k^m(a) = a + a^(2^k) + ... for any k dividing m; lands in GF(2^k).
    pub fn trace(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        let m = self.m();
        if k == 0 || m % k != 0 {
            return Err(Error::InvalidTraceTower { k, m });
        }
        let mut t = a;
        let mut s = a;
        for _ in 1..(m / k) {
            for _ in 0..k {
                s = self.mul(s, s);
            }
            t = self.add(t, s);
        }
        Ok(t)
    }

    /// The subfield view, carrying the standalone GF(2^n) and the shared
    /// Kloosterman cache.
    pub fn subfield(&self) -> &Subfield {
        &self.subfield
    }

    // --- unit circle ---

    pub fn unit_circle(&self) -> UnitCircle {
        UnitCircle { elements: self.circle.iter().map(|&v| FieldElement(v)).collect() }
    }

    pub fn circle_len(&self) -> usize {
        self.circle.len()
    }

    /// The k-th circle element (w^(q-1))^k.
    pub fn circle_elt(&self, k: usize) -> FieldElement {
        FieldElement(self.circle[k % self.circle.len()])
    }

    pub fn circle_iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.circle.iter().map(|&v| FieldElement(v))
    }

    /// For x != 0, the circle index of x^(q-1); this is log(x) mod (q+1).
    pub fn dillon_index(&self, x: FieldElement) -> Option<usize> {
        self.log(x).map(|k| (k % (self.q + 1)) as usize)
    }

    /// Unique decomposition x = λ·y with λ in U and y in GF(2^n)*.
    pub fn polar_decompose(&self, x: FieldElement) -> Result<(FieldElement, FieldElement)> {
        if x.is_zero() {
            return Err(Error::ZeroArgument("x"));
        }
        let y = self.sqrt(self.norm(x));
        let lambda = self.div(x, y);
        debug_assert!(self.in_circle(lambda) && self.in_subfield(y));
        Ok((lambda, y))
    }

    /// The parameterization u -> (u + A)/(u + Ā) of U \ {1} by GF(2^n),
    /// defined for any fixed A outside the subfield.
    pub fn circle_param(&self, u: FieldElement, a: FieldElement) -> Result<FieldElement> {
        if self.in_subfield(a) {
            return Err(Error::InSubfield("A"));
        }
        debug_assert!(self.in_subfield(u));
        Ok(self.div(self.add(u, a), self.add(u, self.conjugate(a))))
    }

    /// Number of roots of x^2 + ax + b that lie on the unit circle, for
    /// nonzero a, b. Returns 0, 1 or 2 without solving the equation:
    /// two circle roots iff b = a/ā and Tr_1^n(1/(a·ā)) = 1; one iff
    /// b != a/ā and (1+b·b̄)(1+a·ā+b·b̄) + a²b̄ + ā²b = 0.
    pub fn quadratic_roots_in_circle(&self, a: FieldElement, b: FieldElement) -> Result<u8> {
        if a.is_zero() {
            return Err(Error::ZeroArgument("a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroArgument("b"));
        }
        // no roots in the whole field unless Tr(b/a^2) = 0
        if self.trace_bit(self.div(b, self.square(a))) == 1 {
            return Ok(0);
        }
        let na = self.norm(a);
        if b == self.div(a, self.conjugate(a)) {
            return Ok(if self.sub_trace_bit(self.inv(na)) == 1 { 2 } else { 0 });
        }
        let nb = self.norm(b);
        let one = FieldElement::ONE;
        let term = self.mul(self.add(one, nb), self.add(self.add(one, na), nb));
        let cross = self.add(
            self.mul(self.square(a), self.conjugate(b)),
            self.mul(self.square(self.conjugate(a)), b),
        );
        Ok(if self.add(term, cross).is_zero() { 1 } else { 0 })
    }

    fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// True when the two specs describe the same field.
    pub fn same_field(&self, other: &FieldSpec) -> bool {
        self.m() == other.m() && self.poly() == other.poly()
    }
}

/// Parses a hex-encoded bit-vector such as `0x5B` (case-insensitive,
/// prefix optional).
pub fn parse_poly_hex(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|e| Error::Format(format!("bad hex `{s}`: {e}")))
}

/// Hex encoding used in all file formats, e.g. `0x5B`.
pub fn poly_hex(p: u32) -> String {
    format!("{p:#X}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f6() -> FieldSpec {
        FieldSpec::new(6, None).unwrap()
    }

    #[test]
    fn default_polys_match_pinned_examples() {
        assert_eq!(f6().poly(), 0x5B);
        assert_eq!(FieldSpec::new(12, None).unwrap().poly(), 0x10EB);
        assert_eq!(poly_hex(0x5B), "0x5B");
        assert_eq!(parse_poly_hex("0x5b").unwrap(), 0x5B);
    }

    #[test]
    fn odd_degree_rejected() {
        assert!(matches!(
            FieldSpec::new(7, None),
            Err(Error::UnsupportedDegree { m: 7, .. })
        ));
    }

    #[test]
    fn conjugation_involution_and_fixed_field() {
        let f = f6();
        let mut fixed = 0;
        for a in f.elements() {
            assert_eq!(f.conjugate(f.conjugate(a)), a);
            if f.in_subfield(a) {
                fixed += 1;
            }
        }
        assert_eq!(fixed, 8); // |GF(2^3)|
        let w = f.generator();
        assert_eq!(f.conjugate(w), f.gen_pow(8));
    }

    #[test]
    fn conjugation_is_additive_and_multiplicative() {
        let f = f6();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.conjugate(f.add(a, b)), f.add(f.conjugate(a), f.conjugate(b)));
                assert_eq!(f.conjugate(f.mul(a, b)), f.mul(f.conjugate(a), f.conjugate(b)));
            }
        }
    }

    #[test]
    fn unit_circle_size_and_membership() {
        let f = f6();
        let u = f.unit_circle();
        assert_eq!(u.elements.len(), 9);
        assert!(u.elements.contains(&FieldElement::ONE));
        for &eta in &u.elements {
            assert_eq!(f.norm(eta), FieldElement::ONE);
        }
        assert!(f.in_circle(f.gen_pow(7)));
        let f12 = FieldSpec::new(12, None).unwrap();
        assert_eq!(f12.unit_circle().elements.len(), 65);
    }

    #[test]
    fn trace_tower_transitivity() {
        for m in [6u32, 8, 10, 12] {
            let f = FieldSpec::new(m, None).unwrap();
            let n = f.n();
            for a in f.elements() {
                let rel = f.trace(a, n).unwrap();
                assert_eq!(rel, f.rel_trace(a));
                assert!(f.in_subfield(rel));
                let full = f.trace(a, 1).unwrap();
                assert_eq!(full.0 as u8, f.trace_bit(a));
                assert_eq!(f.sub_trace_bit(rel), f.trace_bit(a));
            }
            assert!(matches!(f.trace(FieldElement::ONE, 5), Err(_)) == (m % 5 != 0));
        }
    }

    #[test]
    fn trace_examples() {
        let f = f6();
        assert_eq!(f.trace_bit(FieldElement::ZERO), 0);
        assert_eq!(f.trace_bit(f.generator()), 0); // frozen power-sum value
        for a in f.elements() {
            if f.in_subfield(a) {
                assert_eq!(f.rel_trace(a), FieldElement::ZERO); // a + a = 0
            }
        }
    }

    #[test]
    fn polar_decomposition_bijection() {
        for m in [6u32, 8, 10, 12] {
            let f = FieldSpec::new(m, None).unwrap();
            let mut seen = std::collections::HashSet::new();
            for x in f.nonzero_elements() {
                let (lambda, y) = f.polar_decompose(x).unwrap();
                assert!(f.in_circle(lambda));
                assert!(f.in_subfield(y) && !y.is_zero());
                assert_eq!(f.mul(lambda, y), x);
                assert!(seen.insert((lambda, y)));
            }
            assert_eq!(seen.len(), f.order() as usize);
        }
        assert!(f6().polar_decompose(FieldElement::ZERO).is_err());
    }

    #[test]
    fn polar_branches() {
        let f = f6();
        for x in f.nonzero_elements() {
            let (lambda, y) = f.polar_decompose(x).unwrap();
            if f.in_subfield(x) {
                assert_eq!((lambda, y), (FieldElement::ONE, x));
            }
            if f.in_circle(x) {
                assert_eq!((lambda, y), (x, FieldElement::ONE));
            }
        }
    }

    #[test]
    fn circle_param_bijection_onto_punctured_circle() {
        let f = f6();
        let a = f.generator();
        let mut image = std::collections::HashSet::new();
        for u in f.elements().filter(|&u| f.in_subfield(u)) {
            let eta = f.circle_param(u, a).unwrap();
            assert!(f.in_circle(eta));
            assert_ne!(eta, FieldElement::ONE);
            assert!(image.insert(eta));
        }
        assert_eq!(image.len(), f.q() as usize);
        // u = 0 gives A/Ā
        assert_eq!(
            f.circle_param(FieldElement::ZERO, a).unwrap(),
            f.div(a, f.conjugate(a))
        );
        assert!(f.circle_param(FieldElement::ONE, FieldElement::ONE).is_err());
    }

    #[test]
    fn quadratic_roots_against_brute_force() {
        for m in [6u32, 8] {
            let f = FieldSpec::new(m, None).unwrap();
            let circle: Vec<FieldElement> = f.circle_iter().collect();
            for a in f.nonzero_elements() {
                for b in f.nonzero_elements() {
                    let brute = circle
                        .iter()
                        .filter(|&&x| {
                            f.add(f.add(f.mul(x, x), f.mul(a, x)), b).is_zero()
                        })
                        .count() as u8;
                    assert_eq!(
                        f.quadratic_roots_in_circle(a, b).unwrap(),
                        brute,
                        "m={m} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_roots_cube_roots_of_unity() {
        // x^2 + x + 1 has the two primitive cube roots of unity as roots;
        // at m=6 these are w^21 and w^42, both on the circle.
        let f = f6();
        assert_eq!(
            f.quadratic_roots_in_circle(FieldElement::ONE, FieldElement::ONE).unwrap(),
            2
        );
        assert!(f.in_circle(f.gen_pow(21)) && f.in_circle(f.gen_pow(42)));
    }

    #[test]
    fn subfield_embedding_is_isomorphism() {
        for m in [2u32, 6, 8, 12] {
            let f = FieldSpec::new(m, None).unwrap();
            let sub = f.subfield();
            let small = sub.field();
            for a in small.elements() {
                assert!(f.in_subfield(sub.embed(a)));
                assert_eq!(sub.project(sub.embed(a)), Some(a));
                for b in small.elements() {
                    assert_eq!(
                        sub.embed(small.add(a, b)),
                        f.add(sub.embed(a), sub.embed(b))
                    );
                    assert_eq!(
                        sub.embed(small.mul(a, b)),
                        f.mul(sub.embed(a), sub.embed(b))
                    );
                }
            }
            // trace commutes with the embedding
            for a in small.elements() {
                assert_eq!(small.trace_bit(a), f.sub_trace_bit(sub.embed(a)));
            }
        }
    }
}
