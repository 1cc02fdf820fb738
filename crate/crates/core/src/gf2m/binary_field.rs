//! Low-level binary field GF(2^m) for 1 <= m <= 16, with eager discrete-log
//! tables so that multiplication, inversion and powering are O(1).

use crate::error::{Error, Result};

/// An element of a binary field, as an m-bit residue in the polynomial basis.
///
/// The value is only meaningful relative to the [`BinaryField`] (or
/// [`FieldSpec`](crate::gf2m::FieldSpec)) it came from; all arithmetic goes
/// through the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Hex encoding of the bit-vector, least-significant bit = constant term.
    pub fn to_hex(self) -> String {
        format!("{:#X}", self.0)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#X}", self.0)
    }
}

/// Default reduction polynomials, one per degree. All are primitive: the
/// residue class of x generates the full multiplicative group. The m=6 and
/// m=12 entries are pinned so that powers of the generator match the worked
/// numerical examples this crate reproduces.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x5B, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x10EB, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

pub const MAX_DEGREE: u32 = 16;

/// GF(2^m) in the polynomial basis of a primitive reduction polynomial.
///
/// The generator is always the residue class of the indeterminate, so a
/// supplied polynomial must be primitive, not merely irreducible.
#[derive(Debug, Clone)]
pub struct BinaryField {
    m: u32,
    poly: u32,
    order: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
    trace_mask: u32,
    /// gram_map[w] = G*w where G[i][j] = Tr(b_i b_j) is the Gram matrix of
    /// the polynomial basis; converts a field element into the coordinate
    /// vector of its trace linear functional.
    gram_map: Vec<u16>,
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, p: u32) -> u32 {
    let dp = poly_degree(p);
    while a != 0 && poly_degree(a) >= dp {
        a ^= p << (poly_degree(a) - dp);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, m: u32) -> bool {
    for d in 1..=(m / 2) {
        for q in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

impl BinaryField {
    /// Builds GF(2^m) over the given reduction polynomial.
    pub fn new(m: u32, poly: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree { m, even_required: false });
        }
        if poly_degree(poly) != m as i32 {
            return Err(Error::PolynomialDegreeMismatch { poly, m });
        }
        if !is_irreducible(poly, m) {
            return Err(Error::ReduciblePolynomial { poly });
        }
        let order = (1u32 << m) - 1;
        let mut exp = vec![0u16; order as usize];
        let mut e: u32 = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            if e == 1 && k > 0 {
                return Err(Error::NonPrimitiveGenerator { poly, order: k as u32 });
            }
            if e == 0 {
                // Only reachable for the degenerate m=1 polynomial `x`.
                return Err(Error::NonPrimitiveGenerator { poly, order: 0 });
            }
            *slot = e as u16;
            e = poly_rem(e << 1, poly);
        }
        if e != 1 {
            return Err(Error::NonPrimitiveGenerator { poly, order: 0 });
        }
        let mut log = vec![0u16; 1 << m];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u16;
        }

        let mut field = BinaryField {
            m,
            poly,
            order,
            exp,
            log,
            trace_mask: 0,
            gram_map: Vec::new(),
        };
        let mut mask = 0u32;
        for i in 0..m {
            if field.trace_by_squaring(FieldElement(1 << i)).0 == 1 {
                mask |= 1 << i;
            }
        }
        field.trace_mask = mask;

        let mut rows = vec![0u32; m as usize];
        for i in 0..m as usize {
            let mut row = 0u32;
            for j in 0..m as usize {
                let prod = field.mul(FieldElement(1 << i), FieldElement(1 << j));
                row |= u32::from(field.trace_bit(prod)) << j;
            }
            rows[i] = row;
        }
        let mut gram_map = vec![0u16; 1 << m];
        for w in 1..(1usize << m) {
            let low = w.trailing_zeros() as usize;
            gram_map[w] = gram_map[w & (w - 1)] ^ rows[low] as u16;
        }
        field.gram_map = gram_map;
        Ok(field)
    }

    /// Builds GF(2^m) over the built-in primitive polynomial for that degree.
    pub fn with_default_poly(m: u32) -> Result<Self> {
        let poly = Self::default_poly(m)
            .ok_or(Error::UnsupportedDegree { m, even_required: false })?;
        Self::new(m, poly)
    }

    pub fn default_poly(m: u32) -> Option<u32> {
        if m == 0 || m > MAX_DEGREE {
            None
        } else {
            Some(DEFAULT_POLYS[m as usize])
        }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Size of the multiplicative group, 2^m - 1.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> u32 {
        1 << self.m
    }

    /// The residue class of x; primitive by construction.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp[usize::from(self.m > 1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size() as u16).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.size() as u16).map(FieldElement)
    }

    /// generator^k.
    pub fn exp(&self, k: u32) -> FieldElement {
        FieldElement(self.exp[(k % self.order) as usize])
    }

    /// Discrete log base the generator; `None` for 0.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(u32::from(self.log[a.0 as usize]))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let k = u32::from(self.log[a.0 as usize]) + u32::from(self.log[b.0 as usize]);
        FieldElement(self.exp[(k % self.order) as usize])
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Multiplicative inverse, with inv(0) = 0: the 1/0 = 0 convention makes
    /// every rational trace evaluation total.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let k = self.order - u32::from(self.log[a.0 as usize]);
        FieldElement(self.exp[(k % self.order) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// a^e for an arbitrary integer exponent, reduced mod 2^m - 1 for a
    /// nonzero base. 0^0 = 1, and 0^e = 0 otherwise (1/0 = 0 convention).
    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let k = (i64::from(self.log[a.0 as usize]) * e).rem_euclid(i64::from(self.order));
        FieldElement(self.exp[k as usize])
    }

    /// The field square root x^(2^(m-1)); total and deterministic.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.pow(a, 1 << (self.m - 1))
    }

    /// Absolute trace Tr_1^m as a bit.
    pub fn trace_bit(&self, a: FieldElement) -> u8 {
        ((u32::from(a.0) & self.trace_mask).count_ones() & 1) as u8
    }

    fn trace_by_squaring(&self, a: FieldElement) -> FieldElement {
        let mut t = a;
        let mut s = a;
        for _ in 1..self.m {
            s = self.square(s);
            t = self.add(t, s);
        }
        t
    }

    /// Coordinate vector of the linear functional x -> Tr(wx), i.e. G*w for
    /// the Gram matrix G of the polynomial basis.
    pub fn linear_coords(&self, w: FieldElement) -> u16 {
        self.gram_map[w.0 as usize]
    }
}
