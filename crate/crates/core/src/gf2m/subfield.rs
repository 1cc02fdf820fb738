//! The subfield GF(2^n) of GF(2^2n), with an explicit isomorphism onto a
//! standalone degree-n field so that Kloosterman tables keyed by small-field
//! residues can be shared with the quadratic extension.

use once_cell::sync::OnceCell;

use super::binary_field::{BinaryField, FieldElement};
use crate::error::{Error, Result};

const NOT_IN_SUBFIELD: u16 = u16::MAX;

#[derive(Debug)]
pub struct Subfield {
    field: BinaryField,
    /// small residue -> big residue (a field isomorphism onto the subfield)
    embed: Vec<u16>,
    /// big residue -> small residue; NOT_IN_SUBFIELD off the subfield
    project: Vec<u16>,
    /// K_n values keyed by small residue; filled on first closed-form use
    /// or installed from a persisted table.
    kloosterman: OnceCell<Vec<i64>>,
}

impl Subfield {
    /// Builds the degree-n subfield view of `big` (degree 2n), using the
    /// default degree-n reduction polynomial for the standalone field.
    pub(super) fn new(big: &BinaryField) -> Result<Self> {
        let n = big.degree() / 2;
        let small = BinaryField::with_default_poly(n)?;
        let q = 1u32 << n;

        // Subfield elements of the big field: 0 and the powers of g^(q+1).
        // The embedding sends the small generator basis t^i to r^i where r
        // is a root of the small reduction polynomial among those elements.
        let step = big.order() / small.order().max(1);
        let mut root = None;
        for k in 0..small.order().max(1) {
            let y = big.exp(k * step);
            let mut acc = FieldElement::ZERO;
            for i in 0..=n {
                if small.poly() >> i & 1 == 1 {
                    acc = big.add(acc, big.pow(y, i64::from(i)));
                }
            }
            if acc.is_zero() {
                root = match root {
                    None => Some(y),
                    Some(r) if y < r => Some(y),
                    keep => keep,
                };
            }
        }
        let root = root.expect("small reduction polynomial splits in the subfield");

        let mut powers = vec![FieldElement::ONE; n as usize];
        for i in 1..n as usize {
            powers[i] = big.mul(powers[i - 1], root);
        }
        let mut embed = vec![0u16; q as usize];
        let mut project = vec![NOT_IN_SUBFIELD; big.size() as usize];
        for v in 0..q as u16 {
            let mut acc = FieldElement::ZERO;
            for (i, &p) in powers.iter().enumerate() {
                if v >> i & 1 == 1 {
                    acc = big.add(acc, p);
                }
            }
            embed[v as usize] = acc.0;
            debug_assert_eq!(project[acc.0 as usize], NOT_IN_SUBFIELD);
            project[acc.0 as usize] = v;
        }

        Ok(Subfield { field: small, embed, project, kloosterman: OnceCell::new() })
    }

    /// The standalone GF(2^n) with the default degree-n polynomial.
    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    /// Maps a small-field residue into the big field.
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.embed[a.0 as usize])
    }

    /// Maps a big-field element into the small field; `None` if it does not
    /// lie in the subfield.
    pub fn project(&self, a: FieldElement) -> Option<FieldElement> {
        match self.project[a.0 as usize] {
            NOT_IN_SUBFIELD => None,
            v => Some(FieldElement(v)),
        }
    }

    /// Looks up K_n at a big-field subfield element, computing and caching
    /// the whole table on first use unless one was installed beforehand.
    pub fn kloosterman_at(&self, a_big: FieldElement) -> Result<i64> {
        let a = self
            .project(a_big)
            .ok_or(Error::NotInSubfield("kloosterman argument"))?;
        let table = self
            .kloosterman
            .get_or_init(|| crate::expsums::kloosterman_all(&self.field));
        Ok(table[a.0 as usize])
    }

    /// Installs precomputed K_n values keyed by small residue. Returns an
    /// error if a table is already present or the length is wrong; the values
    /// themselves are assumed validated by the caller.
    pub fn install_kloosterman(&self, values: Vec<i64>) -> Result<()> {
        if values.len() != self.field.size() as usize {
            return Err(Error::TableInvariant(format!(
                "expected {} kloosterman entries, got {}",
                self.field.size(),
                values.len()
            )));
        }
        self.kloosterman
            .set(values)
            .map_err(|_| Error::TableInvariant("kloosterman table already installed".into()))
    }
}
