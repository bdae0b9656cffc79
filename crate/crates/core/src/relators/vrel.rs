//! Finite V-relation tables and their algebra: identity, dual, and the
//! matrix-multiplication composition over the quantale.

use crate::error::Error;
use crate::quantale::{Quantale, QuantaleElem};
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

/// A V-relation `α : X ⇸ Y` over finite carriers, realized as a table plus
/// an explicit default for unlisted pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRelation<E: Ord + Clone> {
    quantale: Quantale,
    default: QuantaleElem,
    left: Vec<E>,
    right: Vec<E>,
    table: BTreeMap<(E, E), QuantaleElem>,
}

impl<E: Ord + Clone> VRelation<E> {
    pub fn new(
        quantale: Quantale,
        default: QuantaleElem,
        left: Vec<E>,
        right: Vec<E>,
    ) -> VRelation<E> {
        VRelation { quantale, default, left, right, table: BTreeMap::new() }
    }

    /// The identity relation: `k` on the diagonal, `⊥` elsewhere.
    pub fn identity(quantale: Quantale, carrier: Vec<E>) -> VRelation<E> {
        let mut rel = VRelation::new(quantale, quantale.bot(), carrier.clone(), carrier.clone());
        for x in carrier {
            rel.table.insert((x.clone(), x), quantale.unit());
        }
        rel
    }

    pub fn quantale(&self) -> Quantale {
        self.quantale
    }

    pub fn left_carrier(&self) -> &[E] {
        &self.left
    }

    pub fn right_carrier(&self) -> &[E] {
        &self.right
    }

    pub fn set(&mut self, x: E, y: E, v: QuantaleElem) -> Result<()> {
        if v.quantale() != self.quantale {
            return Err(Error::QuantaleMismatch {
                expected: self.quantale.name().to_string(),
                found: v.quantale().name().to_string(),
            });
        }
        self.table.insert((x, y), v);
        Ok(())
    }

    /// Total lookup: the table value or the declared default.
    pub fn get(&self, x: &E, y: &E) -> QuantaleElem {
        self.table.get(&(x.clone(), y.clone())).cloned().unwrap_or_else(|| self.default.clone())
    }

    /// The dual relation `α°(y, x) = α(x, y)`.
    pub fn dual(&self) -> VRelation<E> {
        VRelation {
            quantale: self.quantale,
            default: self.default.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            table: self.table.iter().map(|((x, y), v)| ((y.clone(), x.clone()), v.clone())).collect(),
        }
    }

    /// Composition `(β · α)(x, z) = ⋁_y α(x, y) ⊗ β(y, z)` for
    /// `α : X ⇸ Y`, `β : Y ⇸ Z` (`self` is `β`, the left factor).
    pub fn compose_after(&self, alpha: &VRelation<E>) -> Result<VRelation<E>> {
        if self.quantale != alpha.quantale {
            return Err(Error::QuantaleMismatch {
                expected: alpha.quantale.name().to_string(),
                found: self.quantale.name().to_string(),
            });
        }
        let mut mid_a = alpha.right.clone();
        let mut mid_b = self.left.clone();
        mid_a.sort();
        mid_a.dedup();
        mid_b.sort();
        mid_b.dedup();
        if mid_a != mid_b {
            return Err(Error::CarrierMismatch("middle carriers differ in composition".to_string()));
        }
        let q = self.quantale;
        let mut out = VRelation::new(q, q.bot(), alpha.left.clone(), self.right.clone());
        for x in &alpha.left {
            for z in &self.right {
                let mut terms = Vec::new();
                for y in &mid_a {
                    terms.push(q.tensor(&alpha.get(x, y), &self.get(y, z))?);
                }
                out.table.insert((x.clone(), z.clone()), q.join(terms.iter())?);
            }
        }
        Ok(out)
    }

    /// Pointwise order on relations over the same carriers.
    pub fn leq(&self, other: &VRelation<E>) -> Result<bool> {
        for x in &self.left {
            for y in &self.right {
                if !self.quantale.leq(&self.get(x, y), &other.get(x, y))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExtRat;

    fn law(p: u64, q: u64) -> QuantaleElem {
        Quantale::Lawvere.elem_num(ExtRat::from_ratio(p, q)).unwrap()
    }

    #[test]
    fn identity_is_a_unit_of_composition() {
        let q = Quantale::Lawvere;
        let carrier = alloc::vec![0u32, 1, 2];
        let mut alpha = VRelation::new(q, q.bot(), carrier.clone(), carrier.clone());
        alpha.set(0, 1, law(1, 2)).unwrap();
        alpha.set(1, 2, law(1, 3)).unwrap();
        alpha.set(0, 0, q.unit()).unwrap();
        alpha.set(1, 1, q.unit()).unwrap();
        alpha.set(2, 2, q.unit()).unwrap();
        let id = VRelation::identity(q, carrier);
        let left = alpha.compose_after(&id).unwrap();
        let right = id.compose_after(&alpha).unwrap();
        for x in 0..3u32 {
            for y in 0..3u32 {
                assert_eq!(left.get(&x, &y), alpha.get(&x, &y));
                assert_eq!(right.get(&x, &y), alpha.get(&x, &y));
            }
        }
    }

    #[test]
    fn bool_composition_is_relational_composition() {
        let q = Quantale::Bool;
        let t = q.elem_bool(true).unwrap();
        let carrier = alloc::vec![0u32, 1, 2];
        let mut r = VRelation::new(q, q.bot(), carrier.clone(), carrier.clone());
        r.set(0, 1, t.clone()).unwrap();
        let mut s = VRelation::new(q, q.bot(), carrier.clone(), carrier.clone());
        s.set(1, 2, t.clone()).unwrap();
        let c = s.compose_after(&r).unwrap();
        // Brute force over all pairs.
        for x in 0..3u32 {
            for z in 0..3u32 {
                let expected = (0..3u32)
                    .any(|y| r.get(&x, &y) == t && s.get(&y, &z) == t);
                assert_eq!(c.get(&x, &z) == t, expected);
            }
        }
    }

    #[test]
    fn lawvere_composition_is_min_plus_on_a_chain() {
        let q = Quantale::Lawvere;
        let carrier = alloc::vec![0u32, 1, 2];
        let mut alpha = VRelation::new(q, q.bot(), carrier.clone(), carrier.clone());
        let mut beta = VRelation::new(q, q.bot(), carrier.clone(), carrier.clone());
        for x in 0..3u32 {
            for y in 0..3u32 {
                let d = ExtRat::from_int(x.abs_diff(y) as u64);
                alpha.set(x, y, q.elem_num(d.clone()).unwrap()).unwrap();
                beta.set(x, y, q.elem_num(d).unwrap()).unwrap();
            }
        }
        let c = beta.compose_after(&alpha).unwrap();
        for x in 0..3u32 {
            for z in 0..3u32 {
                // min over y of |x−y| + |y−z| = |x−z| on a chain metric.
                let expected = ExtRat::from_int(x.abs_diff(z) as u64);
                assert_eq!(c.get(&x, &z), q.elem_num(expected).unwrap());
            }
        }
    }

    #[test]
    fn composition_rejects_mismatched_middle_carriers() {
        let q = Quantale::Bool;
        let alpha = VRelation::new(q, q.bot(), alloc::vec![0u32, 1], alloc::vec![0u32, 1]);
        let beta = VRelation::new(q, q.bot(), alloc::vec![5u32, 6], alloc::vec![0u32, 1]);
        assert!(matches!(
            beta.compose_after(&alpha),
            Err(crate::Error::CarrierMismatch(_))
        ));
        let mut wrong = VRelation::new(q, q.bot(), alloc::vec![0u32], alloc::vec![0u32]);
        assert!(wrong.set(0, 0, Quantale::Lawvere.unit()).is_err());
    }

    #[test]
    fn dual_is_involutive() {
        let q = Quantale::UnitInterval;
        let mut alpha = VRelation::new(q, q.unit(), alloc::vec![0u32, 1], alloc::vec![0u32, 1]);
        alpha.set(0, 1, q.elem_num(ExtRat::from_ratio(1, 3)).unwrap()).unwrap();
        assert_eq!(alpha.dual().dual(), alpha);
        assert_eq!(alpha.dual().get(&1, &0), alpha.get(&0, &1));
    }
}
