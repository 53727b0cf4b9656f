//! Quotient rings by two-sided ideals, with canonical coset encodings.

use crate::error::RingError;
use crate::ring::{FiniteRing, TableSource, UnvalidatedRing};
use crate::subsets::Ideal;

/// The projection/section pair of a quotient construction.
///
/// The projection is a surjective unital ring homomorphism; the section maps
/// each coset to its canonical representative (the least element index of
/// the coset), so `projection . section` is the identity on the target.
pub struct QuotientMap {
    source: FiniteRing,
    target: FiniteRing,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    /// Coset index of a source element.
    pub fn project(&self, i: usize) -> usize {
        self.projection[i]
    }

    /// Canonical representative of a coset.
    pub fn section(&self, c: usize) -> usize {
        self.section[c]
    }

    /// Full-enumeration check that the projection is an additive,
    /// multiplicative, unital surjection and the section splits it.
    pub fn verify(&self) -> Result<(), RingError> {
        let src = &self.source;
        let tgt = &self.target;
        let nq = tgt.order();
        let mut hit = vec![false; nq];
        for i in src.elements() {
            hit[self.project(i)] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(RingError::NotAnIdeal("projection not surjective".into()));
        }
        if self.project(src.zero()) != tgt.zero() || self.project(src.one()) != tgt.one() {
            return Err(RingError::NotAnIdeal("projection not unital".into()));
        }
        for c in 0..nq {
            if self.project(self.section(c)) != c {
                return Err(RingError::NotAnIdeal("section is not a right inverse".into()));
            }
        }
        for i in src.elements() {
            let pi = self.project(i);
            if self.section(pi) > i && self.project(self.section(pi)) == pi {
                // canonical representative must be the least coset member
                return Err(RingError::NotAnIdeal("non-canonical representative".into()));
            }
            for j in src.elements() {
                let pj = self.project(j);
                if self.project(src.add(i, j)) != tgt.add(pi, pj)
                    || self.project(src.mul(i, j)) != tgt.mul(pi, pj)
                {
                    return Err(RingError::NotAnIdeal(format!(
                        "projection not a homomorphism at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

struct QuotientSource {
    base: FiniteRing,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl TableSource for QuotientSource {
    fn add(&self, i: usize, j: usize) -> usize {
        self.projection[self.base.add(self.section[i], self.section[j])]
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        self.projection[self.base.mul(self.section[i], self.section[j])]
    }
    fn neg(&self, i: usize) -> usize {
        self.projection[self.base.neg(self.section[i])]
    }
    fn label(&self, i: usize) -> String {
        format!("[{}]", self.base.label(self.section[i]))
    }
}

/// Quotient by a proper two-sided ideal, with a given display name.
///
/// Cosets are enumerated in increasing order of their least representative,
/// which fixes the canonical element encoding of the quotient.
pub fn quotient_ring_named(
    ring: &FiniteRing,
    ideal: &Ideal,
    name: impl Into<String>,
) -> Result<(FiniteRing, QuotientMap), RingError> {
    if !ideal.is_proper() {
        return Err(RingError::ImproperIdeal);
    }
    let n = ring.order();
    let mut projection = vec![usize::MAX; n];
    let mut section = Vec::new();
    for i in 0..n {
        if projection[i] != usize::MAX {
            continue;
        }
        let coset = section.len();
        section.push(i);
        // The coset of i is i + I (the ideal is an additive subgroup).
        for &d in ideal.members() {
            projection[ring.add(i, d)] = coset;
        }
        debug_assert_eq!(projection[i], coset);
    }
    let source = QuotientSource {
        base: ring.clone(),
        projection: projection.clone(),
        section: section.clone(),
    };
    let qorder = section.len();
    let qzero = projection[ring.zero()];
    let qone = projection[ring.one()];
    let target = UnvalidatedRing::from_source(name, qorder, qzero, qone, Box::new(source))?
        .validate()?;
    let map = QuotientMap {
        source: ring.clone(),
        target: target.clone(),
        projection,
        section,
    };
    Ok((target, map))
}

/// Quotient with the default derived name `<ring>/I`.
pub fn quotient_ring(
    ring: &FiniteRing,
    ideal: &Ideal,
) -> Result<(FiniteRing, QuotientMap), RingError> {
    quotient_ring_named(ring, ideal, format!("{}/I", ring.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, ConstructionSpec};
    use crate::subsets::ideal_closure;

    fn zmod(n: usize) -> FiniteRing {
        build(&ConstructionSpec::Zmod(n)).unwrap()
    }

    #[test]
    fn z8_mod_04_is_z4() {
        let z8 = zmod(8);
        let ideal = ideal_closure(&z8, &[4]).unwrap();
        let (q, map) = quotient_ring(&z8, &ideal).unwrap();
        assert_eq!(q.order(), 4);
        let z4 = zmod(4);
        assert!(q.tables_identical(&z4));
        map.verify().unwrap();
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let r = zmod(6);
        let zero_ideal = ideal_closure(&r, &[]).unwrap();
        let (q, map) = quotient_ring(&r, &zero_ideal).unwrap();
        assert!(q.tables_identical(&r));
        map.verify().unwrap();
    }

    #[test]
    fn improper_ideal_rejected() {
        let r = zmod(6);
        let whole = ideal_closure(&r, &[1]).unwrap();
        assert!(!whole.is_proper());
        assert!(matches!(
            quotient_ring(&r, &whole),
            Err(RingError::ImproperIdeal)
        ));
    }
}
