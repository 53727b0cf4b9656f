//! Canonical element subsets and two-sided ideals.
//!
//! Every subset computation here is a pure function of the (immutable) ring
//! and is memoized on it, so repeated queries are free and concurrent readers
//! need no coordination.

use std::sync::Arc;

use crate::error::RingError;
use crate::ring::{FiniteRing, SubsetData, UnitData};

/// A subset of a ring's carrier with O(1) membership.
#[derive(Clone)]
pub struct ElementSubset {
    ring: FiniteRing,
    data: Arc<SubsetData>,
}

impl ElementSubset {
    pub(crate) fn new(ring: FiniteRing, data: Arc<SubsetData>) -> Self {
        ElementSubset { ring, data }
    }

    pub fn from_members(ring: &FiniteRing, members: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; ring.order()];
        for m in members {
            bits[m] = true;
        }
        ElementSubset {
            ring: ring.clone(),
            data: Arc::new(SubsetData::from_bits(bits)),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.data.bits[i]
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.data.members
    }

    pub fn len(&self) -> usize {
        self.data.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.members.is_empty()
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.data.bits
    }
}

/// A two-sided ideal, stored as a closed subset plus optional generators.
#[derive(Clone)]
pub struct Ideal {
    subset: ElementSubset,
    generators: Option<Vec<usize>>,
}

impl Ideal {
    pub fn subset(&self) -> &ElementSubset {
        &self.subset
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn ring(&self) -> &FiniteRing {
        self.subset.ring()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.subset.contains(i)
    }

    pub fn members(&self) -> &[usize] {
        self.subset.members()
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    /// Whether the ideal is proper, i.e. does not contain the identity.
    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring().one())
    }

    pub(crate) fn from_parts(subset: ElementSubset, generators: Option<Vec<usize>>) -> Self {
        Ideal { subset, generators }
    }

    /// Checks all ideal invariants on the stored subset: contains zero,
    /// closed under addition and negation, and absorbs two-sided products.
    pub fn verify(&self) -> Result<(), RingError> {
        let ring = self.ring();
        let s = &self.subset;
        if !s.contains(ring.zero()) {
            return Err(RingError::NotAnIdeal("missing zero".into()));
        }
        for &a in s.members() {
            if !s.contains(ring.neg(a)) {
                return Err(RingError::NotAnIdeal(format!("not closed under negation at {a}")));
            }
            for &b in s.members() {
                if !s.contains(ring.add(a, b)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under addition at ({a}, {b})"
                    )));
                }
            }
            for r in ring.elements() {
                if !s.contains(ring.mul(r, a)) || !s.contains(ring.mul(a, r)) {
                    return Err(RingError::NotAnIdeal(format!(
                        "not closed under multiplication at ({r}, {a})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The group of units, with a total inverse map on it.
///
/// Detection uses finiteness: if uv = 1 for some v then left multiplication
/// by u is surjective, hence bijective, and vu = 1 follows. The two-sided
/// identity is asserted rather than assumed.
pub fn units(ring: &FiniteRing) -> ElementSubset {
    let data = unit_data(ring);
    ElementSubset::new(ring.clone(), Arc::new(SubsetData::from_bits(data.set.bits.clone())))
}

pub(crate) fn unit_data(ring: &FiniteRing) -> Arc<UnitData> {
    ring.analysis()
        .units
        .get_or_init(|| {
            let n = ring.order();
            let one = ring.one();
            let mut bits = vec![false; n];
            let mut inverse = vec![u32::MAX; n];
            for u in 0..n {
                if let Some(v) = (0..n).find(|&v| ring.mul(u, v) == one) {
                    assert_eq!(
                        ring.mul(v, u),
                        one,
                        "finite ring invariant: one-sided inverses are two-sided"
                    );
                    bits[u] = true;
                    inverse[u] = v as u32;
                }
            }
            Arc::new(UnitData {
                set: SubsetData::from_bits(bits),
                inverse,
            })
        })
        .clone()
}

/// The two-sided inverse of a unit.
pub fn inverse(ring: &FiniteRing, u: usize) -> Result<usize, RingError> {
    if u >= ring.order() {
        return Err(RingError::IndexOutOfRange {
            index: u,
            order: ring.order(),
        });
    }
    let data = unit_data(ring);
    if data.set.contains(u) {
        Ok(data.inverse[u] as usize)
    } else {
        Err(RingError::NotAUnit(u))
    }
}

pub(crate) fn is_unit(ring: &FiniteRing, u: usize) -> bool {
    unit_data(ring).set.contains(u)
}

/// Elements with e*e = e.
pub fn idempotents(ring: &FiniteRing) -> ElementSubset {
    let data = ring
        .analysis()
        .idempotents
        .get_or_init(|| {
            let bits = ring.elements().map(|e| ring.mul(e, e) == e).collect();
            Arc::new(SubsetData::from_bits(bits))
        })
        .clone();
    ElementSubset::new(ring.clone(), data)
}

/// Elements with x^k = 0 for some k. The power sequence of a finite ring is
/// eventually periodic, so iteration stops at the first repeated power.
pub fn nilpotents(ring: &FiniteRing) -> ElementSubset {
    let data = ring
        .analysis()
        .nilpotents
        .get_or_init(|| {
            let n = ring.order();
            let zero = ring.zero();
            let mut bits = vec![false; n];
            let mut seen = vec![usize::MAX; n];
            for x in 0..n {
                let mut p = x;
                loop {
                    if p == zero {
                        bits[x] = true;
                        break;
                    }
                    if seen[p] == x {
                        break; // cycle without reaching zero
                    }
                    seen[p] = x;
                    p = ring.mul(p, x);
                }
            }
            Arc::new(SubsetData::from_bits(bits))
        })
        .clone();
    ElementSubset::new(ring.clone(), data)
}

/// Elements commuting with the whole ring.
pub fn center(ring: &FiniteRing) -> ElementSubset {
    let data = ring
        .analysis()
        .center
        .get_or_init(|| {
            let n = ring.order();
            let bits = (0..n)
                .map(|c| (0..n).all(|x| ring.mul(c, x) == ring.mul(x, c)))
                .collect();
            Arc::new(SubsetData::from_bits(bits))
        })
        .clone();
    ElementSubset::new(ring.clone(), data)
}

/// The smallest two-sided ideal containing `gens`, by worklist closure under
/// addition and two-sided multiplication by every ring element.
pub fn ideal_closure(ring: &FiniteRing, gens: &[usize]) -> Result<Ideal, RingError> {
    for &g in gens {
        if g >= ring.order() {
            return Err(RingError::IndexOutOfRange {
                index: g,
                order: ring.order(),
            });
        }
    }
    let bits = closure_bits(ring, gens, true);
    let subset = ElementSubset::new(ring.clone(), Arc::new(SubsetData::from_bits(bits)));
    Ok(Ideal::from_parts(subset, Some(gens.to_vec())))
}

/// Closure under addition, left multiplication, and (if `two_sided`) right
/// multiplication. Always contains zero.
pub(crate) fn closure_bits(ring: &FiniteRing, gens: &[usize], two_sided: bool) -> Vec<bool> {
    let n = ring.order();
    let mut bits = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let push = |v: usize, bits: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if !bits[v] {
            bits[v] = true;
            members.push(v);
            queue.push(v);
        }
    };
    push(ring.zero(), &mut bits, &mut members, &mut queue);
    for &g in gens {
        push(g, &mut bits, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop() {
        for r in 0..n {
            push(ring.mul(r, x), &mut bits, &mut members, &mut queue);
            if two_sided {
                push(ring.mul(x, r), &mut bits, &mut members, &mut queue);
            }
        }
        // Pairwise sums with everything known so far; later members pick up
        // the remaining pairs when they are popped themselves.
        let snapshot = members.len();
        for idx in 0..snapshot {
            let y = members[idx];
            push(ring.add(x, y), &mut bits, &mut members, &mut queue);
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, ConstructionSpec};

    fn zmod(n: usize) -> FiniteRing {
        build(&ConstructionSpec::Zmod(n)).unwrap()
    }

    fn m2gf2() -> FiniteRing {
        build(&ConstructionSpec::Matrix {
            n: 2,
            base: Box::new(ConstructionSpec::Gf(2)),
        })
        .unwrap()
    }

    #[test]
    fn units_of_z9_match_gcd_oracle() {
        let r = zmod(9);
        let expected: Vec<usize> = (0..9)
            .filter(|&u| {
                // gcd oracle, independent of the table scan
                let mut a = u;
                let mut b = 9;
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                a == 1
            })
            .collect();
        assert_eq!(units(&r).members(), expected.as_slice());
        assert_eq!(units(&r).members(), &[1, 2, 4, 5, 7, 8]);
    }

    #[test]
    fn units_of_gf2_is_one() {
        let r = build(&ConstructionSpec::Gf(2)).unwrap();
        assert_eq!(units(&r).members(), &[1]);
    }

    #[test]
    fn unit_count_of_m2_gf2_is_gl2() {
        // |GL_2(F_2)| = 6, cross-checked by brute-force invertibility below.
        let r = m2gf2();
        let u = units(&r);
        assert_eq!(u.len(), 6);
        let brute: Vec<usize> = r
            .elements()
            .filter(|&a| r.elements().any(|b| r.mul(a, b) == r.one() && r.mul(b, a) == r.one()))
            .collect();
        assert_eq!(u.members(), brute.as_slice());
    }

    #[test]
    fn inverse_is_involutive_and_total_on_units() {
        for ring in [zmod(9), m2gf2(), zmod(12)] {
            let u = units(&ring);
            assert!(u.contains(ring.one()));
            for &a in u.members() {
                let b = inverse(&ring, a).unwrap();
                assert_eq!(ring.mul(a, b), ring.one());
                assert_eq!(ring.mul(b, a), ring.one());
                assert_eq!(inverse(&ring, b).unwrap(), a);
                // closure under multiplication
                for &c in u.members() {
                    assert!(u.contains(ring.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn inverse_of_non_unit_is_domain_error() {
        let r = zmod(9);
        assert!(matches!(inverse(&r, 3), Err(RingError::NotAUnit(3))));
        assert!(matches!(
            inverse(&r, 17),
            Err(RingError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn idempotents_of_z4_and_z6() {
        assert_eq!(idempotents(&zmod(4)).members(), &[0, 1]);
        // brute force e^2 = e mod 6 gives {0, 1, 3, 4}
        assert_eq!(idempotents(&zmod(6)).members(), &[0, 1, 3, 4]);
    }

    #[test]
    fn nilpotents_of_m2_gf2_are_four() {
        // zero plus the three nonzero square-zero matrices
        let r = m2gf2();
        let nil = nilpotents(&r);
        assert_eq!(nil.len(), 4);
        assert!(nil.contains(r.zero()));
        for &x in nil.members() {
            if x != r.zero() {
                assert_eq!(r.mul(x, x), r.zero());
            }
        }
    }

    #[test]
    fn center_is_a_subring() {
        for ring in [m2gf2(), zmod(12)] {
            let c = center(&ring);
            assert!(c.contains(ring.zero()));
            assert!(c.contains(ring.one()));
            for &a in c.members() {
                for &b in c.members() {
                    assert!(c.contains(ring.add(a, b)));
                    assert!(c.contains(ring.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn ideal_closure_examples() {
        let z8 = zmod(8);
        assert_eq!(ideal_closure(&z8, &[4]).unwrap().members(), &[0, 4]);
        let any = zmod(5);
        assert_eq!(ideal_closure(&any, &[]).unwrap().members(), &[0]);
        let z6 = zmod(6);
        let closed = ideal_closure(&z6, &[2]).unwrap();
        assert_eq!(closed.members(), &[0, 2, 4]);
        closed.verify().unwrap();
    }

    #[test]
    fn ideal_closure_equals_exhaustive_intersection_on_z6() {
        // Oracle: intersect all two-sided ideals of Z(6) containing {2},
        // found by exhaustively testing every subset of the carrier.
        let z6 = zmod(6);
        let mut inter = vec![true; 6];
        for mask in 0u32..64 {
            let bits: Vec<bool> = (0..6).map(|i| mask >> i & 1 == 1).collect();
            if !bits[2] || !bits[0] {
                continue;
            }
            let is_ideal = (0..6).all(|a| {
                !bits[a]
                    || ((0..6).all(|b| !bits[b] || bits[z6.add(a, b)])
                        && (0..6).all(|r| bits[z6.mul(r, a)] && bits[z6.mul(a, r)])
                        && bits[z6.neg(a)])
            });
            if is_ideal {
                for i in 0..6 {
                    inter[i] = inter[i] && bits[i];
                }
            }
        }
        let oracle: Vec<usize> = (0..6).filter(|&i| inter[i]).collect();
        assert_eq!(ideal_closure(&z6, &[2]).unwrap().members(), oracle.as_slice());
    }
}
