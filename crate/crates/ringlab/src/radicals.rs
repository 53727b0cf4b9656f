//! The Jacobson radical J(R), its root set sqrt J(R), and idempotent lifting.
//!
//! Membership in J(R) is decided by quasi-regularity: x lies in J(R) exactly
//! when 1 - r*x is a unit for every r. The exhaustive maximal-left-ideal
//! intersection is kept as a test oracle only; enumerating left ideals is
//! exponential in general.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::RingError;
use crate::quotient::{quotient_ring, QuotientMap};
use crate::ring::{FiniteRing, RadicalData, SubsetData};
use crate::subsets::{closure_bits, idempotents, nilpotents, unit_data, ElementSubset, Ideal};

/// Memoized radical data of a ring: J(R), sqrt J(R), and witness powers.
pub struct JacobsonData {
    ring: FiniteRing,
    data: Arc<RadicalData>,
}

impl JacobsonData {
    pub fn compute(ring: &FiniteRing) -> Self {
        let data = radical_data(ring);
        JacobsonData {
            ring: ring.clone(),
            data,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn jacobson(&self) -> Ideal {
        let subset = ElementSubset::new(
            self.ring.clone(),
            Arc::new(SubsetData::from_bits(self.data.jacobson.bits.clone())),
        );
        Ideal::from_parts(subset, None)
    }

    pub fn sqrt_jacobson(&self) -> ElementSubset {
        ElementSubset::new(
            self.ring.clone(),
            Arc::new(SubsetData::from_bits(self.data.sqrt.bits.clone())),
        )
    }

    #[inline]
    pub fn in_jacobson(&self, i: usize) -> bool {
        self.data.jacobson.contains(i)
    }

    #[inline]
    pub fn in_sqrt(&self, i: usize) -> bool {
        self.data.sqrt.contains(i)
    }

    /// Least k >= 1 with z^k in J(R), for members of sqrt J(R).
    pub fn witness_power(&self, z: usize) -> Option<u32> {
        self.data.sqrt.contains(z).then(|| self.data.witness[z])
    }

    pub fn jacobson_members(&self) -> &[usize] {
        &self.data.jacobson.members
    }

    pub fn sqrt_members(&self) -> &[usize] {
        &self.data.sqrt.members
    }
}

fn radical_data(ring: &FiniteRing) -> Arc<RadicalData> {
    ring.analysis()
        .radical
        .get_or_init(|| {
            let n = ring.order();
            let one = ring.one();
            let units = unit_data(ring);
            // 1 - t for every t, tabulated once.
            let one_minus: Vec<usize> = (0..n).map(|t| ring.add(one, ring.neg(t))).collect();

            let mut jac = vec![false; n];
            for x in 0..n {
                jac[x] = (0..n).all(|r| units.set.contains(one_minus[ring.mul(r, x)]));
            }
            let jacobson = SubsetData::from_bits(jac);

            // Power iteration with cycle detection: every power sequence is
            // eventually periodic, so the least witness exponent is at most
            // the number of distinct powers seen.
            let mut sqrt = vec![false; n];
            let mut witness = vec![0u32; n];
            let mut stamp = vec![usize::MAX; n];
            for z in 0..n {
                let mut p = z;
                let mut k = 1u32;
                loop {
                    if jacobson.contains(p) {
                        sqrt[z] = true;
                        witness[z] = k;
                        break;
                    }
                    if stamp[p] == z {
                        break; // cycled without touching J(R)
                    }
                    stamp[p] = z;
                    p = ring.mul(p, z);
                    k += 1;
                }
            }
            let sqrt = SubsetData::from_bits(sqrt);

            // Structural invariants of the radical data; these are cheap and
            // guard against representation bugs in structured rings.
            debug_assert!(jacobson.members.iter().all(|&j| sqrt.contains(j)));
            assert!(
                sqrt.members.iter().all(|&z| !units.set.contains(z)),
                "sqrt J(R) must be disjoint from the units"
            );

            Arc::new(RadicalData {
                jacobson,
                sqrt,
                witness,
            })
        })
        .clone()
}

/// J(R) as a two-sided ideal.
pub fn jacobson_radical(ring: &FiniteRing) -> Ideal {
    JacobsonData::compute(ring).jacobson()
}

/// sqrt J(R): elements some power of which falls into J(R).
pub fn sqrt_jacobson(ring: &FiniteRing) -> ElementSubset {
    JacobsonData::compute(ring).sqrt_jacobson()
}

/// Per-coset outcome of lifting idempotents modulo an ideal.
pub struct LiftingReport {
    pub quotient: FiniteRing,
    pub map: QuotientMap,
    /// Every idempotent coset of the quotient paired with a lifting
    /// idempotent of the source ring, when one exists.
    pub cosets: Vec<(usize, Option<usize>)>,
    /// Idempotent cosets with no idempotent preimage.
    pub non_lifting: Vec<usize>,
}

impl LiftingReport {
    pub fn all_lift(&self) -> bool {
        self.non_lifting.is_empty()
    }
}

/// For every idempotent coset of `ring/ideal`, searches Id(ring) for an
/// idempotent projecting onto it. The quotient is rebuilt on every call so
/// the check never trusts previously computed classification state.
pub fn idempotents_lift_mod(ring: &FiniteRing, ideal: &Ideal) -> Result<LiftingReport, RingError> {
    let (quotient, map) = quotient_ring(ring, ideal)?;
    let quotient_idem = idempotents(&quotient);
    let ring_idem = idempotents(ring);
    let mut cosets = Vec::with_capacity(quotient_idem.len());
    let mut non_lifting = Vec::new();
    for &c in quotient_idem.members() {
        let lift = ring_idem.members().iter().copied().find(|&e| map.project(e) == c);
        if lift.is_none() {
            non_lifting.push(c);
        }
        cosets.push((c, lift));
    }
    Ok(LiftingReport {
        quotient,
        map,
        cosets,
        non_lifting,
    })
}

/// Test oracle: J(R) as the intersection of all maximal left ideals, found
/// by breadth-first enumeration of the whole left-ideal lattice. Exponential
/// in the worst case; intended for rings of small order only.
pub fn jacobson_via_maximal_left_ideals(ring: &FiniteRing) -> Vec<usize> {
    let n = ring.order();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: Vec<Vec<bool>> = Vec::new();
    let zero_ideal = closure_bits(ring, &[], false);
    seen.insert(zero_ideal.clone());
    queue.push(zero_ideal);
    let mut proper: Vec<Vec<bool>> = Vec::new();
    while let Some(ideal) = queue.pop() {
        if ideal[ring.one()] {
            continue; // the whole ring; not proper
        }
        proper.push(ideal.clone());
        for x in 0..n {
            if ideal[x] {
                continue;
            }
            let mut gens: Vec<usize> = ideal
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect();
            gens.push(x);
            let bigger = closure_bits(ring, &gens, false);
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    // Maximal proper left ideals: not strictly contained in another proper one.
    let mut intersection = vec![true; n];
    for a in &proper {
        let maximal = !proper.iter().any(|b| {
            b != a && a.iter().zip(b.iter()).all(|(&x, &y)| !x || y)
        });
        if maximal {
            for i in 0..n {
                intersection[i] = intersection[i] && a[i];
            }
        }
    }
    (0..n).filter(|&i| intersection[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, ConstructionSpec};
    use crate::subsets::{center, ideal_closure, units};

    fn zmod(n: usize) -> FiniteRing {
        build(&ConstructionSpec::Zmod(n)).unwrap()
    }

    fn m2(base: ConstructionSpec) -> FiniteRing {
        build(&ConstructionSpec::Matrix {
            n: 2,
            base: Box::new(base),
        })
        .unwrap()
    }

    #[test]
    fn jacobson_of_z9() {
        let r = zmod(9);
        let j = jacobson_radical(&r);
        assert_eq!(j.members(), &[0, 3, 6]);
        assert!(!j.contains(2));
        j.verify().unwrap();
    }

    #[test]
    fn jacobson_of_field_is_zero() {
        let gf4 = build(&ConstructionSpec::Gf(4)).unwrap();
        assert_eq!(jacobson_radical(&gf4).members(), &[0]);
    }

    #[test]
    fn jacobson_of_m2_z4_is_matrices_over_2z4() {
        let r = m2(ConstructionSpec::Zmod(4));
        let j = jacobson_radical(&r);
        assert_eq!(j.len(), 16);
        // entries of every member lie in {0, 2}: digits of the row-major
        // base-4 encoding
        for &m in j.members() {
            let mut v = m;
            for _ in 0..4 {
                let digit = v % 4;
                assert!(digit == 0 || digit == 2, "member {m} has digit {digit}");
                v /= 4;
            }
        }
        // cross-check against the maximal-left-ideal oracle at order 256
        assert_eq!(j.members(), jacobson_via_maximal_left_ideals(&r).as_slice());
    }

    #[test]
    fn oracle_agrees_on_small_rings() {
        for ring in [
            zmod(4),
            zmod(6),
            zmod(9),
            zmod(12),
            m2(ConstructionSpec::Gf(2)),
            build(&ConstructionSpec::Gf(8)).unwrap(),
        ] {
            let j = jacobson_radical(&ring);
            assert_eq!(
                j.members(),
                jacobson_via_maximal_left_ideals(&ring).as_slice(),
                "oracle mismatch for {}",
                ring.name()
            );
        }
    }

    #[test]
    fn quasi_regularity_both_sides() {
        for ring in [zmod(9), m2(ConstructionSpec::Zmod(4))] {
            let j = jacobson_radical(&ring);
            let u = units(&ring);
            let one = ring.one();
            for &x in j.members() {
                for r in ring.elements() {
                    assert!(u.contains(ring.sub(one, ring.mul(r, x))));
                    assert!(u.contains(ring.sub(one, ring.mul(x, r))));
                }
            }
        }
    }

    #[test]
    fn sqrt_jacobson_examples() {
        let z9 = zmod(9);
        let d = JacobsonData::compute(&z9);
        assert_eq!(d.sqrt_members(), &[0, 3, 6]);
        for &z in d.sqrt_members() {
            assert_eq!(d.witness_power(z), Some(1));
        }

        let z2 = zmod(2);
        assert_eq!(sqrt_jacobson(&z2).members(), &[0]);

        // J(M2(F2)) = 0, so sqrt J is exactly the nilpotent set (4 matrices).
        let r = m2(ConstructionSpec::Gf(2));
        let s = sqrt_jacobson(&r);
        assert_eq!(s.len(), 4);
        assert_eq!(s.members(), nilpotents(&r).members());
    }

    #[test]
    fn sqrt_contains_radical_and_nilpotents_and_misses_units_and_idempotents() {
        for ring in [zmod(9), zmod(12), m2(ConstructionSpec::Zmod(4))] {
            let d = JacobsonData::compute(&ring);
            for &j in d.jacobson_members() {
                assert!(d.in_sqrt(j));
            }
            for &x in nilpotents(&ring).members() {
                assert!(d.in_sqrt(x));
            }
            for &u in units(&ring).members() {
                assert!(!d.in_sqrt(u));
            }
            for &e in idempotents(&ring).members() {
                assert!(!d.in_sqrt(e) || e == ring.zero());
            }
        }
    }

    #[test]
    fn sqrt_central_multiples_stay_in_sqrt() {
        for ring in [zmod(12), m2(ConstructionSpec::Zmod(4))] {
            let d = JacobsonData::compute(&ring);
            let c = center(&ring);
            for &x in d.sqrt_members() {
                for &y in c.members() {
                    assert!(d.in_sqrt(ring.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn cycle_detection_matches_order_bound_iteration() {
        for ring in [zmod(9), zmod(16), m2(ConstructionSpec::Gf(2))] {
            let d = JacobsonData::compute(&ring);
            for z in ring.elements() {
                // order-bound oracle: try every exponent up to the order
                let mut p = z;
                let mut found = None;
                for k in 1..=ring.order() as u32 {
                    if d.in_jacobson(p) {
                        found = Some(k);
                        break;
                    }
                    p = ring.mul(p, z);
                }
                assert_eq!(d.witness_power(z), found, "element {z} of {}", ring.name());
            }
        }
    }

    #[test]
    fn lifting_examples() {
        let z4 = zmod(4);
        let j = jacobson_radical(&z4);
        assert_eq!(j.members(), &[0, 2]);
        let report = idempotents_lift_mod(&z4, &j).unwrap();
        assert!(report.all_lift());
        assert_eq!(report.quotient.order(), 2);

        let m2z4 = m2(ConstructionSpec::Zmod(4));
        let j = jacobson_radical(&m2z4);
        let report = idempotents_lift_mod(&m2z4, &j).unwrap();
        assert!(report.all_lift());

        let z6 = zmod(6);
        let ideal = ideal_closure(&z6, &[3]).unwrap();
        assert_eq!(ideal.members(), &[0, 3]);
        let report = idempotents_lift_mod(&z6, &ideal).unwrap();
        assert!(report.all_lift());
        // idempotent cosets of the Z(3)-image lift to 0/3 and 1/4
        assert_eq!(report.quotient.order(), 3);
    }

    #[test]
    fn preimage_of_quotient_sqrt_is_sqrt() {
        for ring in [zmod(9), zmod(12), m2(ConstructionSpec::Zmod(4))] {
            let d = JacobsonData::compute(&ring);
            let j = d.jacobson();
            let (q, map) = quotient_ring(&ring, &j).unwrap();
            let qd = JacobsonData::compute(&q);
            for x in ring.elements() {
                assert_eq!(
                    qd.in_sqrt(map.project(x)),
                    d.in_sqrt(x),
                    "preimage property fails at {x} in {}",
                    ring.name()
                );
            }
        }
    }

    #[test]
    fn product_radical_is_product_of_radicals() {
        let prod = build(&ConstructionSpec::Product(vec![
            ConstructionSpec::Zmod(4),
            ConstructionSpec::Zmod(9),
        ]))
        .unwrap();
        let j = jacobson_radical(&prod);
        let j4: Vec<usize> = jacobson_radical(&zmod(4)).members().to_vec();
        let j9: Vec<usize> = jacobson_radical(&zmod(9)).members().to_vec();
        let mut expected: Vec<usize> = Vec::new();
        for &a in &j4 {
            for &b in &j9 {
                expected.push(a * 9 + b);
            }
        }
        expected.sort_unstable();
        assert_eq!(j.members(), expected.as_slice());
    }
}
