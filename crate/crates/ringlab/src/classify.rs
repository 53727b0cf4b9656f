//! Clean-family classification: decompositions a = e + z with e idempotent
//! and z drawn from one of four witness sets, decided plainly (some
//! decomposition), strongly (some commuting decomposition) or uniquely
//! (exactly one decomposition).
//!
//! Decomposition search iterates the idempotents, which are usually few, and
//! tests membership of a - e in the witness set, so one element costs
//! O(|Id(R)|) instead of O(n).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::RingError;
use crate::radicals::JacobsonData;
use crate::ring::FiniteRing;
use crate::subsets::{center, idempotents, nilpotents, units, ElementSubset};

/// Which witness set the non-idempotent summand is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompKind {
    /// clean: z is a unit
    Unit,
    /// nil-clean: z is nilpotent
    Nil,
    /// J-clean (semiboolean): z lies in J(R)
    J,
    /// sqrt J-clean: some power of z lies in J(R)
    SqrtJ,
}

impl DecompKind {
    pub const ALL: [DecompKind; 4] = [
        DecompKind::Unit,
        DecompKind::Nil,
        DecompKind::J,
        DecompKind::SqrtJ,
    ];

    /// Property-name stem used in reports.
    pub fn stem(self) -> &'static str {
        match self {
            DecompKind::Unit => "clean",
            DecompKind::Nil => "nil_clean",
            DecompKind::J => "j_clean",
            DecompKind::SqrtJ => "sqrtj_clean",
        }
    }

    /// The witness set of this kind.
    pub fn witness_set(self, ring: &FiniteRing) -> ElementSubset {
        match self {
            DecompKind::Unit => units(ring),
            DecompKind::Nil => nilpotents(ring),
            DecompKind::J => JacobsonData::compute(ring).jacobson().subset().clone(),
            DecompKind::SqrtJ => JacobsonData::compute(ring).sqrt_jacobson(),
        }
    }
}

/// How many decompositions an element must admit, and of what shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompMode {
    /// some decomposition
    Any,
    /// some decomposition with e z = z e
    Strong,
    /// exactly one decomposition, counted as ordered pairs (e, z)
    Unique,
}

/// One witnessed decomposition a = e + z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub a: usize,
    pub e: usize,
    pub z: usize,
    pub kind: DecompKind,
    pub commutes: bool,
}

/// Why a clean-family verdict is false.
#[derive(Debug, Clone)]
pub enum FailureWitness {
    /// Least element with no (commuting, for STRONG) decomposition.
    Element(usize),
    /// Least element with two or more decompositions, in UNIQUE mode.
    TwoDecompositions(Decomposition, Decomposition),
}

impl FailureWitness {
    pub fn element(&self) -> usize {
        match self {
            FailureWitness::Element(a) => *a,
            FailureWitness::TwoDecompositions(d, _) => d.a,
        }
    }
}

/// Verdict of one property check, with a witness when false.
#[derive(Debug, Clone)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<FailureWitness>,
}

impl PropertyVerdict {
    fn pass() -> Self {
        PropertyVerdict {
            holds: true,
            witness: None,
        }
    }
    fn fail(witness: FailureWitness) -> Self {
        PropertyVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// All decompositions of `a` of the given kind, sorted by (e, z). Since z is
/// determined by e, the list is in increasing idempotent order.
pub fn decompositions(
    ring: &FiniteRing,
    a: usize,
    kind: DecompKind,
) -> Result<Vec<Decomposition>, RingError> {
    if a >= ring.order() {
        return Err(RingError::IndexOutOfRange {
            index: a,
            order: ring.order(),
        });
    }
    let idem = idempotents(ring);
    let wset = kind.witness_set(ring);
    let mut out = Vec::new();
    for &e in idem.members() {
        let z = ring.sub(a, e);
        if wset.contains(z) {
            out.push(Decomposition {
                a,
                e,
                z,
                kind,
                commutes: ring.mul(e, z) == ring.mul(z, e),
            });
        }
    }
    Ok(out)
}

/// Whether every element of the ring admits decompositions of the requested
/// kind and mode; on failure the least failing element is reported.
pub fn has_clean_property(ring: &FiniteRing, kind: DecompKind, mode: DecompMode) -> PropertyVerdict {
    let idem = idempotents(ring);
    let wset = kind.witness_set(ring);
    for a in ring.elements() {
        match mode {
            DecompMode::Any => {
                if !idem.members().iter().any(|&e| wset.contains(ring.sub(a, e))) {
                    return PropertyVerdict::fail(FailureWitness::Element(a));
                }
            }
            DecompMode::Strong => {
                let found = idem.members().iter().any(|&e| {
                    let z = ring.sub(a, e);
                    wset.contains(z) && ring.mul(e, z) == ring.mul(z, e)
                });
                if !found {
                    return PropertyVerdict::fail(FailureWitness::Element(a));
                }
            }
            DecompMode::Unique => {
                let mut first: Option<Decomposition> = None;
                for &e in idem.members() {
                    let z = ring.sub(a, e);
                    if !wset.contains(z) {
                        continue;
                    }
                    let d = Decomposition {
                        a,
                        e,
                        z,
                        kind,
                        commutes: ring.mul(e, z) == ring.mul(z, e),
                    };
                    match first {
                        None => first = Some(d),
                        Some(prev) => {
                            return PropertyVerdict::fail(FailureWitness::TwoDecompositions(
                                prev, d,
                            ));
                        }
                    }
                }
                if first.is_none() {
                    return PropertyVerdict::fail(FailureWitness::Element(a));
                }
            }
        }
    }
    PropertyVerdict::pass()
}

/// One structural predicate with the least failing element when false.
#[derive(Debug, Clone, Copy)]
pub struct Predicate {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Predicate {
    fn from_failure(witness: Option<usize>) -> Self {
        Predicate {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Element-level structural predicates of a ring.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    /// every element is idempotent
    pub boolean: Predicate,
    /// U(R) is contained in 1 + sqrt J(R)
    pub sqrtju: Predicate,
    /// U(R) is contained in 1 + J(R)
    pub ju: Predicate,
    /// U(R) is contained in 1 + N(R)
    pub uu: Predicate,
    /// non-units are closed under addition
    pub local: Predicate,
    /// idempotents are central
    pub abelian: Predicate,
    /// ab = 1 implies ba = 1. Finite rings satisfy this automatically; the
    /// check is kept as an executable sanity property, not a classifier.
    pub dedekind_finite: Predicate,
    /// no nonzero nilpotents
    pub reduced: Predicate,
    /// J(R) = 0
    pub semisimple_j0: Predicate,
    /// 1 + 1 lies in J(R)
    pub two_in_j: Predicate,
}

pub fn structural_predicates(ring: &FiniteRing) -> StructuralReport {
    let n = ring.order();
    let one = ring.one();
    let jd = JacobsonData::compute(ring);
    let u = units(ring);
    let idem = idempotents(ring);
    let nil = nilpotents(ring);
    let cen = center(ring);

    let boolean = Predicate::from_failure((0..n).find(|&a| ring.mul(a, a) != a));

    let unit_shift_failure = |in_set: &dyn Fn(usize) -> bool| -> Option<usize> {
        u.members()
            .iter()
            .copied()
            .find(|&x| !in_set(ring.sub(x, one)))
    };
    let sqrtju = Predicate::from_failure(unit_shift_failure(&|z| jd.in_sqrt(z)));
    let ju = Predicate::from_failure(unit_shift_failure(&|z| jd.in_jacobson(z)));
    let uu = Predicate::from_failure(unit_shift_failure(&|z| nil.contains(z)));

    let mut local_witness = None;
    'outer: for a in 0..n {
        if u.contains(a) {
            continue;
        }
        for b in 0..n {
            if !u.contains(b) && u.contains(ring.add(a, b)) {
                local_witness = Some(a);
                break 'outer;
            }
        }
    }
    let local = Predicate::from_failure(local_witness);

    let abelian = Predicate::from_failure(
        idem.members().iter().copied().find(|&e| !cen.contains(e)),
    );

    let mut dedekind_witness = None;
    'dk: for a in 0..n {
        for b in 0..n {
            if ring.mul(a, b) == one && ring.mul(b, a) != one {
                dedekind_witness = Some(a);
                break 'dk;
            }
        }
    }
    let dedekind_finite = Predicate::from_failure(dedekind_witness);

    let reduced = Predicate::from_failure(
        nil.members().iter().copied().find(|&x| x != ring.zero()),
    );
    let semisimple_j0 = Predicate::from_failure(
        jd.jacobson_members().iter().copied().find(|&x| x != ring.zero()),
    );
    let two = ring.add(one, one);
    let two_in_j = Predicate::from_failure((!jd.in_jacobson(two)).then_some(two));

    StructuralReport {
        boolean,
        sqrtju,
        ju,
        uu,
        local,
        abelian,
        dedekind_finite,
        reduced,
        semisimple_j0,
        two_in_j,
    }
}

/// Full property-to-verdict map of one ring, with witnesses for every false
/// verdict. Field order in the JSON rendering is lexicographic.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub ring_name: String,
    pub order: usize,
    pub properties: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Value>,
}

impl ClassificationReport {
    pub fn get(&self, name: &str) -> bool {
        self.properties[name]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring_name,
            "order": self.order,
            "properties": self.properties,
            "witnesses": self.witnesses,
        })
    }
}

fn decomposition_json(ring: &FiniteRing, d: &Decomposition) -> Value {
    json!({
        "e": d.e,
        "z": d.z,
        "e_label": ring.label(d.e),
        "z_label": ring.label(d.z),
        "commutes": d.commutes,
    })
}

fn witness_json(ring: &FiniteRing, w: &FailureWitness) -> Value {
    match w {
        FailureWitness::Element(a) => json!({
            "element": a,
            "label": ring.label(*a),
        }),
        FailureWitness::TwoDecompositions(d1, d2) => json!({
            "element": d1.a,
            "label": ring.label(d1.a),
            "first": decomposition_json(ring, d1),
            "second": decomposition_json(ring, d2),
        }),
    }
}

/// Runs every classifier on the ring.
pub fn classify_all(ring: &FiniteRing) -> ClassificationReport {
    let mut properties = BTreeMap::new();
    let mut witnesses = BTreeMap::new();

    for kind in DecompKind::ALL {
        for (mode, suffix) in [
            (DecompMode::Any, ""),
            (DecompMode::Strong, "_strong"),
            (DecompMode::Unique, "_unique"),
        ] {
            let name = format!("{}{}", kind.stem(), suffix);
            let verdict = has_clean_property(ring, kind, mode);
            if let Some(w) = &verdict.witness {
                witnesses.insert(name.clone(), witness_json(ring, w));
            }
            properties.insert(name, verdict.holds);
        }
    }

    let s = structural_predicates(ring);
    let mut put = |name: &str, p: Predicate| {
        properties.insert(name.to_string(), p.holds);
        if let Some(a) = p.witness {
            witnesses.insert(
                name.to_string(),
                json!({ "element": a, "label": ring.label(a) }),
            );
        }
    };
    put("boolean", s.boolean);
    put("sqrtju", s.sqrtju);
    put("ju", s.ju);
    put("uu", s.uu);
    put("local", s.local);
    put("abelian", s.abelian);
    put("dedekind_finite", s.dedekind_finite);
    put("reduced", s.reduced);
    put("semisimple_j0", s.semisimple_j0);
    put("two_in_j", s.two_in_j);

    ClassificationReport {
        ring_name: ring.name().to_string(),
        order: ring.order(),
        properties,
        witnesses,
    }
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
    fn z4_sqrtj_decomposition_of_three() {
        // Id(Z4) = {0, 1}, sqrt J(Z4) = {0, 2}; 3 = 1 + 2 is the only split.
        let z4 = zmod(4);
        let ds = decompositions(&z4, 3, DecompKind::SqrtJ).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!((ds[0].e, ds[0].z), (1, 2));
        assert!(ds[0].commutes);
    }

    #[test]
    fn z2_zero_decomposes_once() {
        let z2 = zmod(2);
        let ds = decompositions(&z2, 0, DecompKind::SqrtJ).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!((ds[0].e, ds[0].z), (0, 0));
    }

    #[test]
    fn m2gf2_identity_decomposes_only_trivially() {
        // In characteristic 2, 1 - e is idempotent, and a nonzero idempotent
        // never falls in sqrt J, so e = 1 is forced.
        let r = m2gf2();
        let ds = decompositions(&r, r.one(), DecompKind::SqrtJ).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!((ds[0].e, ds[0].z), (r.one(), r.zero()));
    }

    #[test]
    fn out_of_range_element_rejected() {
        let z4 = zmod(4);
        assert!(matches!(
            decompositions(&z4, 7, DecompKind::Unit),
            Err(RingError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn paper_example_verdicts() {
        let z9 = zmod(9);
        assert!(!has_clean_property(&z9, DecompKind::SqrtJ, DecompMode::Any).holds);
        assert!(has_clean_property(&z9, DecompKind::Unit, DecompMode::Any).holds);

        let r = m2gf2();
        assert!(has_clean_property(&r, DecompKind::SqrtJ, DecompMode::Any).holds);

        let z8 = zmod(8);
        assert!(has_clean_property(&z8, DecompKind::J, DecompMode::Any).holds);
    }

    #[test]
    fn witness_is_least_failing_element() {
        let z9 = zmod(9);
        let verdict = has_clean_property(&z9, DecompKind::SqrtJ, DecompMode::Any);
        // Id(Z9) = {0,1}, sqrt J(Z9) = {0,3,6}: 0,1,3,4,6,7 decompose,
        // 2 is the least element that does not.
        assert_eq!(verdict.witness.unwrap().element(), 2);
    }

    #[test]
    fn unique_mode_counts_ordered_pairs() {
        let p = build(&ConstructionSpec::Product(vec![
            ConstructionSpec::Zmod(2),
            ConstructionSpec::Zmod(2),
        ]))
        .unwrap();
        assert!(has_clean_property(&p, DecompKind::Unit, DecompMode::Unique).holds);
        assert!(has_clean_property(&p, DecompKind::Nil, DecompMode::Unique).holds);
        // M(2, GF(2)) is not uniquely nil-clean: some element splits twice.
        let r = m2gf2();
        let v = has_clean_property(&r, DecompKind::Nil, DecompMode::Unique);
        assert!(!v.holds);
        match v.witness {
            Some(FailureWitness::TwoDecompositions(d1, d2)) => {
                assert_eq!(d1.a, d2.a);
                assert_ne!((d1.e, d1.z), (d2.e, d2.z));
            }
            other => panic!("expected two decompositions, got {other:?}"),
        }
    }

    #[test]
    fn structural_predicates_examples() {
        let z2 = zmod(2);
        let s = structural_predicates(&z2);
        assert!(s.boolean.holds);
        assert!(s.local.holds);

        let z9 = zmod(9);
        let s = structural_predicates(&z9);
        assert!(!s.two_in_j.holds);
        assert_eq!(s.two_in_j.witness, Some(2));

        let r = m2gf2();
        let s = structural_predicates(&r);
        assert!(
            !s.sqrtju.holds,
            "a unit of multiplicative order 3 is not 1 + nilpotent"
        );
        assert!(s.dedekind_finite.holds);
        assert!(!s.abelian.holds);
    }

    #[test]
    fn classify_all_matches_expected_booleans() {
        let z4 = classify_all(&zmod(4));
        assert!(z4.get("j_clean"));
        assert!(z4.get("sqrtj_clean"));
        assert!(z4.get("clean"));
        assert!(!z4.get("boolean"));

        let gf3 = classify_all(&build(&ConstructionSpec::Gf(3)).unwrap());
        assert!(gf3.get("clean"));
        assert!(!gf3.get("sqrtj_clean"));

        let z2 = classify_all(&zmod(2));
        for name in ["boolean", "j_clean", "sqrtj_clean", "clean"] {
            assert!(z2.get(name), "{name} should hold on Z(2)");
        }
        for name in ["j_clean_unique", "sqrtj_clean_unique", "clean_unique"] {
            assert!(z2.get(name), "{name} should hold on Z(2)");
        }
    }

    #[test]
    fn report_json_has_stable_shape() {
        let report = classify_all(&zmod(9));
        let v = report.to_json();
        assert_eq!(v["ring"], "Z(9)");
        assert_eq!(v["order"], 9);
        assert_eq!(v["properties"]["clean"], true);
        assert_eq!(v["properties"]["sqrtj_clean"], false);
        assert_eq!(v["properties"].as_object().unwrap().len(), 22);
        let keys: Vec<&String> = v["properties"].as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
