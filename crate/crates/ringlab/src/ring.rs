//! Finite unital rings over the carrier `{0, .., order-1}`.
//!
//! A ring is represented either by dense operation tables (materialized for
//! orders up to [`DENSE_ORDER_LIMIT`]) or by a structured source that computes
//! `add`/`mul` on demand from component rings. Both representations answer
//! identically for the same construction; dense tables are filled by querying
//! the structured source once at build time.
//!
//! Rings are immutable after validation. The handle is a cheap-to-clone
//! `Arc`, and every derived quantity (units, idempotents, radicals, ..) is
//! memoized on the shared inner value, computed once and then read-only.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RingError;

/// Hard cap on the order of any constructed ring.
pub const MAX_RING_ORDER: u64 = 1 << 20;

/// Orders up to this limit get fully materialized operation tables.
pub const DENSE_ORDER_LIMIT: usize = 1024;

/// Number of random triples checked per associativity/distributivity axiom
/// when a ring is too large for exhaustive validation.
pub const SAMPLED_TRIPLES: u64 = 1_000_000;

/// Computes ring operations on demand for rings too large to tabulate.
///
/// Implementations must be total on `0..order` and consistent with the
/// component rings they are built from.
pub trait TableSource: Send + Sync {
    fn add(&self, i: usize, j: usize) -> usize;
    fn mul(&self, i: usize, j: usize) -> usize;
    /// Additive inverse. Structured sources compute this componentwise;
    /// a linear scan would be quadratic over the whole carrier.
    fn neg(&self, i: usize) -> usize;
    fn label(&self, i: usize) -> String {
        i.to_string()
    }
}

enum Repr {
    Dense {
        add: Vec<u32>,
        mul: Vec<u32>,
        neg: Vec<u32>,
        labels: Option<Vec<String>>,
    },
    Structured(Box<dyn TableSource>),
}

/// How a ring was validated before publication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Every axiom checked on every element tuple.
    Full,
    /// Identities, inverses and commutativity checked exhaustively;
    /// associativity and distributivity checked on `triples` random triples.
    Sampled { triples: u64 },
}

impl fmt::Display for ValidationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationMode::Full => write!(f, "full"),
            ValidationMode::Sampled { triples } => write!(f, "sampled({triples})"),
        }
    }
}

/// A ring axiom that validation can report as violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    AddAssociative,
    AddCommutative,
    ZeroNeutral,
    AddInverse,
    MulAssociative,
    OneIdentity,
    LeftDistributive,
    RightDistributive,
    IdentityEqualsZero,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Closure => "operation result out of range",
            Axiom::AddAssociative => "addition is not associative",
            Axiom::AddCommutative => "addition is not commutative",
            Axiom::ZeroNeutral => "zero is not an additive identity",
            Axiom::AddInverse => "missing additive inverse",
            Axiom::MulAssociative => "multiplication is not associative",
            Axiom::OneIdentity => "one is not a multiplicative identity",
            Axiom::LeftDistributive => "left distributivity fails",
            Axiom::RightDistributive => "right distributivity fails",
            Axiom::IdentityEqualsZero => "identity equals zero",
        };
        f.write_str(s)
    }
}

/// First violated axiom together with the witnessing element triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: (usize, usize, usize),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.witness;
        write!(f, "{} (witness i={i}, j={j}, k={k})", self.axiom)
    }
}

/// Outcome of [`validate_axioms`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub mode: ValidationMode,
    pub violation: Option<AxiomViolation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Membership bitset plus sorted member list, cached on the ring.
#[derive(Debug, Default)]
pub(crate) struct SubsetData {
    pub bits: Vec<bool>,
    pub members: Vec<usize>,
}

impl SubsetData {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let members = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        SubsetData { bits, members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// Unit group data: membership plus the two-sided inverse of every unit.
pub(crate) struct UnitData {
    pub set: SubsetData,
    /// `inverse[u]` is meaningful only when `set.contains(u)`.
    pub inverse: Vec<u32>,
}

/// Radical data: J(R) as a subset plus generators, and sqrt J with the least
/// witness power of every member.
pub(crate) struct RadicalData {
    pub jacobson: SubsetData,
    pub sqrt: SubsetData,
    /// `witness[z]` is the least k >= 1 with z^k in J(R); 0 for non-members.
    pub witness: Vec<u32>,
}

#[derive(Default)]
pub(crate) struct Analysis {
    pub units: OnceLock<Arc<UnitData>>,
    pub idempotents: OnceLock<Arc<SubsetData>>,
    pub nilpotents: OnceLock<Arc<SubsetData>>,
    pub center: OnceLock<Arc<SubsetData>>,
    pub radical: OnceLock<Arc<RadicalData>>,
}

struct RingInner {
    order: usize,
    zero: usize,
    one: usize,
    name: String,
    repr: Repr,
    validation: ValidationMode,
    analysis: Analysis,
}

/// A validated finite unital ring. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.inner.name)
            .field("order", &self.inner.order)
            .finish()
    }
}

/// A ring whose tables exist but whose axioms have not been checked yet.
/// Only [`UnvalidatedRing::validate`] can publish it as a [`FiniteRing`].
pub struct UnvalidatedRing {
    order: usize,
    zero: usize,
    one: usize,
    name: String,
    repr: Repr,
}

impl UnvalidatedRing {
    /// Wraps explicit row-major tables. `add` and `mul` hold `order * order`
    /// entries each; entry `(i, j)` sits at `i * order + j`.
    pub fn from_tables(
        name: impl Into<String>,
        order: usize,
        zero: usize,
        one: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, RingError> {
        if order < 2 {
            return Err(RingError::OrderTooSmall(order));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(RingError::MalformedTables {
                expected: order * order,
                add: add.len(),
                mul: mul.len(),
            });
        }
        if zero >= order || one >= order {
            return Err(RingError::IndexOutOfRange {
                index: zero.max(one),
                order,
            });
        }
        if let Some(ref l) = labels {
            if l.len() != order {
                return Err(RingError::MalformedTables {
                    expected: order,
                    add: l.len(),
                    mul: l.len(),
                });
            }
        }
        // neg is filled during validation once zero neutrality is known;
        // seed with a placeholder here.
        Ok(UnvalidatedRing {
            order,
            zero,
            one,
            name: name.into(),
            repr: Repr::Dense {
                add,
                mul,
                neg: Vec::new(),
                labels,
            },
        })
    }

    /// Wraps a structured source. Orders up to [`DENSE_ORDER_LIMIT`] are
    /// materialized into dense tables by querying the source.
    pub fn from_source(
        name: impl Into<String>,
        order: usize,
        zero: usize,
        one: usize,
        source: Box<dyn TableSource>,
    ) -> Result<Self, RingError> {
        if order < 2 {
            return Err(RingError::OrderTooSmall(order));
        }
        let repr = if order <= DENSE_ORDER_LIMIT {
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            for i in 0..order {
                for j in 0..order {
                    add.push(source.add(i, j) as u32);
                    mul.push(source.mul(i, j) as u32);
                }
            }
            let neg = (0..order).map(|i| source.neg(i) as u32).collect();
            let labels = Some((0..order).map(|i| source.label(i)).collect());
            Repr::Dense {
                add,
                mul,
                neg,
                labels,
            }
        } else {
            Repr::Structured(source)
        };
        Ok(UnvalidatedRing {
            order,
            zero,
            one,
            name: name.into(),
            repr,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn add(&self, i: usize, j: usize) -> usize {
        match &self.repr {
            Repr::Dense { add, .. } => add[i * self.order + j] as usize,
            Repr::Structured(s) => s.add(i, j),
        }
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        match &self.repr {
            Repr::Dense { mul, .. } => mul[i * self.order + j] as usize,
            Repr::Structured(s) => s.mul(i, j),
        }
    }

    /// Runs axiom validation and publishes the ring on success.
    pub fn validate(mut self) -> Result<FiniteRing, RingError> {
        let report = self.check_axioms();
        match report.violation {
            Some(v) => Err(RingError::Axiom(v)),
            None => {
                // Dense rings built from raw tables still need a neg table.
                if let Repr::Dense { add, neg, .. } = &mut self.repr {
                    if neg.is_empty() {
                        let n = self.order;
                        let zero = self.zero;
                        *neg = (0..n)
                            .map(|i| {
                                (0..n)
                                    .find(|&j| add[i * n + j] as usize == zero)
                                    .expect("additive inverse exists after validation")
                                    as u32
                            })
                            .collect();
                    }
                }
                Ok(FiniteRing {
                    inner: Arc::new(RingInner {
                        order: self.order,
                        zero: self.zero,
                        one: self.one,
                        name: self.name,
                        repr: self.repr,
                        validation: report.mode,
                        analysis: Analysis::default(),
                    }),
                })
            }
        }
    }

    /// Checks the ring axioms without publishing (usable on corrupt tables).
    pub fn check_axioms(&self) -> ValidationReport {
        let n = self.order;
        let mode = if n <= DENSE_ORDER_LIMIT {
            ValidationMode::Full
        } else {
            ValidationMode::Sampled {
                triples: SAMPLED_TRIPLES,
            }
        };
        let fail = |axiom, witness| ValidationReport {
            mode,
            violation: Some(AxiomViolation { axiom, witness }),
        };

        if self.zero == self.one {
            return fail(Axiom::IdentityEqualsZero, (self.zero, self.one, 0));
        }
        // Closure of explicit tables (structured sources compose in range).
        if let Repr::Dense { add, mul, .. } = &self.repr {
            for i in 0..n {
                for j in 0..n {
                    if add[i * n + j] as usize >= n || mul[i * n + j] as usize >= n {
                        return fail(Axiom::Closure, (i, j, 0));
                    }
                }
            }
        }
        // Zero neutral and one identity, exhaustively.
        for i in 0..n {
            if self.add(self.zero, i) != i || self.add(i, self.zero) != i {
                return fail(Axiom::ZeroNeutral, (i, self.zero, 0));
            }
            if self.mul(self.one, i) != i || self.mul(i, self.one) != i {
                return fail(Axiom::OneIdentity, (i, self.one, 0));
            }
        }
        // Additive inverses, exhaustively.
        for i in 0..n {
            let inv = match &self.repr {
                Repr::Structured(s) => {
                    let j = s.neg(i);
                    (self.add(i, j) == self.zero).then_some(j)
                }
                Repr::Dense { add, .. } => {
                    (0..n).find(|&j| add[i * n + j] as usize == self.zero)
                }
            };
            if inv.is_none() {
                return fail(Axiom::AddInverse, (i, 0, 0));
            }
        }
        // Commutativity of addition, exhaustively (quadratic, still cheap).
        for i in 0..n {
            for j in i + 1..n {
                if self.add(i, j) != self.add(j, i) {
                    return fail(Axiom::AddCommutative, (i, j, 0));
                }
            }
        }

        let check_triple = |i: usize, j: usize, k: usize| -> Option<AxiomViolation> {
            if self.add(self.add(i, j), k) != self.add(i, self.add(j, k)) {
                return Some(AxiomViolation {
                    axiom: Axiom::AddAssociative,
                    witness: (i, j, k),
                });
            }
            if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                return Some(AxiomViolation {
                    axiom: Axiom::MulAssociative,
                    witness: (i, j, k),
                });
            }
            if self.mul(i, self.add(j, k)) != self.add(self.mul(i, j), self.mul(i, k)) {
                return Some(AxiomViolation {
                    axiom: Axiom::LeftDistributive,
                    witness: (i, j, k),
                });
            }
            if self.mul(self.add(i, j), k) != self.add(self.mul(i, k), self.mul(j, k)) {
                return Some(AxiomViolation {
                    axiom: Axiom::RightDistributive,
                    witness: (i, j, k),
                });
            }
            None
        };

        match mode {
            ValidationMode::Full => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            if let Some(v) = check_triple(i, j, k) {
                                return ValidationReport {
                                    mode,
                                    violation: Some(v),
                                };
                            }
                        }
                    }
                }
            }
            ValidationMode::Sampled { triples } => {
                // Fixed seed so validation reports are reproducible.
                let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 ^ n as u64);
                for _ in 0..triples {
                    let i = rng.gen_range(0..n);
                    let j = rng.gen_range(0..n);
                    let k = rng.gen_range(0..n);
                    if let Some(v) = check_triple(i, j, k) {
                        return ValidationReport {
                            mode,
                            violation: Some(v),
                        };
                    }
                }
            }
        }

        ValidationReport {
            mode,
            violation: None,
        }
    }
}

/// Validates a candidate ring and reports pass or the first violated axiom.
pub fn validate_axioms(ring: &UnvalidatedRing) -> ValidationReport {
    ring.check_axioms()
}

impl FiniteRing {
    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn zero(&self) -> usize {
        self.inner.zero
    }

    pub fn one(&self) -> usize {
        self.inner.one
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn validation_mode(&self) -> ValidationMode {
        self.inner.validation
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        match &self.inner.repr {
            Repr::Dense { add, .. } => add[i * self.inner.order + j] as usize,
            Repr::Structured(s) => s.add(i, j),
        }
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.inner.repr {
            Repr::Dense { mul, .. } => mul[i * self.inner.order + j] as usize,
            Repr::Structured(s) => s.mul(i, j),
        }
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        match &self.inner.repr {
            Repr::Dense { neg, .. } => neg[i] as usize,
            Repr::Structured(s) => s.neg(i),
        }
    }

    #[inline]
    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    /// i^k for k >= 1 by repeated multiplication.
    pub fn pow(&self, i: usize, k: u32) -> usize {
        assert!(k >= 1, "pow exponent must be positive");
        let mut acc = i;
        for _ in 1..k {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn label(&self, i: usize) -> String {
        match &self.inner.repr {
            Repr::Dense { labels, .. } => labels
                .as_ref()
                .map(|l| l[i].clone())
                .unwrap_or_else(|| i.to_string()),
            Repr::Structured(s) => s.label(i),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.order
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.inner.repr, Repr::Dense { .. })
    }

    /// Two rings have identical tables when order, zero, one and every
    /// add/mul entry agree under the shared index encoding.
    pub fn tables_identical(&self, other: &FiniteRing) -> bool {
        if self.order() != other.order()
            || self.zero() != other.zero()
            || self.one() != other.one()
        {
            return false;
        }
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                if self.add(i, j) != other.add(i, j) || self.mul(i, j) != other.mul(i, j) {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn analysis(&self) -> &Analysis {
        &self.inner.analysis
    }
}
