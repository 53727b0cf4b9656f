//! Ring constructions with fixed canonical element encodings.
//!
//! Every construction is exposed twice: as a variant of [`ConstructionSpec`]
//! (a closed description tree, buildable from the DSL) and as an `*_over`
//! builder taking already-built component rings, which the theorem registry
//! uses to wrap arbitrary corpus rings.
//!
//! Canonical encodings (all mixed-radix over the base encoding):
//! - `Zmod(n)`: residue = index.
//! - `Product`: leftmost factor most significant.
//! - matrix-like rings: row-major digits, entry (1,1) most significant;
//!   triangular rings encode only the free entries of the upper triangle,
//!   and constant-diagonal rings put the diagonal value first.
//! - trivial extension: pair `(r, m)` with `r` most significant.
//! - polynomial quotients: coefficient vector, constant term least
//!   significant.
//!
//! Every built ring passes axiom validation before it is returned; the
//! validator is the referee for the generalized matrix product formulas, and
//! a formula that fails associativity aborts the construction with an axiom
//! error instead of guessing.

use crate::error::RingError;
use crate::quotient::quotient_ring_named;
use crate::radicals::jacobson_radical;
use crate::ring::{FiniteRing, TableSource, UnvalidatedRing, MAX_RING_ORDER};
use crate::subsets::center;

/// Limits applied while building.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_order: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: MAX_RING_ORDER,
        }
    }
}

/// Description tree of every ring family used by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Zmod(usize),
    /// Finite field of order q, for q in {2, 3, 4, 5, 7, 8, 9}.
    Gf(usize),
    Product(Vec<ConstructionSpec>),
    Matrix {
        n: usize,
        base: Box<ConstructionSpec>,
    },
    MatrixS {
        n: usize,
        base: Box<ConstructionSpec>,
        s: usize,
    },
    Triangular {
        n: usize,
        base: Box<ConstructionSpec>,
    },
    ConstDiag {
        n: usize,
        base: Box<ConstructionSpec>,
    },
    TrivExt(Box<ConstructionSpec>),
    /// Formal triangular ring over two rings with the zero bimodule.
    FormalTri(Box<ConstructionSpec>, Box<ConstructionSpec>),
    Ks {
        base: Box<ConstructionSpec>,
        s: usize,
    },
    /// Quotient of base[x] by a monic modulus; coefficients are given as
    /// nonnegative integers, constant term first, and map into the base ring
    /// through the canonical image of the integers.
    PolyQuot {
        base: Box<ConstructionSpec>,
        modulus: Vec<u64>,
    },
    /// Quotient by the Jacobson radical.
    JQuot(Box<ConstructionSpec>),
}

impl ConstructionSpec {
    /// The canonical printed form; doubles as the name of the built ring.
    pub fn canonical_name(&self) -> String {
        match self {
            ConstructionSpec::Zmod(n) => format!("Z({n})"),
            ConstructionSpec::Gf(q) => format!("GF({q})"),
            ConstructionSpec::Product(parts) => parts
                .iter()
                .map(|p| match p {
                    ConstructionSpec::Product(_) => format!("({})", p.canonical_name()),
                    _ => p.canonical_name(),
                })
                .collect::<Vec<_>>()
                .join(" x "),
            ConstructionSpec::Matrix { n, base } => {
                format!("M({n}, {})", base.canonical_name())
            }
            ConstructionSpec::MatrixS { n, base, s } => {
                format!("M({n}, {}, s={s})", base.canonical_name())
            }
            ConstructionSpec::Triangular { n, base } => {
                format!("T({n}, {})", base.canonical_name())
            }
            ConstructionSpec::ConstDiag { n, base } => {
                format!("D({n}, {})", base.canonical_name())
            }
            ConstructionSpec::TrivExt(base) => format!("Triv({})", base.canonical_name()),
            ConstructionSpec::FormalTri(a, b) => {
                format!("FT({}, {})", a.canonical_name(), b.canonical_name())
            }
            ConstructionSpec::Ks { base, s } => format!("K({}, s={s})", base.canonical_name()),
            ConstructionSpec::PolyQuot { base, modulus } => format!(
                "PolyQuot({}, {})",
                base.canonical_name(),
                format_int_poly(modulus)
            ),
            ConstructionSpec::JQuot(base) => format!("JQuot({})", base.canonical_name()),
        }
    }
}

/// Pretty form of an integer-coefficient polynomial, constant term first in
/// storage, highest degree first when printed: `[1, 1, 1]` -> `x^2+x+1`.
pub fn format_int_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}x^{k}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Builds the ring described by a spec under the default limits.
pub fn build(spec: &ConstructionSpec) -> Result<FiniteRing, RingError> {
    build_with(spec, &BuildOptions::default())
}

pub fn build_with(spec: &ConstructionSpec, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    match spec {
        ConstructionSpec::Zmod(n) => zmod(*n, opts),
        ConstructionSpec::Gf(q) => gf(*q, opts),
        ConstructionSpec::Product(parts) => {
            let factors = parts
                .iter()
                .map(|p| build_with(p, opts))
                .collect::<Result<Vec<_>, _>>()?;
            product_of(&factors, opts)
        }
        ConstructionSpec::Matrix { n, base } => {
            let base = build_with(base, opts)?;
            matrix_over(&base, *n, opts)
        }
        ConstructionSpec::MatrixS { n, base, s } => {
            let base = build_with(base, opts)?;
            matrix_s_over(&base, *n, *s, opts)
        }
        ConstructionSpec::Triangular { n, base } => {
            let base = build_with(base, opts)?;
            triangular_over(&base, *n, opts)
        }
        ConstructionSpec::ConstDiag { n, base } => {
            let base = build_with(base, opts)?;
            const_diag_over(&base, *n, opts)
        }
        ConstructionSpec::TrivExt(base) => {
            let base = build_with(base, opts)?;
            triv_ext_over(&base, opts)
        }
        ConstructionSpec::FormalTri(a, b) => {
            let a = build_with(a, opts)?;
            let b = build_with(b, opts)?;
            formal_tri_over(&a, &b, opts)
        }
        ConstructionSpec::Ks { base, s } => {
            let base = build_with(base, opts)?;
            ks_over(&base, *s, opts)
        }
        ConstructionSpec::PolyQuot { base, modulus } => {
            let base = build_with(base, opts)?;
            poly_quot_over(&base, modulus, opts)
        }
        ConstructionSpec::JQuot(base) => {
            let base = build_with(base, opts)?;
            jquot_of(&base)
        }
    }
}

fn checked_order(order: u64, opts: &BuildOptions) -> Result<usize, RingError> {
    let limit = opts.max_order.min(MAX_RING_ORDER);
    if order > limit {
        return Err(RingError::OrderTooLarge { order, limit });
    }
    Ok(order as usize)
}

fn checked_pow(base: u64, exp: u32, opts: &BuildOptions) -> Result<usize, RingError> {
    let limit = opts.max_order.min(MAX_RING_ORDER);
    base.checked_pow(exp)
        .filter(|&o| o <= limit)
        .map(|o| o as usize)
        .ok_or(RingError::OrderTooLarge {
            order: u64::MAX,
            limit,
        })
}

// ---------------------------------------------------------------------------
// digit helpers

#[inline]
fn decode_digits(mut idx: usize, base: usize, digits: &mut [usize]) {
    for t in (0..digits.len()).rev() {
        digits[t] = idx % base;
        idx /= base;
    }
    debug_assert_eq!(idx, 0);
}

#[inline]
fn encode_digits(base: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

const MAX_DIGITS: usize = 21;

/// Wraps a base label when it would not read as a single token inside a
/// composite label.
fn atom(label: &str) -> String {
    if label.chars().all(|c| c.is_ascii_alphanumeric()) {
        label.to_string()
    } else {
        format!("({label})")
    }
}

// ---------------------------------------------------------------------------
// Z/nZ

struct ZmodSource {
    n: usize,
}

impl TableSource for ZmodSource {
    fn add(&self, i: usize, j: usize) -> usize {
        (i + j) % self.n
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        (i * j) % self.n
    }
    fn neg(&self, i: usize) -> usize {
        (self.n - i) % self.n
    }
}

fn zmod(n: usize, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::OrderTooSmall(n));
    }
    let order = checked_order(n as u64, opts)?;
    UnvalidatedRing::from_source(
        format!("Z({n})"),
        order,
        0,
        1,
        Box::new(ZmodSource { n: order }),
    )?
    .validate()
}

fn gf(q: usize, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    // Fixed irreducible moduli keep the encodings reproducible.
    let (p, modulus): (usize, &[u64]) = match q {
        2 | 3 | 5 | 7 => (q, &[]),
        4 => (2, &[1, 1, 1]), // x^2+x+1
        8 => (2, &[1, 1, 0, 1]), // x^3+x+1
        9 => (3, &[1, 0, 1]), // x^2+1
        _ => return Err(RingError::UnsupportedField(q)),
    };
    let name = format!("GF({q})");
    if modulus.is_empty() {
        let order = checked_order(p as u64, opts)?;
        return UnvalidatedRing::from_source(name, order, 0, 1, Box::new(ZmodSource { n: p }))?
            .validate();
    }
    let base = zmod(p, opts)?;
    let source = PolyQuotSource::new(&base, modulus)?;
    let order = checked_pow(p as u64, source.deg as u32, opts)?;
    let zero = source.zero();
    let one = source.one();
    UnvalidatedRing::from_source(name, order, zero, one, Box::new(source))?.validate()
}

// ---------------------------------------------------------------------------
// products

struct ProductSource {
    factors: Vec<FiniteRing>,
}

impl ProductSource {
    fn split(&self, idx: usize, out: &mut [usize]) {
        let mut v = idx;
        for (t, f) in self.factors.iter().enumerate().rev() {
            out[t] = v % f.order();
            v /= f.order();
        }
    }
    fn join(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&p, f)| acc * f.order() + p)
    }
}

impl TableSource for ProductSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        let k = self.factors.len();
        self.split(i, &mut a[..k]);
        self.split(j, &mut b[..k]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..k {
            c[t] = self.factors[t].add(a[t], b[t]);
        }
        self.join(&c[..k])
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        let k = self.factors.len();
        self.split(i, &mut a[..k]);
        self.split(j, &mut b[..k]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..k {
            c[t] = self.factors[t].mul(a[t], b[t]);
        }
        self.join(&c[..k])
    }
    fn neg(&self, i: usize) -> usize {
        let mut a = [0usize; MAX_DIGITS];
        let k = self.factors.len();
        self.split(i, &mut a[..k]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..k {
            c[t] = self.factors[t].neg(a[t]);
        }
        self.join(&c[..k])
    }
    fn label(&self, i: usize) -> String {
        let mut a = [0usize; MAX_DIGITS];
        let k = self.factors.len();
        self.split(i, &mut a[..k]);
        let parts: Vec<String> = (0..k).map(|t| self.factors[t].label(a[t])).collect();
        format!("({})", parts.join(", "))
    }
}

/// Direct product, leftmost factor most significant in the encoding.
pub fn product_of(factors: &[FiniteRing], opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    if factors.is_empty() || factors.len() > MAX_DIGITS {
        return Err(RingError::BadArity(factors.len()));
    }
    let mut order: u64 = 1;
    for f in factors {
        order = order
            .checked_mul(f.order() as u64)
            .ok_or(RingError::OrderTooLarge {
                order: u64::MAX,
                limit: opts.max_order,
            })?;
    }
    let order = checked_order(order, opts)?;
    let name = factors
        .iter()
        .map(|f| {
            if f.name().contains(" x ") {
                format!("({})", f.name())
            } else {
                f.name().to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" x ");
    let source = ProductSource {
        factors: factors.to_vec(),
    };
    let zeros: Vec<usize> = factors.iter().map(|f| f.zero()).collect();
    let ones: Vec<usize> = factors.iter().map(|f| f.one()).collect();
    let zero = source.join(&zeros);
    let one = source.join(&ones);
    UnvalidatedRing::from_source(name, order, zero, one, Box::new(source))?.validate()
}

// ---------------------------------------------------------------------------
// matrix layouts

/// Where the free entries of a matrix-like ring live and how they map to
/// digit slots of the element encoding.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Layout {
    Full,
    UpperTriangular,
    ConstantDiagonal,
}

struct MatrixShape {
    n: usize,
    layout: Layout,
    /// slot index of entry (i, j), or NONE when the entry is structurally
    /// zero (below the diagonal) or aliased (constant diagonal).
    slot_of: Vec<usize>,
    slots: usize,
}

const NO_SLOT: usize = usize::MAX;

impl MatrixShape {
    fn new(n: usize, layout: Layout) -> Self {
        let mut slot_of = vec![NO_SLOT; n * n];
        let mut next = 0;
        match layout {
            Layout::Full => {
                for e in slot_of.iter_mut() {
                    *e = next;
                    next += 1;
                }
            }
            Layout::UpperTriangular => {
                for i in 0..n {
                    for j in i..n {
                        slot_of[i * n + j] = next;
                        next += 1;
                    }
                }
            }
            Layout::ConstantDiagonal => {
                next = 1; // slot 0 is the shared diagonal value
                for i in 0..n {
                    for j in i + 1..n {
                        slot_of[i * n + j] = next;
                        next += 1;
                    }
                }
            }
        }
        MatrixShape {
            n,
            layout,
            slot_of,
            slots: next,
        }
    }

    /// Entry (i, j) from decoded digit slots.
    #[inline]
    fn entry(&self, digits: &[usize], i: usize, j: usize, zero: usize) -> usize {
        match self.layout {
            Layout::Full => digits[self.slot_of[i * self.n + j]],
            Layout::UpperTriangular => {
                if i <= j {
                    digits[self.slot_of[i * self.n + j]]
                } else {
                    zero
                }
            }
            Layout::ConstantDiagonal => {
                if i == j {
                    digits[0]
                } else if i < j {
                    digits[self.slot_of[i * self.n + j]]
                } else {
                    zero
                }
            }
        }
    }

    fn label(&self, base: &FiniteRing, digits: &[usize]) -> String {
        let zero = base.zero();
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cols: Vec<String> = (0..self.n)
                    .map(|j| {
                        let e = self.entry(digits, i, j, zero);
                        base.label(e)
                    })
                    .collect();
                format!("[{}]", cols.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Standard or multiplier-twisted matrix product over a shape.
struct MatrixSource {
    base: FiniteRing,
    shape: MatrixShape,
    /// Central multiplier applied on paths leaving the row/column, when
    /// present: the (i,k,j) product term picks up one factor of s whenever k
    /// differs from both i and j.
    multiplier: Option<usize>,
}

impl MatrixSource {
    #[inline]
    fn decode(&self, idx: usize, digits: &mut [usize]) {
        decode_digits(idx, self.base.order(), digits);
    }
    #[inline]
    fn encode(&self, digits: &[usize]) -> usize {
        encode_digits(self.base.order(), digits)
    }
}

impl TableSource for MatrixSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let k = self.shape.slots;
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        self.decode(i, &mut a[..k]);
        self.decode(j, &mut b[..k]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..k {
            c[t] = self.base.add(a[t], b[t]);
        }
        self.encode(&c[..k])
    }

    fn mul(&self, lhs: usize, rhs: usize) -> usize {
        let slots = self.shape.slots;
        let n = self.shape.n;
        let zero = self.base.zero();
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        self.decode(lhs, &mut a[..slots]);
        self.decode(rhs, &mut b[..slots]);
        let mut c = [0usize; MAX_DIGITS];
        for (pos, slot) in self.shape.slot_of.iter().enumerate() {
            if *slot == NO_SLOT {
                continue;
            }
            let (i, j) = (pos / n, pos % n);
            let mut acc = zero;
            for k in 0..n {
                let aik = self.shape.entry(&a[..slots], i, k, zero);
                let bkj = self.shape.entry(&b[..slots], k, j, zero);
                let mut term = self.base.mul(aik, bkj);
                if let Some(s) = self.multiplier {
                    if k != i && k != j {
                        term = self.base.mul(s, term);
                    }
                }
                acc = self.base.add(acc, term);
            }
            c[*slot] = acc;
        }
        // The shared diagonal of a constant-diagonal product: triangularity
        // collapses (AB)_ii to A_ii B_ii, the same value on every row.
        if self.shape.layout == Layout::ConstantDiagonal {
            c[0] = self.base.mul(a[0], b[0]);
        }
        self.encode(&c[..slots])
    }

    fn neg(&self, idx: usize) -> usize {
        let k = self.shape.slots;
        let mut a = [0usize; MAX_DIGITS];
        self.decode(idx, &mut a[..k]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..k {
            c[t] = self.base.neg(a[t]);
        }
        self.encode(&c[..k])
    }

    fn label(&self, idx: usize) -> String {
        let k = self.shape.slots;
        let mut a = [0usize; MAX_DIGITS];
        self.decode(idx, &mut a[..k]);
        self.shape.label(&self.base, &a[..k])
    }
}

fn matrix_like(
    name: String,
    base: &FiniteRing,
    n: usize,
    layout: Layout,
    multiplier: Option<usize>,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    if n < 1 {
        return Err(RingError::BadArity(n));
    }
    let shape = MatrixShape::new(n, layout);
    if shape.slots > MAX_DIGITS {
        return Err(RingError::OrderTooLarge {
            order: u64::MAX,
            limit: opts.max_order,
        });
    }
    let order = checked_pow(base.order() as u64, shape.slots as u32, opts)?;
    if let Some(s) = multiplier {
        if s >= base.order() {
            return Err(RingError::IndexOutOfRange {
                index: s,
                order: base.order(),
            });
        }
        if !center(base).contains(s) {
            return Err(RingError::NonCentralMultiplier { index: s });
        }
    }
    let source = MatrixSource {
        base: base.clone(),
        shape,
        multiplier,
    };
    // zero matrix and identity matrix under the slot encoding
    let slots = source.shape.slots;
    let mut digits = vec![base.zero(); slots];
    let zero = source.encode(&digits);
    match layout {
        Layout::ConstantDiagonal => digits[0] = base.one(),
        _ => {
            for i in 0..n {
                digits[source.shape.slot_of[i * n + i]] = base.one();
            }
        }
    }
    let one = source.encode(&digits);
    UnvalidatedRing::from_source(name, order, zero, one, Box::new(source))?.validate()
}

/// Full n-by-n matrices.
pub fn matrix_over(base: &FiniteRing, n: usize, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    matrix_like(
        format!("M({n}, {})", base.name()),
        base,
        n,
        Layout::Full,
        None,
        opts,
    )
}

/// Formal matrix ring with central multiplier s: the (i,k,j) term of the
/// product acquires one factor of s exactly when k avoids both i and j.
/// Associativity is not a theorem of this exponent choice for n >= 3; the
/// axiom validator decides and the construction aborts on failure.
pub fn matrix_s_over(
    base: &FiniteRing,
    n: usize,
    s: usize,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    matrix_like(
        format!("M({n}, {}, s={s})", base.name()),
        base,
        n,
        Layout::Full,
        Some(s),
        opts,
    )
}

/// Upper triangular n-by-n matrices.
pub fn triangular_over(
    base: &FiniteRing,
    n: usize,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    matrix_like(
        format!("T({n}, {})", base.name()),
        base,
        n,
        Layout::UpperTriangular,
        None,
        opts,
    )
}

/// Upper triangular matrices with all diagonal entries equal.
pub fn const_diag_over(
    base: &FiniteRing,
    n: usize,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    matrix_like(
        format!("D({n}, {})", base.name()),
        base,
        n,
        Layout::ConstantDiagonal,
        None,
        opts,
    )
}

// ---------------------------------------------------------------------------
// trivial extension R ~ R

struct TrivExtSource {
    base: FiniteRing,
}

impl TrivExtSource {
    #[inline]
    fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.base.order(), idx % self.base.order())
    }
    #[inline]
    fn join(&self, r: usize, m: usize) -> usize {
        r * self.base.order() + m
    }
}

impl TableSource for TrivExtSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let (r1, m1) = self.split(i);
        let (r2, m2) = self.split(j);
        self.join(self.base.add(r1, r2), self.base.add(m1, m2))
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        // (r1, m1)(r2, m2) = (r1 r2, r1 m2 + m1 r2)
        let (r1, m1) = self.split(i);
        let (r2, m2) = self.split(j);
        let m = self.base.add(self.base.mul(r1, m2), self.base.mul(m1, r2));
        self.join(self.base.mul(r1, r2), m)
    }
    fn neg(&self, i: usize) -> usize {
        let (r, m) = self.split(i);
        self.join(self.base.neg(r), self.base.neg(m))
    }
    fn label(&self, i: usize) -> String {
        let (r, m) = self.split(i);
        format!("({}, {})", self.base.label(r), self.base.label(m))
    }
}

/// Trivial extension of R by the bimodule R.
pub fn triv_ext_over(base: &FiniteRing, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    let order = checked_pow(base.order() as u64, 2, opts)?;
    let source = TrivExtSource { base: base.clone() };
    let zero = source.join(base.zero(), base.zero());
    let one = source.join(base.one(), base.zero());
    UnvalidatedRing::from_source(
        format!("Triv({})", base.name()),
        order,
        zero,
        one,
        Box::new(source),
    )?
    .validate()
}

// ---------------------------------------------------------------------------
// formal triangular ring with the zero bimodule

struct FormalTriSource {
    r1: FiniteRing,
    r2: FiniteRing,
}

impl FormalTriSource {
    #[inline]
    fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.r2.order(), idx % self.r2.order())
    }
    #[inline]
    fn join(&self, a: usize, b: usize) -> usize {
        a * self.r2.order() + b
    }
}

impl TableSource for FormalTriSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let (a1, b1) = self.split(i);
        let (a2, b2) = self.split(j);
        self.join(self.r1.add(a1, a2), self.r2.add(b1, b2))
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        let (a1, b1) = self.split(i);
        let (a2, b2) = self.split(j);
        self.join(self.r1.mul(a1, a2), self.r2.mul(b1, b2))
    }
    fn neg(&self, i: usize) -> usize {
        let (a, b) = self.split(i);
        self.join(self.r1.neg(a), self.r2.neg(b))
    }
    fn label(&self, i: usize) -> String {
        let (a, b) = self.split(i);
        format!("[[{}, 0], [0, {}]]", self.r1.label(a), self.r2.label(b))
    }
}

/// Formal triangular ring over (R1, R2) with M = {0}.
pub fn formal_tri_over(
    r1: &FiniteRing,
    r2: &FiniteRing,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    let order = checked_order(r1.order() as u64 * r2.order() as u64, opts)?;
    let source = FormalTriSource {
        r1: r1.clone(),
        r2: r2.clone(),
    };
    let zero = source.join(r1.zero(), r2.zero());
    let one = source.join(r1.one(), r2.one());
    UnvalidatedRing::from_source(
        format!("FT({}, {})", r1.name(), r2.name()),
        order,
        zero,
        one,
        Box::new(source),
    )?
    .validate()
}

// ---------------------------------------------------------------------------
// generalized 2x2 matrix ring K_s(R)

/// 2x2 generalized matrix ring written out blockwise, independently of the
/// slot-loop product in [`MatrixSource`]; the two routes are compared by
/// tests and the acceptance suite.
struct KsSource {
    base: FiniteRing,
    s: usize,
}

impl KsSource {
    #[inline]
    fn split(&self, idx: usize, out: &mut [usize; 4]) {
        let n = self.base.order();
        out[3] = idx % n;
        let idx = idx / n;
        out[2] = idx % n;
        let idx = idx / n;
        out[1] = idx % n;
        out[0] = idx / n;
    }
    #[inline]
    fn join(&self, e: &[usize; 4]) -> usize {
        let n = self.base.order();
        ((e[0] * n + e[1]) * n + e[2]) * n + e[3]
    }
}

impl TableSource for KsSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let (mut a, mut b) = ([0; 4], [0; 4]);
        self.split(i, &mut a);
        self.split(j, &mut b);
        let c = [
            self.base.add(a[0], b[0]),
            self.base.add(a[1], b[1]),
            self.base.add(a[2], b[2]),
            self.base.add(a[3], b[3]),
        ];
        self.join(&c)
    }
    fn mul(&self, i: usize, j: usize) -> usize {
        // [[a1, x1], [y1, b1]] [[a2, x2], [y2, b2]] =
        // [[a1 a2 + s x1 y2, a1 x2 + x1 b2], [y1 a2 + b1 y2, s y1 x2 + b1 b2]]
        let (mut l, mut r) = ([0; 4], [0; 4]);
        self.split(i, &mut l);
        self.split(j, &mut r);
        let (a1, x1, y1, b1) = (l[0], l[1], l[2], l[3]);
        let (a2, x2, y2, b2) = (r[0], r[1], r[2], r[3]);
        let base = &self.base;
        let c = [
            base.add(base.mul(a1, a2), base.mul(self.s, base.mul(x1, y2))),
            base.add(base.mul(a1, x2), base.mul(x1, b2)),
            base.add(base.mul(y1, a2), base.mul(b1, y2)),
            base.add(base.mul(self.s, base.mul(y1, x2)), base.mul(b1, b2)),
        ];
        self.join(&c)
    }
    fn neg(&self, i: usize) -> usize {
        let mut a = [0; 4];
        self.split(i, &mut a);
        let c = [
            self.base.neg(a[0]),
            self.base.neg(a[1]),
            self.base.neg(a[2]),
            self.base.neg(a[3]),
        ];
        self.join(&c)
    }
    fn label(&self, i: usize) -> String {
        let mut a = [0; 4];
        self.split(i, &mut a);
        format!(
            "[[{}, {}], [{}, {}]]",
            self.base.label(a[0]),
            self.base.label(a[1]),
            self.base.label(a[2]),
            self.base.label(a[3])
        )
    }
}

/// K_s(R): 2x2 matrices whose off-diagonal path products pick up the central
/// multiplier s.
pub fn ks_over(base: &FiniteRing, s: usize, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    if s >= base.order() {
        return Err(RingError::IndexOutOfRange {
            index: s,
            order: base.order(),
        });
    }
    if !center(base).contains(s) {
        return Err(RingError::NonCentralMultiplier { index: s });
    }
    let order = checked_pow(base.order() as u64, 4, opts)?;
    let source = KsSource {
        base: base.clone(),
        s,
    };
    let zero = source.join(&[base.zero(); 4]);
    let one = source.join(&[base.one(), base.zero(), base.zero(), base.one()]);
    UnvalidatedRing::from_source(
        format!("K({}, s={s})", base.name()),
        order,
        zero,
        one,
        Box::new(source),
    )?
    .validate()
}

// ---------------------------------------------------------------------------
// polynomial quotient R[x]/(f), f monic with integer-image coefficients

struct PolyQuotSource {
    base: FiniteRing,
    deg: usize,
    /// negated images of the non-leading modulus coefficients:
    /// x^deg = sum_i reduce[i] x^i.
    reduce: Vec<usize>,
}

impl PolyQuotSource {
    fn new(base: &FiniteRing, modulus: &[u64]) -> Result<Self, RingError> {
        if modulus.len() < 2 {
            return Err(RingError::NonMonicModulus);
        }
        let images: Vec<usize> = modulus.iter().map(|&c| int_image(base, c)).collect();
        if *images.last().unwrap() != base.one() {
            return Err(RingError::NonMonicModulus);
        }
        let deg = modulus.len() - 1;
        let reduce = images[..deg].iter().map(|&c| base.neg(c)).collect();
        Ok(PolyQuotSource {
            base: base.clone(),
            deg,
            reduce,
        })
    }

    fn zero(&self) -> usize {
        let digits = vec![self.base.zero(); self.deg];
        self.join(&digits)
    }

    fn one(&self) -> usize {
        let mut digits = vec![self.base.zero(); self.deg];
        digits[0] = self.base.one();
        self.join(&digits)
    }

    /// constant term least significant
    #[inline]
    fn split(&self, mut idx: usize, out: &mut [usize]) {
        for d in out.iter_mut() {
            *d = idx % self.base.order();
            idx /= self.base.order();
        }
    }
    #[inline]
    fn join(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.base.order() + d)
    }
}

impl TableSource for PolyQuotSource {
    fn add(&self, i: usize, j: usize) -> usize {
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        self.split(i, &mut a[..self.deg]);
        self.split(j, &mut b[..self.deg]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..self.deg {
            c[t] = self.base.add(a[t], b[t]);
        }
        self.join(&c[..self.deg])
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        let d = self.deg;
        let zero = self.base.zero();
        let mut a = [0usize; MAX_DIGITS];
        let mut b = [0usize; MAX_DIGITS];
        self.split(i, &mut a[..d]);
        self.split(j, &mut b[..d]);
        // convolution up to degree 2d-2, then reduction by x^d = reduce
        let mut prod = [zero; 2 * MAX_DIGITS];
        for s in 0..d {
            for t in 0..d {
                let term = self.base.mul(a[s], b[t]);
                prod[s + t] = self.base.add(prod[s + t], term);
            }
        }
        for top in (d..=2 * d - 2).rev() {
            let carry = prod[top];
            if carry == zero {
                continue;
            }
            prod[top] = zero;
            for t in 0..d {
                let term = self.base.mul(carry, self.reduce[t]);
                prod[top - d + t] = self.base.add(prod[top - d + t], term);
            }
        }
        self.join(&prod[..d])
    }

    fn neg(&self, i: usize) -> usize {
        let mut a = [0usize; MAX_DIGITS];
        self.split(i, &mut a[..self.deg]);
        let mut c = [0usize; MAX_DIGITS];
        for t in 0..self.deg {
            c[t] = self.base.neg(a[t]);
        }
        self.join(&c[..self.deg])
    }

    fn label(&self, i: usize) -> String {
        let mut a = [0usize; MAX_DIGITS];
        self.split(i, &mut a[..self.deg]);
        let zero = self.base.zero();
        let one = self.base.one();
        let mut parts = Vec::new();
        for k in (0..self.deg).rev() {
            if a[k] == zero {
                continue;
            }
            let coeff = self.base.label(a[k]);
            let part = match k {
                0 => coeff,
                1 if a[k] == one => "x".to_string(),
                1 => format!("{}x", atom(&coeff)),
                _ if a[k] == one => format!("x^{k}"),
                _ => format!("{}x^{k}", atom(&coeff)),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            self.base.label(zero)
        } else {
            parts.join("+")
        }
    }
}

/// Image of a nonnegative integer under the canonical map Z -> R.
fn int_image(base: &FiniteRing, c: u64) -> usize {
    // repeated doubling keeps this logarithmic; moduli are tiny anyway
    let mut acc = base.zero();
    let mut addend = base.one();
    let mut c = c;
    while c > 0 {
        if c & 1 == 1 {
            acc = base.add(acc, addend);
        }
        addend = base.add(addend, addend);
        c >>= 1;
    }
    acc
}

/// R[x]/(f) for a monic modulus f given by integer coefficients, constant
/// term first. The coefficients map through the canonical image of the
/// integers, which is central, so the quotient is well defined over
/// noncommutative bases too.
pub fn poly_quot_over(
    base: &FiniteRing,
    modulus: &[u64],
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    let source = PolyQuotSource::new(base, modulus)?;
    if source.deg > MAX_DIGITS {
        return Err(RingError::OrderTooLarge {
            order: u64::MAX,
            limit: opts.max_order,
        });
    }
    let order = checked_pow(base.order() as u64, source.deg as u32, opts)?;
    let zero = source.zero();
    let one = source.one();
    UnvalidatedRing::from_source(
        format!("PolyQuot({}, {})", base.name(), format_int_poly(modulus)),
        order,
        zero,
        one,
        Box::new(source),
    )?
    .validate()
}

/// R / J(R) under the canonical coset encoding.
pub fn jquot_of(base: &FiniteRing) -> Result<FiniteRing, RingError> {
    let j = jacobson_radical(base);
    let (ring, _map) = quotient_ring_named(base, &j, format!("JQuot({})", base.name()))?;
    Ok(ring)
}

// ---------------------------------------------------------------------------
// trivial extension isomorphism checks

/// Index bijections certifying that the three presentations of the trivial
/// extension of R coincide entrywise.
pub struct TrivIso {
    pub triv: FiniteRing,
    pub const_diag: FiniteRing,
    pub poly_quot: FiniteRing,
    /// Triv -> D(2, R): the identity on indices.
    pub to_const_diag: Vec<usize>,
    /// Triv -> R[x]/(x^2): swaps the two digits of the pair encoding.
    pub to_poly_quot: Vec<usize>,
}

/// Builds Triv(R), D(2, R) and R[x]/(x^2) and checks that their tables agree
/// under explicit index bijections, returning the bijections.
pub fn trivial_extension_iso_checks(
    base: &FiniteRing,
    opts: &BuildOptions,
) -> Result<TrivIso, RingError> {
    let triv = triv_ext_over(base, opts)?;
    let const_diag = const_diag_over(base, 2, opts)?;
    let poly_quot = poly_quot_over(base, &[0, 0, 1], opts)?;

    let n = base.order();
    let order = triv.order();
    let to_const_diag: Vec<usize> = (0..order).collect();
    // (r, m) at index r*n + m goes to r + m*n in the coefficient encoding
    let to_poly_quot: Vec<usize> = (0..order).map(|idx| (idx / n) + (idx % n) * n).collect();

    check_bijection(&triv, &const_diag, &to_const_diag, "D(2, R)")?;
    check_bijection(&triv, &poly_quot, &to_poly_quot, "R[x]/(x^2)")?;
    Ok(TrivIso {
        triv,
        const_diag,
        poly_quot,
        to_const_diag,
        to_poly_quot,
    })
}

fn check_bijection(
    a: &FiniteRing,
    b: &FiniteRing,
    phi: &[usize],
    what: &str,
) -> Result<(), RingError> {
    if a.order() != b.order() {
        return Err(RingError::ConstructionMismatch(format!(
            "{what}: order {} vs {}",
            a.order(),
            b.order()
        )));
    }
    if phi[a.zero()] != b.zero() || phi[a.one()] != b.one() {
        return Err(RingError::ConstructionMismatch(format!(
            "{what}: bijection does not preserve constants"
        )));
    }
    for i in a.elements() {
        for j in a.elements() {
            if phi[a.add(i, j)] != b.add(phi[i], phi[j])
                || phi[a.mul(i, j)] != b.mul(phi[i], phi[j])
            {
                return Err(RingError::ConstructionMismatch(format!(
                    "{what}: tables differ at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::units;

    fn zmod_r(n: usize) -> FiniteRing {
        build(&ConstructionSpec::Zmod(n)).unwrap()
    }

    #[test]
    fn matrix_arity_one_is_the_base_ring() {
        let z4 = zmod_r(4);
        let m1 = matrix_over(&z4, 1, &BuildOptions::default()).unwrap();
        assert!(m1.tables_identical(&z4));
        let ms1 = matrix_s_over(&z4, 1, 2, &BuildOptions::default()).unwrap();
        assert!(ms1.tables_identical(&z4));
    }

    #[test]
    fn const_diag_4_over_z2_has_order_128() {
        // 1 diagonal slot + 6 strict upper slots
        let z2 = zmod_r(2);
        let d4 = const_diag_over(&z2, 4, &BuildOptions::default()).unwrap();
        assert_eq!(d4.order(), 128);
    }

    #[test]
    fn matrix_s_equals_ks_on_z4_with_s2() {
        // Independent routes: the blockwise K_s product against the
        // slot-loop multiplier product. Identical tables also pin down the
        // multiplier exponent convention.
        let z4 = zmod_r(4);
        let ks = ks_over(&z4, 2, &BuildOptions::default()).unwrap();
        let ms = matrix_s_over(&z4, 2, 2, &BuildOptions::default()).unwrap();
        assert!(ms.tables_identical(&ks));
    }

    #[test]
    fn matrix_s_with_multiplier_one_is_plain_matrix() {
        for n in [2usize] {
            for base in [zmod_r(2), zmod_r(4)] {
                let m = matrix_over(&base, n, &BuildOptions::default()).unwrap();
                let ms = matrix_s_over(&base, n, base.one(), &BuildOptions::default()).unwrap();
                assert!(ms.tables_identical(&m));
            }
        }
    }

    #[test]
    fn ks_literal_transcription_fails_validation() {
        // The (2,1) entry of the generalized 2x2 product reads y1 a2 + b1 y1
        // in one transcription; with it, the tables do not form a ring.
        // Shipping this check keeps the corrected entry honest.
        struct LiteralKs {
            base: FiniteRing,
        }
        impl LiteralKs {
            fn split(&self, idx: usize, out: &mut [usize; 4]) {
                let n = self.base.order();
                out[3] = idx % n;
                let idx = idx / n;
                out[2] = idx % n;
                let idx = idx / n;
                out[1] = idx % n;
                out[0] = idx / n;
            }
            fn join(&self, e: &[usize; 4]) -> usize {
                let n = self.base.order();
                ((e[0] * n + e[1]) * n + e[2]) * n + e[3]
            }
        }
        impl TableSource for LiteralKs {
            fn add(&self, i: usize, j: usize) -> usize {
                let (mut a, mut b) = ([0; 4], [0; 4]);
                self.split(i, &mut a);
                self.split(j, &mut b);
                let c = [
                    self.base.add(a[0], b[0]),
                    self.base.add(a[1], b[1]),
                    self.base.add(a[2], b[2]),
                    self.base.add(a[3], b[3]),
                ];
                self.join(&c)
            }
            fn mul(&self, i: usize, j: usize) -> usize {
                let s = 2usize;
                let (mut l, mut r) = ([0; 4], [0; 4]);
                self.split(i, &mut l);
                self.split(j, &mut r);
                let (a1, x1, y1, b1) = (l[0], l[1], l[2], l[3]);
                let (a2, x2, _y2, b2) = (r[0], r[1], r[2], r[3]);
                let base = &self.base;
                let c = [
                    base.add(base.mul(a1, a2), base.mul(s, base.mul(x1, r[2]))),
                    base.add(base.mul(a1, x2), base.mul(x1, b2)),
                    // literal transcription: y1 a2 + b1 y1
                    base.add(base.mul(y1, a2), base.mul(b1, y1)),
                    base.add(base.mul(s, base.mul(y1, x2)), base.mul(b1, b2)),
                ];
                self.join(&c)
            }
            fn neg(&self, i: usize) -> usize {
                let mut a = [0; 4];
                self.split(i, &mut a);
                let c = [
                    self.base.neg(a[0]),
                    self.base.neg(a[1]),
                    self.base.neg(a[2]),
                    self.base.neg(a[3]),
                ];
                self.join(&c)
            }
        }
        let z4 = zmod_r(4);
        let source = LiteralKs { base: z4.clone() };
        let zero = source.join(&[0; 4]);
        let one = source.join(&[1, 0, 0, 1]);
        let candidate =
            UnvalidatedRing::from_source("K-literal", 256, zero, one, Box::new(source)).unwrap();
        let report = crate::ring::validate_axioms(&candidate);
        assert!(
            !report.passed(),
            "literal (2,1) entry unexpectedly yields a ring"
        );
    }

    #[test]
    fn gf4_from_polyquot_has_three_units() {
        let gf4 = build(&ConstructionSpec::Gf(4)).unwrap();
        assert_eq!(gf4.order(), 4);
        assert_eq!(units(&gf4).len(), 3);
        let via_quot = build(&ConstructionSpec::PolyQuot {
            base: Box::new(ConstructionSpec::Zmod(2)),
            modulus: vec![1, 1, 1],
        })
        .unwrap();
        assert!(gf4.tables_identical(&via_quot));
    }

    #[test]
    fn gf_labels_and_fields() {
        for q in [2usize, 3, 4, 5, 7, 8, 9] {
            let f = build(&ConstructionSpec::Gf(q)).unwrap();
            assert_eq!(f.order(), q);
            assert_eq!(units(&f).len(), q - 1, "GF({q}) must be a field");
        }
        assert!(matches!(
            build(&ConstructionSpec::Gf(6)),
            Err(RingError::UnsupportedField(6))
        ));
    }

    #[test]
    fn trivial_extension_isomorphisms() {
        for base in [zmod_r(2), zmod_r(4), build(&ConstructionSpec::Gf(3)).unwrap()] {
            let iso = trivial_extension_iso_checks(&base, &BuildOptions::default()).unwrap();
            assert_eq!(iso.triv.order(), base.order() * base.order());
        }
    }

    #[test]
    fn non_central_multiplier_rejected() {
        let m2 = build(&ConstructionSpec::Matrix {
            n: 2,
            base: Box::new(ConstructionSpec::Gf(2)),
        })
        .unwrap();
        // element 2 of M(2, GF(2)) is [[0,0],[1,0]], not central
        let err = ks_over(&m2, 2, &BuildOptions::default()).unwrap_err();
        assert!(matches!(err, RingError::NonCentralMultiplier { index: 2 }));
    }

    #[test]
    fn oversized_construction_rejected() {
        let z16 = zmod_r(16);
        let err = matrix_over(&z16, 2, &BuildOptions { max_order: 4096 }).unwrap_err();
        assert!(matches!(err, RingError::OrderTooLarge { .. }));
    }

    #[test]
    fn product_encoding_is_leftmost_most_significant() {
        let p = build(&ConstructionSpec::Product(vec![
            ConstructionSpec::Zmod(4),
            ConstructionSpec::Zmod(2),
            ConstructionSpec::Zmod(2),
        ]))
        .unwrap();
        assert_eq!(p.order(), 16);
        assert_eq!(p.name(), "Z(4) x Z(2) x Z(2)");
        // (3, 1, 0) sits at 3*4 + 1*2 + 0
        assert_eq!(p.label(14), "(3, 1, 0)");
    }

    #[test]
    fn canonical_names_match_spec_shapes() {
        let spec = ConstructionSpec::MatrixS {
            n: 2,
            base: Box::new(ConstructionSpec::Zmod(4)),
            s: 2,
        };
        assert_eq!(spec.canonical_name(), "M(2, Z(4), s=2)");
        assert_eq!(build(&spec).unwrap().name(), "M(2, Z(4), s=2)");
        assert_eq!(
            ConstructionSpec::PolyQuot {
                base: Box::new(ConstructionSpec::Zmod(2)),
                modulus: vec![1, 1, 1],
            }
            .canonical_name(),
            "PolyQuot(Z(2), x^2+x+1)"
        );
    }

    #[test]
    fn jquot_of_z9_has_order_three() {
        let q = build(&ConstructionSpec::JQuot(Box::new(ConstructionSpec::Zmod(9)))).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.name(), "JQuot(Z(9))");
    }
}
