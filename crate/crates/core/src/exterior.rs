//! Exact graded exterior algebra on `D` anonymous degree-1 generators.
//!
//! Basis monomials are bitmasks over at most 64 generators. Every product is
//! normalised to the sorted monomial with the sign of the merge permutation,
//! so two elements are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub const MAX_GENERATORS: usize = 64;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A strictly increasing set of generator positions (0-based internally).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_bits(bits: u64) -> Self {
        MultiIndex(bits)
    }

    /// All positions `0..dim`.
    pub fn full(dim: usize) -> Self {
        if dim >= 64 {
            MultiIndex(u64::MAX)
        } else {
            MultiIndex((1u64 << dim) - 1)
        }
    }

    /// The contiguous block `start..start + len`.
    pub fn block(start: usize, len: usize) -> Self {
        MultiIndex(Self::full(len).0 << start)
    }

    pub fn single(pos: usize) -> Self {
        MultiIndex(1u64 << pos)
    }

    /// Builds an index set from 0-based positions; `None` on a repeat.
    pub fn from_positions(positions: &[usize]) -> Option<Self> {
        let mut bits = 0u64;
        for &p in positions {
            let bit = 1u64 << p;
            if bits & bit != 0 {
                return None;
            }
            bits |= bit;
        }
        Some(MultiIndex(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, other: MultiIndex) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> Self {
        MultiIndex(self.0 | other.0)
    }

    pub fn minus(self, other: MultiIndex) -> Self {
        MultiIndex(self.0 & !other.0)
    }

    /// Highest position + 1, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// Moves every position up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        MultiIndex(self.0 << offset)
    }

    /// Deletes the positions in `removed` and closes the gaps.
    pub fn compressed(self, removed: MultiIndex) -> Self {
        let mut out = 0u64;
        let mut next = 0;
        let keep = self.minus(removed);
        for p in 0..self.span().max(removed.span()) {
            if removed.0 >> p & 1 == 1 {
                continue;
            }
            if keep.0 >> p & 1 == 1 {
                out |= 1u64 << next;
            }
            next += 1;
        }
        MultiIndex(out)
    }

    /// Lexicographic comparison of the increasing position lists.
    pub fn lex_cmp(self, other: MultiIndex) -> std::cmp::Ordering {
        self.positions().cmp(other.positions())
    }
}

/// Sign of the shuffle taking `a` followed by `b` into sorted order:
/// `e_a ∧ e_b = sign · e_{a∪b}` for disjoint `a`, `b`. Returns true when negative.
pub fn merge_sign_negative(a: MultiIndex, b: MultiIndex) -> bool {
    let mut inversions = 0u32;
    for j in b.positions() {
        // positions of `a` strictly above j have to pass over e_j
        inversions += (a.0 >> j >> 1).count_ones();
    }
    inversions & 1 == 1
}

/// An element of the exterior algebra on `dim` generators with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl ExteriorElement {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_GENERATORS, "at most 64 generators supported");
        ExteriorElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::monomial(dim, MultiIndex::EMPTY, c)
    }

    /// The degree-1 generator at 0-based position `pos`.
    pub fn generator(dim: usize, pos: usize) -> Self {
        assert!(
            pos < dim,
            "generator {pos} out of range for {dim} generators"
        );
        Self::monomial(dim, MultiIndex::single(pos), Rational::one())
    }

    pub fn monomial(dim: usize, index: MultiIndex, c: Rational) -> Self {
        let mut out = Self::zero(dim);
        assert!(index.span() <= dim, "monomial exceeds generator count");
        if !c.is_zero() {
            out.terms.insert(index, c);
        }
        out
    }

    /// Collects `(index, coefficient)` pairs, summing repeats and pruning zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        if dim > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(dim));
        }
        let mut out = Self::zero(dim);
        for (m, c) in terms {
            if m.span() > dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.span(),
                });
            }
            out.accumulate(m, c);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, index: MultiIndex) -> Rational {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(k)` when every term has degree `k`; the zero element reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn accumulate(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExteriorElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        ExteriorElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if !ma.is_disjoint(*mb) {
                    continue;
                }
                let c = ca * cb;
                let c = if merge_sign_negative(*ma, *mb) { -c } else { c };
                out.accumulate(ma.union(*mb), c);
            }
        }
        Ok(out)
    }

    /// `self^{∧ power}`.
    pub fn power(&self, power: usize) -> Result<Self> {
        let mut out = Self::one(self.dim);
        for _ in 0..power {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// The degree-`k` component; out-of-range `k` gives zero.
    pub fn graded_part(&self, k: usize) -> Self {
        ExteriorElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Image under the algebra homomorphism extending `map` on degree 1.
    pub fn algebra_map(&self, map: &LinearMap) -> Result<Self> {
        if map.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: map.cols(),
                found: self.dim,
            });
        }
        let columns: Vec<ExteriorElement> = (0..map.cols()).map(|c| map.column(c)).collect();
        let mut out = Self::zero(map.rows());
        // products of columns over monomials sharing a prefix are recomputed;
        // the spaces used here are small enough that this never dominates
        for (m, c) in &self.terms {
            let mut image = Self::scalar(map.rows(), c.clone());
            for p in m.positions() {
                image = image.wedge(&columns[p])?;
                if image.is_zero() {
                    break;
                }
            }
            for (mi, ci) in image.terms {
                out.accumulate(mi, ci);
            }
        }
        Ok(out)
    }

    /// Poincaré duality by right complement: `e_S ↦ σ·e_{S^c}` where
    /// `e_S ∧ e_{S^c} = σ·e_orientation`.
    pub fn poincare_dual(&self, orientation: MultiIndex) -> Result<Self> {
        self.check_orientation(orientation)?;
        let full = MultiIndex::full(self.dim);
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let comp = full.minus(*m);
            let c = if merge_sign_negative(*m, comp) {
                -c.clone()
            } else {
                c.clone()
            };
            out.accumulate(comp, c);
        }
        Ok(out)
    }

    /// Inverse of [`poincare_dual`](Self::poincare_dual).
    pub fn poincare_dual_inverse(&self, orientation: MultiIndex) -> Result<Self> {
        self.check_orientation(orientation)?;
        let full = MultiIndex::full(self.dim);
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let comp = full.minus(*m);
            let c = if merge_sign_negative(comp, *m) {
                -c.clone()
            } else {
                c.clone()
            };
            out.accumulate(comp, c);
        }
        Ok(out)
    }

    fn check_orientation(&self, orientation: MultiIndex) -> Result<()> {
        if orientation != MultiIndex::full(self.dim) {
            return Err(Error::BadOrientation(self.dim));
        }
        Ok(())
    }

    /// Integration along the fibre generators `fiber`: keeps the terms that
    /// contain the whole fibre block, moves that block to the left (collecting
    /// the Koszul sign), strips it and re-indexes the remaining generators.
    pub fn fiber_integrate(&self, fiber: MultiIndex) -> Result<Self> {
        if fiber.span() > self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: fiber.span(),
            });
        }
        let mut out = Self::zero(self.dim - fiber.degree());
        for (m, c) in &self.terms {
            if !m.contains(fiber) {
                continue;
            }
            let rest = m.minus(fiber);
            let c = if merge_sign_negative(fiber, rest) {
                -c.clone()
            } else {
                c.clone()
            };
            out.accumulate(rest.compressed(fiber), c);
        }
        Ok(out)
    }

    /// `Σ_i a^i / i!` for a homogeneous degree-2 element.
    pub fn exp2(&self) -> Result<Self> {
        if !self.is_homogeneous_of(2) {
            return Err(Error::NotHomogeneous { expected: 2 });
        }
        let mut out = Self::one(self.dim);
        let mut term = Self::one(self.dim);
        for i in 1..=self.dim / 2 {
            term = term.wedge(self)?.scale(&ratio(1, i as i64));
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Re-embeds into `dim` generators with every position moved up by `offset`.
    pub fn embedded(&self, offset: usize, dim: usize) -> Result<Self> {
        if offset + self.dim > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: offset + self.dim,
            });
        }
        Ok(ExteriorElement {
            dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(offset), c.clone()))
                .collect(),
        })
    }

    /// Restricts to the generator window `start..start + len`; terms touching
    /// generators outside the window must be absent.
    pub fn restricted(&self, start: usize, len: usize) -> Result<Self> {
        let window = MultiIndex::block(start, len);
        let mut out = Self::zero(len);
        for (m, c) in &self.terms {
            if !window.contains(*m) {
                return Err(Error::Unsupported(format!(
                    "term {m:?} leaves the generator window {start}..{}",
                    start + len
                )));
            }
            out.terms.insert(MultiIndex(m.0 >> start), c.clone());
        }
        Ok(out)
    }

    /// Terms in canonical print order: ascending degree, then lexicographic.
    pub fn sorted_terms(&self) -> Vec<(MultiIndex, &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then(a.lex_cmp(*b)));
        v
    }

    /// Largest absolute numerator, for quick sanity bounds in tests.
    pub fn max_abs_coefficient(&self) -> Option<Rational> {
        self.terms.values().map(|c| c.abs()).max()
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorElement[D={}](", self.dim)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.dim).map(|i| format!("e{i}")).collect();
        f.write_str(&crate::expr::format_terms(self, &names))
    }
}

/// A rational matrix acting on degree-1 generators, `rows × cols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows,
                cols,
                source_dim: cols,
                target_dim: rows,
            });
        }
        Ok(LinearMap {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, rat(1))
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c.clone();
        }
        LinearMap {
            rows: dim,
            cols: dim,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        LinearMap {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                entries.push(acc);
            }
        }
        LinearMap::new(self.rows, other.cols, entries)
    }

    /// Image of generator `c` as a degree-1 element on `rows` generators.
    pub fn column(&self, c: usize) -> ExteriorElement {
        let mut out = ExteriorElement::zero(self.rows);
        for r in 0..self.rows {
            out.accumulate(MultiIndex::single(r), self.get(r, c).clone());
        }
        out
    }
}
