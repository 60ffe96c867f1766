//! Abelian variety models, homomorphisms and the induced maps on (co)homology.
//!
//! Rational cohomology of an `n`-dimensional abelian variety is the exterior
//! algebra on `2n` degree-1 generators; homology is the exterior algebra on
//! the dual basis of `H_1`, with pushforwards acting as algebra maps. A
//! homomorphism is its integer matrix on `H_1`; pullback on `H^1` is the
//! transpose. Products order generators factor by factor.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::GeneratorContext;
use crate::exterior::{ExteriorElement, LinearMap, MultiIndex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarietyKind {
    Base,
    /// The dual of the base variety of the same name. Dualising again gives
    /// back the base model itself.
    Dual,
    Product(Vec<Variety>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variety {
    name: String,
    n: usize,
    kind: VarietyKind,
}

impl Variety {
    pub fn abelian(name: impl Into<String>, n: usize) -> Self {
        assert!(n >= 1, "abelian variety must have positive dimension");
        Variety {
            name: name.into(),
            n,
            kind: VarietyKind::Base,
        }
    }

    pub fn product(factors: Vec<Variety>) -> Self {
        assert!(!factors.is_empty(), "empty product");
        let n = factors.iter().map(|f| f.n).sum();
        let name = factors
            .iter()
            .map(|f| f.label())
            .collect::<Vec<_>>()
            .join("×");
        Variety {
            name,
            n,
            kind: VarietyKind::Product(factors),
        }
    }

    pub fn pair(a: &Variety, b: &Variety) -> Self {
        Self::product(vec![a.clone(), b.clone()])
    }

    pub fn dual(&self) -> Self {
        match &self.kind {
            VarietyKind::Base => Variety {
                kind: VarietyKind::Dual,
                ..self.clone()
            },
            VarietyKind::Dual => Variety {
                kind: VarietyKind::Base,
                ..self.clone()
            },
            VarietyKind::Product(fs) => Self::product(fs.iter().map(Variety::dual).collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of degree-1 generators, `2n`.
    pub fn generator_count(&self) -> usize {
        2 * self.n
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn is_product(&self) -> bool {
        matches!(self.kind, VarietyKind::Product(_))
    }

    /// Factors of a product; a non-product is its own single factor.
    pub fn factors(&self) -> Vec<Variety> {
        match &self.kind {
            VarietyKind::Product(fs) => fs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// `(start, len)` of factor `i`'s generator block.
    pub fn block(&self, i: usize) -> (usize, usize) {
        let fs = self.factors();
        let start = fs[..i].iter().map(Variety::generator_count).sum();
        (start, fs[i].generator_count())
    }

    pub fn block_index(&self, i: usize) -> MultiIndex {
        let (start, len) = self.block(i);
        MultiIndex::block(start, len)
    }

    pub fn orientation(&self) -> MultiIndex {
        MultiIndex::full(self.generator_count())
    }

    pub fn label(&self) -> String {
        match &self.kind {
            VarietyKind::Base => self.name.clone(),
            VarietyKind::Dual => format!("{}^", self.name),
            VarietyKind::Product(_) => format!("({})", self.name),
        }
    }

    fn atomic_names(&self, homology: bool) -> Vec<String> {
        let prefix = match (&self.kind, homology) {
            (VarietyKind::Dual, false) => "f",
            (VarietyKind::Dual, true) => "y",
            (_, false) => "e",
            (_, true) => "x",
        };
        (1..=self.generator_count())
            .map(|i| format!("{prefix}{i}"))
            .collect()
    }

    fn names(&self, homology: bool) -> Vec<String> {
        match &self.kind {
            VarietyKind::Product(fs) => {
                let blocks: Vec<Vec<String>> = fs.iter().map(|f| f.names(homology)).collect();
                let mut all: Vec<&String> = blocks.iter().flatten().collect();
                all.sort();
                let clash = all.windows(2).any(|w| w[0] == w[1]);
                blocks
                    .into_iter()
                    .enumerate()
                    .flat_map(|(i, b)| {
                        b.into_iter()
                            .map(move |s| if clash { format!("{s}_{}", i + 1) } else { s })
                    })
                    .collect()
            }
            _ => self.atomic_names(homology),
        }
    }

    /// Cohomology generator names: `e1..` on a base variety, `f1..` on its dual.
    pub fn cohomology_context(&self) -> GeneratorContext {
        GeneratorContext::new(self.names(false)).expect("generated names are unique")
    }

    /// Homology generator names: `x1..` on a base variety, `y1..` on its dual.
    pub fn homology_context(&self) -> GeneratorContext {
        GeneratorContext::new(self.names(true)).expect("generated names are unique")
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn check_variety(expected: &Variety, found: &Variety) -> Result<()> {
    if expected != found {
        return Err(Error::VarietyMismatch {
            expected: expected.label(),
            found: found.label(),
        });
    }
    Ok(())
}

/// A homomorphism of abelian varieties, as its integer matrix on `H_1`
/// (`target generators × source generators`, row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Variety,
    target: Variety,
    matrix: Vec<i64>,
}

impl Morphism {
    pub fn new(source: Variety, target: Variety, matrix: Vec<i64>) -> Result<Self> {
        let (rows, cols) = (target.generator_count(), source.generator_count());
        if matrix.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows: matrix.len() / cols.max(1),
                cols,
                source_dim: cols,
                target_dim: rows,
            });
        }
        Ok(Morphism {
            source,
            target,
            matrix,
        })
    }

    /// A homomorphism between equal-dimensional varieties with nonzero determinant.
    pub fn isogeny(source: Variety, target: Variety, matrix: Vec<i64>) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::NotAnIsogeny(format!(
                "dimensions {} and {} differ",
                source.n(),
                target.n()
            )));
        }
        let f = Self::new(source, target, matrix)?;
        if f.determinant().is_zero() {
            return Err(Error::NotAnIsogeny("singular matrix".into()));
        }
        Ok(f)
    }

    pub fn identity(x: &Variety) -> Self {
        Self::mult(x, 1)
    }

    /// `m_X`, multiplication by `m`.
    pub fn mult(x: &Variety, m: i64) -> Self {
        let d = x.generator_count();
        let mut matrix = vec![0; d * d];
        for i in 0..d {
            matrix[i * d + i] = m;
        }
        Morphism {
            source: x.clone(),
            target: x.clone(),
            matrix,
        }
    }

    pub fn neg(x: &Variety) -> Self {
        Self::mult(x, -1)
    }

    /// The group law `μ(z, z') = z + z'` on `X × X`, matrix `[I | I]`.
    pub fn sum(x: &Variety) -> Self {
        let d = x.generator_count();
        let mut matrix = vec![0; d * 2 * d];
        for i in 0..d {
            matrix[i * 2 * d + i] = 1;
            matrix[i * 2 * d + d + i] = 1;
        }
        Morphism {
            source: Variety::pair(x, x),
            target: x.clone(),
            matrix,
        }
    }

    /// The diagonal `X → X × X`, matrix `[I ; I]`.
    pub fn diagonal(x: &Variety) -> Self {
        Self::identity(x)
            .pairing(&Self::identity(x))
            .expect("same source")
    }

    /// Projection of a product onto factor `i`.
    pub fn projection(product: &Variety, i: usize) -> Self {
        let target = product.factors()[i].clone();
        let (start, len) = product.block(i);
        let cols = product.generator_count();
        let mut matrix = vec![0; len * cols];
        for r in 0..len {
            matrix[r * cols + start + r] = 1;
        }
        Morphism {
            source: product.clone(),
            target,
            matrix,
        }
    }

    /// `(self, other) : X → Y × Z`.
    pub fn pairing(&self, other: &Morphism) -> Result<Self> {
        check_variety(&self.source, &other.source)?;
        let mut matrix = self.matrix.clone();
        matrix.extend_from_slice(&other.matrix);
        Morphism::new(
            self.source.clone(),
            Variety::pair(&self.target, &other.target),
            matrix,
        )
    }

    /// `self × other : X1 × X2 → Y1 × Y2`.
    pub fn product(&self, other: &Morphism) -> Self {
        let (r1, c1) = (self.rows(), self.cols());
        let (r2, c2) = (other.rows(), other.cols());
        let cols = c1 + c2;
        let mut matrix = vec![0; (r1 + r2) * cols];
        for r in 0..r1 {
            for c in 0..c1 {
                matrix[r * cols + c] = self.entry(r, c);
            }
        }
        for r in 0..r2 {
            for c in 0..c2 {
                matrix[(r1 + r) * cols + c1 + c] = other.entry(r, c);
            }
        }
        Morphism {
            source: Variety::pair(&self.source, &other.source),
            target: Variety::pair(&self.target, &other.target),
            matrix,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Self> {
        check_variety(&self.target, &next.source)?;
        let (rows, inner, cols) = (next.rows(), self.rows(), self.cols());
        let mut matrix = vec![0; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                matrix[r * cols + c] = (0..inner)
                    .map(|k| next.entry(r, k) * self.entry(k, c))
                    .sum();
            }
        }
        Morphism::new(self.source.clone(), next.target.clone(), matrix)
    }

    pub fn source(&self) -> &Variety {
        &self.source
    }

    pub fn target(&self) -> &Variety {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.generator_count()
    }

    pub fn cols(&self) -> usize {
        self.source.generator_count()
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.matrix[r * self.cols() + c]
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// Action on degree-1 homology.
    pub fn homology_map(&self) -> LinearMap {
        LinearMap::from_integers(self.rows(), self.cols(), &self.matrix).expect("shape checked")
    }

    /// Action on degree-1 cohomology (the transpose).
    pub fn cohomology_map(&self) -> LinearMap {
        self.homology_map().transpose()
    }

    /// Determinant of a square matrix (fraction-free elimination); zero for
    /// non-square matrices.
    pub fn determinant(&self) -> BigInt {
        let n = self.rows();
        if n != self.cols() {
            return BigInt::zero();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| BigInt::from(self.entry(r, c))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// A rational cohomology class on a variety model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    variety: Variety,
    element: ExteriorElement,
}

/// A rational homology class, in the exterior algebra on `H_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomClass {
    variety: Variety,
    element: ExteriorElement,
}

macro_rules! class_common {
    ($ty:ident) => {
        impl $ty {
            pub fn new(variety: Variety, element: ExteriorElement) -> Result<Self> {
                if element.dim() != variety.generator_count() {
                    return Err(Error::DimensionMismatch {
                        expected: variety.generator_count(),
                        found: element.dim(),
                    });
                }
                Ok($ty { variety, element })
            }

            pub fn zero(variety: &Variety) -> Self {
                $ty {
                    element: ExteriorElement::zero(variety.generator_count()),
                    variety: variety.clone(),
                }
            }

            pub fn one(variety: &Variety) -> Self {
                $ty {
                    element: ExteriorElement::one(variety.generator_count()),
                    variety: variety.clone(),
                }
            }

            /// Basis monomial from a bitmask of generators.
            pub fn basis(variety: &Variety, index: MultiIndex) -> Self {
                $ty {
                    element: ExteriorElement::monomial(
                        variety.generator_count(),
                        index,
                        crate::exterior::rat(1),
                    ),
                    variety: variety.clone(),
                }
            }

            /// Every basis monomial, in bitmask order.
            pub fn all_basis(variety: &Variety) -> Vec<Self> {
                let d = variety.generator_count();
                (0..1u64 << d)
                    .map(|b| Self::basis(variety, MultiIndex::from_bits(b)))
                    .collect()
            }

            pub fn variety(&self) -> &Variety {
                &self.variety
            }

            pub fn element(&self) -> &ExteriorElement {
                &self.element
            }

            pub fn into_element(self) -> ExteriorElement {
                self.element
            }

            pub fn is_zero(&self) -> bool {
                self.element.is_zero()
            }

            pub fn degree(&self) -> Option<usize> {
                self.element.homogeneous_degree()
            }

            pub fn map_element(&self, f: impl FnOnce(&ExteriorElement) -> ExteriorElement) -> Self {
                $ty {
                    variety: self.variety.clone(),
                    element: f(&self.element),
                }
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                check_variety(&self.variety, &other.variety)?;
                Ok(self.map_element(|e| e.add(&other.element).expect("same variety")))
            }

            pub fn scale_int(&self, c: i64) -> Self {
                self.map_element(|e| e.scale_int(c))
            }

            pub fn neg(&self) -> Self {
                self.map_element(ExteriorElement::neg)
            }

            pub fn graded_part(&self, k: usize) -> Self {
                self.map_element(|e| e.graded_part(k))
            }

            fn check_on(&self, v: &Variety) -> Result<()> {
                check_variety(v, &self.variety)
            }
        }
    };
}

class_common!(CohClass);
class_common!(HomClass);

impl CohClass {
    pub fn parse(
        variety: &Variety,
        text: &str,
    ) -> std::result::Result<Self, crate::expr::ParseError> {
        let element = variety.cohomology_context().parse(text)?;
        Ok(CohClass {
            variety: variety.clone(),
            element,
        })
    }

    /// Poincaré dual homology class, `H^k → H_{2n−k}`.
    pub fn poincare_dual(&self) -> HomClass {
        HomClass {
            element: self
                .element
                .poincare_dual(self.variety.orientation())
                .expect("class matches its variety"),
            variety: self.variety.clone(),
        }
    }

    pub fn cup(&self, other: &CohClass) -> Result<CohClass> {
        check_variety(&self.variety, &other.variety)?;
        Ok(self.map_element(|e| e.wedge(&other.element).expect("same variety")))
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .variety
            .cohomology_context()
            .print(&self.element)
            .expect("context matches");
        f.write_str(&s)
    }
}

impl HomClass {
    pub fn parse(
        variety: &Variety,
        text: &str,
    ) -> std::result::Result<Self, crate::expr::ParseError> {
        let element = variety.homology_context().parse(text)?;
        Ok(HomClass {
            variety: variety.clone(),
            element,
        })
    }

    /// The fundamental class `[X] ∈ H_{2n}`.
    pub fn fundamental(variety: &Variety) -> Self {
        Self::basis(variety, variety.orientation())
    }

    /// The inverse of [`CohClass::poincare_dual`].
    pub fn to_cohomology(&self) -> CohClass {
        CohClass {
            element: self
                .element
                .poincare_dual_inverse(self.variety.orientation())
                .expect("class matches its variety"),
            variety: self.variety.clone(),
        }
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .variety
            .homology_context()
            .print(&self.element)
            .expect("context matches");
        f.write_str(&s)
    }
}

/// `f^*` on cohomology.
pub fn pullback(f: &Morphism, a: &CohClass) -> Result<CohClass> {
    a.check_on(&f.target)?;
    CohClass::new(
        f.source.clone(),
        a.element.algebra_map(&f.cohomology_map())?,
    )
}

/// `f_*` on homology.
pub fn push_homology(f: &Morphism, a: &HomClass) -> Result<HomClass> {
    a.check_on(&f.source)?;
    HomClass::new(f.target.clone(), a.element.algebra_map(&f.homology_map())?)
}

/// Gysin pushforward on cohomology, `PD⁻¹ ∘ f_* ∘ PD`.
pub fn gysin(f: &Morphism, a: &CohClass) -> Result<CohClass> {
    a.check_on(&f.source)?;
    Ok(push_homology(f, &a.poincare_dual())?.to_cohomology())
}

/// Gysin pullback on homology, `PD ∘ f^* ∘ PD⁻¹`.
pub fn pullback_homology(f: &Morphism, y: &HomClass) -> Result<HomClass> {
    y.check_on(&f.target)?;
    Ok(pullback(f, &y.to_cohomology())?.poincare_dual())
}

/// Künneth external product `p1^*a ∧ p2^*b` on `X × Y`.
pub fn cross(a: &CohClass, b: &CohClass) -> CohClass {
    let product = Variety::pair(&a.variety, &b.variety);
    CohClass {
        element: block_product(&a.element, &b.element),
        variety: product,
    }
}

/// External product of homology classes on `X × Y`.
pub fn cross_homology(a: &HomClass, b: &HomClass) -> HomClass {
    let product = Variety::pair(&a.variety, &b.variety);
    HomClass {
        element: block_product(&a.element, &b.element),
        variety: product,
    }
}

fn block_product(a: &ExteriorElement, b: &ExteriorElement) -> ExteriorElement {
    let dim = a.dim() + b.dim();
    // a's block sits left of b's, so sorted merging introduces no sign
    let left = a.embedded(0, dim).expect("fits");
    let right = b.embedded(a.dim(), dim).expect("fits");
    left.wedge(&right).expect("same dimension")
}

/// Intersection product `PD(PD⁻¹a ∧ PD⁻¹b)` on homology, `H_k ⊗ H_l → H_{k+l−2n}`.
pub fn intersect_homology(a: &HomClass, b: &HomClass) -> Result<HomClass> {
    check_variety(&a.variety, &b.variety)?;
    Ok(a.to_cohomology().cup(&b.to_cohomology())?.poincare_dual())
}
