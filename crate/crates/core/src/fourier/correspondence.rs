use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{ExteriorElement, MultiIndex};
use crate::variety::{self, CohClass, HomClass, Morphism, Variety};

/// A class on `X × Y`, read as a correspondence from `X` to `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence {
    source: Variety,
    target: Variety,
    element: ExteriorElement,
}

fn mismatch(expected: &Variety, found: &Variety) -> Error {
    Error::VarietyMismatch {
        expected: expected.label(),
        found: found.label(),
    }
}

impl Correspondence {
    pub fn new(source: Variety, target: Variety, element: ExteriorElement) -> Result<Self> {
        let d = source.generator_count() + target.generator_count();
        if element.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: element.dim(),
            });
        }
        Ok(Correspondence {
            source,
            target,
            element,
        })
    }

    /// Reads a class on a two-factor product as a correspondence.
    pub fn from_class(class: &CohClass) -> Result<Self> {
        let fs = class.variety().factors();
        if !class.variety().is_product() || fs.len() != 2 {
            return Err(Error::Unsupported(format!(
                "{} is not a product of two factors",
                class.variety()
            )));
        }
        Self::new(fs[0].clone(), fs[1].clone(), class.element().clone())
    }

    /// The graph `Γ_f = (id, f)_*[X]`, i.e. the Gysin image of `1`.
    pub fn graph(f: &Morphism) -> Self {
        let embed = Morphism::identity(f.source())
            .pairing(f)
            .expect("same source");
        let one = CohClass::one(f.source());
        let class = variety::gysin(&embed, &one).expect("class on source");
        Self::from_class(&class).expect("two factors")
    }

    pub fn source(&self) -> &Variety {
        &self.source
    }

    pub fn target(&self) -> &Variety {
        &self.target
    }

    pub fn product(&self) -> Variety {
        Variety::pair(&self.source, &self.target)
    }

    pub fn element(&self) -> &ExteriorElement {
        &self.element
    }

    pub fn into_element(self) -> ExteriorElement {
        self.element
    }

    pub fn as_class(&self) -> CohClass {
        CohClass::new(self.product(), self.element.clone()).expect("dimension matches")
    }

    /// The degree `d` with the class in `H^{2(n_Y − d)}`; `None` when the
    /// class is inhomogeneous or of odd degree.
    pub fn shift(&self) -> Option<i64> {
        let deg = self.element.homogeneous_degree()?;
        (deg % 2 == 0).then(|| self.target.n() as i64 - (deg / 2) as i64)
    }

    /// `Γ_*(α) = p_{2*}(p_1^*α ∧ Γ)`.
    pub fn act(&self, a: &CohClass) -> Result<CohClass> {
        if a.variety() != &self.source {
            return Err(mismatch(&self.source, a.variety()));
        }
        let dx = self.source.generator_count();
        let pulled = a.element().embedded(0, self.element.dim())?;
        let integrand = pulled.wedge(&self.element)?;
        CohClass::new(
            self.target.clone(),
            integrand.fiber_integrate(MultiIndex::block(0, dx))?,
        )
    }

    /// The action on homology, routed through Poincaré duality on both ends.
    pub fn act_homology(&self, y: &HomClass) -> Result<HomClass> {
        Ok(self.act(&y.to_cohomology())?.poincare_dual())
    }

    /// `next ∘ self = p_{13*}(p_{12}^*self ∧ p_{23}^*next)` on `X × Y × Z`.
    pub fn then(&self, next: &Correspondence) -> Result<Correspondence> {
        if self.target != next.source {
            return Err(mismatch(&self.target, &next.source));
        }
        let dx = self.source.generator_count();
        let dy = self.target.generator_count();
        let total = dx + dy + next.target.generator_count();
        let left = self.element.embedded(0, total)?;
        let right = next.element.embedded(dx, total)?;
        let integrand = left.wedge(&right)?;
        Correspondence::new(
            self.source.clone(),
            next.target.clone(),
            integrand.fiber_integrate(MultiIndex::block(dx, dy))?,
        )
    }

    /// `ᵗΓ` on `Y × X`: swaps the blocks, a monomial of bidegree `(j, k)`
    /// picking up `(−1)^{jk}`.
    pub fn transpose(&self) -> Correspondence {
        let dx = self.source.generator_count();
        let dy = self.target.generator_count();
        let x_block = MultiIndex::block(0, dx);
        let terms = self.element.terms().map(|(m, c)| {
            let a = MultiIndex::from_bits(m.bits() & x_block.bits());
            let b = m.minus(a);
            let swapped = MultiIndex::from_bits(b.bits() >> dx).union(a.shifted(dy));
            let c = if a.degree() * b.degree() % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            (swapped, c)
        });
        let element = ExteriorElement::from_terms(dx + dy, terms).expect("indices stay in range");
        Correspondence {
            source: self.target.clone(),
            target: self.source.clone(),
            element,
        }
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_class().fmt(f)
    }
}

/// `α * β = μ_*(α × β)`, the convolution along the group law.
pub fn pontryagin(a: &HomClass, b: &HomClass) -> Result<HomClass> {
    if a.variety() != b.variety() {
        return Err(mismatch(a.variety(), b.variety()));
    }
    let mu = Morphism::sum(a.variety());
    variety::push_homology(&mu, &variety::cross_homology(a, b))
}

/// The convolution on cohomology, `μ_!(p_1^*α ∧ p_2^*β)`. Under Poincaré
/// duality it matches [`pontryagin`] up to the Koszul sign `(−1)^{|α||β|}`.
pub fn convolution(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    if a.variety() != b.variety() {
        return Err(mismatch(a.variety(), b.variety()));
    }
    let mu = Morphism::sum(a.variety());
    variety::gysin(&mu, &variety::cross(a, b))
}

/// The dual isogeny `f̂ : Ŷ → X̂` of `f : X → Y`: the transposed matrix.
pub fn dual_isogeny(f: &Morphism) -> Result<Morphism> {
    let (rows, cols) = (f.rows(), f.cols());
    let mut matrix = vec![0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            matrix[c * rows + r] = f.entry(r, c);
        }
    }
    Morphism::isogeny(f.target().dual(), f.source().dual(), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::rat;
    use crate::fourier::{poincare_class, FourierTransform};
    use crate::random;
    use crate::variety::{cross, pullback, push_homology};

    fn x(n: usize) -> Variety {
        Variety::abelian("X", n)
    }

    #[test]
    fn identity_graph_acts_trivially() {
        let v = x(2);
        let g = Correspondence::graph(&Morphism::identity(&v));
        assert_eq!(g.shift(), Some(0));
        for a in CohClass::all_basis(&v) {
            assert_eq!(g.act(&a).unwrap(), a);
        }
    }

    #[test]
    fn diagonal_class_matches_brute_force_oracle() {
        // the unique degree-2 class on E × E acting as the identity, searched
        // among coefficient vectors in {-1, 0, 1}
        let e = x(1);
        let basis: Vec<MultiIndex> = (0u64..16)
            .map(MultiIndex::from_bits)
            .filter(|m| m.degree() == 2)
            .collect();
        let mut found = Vec::new();
        for code in 0..3usize.pow(basis.len() as u32) {
            let mut c = code;
            let terms = basis.iter().map(|m| {
                let coeff = (c % 3) as i64 - 1;
                c /= 3;
                (*m, rat(coeff))
            });
            let el = ExteriorElement::from_terms(4, terms.collect::<Vec<_>>()).unwrap();
            let gamma = Correspondence::new(e.clone(), e.clone(), el).unwrap();
            if CohClass::all_basis(&e)
                .iter()
                .all(|a| gamma.act(a).unwrap() == *a)
            {
                found.push(gamma);
            }
        }
        assert_eq!(found.len(), 1);
        assert_eq!(found[0], Correspondence::graph(&Morphism::identity(&e)));
    }

    #[test]
    fn zero_map_graph_projects_to_degree_zero_homology() {
        let v = x(1);
        let g = Correspondence::graph(&Morphism::mult(&v, 0));
        for y in HomClass::all_basis(&v) {
            let out = g.act_homology(&y).unwrap();
            if y.degree() == Some(0) {
                assert_eq!(out, y);
            } else {
                assert!(out.is_zero());
            }
        }
    }

    #[test]
    fn multiplication_graph_scales_homology() {
        let v = x(2);
        for m in [-2, 3] {
            let g = Correspondence::graph(&Morphism::mult(&v, m));
            for y in HomClass::all_basis(&v) {
                let k = y.degree().unwrap() as u32;
                assert_eq!(g.act_homology(&y).unwrap(), y.scale_int(m.pow(k)));
            }
        }
    }

    #[test]
    fn kernel_acts_as_fourier() {
        let v = x(2);
        let f = FourierTransform::new(&v);
        let mut rng = random::trial_rng(1, 0);
        for _ in 0..10 {
            let a = random::coh_class(&mut rng, &v);
            assert_eq!(f.kernel().act(&a).unwrap(), f.apply(&a).unwrap());
        }
    }

    #[test]
    fn transpose_laws() {
        let (a_var, b_var) = (x(1), x(2));
        let mut rng = random::trial_rng(2, 0);
        for _ in 0..10 {
            let a = CohClass::new(a_var.clone(), random::homogeneous(&mut rng, 2, 1)).unwrap();
            let b = CohClass::new(b_var.clone(), random::homogeneous(&mut rng, 4, 3)).unwrap();
            let g = Correspondence::from_class(&cross(&a, &b)).unwrap();
            let t = g.transpose();
            assert_eq!(t.transpose(), g);
            assert_eq!(t, Correspondence::from_class(&cross(&b, &a).neg()).unwrap());
        }
        let f = random::morphism(&mut rng, &a_var, &b_var);
        let tg = Correspondence::graph(&f).transpose();
        for beta in CohClass::all_basis(&b_var) {
            assert_eq!(tg.act(&beta).unwrap(), pullback(&f, &beta).unwrap());
        }
    }

    #[test]
    fn composition_with_identity_and_graphs() {
        let (a, b, c) = (x(1), x(2), x(1));
        let mut rng = random::trial_rng(3, 0);
        let gamma =
            Correspondence::new(a.clone(), b.clone(), random::element(&mut rng, 6)).unwrap();
        let id = Correspondence::graph(&Morphism::identity(&b));
        assert_eq!(gamma.then(&id).unwrap(), gamma);
        let f = random::morphism(&mut rng, &a, &b);
        let g = random::morphism(&mut rng, &b, &c);
        assert_eq!(
            Correspondence::graph(&f)
                .then(&Correspondence::graph(&g))
                .unwrap(),
            Correspondence::graph(&f.then(&g).unwrap())
        );
        assert!(gamma.then(&gamma).is_err());
    }

    #[test]
    fn pontryagin_examples() {
        let v = x(1);
        let one = HomClass::one(&v);
        let y = HomClass::parse(&v, "3*x1 - x1^x2").unwrap();
        assert_eq!(pontryagin(&one, &y).unwrap(), y);
        let x1 = HomClass::parse(&v, "x1").unwrap();
        let x2 = HomClass::parse(&v, "x2").unwrap();
        assert_eq!(
            pontryagin(&x1, &x2).unwrap(),
            HomClass::parse(&v, "x1^x2").unwrap()
        );
        assert_eq!(
            pontryagin(&x2, &x1).unwrap(),
            pontryagin(&x1, &x2).unwrap().neg()
        );
        assert!(pontryagin(&x1, &HomClass::one(&x(2))).is_err());
    }

    #[test]
    fn convolution_is_signed_pontryagin() {
        let v = x(2);
        let basis = CohClass::all_basis(&v);
        for a in basis.iter().step_by(3) {
            for b in basis.iter().step_by(5) {
                let (i, j) = (a.degree().unwrap(), b.degree().unwrap());
                let via_homology = pontryagin(&a.poincare_dual(), &b.poincare_dual())
                    .unwrap()
                    .to_cohomology();
                let sign = if i * j % 2 == 1 { -1 } else { 1 };
                assert_eq!(convolution(a, b).unwrap(), via_homology.scale_int(sign));
            }
        }
    }

    #[test]
    fn pontryagin_commutes_with_multiplication() {
        let v = x(2);
        let m = Morphism::mult(&v, 3);
        let mut rng = random::trial_rng(4, 0);
        for _ in 0..10 {
            let a = random::hom_class(&mut rng, &v);
            let b = random::hom_class(&mut rng, &v);
            let lhs = push_homology(&m, &pontryagin(&a, &b).unwrap()).unwrap();
            let rhs = pontryagin(
                &push_homology(&m, &a).unwrap(),
                &push_homology(&m, &b).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_isogeny_examples() {
        let v = x(2);
        assert_eq!(
            dual_isogeny(&Morphism::mult(&v, 3)).unwrap(),
            Morphism::mult(&v.dual(), 3)
        );
        let mut rng = random::trial_rng(5, 0);
        let y = Variety::abelian("Y", 2);
        for _ in 0..5 {
            let f = random::isogeny(&mut rng, &v, &y);
            let fd = dual_isogeny(&f).unwrap();
            assert_eq!(dual_isogeny(&fd).unwrap(), f);
            // (f × 1)^* P_Y = (1 × f̂)^* P_X, both on X × Ŷ
            let px = poincare_class(&v).as_class();
            let py = poincare_class(&y).as_class();
            let lhs = pullback(&f.product(&Morphism::identity(&y.dual())), &py).unwrap();
            let rhs = pullback(&Morphism::identity(&v).product(&fd), &px).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(dual_isogeny(&Morphism::mult(&v, 0)).is_err());
    }
}
