//! The Fourier–Mukai transform on the (co)homology model, correspondences,
//! the Pontryagin product and the identity-verification harness.
//!
//! `F_X(α) = p_{2*}(e^P ∧ p_1^*α)` on `X × X̂`, where `P = Σ e_i ∧ f_i`. For a
//! dual model the kernel lives on `X̂ × X` with the `f` block first, so the
//! same tensor carries a `−1` on every monomial `f_i ∧ e_i`.

mod correspondence;
pub mod verify;

pub use correspondence::{convolution, dual_isogeny, pontryagin, Correspondence};

use crate::error::Result;
use crate::exterior::{rat, ratio, ExteriorElement, MultiIndex};
use crate::variety::{CohClass, HomClass, Variety, VarietyKind};

/// `+1` per generator of a base factor, `−1` per generator of a dual factor.
fn kernel_signs(x: &Variety) -> Vec<i64> {
    match x.kind() {
        VarietyKind::Base => vec![1; x.generator_count()],
        VarietyKind::Dual => vec![-1; x.generator_count()],
        VarietyKind::Product(fs) => fs.iter().flat_map(kernel_signs).collect(),
    }
}

/// The Poincaré class on `X × X̂`.
pub fn poincare_class(x: &Variety) -> Correspondence {
    let d = x.generator_count();
    let terms = kernel_signs(x).into_iter().enumerate().map(|(i, sign)| {
        let m = MultiIndex::single(i).union(MultiIndex::single(d + i));
        (m, rat(sign))
    });
    let element = ExteriorElement::from_terms(2 * d, terms).expect("indices in range");
    Correspondence::new(x.clone(), x.dual(), element).expect("dimension matches")
}

/// `F_X` with its kernel `e^P` computed once.
#[derive(Clone, Debug)]
pub struct FourierTransform {
    source: Variety,
    poincare: ExteriorElement,
    kernel: ExteriorElement,
}

impl FourierTransform {
    pub fn new(x: &Variety) -> Self {
        let poincare = poincare_class(x).into_element();
        let kernel = poincare.exp2().expect("Poincaré class has degree 2");
        FourierTransform {
            source: x.clone(),
            poincare,
            kernel,
        }
    }

    pub fn source(&self) -> &Variety {
        &self.source
    }

    pub fn target(&self) -> Variety {
        self.source.dual()
    }

    /// The kernel `e^P` as a correspondence from `X` to `X̂`.
    pub fn kernel(&self) -> Correspondence {
        Correspondence::new(self.source.clone(), self.target(), self.kernel.clone())
            .expect("dimension matches")
    }

    fn integrate(&self, kernel: &ExteriorElement, a: &CohClass) -> Result<CohClass> {
        if a.variety() != &self.source {
            return Err(crate::Error::VarietyMismatch {
                expected: self.source.label(),
                found: a.variety().label(),
            });
        }
        let d = self.source.generator_count();
        let pulled = a.element().embedded(0, 2 * d)?;
        let integrand = kernel.wedge(&pulled)?;
        CohClass::new(
            self.target(),
            integrand.fiber_integrate(MultiIndex::block(0, d))?,
        )
    }

    /// `F_X(α) = p_{2*}(e^P ∧ p_1^*α)`, sending `H^k(X)` to `H^{2n−k}(X̂)`.
    pub fn apply(&self, a: &CohClass) -> Result<CohClass> {
        self.integrate(&self.kernel, a)
    }

    /// The transform on homology, `PD ∘ F_X ∘ PD⁻¹`, sending `H_k` to `H_{2n−k}`.
    pub fn apply_homology(&self, y: &HomClass) -> Result<HomClass> {
        Ok(self.apply(&y.to_cohomology())?.poincare_dual())
    }

    /// `p_{2*}((P^i / i!) ∧ p_1^*α)`, the weight-`i` piece of `F_X(α)`.
    pub fn component(&self, i: usize, a: &CohClass) -> Result<CohClass> {
        let mut power = self.poincare.power(i)?;
        for j in 2..=i {
            power = power.scale(&ratio(1, j as i64));
        }
        self.integrate(&power, a)
    }
}

pub fn fourier(x: &Variety, a: &CohClass) -> Result<CohClass> {
    FourierTransform::new(x).apply(a)
}

pub fn fourier_homology(x: &Variety, y: &HomClass) -> Result<HomClass> {
    FourierTransform::new(x).apply_homology(y)
}

pub fn fourier_component(x: &Variety, i: usize, a: &CohClass) -> Result<CohClass> {
    FourierTransform::new(x).component(i, a)
}
