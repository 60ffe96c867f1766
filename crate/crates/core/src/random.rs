//! Seeded random classes and matrices for the identity harness and tests.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{rat, ExteriorElement, MultiIndex};
use crate::variety::{CohClass, HomClass, Morphism, Variety};

pub const MAX_TERMS: usize = 6;
pub const COEFF_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

/// Independent stream `index` of the generator seeded by `seed`, so trials
/// can run in any order and still draw the same values.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn monomial<R: Rng>(rng: &mut R, dim: usize, degree: usize) -> MultiIndex {
    let picked: Vec<usize> = sample(rng, dim, degree).into_iter().collect();
    MultiIndex::from_positions(&picked).expect("positions are in range")
}

/// Up to [`MAX_TERMS`] terms of random degree, coefficients in [`COEFF_RANGE`].
pub fn element<R: Rng>(rng: &mut R, dim: usize) -> ExteriorElement {
    build(rng, dim, |rng| rng.gen_range(0..=dim))
}

pub fn homogeneous<R: Rng>(rng: &mut R, dim: usize, degree: usize) -> ExteriorElement {
    build(rng, dim, |_| degree)
}

fn build<R: Rng>(
    rng: &mut R,
    dim: usize,
    mut degree: impl FnMut(&mut R) -> usize,
) -> ExteriorElement {
    let terms = rng.gen_range(1..=MAX_TERMS);
    let mut out = ExteriorElement::zero(dim);
    for _ in 0..terms {
        let k = degree(rng);
        let c = rng.gen_range(COEFF_RANGE);
        let m = ExteriorElement::monomial(dim, monomial(rng, dim, k), rat(c));
        out = out.add(&m).expect("same dimension");
    }
    out
}

pub fn coh_class<R: Rng>(rng: &mut R, x: &Variety) -> CohClass {
    CohClass::new(x.clone(), element(rng, x.generator_count())).expect("dimension matches")
}

pub fn hom_class<R: Rng>(rng: &mut R, x: &Variety) -> HomClass {
    HomClass::new(x.clone(), element(rng, x.generator_count())).expect("dimension matches")
}

pub fn integer_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<i64> {
    (0..rows * cols)
        .map(|_| rng.gen_range(COEFF_RANGE))
        .collect()
}

pub fn morphism<R: Rng>(rng: &mut R, source: &Variety, target: &Variety) -> Morphism {
    let m = integer_matrix(rng, target.generator_count(), source.generator_count());
    Morphism::new(source.clone(), target.clone(), m).expect("shape matches")
}

/// A random isogeny; redraws until the determinant is nonzero.
pub fn isogeny<R: Rng>(rng: &mut R, source: &Variety, target: &Variety) -> Morphism {
    let d = source.generator_count();
    loop {
        let m = integer_matrix(rng, d, d);
        if let Ok(f) = Morphism::isogeny(source.clone(), target.clone(), m) {
            return f;
        }
    }
}
