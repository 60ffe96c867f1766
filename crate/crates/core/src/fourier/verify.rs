//! Exact verification of the transform and correspondence identities, either
//! exhaustively over a basis or over seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{convolution, dual_isogeny, Correspondence, FourierTransform};
use crate::error::Error;
use crate::random;
use crate::variety::{
    gysin, pullback, pullback_homology, push_homology, CohClass, Morphism, Variety,
};

/// Largest dimension swept exhaustively; above it every identity is randomized.
pub const EXHAUSTIVE_MAX_DIM: usize = 3;
/// Factor dimensions used by the correspondence identities are capped here.
pub const CORRESPONDENCE_MAX_DIM: usize = 2;
pub const MULTIPLIERS: [i64; 4] = [-3, -2, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Inversion,
    IsogenyExchange,
    ProductExchange,
    ComposeFunctoriality,
    GraphLaws,
    ConjugateLaws,
    EigenComponents,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Inversion,
        Identity::IsogenyExchange,
        Identity::ProductExchange,
        Identity::ComposeFunctoriality,
        Identity::GraphLaws,
        Identity::ConjugateLaws,
        Identity::EigenComponents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Inversion => "inversion",
            Identity::IsogenyExchange => "isogeny-exchange",
            Identity::ProductExchange => "product-exchange",
            Identity::ComposeFunctoriality => "compose-functoriality",
            Identity::GraphLaws => "graph-laws",
            Identity::ConjugateLaws => "conjugate-laws",
            Identity::EigenComponents => "eigen-components",
        }
    }

    fn exhaustive(self) -> bool {
        matches!(self, Identity::Inversion | Identity::EigenComponents)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownIdentity(pub String);

impl fmt::Display for UnknownIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown identity '{}'", self.0)
    }
}

impl std::error::Error for UnknownIdentity {}

impl FromStr for Identity {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    pub n: usize,
    /// Random trials requested; exhaustive runs ignore it.
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub cases: usize,
    pub passed: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line per report, plus a counterexample line on failure.
    pub fn to_text(&self) -> String {
        let what = match self.mode {
            Mode::Exhaustive => "basis classes".to_string(),
            Mode::Random => format!("random cases (seed {})", self.seed),
        };
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let mut out = format!(
            "{} n={}: {status} {}/{} {what} verified",
            self.identity, self.n, self.passed, self.cases
        );
        if let Some(c) = &self.counterexample {
            out.push_str(&format!(
                "\n  counterexample (case {}): {}",
                c.case, c.detail
            ));
        }
        out
    }
}

/// A failed check, rendered as text.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(format!("error: {e}"))
    }
}

type Check = Result<(), Failure>;

fn expect_eq<T: PartialEq + fmt::Display>(
    law: &str,
    lhs: &T,
    rhs: &T,
    input: &dyn Fn() -> String,
) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure(format!(
            "{law}: input {}; lhs = {lhs}; rhs = {rhs}",
            input()
        )))
    }
}

/// Runs `verify` for the named identity on `n`-dimensional varieties.
pub fn verify(identity: Identity, n: usize, trials: usize, seed: u64) -> Result<Report, Error> {
    if n == 0 || 6 * n > crate::exterior::MAX_GENERATORS {
        return Err(Error::Unsupported(format!("dimension {n} out of range")));
    }
    let exhaustive = identity.exhaustive() && n <= EXHAUSTIVE_MAX_DIM;
    let x = Variety::abelian("X", n);
    let results: Vec<Check> = if exhaustive {
        let basis = CohClass::all_basis(&x);
        let ctx = Exhaustive::new(&x);
        basis
            .par_iter()
            .map(|a| match identity {
                Identity::Inversion => ctx.inversion(a),
                _ => ctx.eigen(a),
            })
            .collect()
    } else {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = random::trial_rng(seed, i as u64);
                random_case(identity, n, &mut rng)
            })
            .collect()
    };
    let cases = results.len();
    let passed = results.iter().filter(|r| r.is_ok()).count();
    let counterexample = results
        .into_iter()
        .enumerate()
        .find_map(|(case, r)| r.err().map(|f| Counterexample { case, detail: f.0 }));
    Ok(Report {
        identity: identity.name().to_string(),
        n,
        trials,
        seed,
        mode: if exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Random
        },
        cases,
        passed,
        status: if counterexample.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        counterexample,
    })
}

/// Shared transforms for basis sweeps.
struct Exhaustive {
    x: Variety,
    there: FourierTransform,
    back: FourierTransform,
    neg: Morphism,
}

impl Exhaustive {
    fn new(x: &Variety) -> Self {
        Exhaustive {
            x: x.clone(),
            there: FourierTransform::new(x),
            back: FourierTransform::new(&x.dual()),
            neg: Morphism::neg(x),
        }
    }

    /// `F_X̂ F_X α = (−1)^n (−1)^*α`.
    fn inversion(&self, a: &CohClass) -> Check {
        let lhs = self.back.apply(&self.there.apply(a)?)?;
        let sign = if self.x.n().is_multiple_of(2) { 1 } else { -1 };
        let rhs = pullback(&self.neg, a)?.scale_int(sign);
        expect_eq("F_X^ F_X", &lhs, &rhs, &|| a.to_string())
    }

    fn eigen(&self, a: &CohClass) -> Check {
        eigen_checks(&self.x, &self.there, a)
    }
}

fn eigen_checks(x: &Variety, f: &FourierTransform, a: &CohClass) -> Check {
    let n = x.n();
    let input = || a.to_string();
    let p = super::poincare_class(x).as_class();
    for m in MULTIPLIERS {
        let mx = Morphism::mult(x, m);
        let mxd = Morphism::mult(&x.dual(), m);
        for k in 0..=2 * n {
            let part = a.graded_part(k);
            let scaled = part.scale_int(m.pow(k as u32));
            expect_eq("m^* on H^k", &pullback(&mx, &part)?, &scaled, &input)?;
            let hom = part.poincare_dual().graded_part(2 * n - k);
            let hom_scaled = hom.scale_int(m.pow((2 * n - k) as u32));
            expect_eq(
                "m_* on H_k",
                &push_homology(&mx, &hom)?,
                &hom_scaled,
                &input,
            )?;
        }
        let degree = a.scale_int(m.pow(2 * n as u32));
        expect_eq("m_! m^*", &gysin(&mx, &pullback(&mx, a)?)?, &degree, &input)?;
        for i in 0..=2 * n {
            let c = f.component(i, a)?;
            let scaled = c.scale_int(m.pow(i as u32));
            expect_eq("m^* on F-component", &pullback(&mxd, &c)?, &scaled, &input)?;
        }
        let right = Morphism::identity(x).product(&mxd);
        let left = mx.product(&Morphism::identity(&x.dual()));
        expect_eq("(1×m)^*P", &pullback(&right, &p)?, &p.scale_int(m), &input)?;
        expect_eq("(m×1)^*P", &pullback(&left, &p)?, &p.scale_int(m), &input)?;
    }
    Ok(())
}

fn small_variety<R: Rng>(rng: &mut R, name: &str, n: usize) -> Variety {
    let cap = n.min(CORRESPONDENCE_MAX_DIM);
    Variety::abelian(name, rng.gen_range(1..=cap))
}

fn random_corr<R: Rng>(rng: &mut R, source: &Variety, target: &Variety) -> Correspondence {
    let d = source.generator_count() + target.generator_count();
    Correspondence::new(source.clone(), target.clone(), random::element(rng, d))
        .expect("dimension matches")
}

fn random_case<R: Rng>(identity: Identity, n: usize, rng: &mut R) -> Check {
    match identity {
        Identity::Inversion => {
            let x = Variety::abelian("X", n);
            let a = random::coh_class(rng, &x);
            Exhaustive::new(&x).inversion(&a)
        }
        Identity::EigenComponents => {
            let x = Variety::abelian("X", n);
            let a = random::coh_class(rng, &x);
            eigen_checks(&x, &FourierTransform::new(&x), &a)
        }
        Identity::ProductExchange => product_exchange(n, rng),
        Identity::IsogenyExchange => isogeny_exchange(n, rng),
        Identity::ComposeFunctoriality => compose_functoriality(n, rng),
        Identity::GraphLaws => graph_laws(n, rng),
        Identity::ConjugateLaws => conjugate_laws(n, rng),
    }
}

/// `F(α*β) = F(α)·F(β)` and `F(α·β) = (−1)^n F(α)*F(β)`, with `·` the cup
/// product and `*` the convolution `μ_!(p_1^*α ∧ p_2^*β)`.
fn product_exchange<R: Rng>(n: usize, rng: &mut R) -> Check {
    let x = Variety::abelian("X", n);
    let f = FourierTransform::new(&x);
    let a = random::coh_class(rng, &x);
    let b = random::coh_class(rng, &x);
    let input = || format!("α = {a}, β = {b}");
    let (fa, fb) = (f.apply(&a)?, f.apply(&b)?);
    let lhs = f.apply(&convolution(&a, &b)?)?;
    expect_eq("F(α*β) = F(α)·F(β)", &lhs, &fa.cup(&fb)?, &input)?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let lhs = f.apply(&a.cup(&b)?)?;
    let rhs = convolution(&fa, &fb)?.scale_int(sign);
    expect_eq("F(α·β) = (−1)^n F(α)*F(β)", &lhs, &rhs, &input)
}

/// For an isogeny `f : X → Y` with dual `f̂ : Ŷ → X̂`:
/// `F_Y f_*α = f̂^* F_X α` and `F_X f^*β = f̂_* F_Y β` on homology.
fn isogeny_exchange<R: Rng>(n: usize, rng: &mut R) -> Check {
    let x = Variety::abelian("X", n);
    let y = Variety::abelian("Y", n);
    let f = random::isogeny(rng, &x, &y);
    let fd = dual_isogeny(&f)?;
    let (fx, fy) = (FourierTransform::new(&x), FourierTransform::new(&y));
    let a = random::hom_class(rng, &x);
    let b = random::hom_class(rng, &y);
    let input = || format!("f = {:?}, α = {a}, β = {b}", f.matrix());
    let lhs = fy.apply_homology(&push_homology(&f, &a)?)?;
    let rhs = pullback_homology(&fd, &fx.apply_homology(&a)?)?;
    expect_eq("F_Y f_* = f^^* F_X", &lhs, &rhs, &input)?;
    let lhs = fx.apply_homology(&pullback_homology(&f, &b)?)?;
    let rhs = push_homology(&fd, &fy.apply_homology(&b)?)?;
    expect_eq("F_X f^* = f^_* F_Y", &lhs, &rhs, &input)
}

/// `(Γ₂∘Γ₁)_* = Γ₂_* Γ₁_*` on both sides, and `Γ_g ∘ Γ_f = Γ_{g∘f}`.
fn compose_functoriality<R: Rng>(n: usize, rng: &mut R) -> Check {
    let x = small_variety(rng, "X", n);
    let y = small_variety(rng, "Y", n);
    let z = small_variety(rng, "Z", n);
    let g1 = random_corr(rng, &x, &y);
    let g2 = random_corr(rng, &y, &z);
    let u = random::coh_class(rng, &x);
    let v = random::hom_class(rng, &x);
    let input = || format!("Γ1 = {g1}, Γ2 = {g2}, u = {u}, v = {v}");
    let composed = g1.then(&g2)?;
    expect_eq(
        "(Γ2∘Γ1)_*u",
        &composed.act(&u)?,
        &g2.act(&g1.act(&u)?)?,
        &input,
    )?;
    expect_eq(
        "(Γ2∘Γ1)_*v",
        &composed.act_homology(&v)?,
        &g2.act_homology(&g1.act_homology(&v)?)?,
        &input,
    )?;
    let f = random::morphism(rng, &x, &y);
    let g = random::morphism(rng, &y, &z);
    let input = || format!("f = {:?}, g = {:?}", f.matrix(), g.matrix());
    let lhs = Correspondence::graph(&f).then(&Correspondence::graph(&g))?;
    expect_eq(
        "Γ_g∘Γ_f = Γ_(g∘f)",
        &lhs,
        &Correspondence::graph(&f.then(&g)?),
        &input,
    )
}

/// `(Γ_f)_* = f_*` on homology and cohomology, `(ᵗΓ_f)_* = f^*`.
fn graph_laws<R: Rng>(n: usize, rng: &mut R) -> Check {
    let x = small_variety(rng, "X", n);
    let y = small_variety(rng, "Y", n);
    let f = random::morphism(rng, &x, &y);
    let a = random::hom_class(rng, &x);
    let c = random::coh_class(rng, &x);
    let b = random::coh_class(rng, &y);
    let input = || format!("f = {:?}, α = {a}, c = {c}, β = {b}", f.matrix());
    let graph = Correspondence::graph(&f);
    expect_eq(
        "(Γ_f)_*α = f_*α",
        &graph.act_homology(&a)?,
        &push_homology(&f, &a)?,
        &input,
    )?;
    expect_eq("(Γ_f)_*c = f_!c", &graph.act(&c)?, &gysin(&f, &c)?, &input)?;
    expect_eq(
        "(ᵗΓ_f)_*β = f^*β",
        &graph.transpose().act(&b)?,
        &pullback(&f, &b)?,
        &input,
    )
}

/// Conjugation of correspondences by `f₁ × f₂`, as classes and as actions.
fn conjugate_laws<R: Rng>(n: usize, rng: &mut R) -> Check {
    let x1 = small_variety(rng, "X", n);
    let x2 = small_variety(rng, "W", n);
    let y1 = small_variety(rng, "Y", n);
    let y2 = small_variety(rng, "Z", n);
    let f1 = random::morphism(rng, &x1, &y1);
    let f2 = random::morphism(rng, &x2, &y2);
    let z = random_corr(rng, &y1, &y2);
    let zt = random_corr(rng, &x1, &x2);
    let alpha = random::coh_class(rng, &x1);
    let beta = random::coh_class(rng, &y1);
    let input = || {
        format!(
            "f1 = {:?}, f2 = {:?}, Z = {z}, Z~ = {zt}, α = {alpha}, β = {beta}",
            f1.matrix(),
            f2.matrix()
        )
    };
    let (g1, g2) = (Correspondence::graph(&f1), Correspondence::graph(&f2));
    let f12 = f1.product(&f2);

    let pulled = Correspondence::from_class(&pullback(&f12, &z.as_class())?)?;
    let conj = g1.then(&z)?.then(&g2.transpose())?;
    expect_eq("(f1×f2)^*Z = ᵗΓ_f2∘Z∘Γ_f1", &pulled, &conj, &input)?;

    let pushed = Correspondence::from_class(&gysin(&f12, &zt.as_class())?)?;
    let conj = g1.transpose().then(&zt)?.then(&g2)?;
    expect_eq("(f1×f2)_*Z~ = Γ_f2∘Z~∘ᵗΓ_f1", &pushed, &conj, &input)?;

    let lhs = pulled.act(&alpha)?;
    let rhs = pullback(&f2, &z.act(&gysin(&f1, &alpha)?)?)?;
    expect_eq("((f1×f2)^*Z)_*α = f2^* Z_* f1_* α", &lhs, &rhs, &input)?;

    let lhs = pushed.act(&beta)?;
    let rhs = gysin(&f2, &zt.act(&pullback(&f1, &beta)?)?)?;
    expect_eq("((f1×f2)_*Z~)_*β = f2_* Z~_* f1^* β", &lhs, &rhs, &input)
}
