//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use abvar_core::expr::GeneratorContext;
use abvar_core::exterior::{ExteriorElement, LinearMap};
use abvar_core::fourier::verify::{verify, Identity};
use abvar_core::fourier::{convolution, FourierTransform};
use abvar_core::ledger::{ksst, resolve, Assumptions, GroupExpr, Slot};
use abvar_core::random::{self, trial_rng};
use abvar_core::variety::pullback;
use abvar_core::{CohClass, Morphism, Variety};
use rand::Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn inversion() -> Outcome {
    let mut checked = 0;
    let mut n3 = Duration::ZERO;
    for n in 1..=3 {
        let start = Instant::now();
        let x = Variety::abelian("X", n);
        let there = FourierTransform::new(&x);
        let back = FourierTransform::new(&x.dual());
        let neg = Morphism::neg(&x);
        for a in CohClass::all_basis(&x) {
            let twice = back
                .apply(&there.apply(&a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let expected = pullback(&neg, &a)
                .map_err(|e| e.to_string())?
                .scale_int(sign(n % 2 == 1));
            ensure(twice == expected, || {
                format!("n={n}, α={a}: got {twice}, want {expected}")
            })?;
            checked += 1;
        }
        if n == 3 {
            n3 = start.elapsed();
        }
    }
    within(n3, Duration::from_secs(10), "n=3 sweep")?;
    Ok(format!(
        "{checked} basis classes over n=1..3, n=3 in {n3:.2?}"
    ))
}

fn product_exchange() -> Outcome {
    let mut pairs = 0;
    for n in 1..=3 {
        let x = Variety::abelian("X", n);
        let f = FourierTransform::new(&x);
        for t in 0..100 {
            let mut rng = trial_rng(SEED, (n * 1000 + t) as u64);
            let a = random::coh_class(&mut rng, &x);
            let b = random::coh_class(&mut rng, &x);
            let run = || -> abvar_core::Result<(bool, bool)> {
                let (fa, fb) = (f.apply(&a)?, f.apply(&b)?);
                let first = f.apply(&convolution(&a, &b)?)? == fa.cup(&fb)?;
                let second =
                    f.apply(&a.cup(&b)?)? == convolution(&fa, &fb)?.scale_int(sign(n % 2 == 1));
                Ok((first, second))
            };
            let (first, second) = run().map_err(|e| e.to_string())?;
            ensure(first, || {
                format!("F(α*β) ≠ F(α)·F(β) at n={n}, α={a}, β={b}")
            })?;
            ensure(second, || {
                format!("F(α·β) ≠ (−1)^n F(α)*F(β) at n={n}, α={a}, β={b}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} random pairs, both identities exact"))
}

/// Runs the library harness for the given identities and dimensions.
fn harness(ids: &[Identity], dims: &[usize], trials: usize) -> Outcome {
    let mut cases = 0;
    for &id in ids {
        for &n in dims {
            let report = verify(id, n, trials, SEED).map_err(|e| e.to_string())?;
            ensure(report.passed(), || report.to_text())?;
            cases += report.cases;
        }
    }
    Ok(format!("{cases} cases"))
}

fn correspondences() -> Outcome {
    harness(
        &[
            Identity::ComposeFunctoriality,
            Identity::GraphLaws,
            Identity::ConjugateLaws,
        ],
        &[1, 2],
        60,
    )
    .map(|s| format!("{s} (60 per law and dimension, factor dims ≤ 2)"))
}

fn isogeny_exchange() -> Outcome {
    harness(&[Identity::IsogenyExchange], &[1, 2], 60).map(|s| format!("{s} random isogenies"))
}

fn eigenvalues() -> Outcome {
    harness(&[Identity::EigenComponents], &[1, 2, 3], 0)?;
    // independent restatement of the two basis-level laws
    let mut checked = 0;
    for n in 1..=3 {
        let x = Variety::abelian("X", n);
        let f = FourierTransform::new(&x);
        let poincare = abvar_core::fourier::poincare_class(&x).as_class();
        for m in [-3i64, -2, 2, 3] {
            let scaled = Morphism::identity(&x).product(&Morphism::mult(&x.dual(), m));
            let p = pullback(&scaled, &poincare).map_err(|e| e.to_string())?;
            ensure(p == poincare.scale_int(m), || {
                format!("(1×[{m}])^*P at n={n}")
            })?;
            let mult = Morphism::mult(&x, m);
            for a in CohClass::all_basis(&x) {
                let k = a.degree().unwrap() as u32;
                let pulled = pullback(&mult, &a).map_err(|e| e.to_string())?;
                ensure(pulled == a.scale_int(m.pow(k)), || {
                    format!("[{m}]^* on {a}")
                })?;
                let pushed =
                    abvar_core::variety::gysin(&mult, &pulled).map_err(|e| e.to_string())?;
                ensure(pushed == a.scale_int(m.pow(2 * n as u32)), || {
                    format!("[{m}]_! [{m}]^* on {a}")
                })?;
                for i in 0..=2 * n {
                    let c = f.component(i, &pulled).map_err(|e| e.to_string())?;
                    let expected = f
                        .component(i, &a)
                        .map_err(|e| e.to_string())?
                        .scale_int(m.pow(k));
                    ensure(c == expected, || format!("component {i} of [{m}]^*{a}"))?;
                    let dual_mult = Morphism::mult(&x.dual(), m);
                    let c_dual =
                        pullback(&dual_mult, &f.component(i, &a).map_err(|e| e.to_string())?)
                            .map_err(|e| e.to_string())?;
                    ensure(
                        c_dual
                            == f.component(i, &a)
                                .map_err(|e| e.to_string())?
                                .scale_int(m.pow(i as u32)),
                        || format!("eigenvalue m^{i} on component {i} of {a}"),
                    )?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} basis class × multiplier checks, n=1..3"))
}

fn ledger_dim3() -> Outcome {
    let start = Instant::now();
    let r = resolve(3, Assumptions::NONE).map_err(|e| e.to_string())?;
    let negative: Vec<Slot> = r.unknown_slots().into_iter().filter(|s| s.s < 0).collect();
    ensure(
        negative
            == [
                Slot::new(1, 4, -1),
                Slot::new(1, 5, -2),
                Slot::new(1, 6, -3),
            ],
        || format!("unknown negative slots {negative:?}"),
    )?;
    let at = |p, k, s| r.value(Slot::new(p, k, s));
    ensure(at(1, 2, 1) == GroupExpr::Griff(1, 1), || {
        format!("(1,2,1) = {}", at(1, 2, 1))
    })?;
    ensure(at(2, 4, 0) == GroupExpr::NS, || {
        format!("(2,4,0) = {}", at(2, 4, 0))
    })?;
    ensure(
        at(1, 4, 0) == GroupExpr::SingHom(2) && at(1, 4, 0).dim(3) == Some(15),
        || format!("(1,4,0) = {}", at(1, 4, 0)),
    )?;
    for n in 1..=2 {
        let small = resolve(n, Assumptions::NONE).map_err(|e| e.to_string())?;
        let left: Vec<Slot> = small
            .unknown_slots()
            .into_iter()
            .filter(|s| s.s < 0)
            .collect();
        ensure(left.is_empty(), || format!("n={n} leaves {left:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "ledger")?;
    Ok(format!("golden slots match in {elapsed:.2?}"))
}

fn ksst_values() -> Outcome {
    let start = Instant::now();
    let r = resolve(3, Assumptions::NONE).map_err(|e| e.to_string())?;
    let j0 = ksst(&r, 0).summand_values();
    let expected = [
        GroupExpr::OneDim,
        GroupExpr::NS,
        GroupExpr::APZero(1, 2),
        GroupExpr::Griff(1, 1),
        GroupExpr::SingHom(0),
    ];
    ensure(j0 == expected, || format!("j=0 summands {j0:?}"))?;
    let weak = resolve(3, Assumptions::WEAK_SUSLIN).map_err(|e| e.to_string())?;
    let pascal = [1u64, 6, 15, 20, 15, 6, 1];
    for j in 2..=8i64 {
        let oracle: u64 = (0..=6)
            .filter(|k| (k - j) % 2 == 0)
            .map(|k| pascal[k as usize])
            .sum();
        let total = ksst(&weak, j).total_dim();
        ensure(total == Some(oracle) && oracle == 32, || {
            format!("j={j}: {total:?} vs {oracle}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "ksst")?;
    Ok(format!(
        "j=0 five summands in order; j=2..8 total dim 32, in {elapsed:.2?}"
    ))
}

fn algebra_core() -> Outcome {
    const CASES: u64 = 250;
    for t in 0..CASES {
        let mut rng = trial_rng(SEED ^ 0xa1, t);
        let d = rng.gen_range(1..=10);
        let (j, k) = (rng.gen_range(0..=d), rng.gen_range(0..=d));
        let a = random::homogeneous(&mut rng, d, j);
        let b = random::homogeneous(&mut rng, d, k);
        let ab = a.wedge(&b).unwrap();
        ensure(
            ab == b.wedge(&a).unwrap().scale_int(sign(j * k % 2 == 1)),
            || format!("graded commutativity: {a:?} {b:?}"),
        )?;

        let (x, y, z) = (
            random::element(&mut rng, d),
            random::element(&mut rng, d),
            random::element(&mut rng, d),
        );
        ensure(
            x.wedge(&y).unwrap().wedge(&z).unwrap() == x.wedge(&y.wedge(&z).unwrap()).unwrap(),
            || format!("associativity case {t}"),
        )?;

        let (p, q) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let l1 = LinearMap::from_integers(p, q, &random::integer_matrix(&mut rng, p, q)).unwrap();
        let l2 = LinearMap::from_integers(q, d, &random::integer_matrix(&mut rng, q, d)).unwrap();
        ensure(
            x.algebra_map(&l1.compose(&l2).unwrap()).unwrap()
                == x.algebra_map(&l2).unwrap().algebra_map(&l1).unwrap(),
            || format!("functoriality case {t}"),
        )?;

        let o = abvar_core::MultiIndex::full(d);
        let twice = a.poincare_dual(o).unwrap().poincare_dual(o).unwrap();
        ensure(twice == a.scale_int(sign(j * (d - j) % 2 == 1)), || {
            format!("PD sign case {t}")
        })?;

        let d2 = rng.gen_range(2..=10);
        let two = random::homogeneous(&mut rng, d2, 2);
        let unit = two
            .exp2()
            .unwrap()
            .wedge(&two.neg().exp2().unwrap())
            .unwrap();
        ensure(unit == ExteriorElement::one(d2), || {
            format!("exp2 inversion case {t}")
        })?;
    }
    Ok(format!("{CASES} cases for each of five properties"))
}

fn parser() -> Outcome {
    const CASES: u64 = 1200;
    for t in 0..CASES {
        let mut rng = trial_rng(SEED ^ 0xb2, t);
        let d = rng.gen_range(1..=12);
        let ctx = GeneratorContext::numbered("e", d);
        let a = random::element(&mut rng, d)
            .scale(&abvar_core::exterior::ratio(1, rng.gen_range(1..=4)));
        let printed = ctx.print(&a).map_err(|e| e.to_string())?;
        let parsed = ctx
            .parse(&printed)
            .map_err(|e| format!("{printed:?}: {e}"))?;
        ensure(parsed == a, || format!("parse∘print changed {printed:?}"))?;

        // a messy spelling: unsorted wedges, explicit coefficients, spacing
        let messy: Vec<String> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let k = rng.gen_range(0..=d.min(4));
                let mut names: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=d)).collect();
                names.reverse();
                let c = rng.gen_range(-5i64..=5);
                let den = rng.gen_range(1..=3);
                let body = names
                    .iter()
                    .map(|i| format!("e{i}"))
                    .collect::<Vec<_>>()
                    .join(" ^ ");
                if body.is_empty() {
                    format!("{c}/{den}")
                } else {
                    format!("{c}/{den} * {body}")
                }
            })
            .collect();
        let text = messy.join(" + ").replace("+ -", "- ");
        let once = ctx
            .print(&ctx.parse(&text).map_err(|e| format!("{text:?}: {e}"))?)
            .unwrap();
        let again = ctx.print(&ctx.parse(&once).unwrap()).unwrap();
        ensure(once == again, || {
            format!("print∘parse not idempotent on {text:?}")
        })?;
    }
    let ctx = GeneratorContext::numbered("e", 3);
    for (bad, pos) in [
        ("", 0),
        ("e1 +", 4),
        ("e4", 0),
        ("1/0*e1", 2),
        ("e1 ^ ^ e2", 5),
        ("3 e1", 2),
    ] {
        match ctx.parse(bad) {
            Ok(v) => return Err(format!("{bad:?} accepted as {v:?}")),
            Err(e) => ensure(e.position == pos, || {
                format!("{bad:?}: position {} not {pos}", e.position)
            })?,
        }
    }
    Ok(format!(
        "{CASES} round trips and idempotence checks; malformed inputs rejected with positions"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 inversion theorem", inversion),
        ("2 product exchange", product_exchange),
        ("3 correspondence laws", correspondences),
        ("4 isogeny exchange", isogeny_exchange),
        ("5 eigenvalue suite", eigenvalues),
        ("6 ledger dim-3 golden table", ledger_dim3),
        ("7 K^sst golden values", ksst_values),
        ("8 algebra core properties", algebra_core),
        ("9 parser round trip", parser),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
