use abvar_core::ledger::{
    enumerate_slots, fourier_dual_slot, ledger_table, replay, resolve, Assumptions, GroupExpr, Slot,
};

const ALL: [Assumptions; 3] = [
    Assumptions::NONE,
    Assumptions::WEAK_SUSLIN,
    Assumptions::STRONG_SUSLIN,
];

fn binomial(n: u64, k: u64) -> u64 {
    // Pascal's triangle, independent of the crate's helper
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0)
}

#[test]
fn fixed_point() {
    for n in 1..=4 {
        for a in ALL {
            let r = resolve(n, a).unwrap();
            assert_eq!(r.reapply().unwrap(), r, "n={n} {a}");
        }
    }
}

#[test]
fn weak_suslin_only_fills_unknowns() {
    for n in 1..=3 {
        let base = resolve(n, Assumptions::NONE).unwrap();
        for a in [Assumptions::WEAK_SUSLIN, Assumptions::STRONG_SUSLIN] {
            let more = resolve(n, a).unwrap();
            for (slot, e) in base.entries() {
                if e.value.is_resolved() {
                    assert_eq!(more.value(slot), e.value, "n={n} {a} {slot}");
                }
            }
        }
    }
}

#[test]
fn fourier_dual_slots_agree() {
    for n in 1..=4 {
        for a in ALL {
            let r = resolve(n, a).unwrap();
            for (slot, e) in r.entries() {
                let dual = r.value(fourier_dual_slot(n, slot));
                if e.value.is_resolved() {
                    assert_eq!(e.value.norm(n), dual.norm(n), "n={n} {a} {slot}");
                } else {
                    assert!(!dual.is_resolved(), "n={n} {a} {slot}");
                }
            }
        }
    }
}

#[test]
fn singular_homology_only_at_s_zero() {
    for n in 1..=4 {
        for a in ALL {
            let r = resolve(n, a).unwrap();
            for (slot, e) in r.entries() {
                if slot.s != 0 {
                    assert!(
                        !matches!(e.value, GroupExpr::SingHom(_) | GroupExpr::OneDim),
                        "{slot}"
                    );
                }
            }
        }
    }
}

#[test]
fn weak_suslin_aggregate_is_singular_homology() {
    for n in 1..=4usize {
        let r = resolve(n, Assumptions::WEAK_SUSLIN).unwrap();
        let ni = n as i64;
        for p in 0..=ni {
            for k in (ni + p).max(2 * p)..=2 * ni {
                let pieces: Vec<GroupExpr> = r
                    .entries()
                    .filter(|(s, e)| s.p == p && s.k == k && !e.value.is_zero())
                    .map(|(_, e)| e.value)
                    .collect();
                assert_eq!(pieces.len(), 1, "n={n} ({p},{k}): {pieces:?}");
                assert_eq!(pieces[0].norm(n), GroupExpr::SingHom(k).norm(n));
                assert_eq!(pieces[0].dim(n), Some(binomial(2 * n as u64, k as u64)));
            }
        }
    }
}

#[test]
fn traces_replay() {
    for n in 1..=4 {
        for a in ALL {
            let r = resolve(n, a).unwrap();
            for (slot, e) in r.entries() {
                assert_eq!(
                    replay(n, a, slot, &e.trace),
                    Ok(e.value),
                    "n={n} {a} {slot}"
                );
                if e.value.is_resolved() {
                    assert!(!e.trace.is_empty());
                }
            }
        }
    }
}

#[test]
fn small_dimensions_fully_resolved() {
    for n in 1..=2 {
        let r = resolve(n, Assumptions::NONE).unwrap();
        assert!(r.unknown_slots().is_empty());
        for (slot, e) in r.entries() {
            if slot.s < 0 {
                assert!(e.value.is_zero(), "{slot}");
            }
        }
        assert!(!ledger_table(&r).contains("Unknown"));
    }
}

#[test]
fn slot_count_matches_brute_force() {
    for n in 1..=4i64 {
        let mut count = 0;
        for p in -2..=2 * n + 2 {
            for k in -2..=2 * n + 2 {
                for s in -3 * n..=3 * n {
                    if 0 <= 2 * p && 2 * p <= k && k <= 2 * n && p - k <= s && 2 * s <= 2 * n - k {
                        count += 1;
                    }
                }
            }
        }
        let r = resolve(n as usize, Assumptions::NONE).unwrap();
        assert_eq!(r.len(), count);
        assert_eq!(enumerate_slots(n as usize).len(), count);
    }
}

#[test]
fn negative_p_reads_as_zero() {
    let r = resolve(3, Assumptions::NONE).unwrap();
    assert_eq!(r.value(Slot::new(-2, 3, 0)), GroupExpr::SingHom(3));
    assert_eq!(r.value(Slot::new(0, 9, 0)), GroupExpr::Zero);
}
