use std::collections::BTreeMap;
use std::fmt;

use super::{enumerate_slots, fourier_dual_slot, Assumptions, GroupExpr, Slot};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Range,
    NegP,
    DoldThom,
    Divisor,
    Top,
    K2p,
    Fourier,
    SingEigen,
    Surj,
    WeakSuslin,
    StrongSuslin,
    Iso,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Range => "R-range",
            Rule::NegP => "R-negp",
            Rule::DoldThom => "R-doldthom",
            Rule::Divisor => "R-divisor",
            Rule::Top => "R-top",
            Rule::K2p => "R-k2p",
            Rule::Fourier => "R-fourier",
            Rule::SingEigen => "R-singeigen",
            Rule::Surj => "R-surj",
            Rule::WeakSuslin => "R-weakSuslin",
            Rule::StrongSuslin => "R-strongSuslin",
            Rule::Iso => "R-iso",
        }
    }
}

/// One rule application at a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub rule: Rule,
    pub at: Slot,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule.name(), self.at)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub value: GroupExpr,
    pub trace: Vec<Step>,
}

impl Entry {
    fn unknown() -> Self {
        Entry {
            value: GroupExpr::Unknown,
            trace: Vec::new(),
        }
    }

    pub fn trace_strings(&self) -> Vec<String> {
        self.trace.iter().map(Step::to_string).collect()
    }
}

fn joined(trace: &[Step]) -> String {
    trace
        .iter()
        .map(Step::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Rules that read nothing but the slot itself. Tier 0 holds the theorems,
/// tier 1 names the remaining `k = 2p` pieces, tier 2 the conjectures.
fn local_rule(n: i64, slot: Slot, tier: u8, assumptions: Assumptions) -> Option<(Rule, GroupExpr)> {
    let Slot { p, k, s } = slot;
    if !slot.in_range(n) {
        return (tier == 0).then_some((Rule::Range, GroupExpr::Zero));
    }
    let zero_unless = |cond: bool, v: GroupExpr| if cond { v } else { GroupExpr::Zero };
    match tier {
        0 if p == 0 => Some((Rule::DoldThom, zero_unless(s == 0, GroupExpr::SingHom(k)))),
        0 if p == n - 1 && p >= 1 => {
            let v = if k > 2 * p {
                GroupExpr::SingHom(k)
            } else {
                GroupExpr::NS
            };
            Some((Rule::Divisor, zero_unless(s == 0, v)))
        }
        0 if p == n && k == 2 * n => Some(if s == 0 {
            (Rule::Top, GroupExpr::OneDim)
        } else {
            (Rule::SingEigen, GroupExpr::Zero)
        }),
        0 if k == 2 * p && (1..=n - 2).contains(&p) && s == 0 => {
            Some((Rule::K2p, GroupExpr::APZero(p, k)))
        }
        1 if k == 2 * p && (1..=n - 2).contains(&p) && s > 0 => {
            Some((Rule::K2p, GroupExpr::Griff(p, s)))
        }
        2 if assumptions.weak_suslin() && s < 0 => Some((Rule::WeakSuslin, GroupExpr::Zero)),
        2 if assumptions.strong_suslin() && s == 0 && (k == n + p - 1 || (p == 1 && k >= 2)) => {
            Some((Rule::StrongSuslin, GroupExpr::Tgroup(p, k)))
        }
        _ => None,
    }
}

/// The resolved ledger for one dimension and one set of assumptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerResult {
    n: usize,
    assumptions: Assumptions,
    entries: BTreeMap<Slot, Entry>,
    tgroups: Vec<((i64, i64), Entry)>,
}

impl LedgerResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assumptions(&self) -> Assumptions {
        self.assumptions
    }

    /// Entries in `(p, k, s)` order.
    pub fn entries(&self) -> impl Iterator<Item = (Slot, &Entry)> {
        self.entries.iter().map(|(s, e)| (*s, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, slot: Slot) -> Option<&Entry> {
        self.entries.get(&slot)
    }

    /// The value at any slot: `p < 0` is normalized, slots outside the
    /// decomposition range are zero.
    pub fn value(&self, slot: Slot) -> GroupExpr {
        self.entries
            .get(&slot.normalized())
            .map_or(GroupExpr::Zero, |e| e.value)
    }

    pub fn unknown_slots(&self) -> Vec<Slot> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.value.is_resolved())
            .map(|(s, _)| *s)
            .collect()
    }

    /// `T_pH_k = H_k` in the surjective range `k ≥ n + p`.
    pub fn tgroups(&self) -> &[((i64, i64), Entry)] {
        &self.tgroups
    }

    /// Runs every rule once more over this result; a fixed point comes back
    /// unchanged.
    pub fn reapply(&self) -> Result<LedgerResult> {
        let mut engine = Engine {
            n: self.n,
            assumptions: self.assumptions,
            entries: self.entries.clone(),
        };
        engine.run()?;
        Ok(engine.finish())
    }
}

struct Engine {
    n: usize,
    assumptions: Assumptions,
    entries: BTreeMap<Slot, Entry>,
}

impl Engine {
    fn new(n: usize, assumptions: Assumptions) -> Self {
        let entries = enumerate_slots(n)
            .into_iter()
            .map(|s| (s, Entry::unknown()))
            .collect();
        Engine {
            n,
            assumptions,
            entries,
        }
    }

    /// Records `proposed` at `slot` unless an equivalent value is present.
    fn merge(&mut self, slot: Slot, proposed: GroupExpr, trace: Vec<Step>) -> Result<bool> {
        let n = self.n;
        let current = self.entries.get_mut(&slot).expect("enumerated slot");
        if !current.value.is_resolved() {
            current.value = proposed;
            current.trace = trace;
            return Ok(true);
        }
        if current.value.norm(n) == proposed.norm(n) {
            return Ok(false);
        }
        Err(Error::RuleConflict {
            slot: slot.to_string(),
            existing: current.value.to_string(),
            existing_trace: joined(&current.trace),
            proposed: proposed.to_string(),
            proposed_trace: joined(&trace),
        })
    }

    fn slots(&self) -> Vec<Slot> {
        self.entries.keys().copied().collect()
    }

    fn apply_local(&mut self, tier: u8) -> Result<()> {
        let n = self.n as i64;
        for slot in self.slots() {
            // naming is a fallback: only for slots nothing else has reached
            if tier == 1 && self.entries[&slot].value.is_resolved() {
                continue;
            }
            if let Some((rule, value)) = local_rule(n, slot, tier, self.assumptions) {
                self.merge(slot, value, vec![Step { rule, at: slot }])?;
                if tier == 1 {
                    self.propagate()?;
                }
            }
        }
        Ok(())
    }

    /// What the Fourier-dual side says about `slot`, if anything.
    fn pull(&self, slot: Slot) -> Option<(GroupExpr, Vec<Step>)> {
        let raw = fourier_dual_slot(self.n, slot);
        let dual = raw.normalized();
        let (value, mut trace) = match self.entries.get(&dual) {
            Some(e) if e.value.is_resolved() => (e.value, e.trace.clone()),
            Some(_) => return None,
            None => (
                GroupExpr::Zero,
                vec![Step {
                    rule: Rule::Range,
                    at: dual,
                }],
            ),
        };
        if raw != dual {
            trace.push(Step {
                rule: Rule::NegP,
                at: raw,
            });
        }
        trace.push(Step {
            rule: Rule::Fourier,
            at: slot,
        });
        Some((value, trace))
    }

    fn propagate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for slot in self.slots() {
                if let Some((value, trace)) = self.pull(slot) {
                    changed |= self.merge(slot, value, trace)?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        self.apply_local(0)?;
        self.propagate()?;
        self.apply_local(1)?;
        self.apply_local(2)?;
        self.propagate()?;
        // pair up the remaining unknowns along the duality
        for slot in self.slots() {
            let dual = fourier_dual_slot(self.n, slot).normalized();
            if dual < slot && !self.entries[&slot].value.is_resolved() {
                if let Some(e) = self.entries.get(&dual) {
                    if !e.value.is_resolved() {
                        let entry = self.entries.get_mut(&slot).expect("present");
                        entry.value = GroupExpr::IsoTo(dual);
                        entry.trace = vec![Step {
                            rule: Rule::Iso,
                            at: slot,
                        }];
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> LedgerResult {
        let n = self.n as i64;
        let mut tgroups = Vec::new();
        for p in 0..=n {
            for k in (n + p).max(2 * p)..=2 * n {
                let entry = Entry {
                    value: GroupExpr::SingHom(k),
                    trace: vec![Step {
                        rule: Rule::Surj,
                        at: Slot::new(p, k, 0),
                    }],
                };
                tgroups.push(((p, k), entry));
            }
        }
        LedgerResult {
            n: self.n,
            assumptions: self.assumptions,
            entries: self.entries,
            tgroups,
        }
    }
}

/// Resolves every slot for an `n`-dimensional variety to a fixed point.
pub fn resolve(n: usize, assumptions: Assumptions) -> Result<LedgerResult> {
    if n == 0 {
        return Err(Error::Unsupported("dimension must be positive".into()));
    }
    let mut engine = Engine::new(n, assumptions);
    engine.run()?;
    Ok(engine.finish())
}

/// Re-derives the value at `slot` from `trace` alone, checking that every
/// step is a legal move.
pub fn replay(
    n: usize,
    assumptions: Assumptions,
    slot: Slot,
    trace: &[Step],
) -> std::result::Result<GroupExpr, String> {
    let Some((first, rest)) = trace.split_first() else {
        return Ok(GroupExpr::Unknown);
    };
    let ni = n as i64;
    let value = match first.rule {
        Rule::Iso => {
            if first.at != slot || !rest.is_empty() {
                return Err(format!("{first} must be the whole trace of {slot}"));
            }
            return Ok(GroupExpr::IsoTo(fourier_dual_slot(n, slot).normalized()));
        }
        _ => {
            let fired = (0..=2).find_map(|tier| local_rule(ni, first.at, tier, assumptions));
            match fired {
                Some((rule, v)) if rule == first.rule => v,
                _ => return Err(format!("{first} does not fire")),
            }
        }
    };
    let mut cur = first.at;
    for step in rest {
        let legal = match step.rule {
            Rule::NegP => step.at.normalized() == cur,
            Rule::Fourier => {
                fourier_dual_slot(n, step.at) == cur || fourier_dual_slot(n, cur) == step.at
            }
            _ => false,
        };
        if !legal {
            return Err(format!("{step} does not follow from {cur}"));
        }
        cur = step.at;
    }
    if cur != slot {
        return Err(format!("trace ends at {cur}, not {slot}"));
    }
    Ok(value)
}
