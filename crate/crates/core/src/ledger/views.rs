use super::{GroupExpr, LedgerResult, Slot};

/// The ledger slot carrying the eigen-index `s` part of the morphic
/// cohomology group `L^qH^c`. Not normalized.
pub fn morphic_slot(n: usize, q: i64, c: i64, s: i64) -> Slot {
    let n = n as i64;
    Slot::new(n - q, 2 * n - c, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsstTerm {
    pub q: i64,
    /// Cohomological degree `c = 2q − j`.
    pub degree: i64,
    pub s: i64,
    /// Normalized ledger slot.
    pub slot: Slot,
    pub value: GroupExpr,
    pub dim: Option<u64>,
}

/// `KH^j`-type sum `⊕_q L^qH^{2q−j}` split into eigen-pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsstReport {
    pub n: usize,
    pub j: i64,
    pub terms: Vec<KsstTerm>,
}

impl KsstReport {
    /// Non-zero pieces, ordered by `(q, s)`.
    pub fn summands(&self) -> impl Iterator<Item = &KsstTerm> {
        self.terms.iter().filter(|t| !t.value.is_zero())
    }

    pub fn summand_values(&self) -> Vec<GroupExpr> {
        self.summands().map(|t| t.value).collect()
    }

    /// Sum of the dimensions, when every summand has a known one.
    pub fn total_dim(&self) -> Option<u64> {
        self.summands().map(|t| t.dim).sum()
    }
}

pub fn ksst(result: &LedgerResult, j: i64) -> KsstReport {
    let n = result.n();
    let ni = n as i64;
    let mut terms = Vec::new();
    for q in 0..=ni + j.max(0) {
        let c = 2 * q - j;
        if !(0..=2 * ni).contains(&c) {
            continue;
        }
        for s in q - ni - j..=c.div_euclid(2) {
            let slot = morphic_slot(n, q, c, s).normalized();
            let value = result.value(slot);
            terms.push(KsstTerm {
                q,
                degree: c,
                s,
                slot,
                value,
                dim: value.dim(n),
            });
        }
    }
    KsstReport { n, j, terms }
}

/// The non-zero pieces of `(p, k, s)` with `s ≥ j`; empty means zero.
pub fn filtration_slice(result: &LedgerResult, p: i64, k: i64, j: i64) -> Vec<(Slot, GroupExpr)> {
    result
        .entries()
        .filter(|(slot, e)| slot.p == p && slot.k == k && slot.s >= j && !e.value.is_zero())
        .map(|(slot, e)| (slot, e.value))
        .collect()
}
