//! A fixed-point inference engine over the eigen-slots `(p, k, s)` of
//! rational Lawson homology of an `n`-dimensional abelian variety.
//!
//! Slot `(p, k, s)` stands for the piece of `L_pH_k` on which `m_*` acts as
//! `m^{k+s}`. Values are symbolic ([`GroupExpr`]); every value carries the
//! chain of rule applications that produced it, and the chain can be replayed
//! independently of the engine. `X` and `X̂` slots are merged, since the model
//! carries no data telling them apart.

mod engine;
mod report;
mod views;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use engine::{replay, resolve, Entry, LedgerResult, Step};
pub use report::{ksst_json, ksst_table, ledger_json, ledger_table, Format, UnknownFormat};
pub use views::{filtration_slice, ksst, morphic_slot, KsstReport, KsstTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub p: i64,
    pub k: i64,
    pub s: i64,
}

impl Slot {
    pub const fn new(p: i64, k: i64, s: i64) -> Self {
        Slot { p, k, s }
    }

    /// `p < 0` is read as `p = 0`.
    pub fn normalized(self) -> Self {
        Slot {
            p: self.p.max(0),
            ..self
        }
    }

    /// Inside the decomposition range `0 ≤ 2p ≤ k ≤ 2n`,
    /// `p − k ≤ s ≤ n − ⌊(k+1)/2⌋`.
    pub fn in_range(self, n: i64) -> bool {
        let Slot { p, k, s } = self;
        0 <= 2 * p && 2 * p <= k && k <= 2 * n && p - k <= s && s <= n - (k + 1).div_euclid(2)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.k, self.s)
    }
}

/// Which variety of the dual pair a slot refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Dual,
}

impl Side {
    pub fn toggle(self) -> Self {
        match self {
            Side::X => Side::Dual,
            Side::Dual => Side::X,
        }
    }
}

/// Every slot of the decomposition range, ordered by `(p, k, s)`.
pub fn enumerate_slots(n: usize) -> Vec<Slot> {
    let n = n as i64;
    let mut out = Vec::new();
    for p in 0..=n {
        for k in 2 * p..=2 * n {
            for s in p - k..=n - (k + 1).div_euclid(2) {
                out.push(Slot::new(p, k, s));
            }
        }
    }
    out
}

/// `(p, k, s) ↦ (n − k + p − s, 2n − 2s − k, s)`, the slot of `X̂` isomorphic
/// under the Fourier transform. Not normalized.
pub fn fourier_dual_slot(n: usize, slot: Slot) -> Slot {
    let n = n as i64;
    let Slot { p, k, s } = slot;
    Slot::new(n - k + p - s, 2 * n - 2 * s - k, s)
}

pub fn fourier_dual(n: usize, slot: Slot, side: Side) -> (Slot, Side) {
    (fourier_dual_slot(n, slot), side.toggle())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A symbolic rational vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupExpr {
    Zero,
    /// `H_k(X, Q)`.
    SingHom(i64),
    /// `Q`.
    OneDim,
    /// `NS(X)_Q`.
    NS,
    /// The `s = 0` part of an `A_p`-type group at `(p, k)`; contains `T_pH_k`.
    APZero(i64, i64),
    /// Griffiths-type piece of `p`-cycles in eigen-index `s`.
    Griff(i64, i64),
    /// `T_pH_k`, the image of the cycle class map.
    Tgroup(i64, i64),
    Unknown,
    /// Isomorphic to the value at another (equally unknown) slot.
    IsoTo(Slot),
}

impl GroupExpr {
    pub fn tag(&self) -> &'static str {
        match self {
            GroupExpr::Zero => "Zero",
            GroupExpr::SingHom(_) => "SingHom",
            GroupExpr::OneDim => "OneDim",
            GroupExpr::NS => "NS",
            GroupExpr::APZero(..) => "APZero",
            GroupExpr::Griff(..) => "Griff",
            GroupExpr::Tgroup(..) => "Tgroup",
            GroupExpr::Unknown => "Unknown",
            GroupExpr::IsoTo(_) => "IsoTo",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            GroupExpr::SingHom(k) => vec![k],
            GroupExpr::APZero(a, b) | GroupExpr::Griff(a, b) | GroupExpr::Tgroup(a, b) => {
                vec![a, b]
            }
            GroupExpr::IsoTo(s) => vec![s.p, s.k, s.s],
            _ => Vec::new(),
        }
    }

    /// Known dimension for an `n`-dimensional variety.
    pub fn dim(&self, n: usize) -> Option<u64> {
        match *self {
            GroupExpr::Zero => Some(0),
            GroupExpr::OneDim => Some(1),
            GroupExpr::SingHom(k) if (0..=2 * n as i64).contains(&k) => {
                Some(binomial(2 * n as u64, k as u64))
            }
            GroupExpr::SingHom(_) => Some(0),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == GroupExpr::Zero
    }

    /// Anything but `Unknown` and `IsoTo`.
    pub fn is_resolved(&self) -> bool {
        !matches!(self, GroupExpr::Unknown | GroupExpr::IsoTo(_))
    }

    /// Canonical representative up to the known isomorphisms: Poincaré
    /// symmetry of singular homology, `Q = H_0`, `APZero` at the divisor
    /// degrees is `NS`, Griffiths and `T`-groups under their Fourier
    /// symmetries.
    pub fn norm(&self, n: usize) -> GroupExpr {
        let n = n as i64;
        match *self {
            GroupExpr::SingHom(k) => GroupExpr::SingHom(k.min(2 * n - k)),
            GroupExpr::OneDim => GroupExpr::SingHom(0),
            GroupExpr::APZero(p, k) if (p, k) == (1, 2) || (p, k) == (n - 1, 2 * n - 2) => {
                GroupExpr::NS
            }
            GroupExpr::Griff(p, s) => GroupExpr::Griff(p.min(n - p - s), s),
            GroupExpr::Tgroup(p, k) => {
                let known = |p: i64, k: i64| {
                    if k >= n + p || p <= 0 {
                        Some(GroupExpr::SingHom(k).norm(n as usize))
                    } else if (p, k) == (n - 1, 2 * n - 2) {
                        Some(GroupExpr::NS)
                    } else {
                        None
                    }
                };
                let (p2, k2) = (n + p - k, 2 * n - k);
                known(p, k)
                    .or_else(|| known(p2, k2))
                    .unwrap_or_else(|| GroupExpr::Tgroup(p, k).min(GroupExpr::Tgroup(p2, k2)))
            }
            other => other,
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::IsoTo(s) => write!(f, "IsoTo{s}"),
            other => {
                let params = other.params();
                if params.is_empty() {
                    f.write_str(other.tag())
                } else {
                    let list: Vec<String> = params.iter().map(i64::to_string).collect();
                    write!(f, "{}({})", other.tag(), list.join(","))
                }
            }
        }
    }
}

/// Conjecture toggles. Strong Suslin implies weak Suslin.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assumptions {
    weak_suslin: bool,
    strong_suslin: bool,
}

impl Assumptions {
    pub const NONE: Assumptions = Assumptions {
        weak_suslin: false,
        strong_suslin: false,
    };
    pub const WEAK_SUSLIN: Assumptions = Assumptions {
        weak_suslin: true,
        strong_suslin: false,
    };
    pub const STRONG_SUSLIN: Assumptions = Assumptions {
        weak_suslin: true,
        strong_suslin: true,
    };

    pub fn new(weak_suslin: bool, strong_suslin: bool) -> Self {
        Assumptions {
            weak_suslin: weak_suslin || strong_suslin,
            strong_suslin,
        }
    }

    pub fn weak_suslin(&self) -> bool {
        self.weak_suslin
    }

    pub fn strong_suslin(&self) -> bool {
        self.strong_suslin
    }

    pub fn name(&self) -> &'static str {
        if self.strong_suslin {
            "strong-suslin"
        } else if self.weak_suslin {
            "weak-suslin"
        } else {
            "none"
        }
    }
}

impl fmt::Display for Assumptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Assumptions {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Self::NONE),
            "weak-suslin" => Ok(Self::WEAK_SUSLIN),
            "strong-suslin" => Ok(Self::STRONG_SUSLIN),
            other => Err(format!(
                "unknown assumption '{other}' (expected none, weak-suslin or strong-suslin)"
            )),
        }
    }
}
