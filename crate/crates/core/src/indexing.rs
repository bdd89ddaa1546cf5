//! Multi-indices, the slot-index set and the generators `d(I; J1,...,Jr)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::combinat::Params;
use crate::error::{Error, Result};

/// An element of `N^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    /// `1_i`, with `i` counted from 1.
    pub fn unit(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::CoordinateOutOfRange { index: i, n });
        }
        let mut v = Self::zeros(n);
        v.0[i - 1] = 1;
        Ok(v)
    }

    /// `value * 1_n`.
    pub fn last_only(value: u32, n: usize) -> Self {
        let mut v = Self::zeros(n);
        if n > 0 {
            v.0[n - 1] = value;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|I|`.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Zero-based component access.
    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    /// The `n`-th (last) component.
    pub fn last(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Drops the last component.
    pub fn hat(&self) -> Self {
        let mut v = self.0.clone();
        v.pop();
        MultiIndex(v)
    }

    /// Zero-pads up to length `n` (the inverse of [`hat`](Self::hat) on
    /// indices whose last component vanishes).
    pub fn embed(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        MultiIndex(v)
    }

    /// Same index with the last component set to zero.
    pub fn hat_zeroed(&self) -> Self {
        let mut v = self.clone();
        if let Some(l) = v.0.last_mut() {
            *l = 0;
        }
        v
    }

    pub fn is_le(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.is_le(self) {
            return None;
        }
        Some(MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Relabels coordinates: component `k` moves to position `perm[k] - 1`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut v = SmallVec::from_elem(0, self.len());
        for (k, &c) in self.0.iter().enumerate() {
            v[perm[k] - 1] = c;
        }
        MultiIndex(v)
    }

    /// Every `A` with `0 <= A <= self`, in lexicographic order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(SmallVec::new())];
        for &c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for prefix in &out {
                for v in 0..=c {
                    let mut q = prefix.clone();
                    q.0.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(SmallVec::from_vec(v))
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(v))
    }
}

impl std::ops::Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), rhs.len());
        MultiIndex(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("multi-index must be parenthesised: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(MultiIndex::default());
        }
        inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{c:?}: {e}")))
            })
            .collect::<Result<SmallVec<_>>>()
            .map(MultiIndex)
    }
}

/// `J` is a legal slot exponent: `0 < |J| <= p^m`.
pub fn in_slot_set(params: &Params, j: &MultiIndex) -> bool {
    let norm = j.norm();
    norm > 0 && norm <= params.pm() as u64
}

/// Position (1-based) of the first slot with non-zero last component, or `r`
/// if there is none.
pub fn s_index(slots: &[MultiIndex]) -> Result<usize> {
    if slots.is_empty() {
        return Err(Error::EmptySlots);
    }
    Ok(slots
        .iter()
        .position(|j| j.last() != 0)
        .map_or(slots.len(), |k| k + 1))
}

pub type Decomposition = (MultiIndex, MultiIndex, MultiIndex);

/// All `(A, B, C)` with `A + B + C = I`, optionally without `B = I` or
/// `C = I`, sorted lexicographically.
pub fn decompositions(
    i: &MultiIndex,
    forbid_b_eq_i: bool,
    forbid_c_eq_i: bool,
) -> Vec<Decomposition> {
    let mut out: Vec<Decomposition> = vec![Default::default()];
    for c in i.iter() {
        let mut next = Vec::with_capacity(out.len() * ((c as usize + 1) * (c as usize + 2) / 2));
        for (a0, b0, c0) in &out {
            for x in 0..=c {
                for y in 0..=(c - x) {
                    let (mut a, mut b, mut cc) = (a0.clone(), b0.clone(), c0.clone());
                    a.0.push(x);
                    b.0.push(y);
                    cc.0.push(c - x - y);
                    next.push((a, b, cc));
                }
            }
        }
        out = next;
    }
    out.retain(|(_, b, c)| !(forbid_b_eq_i && b == i) && !(forbid_c_eq_i && c == i));
    out
}

/// The generator `d(I; J1,...,Jr)`: divided power `eta^{I}` times the
/// tensor of `(dlog t)^{Jk}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaSymbol {
    pub eta: MultiIndex,
    pub slots: Vec<MultiIndex>,
}

impl DeltaSymbol {
    pub fn new(eta: MultiIndex, slots: Vec<MultiIndex>) -> Self {
        DeltaSymbol { eta, slots }
    }

    /// Degree-0 symbol `eta^{I}`.
    pub fn eta(eta: MultiIndex) -> Self {
        DeltaSymbol {
            eta,
            slots: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    pub fn arity(&self) -> usize {
        self.eta.len()
    }

    /// Every component of every index is zero at coordinate `i` (1-based).
    pub fn avoids_coordinate(&self, i: usize) -> bool {
        self.eta.get(i - 1) == 0 && self.slots.iter().all(|j| j.get(i - 1) == 0)
    }

    pub fn is_canonical(&self, params: &Params) -> bool {
        self.eta.len() == params.n()
            && self
                .slots
                .iter()
                .all(|j| j.len() == params.n() && in_slot_set(params, j))
    }

    pub fn permuted(&self, perm: &[usize]) -> DeltaSymbol {
        DeltaSymbol {
            eta: self.eta.permuted(perm),
            slots: self.slots.iter().map(|j| j.permuted(perm)).collect(),
        }
    }
}

/// Returns the symbol if every slot lies in the slot-index set, `None` (the
/// zero class) if a slot is zero or too large.
pub fn canonicalize(params: &Params, symbol: DeltaSymbol) -> Option<DeltaSymbol> {
    symbol
        .slots
        .iter()
        .all(|j| in_slot_set(params, j))
        .then_some(symbol)
}

impl Ord for DeltaSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.eta.cmp(&other.eta))
            .then_with(|| self.slots.cmp(&other.slots))
    }
}

impl PartialOrd for DeltaSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DeltaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d({};", self.eta)?;
        for (k, j) in self.slots.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for DeltaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DeltaSymbol {
    type Err = Error;

    /// Parses the `d(I;J1,...,Jr)` rendering, e.g. `d((2,0);(1,0),(0,1))`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a symbol: {s:?}"));
        let body = s
            .trim()
            .strip_prefix("d(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (eta, rest) = body.split_once(';').ok_or_else(bad)?;
        let eta: MultiIndex = eta.parse()?;
        let mut slots = Vec::new();
        let mut rest = rest.trim();
        while !rest.is_empty() {
            let close = rest.find(')').ok_or_else(bad)?;
            slots.push(rest[..=close].parse()?);
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(bad());
                }
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        Ok(DeltaSymbol { eta, slots })
    }
}

/// All `I in N^n` with `|I| <= max_norm`, lexicographic.
pub fn indices_up_to(n: usize, max_norm: u64) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = vec![MultiIndex(SmallVec::new())];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            let used = prefix.norm();
            for c in 0..=(max_norm - used) {
                let mut q = prefix.clone();
                q.0.push(c as u32);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The slot-index set: all `J` with `0 < |J| <= p^m`, lexicographic.
pub fn slot_set(params: &Params) -> Vec<MultiIndex> {
    indices_up_to(params.n(), params.pm() as u64)
        .into_iter()
        .filter(|j| !j.is_zero())
        .collect()
}

/// Every canonical symbol of degree `r` with `|I| <= max_weight`.
pub fn symbols_in_window(params: &Params, max_weight: u64, r: usize) -> Vec<DeltaSymbol> {
    let slots = slot_set(params);
    let mut tails: Vec<Vec<MultiIndex>> = vec![Vec::new()];
    for _ in 0..r {
        tails = tails
            .into_iter()
            .flat_map(|t| {
                slots.iter().map(move |j| {
                    let mut t = t.clone();
                    t.push(j.clone());
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for eta in indices_up_to(params.n(), max_weight) {
        for t in &tails {
            out.push(DeltaSymbol::new(eta.clone(), t.clone()));
        }
    }
    out.sort();
    out
}
