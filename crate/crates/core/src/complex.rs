//! The linearized log jet complex as generators and relations.
//!
//! Degree `r` is spanned by the symbols `d(I; J1,...,Jr)` with every `Jk` in
//! the slot-index set. Two chains are equal when their difference lies in the
//! span of the relation chains: for `p^m < |J| <= 2p^m` and a position `k`,
//!
//! ```text
//! sum_{A+B+C=J, B,C != J} Gamma_{A,B,C} d(I; J1..J(k-1), A+B, A+C, J(k+2)..Jr)
//! ```
//!
//! Every relation fixes `I` and keeps all slots inside a finite set, so span
//! questions are decided exactly by closing up the relations that touch a
//! support and eliminating over `F_p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::combinat::{gamma_exact, mbinom, Coeff, Params};
use crate::error::{Error, Result};
use crate::indexing::{
    decompositions, in_slot_set, indices_up_to, s_index, slot_set, DeltaSymbol, MultiIndex,
};
use crate::linalg_fp::{Chain, ReducedSystem};

/// One relation: `-d(I; before) (x) d^1(eta^{inner}) (x) d(0; after)`, with the
/// inner block occupying slot positions `position` and `position + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationSpec {
    pub eta: MultiIndex,
    pub position: usize,
    pub inner: MultiIndex,
    pub before: Vec<MultiIndex>,
    pub after: Vec<MultiIndex>,
}

impl RelationSpec {
    pub fn new(
        eta: MultiIndex,
        before: Vec<MultiIndex>,
        inner: MultiIndex,
        after: Vec<MultiIndex>,
    ) -> Self {
        RelationSpec {
            eta,
            position: before.len() + 1,
            inner,
            before,
            after,
        }
    }

    pub fn degree(&self) -> usize {
        self.before.len() + self.after.len() + 2
    }

    /// `s` of the surrounding slots `(before, after)`; 0 when there are none.
    pub fn type_s(&self) -> usize {
        let surrounding: Vec<MultiIndex> = self
            .before
            .iter()
            .chain(self.after.iter())
            .cloned()
            .collect();
        s_index(&surrounding).unwrap_or(0)
    }

    pub fn validate(&self, params: &Params) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidRelation(format!("{self}: {why}")));
        if self.position != self.before.len() + 1 {
            return bad("position does not match the number of leading slots");
        }
        let n = params.n();
        if self.eta.len() != n || self.inner.len() != n {
            return bad("wrong arity");
        }
        for j in self.before.iter().chain(self.after.iter()) {
            if j.len() != n || !in_slot_set(params, j) {
                return bad("surrounding slot outside the slot-index set");
            }
        }
        let pm = params.pm() as u64;
        let norm = self.inner.norm();
        if norm <= pm || norm > 2 * pm {
            return bad("inner index must satisfy p^m < |J| <= 2p^m");
        }
        Ok(())
    }

    /// Member of the family defining the intermediate quotient: all leading
    /// slots have vanishing last component and `j_n >= p^m`.
    pub fn is_reducing(&self, params: &Params) -> bool {
        self.before.iter().all(|j| j.last() == 0) && self.inner.last() >= params.pm()
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rel(I={}; k={}; J={}; before=[",
            self.eta, self.position, self.inner
        )?;
        for (i, j) in self.before.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("]; after=[")?;
        for (i, j) in self.after.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("])")
    }
}

/// `A + B` and `A + C` of one decomposition, with `Gamma_{A,B,C} mod p`.
#[derive(Debug, Clone)]
pub struct Split {
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub coeff: Coeff,
}

/// Outcome of a quotient equality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientVerdict {
    pub zero: bool,
    /// Number of relations in the closure that decided it.
    pub relations: usize,
}

type SplitKey = (MultiIndex, bool, bool);

/// The complex for fixed `(p, m, n)`, with read-shared memo tables.
pub struct JetComplex {
    params: Params,
    gamma_memo: RwLock<HashMap<[u32; 3], Coeff>>,
    mbinom_memo: RwLock<HashMap<[u32; 2], Coeff>>,
    split_memo: RwLock<HashMap<SplitKey, Arc<Vec<Split>>>>,
    reducing_memo: RwLock<HashMap<(MultiIndex, usize), Arc<ReducedSystem>>>,
}

fn memo<K, V>(lock: &RwLock<HashMap<K, V>>, key: K, make: impl FnOnce() -> Result<V>) -> Result<V>
where
    K: std::hash::Hash + Eq,
    V: Clone,
{
    if let Some(v) = lock.read().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }
    let v = make()?;
    lock.write()
        .expect("memo lock")
        .entry(key)
        .or_insert_with(|| v.clone());
    Ok(v)
}

impl JetComplex {
    pub fn new(params: Params) -> Self {
        JetComplex {
            params,
            gamma_memo: RwLock::default(),
            mbinom_memo: RwLock::default(),
            split_memo: RwLock::default(),
            reducing_memo: RwLock::default(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn p(&self) -> u32 {
        self.params.p()
    }

    fn one(&self) -> Coeff {
        Coeff::one(self.p())
    }

    fn scalar_gamma(&self, a: u32, b: u32, c: u32) -> Result<Coeff> {
        memo(&self.gamma_memo, [a, b, c], || {
            Ok(gamma_exact(&self.params, a as u64, b as u64, c as u64)?.residue())
        })
    }

    fn scalar_mbinom(&self, k: u32, sub: u32) -> Result<Coeff> {
        memo(&self.mbinom_memo, [k, sub], || {
            let v = mbinom(&self.params, k as u64, sub as u64)?;
            Ok(Coeff::from_biguint(&v, self.p()))
        })
    }

    /// `Gamma_{A,B,C} mod p`, memoized per component.
    pub fn gamma(&self, a: &MultiIndex, b: &MultiIndex, c: &MultiIndex) -> Result<Coeff> {
        if a.len() != b.len() || a.len() != c.len() {
            return Err(Error::LengthMismatch(a.len(), b.len().max(c.len())));
        }
        let mut acc = self.one();
        for k in 0..a.len() {
            acc = acc * self.scalar_gamma(a.get(k), b.get(k), c.get(k))?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// `<upper, lower> mod p` for multi-indices.
    fn mbinom_mod_p(&self, upper: &MultiIndex, lower: &MultiIndex) -> Result<Coeff> {
        let mut acc = self.one();
        for k in 0..upper.len() {
            acc = acc * self.scalar_mbinom(upper.get(k), lower.get(k))?;
        }
        Ok(acc)
    }

    /// Decompositions of `i` with a non-zero `Gamma`, as `(A+B, A+C, Gamma)`.
    pub fn splits(
        &self,
        i: &MultiIndex,
        forbid_b: bool,
        forbid_c: bool,
    ) -> Result<Arc<Vec<Split>>> {
        memo(&self.split_memo, (i.clone(), forbid_b, forbid_c), || {
            let mut out = Vec::new();
            for (a, b, c) in decompositions(i, forbid_b, forbid_c) {
                let g = self.gamma(&a, &b, &c)?;
                if !g.is_zero() {
                    out.push(Split {
                        left: &a + &b,
                        right: &a + &c,
                        coeff: g,
                    });
                }
            }
            Ok(Arc::new(out))
        })
    }

    fn check_symbol(&self, s: &DeltaSymbol) -> Result<()> {
        if !s.is_canonical(&self.params) {
            return Err(Error::NonCanonical(s.to_string()));
        }
        Ok(())
    }

    /// `d^0(eta^{I}) = sum_{A+B+C=I, B != I} Gamma d(A+B; A+C)`.
    pub fn diff0(&self, i: &MultiIndex) -> Result<Chain> {
        self.differential(
            &Chain::symbol(&self.params, DeltaSymbol::eta(i.clone()))?,
            0,
        )
    }

    /// `d^1((dlog t)^J) = -sum_{A+B+C=J, B,C != J} Gamma d(0; A+B, A+C)`.
    pub fn diff1_slot(&self, j: &MultiIndex) -> Result<Chain> {
        if j.len() != self.params.n() || !in_slot_set(&self.params, j) {
            return Err(Error::SlotOutOfRange(j.to_string()));
        }
        let mut out = Chain::zero(&self.params, 2);
        let zero = MultiIndex::zeros(self.params.n());
        for sp in self.splits(j, true, true)?.iter() {
            out.accumulate(
                DeltaSymbol::new(zero.clone(), vec![sp.left.clone(), sp.right.clone()]),
                -sp.coeff,
            );
        }
        Ok(out)
    }

    /// `eta^{I} eta^{K} = <I+K, I> eta^{I+K}`.
    pub fn eta_product(&self, i: &MultiIndex, k: &MultiIndex) -> Result<(Coeff, MultiIndex)> {
        if i.len() != k.len() {
            return Err(Error::LengthMismatch(i.len(), k.len()));
        }
        let sum = i + k;
        let c = self.mbinom_mod_p(&sum, i)?;
        Ok((c, sum))
    }

    /// Moves the coefficient `eta^{K}`, sitting to the right of `slots`, leftward
    /// across each slot until it merges into `eta_target`.
    ///
    /// Crossing slot `J` uses the coproduct
    /// `eta^{K} -> sum_{A+B+C=K} Gamma eta^{A+B} (x) eta^{A+C}`: the `A+B` part
    /// keeps moving left while `A+C` multiplies into `J`.
    pub fn push_coefficient(
        &self,
        k: &MultiIndex,
        slots: &[MultiIndex],
        eta_target: &MultiIndex,
    ) -> Result<Chain> {
        let mut states: BTreeMap<(MultiIndex, Vec<MultiIndex>), Coeff> = BTreeMap::new();
        states.insert((k.clone(), slots.to_vec()), self.one());
        for pos in (0..slots.len()).rev() {
            let mut next: BTreeMap<(MultiIndex, Vec<MultiIndex>), Coeff> = BTreeMap::new();
            for ((coef_idx, sl), c) in states {
                for sp in self.splits(&coef_idx, false, false)?.iter() {
                    let merged = &sl[pos] + &sp.right;
                    if !in_slot_set(&self.params, &merged) {
                        continue;
                    }
                    let w = c * sp.coeff * self.mbinom_mod_p(&merged, &sl[pos])?;
                    if w.is_zero() {
                        continue;
                    }
                    let mut sl2 = sl.clone();
                    sl2[pos] = merged;
                    let e = next
                        .entry((sp.left.clone(), sl2))
                        .or_insert(Coeff::zero(self.p()));
                    *e = *e + w;
                }
            }
            states = next;
        }
        let mut out = Chain::zero(&self.params, slots.len());
        for ((coef_idx, sl), c) in states {
            let (m, eta) = self.eta_product(eta_target, &coef_idx)?;
            out.add_term(DeltaSymbol::new(eta, sl), c * m)?;
        }
        Ok(out)
    }

    fn differential_symbol(&self, s: &DeltaSymbol, c: Coeff, out: &mut Chain) -> Result<()> {
        for sp in self.splits(&s.eta, true, false)?.iter() {
            if !in_slot_set(&self.params, &sp.right) {
                continue;
            }
            let mut slots = Vec::with_capacity(s.degree() + 1);
            slots.push(sp.right.clone());
            slots.extend(s.slots.iter().cloned());
            out.accumulate(DeltaSymbol::new(sp.left.clone(), slots), c * sp.coeff);
        }
        for (k, j) in s.slots.iter().enumerate() {
            // slot k (1-based k+1) picks up (-1)^(k+1) on the negated d^1 sum
            let sign = Coeff::sign(k + 1, self.p());
            for sp in self.splits(j, true, true)?.iter() {
                let mut slots = Vec::with_capacity(s.degree() + 1);
                slots.extend(s.slots[..k].iter().cloned());
                slots.push(sp.left.clone());
                slots.push(sp.right.clone());
                slots.extend(s.slots[k + 1..].iter().cloned());
                out.accumulate(DeltaSymbol::new(s.eta.clone(), slots), c * sign * sp.coeff);
            }
        }
        Ok(())
    }

    /// The differential `d^r` via the Leibniz rule.
    pub fn differential(&self, v: &Chain, r: usize) -> Result<Chain> {
        if v.degree() != r {
            return Err(Error::DegreeMismatch {
                expected: r,
                found: v.degree(),
            });
        }
        if *v.params() != self.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = Chain::zero(&self.params, r + 1);
        for (s, c) in v.iter() {
            self.differential_symbol(s, c, &mut out)?;
        }
        Ok(out)
    }

    /// The chain of one relation.
    pub fn relation_chain(&self, spec: &RelationSpec) -> Result<Chain> {
        spec.validate(&self.params)?;
        let mut out = Chain::zero(&self.params, spec.degree());
        for sp in self.splits(&spec.inner, true, true)?.iter() {
            if !in_slot_set(&self.params, &sp.left) || !in_slot_set(&self.params, &sp.right) {
                continue;
            }
            let mut slots = spec.before.clone();
            slots.push(sp.left.clone());
            slots.push(sp.right.clone());
            slots.extend(spec.after.iter().cloned());
            out.accumulate(DeltaSymbol::new(spec.eta.clone(), slots), sp.coeff);
        }
        Ok(out)
    }

    /// Relations whose chain has a non-zero coefficient on `s`.
    ///
    /// A relation at position `k` hits `s` through exactly one `A` with
    /// `A + B = Jk`, `A + C = J(k+1)`; its inner index is `Jk + J(k+1) - A`.
    pub fn relations_containing(&self, s: &DeltaSymbol) -> Result<Vec<RelationSpec>> {
        let pm = self.params.pm() as u64;
        let mut out = Vec::new();
        for k in 0..s.degree().saturating_sub(1) {
            let (jk, jk1) = (&s.slots[k], &s.slots[k + 1]);
            let sum = jk + jk1;
            for a in jk.meet(jk1).lower_set() {
                let inner = sum.checked_sub(&a).expect("a below both slots");
                let norm = inner.norm();
                if norm <= pm || norm > 2 * pm {
                    continue;
                }
                let b = jk.checked_sub(&a).expect("a <= jk");
                let c = jk1.checked_sub(&a).expect("a <= jk1");
                if self.gamma(&a, &b, &c)?.is_zero() {
                    continue;
                }
                out.push(RelationSpec::new(
                    s.eta.clone(),
                    s.slots[..k].to_vec(),
                    inner,
                    s.slots[k + 2..].to_vec(),
                ));
            }
        }
        Ok(out)
    }

    /// Closure of the relations touching `support`: every relation meeting a
    /// symbol reached so far is added, together with its own symbols.
    pub fn relation_closure<'a>(
        &self,
        support: impl IntoIterator<Item = &'a DeltaSymbol>,
    ) -> Result<Vec<(RelationSpec, Chain)>> {
        let mut seen: BTreeSet<DeltaSymbol> = BTreeSet::new();
        let mut frontier: Vec<DeltaSymbol> = Vec::new();
        for s in support {
            if seen.insert(s.clone()) {
                frontier.push(s.clone());
            }
        }
        let mut specs: BTreeMap<RelationSpec, Chain> = BTreeMap::new();
        while let Some(s) = frontier.pop() {
            for spec in self.relations_containing(&s)? {
                if specs.contains_key(&spec) {
                    continue;
                }
                let chain = self.relation_chain(&spec)?;
                for t in chain.support() {
                    if seen.insert(t.clone()) {
                        frontier.push(t.clone());
                    }
                }
                specs.insert(spec, chain);
            }
        }
        Ok(specs.into_iter().collect())
    }

    pub fn relations_touching<'a>(
        &self,
        support: impl IntoIterator<Item = &'a DeltaSymbol>,
    ) -> Result<Vec<Chain>> {
        Ok(self
            .relation_closure(support)?
            .into_iter()
            .map(|(_, c)| c)
            .collect())
    }

    /// Decides whether `v` is zero in the quotient, reporting the closure size.
    pub fn quotient_check(&self, v: &Chain) -> Result<QuotientVerdict> {
        if v.is_zero() {
            return Ok(QuotientVerdict {
                zero: true,
                relations: 0,
            });
        }
        let closure = self.relation_closure(v.support())?;
        let sys = ReducedSystem::new(
            &self.params,
            closure.iter().map(|(_, c)| c),
            std::iter::empty(),
            |_| false,
        );
        Ok(QuotientVerdict {
            zero: sys.contains(v),
            relations: closure.len(),
        })
    }

    pub fn quotient_zero(&self, v: &Chain) -> Result<bool> {
        Ok(self.quotient_check(v)?.zero)
    }

    /// Quotient equality of two chains.
    pub fn quotient_eq(&self, a: &Chain, b: &Chain) -> Result<bool> {
        self.quotient_zero(&a.sub(b)?)
    }

    /// Every relation of degree `r` with the given `I`.
    pub fn relation_specs(&self, eta: &MultiIndex, r: usize) -> Vec<RelationSpec> {
        let pm = self.params.pm() as u64;
        let slots = slot_set(&self.params);
        let inners: Vec<MultiIndex> = indices_up_to(self.params.n(), 2 * pm)
            .into_iter()
            .filter(|j| j.norm() > pm)
            .collect();
        let mut out = Vec::new();
        for k in 1..r {
            for before in tuples(&slots, k - 1) {
                for inner in &inners {
                    for after in tuples(&slots, r - k - 1) {
                        out.push(RelationSpec::new(
                            eta.clone(),
                            before.clone(),
                            inner.clone(),
                            after,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Symbols forming the basis of the intermediate quotient: the first slot
    /// with non-zero last component has it below `p^m`, or it is the last slot.
    pub fn is_reduced_basis(&self, s: &DeltaSymbol) -> bool {
        let Ok(pos) = s_index(&s.slots) else {
            return true;
        };
        pos == s.degree() || s.slots[pos - 1].last() < self.params.pm()
    }

    /// The relations with fixed `I` and degree `r` defining the intermediate
    /// quotient.
    pub fn reducing_specs(&self, eta: &MultiIndex, r: usize) -> Vec<RelationSpec> {
        let pm = self.params.pm();
        let slots = slot_set(&self.params);
        let flat: Vec<MultiIndex> = slots.iter().filter(|j| j.last() == 0).cloned().collect();
        let inners: Vec<MultiIndex> = indices_up_to(self.params.n(), 2 * pm as u64)
            .into_iter()
            .filter(|j| j.norm() > pm as u64 && j.last() >= pm)
            .collect();
        let mut out = Vec::new();
        for k in 1..r {
            for before in tuples(&flat, k - 1) {
                for inner in &inners {
                    for after in tuples(&slots, r - k - 1) {
                        out.push(RelationSpec::new(
                            eta.clone(),
                            before.clone(),
                            inner.clone(),
                            after,
                        ));
                    }
                }
            }
        }
        out
    }

    fn reducing_system(&self, eta: &MultiIndex, r: usize) -> Result<Arc<ReducedSystem>> {
        memo(&self.reducing_memo, (eta.clone(), r), || {
            let chains = self
                .reducing_specs(eta, r)
                .iter()
                .map(|spec| self.relation_chain(spec))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arc::new(ReducedSystem::new(
                &self.params,
                chains.iter(),
                std::iter::empty(),
                |s| self.is_reduced_basis(s),
            )))
        })
    }

    /// Rewrites a symbol as a combination of reduced-basis symbols, modulo the
    /// reducing relations with the same `I`.
    pub fn mbar_expand(&self, s: &DeltaSymbol) -> Result<Chain> {
        self.check_symbol(s)?;
        let single = Chain::symbol(&self.params, s.clone())?;
        if self.is_reduced_basis(s) {
            return Ok(single);
        }
        let sys = self.reducing_system(&s.eta, s.degree())?;
        sys.late_coordinates(&single)?
            .ok_or_else(|| Error::NotExpressible(s.to_string()))
    }
}

/// All length-`len` sequences over `items`, lexicographic.
pub(crate) fn tuples(items: &[MultiIndex], len: usize) -> Vec<Vec<MultiIndex>> {
    let mut out: Vec<Vec<MultiIndex>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |j| {
                    let mut t = t.clone();
                    t.push(j.clone());
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(p: u32, m: u32, n: usize) -> JetComplex {
        JetComplex::new(Params::new(p, m, n).unwrap())
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    fn chain(cx: &JetComplex, degree: usize, text: &str) -> Chain {
        Chain::parse(cx.params(), degree, text).unwrap()
    }

    #[test]
    fn diff0_small_cases() {
        let c = cx(2, 1, 1);
        assert!(c.diff0(&mi(&[0])).unwrap().is_zero());
        assert_eq!(
            c.diff0(&mi(&[1])).unwrap(),
            chain(&c, 1, "d((1);(1)) + d((0);(1))")
        );
        assert_eq!(
            c.diff0(&mi(&[2])).unwrap(),
            chain(&c, 1, "d((2);(2)) + d((0);(2))")
        );
    }

    #[test]
    fn diff1_slot_small_cases() {
        let c = cx(2, 1, 1);
        assert_eq!(
            c.diff1_slot(&mi(&[1])).unwrap(),
            chain(&c, 2, "d((0);(1),(1))")
        );
        // (2,0,0) survives with Gamma = 1; the term is itself a relation
        let two = c.diff1_slot(&mi(&[2])).unwrap();
        assert_eq!(two, chain(&c, 2, "d((0);(2),(2))"));
        assert!(c.quotient_zero(&two).unwrap());
        assert!(matches!(
            c.diff1_slot(&mi(&[3])),
            Err(Error::SlotOutOfRange(_))
        ));
        let c3 = cx(3, 1, 1);
        assert_eq!(
            c3.diff1_slot(&mi(&[1])).unwrap(),
            chain(&c3, 2, "2*d((0);(1),(1))")
        );
    }

    #[test]
    fn eta_products() {
        let c = cx(2, 1, 1);
        let (k, e) = c.eta_product(&mi(&[3]), &mi(&[0])).unwrap();
        assert_eq!((k.residue(), e), (1, mi(&[3])));
        let (k, e) = c.eta_product(&mi(&[2]), &mi(&[2])).unwrap();
        assert_eq!((k.residue(), e), (0, mi(&[4])));
        let (k, e) = c.eta_product(&mi(&[0]), &mi(&[3])).unwrap();
        assert_eq!((k.residue(), e), (1, mi(&[3])));
    }

    #[test]
    fn differential_worked_examples() {
        let c = cx(2, 1, 1);
        let x = chain(&c, 1, "d((1);(1))");
        assert_eq!(
            c.differential(&x, 1).unwrap(),
            chain(&c, 2, "d((0);(1),(1))")
        );
        let dd = c.differential(&c.diff0(&mi(&[1])).unwrap(), 1).unwrap();
        assert!(dd.is_zero());
        assert!(c
            .differential(&Chain::zero(c.params(), 1), 1)
            .unwrap()
            .is_zero());
        assert!(matches!(
            c.differential(&x, 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn relation_chain_examples() {
        let c = cx(2, 1, 1);
        let spec = RelationSpec::new(mi(&[2]), vec![], mi(&[3]), vec![]);
        assert_eq!(
            c.relation_chain(&spec).unwrap(),
            chain(&c, 2, "d((2);(1),(2)) + d((2);(2),(1))")
        );
        // J=(4): only (0,2,2) keeps both slots within p^m, Gamma = 3
        let spec = RelationSpec::new(mi(&[0]), vec![], mi(&[4]), vec![]);
        assert_eq!(
            c.relation_chain(&spec).unwrap(),
            chain(&c, 2, "d((0);(2),(2))")
        );
        let bad = RelationSpec::new(mi(&[0]), vec![], mi(&[2]), vec![]);
        assert!(matches!(
            c.relation_chain(&bad),
            Err(Error::InvalidRelation(_))
        ));
    }

    #[test]
    fn quotient_zero_examples() {
        let c = cx(2, 1, 1);
        assert!(c.quotient_zero(&Chain::zero(c.params(), 2)).unwrap());
        assert!(c
            .quotient_zero(&chain(&c, 2, "d((2);(1),(2)) + d((2);(2),(1))"))
            .unwrap());
        assert!(!c.quotient_zero(&chain(&c, 1, "d((0);(1))")).unwrap());
        assert!(!c.quotient_zero(&chain(&c, 2, "d((2);(1),(2))")).unwrap());
    }

    #[test]
    fn relations_touching_examples() {
        let c = cx(2, 1, 1);
        assert!(c.relations_touching(std::iter::empty()).unwrap().is_empty());
        let s: DeltaSymbol = "d((0);(1),(2))".parse().unwrap();
        let specs = c.relations_containing(&s).unwrap();
        assert!(specs.contains(&RelationSpec::new(mi(&[0]), vec![], mi(&[3]), vec![])));
        let small: DeltaSymbol = "d((0);(1),(1))".parse().unwrap();
        assert!(c.relations_touching([&small]).unwrap().is_empty());
    }

    #[test]
    fn mbar_expansion() {
        let c = cx(2, 1, 1);
        let basis: DeltaSymbol = "d((2);(1),(2))".parse().unwrap();
        assert_eq!(
            c.mbar_expand(&basis).unwrap(),
            Chain::symbol(c.params(), basis.clone()).unwrap()
        );
        let swapped: DeltaSymbol = "d((2);(2),(1))".parse().unwrap();
        assert_eq!(
            c.mbar_expand(&swapped).unwrap(),
            chain(&c, 2, "d((2);(1),(2))")
        );
        let last: DeltaSymbol = "d((0);(1),(2))".parse().unwrap();
        assert!(c.is_reduced_basis(&last));
    }

    #[test]
    fn relation_type_s() {
        let spec = RelationSpec::new(
            mi(&[0, 0]),
            vec![mi(&[1, 0])],
            mi(&[2, 2]),
            vec![mi(&[0, 1])],
        );
        assert_eq!(spec.type_s(), 2);
        assert_eq!(spec.degree(), 4);
        let bare = RelationSpec::new(mi(&[0]), vec![], mi(&[3]), vec![]);
        assert_eq!(bare.type_s(), 0);
    }
}
