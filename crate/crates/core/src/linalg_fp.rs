//! Chains over `F_p` and exact elimination for span questions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::combinat::{Coeff, Params};
use crate::error::{Error, Result};
use crate::indexing::{canonicalize, DeltaSymbol};

/// A finite `F_p`-combination of canonical symbols of one degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    params: Params,
    degree: usize,
    terms: BTreeMap<DeltaSymbol, u32>,
}

impl Chain {
    pub fn zero(params: &Params, degree: usize) -> Self {
        Chain {
            params: *params,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The chain `1 * symbol`, or zero if the symbol is not canonical.
    pub fn symbol(params: &Params, symbol: DeltaSymbol) -> Result<Self> {
        let mut c = Chain::zero(params, symbol.degree());
        c.add_term(symbol, Coeff::one(params.p()))?;
        Ok(c)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, symbol: &DeltaSymbol) -> Coeff {
        Coeff::new(
            self.terms.get(symbol).copied().unwrap_or(0) as u64,
            self.params.p(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DeltaSymbol, Coeff)> + '_ {
        let p = self.params.p();
        self.terms
            .iter()
            .map(move |(s, &c)| (s, Coeff::new(c as u64, p)))
    }

    pub fn support(&self) -> impl Iterator<Item = &DeltaSymbol> + '_ {
        self.terms.keys()
    }

    /// Adds `coeff * symbol`; symbols outside the slot-index set are dropped.
    pub fn add_term(&mut self, symbol: DeltaSymbol, coeff: Coeff) -> Result<()> {
        if symbol.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: symbol.degree(),
            });
        }
        if symbol.arity() != self.params.n() {
            return Err(Error::LengthMismatch(self.params.n(), symbol.arity()));
        }
        if let Some(s) = canonicalize(&self.params, symbol) {
            self.accumulate(s, coeff);
        }
        Ok(())
    }

    /// Hot-path insertion for symbols already known to be canonical.
    pub(crate) fn accumulate(&mut self, symbol: DeltaSymbol, coeff: Coeff) {
        debug_assert!(symbol.is_canonical(&self.params), "{symbol}");
        debug_assert_eq!(symbol.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let p = self.params.p() as u64;
        match self.terms.entry(symbol) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.residue());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = ((*e.get() as u64 + coeff.residue() as u64) % p) as u32;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_assign_scaled(other, Coeff::one(self.params.p()))?;
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_assign_scaled(other, -Coeff::one(self.params.p()))?;
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_assign_scaled(&mut self, other: &Chain, c: Coeff) -> Result<()> {
        self.check_compatible(other)?;
        for (s, v) in other.iter() {
            self.accumulate(s.clone(), c * v);
        }
        Ok(())
    }

    pub fn scale(&self, c: Coeff) -> Chain {
        let mut out = Chain::zero(&self.params, self.degree);
        if c.is_zero() {
            return out;
        }
        for (s, v) in self.iter() {
            out.accumulate(s.clone(), c * v);
        }
        out
    }

    pub fn neg(&self) -> Chain {
        self.scale(-Coeff::one(self.params.p()))
    }

    /// Applies `f` to every symbol, re-canonicalizing and summing collisions.
    pub fn map_symbols(&self, mut f: impl FnMut(&DeltaSymbol) -> Option<DeltaSymbol>) -> Chain {
        let mut out = Chain::zero(&self.params, self.degree);
        for (s, v) in self.iter() {
            if let Some(t) = f(s).and_then(|t| canonicalize(&self.params, t)) {
                out.accumulate(t, v);
            }
        }
        out
    }

    /// Parses `c*d(...) + c*d(...)`, or `0`. Coefficients default to 1 and
    /// may be negative.
    pub fn parse(params: &Params, degree: usize, text: &str) -> Result<Chain> {
        let mut out = Chain::zero(params, degree);
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        let mut sign = 1i64;
        for token in split_terms(text) {
            match token.as_str() {
                "+" => sign = 1,
                "-" => sign = -1,
                t => {
                    let (c, s) = match t.split_once('*') {
                        Some((c, s)) => (
                            c.trim()
                                .parse::<i64>()
                                .map_err(|e| Error::Parse(format!("{c:?}: {e}")))?,
                            s,
                        ),
                        None => (1, t),
                    };
                    let sym: DeltaSymbol = s.parse()?;
                    out.add_term(sym, Coeff::from_i64(sign * c, params.p()))?;
                    sign = 1;
                }
            }
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                out.push(ch.to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.residue() == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{c}*{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}

type Row = Vec<(u32, u32)>;

/// Row-echelon form of a family of chains under a fixed column order.
///
/// Columns are ordered by `(late, symbol)`: symbols flagged *late* sort after
/// all others, so elimination clears the early symbols first. A pivot on a
/// late column means the generator span contains a non-zero combination of
/// late symbols alone.
pub struct ReducedSystem {
    p: u32,
    columns: HashMap<DeltaSymbol, u32>,
    symbols: Vec<(bool, DeltaSymbol)>,
    pivots: HashMap<u32, Row>,
    late_pivots: usize,
}

impl ReducedSystem {
    pub fn new<'a>(
        params: &Params,
        generators: impl IntoIterator<Item = &'a Chain>,
        extra_symbols: impl IntoIterator<Item = &'a DeltaSymbol>,
        is_late: impl Fn(&DeltaSymbol) -> bool,
    ) -> Self {
        let generators: Vec<&Chain> = generators.into_iter().collect();
        let mut universe: BTreeSet<(bool, DeltaSymbol)> = BTreeSet::new();
        for g in &generators {
            for s in g.support() {
                universe.insert((is_late(s), s.clone()));
            }
        }
        for s in extra_symbols {
            universe.insert((is_late(s), s.clone()));
        }
        let symbols: Vec<(bool, DeltaSymbol)> = universe.into_iter().collect();
        let columns = symbols
            .iter()
            .enumerate()
            .map(|(k, (_, s))| (s.clone(), k as u32))
            .collect();
        let mut sys = ReducedSystem {
            p: params.p(),
            columns,
            symbols,
            pivots: HashMap::new(),
            late_pivots: 0,
        };
        for g in generators {
            let row = sys.row_of(g).expect("generator symbols are columns");
            sys.insert(row);
        }
        sys
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn column_count(&self) -> usize {
        self.symbols.len()
    }

    /// Number of pivots sitting on late columns.
    pub fn late_pivots(&self) -> usize {
        self.late_pivots
    }

    fn row_of(&self, chain: &Chain) -> Option<Row> {
        let mut row: Row = Vec::with_capacity(chain.len());
        for (s, c) in chain.iter() {
            row.push((*self.columns.get(s)?, c.residue()));
        }
        row.sort_unstable();
        Some(row)
    }

    /// `row -= factor * pivot`, both sorted by column.
    fn axpy(&self, row: &Row, factor: u32, pivot: &Row) -> Row {
        let p = self.p as u64;
        let neg = (p - factor as u64) % p;
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
            let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
            if take_row {
                out.push(row[i]);
                i += 1;
            } else if take_piv {
                out.push((pivot[j].0, (neg * pivot[j].1 as u64 % p) as u32));
                j += 1;
            } else {
                let v = ((row[i].1 as u64 + neg * pivot[j].1 as u64) % p) as u32;
                if v != 0 {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn insert(&mut self, mut row: Row) {
        while let Some(&(lead, v)) = row.first() {
            match self.pivots.get(&lead) {
                Some(piv) => row = self.axpy(&row, v, piv),
                None => {
                    let inv = Coeff::new(v as u64, self.p)
                        .inverse()
                        .expect("non-zero lead");
                    for e in row.iter_mut() {
                        e.1 = (Coeff::new(e.1 as u64, self.p) * inv).residue();
                    }
                    if self.symbols[lead as usize].0 {
                        self.late_pivots += 1;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Reduces `row` by every pivot it meets; the result only has entries on
    /// non-pivot columns.
    fn reduce_fully(&self, mut row: Row) -> Row {
        let mut pos = 0;
        while pos < row.len() {
            let (col, v) = row[pos];
            match self.pivots.get(&col) {
                Some(piv) => row = self.axpy(&row, v, piv),
                None => pos += 1,
            }
        }
        row
    }

    /// Whether `v` lies in the span of the generators.
    pub fn contains(&self, v: &Chain) -> bool {
        match self.row_of(v) {
            Some(row) => self.reduce_fully(row).is_empty(),
            // a symbol no generator touches can never cancel
            None => false,
        }
    }

    /// Normal form of `v`: the unique representative supported on non-pivot
    /// columns. `None` if `v` touches a symbol outside the system.
    pub fn normal_form(&self, v: &Chain) -> Option<Chain> {
        let row = self.reduce_fully(self.row_of(v)?);
        let mut out = Chain::zero(v.params(), v.degree());
        for (col, val) in row {
            out.accumulate(
                self.symbols[col as usize].1.clone(),
                Coeff::new(val as u64, self.p),
            );
        }
        Some(out)
    }

    /// Coordinates of `v` on late symbols modulo the span, if `v` reduces to
    /// late symbols only. Errors if late pivots make them non-unique.
    pub fn late_coordinates(&self, v: &Chain) -> Result<Option<Chain>> {
        if self.late_pivots > 0 {
            let (col, _) = self
                .pivots
                .iter()
                .filter(|(c, _)| self.symbols[**c as usize].0)
                .min_by_key(|(c, _)| **c)
                .expect("late pivot exists");
            return Err(Error::NonUniqueCoordinates(format!(
                "generator span meets basis span at {}",
                self.symbols[*col as usize].1
            )));
        }
        let Some(nf) = self.normal_form(v) else {
            return Ok(None);
        };
        let all_late = nf.support().all(|s| {
            self.columns
                .get(s)
                .is_some_and(|&c| self.symbols[c as usize].0)
        });
        Ok(all_late.then_some(nf))
    }
}

fn check_degrees(v: &Chain, generators: &[Chain]) -> Result<()> {
    for g in generators {
        v.check_compatible(g)?;
    }
    Ok(())
}

/// Whether `v` lies in the `F_p`-span of `generators`.
pub fn span_contains(v: &Chain, generators: &[Chain]) -> Result<bool> {
    check_degrees(v, generators)?;
    if v.is_zero() {
        return Ok(true);
    }
    let sys = ReducedSystem::new(v.params(), generators, std::iter::empty(), |_| false);
    Ok(sys.contains(v))
}

/// Coefficients `c` with `v - sum c_b * b` in the span of `generators`, one per
/// basis symbol, or `None` if no such coefficients exist.
pub fn solve_coordinates(
    v: &Chain,
    basis: &[DeltaSymbol],
    generators: &[Chain],
) -> Result<Option<BTreeMap<DeltaSymbol, Coeff>>> {
    check_degrees(v, generators)?;
    for b in basis {
        if b.degree() != v.degree() {
            return Err(Error::DegreeMismatch {
                expected: v.degree(),
                found: b.degree(),
            });
        }
    }
    let basis_set: BTreeSet<&DeltaSymbol> = basis.iter().collect();
    let sys = ReducedSystem::new(
        v.params(),
        generators,
        basis.iter().chain(v.support()),
        |s| basis_set.contains(s),
    );
    let Some(coords) = sys.late_coordinates(v)? else {
        return Ok(None);
    };
    Ok(Some(
        basis.iter().map(|b| (b.clone(), coords.coeff(b))).collect(),
    ))
}
