//! The contracting homotopy in the last coordinate, its conjugates, and the
//! checks built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::combinat::{falling_factorial, sigma, Coeff};
use crate::complex::{JetComplex, RelationSpec};
use crate::error::{Error, Result};
use crate::indexing::{s_index, DeltaSymbol, MultiIndex};
use crate::linalg_fp::Chain;

/// A polynomial in the single divided-power variable `eta_n`, keyed by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaPolynomial {
    p: u32,
    terms: BTreeMap<u64, Coeff>,
}

impl EtaPolynomial {
    pub fn zero(p: u32) -> Self {
        EtaPolynomial {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exponent: u64, c: Coeff) {
        let e = self.terms.entry(exponent).or_insert(Coeff::zero(self.p));
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: u64) -> Coeff {
        self.terms
            .get(&exponent)
            .copied()
            .unwrap_or(Coeff::zero(self.p))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }
}

impl fmt::Display for EtaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.residue() != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "eta^{e}")?;
        }
        Ok(())
    }
}

/// The one-variable homotopy on `eta_n^{i_n} (dlog t)^J`, as a polynomial in
/// `eta_n`. Zero unless `p^m | i_n` and `J` is a positive multiple of `e_n`.
pub fn h1_eta(cx: &JetComplex, i_n: u64, j: &MultiIndex) -> Result<EtaPolynomial> {
    let params = cx.params();
    let (p, pm) = (params.p(), params.pm() as u64);
    let mut out = EtaPolynomial::zero(p);
    let jn = j.last() as u64;
    if !i_n.is_multiple_of(pm) || !j.hat().is_zero() || jn == 0 {
        return Ok(out);
    }
    if jn < pm {
        out.add_term(i_n + jn, Coeff::one(p));
        return Ok(out);
    }
    if jn > pm {
        return Err(Error::SlotOutOfRange(j.to_string()));
    }
    let q = i_n / pm;
    for u in q..sigma(p, q) {
        let ratio = Coeff::from_biguint(&falling_factorial(u, u - q), p);
        out.add_term(pm * (u + 1), Coeff::sign((u - q) as usize, p) * ratio);
    }
    Ok(out)
}

/// `h` in degree 1: a chain of degree 0.
pub fn h1(cx: &JetComplex, s: &DeltaSymbol) -> Result<Chain> {
    if s.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: s.degree(),
        });
    }
    h_basis(cx, s)
}

/// `h` on a symbol of the reduced basis.
///
/// With `s` the first slot whose last component is non-zero, the one-variable
/// homotopy acts on `eta_n^{i_n}` and slot `s`; the resulting `eta_n` powers
/// are carried left across slots `1..s-1` into `eta^{I hat}`, and the slots
/// after `s` ride along.
pub fn h_basis(cx: &JetComplex, s: &DeltaSymbol) -> Result<Chain> {
    let params = cx.params();
    let r = s.degree();
    if r == 0 {
        return Err(Error::DegreeZero);
    }
    if !s.is_canonical(params) {
        return Err(Error::NonCanonical(s.to_string()));
    }
    let mut out = Chain::zero(params, r - 1);
    let Ok(pos) = s_index(&s.slots) else {
        return Ok(out);
    };
    let js = &s.slots[pos - 1];
    if js.last() == 0 {
        return Ok(out);
    }
    if !cx.is_reduced_basis(s) {
        return Err(Error::NotExpressible(s.to_string()));
    }
    let poly = h1_eta(cx, s.eta.last() as u64, js)?;
    let sign = Coeff::sign(pos - 1, params.p());
    let base = s.eta.hat_zeroed();
    for (e, c) in poly.iter() {
        let k = MultiIndex::last_only(e as u32, params.n());
        let pushed = cx.push_coefficient(&k, &s.slots[..pos - 1], &base)?;
        for (t, w) in pushed.iter() {
            let mut slots = t.slots.clone();
            slots.extend(s.slots[pos..].iter().cloned());
            out.add_term(DeltaSymbol::new(t.eta.clone(), slots), sign * c * w)?;
        }
    }
    Ok(out)
}

/// The homotopy `h^r` in the last coordinate, extended linearly.
pub fn h(cx: &JetComplex, v: &Chain, r: usize) -> Result<Chain> {
    if r == 0 {
        return Err(Error::DegreeZero);
    }
    if v.degree() != r {
        return Err(Error::DegreeMismatch {
            expected: r,
            found: v.degree(),
        });
    }
    if v.params() != cx.params() {
        return Err(Error::ParamsMismatch);
    }
    let mut out = Chain::zero(cx.params(), r - 1);
    for (s, c) in v.iter() {
        for (b, w) in cx.mbar_expand(s)?.iter() {
            out.add_assign_scaled(&h_basis(cx, b)?, c * w)?;
        }
    }
    Ok(out)
}

fn check_coordinate(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::CoordinateOutOfRange { index: i, n });
    }
    Ok(())
}

/// Projection killing every symbol with content in coordinate `i`.
pub fn pi(cx: &JetComplex, i: usize, v: &Chain) -> Result<Chain> {
    check_coordinate(i, cx.params().n())?;
    Ok(v.map_symbols(|s| s.avoids_coordinate(i).then(|| s.clone())))
}

/// Relabels coordinates; `perm[k]` is the 1-based image of coordinate `k + 1`.
pub fn permute(perm: &[usize], v: &Chain) -> Result<Chain> {
    let n = v.params().n();
    let mut seen = vec![false; n];
    let ok = perm.len() == n
        && perm
            .iter()
            .all(|&t| (1..=n).contains(&t) && !std::mem::replace(&mut seen[t - 1], true));
    if !ok {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    Ok(v.map_symbols(|s| Some(s.permuted(perm))))
}

/// The transposition exchanging coordinates `i` and `n`.
pub fn transposition(i: usize, n: usize) -> Result<Vec<usize>> {
    check_coordinate(i, n)?;
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.swap(i - 1, n - 1);
    Ok(perm)
}

/// The homotopy in coordinate `i`, obtained by conjugating with `(i n)`.
pub fn h_at(cx: &JetComplex, i: usize, v: &Chain, r: usize) -> Result<Chain> {
    let n = cx.params().n();
    check_coordinate(i, n)?;
    if i == n {
        return h(cx, v, r);
    }
    let perm = transposition(i, n)?;
    permute(&perm, &h(cx, &permute(&perm, v)?, r)?)
}

/// Outcome of one homotopy identity check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub input: DeltaSymbol,
    pub coordinate: usize,
    pub computed: Chain,
    pub expected: Chain,
    pub residual: Chain,
    pub passed: bool,
    pub relations: usize,
    pub elapsed: Duration,
}

/// Checks `h d + d h = id - pi_n` on one symbol of degree `r`.
pub fn homotopy_check(cx: &JetComplex, s: &DeltaSymbol, r: usize) -> Result<CheckResult> {
    homotopy_check_at(cx, cx.params().n(), s, r)
}

/// Checks `h_i d + d h_i = id - pi_i` on one symbol of degree `r`. In degree 0
/// only `h_i d` contributes.
pub fn homotopy_check_at(
    cx: &JetComplex,
    i: usize,
    s: &DeltaSymbol,
    r: usize,
) -> Result<CheckResult> {
    let params = cx.params();
    check_coordinate(i, params.n())?;
    if s.degree() != r {
        return Err(Error::DegreeMismatch {
            expected: r,
            found: s.degree(),
        });
    }
    if !s.is_canonical(params) {
        return Err(Error::NonCanonical(s.to_string()));
    }
    let start = Instant::now();
    let x = Chain::symbol(params, s.clone())?;
    let mut computed = h_at(cx, i, &cx.differential(&x, r)?, r + 1)?;
    if r >= 1 {
        computed = computed.add(&cx.differential(&h_at(cx, i, &x, r)?, r - 1)?)?;
    }
    let expected = if s.avoids_coordinate(i) {
        Chain::zero(params, r)
    } else {
        x
    };
    let residual = computed.sub(&expected)?;
    let verdict = cx.quotient_check(&residual)?;
    Ok(CheckResult {
        input: s.clone(),
        coordinate: i,
        computed,
        expected,
        residual,
        passed: verdict.zero,
        relations: verdict.relations,
        elapsed: start.elapsed(),
    })
}

/// Applies `w <- w - h_i(d w)` for `i = n, ..., 1` to a degree-0 chain. The
/// result is the constant part of `v`.
pub fn poincare_contract(cx: &JetComplex, v: &Chain) -> Result<Chain> {
    if v.degree() != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: v.degree(),
        });
    }
    let mut w = v.clone();
    for i in (1..=cx.params().n()).rev() {
        let step = h_at(cx, i, &cx.differential(&w, 0)?, 1)?;
        w = w.sub(&step)?;
    }
    Ok(w)
}

/// Whether `h` sends the chain of `spec` to zero in the quotient.
pub fn relation_image_vanishes(cx: &JetComplex, spec: &RelationSpec) -> Result<bool> {
    let chain = cx.relation_chain(spec)?;
    let image = h(cx, &chain, spec.degree())?;
    cx.quotient_zero(&image)
}
