//! Exact combinatorics for divided powers of level `m`.
//!
//! Every quantity here is computed exactly first and only reduced modulo `p`
//! at the very end. The modified binomials are
//!
//! ```text
//! mbinom(k, k') = q! / (q'! q''!)         q = k div p^m, q' = k' div p^m, q'' = (k-k') div p^m
//! qbinom(k, k') = binom(k, k') / mbinom(k, k')
//! ```
//!
//! `qbinom` is a rational number whose reduced denominator is prime to `p`
//! (it need not be an integer: for `p = 3`, `qbinom(6, 2) = 15/2`). Every call
//! checks that `p` does not divide the denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::indexing::MultiIndex;

/// Prime `p`, level `m` and coordinate count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    p: u32,
    m: u32,
    n: usize,
    pm: u32,
}

impl Params {
    pub fn new(p: u32, m: u32, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::NoCoordinates);
        }
        // slot norms go up to 2 p^m and eta weights a few multiples beyond
        let pm = p
            .checked_pow(m)
            .filter(|pm| *pm <= u32::MAX / 64)
            .ok_or(Error::LevelTooLarge { p, m })?;
        Ok(Params { p, m, n, pm })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cached `p^m`.
    pub fn pm(&self) -> u32 {
        self.pm
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Params::new(self.p, self.m, n)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} m={} n={}", self.p, self.m, self.n)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff {
    residue: u32,
    p: u32,
}

impl Coeff {
    pub fn new(value: u64, p: u32) -> Self {
        Coeff {
            residue: (value % p as u64) as u32,
            p,
        }
    }

    pub fn from_i64(value: i64, p: u32) -> Self {
        Coeff {
            residue: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn from_biguint(value: &BigUint, p: u32) -> Self {
        let r = (value % p).to_u32().expect("residue below p");
        Coeff { residue: r, p }
    }

    pub fn zero(p: u32) -> Self {
        Coeff { residue: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Coeff::new(1, p)
    }

    /// `(-1)^e`.
    pub fn sign(e: usize, p: u32) -> Self {
        if e.is_multiple_of(2) {
            Coeff::one(p)
        } else {
            -Coeff::one(p)
        }
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.p as u64;
        let mut base = self.residue as u64;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(Coeff {
            residue: acc as u32,
            p: self.p,
        })
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        debug_assert_eq!(self.p, rhs.p);
        Coeff::new(self.residue as u64 + rhs.residue as u64, self.p)
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        self + (-rhs)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new((self.p - self.residue) as u64, self.p)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        debug_assert_eq!(self.p, rhs.p);
        Coeff::new(self.residue as u64 * rhs.residue as u64, self.p)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Sum of the base-`p` digits of `t`.
pub fn digit_sum(mut t: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut s = 0;
    while t > 0 {
        s += t % p;
        t /= p;
    }
    s
}

/// Exponent of `p` in a non-zero integer.
pub fn p_adic_valuation(value: &BigUint, p: u32) -> Option<u64> {
    if value.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut v = value.clone();
    let mut e = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Some(e);
        }
        v = q;
        e += 1;
    }
}

pub fn factorial(k: u64) -> BigUint {
    falling_factorial(k, k)
}

/// `top (top-1) ... (top-len+1)`, i.e. `top! / (top-len)!`.
pub fn falling_factorial(top: u64, len: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..len {
        acc *= top - i;
    }
    acc
}

/// Ordinary binomial coefficient.
pub fn binom(k: u64, sub: u64) -> Result<BigUint> {
    if sub > k {
        return Err(Error::BinomialRange { k, sub });
    }
    let sub = sub.min(k - sub);
    // product of consecutive integers keeps every partial quotient integral
    let mut acc = BigUint::one();
    for i in 0..sub {
        acc *= k - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// The level-`m` binomial `q!/(q'! q''!)`.
///
/// `q' + q''` is either `q` or `q - 1`; both cases go through the same exact
/// factorial quotient.
pub fn mbinom(params: &Params, k: u64, sub: u64) -> Result<BigUint> {
    if sub > k {
        return Err(Error::BinomialRange { k, sub });
    }
    let pm = params.pm() as u64;
    let q = k / pm;
    let q1 = sub / pm;
    let q2 = (k - sub) / pm;
    debug_assert!(q1 + q2 == q || q1 + q2 + 1 == q);
    let num = factorial(q);
    let den = factorial(q1) * factorial(q2);
    exact_div(&num, &den)
}

/// An exact rational `num / den` in lowest terms with `den` prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLocal {
    num: BigUint,
    den: BigUint,
    p: u32,
}

impl PLocal {
    /// Builds `num / den`, failing if `p` divides the reduced denominator.
    pub fn new(num: BigUint, den: BigUint, p: u32) -> Result<Self> {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        if (&den % p).is_zero() {
            return Err(Error::InexactQuotient {
                numerator: num.to_string(),
                denominator: den.to_string(),
            });
        }
        Ok(PLocal { num, den, p })
    }

    pub fn integer(value: BigUint, p: u32) -> Self {
        PLocal {
            num: value,
            den: BigUint::one(),
            p,
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_integer(&self) -> Option<BigUint> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Image in `F_p`.
    pub fn residue(&self) -> Coeff {
        let inv = Coeff::from_biguint(&self.den, self.p)
            .inverse()
            .expect("unit denominator");
        Coeff::from_biguint(&self.num, self.p) * inv
    }
}

impl Mul for &PLocal {
    type Output = PLocal;

    fn mul(self, rhs: &PLocal) -> PLocal {
        debug_assert_eq!(self.p, rhs.p);
        PLocal::new(&self.num * &rhs.num, &self.den * &rhs.den, self.p)
            .expect("product of p-local numbers is p-local")
    }
}

impl fmt::Display for PLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `binom / mbinom` as an exact p-local rational.
pub fn qbinom(params: &Params, k: u64, sub: u64) -> Result<PLocal> {
    let b = binom(k, sub)?;
    let mb = mbinom(params, k, sub)?;
    PLocal::new(b, mb, params.p())
}

fn exact_div(num: &BigUint, den: &BigUint) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactQuotient {
            numerator: num.to_string(),
            denominator: den.to_string(),
        });
    }
    Ok(q)
}

fn multi_product(
    upper: &MultiIndex,
    lower: &MultiIndex,
    mut scalar: impl FnMut(u64, u64) -> Result<BigUint>,
) -> Result<BigUint> {
    if upper.len() != lower.len() {
        return Err(Error::LengthMismatch(upper.len(), lower.len()));
    }
    if !lower.is_le(upper) {
        return Err(Error::NotBelow {
            lower: lower.to_string(),
            upper: upper.to_string(),
        });
    }
    let mut acc = BigUint::one();
    for (i, j) in upper.iter().zip(lower.iter()) {
        acc *= scalar(i as u64, j as u64)?;
    }
    Ok(acc)
}

pub fn multi_binom(upper: &MultiIndex, lower: &MultiIndex) -> Result<BigUint> {
    multi_product(upper, lower, binom)
}

pub fn multi_mbinom(params: &Params, upper: &MultiIndex, lower: &MultiIndex) -> Result<BigUint> {
    multi_product(upper, lower, |k, j| mbinom(params, k, j))
}

pub fn multi_qbinom(params: &Params, upper: &MultiIndex, lower: &MultiIndex) -> Result<PLocal> {
    let b = multi_binom(upper, lower)?;
    let mb = multi_mbinom(params, upper, lower)?;
    PLocal::new(b, mb, params.p())
}

/// Exact scalar structure constant
/// `{a+b+c, a} {b+c, b} <a+b, a> <a+c, a>`.
pub fn gamma_exact(params: &Params, a: u64, b: u64, c: u64) -> Result<PLocal> {
    let outer = qbinom(params, a + b + c, a)?;
    let inner = qbinom(params, b + c, b)?;
    let m = mbinom(params, a + b, a)? * mbinom(params, a + c, a)?;
    Ok(&(&outer * &inner) * &PLocal::integer(m, params.p()))
}

/// `Gamma_{A,B,C}` reduced mod `p`. The multi-index version is the product of
/// the scalar ones, component by component.
pub fn gamma(params: &Params, a: &MultiIndex, b: &MultiIndex, c: &MultiIndex) -> Result<Coeff> {
    if a.len() != b.len() || a.len() != c.len() {
        return Err(Error::LengthMismatch(a.len(), b.len().max(c.len())));
    }
    let mut acc = Coeff::one(params.p());
    for ((x, y), z) in a.iter().zip(b.iter()).zip(c.iter()) {
        acc = acc * gamma_exact(params, x as u64, y as u64, z as u64)?.residue();
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Least multiple of `p` strictly greater than `q`.
pub fn sigma(p: u32, q: u64) -> u64 {
    let p = p as u64;
    p * (q / p + 1)
}
