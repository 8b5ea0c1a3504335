//! Irreducibility and primitivity of polynomials over GF(2).
//!
//! A degree-`n` polynomial `p` is primitive iff the multiplicative order of
//! `x` modulo `p` is exactly `2^n - 1`. That is checked with the prime
//! factorization of `2^n - 1`: `x^(2^n-1) = 1` and `x^((2^n-1)/q) != 1` for
//! every prime `q`. Order `2^n - 1` already forces `GF(2)[x]/(p)` to be a
//! field, so irreducibility need not be tested separately.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// Largest `n` for which `2^n - 1` is factored by trial division.
pub const MAX_FACTOR_N: usize = 32;

/// Largest degree for which [`order_of_x`] falls back to stepping through
/// powers of `x` one at a time.
pub const BRUTE_ORDER_MAX_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MersenneFactorization {
    pub n: usize,
    /// `2^n - 1`.
    pub value: u64,
    /// Distinct primes in ascending order, with multiplicities.
    pub prime_factors: Vec<(u64, u32)>,
}

impl MersenneFactorization {
    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_factors.iter().map(|&(p, _)| p)
    }

    /// Euler's totient of `2^n - 1`.
    pub fn euler_phi(&self) -> u64 {
        self.prime_factors
            .iter()
            .fold(self.value, |acc, &(p, _)| acc / p * (p - 1))
    }

    /// Number of primitive polynomials of degree `n`, `phi(2^n - 1) / n`.
    pub fn primitive_count(&self) -> u64 {
        self.euler_phi() / self.n as u64
    }
}

fn trial_factor(mut v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            let mut k = 0;
            while v % d == 0 {
                v /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push((v, 1));
    }
    out
}

pub fn factorize_mersenne(n: usize) -> Result<MersenneFactorization> {
    if n == 0 || n > MAX_FACTOR_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_FACTOR_N,
        });
    }
    let value = (1u64 << n) - 1;
    Ok(MersenneFactorization {
        n,
        value,
        prime_factors: trial_factor(value),
    })
}

fn degree_at_least_one(p: &Gf2Poly) -> Result<usize> {
    match p.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::ConstantPolynomial),
    }
}

/// `x^(2^k) mod p` by `k` repeated squarings.
fn x_pow_two_pow(k: usize, p: &Gf2Poly) -> Result<Gf2Poly> {
    let mut r = Gf2Poly::X.mod_reduce(p)?;
    for _ in 0..k {
        r = r.mul_mod(&r, p)?;
    }
    Ok(r)
}

/// Rabin's test: `x^(2^n) = x (mod p)` and `gcd(x^(2^(n/q)) - x, p) = 1`
/// for every prime `q` dividing `n`.
pub fn is_irreducible(p: &Gf2Poly) -> Result<bool> {
    let n = degree_at_least_one(p)?;
    let x = Gf2Poly::X.mod_reduce(p)?;
    if x_pow_two_pow(n, p)? != x {
        return Ok(false);
    }
    for (q, _) in trial_factor(n as u64) {
        let h = x_pow_two_pow(n / q as usize, p)? + x;
        if p.gcd(&h) != Gf2Poly::ONE {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order test against a precomputed factorization.
pub fn is_primitive(p: &Gf2Poly, f: &MersenneFactorization) -> Result<bool> {
    let n = degree_at_least_one(p)?;
    if n != f.n {
        return Err(Error::DegreeMismatch {
            expected: f.n,
            found: n,
        });
    }
    Ok(PrimitivityTest::from_factorization(f.clone()).check(p))
}

/// Reusable order test for a fixed degree, used in hot loops.
#[derive(Debug, Clone)]
pub struct PrimitivityTest {
    factorization: MersenneFactorization,
    /// `(2^n - 1) / q` for each distinct prime `q`.
    cofactors: Vec<u64>,
}

impl PrimitivityTest {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self::from_factorization(factorize_mersenne(n)?))
    }

    pub fn from_factorization(factorization: MersenneFactorization) -> Self {
        let cofactors = factorization
            .distinct_primes()
            .map(|q| factorization.value / q)
            .collect();
        PrimitivityTest {
            factorization,
            cofactors,
        }
    }

    pub fn factorization(&self) -> &MersenneFactorization {
        &self.factorization
    }

    /// `p` must have degree `n`; other degrees return false.
    pub fn check(&self, p: &Gf2Poly) -> bool {
        if p.degree() != Some(self.factorization.n) || !p.coeff(0) {
            return false;
        }
        let one = |e| Gf2Poly::pow_x_mod(e, p).map(|r| r == Gf2Poly::ONE);
        matches!(one(self.factorization.value), Ok(true))
            && self.cofactors.iter().all(|&e| matches!(one(e), Ok(false)))
    }
}

/// Multiplicative order of `x` modulo `p`.
///
/// `None` when `x` is not a unit (`p(0) = 0`), or when the order does not
/// divide `2^n - 1` and `n` exceeds [`BRUTE_ORDER_MAX_DEGREE`].
pub fn order_of_x(p: &Gf2Poly) -> Result<Option<u64>> {
    let n = degree_at_least_one(p)?;
    if !p.coeff(0) {
        return Ok(None);
    }
    if n <= MAX_FACTOR_N {
        let f = factorize_mersenne(n)?;
        let is_one = |e| Gf2Poly::pow_x_mod(e, p).map(|r| r == Gf2Poly::ONE);
        if is_one(f.value)? {
            let mut order = f.value;
            for q in f.distinct_primes() {
                while order % q == 0 && is_one(order / q)? {
                    order /= q;
                }
            }
            return Ok(Some(order));
        }
    }
    if n > BRUTE_ORDER_MAX_DEGREE {
        return Ok(None);
    }
    let x = Gf2Poly::X.mod_reduce(p)?;
    let mut r = x;
    let mut k = 1u64;
    while r != Gf2Poly::ONE {
        r = r.mul_mod(&x, p)?;
        k += 1;
    }
    Ok(Some(k))
}

/// All primitive polynomials of degree `n`, ascending by binary value.
///
/// Only candidates with constant term 1 and odd weight are tested; every
/// primitive polynomial has both properties.
pub fn enumerate_primitive(n: usize) -> Result<Vec<Gf2Poly>> {
    if !(2..=MAX_FACTOR_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: MAX_FACTOR_N,
        });
    }
    let test = PrimitivityTest::new(n)?;
    let top = 1u64 << n;
    Ok((0..1u64 << (n - 1))
        .into_par_iter()
        .map(|middle| Gf2Poly::from_u64(top | middle << 1 | 1))
        .filter(|p| p.weight() % 2 == 1 && test.check(p))
        .collect())
}
