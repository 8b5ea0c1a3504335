//! Polynomials over GF(2).
//!
//! Coefficients are packed into a fixed array of `u64` words, coefficient of
//! `x^i` at bit `i % 64` of word `i / 64`. The array is always canonical
//! (no bits above the degree), so derived equality and hashing are exact.
//!
//! Text form is the MSB-first binary string used by the rule-vector tables:
//! `"100011101"` is `x^8 + x^4 + x^3 + x^2 + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, BitXor};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORDS: usize = 2;

/// Largest representable degree.
pub const MAX_DEGREE: usize = WORDS * 64 - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: [u64; WORDS],
}

impl Gf2Poly {
    pub const ZERO: Gf2Poly = Gf2Poly { words: [0; WORDS] };
    pub const ONE: Gf2Poly = Gf2Poly::from_u64(1);
    pub const X: Gf2Poly = Gf2Poly::from_u64(2);

    /// Polynomial whose coefficient bits are the bits of `bits`.
    pub const fn from_u64(bits: u64) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits;
        Gf2Poly { words }
    }

    pub const fn from_u128(bits: u128) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits as u64;
        words[1] = (bits >> 64) as u64;
        Gf2Poly { words }
    }

    /// Coefficient bits as an integer, the numeric value of the binary string.
    pub const fn to_u128(&self) -> u128 {
        self.words[0] as u128 | (self.words[1] as u128) << 64
    }

    /// Sum of `x^e` for each listed exponent. Repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Result<Self> {
        let mut p = Self::ZERO;
        for &e in exponents {
            if e > MAX_DEGREE {
                return Err(Error::Capacity {
                    degree: e,
                    max: MAX_DEGREE,
                });
            }
            p.words[e / 64] ^= 1 << (e % 64);
        }
        Ok(p)
    }

    /// `x^e`.
    pub fn monomial(e: usize) -> Result<Self> {
        Self::from_exponents(&[e])
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        i <= MAX_DEGREE && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Coefficient-wise XOR, the same as `self + other`.
    pub fn xor(&self, other: &Self) -> Self {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words) {
            *w ^= o;
        }
        Gf2Poly { words }
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(*self);
        }
        let deg = self.degree().unwrap_or(0) + k;
        if deg > MAX_DEGREE {
            return Err(Error::Capacity {
                degree: deg,
                max: MAX_DEGREE,
            });
        }
        Ok(self.shl_unchecked(k))
    }

    /// Caller guarantees the shifted degree fits.
    fn shl_unchecked(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        let mut words = [0u64; WORDS];
        for i in (ws..WORDS).rev() {
            let src = i - ws;
            let mut w = self.words[src] << bs;
            if bs != 0 && src > 0 {
                w |= self.words[src - 1] >> (64 - bs);
            }
            words[i] = w;
        }
        Gf2Poly { words }
    }

    /// Multiplication by `x`, used by the characteristic-polynomial recurrence.
    pub fn mul_x(&self) -> Result<Self> {
        self.shl(1)
    }

    /// Carry-less product. Fails if the product degree exceeds [`MAX_DEGREE`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Ok(Self::ZERO);
        };
        if da + db > MAX_DEGREE {
            return Err(Error::Capacity {
                degree: da + db,
                max: MAX_DEGREE,
            });
        }
        let mut acc = Self::ZERO;
        for i in 0..=db {
            if other.coeff(i) {
                acc = acc.xor(&self.shl_unchecked(i));
            }
        }
        Ok(acc)
    }

    /// Quotient and remainder of shift-and-XOR long division.
    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self)> {
        let dm = m.degree().ok_or(Error::ZeroModulus)?;
        let mut q = Self::ZERO;
        let mut r = *self;
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let k = dr - dm;
            r = r.xor(&m.shl_unchecked(k));
            q.words[k / 64] |= 1 << (k % 64);
        }
        Ok((q, r))
    }

    /// Remainder of division by `m`.
    pub fn mod_reduce(&self, m: &Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::ZeroModulus)?;
        let mut r = *self;
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r = r.xor(&m.shl_unchecked(dr - dm));
        }
        Ok(r)
    }

    /// `self * other mod m` for operands already reduced modulo `m`.
    ///
    /// Reduction is interleaved with the shift-and-add loop so the
    /// intermediate never exceeds `degree(m)`, which lets moduli of any
    /// representable degree work without overflow.
    fn mul_mod_reduced(&self, other: &Self, m: &Self, dm: usize) -> Self {
        let Some(db) = other.degree() else {
            return Self::ZERO;
        };
        let mut acc = Self::ZERO;
        for i in (0..=db).rev() {
            acc = acc.shl_unchecked(1);
            if acc.coeff(dm) {
                acc = acc.xor(m);
            }
            if other.coeff(i) {
                acc = acc.xor(self);
            }
        }
        acc
    }

    /// `self * other mod m`.
    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::ZeroModulus)?;
        if dm == MAX_DEGREE {
            // the interleaved shift needs one spare bit above degree(m)
            return Err(Error::Capacity {
                degree: dm + 1,
                max: MAX_DEGREE,
            });
        }
        let a = self.mod_reduce(m)?;
        let b = other.mod_reduce(m)?;
        Ok(a.mul_mod_reduced(&b, m, dm))
    }

    /// `x^e mod m` by square-and-multiply.
    pub fn pow_x_mod(e: u64, m: &Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::ZeroModulus)?;
        if dm == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if dm == MAX_DEGREE {
            return Err(Error::Capacity {
                degree: dm + 1,
                max: MAX_DEGREE,
            });
        }
        let x = Self::X.mod_reduce(m)?;
        let mut result = Self::ONE;
        for i in (0..64 - e.leading_zeros()).rev() {
            result = result.mul_mod_reduced(&result, m, dm);
            if (e >> i) & 1 == 1 {
                result = result.mul_mod_reduced(&x, m, dm);
            }
        }
        Ok(result)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (*self, *other);
        while !b.is_zero() {
            // b is nonzero so the reduction cannot fail
            let r = a.mod_reduce(&b).unwrap_or(Self::ZERO);
            a = b;
            b = r;
        }
        a
    }

    /// Algebraic notation, e.g. `x^8+x^4+x^3+x^2+1`.
    pub fn to_algebraic(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".to_string();
        };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

/// Parse an MSB-first binary coefficient string.
pub fn parse_poly(s: &str) -> Result<Gf2Poly> {
    let err = |reason| Error::ParsePoly {
        input: s.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if s.bytes().any(|b| b != b'0' && b != b'1') {
        return Err(err("characters must be '0' or '1'"));
    }
    if s == "0" {
        return Ok(Gf2Poly::ZERO);
    }
    if s.starts_with('0') {
        return Err(err("leading zero"));
    }
    let deg = s.len() - 1;
    if deg > MAX_DEGREE {
        return Err(Error::Capacity {
            degree: deg,
            max: MAX_DEGREE,
        });
    }
    let mut p = Gf2Poly::ZERO;
    for (i, b) in s.bytes().rev().enumerate() {
        if b == b'1' {
            p.words[i / 64] |= 1 << (i % 64);
        }
    }
    Ok(p)
}

/// MSB-first binary coefficient string; `"0"` for the zero polynomial.
pub fn format_poly(p: &Gf2Poly) -> String {
    match p.degree() {
        None => "0".to_string(),
        Some(d) => (0..=d)
            .rev()
            .map(|i| if p.coeff(i) { '1' } else { '0' })
            .collect(),
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.to_algebraic())
    }
}

/// Orders by numeric value of the MSB-first binary string.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: Self) -> Self {
        self.xor(&rhs)
    }
}

impl BitXor for Gf2Poly {
    type Output = Gf2Poly;

    fn bitxor(self, rhs: Self) -> Self {
        self.xor(&rhs)
    }
}
