//! Rule vectors and their characteristic polynomials.
//!
//! A rule vector assigns rule 90 (flag 0) or rule 150 (flag 1) to each cell
//! of a null-boundary one-dimensional CA. It is also the main diagonal of the
//! tridiagonal transition matrix `T`, whose sub- and super-diagonals are all
//! ones. Text form is an `n`-character `0`/`1` string, leftmost character is
//! cell 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// Cells are packed into a single `u64`.
pub const MAX_CELLS: usize = 64;

pub(crate) fn cell_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleVector {
    /// Bit `i` set means cell `i` uses rule 150.
    mask: u64,
    n: usize,
}

impl RuleVector {
    /// Build from a cell mask, bit `i` = rule flag of cell `i`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_cells(n)?;
        Ok(RuleVector {
            mask: mask & cell_mask(n),
            n,
        })
    }

    /// All cells rule 90.
    pub fn all_90(n: usize) -> Result<Self> {
        Self::from_mask(n, 0)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_rule150(&self, cell: usize) -> bool {
        cell < self.n && (self.mask >> cell) & 1 == 1
    }

    /// Rule number (90 or 150) of a cell.
    pub fn rule(&self, cell: usize) -> u32 {
        if self.is_rule150(cell) {
            150
        } else {
            90
        }
    }

    /// Numeric value of the text form read as an MSB-first binary number.
    pub fn binary_value(&self) -> u64 {
        self.mask.reverse_bits() >> (64 - self.n)
    }

    /// Mirror image: cell `i` takes the rule of cell `n - 1 - i`.
    pub fn reverse(&self) -> Self {
        RuleVector {
            mask: self.binary_value(),
            n: self.n,
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.reverse() == *self
    }
}

fn check_cells(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CELLS {
        return Err(Error::OutOfRange {
            what: "cell count",
            value: n,
            min: 1,
            max: MAX_CELLS,
        });
    }
    Ok(())
}

/// Parse an `n`-character 0/1 string, bit `i` taken from character `i`.
pub(crate) fn parse_cells(s: &str) -> std::result::Result<(usize, u64), &'static str> {
    if s.is_empty() {
        return Err("empty string");
    }
    if s.len() > MAX_CELLS {
        return Err("more than 64 cells");
    }
    let mut mask = 0u64;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'0' => {}
            b'1' => mask |= 1 << i,
            _ => return Err("characters must be '0' or '1'"),
        }
    }
    Ok((s.len(), mask))
}

pub(crate) fn format_cells(n: usize, mask: u64) -> String {
    (0..n)
        .map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl FromStr for RuleVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, mask) = parse_cells(s).map_err(|reason| Error::ParseRuleVector {
            input: s.to_string(),
            reason,
        })?;
        Ok(RuleVector { mask, n })
    }
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cells(self.n, self.mask))
    }
}

/// Orders by cell count, then by binary value of the text form.
impl Ord for RuleVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.binary_value()).cmp(&(other.n, other.binary_value()))
    }
}

impl PartialOrd for RuleVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleVector({self})")
    }
}

/// `det(xI + T)` over GF(2) via the tridiagonal three-term recurrence
/// `p_k = (x + d_{k-1}) p_{k-1} + p_{k-2}` with `p_0 = 1`, `p_{-1} = 0`.
///
/// The result is monic of degree `n`.
pub fn characteristic_polynomial(rv: &RuleVector) -> Gf2Poly {
    let mut prev = Gf2Poly::ZERO;
    let mut cur = Gf2Poly::ONE;
    for cell in 0..rv.len() {
        // degree <= MAX_CELLS, far below the polynomial capacity
        let mut next = cur.mul_x().expect("charpoly degree fits");
        if rv.is_rule150(cell) {
            next = next + cur;
        }
        next = next + prev;
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur.degree(), Some(rv.len()));
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(s: &str) -> RuleVector {
        s.parse().unwrap()
    }

    fn charpoly_str(s: &str) -> String {
        characteristic_polynomial(&rv(s)).to_string()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(charpoly_str("10"), "111");
        assert_eq!(charpoly_str("00000110"), "100011101");
        assert_eq!(charpoly_str("01100000"), "100011101");
        assert_eq!(charpoly_str("1101"), "11001");
        // x * x + 1
        assert_eq!(charpoly_str("00"), "101");
        // (x+1)^2 + 1 = x^2
        assert_eq!(charpoly_str("11"), "100");
    }

    #[test]
    fn single_cell() {
        assert_eq!(charpoly_str("0"), "10");
        assert_eq!(charpoly_str("1"), "11");
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(rv("00000110").reverse(), rv("01100000"));
        assert_eq!(rv("10").reverse(), rv("01"));
        assert_eq!(rv("0110").reverse(), rv("0110"));
        assert!(rv("10101").is_palindrome());
        let full = RuleVector::from_mask(64, 1).unwrap();
        assert_eq!(full.reverse().mask(), 1 << 63);
    }

    #[test]
    fn text_form_and_binary_value() {
        let r = rv("00000110");
        assert_eq!(r.len(), 8);
        assert_eq!(r.to_string(), "00000110");
        assert_eq!(r.binary_value(), 0b00000110);
        assert!(r.is_rule150(5) && r.is_rule150(6) && !r.is_rule150(7));
        assert_eq!(r.rule(0), 90);
        assert_eq!(r.rule(6), 150);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "012", "1 0", &"0".repeat(65)] {
            assert!(
                matches!(
                    bad.parse::<RuleVector>(),
                    Err(Error::ParseRuleVector { .. })
                ),
                "{bad:?}"
            );
        }
        assert!(RuleVector::from_mask(0, 0).is_err());
        assert!(RuleVector::from_mask(65, 0).is_err());
    }

    #[test]
    fn sixty_four_cells_is_monic() {
        let r = RuleVector::from_mask(64, 0x0123_4567_89ab_cdef).unwrap();
        let p = characteristic_polynomial(&r);
        assert_eq!(p.degree(), Some(64));
        assert_eq!(p, characteristic_polynomial(&r.reverse()));
    }

    #[test]
    fn mirror_invariance_exhaustive_small() {
        for n in 1..=12 {
            for mask in 0..1u64 << n {
                let r = RuleVector::from_mask(n, mask).unwrap();
                let p = characteristic_polynomial(&r);
                assert_eq!(p.degree(), Some(n));
                assert_eq!(p, characteristic_polynomial(&r.reverse()), "{r}");
            }
        }
    }
}
