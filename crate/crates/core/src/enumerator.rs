//! Exhaustive search for maximum-length rule vectors.
//!
//! Every one of the `2^n` main diagonals is mapped to its characteristic
//! polynomial and pushed through three filters in order: even weight,
//! zero constant term, then the order test. Survivors are exactly the
//! maximum-length rule vectors.
//!
//! The diagonal space is split into contiguous shards that run on a rayon
//! pool; shard results are merged and sorted, so the output never depends
//! on the worker count.

use std::ops::Range;

use rayon::prelude::*;

use crate::charpoly::{characteristic_polynomial, RuleVector};
use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::primitivity::{factorize_mersenne, is_primitive, PrimitivityTest, MAX_FACTOR_N};

/// Default largest `n` for an exhaustive scan.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MaxLenEntry {
    pub n: usize,
    pub rule_vector: RuleVector,
    pub polynomial: Gf2Poly,
}

impl MaxLenEntry {
    fn sort_key(&self) -> (Gf2Poly, u64) {
        (self.polynomial, self.rule_vector.binary_value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Worker threads; 0 means available parallelism.
    pub jobs: usize,
    /// Largest accepted `n`. Raising it above
    /// [`DEFAULT_EXHAUSTIVE_CAP`] is the explicit override.
    pub max_n: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            jobs: 0,
            max_n: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

/// How many diagonals each filter rejected.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterStats {
    pub total: u64,
    pub rejected_even_weight: u64,
    pub rejected_zero_constant: u64,
    pub rejected_not_primitive: u64,
    pub survivors: u64,
    /// Survivors equal to their own mirror image. Counted inside `survivors`.
    pub palindromic_survivors: u64,
}

impl FilterStats {
    fn merge(mut self, other: FilterStats) -> FilterStats {
        self.total += other.total;
        self.rejected_even_weight += other.rejected_even_weight;
        self.rejected_zero_constant += other.rejected_zero_constant;
        self.rejected_not_primitive += other.rejected_not_primitive;
        self.survivors += other.survivors;
        self.palindromic_survivors += other.palindromic_survivors;
        self
    }
}

enum Verdict {
    EvenWeight,
    ZeroConstant,
    NotPrimitive,
    MaxLength(Gf2Poly),
}

fn classify(rv: &RuleVector, test: &PrimitivityTest) -> Verdict {
    let p = characteristic_polynomial(rv);
    if p.weight() % 2 == 0 {
        return Verdict::EvenWeight;
    }
    // the x^n coefficient of a characteristic polynomial is always 1
    debug_assert!(p.coeff(rv.len()));
    if !p.coeff(0) {
        return Verdict::ZeroConstant;
    }
    if !test.check(&p) {
        return Verdict::NotPrimitive;
    }
    Verdict::MaxLength(p)
}

fn scan_range(
    n: usize,
    range: Range<u64>,
    test: &PrimitivityTest,
) -> (Vec<MaxLenEntry>, FilterStats) {
    let mut out = Vec::new();
    let mut stats = FilterStats::default();
    for mask in range {
        // n is range-checked by the caller
        let rv = RuleVector::from_mask(n, mask).expect("valid cell count");
        stats.total += 1;
        match classify(&rv, test) {
            Verdict::EvenWeight => stats.rejected_even_weight += 1,
            Verdict::ZeroConstant => stats.rejected_zero_constant += 1,
            Verdict::NotPrimitive => stats.rejected_not_primitive += 1,
            Verdict::MaxLength(polynomial) => {
                stats.survivors += 1;
                if rv.is_palindrome() {
                    stats.palindromic_survivors += 1;
                }
                out.push(MaxLenEntry {
                    n,
                    rule_vector: rv,
                    polynomial,
                });
            }
        }
    }
    (out, stats)
}

fn check_n(n: usize, opts: &EnumOptions) -> Result<()> {
    let max = opts.max_n.min(MAX_FACTOR_N);
    if n < 2 || n > max {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 2,
            max,
        });
    }
    Ok(())
}

fn shards(n: usize, count: usize) -> Vec<Range<u64>> {
    let total = 1u64 << n;
    let count = (count as u64).clamp(1, total);
    (0..count)
        .map(|i| (total * i / count)..(total * (i + 1) / count))
        .collect()
}

fn scan(n: usize, opts: &EnumOptions) -> Result<(Vec<MaxLenEntry>, FilterStats)> {
    check_n(n, opts)?;
    let test = PrimitivityTest::new(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|_| Error::OutOfRange {
            what: "jobs",
            value: opts.jobs,
            min: 0,
            max: usize::MAX,
        })?;
    let workers = pool.current_num_threads();
    let parts: Vec<_> = pool.install(|| {
        shards(n, workers * 4)
            .into_par_iter()
            .map(|r| scan_range(n, r, &test))
            .collect()
    });
    let mut entries = Vec::new();
    let mut stats = FilterStats::default();
    for (e, s) in parts {
        entries.extend(e);
        stats = stats.merge(s);
    }
    entries.sort_unstable_by_key(MaxLenEntry::sort_key);
    Ok((entries, stats))
}

/// Every maximum-length rule vector of `n` cells, sorted by polynomial then
/// rule vector (both as MSB-first binary values).
pub fn enumerate_maxlen(n: usize) -> Result<Vec<MaxLenEntry>> {
    enumerate_maxlen_with(n, &EnumOptions::default())
}

pub fn enumerate_maxlen_with(n: usize, opts: &EnumOptions) -> Result<Vec<MaxLenEntry>> {
    scan(n, opts).map(|(entries, _)| entries)
}

pub fn filter_stats(n: usize) -> Result<FilterStats> {
    filter_stats_with(n, &EnumOptions::default())
}

pub fn filter_stats_with(n: usize, opts: &EnumOptions) -> Result<FilterStats> {
    scan(n, opts).map(|(_, stats)| stats)
}

/// Both the entries and the filter counts from a single scan.
pub fn enumerate_with_stats(
    n: usize,
    opts: &EnumOptions,
) -> Result<(Vec<MaxLenEntry>, FilterStats)> {
    scan(n, opts)
}

/// All rule vectors whose characteristic polynomial is the primitive `p`,
/// ascending by binary value.
pub fn rule_vectors_for(p: &Gf2Poly) -> Result<Vec<RuleVector>> {
    let n = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(Error::ConstantPolynomial)?;
    check_n(n, &EnumOptions::default())?;
    if !is_primitive(p, &factorize_mersenne(n)?)? {
        return Err(Error::NotPrimitive(p.to_string()));
    }
    let mut found: Vec<RuleVector> = (0..1u64 << n)
        .into_par_iter()
        .filter_map(|mask| {
            let rv = RuleVector::from_mask(n, mask).ok()?;
            (characteristic_polynomial(&rv) == *p).then_some(rv)
        })
        .collect();
    found.sort_unstable_by_key(RuleVector::binary_value);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::parse_poly;

    fn strs(entries: &[MaxLenEntry]) -> Vec<(String, String)> {
        entries
            .iter()
            .map(|e| (e.rule_vector.to_string(), e.polynomial.to_string()))
            .collect()
    }

    fn pair(rv: &str, p: &str) -> (String, String) {
        (rv.to_string(), p.to_string())
    }

    #[test]
    fn two_cells() {
        let got = strs(&enumerate_maxlen(2).unwrap());
        assert_eq!(got, vec![pair("01", "111"), pair("10", "111")]);
    }

    #[test]
    fn eight_cell_worked_example() {
        let got = strs(&enumerate_maxlen(8).unwrap());
        assert!(got.contains(&pair("00000110", "100011101")));
        assert!(got.contains(&pair("01100000", "100011101")));
        assert_eq!(got.len(), 32);
    }

    #[test]
    fn five_cell_polynomials() {
        let mut polys: Vec<String> = enumerate_maxlen(5)
            .unwrap()
            .iter()
            .map(|e| e.polynomial.to_string())
            .collect();
        polys.dedup();
        assert_eq!(
            polys,
            ["100101", "101001", "101111", "110111", "111011", "111101"]
        );
    }

    #[test]
    fn stats_examples() {
        let s2 = filter_stats(2).unwrap();
        assert_eq!(s2.survivors, 2);
        assert_eq!(s2.total, 4);
        let s8 = filter_stats(8).unwrap();
        assert_eq!(s8.total, 256);
        assert_eq!(s8.survivors, 32);
        assert_eq!(
            s8.rejected_even_weight
                + s8.rejected_zero_constant
                + s8.rejected_not_primitive
                + s8.survivors,
            s8.total
        );
    }

    #[test]
    fn rule_vectors_for_examples() {
        let names = |p: &str| -> Vec<String> {
            rule_vectors_for(&parse_poly(p).unwrap())
                .unwrap()
                .iter()
                .map(|r| r.to_string())
                .collect()
        };
        assert_eq!(names("111"), ["01", "10"]);
        let eight = names("100011101");
        assert!(eight.contains(&"00000110".to_string()));
        assert!(eight.contains(&"01100000".to_string()));
        let four = names("11001");
        assert!(four.contains(&"1101".to_string()));
        assert!(four.contains(&"1011".to_string()));
    }

    #[test]
    fn rule_vectors_for_rejects_non_primitive() {
        assert_eq!(
            rule_vectors_for(&parse_poly("11111").unwrap()),
            Err(Error::NotPrimitive("11111".into()))
        );
        assert_eq!(
            rule_vectors_for(&Gf2Poly::ONE),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn range_checks() {
        assert!(matches!(enumerate_maxlen(1), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            enumerate_maxlen(21),
            Err(Error::OutOfRange { .. })
        ));
        let opts = EnumOptions { jobs: 1, max_n: 40 };
        assert!(matches!(
            enumerate_maxlen_with(33, &opts),
            Err(Error::OutOfRange { max: 32, .. })
        ));
    }

    #[test]
    fn shards_cover_space() {
        for (n, c) in [(2, 64), (5, 3), (12, 32), (3, 1)] {
            let s = shards(n, c);
            assert_eq!(s.first().unwrap().start, 0);
            assert_eq!(s.last().unwrap().end, 1 << n);
            assert!(s.windows(2).all(|w| w[0].end == w[1].start));
        }
    }

    #[test]
    fn job_count_does_not_change_output() {
        let one = EnumOptions {
            jobs: 1,
            ..Default::default()
        };
        let many = EnumOptions {
            jobs: 7,
            ..Default::default()
        };
        for n in [6, 9] {
            assert_eq!(
                enumerate_with_stats(n, &one).unwrap(),
                enumerate_with_stats(n, &many).unwrap()
            );
        }
    }
}
