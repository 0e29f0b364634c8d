//! Fekete limits of sub- and super-additive sequences, and self-avoiding
//! walk counts on the square lattice as the standard example.
//!
//! For a subadditive `a` every `a_n/n` bounds `lim a_n/n` from above, so
//! the running minimum of the prefix is the best certified bound. The
//! multiplicative forms work with `a_n^(1/n)`, reported as dyadic
//! enclosures.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::interval::{self, Interval};
use crate::numbers::format_rational;
use crate::Rational;

/// Largest walk length [`saw_count`] enumerates.
pub const SAW_MAX_N: u32 = 14;

/// Working precision (bits) for `a_n^(1/n)` enclosures.
pub const ROOT_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeketeError {
    #[error("CertificateViolated: inequality fails for (m, n) = ({m}, {n})")]
    CertificateViolated { m: usize, n: usize },
    #[error("prefix length must be at least 2, got {0}")]
    TooShort(usize),
    #[error("multiplicative mode needs positive terms; a_{index} is not")]
    NonPositive { index: usize },
    #[error("BudgetExceeded: n = {n} is above the limit {max}")]
    BudgetExceeded { n: u32, max: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeketeMode {
    /// `a_{m+n} <= a_m + a_n`; the limit of `a_n/n` is the infimum.
    Subadditive,
    /// `a_{m+n} >= a_m + a_n`; the limit of `a_n/n` is the supremum.
    Superadditive,
    /// `a_{m+n} <= a_m a_n`; the limit of `a_n^(1/n)` is the infimum.
    Submultiplicative,
    /// `a_{m+n} >= a_m a_n`; the limit of `a_n^(1/n)` is the supremum.
    Supermultiplicative,
}

impl FeketeMode {
    pub fn name(self) -> &'static str {
        match self {
            FeketeMode::Subadditive => "subadditive",
            FeketeMode::Superadditive => "superadditive",
            FeketeMode::Submultiplicative => "submultiplicative",
            FeketeMode::Supermultiplicative => "supermultiplicative",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::Subadditive, Self::Superadditive, Self::Submultiplicative, Self::Supermultiplicative]
            .into_iter()
            .find(|m| m.name() == s)
    }

    fn multiplicative(self) -> bool {
        matches!(self, FeketeMode::Submultiplicative | FeketeMode::Supermultiplicative)
    }

    /// Whether the limit is an infimum (so each normalized term bounds it
    /// from above).
    fn upper(self) -> bool {
        matches!(self, FeketeMode::Subadditive | FeketeMode::Submultiplicative)
    }

    fn holds(self, whole: &Rational, a: &Rational, b: &Rational) -> bool {
        match self {
            FeketeMode::Subadditive => *whole <= a + b,
            FeketeMode::Superadditive => *whole >= a + b,
            FeketeMode::Submultiplicative => *whole <= a * b,
            FeketeMode::Supermultiplicative => *whole >= a * b,
        }
    }
}

/// `a_n/n` exactly, or an enclosure of `a_n^(1/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Exact(Rational),
    Enclosure(Interval),
}

impl Normalized {
    /// The endpoint that is a certified bound on the limit in direction
    /// `upper`.
    pub fn bound(&self, upper: bool) -> Rational {
        match self {
            Normalized::Exact(r) => r.clone(),
            Normalized::Enclosure(iv) if upper => iv.hi().to_rational(),
            Normalized::Enclosure(iv) => iv.lo().to_rational(),
        }
    }
}

impl fmt::Display for Normalized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalized::Exact(r) => f.write_str(&format_rational(r)),
            Normalized::Enclosure(iv) => write!(f, "[{}, {}]", iv.lo(), iv.hi()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FeketeReport {
    pub mode: FeketeMode,
    /// `a_1, ..., a_N`.
    pub prefix: Vec<Rational>,
    /// `a_n/n` or the enclosure of `a_n^(1/n)`, same indexing as `prefix`.
    pub normalized: Vec<Normalized>,
    /// Running infimum (sub- modes) or supremum (super- modes) of the
    /// certified bounds.
    pub running: Vec<Rational>,
    /// 1-based index `n` attaining the final running bound.
    pub witness: usize,
    pub certificate_ok: bool,
    /// First pair `(m, n)` breaking the inequality, if any.
    pub violation: Option<(usize, usize)>,
}

impl FeketeReport {
    pub fn bound(&self) -> &Rational {
        self.running.last().expect("non-empty prefix")
    }
}

/// Builds the report without failing on a violated inequality; see
/// [`fekete_estimate`] for the strict version.
pub fn fekete_report(
    seq: impl Fn(usize) -> Rational,
    mode: FeketeMode,
    n_max: usize,
) -> Result<FeketeReport, FeketeError> {
    if n_max < 2 {
        return Err(FeketeError::TooShort(n_max));
    }
    let prefix: Vec<Rational> = (1..=n_max).map(seq).collect();
    if mode.multiplicative() {
        if let Some(i) = prefix.iter().position(|a| !a.is_positive()) {
            return Err(FeketeError::NonPositive { index: i + 1 });
        }
    }
    let violation = find_violation(&prefix, mode);

    let upper = mode.upper();
    let mut normalized = Vec::with_capacity(n_max);
    let mut running: Vec<Rational> = Vec::with_capacity(n_max);
    let mut witness = 1;
    for (i, a) in prefix.iter().enumerate() {
        let n = i + 1;
        let v = if mode.multiplicative() {
            let x = Interval::from_rational(a, ROOT_PRECISION + 8);
            Normalized::Enclosure(interval::nth_root(&x, n as u32, ROOT_PRECISION).expect("positive radicand"))
        } else {
            Normalized::Exact(a / Rational::from_integer(BigInt::from(n)))
        };
        let b = v.bound(upper);
        let better = match running.last() {
            None => true,
            Some(prev) if upper => b < *prev,
            Some(prev) => b > *prev,
        };
        if better {
            witness = n;
            running.push(b);
        } else {
            running.push(running.last().unwrap().clone());
        }
        normalized.push(v);
    }
    Ok(FeketeReport { mode, prefix, normalized, running, witness, certificate_ok: violation.is_none(), violation })
}

/// Checks the mode's inequality on all pairs `m <= n` with `m + n <= N` and
/// reports the bound. A violated pair is an error.
pub fn fekete_estimate(
    seq: impl Fn(usize) -> Rational,
    mode: FeketeMode,
    n_max: usize,
) -> Result<FeketeReport, FeketeError> {
    let r = fekete_report(seq, mode, n_max)?;
    match r.violation {
        Some((m, n)) => Err(FeketeError::CertificateViolated { m, n }),
        None => Ok(r),
    }
}

fn find_violation(prefix: &[Rational], mode: FeketeMode) -> Option<(usize, usize)> {
    let n_max = prefix.len();
    for s in 2..=n_max {
        for m in 1..=s / 2 {
            let n = s - m;
            if !mode.holds(&prefix[s - 1], &prefix[m - 1], &prefix[n - 1]) {
                return Some((m, n));
            }
        }
    }
    None
}

// ------------------------------------------------------------ walks

const STEPS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Number of self-avoiding walks of length `n` from the origin of the
/// square lattice.
pub fn saw_count(n: u32) -> Result<u64, FeketeError> {
    saw_count_with_budget(n, SAW_MAX_N)
}

pub fn saw_count_with_budget(n: u32, max: u32) -> Result<u64, FeketeError> {
    if n > max {
        return Err(FeketeError::BudgetExceeded { n, max });
    }
    if n == 0 {
        return Ok(1);
    }
    // One thread per first step; each does a plain depth-first search.
    let total = std::thread::scope(|s| {
        let handles: Vec<_> = STEPS
            .iter()
            .map(|&step| {
                s.spawn(move || {
                    let mut visited = HashSet::from([(0, 0), step]);
                    dfs(step, n - 1, &mut visited)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("walk thread")).sum()
    });
    Ok(total)
}

fn dfs(at: (i32, i32), left: u32, visited: &mut HashSet<(i32, i32)>) -> u64 {
    if left == 0 {
        return 1;
    }
    let mut count = 0;
    for (dx, dy) in STEPS {
        let next = (at.0 + dx, at.1 + dy);
        if visited.insert(next) {
            count += dfs(next, left - 1, visited);
            visited.remove(&next);
        }
    }
    count
}

/// One line of the walk table.
#[derive(Debug, Clone)]
pub struct SawRow {
    pub n: u32,
    pub count: u64,
    /// Enclosure of `count^(1/n)`; `None` at `n = 0`.
    pub root: Option<Interval>,
    /// Running minimum of the upper endpoints: a certified upper bound on
    /// the growth constant.
    pub kappa_upper: Option<Rational>,
    /// `saw(n)/saw(n-1)`, the heuristic lower estimate.
    pub ratio: Option<Rational>,
}

/// Counts for `n = 0..=max_n` with the submultiplicative Fekete bounds.
pub fn saw_table(max_n: u32) -> Result<Vec<SawRow>, FeketeError> {
    let mut rows: Vec<SawRow> = Vec::new();
    let mut best: Option<Rational> = None;
    for n in 0..=max_n {
        let count = saw_count(n)?;
        let c = Rational::from_integer(BigInt::from(count));
        let (root, ratio) = if n == 0 {
            (None, None)
        } else {
            let iv = interval::nth_root(&Interval::from_rational(&c, ROOT_PRECISION), n, ROOT_PRECISION)
                .expect("positive count");
            let hi = iv.hi().to_rational();
            if best.as_ref().is_none_or(|b| hi < *b) {
                best = Some(hi);
            }
            let prev = Rational::from_integer(BigInt::from(rows[n as usize - 1].count));
            (Some(iv), Some(c / prev))
        };
        rows.push(SawRow { n, count, root, kappa_upper: best.clone(), ratio });
    }
    Ok(rows)
}

/// `saw(m+n) <= saw(m) saw(n)` for all `m + n <= max_n`; returns the first
/// failing pair.
pub fn saw_submultiplicative(max_n: u32) -> Result<Option<(u32, u32)>, FeketeError> {
    let counts: Vec<u64> = (0..=max_n).map(saw_count).collect::<Result<_, _>>()?;
    for s in 0..=max_n {
        for m in 0..=s {
            let n = s - m;
            if counts[s as usize] as u128 > counts[m as usize] as u128 * counts[n as usize] as u128 {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    const KNOWN: [u64; 11] = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100];

    #[test]
    fn two_n_minus_one() {
        // a_2 = 3 > a_1 + a_1, so this one is superadditive: a_n/n rises to 2.
        let e = fekete_estimate(|n| int(2 * n as i64 - 1), FeketeMode::Subadditive, 20).unwrap_err();
        assert_eq!(e, FeketeError::CertificateViolated { m: 1, n: 1 });
        let r = fekete_estimate(|n| int(2 * n as i64 - 1), FeketeMode::Superadditive, 20).unwrap();
        assert!(r.certificate_ok);
        assert_eq!(r.bound(), &Rational::new(39.into(), 20.into()));
        assert_eq!(r.witness, 20);
        assert!(r.running.windows(2).all(|w| w[1] > w[0]));
        assert!(r.running.iter().all(|b| *b < int(2)));
    }

    #[test]
    fn identity_is_both() {
        for mode in [FeketeMode::Subadditive, FeketeMode::Superadditive] {
            let r = fekete_estimate(|n| int(n as i64), mode, 10).unwrap();
            assert!(r.normalized.iter().all(|v| *v == Normalized::Exact(Rational::one())));
        }
    }

    #[test]
    fn squares_are_not_subadditive() {
        let e = fekete_estimate(|n| int((n * n) as i64), FeketeMode::Subadditive, 5).unwrap_err();
        assert_eq!(e, FeketeError::CertificateViolated { m: 1, n: 1 });
        let r = fekete_report(|n| int((n * n) as i64), FeketeMode::Subadditive, 5).unwrap();
        assert!(!r.certificate_ok);
        assert!(fekete_estimate(|n| int((n * n) as i64), FeketeMode::Superadditive, 5).is_ok());
    }

    #[test]
    fn input_errors() {
        assert_eq!(fekete_report(|_| int(1), FeketeMode::Subadditive, 1).unwrap_err(), FeketeError::TooShort(1));
        assert_eq!(
            fekete_report(|n| int(n as i64 - 2), FeketeMode::Submultiplicative, 4).unwrap_err(),
            FeketeError::NonPositive { index: 1 }
        );
        assert_eq!(saw_count(15).unwrap_err(), FeketeError::BudgetExceeded { n: 15, max: 14 });
    }

    #[test]
    fn multiplicative_geometric() {
        // 3^n * 2: submultiplicative with limit 3.
        let r = fekete_estimate(|n| int(2) * int(3).pow(n as i32), FeketeMode::Submultiplicative, 12).unwrap();
        for v in &r.normalized {
            let Normalized::Enclosure(iv) = v else { panic!() };
            assert!(iv.lo().to_rational() >= int(3));
        }
        assert!(r.running.windows(2).all(|w| w[1] <= w[0]));
        assert!(r.bound() - int(3) < Rational::new(1.into(), 5.into()));
    }

    #[test]
    fn known_counts() {
        for (n, &c) in KNOWN.iter().enumerate() {
            assert_eq!(saw_count(n as u32).unwrap(), c);
        }
        assert_eq!(saw_count(12).unwrap(), 324932);
    }

    #[test]
    fn walk_bounds() {
        for n in 0..=10u32 {
            assert!(saw_count(n).unwrap() <= 4u64.pow(n));
        }
        assert_eq!(saw_submultiplicative(12).unwrap(), None);
    }

    #[test]
    fn table_bounds() {
        let rows = saw_table(12).unwrap();
        let uppers: Vec<Rational> = rows.iter().filter_map(|r| r.kappa_upper.clone()).collect();
        assert!(uppers.windows(2).all(|w| w[1] <= w[0]));
        for r in &rows[1..] {
            assert!(r.kappa_upper.as_ref().unwrap() >= r.ratio.as_ref().unwrap());
        }
        for r in &rows[1..] {
            let iv = r.root.as_ref().unwrap();
            // lo^n <= count <= hi^n
            let c = int(r.count as i64);
            assert!(iv.lo().to_rational().pow(r.n as i32) <= c);
            assert!(iv.hi().to_rational().pow(r.n as i32) >= c);
        }
    }

    proptest! {
        #[test]
        fn running_bound_is_monotone(c in 1i64..50, d in 0i64..20, n in 2usize..30) {
            // a_n = c n + d is subadditive for d >= 0.
            let r = fekete_estimate(|k| int(c * k as i64 + d), FeketeMode::Subadditive, n).unwrap();
            prop_assert!(r.running.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(r.running.iter().all(|b| *b >= int(c)));
        }
    }
}
