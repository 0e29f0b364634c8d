//! Riemann rearrangements of sums and products.
//!
//! A plan greedily alternates between the two classes of terms (nonnegative
//! and negative terms for sums; factors of modulus `>= 1` and `< 1` for
//! products), emitting indices of the original series lazily. Comparisons
//! use exact partial sums or products, so no logarithms are needed for
//! products.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{SeriesError, SeriesTerms};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Value(Rational),
    PlusInf,
    MinusInf,
    NoSum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductTarget {
    Value(Rational),
    PlusInf,
    Zero,
}

/// Prefix checks standing in for the (undecidable) Riemannian property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannConfig {
    pub prefix: u64,
    /// Bound on `|a_n|` (or `|a_n - 1|` for products) over the last quarter
    /// of the prefix.
    pub tail_max: Rational,
    /// Both signed parts must exceed this over the prefix; `None` means
    /// `|target| + 1` (sums) or `2 max(|A|, 1/|A|)` (products).
    pub threshold: Option<Rational>,
}

impl Default for RiemannConfig {
    fn default() -> Self {
        RiemannConfig { prefix: 4096, tail_max: Rational::new(1.into(), 1000.into()), threshold: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    /// Original 1-based index.
    pub index: u64,
    pub term: Rational,
    /// The step crossed the current target and flipped the phase.
    pub switched: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Sum,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    /// `a >= 0`, or `|a| >= 1` for products.
    Up,
    Down,
}

#[derive(Debug, Clone)]
enum Goal {
    Value(Rational),
    /// Stage `k`: climb past level `k`, then take one term of the other class.
    Unbounded {
        up: bool,
        stage: u64,
        pending_other: bool,
    },
    /// Oscillate between `1/2` and `-1/2` (sums) or `2` and `1/2` (products).
    Oscillate,
    Pattern {
        ups: u64,
        downs: u64,
        done: u64,
    },
}

/// A lazily extended rearrangement.
#[derive(Debug, Clone)]
pub struct RearrangementPlan {
    terms: SeriesTerms,
    mode: Mode,
    goal: Goal,
    phase: Class,
    acc: Acc,
    next_up: u64,
    next_down: u64,
    emitted: Vec<u64>,
    switches: Vec<usize>,
    scan_limit: u64,
}

impl RearrangementPlan {
    fn new(terms: SeriesTerms, mode: Mode, goal: Goal) -> Self {
        let acc = match mode {
            Mode::Sum => Acc { num: BigInt::zero(), den: BigInt::one() },
            Mode::Product => Acc { num: BigInt::one(), den: BigInt::one() },
        };
        let mut plan = RearrangementPlan {
            terms,
            mode,
            goal,
            phase: Class::Up,
            acc,
            next_up: 1,
            next_down: 1,
            emitted: Vec::new(),
            switches: Vec::new(),
            scan_limit: 1 << 22,
        };
        plan.phase = match &plan.goal {
            Goal::Value(a) if plan.level_cmp(a) == Ordering::Greater => Class::Down,
            Goal::Unbounded { up: false, .. } => Class::Down,
            _ => Class::Up,
        };
        plan
    }

    /// Indices emitted so far.
    pub fn emitted(&self) -> &[u64] {
        &self.emitted
    }

    /// Positions (into [`Self::emitted`]) of the steps that switched phase.
    pub fn switches(&self) -> &[usize] {
        &self.switches
    }

    /// Current partial sum (or product), in lowest terms.
    pub fn current(&self) -> Rational {
        Rational::new(self.acc.num.clone(), self.acc.den.clone())
    }

    fn class_of(&self, a: &Rational) -> Class {
        let up = match self.mode {
            Mode::Sum => !a.is_negative(),
            Mode::Product => a.abs() >= Rational::one(),
        };
        if up {
            Class::Up
        } else {
            Class::Down
        }
    }

    /// Compares the running value with `a` (moduli for products).
    fn level_cmp(&self, a: &Rational) -> Ordering {
        match self.mode {
            Mode::Sum => self.acc.cmp(a),
            Mode::Product => self.acc.abs_cmp(a),
        }
    }

    fn level(&self, k: i64) -> Rational {
        match self.mode {
            Mode::Sum => Rational::from_integer(k.into()),
            Mode::Product if k >= 0 => Rational::from_integer((k + 1).into()),
            Mode::Product => Rational::new(1.into(), (1 - k).into()),
        }
    }

    fn take(&mut self, class: Class) -> Result<Option<(u64, Rational)>, SeriesError> {
        let ptr = match class {
            Class::Up => self.next_up,
            Class::Down => self.next_down,
        };
        for k in ptr..ptr + self.scan_limit {
            let a = self.terms.term(k)?;
            if self.class_of(&a) == class {
                match class {
                    Class::Up => self.next_up = k + 1,
                    Class::Down => self.next_down = k + 1,
                }
                return Ok(Some((k, a)));
            }
        }
        Ok(None)
    }

    /// Emits the next index, or `None` once a class runs dry within the
    /// scan limit.
    pub fn next_step(&mut self) -> Result<Option<PlanStep>, SeriesError> {
        let class = match &mut self.goal {
            Goal::Pattern { ups, downs, done } => {
                let class = if *done < *ups { Class::Up } else { Class::Down };
                *done = (*done + 1) % (*ups + *downs);
                class
            }
            Goal::Unbounded { up, pending_other: true, .. } => {
                if *up {
                    Class::Down
                } else {
                    Class::Up
                }
            }
            _ => self.phase,
        };
        let Some((index, term)) = self.take(class)? else { return Ok(None) };
        match self.mode {
            Mode::Sum => self.acc.add(&term),
            Mode::Product => self.acc.mul(&term),
        }
        self.emitted.push(index);
        let switched = self.advance();
        if switched {
            self.switches.push(self.emitted.len() - 1);
        }
        Ok(Some(PlanStep { index, term, switched }))
    }

    /// Updates the phase after a step; true on a switch.
    fn advance(&mut self) -> bool {
        match self.goal.clone() {
            Goal::Value(a) => self.flip_at(&a, &a),
            Goal::Oscillate => {
                let (hi, lo) = match self.mode {
                    Mode::Sum => (Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 2.into())),
                    Mode::Product => (self.level(1), self.level(-1)),
                };
                self.flip_at(&hi, &lo)
            }
            Goal::Unbounded { up, stage, pending_other } => {
                if pending_other {
                    self.goal = Goal::Unbounded { up, stage: stage + 1, pending_other: false };
                    return false;
                }
                let reached = if up {
                    self.level_cmp(&self.level(stage as i64)) == Ordering::Greater
                } else {
                    self.level_cmp(&self.level(-(stage as i64))) == Ordering::Less
                };
                if reached {
                    self.goal = Goal::Unbounded { up, stage, pending_other: true };
                }
                reached
            }
            Goal::Pattern { .. } => false,
        }
    }

    /// Climb until above `hi`, then descend until below `lo`.
    fn flip_at(&mut self, hi: &Rational, lo: &Rational) -> bool {
        match self.phase {
            Class::Up if self.level_cmp(hi) == Ordering::Greater => {
                self.phase = Class::Down;
                true
            }
            Class::Down if self.level_cmp(lo) == Ordering::Less => {
                self.phase = Class::Up;
                true
            }
            _ => false,
        }
    }

    /// Emits `n` more steps (fewer if the plan runs dry).
    pub fn take_steps(&mut self, n: usize) -> Result<Vec<PlanStep>, SeriesError> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            match self.next_step()? {
                Some(s) => out.push(s),
                None => break,
            }
        }
        Ok(out)
    }
}

impl Iterator for RearrangementPlan {
    type Item = Result<PlanStep, SeriesError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_step().transpose()
    }
}

/// Greedy rearrangement of a Riemannian series toward `target`.
pub fn rearrange_to_target(
    t: &SeriesTerms,
    target: Target,
    cfg: &RiemannConfig,
) -> Result<RearrangementPlan, SeriesError> {
    let default_threshold = match &target {
        Target::Value(a) => a.abs() + Rational::one(),
        _ => Rational::from_integer(2.into()),
    };
    let threshold = cfg.threshold.clone().unwrap_or(default_threshold);
    let terms = t.terms(cfg.prefix)?;
    let (neg, pos): (Vec<Rational>, Vec<Rational>) = terms.iter().cloned().partition(|a| a.is_negative());
    let (pos, neg) = (super::sum_exact(&pos), super::sum_exact(&neg));
    if pos <= threshold || -&neg <= threshold {
        return Err(SeriesError::NotRiemannian(format!(
            "signed parts {pos} and {neg} over {} terms do not exceed {threshold}",
            cfg.prefix
        )));
    }
    check_tail(&terms, cfg, |a| a.abs()).map_err(SeriesError::NotRiemannian)?;
    let goal = match target {
        Target::Value(a) => Goal::Value(a),
        Target::PlusInf => Goal::Unbounded { up: true, stage: 1, pending_other: false },
        Target::MinusInf => Goal::Unbounded { up: false, stage: 1, pending_other: false },
        Target::NoSum => Goal::Oscillate,
    };
    Ok(RearrangementPlan::new(t.clone(), Mode::Sum, goal))
}

fn check_tail(terms: &[Rational], cfg: &RiemannConfig, size: impl Fn(&Rational) -> Rational) -> Result<(), String> {
    let start = terms.len() * 3 / 4;
    match terms[start..].iter().map(size).max() {
        Some(m) if m > cfg.tail_max => Err(format!("tail term of size {m} exceeds {}", cfg.tail_max)),
        _ => Ok(()),
    }
}

/// Repeats `ups` terms of the nonnegative class then `downs` negative terms,
/// in original order within each class.
pub fn rearrange_pattern(t: &SeriesTerms, ups: u64, downs: u64) -> RearrangementPlan {
    assert!(ups + downs > 0);
    RearrangementPlan::new(t.clone(), Mode::Sum, Goal::Pattern { ups, downs, done: 0 })
}

/// Rearranges factors so that the partial products tend to `target`.
///
/// Factors must be nonzero and tend to 1; the sign of the product is fixed
/// by the number of negative factors (finite, counted on the prefix).
pub fn rearrange_product_to_target(
    t: &SeriesTerms,
    target: ProductTarget,
    cfg: &RiemannConfig,
) -> Result<RearrangementPlan, SeriesError> {
    let bad = |m: String| Err(SeriesError::NotRiemannianProduct(m));
    let terms = t.terms(cfg.prefix)?;
    if let Some(i) = terms.iter().position(Zero::is_zero) {
        return bad(format!("factor {} is zero", i + 1));
    }
    if target == ProductTarget::Value(Rational::one()) && terms.iter().all(One::is_one) {
        // Nothing to rearrange: every prefix already multiplies to 1.
        return Ok(RearrangementPlan::new(t.clone(), Mode::Product, Goal::Pattern { ups: 1, downs: 0, done: 0 }));
    }
    let negatives = terms.iter().filter(|a| a.is_negative()).count();
    if let ProductTarget::Value(a) = &target {
        let sign_ok = a.is_zero() || (a.is_negative() == (negatives % 2 == 1));
        if !sign_ok {
            return bad(format!("{negatives} negative factors cannot give a product of sign {}", a.signum()));
        }
    }
    let two = Rational::from_integer(2.into());
    let threshold = cfg.threshold.clone().unwrap_or_else(|| match &target {
        ProductTarget::Value(a) if !a.is_zero() => {
            let m = a.abs();
            &two * std::cmp::max(m.clone(), m.recip())
        }
        _ => two.clone(),
    });
    let (mut up, mut down) = (Rational::one(), Rational::one());
    for a in &terms {
        if a.abs() >= Rational::one() {
            up *= a.abs();
        } else {
            down *= a.abs();
        }
    }
    if up <= threshold || down.recip() <= threshold {
        return bad(format!("factor classes over {} terms do not pass {threshold}", cfg.prefix));
    }
    check_tail(&terms, cfg, |a| (a - Rational::one()).abs()).map_err(SeriesError::NotRiemannianProduct)?;
    let goal = match target {
        ProductTarget::Value(a) if a.is_zero() => Goal::Unbounded { up: false, stage: 1, pending_other: false },
        ProductTarget::Value(a) => Goal::Value(a),
        ProductTarget::PlusInf => Goal::Unbounded { up: true, stage: 1, pending_other: false },
        ProductTarget::Zero => Goal::Unbounded { up: false, stage: 1, pending_other: false },
    };
    Ok(RearrangementPlan::new(t.clone(), Mode::Product, goal))
}

/// Running value as an unreduced fraction. Sums keep the denominator at the
/// lcm of the denominators seen, which avoids a big gcd on every step.
#[derive(Debug, Clone)]
struct Acc {
    num: BigInt,
    den: BigInt,
}

impl Acc {
    fn add(&mut self, a: &Rational) {
        let den = super::lcm_fast(&self.den, a.denom());
        self.num = &self.num * (&den / &self.den) + a.numer() * (&den / a.denom());
        self.den = den;
    }

    fn mul(&mut self, a: &Rational) {
        let v = Rational::new(&self.num * a.numer(), &self.den * a.denom());
        self.num = v.numer().clone();
        self.den = v.denom().clone();
    }

    fn cmp(&self, a: &Rational) -> Ordering {
        (&self.num * a.denom()).cmp(&(a.numer() * &self.den))
    }

    fn abs_cmp(&self, a: &Rational) -> Ordering {
        (self.num.abs() * a.denom()).cmp(&(a.numer().abs() * &self.den))
    }
}
