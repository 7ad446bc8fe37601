//! Degree-n effective divisors on P¹ modulo the Borel subgroup of SL(2).
//!
//! A divisor is recorded by its multiplicity profile: the multiplicity at
//! ∞ = [1:0] (the point fixed by the Borel subgroup H), at 0 = [0:1], and the
//! multiplicities of the remaining distinct roots. The stability of a binary
//! form under every linearisation L_{m,r} depends only on this profile.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{rat, Rational};
use crate::status::Status;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Divisor {
    n: u32,
    mult_inf: u32,
    mult_zero: u32,
    /// Sorted in decreasing order.
    generic: Vec<u32>,
}

impl Divisor {
    pub fn new(n: u32, mult_inf: u32, mult_zero: u32, generic: Vec<u32>) -> Result<Self> {
        Self::new_unchecked(n, mult_inf, mult_zero, generic).validate()
    }

    fn new_unchecked(n: u32, mult_inf: u32, mult_zero: u32, mut generic: Vec<u32>) -> Self {
        generic.sort_unstable_by(|a, b| b.cmp(a));
        Self { n, mult_inf, mult_zero, generic }
    }

    pub fn validate(self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::ZeroDegree);
        }
        if self.generic.contains(&0) {
            return Err(Error::NonPositiveMultiplicity);
        }
        let sum = self.mult_inf + self.mult_zero + self.generic.iter().sum::<u32>();
        if sum != self.n {
            return Err(Error::DegreeMismatch { n: self.n, sum });
        }
        Ok(self)
    }

    /// Parses `inf=<k>,zero=<k>,roots=<k1+k2+...>`; omitted fields are 0 / empty.
    pub fn parse_profile(n: u32, profile: &str) -> Result<Self> {
        let mut inf = 0;
        let mut zero = 0;
        let mut roots = Vec::new();
        for field in profile.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::MalformedProfile(format!("expected key=value, got '{field}'")))?;
            let num = |v: &str| {
                v.trim().parse::<u32>().map_err(|_| Error::MalformedProfile(format!("not a multiplicity: '{v}'")))
            };
            match key.trim() {
                "inf" => inf = num(value)?,
                "zero" => zero = num(value)?,
                "roots" => {
                    roots = value.split('+').filter(|v| !v.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?
                }
                other => return Err(Error::MalformedProfile(format!("unknown field '{other}'"))),
            }
        }
        Divisor::new(n, inf, zero, roots)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mult_inf(&self) -> u32 {
        self.mult_inf
    }

    pub fn mult_zero(&self) -> u32 {
        self.mult_zero
    }

    pub fn generic(&self) -> &[u32] {
        &self.generic
    }

    /// Multiplicities of all roots other than ∞.
    pub fn finite_roots(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(self.mult_zero).filter(|&k| k > 0).chain(self.generic.iter().copied())
    }

    /// Multiplicities of all roots.
    pub fn roots(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(self.mult_inf).filter(|&k| k > 0).chain(self.finite_roots())
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.roots().max().unwrap_or(0)
    }

    pub fn profile_string(&self) -> String {
        let roots: Vec<String> = self.generic.iter().map(u32::to_string).collect();
        format!("inf={},zero={},roots={}", self.mult_inf, self.mult_zero, roots.join("+"))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, inf={}, zero={}, generic={:?})", self.n, self.mult_inf, self.mult_zero, self.generic)
    }
}

/// Linearisation parameter (m, r): O_X(m) twisted by the character of weight r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinParam {
    m: i64,
    r: i64,
}

impl LinParam {
    pub fn new(m: i64, r: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::NonPositiveM(m));
        }
        Ok(Self { m, r })
    }

    /// The representative (denominator, numerator) of a rational slope.
    pub fn from_tau(tau: &Rational) -> Result<Self> {
        let m = i64::try_from(tau.denom()).map_err(|_| Error::Precondition("slope denominator too large".into()))?;
        let r = i64::try_from(tau.numer()).map_err(|_| Error::Precondition("slope numerator too large".into()))?;
        Self::new(m, r)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn tau(&self) -> Rational {
        rat(self.r, self.m)
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        Self::new(self.m * k, self.r * k)
    }

    /// Sign of τ − q for an integer q, compared exactly.
    pub fn cmp_tau_int(&self, q: i64) -> Ordering {
        (self.r as i128).cmp(&(q as i128 * self.m as i128))
    }
}

/// Compares a multiplicity with (n − τ)/2 (`plus = false`) or (n + τ)/2
/// (`plus = true`) in integers: 2·mult·m against n·m ∓ r.
pub fn cmp_threshold(mult: u32, n: u32, p: &LinParam, plus: bool) -> Ordering {
    let lhs = 2 * mult as i128 * p.m as i128;
    let nm = n as i128 * p.m as i128;
    let rhs = if plus { nm + p.r as i128 } else { nm - p.r as i128 };
    lhs.cmp(&rhs)
}

/// Compares a multiplicity with n/2.
fn cmp_half(mult: u32, n: u32) -> Ordering {
    (2 * mult).cmp(&n)
}

/// Stability of [σ] for the Borel subgroup under L_{m,r}.
pub fn classify_h(d: &Divisor, p: &LinParam) -> Status {
    let n = d.n();
    if p.r < 0 || p.cmp_tau_int(n as i64) == Ordering::Greater {
        return Status::Unstable;
    }
    if p.r == 0 {
        let ss = cmp_half(d.max_multiplicity(), n) != Ordering::Greater;
        return Status::from_tests(false, ss);
    }
    if p.cmp_tau_int(n as i64) == Ordering::Equal {
        return Status::from_tests(false, d.mult_inf() == 0);
    }
    let inf = cmp_threshold(d.mult_inf(), n, p, false);
    let others = d.finite_roots().map(|k| cmp_threshold(k, n, p, true)).max().unwrap_or(Ordering::Less);
    Status::from_tests(
        inf == Ordering::Less && others == Ordering::Less,
        inf != Ordering::Greater && others != Ordering::Greater,
    )
}

/// Classical SL(2) stability for O_X(1).
pub fn classify_sl2(d: &Divisor) -> Status {
    match cmp_half(d.max_multiplicity(), d.n()) {
        Ordering::Less => Status::Stable,
        Ordering::Equal => Status::StrictlySemistable,
        Ordering::Greater => Status::Unstable,
    }
}

/// Stable / finitely-generated-semistable loci for the translation subgroup,
/// in the form "fewer than (at most) n/2 of the points coincide".
pub fn classify_u(d: &Divisor) -> Status {
    classify_sl2(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootSlot {
    Infinity,
    Zero,
    Generic(usize),
}

/// Applies the translation taking the chosen root to 0. Translations fix only
/// ∞, so the previous mass at 0 becomes a generic root.
pub fn h_move_root_to_zero(d: &Divisor, which: RootSlot) -> Result<Divisor> {
    match which {
        RootSlot::Infinity => Err(Error::CannotMoveInfinity),
        RootSlot::Zero => Ok(d.clone()),
        RootSlot::Generic(i) => {
            let mut generic = d.generic.clone();
            if i >= generic.len() {
                return Err(Error::NoSuchRoot(i));
            }
            let moved = generic.remove(i);
            if d.mult_zero > 0 {
                generic.push(d.mult_zero);
            }
            Ok(Divisor::new_unchecked(d.n, d.mult_inf, moved, generic))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitDirection {
    /// t → 0 under diag(t, 1/t): every root other than ∞ flows to 0.
    ToZero,
    /// t → ∞: every root other than 0 flows to ∞.
    ToInf,
}

pub fn torus_limit(d: &Divisor, dir: LimitDirection) -> Divisor {
    match dir {
        LimitDirection::ToZero => Divisor::new_unchecked(d.n, d.mult_inf, d.n - d.mult_inf, vec![]),
        LimitDirection::ToInf => Divisor::new_unchecked(d.n, d.n - d.mult_zero, d.mult_zero, vec![]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    Translate(RootSlot),
    Limit(LimitDirection),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub mv: Move,
    pub result: Divisor,
}

/// s = (n − τ)/2 when τ is an interior wall for degree n.
pub fn interior_wall_s(n: u32, p: &LinParam) -> Option<u32> {
    if p.r <= 0 || p.r % p.m != 0 {
        return None;
    }
    let tau = p.r / p.m;
    let diff = n as i64 - tau;
    (diff > 0 && diff % 2 == 0).then_some((diff / 2) as u32)
}

/// The unique closed orbit x^{(n+τ)/2} y^{(n−τ)/2} in the strictly semistable
/// locus at an interior wall: ∞ with multiplicity s, 0 with multiplicity n − s.
pub fn central_divisor(n: u32, p: &LinParam) -> Result<Divisor> {
    let s = interior_wall_s(n, p)
        .ok_or_else(|| Error::Precondition(format!("τ = {} is not an interior wall for n = {n}", p.tau())))?;
    Divisor::new(n, s, n - s, vec![])
}

/// Sequence of Borel moves and torus limits carrying a strictly semistable
/// divisor at an interior wall to the central divisor.
pub fn sequiv_witness(d: &Divisor, p: &LinParam) -> Result<Vec<Step>> {
    let central = central_divisor(d.n(), p)?;
    if classify_h(d, p) != Status::StrictlySemistable {
        return Err(Error::Precondition(format!("{d} is not strictly semistable at τ = {}", p.tau())));
    }
    if *d == central {
        return Ok(vec![]);
    }
    let s = central.mult_inf();
    let big = d.n() - s;
    if d.mult_inf() == s {
        let result = torus_limit(d, LimitDirection::ToZero);
        return Ok(vec![Step { mv: Move::Limit(LimitDirection::ToZero), result }]);
    }
    let mut steps = Vec::new();
    let mut current = d.clone();
    if current.mult_zero() != big {
        let idx = current
            .generic()
            .iter()
            .position(|&k| k == big)
            .ok_or_else(|| Error::Internal(format!("{d}: no root of multiplicity {big}")))?;
        let which = RootSlot::Generic(idx);
        current = h_move_root_to_zero(&current, which)?;
        steps.push(Step { mv: Move::Translate(which), result: current.clone() });
    }
    current = torus_limit(&current, LimitDirection::ToInf);
    steps.push(Step { mv: Move::Limit(LimitDirection::ToInf), result: current });
    Ok(steps)
}
