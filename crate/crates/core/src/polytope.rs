//! Exact arithmetic in the "N sufficiently large" regime and origin-membership
//! predicates for planar weight polytopes.
//!
//! Values that depend on the large envelope parameter `N` are kept formal:
//! [`AffineN`] holds `a·N + b` and is ordered lexicographically, which is the
//! order obtained by evaluating at every large enough concrete `N`. Products of
//! two such values (orientation determinants, pairings) land in [`NPoly`],
//! whose sign is the sign of its leading coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An element `n_coeff·N + constant` of the ordered domain of affine functions
/// of a formal, arbitrarily large parameter `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AffineN {
    n_coeff: Rational,
    constant: Rational,
}

impl AffineN {
    pub fn new(n_coeff: Rational, constant: Rational) -> Self {
        Self { n_coeff, constant }
    }

    pub fn from_ints(n_coeff: i64, constant: i64) -> Self {
        Self::new(int(n_coeff), int(constant))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(Rational::zero(), c)
    }

    /// The formal parameter `N` itself.
    pub fn n() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn n_coeff(&self) -> &Rational {
        &self.n_coeff
    }

    pub fn const_term(&self) -> &Rational {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.n_coeff.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.n_coeff.is_zero() && self.constant.is_zero()
    }

    /// Substitutes a concrete positive value for `N`.
    pub fn eval_at(&self, n_value: &Rational) -> Result<Rational> {
        if !n_value.is_positive() {
            return Err(Error::NonPositiveN(n_value.to_string()));
        }
        Ok(&self.n_coeff * n_value + &self.constant)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.n_coeff * k, &self.constant * k)
    }

    /// Product inside the affine domain; rejected when both factors carry `N`.
    pub fn checked_mul(&self, other: &AffineN) -> Result<AffineN> {
        if self.is_constant() {
            Ok(other.scale(&self.constant))
        } else if other.is_constant() {
            Ok(self.scale(&other.constant))
        } else {
            Err(Error::DegreeOverflow)
        }
    }

    pub fn to_npoly(&self) -> NPoly {
        NPoly::from_coeffs(vec![self.constant.clone(), self.n_coeff.clone()])
    }

    /// Sign for all sufficiently large `N`.
    pub fn signum(&self) -> Ordering {
        self.cmp(&AffineN::zero())
    }
}

impl Ord for AffineN {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_coeff.cmp(&other.n_coeff).then_with(|| self.constant.cmp(&other.constant))
    }
}

impl PartialOrd for AffineN {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for AffineN {
    fn from(c: Rational) -> Self {
        AffineN::constant(c)
    }
}

impl From<i64> for AffineN {
    fn from(c: i64) -> Self {
        AffineN::constant(int(c))
    }
}

impl Add for &AffineN {
    type Output = AffineN;
    fn add(self, rhs: &AffineN) -> AffineN {
        AffineN::new(&self.n_coeff + &rhs.n_coeff, &self.constant + &rhs.constant)
    }
}

impl Sub for &AffineN {
    type Output = AffineN;
    fn sub(self, rhs: &AffineN) -> AffineN {
        AffineN::new(&self.n_coeff - &rhs.n_coeff, &self.constant - &rhs.constant)
    }
}

impl Add for AffineN {
    type Output = AffineN;
    fn add(self, rhs: AffineN) -> AffineN {
        &self + &rhs
    }
}

impl Sub for AffineN {
    type Output = AffineN;
    fn sub(self, rhs: AffineN) -> AffineN {
        &self - &rhs
    }
}

impl Neg for &AffineN {
    type Output = AffineN;
    fn neg(self) -> AffineN {
        AffineN::new(-&self.n_coeff, -&self.constant)
    }
}

impl Neg for AffineN {
    type Output = AffineN;
    fn neg(self) -> AffineN {
        -&self
    }
}

impl fmt::Display for AffineN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_coeff.is_zero() {
            return write!(f, "{}", self.constant);
        }
        if self.n_coeff.is_one() {
            write!(f, "N")?;
        } else if (-&self.n_coeff).is_one() {
            write!(f, "-N")?;
        } else {
            write!(f, "{}N", self.n_coeff)?;
        }
        if self.constant.is_positive() {
            write!(f, "+{}", self.constant)?;
        } else if self.constant.is_negative() {
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}

impl Serialize for AffineN {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Polynomial in the formal parameter `N`, coefficients in ascending degree.
/// Trailing zero coefficients are always trimmed, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NPoly {
    coeffs: Vec<Rational>,
}

impl NPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Sign for all sufficiently large `N`.
    pub fn signum(&self) -> Ordering {
        match self.coeffs.last() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn eval_at(&self, n_value: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * n_value + c)
    }

    pub fn to_affine(&self) -> Option<AffineN> {
        match self.coeffs.len() {
            0 => Some(AffineN::zero()),
            1 => Some(AffineN::constant(self.coeffs[0].clone())),
            2 => Some(AffineN::new(self.coeffs[1].clone(), self.coeffs[0].clone())),
            _ => None,
        }
    }
}

impl Add for &NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        NPoly::from_coeffs(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        self + &(-rhs)
    }
}

impl Mul for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return NPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NPoly::from_coeffs(out)
    }
}

impl Ord for NPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for NPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let abs = c.abs();
            let body = match deg {
                0 => abs.to_string(),
                _ => {
                    let coef = if abs.is_one() { String::new() } else { abs.to_string() };
                    if deg == 1 {
                        format!("{coef}N")
                    } else {
                        format!("{coef}N^{deg}")
                    }
                }
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// A point of the rank-2 character lattice, tensored with the affine-in-N domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight2 {
    pub x: AffineN,
    pub y: AffineN,
}

impl Weight2 {
    pub fn new(x: AffineN, y: AffineN) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Self::new(AffineN::zero(), AffineN::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.x.is_constant() && self.y.is_constant()
    }

    pub fn scale(&self, k: &AffineN) -> Result<Weight2> {
        Ok(Weight2::new(self.x.checked_mul(k)?, self.y.checked_mul(k)?))
    }

    pub fn scale_rational(&self, k: &Rational) -> Weight2 {
        Weight2::new(self.x.scale(k), self.y.scale(k))
    }

    /// `self.x·other.y − self.y·other.x`.
    pub fn cross(&self, other: &Weight2) -> NPoly {
        &(&self.x.to_npoly() * &other.y.to_npoly()) - &(&self.y.to_npoly() * &other.x.to_npoly())
    }

    pub fn dot(&self, other: &Weight2) -> NPoly {
        &(&self.x.to_npoly() * &other.x.to_npoly()) + &(&self.y.to_npoly() * &other.y.to_npoly())
    }

    pub fn eval_at(&self, n_value: &Rational) -> Result<Weight2> {
        Ok(Weight2::new(self.x.eval_at(n_value)?.into(), self.y.eval_at(n_value)?.into()))
    }
}

impl Add for &Weight2 {
    type Output = Weight2;
    fn add(self, rhs: &Weight2) -> Weight2 {
        Weight2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Weight2 {
    type Output = Weight2;
    fn sub(self, rhs: &Weight2) -> Weight2 {
        Weight2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Weight2 {
    type Output = Weight2;
    fn neg(self) -> Weight2 {
        Weight2::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Weight2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Finite multiset of weights. Duplicates are allowed and ignored by hull predicates.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct WeightSet(Vec<Weight2>);

impl WeightSet {
    pub fn new(points: Vec<Weight2>) -> Self {
        Self(points)
    }

    pub fn points(&self) -> &[Weight2] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight2> {
        self.0.iter()
    }

    pub fn into_points(self) -> Vec<Weight2> {
        self.0
    }

    pub fn eval_at(&self, n_value: &Rational) -> Result<WeightSet> {
        self.0.iter().map(|w| w.eval_at(n_value)).collect::<Result<Vec<_>>>().map(WeightSet)
    }
}

impl FromIterator<Weight2> for WeightSet {
    fn from_iter<I: IntoIterator<Item = Weight2>>(iter: I) -> Self {
        WeightSet(iter.into_iter().collect())
    }
}

/// Position of the origin relative to a convex hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HullMembership {
    Outside,
    Boundary,
    Interior,
}

fn orient(a: &Weight2, b: &Weight2, c: &Weight2) -> Ordering {
    (b - a).cross(&(c - a)).signum()
}

/// Strictly convex hull in counter-clockwise order, starting from the
/// lexicographically smallest vertex. Collinear inputs yield the two endpoints.
pub fn convex_hull(points: &[Weight2]) -> Vec<Weight2> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Weight2> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Weight2> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Decides whether the origin lies outside, on the boundary of, or in the
/// interior of `conv(s)` inside the ambient plane, for all sufficiently large `N`.
pub fn contains_origin(s: &WeightSet) -> Result<HullMembership> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let hull = convex_hull(s.points());
    Ok(match hull.as_slice() {
        [p] => {
            if p.is_zero() {
                HullMembership::Boundary
            } else {
                HullMembership::Outside
            }
        }
        [p, q] => {
            // the origin is on the segment iff it is collinear with p, q and between them
            if p.cross(q).signum() == Ordering::Equal && p.dot(q).signum() != Ordering::Greater {
                HullMembership::Boundary
            } else {
                HullMembership::Outside
            }
        }
        vertices => {
            let mut on_edge = false;
            for (i, a) in vertices.iter().enumerate() {
                let b = &vertices[(i + 1) % vertices.len()];
                match a.cross(b).signum() {
                    Ordering::Less => return Ok(HullMembership::Outside),
                    Ordering::Equal => on_edge = true,
                    Ordering::Greater => {}
                }
            }
            if on_edge {
                HullMembership::Boundary
            } else {
                HullMembership::Interior
            }
        }
    })
}

/// Origin membership for weights of a rank-1 torus.
pub fn contains_origin_1d(values: &[AffineN]) -> Result<HullMembership> {
    let lo = values.iter().min().ok_or(Error::EmptySet)?;
    let hi = values.iter().max().ok_or(Error::EmptySet)?;
    Ok(match (lo.signum(), hi.signum()) {
        (Ordering::Less, Ordering::Greater) => HullMembership::Interior,
        (Ordering::Greater, _) | (_, Ordering::Less) => HullMembership::Outside,
        _ => HullMembership::Boundary,
    })
}

/// All sums `Σ scaleᵢ·sᵢ + shift` with `sᵢ ∈ Sᵢ`. The hull of the result is the
/// Minkowski sum of the scaled hulls, translated by `shift`.
pub fn scaled_minkowski(parts: &[(AffineN, WeightSet)], shift: &Weight2) -> Result<WeightSet> {
    let mut acc = vec![shift.clone()];
    for (scale, set) in parts {
        if scale.signum() == Ordering::Less {
            return Err(Error::NegativeScale(scale.to_string()));
        }
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let scaled = set.iter().map(|w| w.scale(scale)).collect::<Result<Vec<_>>>()?;
        acc = acc.iter().flat_map(|a| scaled.iter().map(move |s| a + s)).collect();
    }
    Ok(WeightSet(acc))
}
