//! How the quotient varies with the slope τ = r/m: walls, chambers, the
//! quotient on each piece, and the weighted-projective flip data at interior walls.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::binary_forms::{classify_h, Divisor, LinParam};
use crate::error::{Error, Result};
use crate::oracle::enumerate_profiles;
use crate::polytope::{int, rat, Rational};
use crate::status::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WallKind {
    WallZero,
    InteriorWall,
    WallN,
    Chamber,
}

/// A wall (`lo == hi`) or an open chamber `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallChamber {
    pub kind: WallKind,
    pub lo: Rational,
    pub hi: Rational,
}

impl WallChamber {
    pub fn is_wall(&self) -> bool {
        self.kind != WallKind::Chamber
    }

    pub fn contains(&self, tau: &Rational) -> bool {
        if self.is_wall() {
            *tau == self.lo
        } else {
            self.lo < *tau && *tau < self.hi
        }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }
}

impl fmt::Display for WallChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_wall() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

impl Serialize for WallChamber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WallChamber", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

/// Wall values 0, n and every q ∈ (0, n) with n − q even, in increasing order.
pub fn wall_values(n: u32) -> Vec<Rational> {
    let mut out = vec![int(0)];
    let first = if n.is_multiple_of(2) { 2 } else { 1 };
    out.extend((first..n).step_by(2).map(|q| int(q as i64)));
    if n > 0 {
        out.push(int(n as i64));
    }
    out
}

/// Walls and the chambers between them, sorted by position.
pub fn walls(n: u32) -> Result<Vec<WallChamber>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let values = wall_values(n);
    let top = int(n as i64);
    let mut out = Vec::with_capacity(2 * values.len() - 1);
    for (i, w) in values.iter().enumerate() {
        let kind = if w.is_zero() {
            WallKind::WallZero
        } else if *w == top {
            WallKind::WallN
        } else {
            WallKind::InteriorWall
        };
        out.push(WallChamber { kind, lo: w.clone(), hi: w.clone() });
        if let Some(next) = values.get(i + 1) {
            out.push(WallChamber { kind: WallKind::Chamber, lo: w.clone(), hi: next.clone() });
        }
    }
    Ok(out)
}

pub fn locate(n: u32, tau: &Rational) -> Result<WallChamber> {
    walls(n)?.into_iter().find(|wc| wc.contains(tau)).ok_or_else(|| Error::SlopeOutOfRange(tau.to_string()))
}

/// Chamber midpoints, walls, and walls ± 1/7: the sample set used for
/// constancy and equivalence sweeps.
pub fn sample_slopes(n: u32) -> Result<Vec<Rational>> {
    let eps = rat(1, 7);
    let mut out = Vec::new();
    for wc in walls(n)? {
        if wc.is_wall() {
            out.push(&wc.lo - &eps);
            out.push(wc.lo.clone());
            out.push(&wc.lo + &eps);
        } else {
            out.push(wc.midpoint());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientKind {
    GeometricProjective,
    ClassicalSL2Quotient,
    StableUnionPoint,
    SinglePoint,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientProfile {
    pub ss_equals_s: bool,
    pub quotient_kind: QuotientKind,
    pub dimension: Option<i64>,
    pub stable_profiles: usize,
    pub semistable_profiles: usize,
    pub annotations: Vec<String>,
}

fn census_counts(n: u32, lin: &LinParam) -> Result<(usize, usize)> {
    let statuses: Vec<Status> = enumerate_profiles(n)?.profiles.iter().map(|d| classify_h(d, lin)).collect();
    Ok((statuses.iter().filter(|s| s.is_stable()).count(), statuses.iter().filter(|s| s.is_semistable()).count()))
}

pub fn chamber_profile(n: u32, tau: &Rational) -> Result<QuotientProfile> {
    let piece = locate(n, tau)?;
    let lin = LinParam::from_tau(tau)?;
    let (stable, semistable) = census_counts(n, &lin)?;
    let mut annotations = Vec::new();
    let dim = n as i64 - 2;
    let (kind, dimension, ss_equals_s) = match piece.kind {
        WallKind::WallZero => {
            annotations.push(
                "the quotient for the translation subgroup fibres over the classical SL(2) quotient X//SL(2), \
                 which has dimension one less than expected"
                    .to_string(),
            );
            if semistable == 0 {
                (QuotientKind::Empty, None, true)
            } else {
                (QuotientKind::ClassicalSL2Quotient, Some((n as i64 - 3).max(0)), n % 2 == 1)
            }
        }
        WallKind::Chamber if stable > 0 => (QuotientKind::GeometricProjective, Some(dim), stable == semistable),
        WallKind::Chamber => (QuotientKind::Empty, None, stable == semistable),
        WallKind::InteriorWall => {
            annotations.push("strictly semistable points form one S-equivalence class".to_string());
            (QuotientKind::StableUnionPoint, Some(dim), false)
        }
        WallKind::WallN => {
            annotations.push("all semistable points are S-equivalent".to_string());
            (QuotientKind::SinglePoint, Some(0), false)
        }
    };
    if n == 3 && kind != QuotientKind::Empty {
        annotations
            .push("n = 3: the chamber quotients are all isomorphic to P¹ and the wall τ = 1 induces no flip".into());
    }
    Ok(QuotientProfile {
        ss_equals_s,
        quotient_kind: kind,
        dimension,
        stable_profiles: stable,
        semistable_profiles: semistable,
        annotations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipData {
    pub n: u32,
    pub s: u32,
    pub e_plus_weights: Vec<u32>,
    pub e_minus_weights: Vec<u32>,
    pub slice_weights: Vec<i64>,
}

fn weighted_projective(weights: &[u32]) -> String {
    let w: Vec<String> = weights.iter().map(u32::to_string).collect();
    format!("P({})", w.join(","))
}

impl FlipData {
    pub fn e_plus(&self) -> String {
        weighted_projective(&self.e_plus_weights)
    }

    pub fn e_minus(&self) -> String {
        weighted_projective(&self.e_minus_weights)
    }
}

/// Weights −2s, −2s+2, …, −2 of T1 on the normal slice k^s.
pub fn slice_weights(n: u32, s: u32) -> Result<Vec<i64>> {
    if s == 0 || s >= n {
        return Err(Error::Precondition(format!("slice index s = {s} outside 1..={}", n.saturating_sub(1))));
    }
    Ok((1..=s as i64).rev().map(|k| -2 * k).collect())
}

/// Data of the flip at the interior wall τ = n − 2s.
pub fn flip_data(n: u32, tau: &Rational) -> Result<FlipData> {
    if n == 3 {
        return Err(Error::Precondition("n = 3: crossing τ = 1 is an isomorphism, no flip".into()));
    }
    let piece = locate(n, tau)?;
    if piece.kind != WallKind::InteriorWall || n < 4 {
        return Err(Error::Precondition(format!("τ = {tau} is not an interior wall for n = {n}")));
    }
    let t = tau.to_integer();
    let s = u32::try_from((n as i64 - i64::try_from(&t).unwrap_or(i64::MAX)) / 2)
        .map_err(|_| Error::Internal("wall index".into()))?;
    Ok(FlipData {
        n,
        s,
        e_plus_weights: (1..=s).collect(),
        e_minus_weights: (1..=n - s).collect(),
        slice_weights: slice_weights(n, s)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCrossing {
    pub n: u32,
    pub s: u32,
    /// X^s(τ − ε) \ X^s(τ)
    pub lost_below: Vec<Divisor>,
    /// X^s(τ + ε) \ X^s(τ)
    pub lost_above: Vec<Divisor>,
    pub disjoint: bool,
    pub within_strictly_semistable: bool,
}

/// Stable profiles of the two chambers adjacent to an interior wall that stop
/// being stable on the wall.
pub fn wall_crossing(n: u32, tau: &Rational) -> Result<WallCrossing> {
    let flip_s = {
        let piece = locate(n, tau)?;
        if piece.kind != WallKind::InteriorWall {
            return Err(Error::Precondition(format!("τ = {tau} is not an interior wall for n = {n}")));
        }
        let t = i64::try_from(&tau.to_integer()).map_err(|_| Error::Internal("wall value".into()))?;
        ((n as i64 - t) / 2) as u32
    };
    let pieces = walls(n)?;
    let at = pieces.iter().position(|wc| wc.contains(tau)).expect("located above");
    let below = LinParam::from_tau(&pieces[at - 1].midpoint())?;
    let above = LinParam::from_tau(&pieces[at + 1].midpoint())?;
    let on = LinParam::from_tau(tau)?;
    let census = enumerate_profiles(n)?.profiles;
    let lost = |side: &LinParam| -> Vec<Divisor> {
        census.iter().filter(|d| classify_h(d, side).is_stable() && !classify_h(d, &on).is_stable()).cloned().collect()
    };
    let lost_below = lost(&below);
    let lost_above = lost(&above);
    let disjoint = lost_below.iter().all(|d| !lost_above.contains(d));
    let within_strictly_semistable =
        lost_below.iter().chain(&lost_above).all(|d| classify_h(d, &on) == Status::StrictlySemistable);
    Ok(WallCrossing { n, s: flip_s, lost_below, lost_above, disjoint, within_strictly_semistable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(n: u32) -> Vec<Rational> {
        walls(n).unwrap().into_iter().filter(|w| w.is_wall()).map(|w| w.lo).collect()
    }

    #[test]
    fn wall_examples() {
        assert_eq!(values(4), vec![int(0), int(2), int(4)]);
        assert_eq!(values(3), vec![int(0), int(1), int(3)]);
        assert_eq!(values(1), vec![int(0), int(1)]);
        let n4 = walls(4).unwrap();
        let chambers: Vec<String> = n4.iter().filter(|w| !w.is_wall()).map(|w| w.to_string()).collect();
        assert_eq!(chambers, ["(0, 2)", "(2, 4)"]);
        assert!(walls(0).is_err());
    }

    #[test]
    fn locate_rejects_outside() {
        assert!(matches!(locate(4, &rat(-1, 2)), Err(Error::SlopeOutOfRange(_))));
        assert!(locate(4, &rat(9, 2)).is_err());
        assert_eq!(locate(4, &int(2)).unwrap().kind, WallKind::InteriorWall);
        assert_eq!(locate(4, &rat(1, 3)).unwrap().kind, WallKind::Chamber);
    }

    #[test]
    fn profile_examples() {
        let p = chamber_profile(3, &rat(1, 2)).unwrap();
        assert_eq!((p.quotient_kind, p.dimension), (QuotientKind::GeometricProjective, Some(1)));
        assert!(p.ss_equals_s);
        assert!(p.annotations.iter().any(|a| a.contains("isomorphic to P¹")));
        assert_eq!(chamber_profile(4, &int(2)).unwrap().quotient_kind, QuotientKind::StableUnionPoint);
        let p = chamber_profile(1, &rat(1, 2)).unwrap();
        assert_eq!((p.quotient_kind, p.stable_profiles), (QuotientKind::Empty, 0));
        assert_eq!(chamber_profile(5, &int(5)).unwrap().quotient_kind, QuotientKind::SinglePoint);
        let p = chamber_profile(6, &int(0)).unwrap();
        assert_eq!((p.quotient_kind, p.dimension, p.ss_equals_s), (QuotientKind::ClassicalSL2Quotient, Some(3), false));
        assert_eq!(chamber_profile(1, &int(0)).unwrap().quotient_kind, QuotientKind::Empty);
    }

    #[test]
    fn flip_examples() {
        let f = flip_data(6, &int(2)).unwrap();
        assert_eq!((f.s, f.e_plus(), f.e_minus()), (2, "P(1,2)".to_string(), "P(1,2,3,4)".to_string()));
        assert_eq!(f.slice_weights, vec![-4, -2]);
        let f = flip_data(4, &int(2)).unwrap();
        assert_eq!((f.s, f.e_plus_weights.clone(), f.e_minus()), (1, vec![1], "P(1,2,3)".to_string()));
        assert!(flip_data(3, &int(1)).is_err());
        assert!(flip_data(6, &int(3)).is_err());
        assert!(flip_data(6, &int(6)).is_err());
    }

    #[test]
    fn slice_examples() {
        assert_eq!(slice_weights(6, 2).unwrap(), vec![-4, -2]);
        assert_eq!(slice_weights(6, 1).unwrap(), vec![-2]);
        assert!(slice_weights(6, 0).is_err());
        assert!(slice_weights(6, 6).is_err());
        for s in 1..8 {
            let w = slice_weights(8, s).unwrap();
            let reduced: Vec<u32> = w.iter().rev().map(|x| (-x / 2) as u32).collect();
            assert_eq!(reduced, (1..=s).collect::<Vec<_>>());
        }
    }

    #[test]
    fn crossing_at_a_wall() {
        let c = wall_crossing(6, &int(2)).unwrap();
        assert_eq!(c.s, 2);
        assert!(c.disjoint && c.within_strictly_semistable);
        assert!(!c.lost_below.is_empty() && !c.lost_above.is_empty());
        assert!(c.lost_below.iter().all(|d| d.mult_inf() == 2));
        assert!(c.lost_above.iter().all(|d| d.mult_inf() <= 1));
    }
}
