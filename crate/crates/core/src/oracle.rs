//! Brute-force checks for every closed-form classifier: the complete census of
//! multiplicity profiles, and the worst case of a torus test over the finitely
//! many ways a group element can place the relevant points at 0 and ∞.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::binary_forms::{classify_h, classify_u, Divisor, LinParam};
use crate::envelope::{
    group_status, point_polytope, restrict_to_x, torus_case_status, unipotent_status, unipotent_weights, EnvParams,
    EnvPoint, VSupport,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::polytope::{contains_origin_1d, int, HullMembership, Rational, Weight2, WeightSet};
use crate::status::Status;

pub const DEFAULT_CENSUS_MAX_N: u32 = 12;
pub const CENSUS_MAX_N_VAR: &str = "NRGIT_CENSUS_MAX_N";

/// Census guard, overridable through `NRGIT_CENSUS_MAX_N`.
pub fn census_max_n() -> u32 {
    std::env::var(CENSUS_MAX_N_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CENSUS_MAX_N)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileCensus {
    pub n: u32,
    pub profiles: Vec<Divisor>,
}

/// Partitions of k into parts of size at most `max`, parts in decreasing order.
fn partitions_bounded(k: u32, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(k)).rev() {
        for mut rest in partitions_bounded(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    partitions_bounded(k, k)
}

/// p(k) by Euler's pentagonal recurrence.
pub fn partition_count(k: u32) -> u64 {
    let k = k as i64;
    let mut p = vec![0i64; k as usize + 1];
    p[0] = 1;
    for j in 1..=k {
        let mut total = 0i64;
        for i in 1.. {
            let g1 = i * (3 * i - 1) / 2;
            let g2 = i * (3 * i + 1) / 2;
            if g1 > j {
                break;
            }
            let sign = if i % 2 == 1 { 1 } else { -1 };
            total += sign * p[(j - g1) as usize];
            if g2 <= j {
                total += sign * p[(j - g2) as usize];
            }
        }
        p[j as usize] = total;
    }
    p[k as usize] as u64
}

/// Σ_{a+b ≤ n} p(n − a − b).
pub fn expected_census_size(n: u32) -> u64 {
    (0..=n).map(|rest| (n - rest + 1) as u64 * partition_count(rest)).sum()
}

pub fn enumerate_profiles(n: u32) -> Result<ProfileCensus> {
    let max = census_max_n();
    if n == 0 || n > max {
        return Err(Error::CensusGuard { n, max });
    }
    let mut profiles = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            for part in partitions(n - a - b) {
                profiles.push(Divisor::new(n, a, b, part)?);
            }
        }
    }
    Ok(ProfileCensus { n, profiles })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveGroup {
    TorusOnly,
    Borel,
    FullEnvelopeGroup,
    UnipotentEnvelope,
}

/// What a torus sees after a group element has acted: the v-support and the
/// multiplicities sitting at [1:0] and [0:1].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Placement {
    pub v: VSupport,
    pub at_inf: u32,
    pub at_zero: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMoveSet {
    pub group: MoveGroup,
    pub moves: Vec<Placement>,
}

/// Multiplicities of the points of P¹ that matter, with two extra non-roots so
/// that any slot can also be filled by a point of multiplicity 0, and the index
/// of the marked point [v1:v2] when there is one.
fn points_of_interest(p: &EnvPoint) -> (Vec<u32>, Option<usize>) {
    let d = p.divisor();
    let mut pts: Vec<u32> = d.roots().collect();
    let marked = p.marked_mult().map(|k| {
        if k > 0 {
            pts.iter().position(|&x| x == k).expect("marked multiplicity is a root")
        } else {
            pts.push(0);
            pts.len() - 1
        }
    });
    pts.extend([0, 0]);
    (pts, marked)
}

fn ordered_pairs(len: usize, skip: Option<usize>) -> impl Iterator<Item = (usize, usize)> {
    (0..len)
        .flat_map(move |i| (0..len).map(move |j| (i, j)))
        .filter(move |&(i, j)| i != j && Some(i) != skip && Some(j) != skip)
}

/// Placements reachable by SL(2) acting on σ and [v1:v2] together.
fn sl2_placements(p: &EnvPoint) -> BTreeSet<Placement> {
    let (pts, marked) = points_of_interest(p);
    let v = p.v_support();
    let mut out = BTreeSet::new();
    match marked {
        None => {
            for (i, j) in ordered_pairs(pts.len(), None) {
                out.insert(Placement { v, at_inf: pts[i], at_zero: pts[j] });
            }
        }
        Some(mk) => {
            for (_, &other) in pts.iter().enumerate().filter(|&(k, _)| k != mk) {
                out.insert(Placement { v: v.with_marked(0b010), at_inf: pts[mk], at_zero: other });
                out.insert(Placement { v: v.with_marked(0b100), at_inf: other, at_zero: pts[mk] });
            }
            for (i, j) in ordered_pairs(pts.len(), Some(mk)) {
                out.insert(Placement { v: v.with_marked(0b110), at_inf: pts[i], at_zero: pts[j] });
            }
        }
    }
    out
}

/// Placements reachable by the Borel subgroup acting on a divisor: ∞ stays,
/// and any finite point can be translated to 0.
fn borel_placements(d: &Divisor) -> BTreeSet<Placement> {
    let v = restrict_to_x(d).v_support();
    std::iter::once(0).chain(d.finite_roots()).map(|b| Placement { v, at_inf: d.mult_inf(), at_zero: b }).collect()
}

pub fn move_set(p: &EnvPoint, group: MoveGroup) -> GroupMoveSet {
    let moves = match group {
        MoveGroup::TorusOnly => BTreeSet::from([Placement {
            v: p.v_support(),
            at_inf: p.divisor().mult_inf(),
            at_zero: p.divisor().mult_zero(),
        }]),
        MoveGroup::Borel => borel_placements(p.divisor()),
        MoveGroup::FullEnvelopeGroup | MoveGroup::UnipotentEnvelope => sl2_placements(p),
    };
    GroupMoveSet { group, moves: moves.into_iter().collect() }
}

/// A representative point realising a placement; the generic remainder is
/// lumped into one root since the torus never sees it.
fn placed_point(pl: &Placement, n: u32) -> Result<EnvPoint> {
    let rest = n
        .checked_sub(pl.at_inf + pl.at_zero)
        .ok_or_else(|| Error::Internal(format!("placement {pl:?} exceeds degree {n}")))?;
    let generic = if rest > 0 { vec![rest] } else { vec![] };
    let d = Divisor::new(n, pl.at_inf, pl.at_zero, generic)?;
    let marked = match (pl.v.contains(1), pl.v.contains(2)) {
        (false, false) => None,
        (true, false) => Some(pl.at_inf),
        (false, true) => Some(pl.at_zero),
        (true, true) => Some(0),
    };
    EnvPoint::new(pl.v, d, marked)
}

/// Origin membership by Carathéodory: the origin is in the hull iff it is a
/// point, on a segment, or in a closed nondegenerate triangle of the set; it is
/// interior iff it is strictly inside a triangle, or on an open segment with
/// points strictly on both sides of its line.
pub fn caratheodory_contains_origin(set: &WeightSet) -> Result<HullMembership> {
    let pts = set.points();
    if pts.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = pts.len();
    let cross = |a: &Weight2, b: &Weight2| a.cross(b).signum();
    let mut member = pts.iter().any(Weight2::is_zero);
    for i in 0..k {
        for j in i + 1..k {
            let (p, q) = (&pts[i], &pts[j]);
            let collinear = cross(p, q) == Ordering::Equal;
            let opposite = p.dot(q).signum() == Ordering::Less;
            if collinear && p.dot(q).signum() != Ordering::Greater {
                member = true;
            }
            if collinear && opposite {
                let dir = q - p;
                let mut sides = (false, false);
                for r in pts {
                    match dir.cross(r).signum() {
                        Ordering::Greater => sides.0 = true,
                        Ordering::Less => sides.1 = true,
                        Ordering::Equal => {}
                    }
                }
                if sides.0 && sides.1 {
                    return Ok(HullMembership::Interior);
                }
            }
            for r in &pts[j + 1..] {
                if (q - p).cross(&(r - p)).signum() == Ordering::Equal {
                    continue;
                }
                let s = [cross(p, q), cross(q, r), cross(r, p)];
                if s.iter().all(|&o| o == Ordering::Greater) || s.iter().all(|&o| o == Ordering::Less) {
                    return Ok(HullMembership::Interior);
                }
                if s.iter().all(|&o| o != Ordering::Less) || s.iter().all(|&o| o != Ordering::Greater) {
                    member = true;
                }
            }
        }
    }
    Ok(if member { HullMembership::Boundary } else { HullMembership::Outside })
}

fn placement_status(pl: &Placement, group: MoveGroup, params: &EnvParams) -> Result<Status> {
    let pt = placed_point(pl, params.n())?;
    let membership = match group {
        MoveGroup::UnipotentEnvelope => contains_origin_1d(&unipotent_weights(&pt))?,
        _ => caratheodory_contains_origin(&point_polytope(&pt, params)?)?,
    };
    Ok(membership.into())
}

/// Minimum torus-level status over the move set.
pub fn worst_case_over(moves: &GroupMoveSet, params: &EnvParams) -> Result<Status> {
    moves
        .moves
        .iter()
        .map(|pl| placement_status(pl, moves.group, params))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .ok_or_else(|| Error::Internal("empty move set".into()))
}

pub fn worst_case_status(p: &EnvPoint, lin: &LinParam, group: MoveGroup) -> Result<Status> {
    let params = EnvParams::new(p.divisor().n(), *lin)?;
    worst_case_over(&move_set(p, group), &params)
}

/// Worst case over the SL(2)-only envelope, where the linearisation is fixed.
pub fn worst_case_unipotent(p: &EnvPoint) -> Result<Status> {
    worst_case_status(p, &LinParam::new(1, 0)?, MoveGroup::UnipotentEnvelope)
}

/// Torus verdicts for every placement of a given degree, computed once so that
/// census sweeps only look them up.
#[derive(Clone, Debug)]
pub struct PlacementTable {
    params: EnvParams,
    planar: HashMap<Placement, Status>,
    unipotent: HashMap<Placement, Status>,
}

impl PlacementTable {
    pub fn new(params: EnvParams, exec: Exec) -> Result<Self> {
        let n = params.n();
        let all: Vec<Placement> = VSupport::all()
            .into_iter()
            .flat_map(|v| (0..=n).flat_map(move |a| (0..=n - a).map(move |b| Placement { v, at_inf: a, at_zero: b })))
            .collect();
        let verdicts = exec.map(all.clone(), |pl| {
            Ok::<_, Error>((
                placement_status(&pl, MoveGroup::FullEnvelopeGroup, &params)?,
                placement_status(&pl, MoveGroup::UnipotentEnvelope, &params)?,
            ))
        });
        let mut planar = HashMap::with_capacity(all.len());
        let mut unipotent = HashMap::with_capacity(all.len());
        for (pl, v) in all.into_iter().zip(verdicts) {
            let (p, u) = v?;
            planar.insert(pl, p);
            unipotent.insert(pl, u);
        }
        Ok(Self { params, planar, unipotent })
    }

    pub fn params(&self) -> &EnvParams {
        &self.params
    }

    pub fn worst_case(&self, moves: &GroupMoveSet) -> Result<Status> {
        let table = match moves.group {
            MoveGroup::UnipotentEnvelope => &self.unipotent,
            _ => &self.planar,
        };
        moves
            .moves
            .iter()
            .map(|pl| {
                table
                    .get(pl)
                    .copied()
                    .ok_or_else(|| Error::Internal(format!("placement {pl:?} outside degree {}", self.params.n())))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or_else(|| Error::Internal("empty move set".into()))
    }
}

/// A concrete configuration on P¹(Q): positions of the points of interest
/// (None is ∞) with their multiplicities, and the marked point if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    v0: bool,
    points: Vec<(Option<Rational>, u32)>,
    marked: Option<usize>,
}

impl Configuration {
    /// Puts ∞ and 0 in their slots, generic roots and extra points at 1, 2, ….
    pub fn from_point(p: &EnvPoint) -> Self {
        let d = p.divisor();
        let mut points = vec![(None, d.mult_inf()), (Some(int(0)), d.mult_zero())];
        let mut next = 1i64;
        let mut fresh = || {
            let q = int(next);
            next += 1;
            Some(q)
        };
        for &k in d.generic() {
            points.push((fresh(), k));
        }
        let v = p.v_support();
        let marked = match (v.contains(1), v.contains(2)) {
            (false, false) => None,
            (true, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => {
                let k = p.marked_mult().unwrap_or(0);
                match d.generic().iter().position(|&g| g == k) {
                    Some(ix) if k > 0 => Some(ix + 2),
                    _ => {
                        points.push((fresh(), 0));
                        Some(points.len() - 1)
                    }
                }
            }
        };
        Self { v0: v.has_v0(), points, marked }
    }

    /// Applies z ↦ (az + b)/(cz + d) for ad − bc ≠ 0.
    pub fn apply(&self, [a, b, c, d]: [i64; 4]) -> Result<Self> {
        if a * d - b * c == 0 {
            return Err(Error::Precondition("singular Möbius transformation".into()));
        }
        let (a, b, c, d) = (int(a), int(b), int(c), int(d));
        let image = |z: &Option<Rational>| -> Option<Rational> {
            match z {
                None => {
                    if c == int(0) {
                        None
                    } else {
                        Some(&a / &c)
                    }
                }
                Some(z) => {
                    let den = &c * z + &d;
                    if den == int(0) {
                        None
                    } else {
                        Some((&a * z + &b) / den)
                    }
                }
            }
        };
        let points = self.points.iter().map(|(z, k)| (image(z), *k)).collect();
        Ok(Self { v0: self.v0, points, marked: self.marked })
    }

    pub fn placement(&self) -> Placement {
        let zero = int(0);
        let mult_at = |target: Option<&Rational>| {
            self.points.iter().filter(|(z, _)| z.as_ref() == target).map(|(_, k)| *k).sum::<u32>()
        };
        let mut bits = u8::from(self.v0);
        if let Some(mk) = self.marked {
            bits |= match &self.points[mk].0 {
                None => 0b010,
                Some(z) if *z == zero => 0b100,
                Some(_) => 0b110,
            };
        }
        Placement {
            v: VSupport::new(bits).expect("nonempty support"),
            at_inf: mult_at(None),
            at_zero: mult_at(Some(&zero)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub classifier: &'static str,
    pub oracle: &'static str,
    pub point: String,
    pub closed_form: Status,
    pub oracle_status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub n: u32,
    pub lin: Option<LinParam>,
    pub checked: usize,
    pub entries: Vec<DiffEntry>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub type Classifier = fn(&Divisor, &LinParam) -> Status;

/// Disagreements between each closed form and its brute-force counterpart.
pub fn diff_report(n: u32, lin: &LinParam, exec: Exec) -> Result<DiffReport> {
    diff_report_with(n, lin, exec, classify_h)
}

/// As [`diff_report`], with the Borel classifier supplied by the caller.
pub fn diff_report_with(n: u32, lin: &LinParam, exec: Exec, classify: Classifier) -> Result<DiffReport> {
    let params = EnvParams::new(n, *lin)?;
    let census = enumerate_profiles(n)?;
    let table = PlacementTable::new(params, exec)?;
    let lin = *lin;
    let per_divisor = exec.flat_map(census.profiles, |d| -> Vec<Result<Option<DiffEntry>>> {
        let mut out = Vec::new();
        let restricted = restrict_to_x(&d);
        let check = |classifier, oracle, point: String, closed_form: Status, oracle_status: Result<Status>| {
            oracle_status.map(|o| {
                (o != closed_form).then_some(DiffEntry { classifier, oracle, point, closed_form, oracle_status: o })
            })
        };
        out.push(check(
            "classify_h",
            "worst_case_status[Borel]",
            d.profile_string(),
            classify(&d, &lin),
            table.worst_case(&move_set(&restricted, MoveGroup::Borel)),
        ));
        out.push(check(
            "group_status∘restrict_to_x",
            "worst_case_status[FullEnvelopeGroup]",
            restricted.to_string(),
            group_status(&restricted, &params),
            table.worst_case(&move_set(&restricted, MoveGroup::FullEnvelopeGroup)),
        ));
        for p in EnvPoint::all_over(&d) {
            out.push(check(
                "torus_case_status",
                "worst_case_status[TorusOnly]",
                p.to_string(),
                torus_case_status(&p, &params),
                table.worst_case(&move_set(&p, MoveGroup::TorusOnly)),
            ));
            out.push(check(
                "group_status",
                "worst_case_status[FullEnvelopeGroup]",
                p.to_string(),
                group_status(&p, &params),
                table.worst_case(&move_set(&p, MoveGroup::FullEnvelopeGroup)),
            ));
        }
        out
    });
    let checked = per_divisor.len();
    let entries = per_divisor.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(DiffReport { n, lin: Some(lin), checked, entries })
}

/// Disagreements for the SL(2)-only envelope: the unipotent baseline on X, and
/// the envelope closed form on every point.
pub fn unipotent_diff_report(n: u32, exec: Exec) -> Result<DiffReport> {
    let census = enumerate_profiles(n)?;
    let table = PlacementTable::new(EnvParams::new(n, LinParam::new(1, 0)?)?, exec)?;
    let per_divisor = exec.flat_map(census.profiles, |d| -> Vec<Result<Option<DiffEntry>>> {
        let mut out = Vec::new();
        let restricted = restrict_to_x(&d);
        let mut check = |classifier, point: &EnvPoint, closed_form: Status| {
            out.push(table.worst_case(&move_set(point, MoveGroup::UnipotentEnvelope)).map(|o| {
                (o != closed_form).then(|| DiffEntry {
                    classifier,
                    oracle: "worst_case_status[UnipotentEnvelope]",
                    point: point.to_string(),
                    closed_form,
                    oracle_status: o,
                })
            }))
        };
        check("classify_u", &restricted, classify_u(&d));
        for p in EnvPoint::all_over(&d) {
            check("unipotent_status", &p, unipotent_status(&p));
        }
        out
    });
    let checked = per_divisor.len();
    let entries = per_divisor.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(DiffReport { n, lin: None, checked, entries })
}
