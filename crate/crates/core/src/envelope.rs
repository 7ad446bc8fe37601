//! The envelope P² × P(V) of the Borel action on binary forms, with the
//! linearisation O(N) ⊠ L_{m,r} for a formal large N.
//!
//! Points are recorded combinatorially: which of v0, v1, v2 are nonzero, the
//! multiplicity profile of σ, and the multiplicity of [v1:v2] as a root of σ.
//! The maximal torus T1 × T2 acts on P² with e-weights (0,0), (1,−1), (−1,−1)
//! and on the monomial x^{n−i}y^i with weight (m(2i−n), r).

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::binary_forms::{classify_h, cmp_threshold, Divisor, LinParam};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::oracle::enumerate_profiles;
use crate::polytope::{contains_origin, contains_origin_1d, int, scaled_minkowski, AffineN, Weight2, WeightSet};
use crate::status::Status;

/// Nonempty subset of {0, 1, 2}, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VSupport(u8);

impl VSupport {
    pub fn new(bits: u8) -> Result<Self> {
        if bits == 0 || bits > 0b111 {
            return Err(Error::EmptySupport("v-support"));
        }
        Ok(Self(bits))
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        for &i in indices {
            if i > 2 {
                return Err(Error::IndexOutOfRange { index: i, len: 3 });
            }
            bits |= 1 << i;
        }
        Self::new(bits)
    }

    /// All seven supports, in increasing bitmask order.
    pub fn all() -> Vec<VSupport> {
        (1..8).map(VSupport).collect()
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 3 && self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..3).filter(|&i| self.contains(i)).collect()
    }

    pub fn has_v0(self) -> bool {
        self.contains(0)
    }

    /// Whether (v1, v2) ≠ (0, 0), so that [v1:v2] is a point of P¹.
    pub fn has_marked_point(self) -> bool {
        self.0 & 0b110 != 0
    }

    /// The support with its {1,2} part replaced by `marked` (one of 0b010, 0b100, 0b110).
    pub(crate) fn with_marked(self, marked: u8) -> VSupport {
        VSupport((self.0 & 1) | marked)
    }
}

impl fmt::Display for VSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for VSupport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnvPoint {
    v: VSupport,
    divisor: Divisor,
    marked_mult: Option<u32>,
}

impl EnvPoint {
    /// The point's frame is the torus frame: support {1} means [v1:v2] = [1:0],
    /// {2} means [0:1], {1,2} a point away from both.
    pub fn new(v: VSupport, divisor: Divisor, marked_mult: Option<u32>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InconsistentMarking(msg));
        match (v.has_marked_point(), marked_mult) {
            (false, None) => {}
            (false, Some(_)) => return bad(format!("v-support {v} has no marked point")),
            (true, None) => return bad(format!("v-support {v} needs a marked multiplicity")),
            (true, Some(k)) => {
                let ok = match (v.contains(1), v.contains(2)) {
                    (true, false) => k == divisor.mult_inf(),
                    (false, true) => k == divisor.mult_zero(),
                    _ => k == 0 || divisor.generic().contains(&k),
                };
                if !ok {
                    return bad(format!("marked multiplicity {k} impossible for {v} and {divisor}"));
                }
            }
        }
        Ok(Self { v, divisor, marked_mult })
    }

    pub fn v_support(&self) -> VSupport {
        self.v
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn marked_mult(&self) -> Option<u32> {
        self.marked_mult
    }

    /// Every valid marking of every v-support over the given divisor.
    pub fn all_over(divisor: &Divisor) -> Vec<EnvPoint> {
        let mut out = Vec::new();
        for v in VSupport::all() {
            let markings: Vec<Option<u32>> = match (v.contains(1), v.contains(2)) {
                (false, false) => vec![None],
                (true, false) => vec![Some(divisor.mult_inf())],
                (false, true) => vec![Some(divisor.mult_zero())],
                (true, true) => {
                    let mut ks: Vec<u32> = std::iter::once(0).chain(divisor.generic().iter().copied()).collect();
                    ks.dedup();
                    ks.into_iter().map(Some).collect()
                }
            };
            for k in markings {
                out.push(EnvPoint { v, divisor: divisor.clone(), marked_mult: k });
            }
        }
        out
    }

    /// Every representable point over every degree-n profile.
    pub fn census(n: u32) -> Result<Vec<EnvPoint>> {
        Ok(enumerate_profiles(n)?.profiles.iter().flat_map(EnvPoint::all_over).collect())
    }
}

impl fmt::Display for EnvPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} σ={}", self.v, self.divisor.profile_string())?;
        if let Some(k) = self.marked_mult {
            write!(f, " marked={k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnvParams {
    n: u32,
    lin: LinParam,
}

impl EnvParams {
    pub fn new(n: u32, lin: LinParam) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self { n, lin })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lin(&self) -> LinParam {
        self.lin
    }
}

/// Characters of T1 × T2 on the coordinates e0, e1, e2 of P², before scaling by N.
pub fn e_weight(j: usize) -> Weight2 {
    match j {
        0 => Weight2::from_ints(0, 0),
        1 => Weight2::from_ints(1, -1),
        _ => Weight2::from_ints(-1, -1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    /// Which coordinate line of P² the fixed point lies on (0, 1 or 2).
    pub family: usize,
    pub i: u32,
    pub label: String,
    pub weight: Weight2,
}

fn monomial(n: u32, i: u32) -> String {
    let factor = |var: &str, e: u32| match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    };
    format!("{}{}", factor("x", n - i), factor("y", i))
}

fn fixed_point_label(family: usize, n: u32, i: u32) -> String {
    let e = ["[1:0:0]", "[0:1:0]", "[0:0:1]"][family];
    format!("({e},[{}])", monomial(n, i))
}

/// Weights of the 3(n+1) torus-fixed points ([e_j], [x^{n−i}y^i]), grouped by family.
pub fn table1(params: &EnvParams) -> Vec<Table1Row> {
    let n = params.n as i64;
    let (m, r) = (params.lin.m(), params.lin.r());
    let mut rows = Vec::with_capacity(3 * (params.n as usize + 1));
    for family in 0..3 {
        let a = e_weight(family);
        for i in 0..=params.n {
            let x = AffineN::from_ints(0, m * (2 * i as i64 - n));
            let weight = Weight2::new(
                &x + &AffineN::n().scale(&a.x.const_term().clone()),
                &AffineN::from_ints(0, r) + &AffineN::n().scale(&a.y.const_term().clone()),
            );
            rows.push(Table1Row { family, i, label: fixed_point_label(family, params.n, i), weight });
        }
    }
    rows
}

pub fn render_table1(params: &EnvParams) -> String {
    table1(params).iter().map(|row| format!("{} i={} {}\n", row.label, row.i, row.weight)).collect()
}

fn check_degree(p: &EnvPoint, params: &EnvParams) -> Result<()> {
    if p.divisor.n() != params.n {
        return Err(Error::Precondition(format!(
            "point has degree {}, parameters have n = {}",
            p.divisor.n(),
            params.n
        )));
    }
    Ok(())
}

/// Δ_p = N·A + m·B + (0, r), with A the e-weights selected by the v-support and
/// B the extreme monomial weights (2i − n, 0) of σ.
pub fn point_polytope(p: &EnvPoint, params: &EnvParams) -> Result<WeightSet> {
    check_degree(p, params)?;
    let n = params.n as i64;
    let a: WeightSet = p.v.indices().into_iter().map(e_weight).collect();
    let lo = p.divisor.mult_inf() as i64;
    let hi = n - p.divisor.mult_zero() as i64;
    let b: WeightSet = [lo, hi].iter().map(|&i| Weight2::from_ints(2 * i - n, 0)).collect();
    scaled_minkowski(&[(AffineN::n(), a), (AffineN::from(params.lin.m()), b)], &Weight2::from_ints(0, params.lin.r()))
}

/// Torus-level status from the case analysis of Δ_p: the top row (v0) sits at
/// height r, the v1 / v2 rows at −N + r, and at height 0 the cross-section of
/// the hull is the top segment shifted by +r, −r or widened by r on both sides.
pub fn torus_case_status(p: &EnvPoint, params: &EnvParams) -> Status {
    let lin = params.lin;
    let n = params.n;
    let (a, b) = (p.divisor.mult_inf(), p.divisor.mult_zero());
    if !p.v.has_v0() || lin.r() < 0 {
        return Status::Unstable;
    }
    let verdict = |oa: Ordering, ob: Ordering| {
        Status::from_tests(
            oa == Ordering::Less && ob == Ordering::Less,
            oa != Ordering::Greater && ob != Ordering::Greater,
        )
    };
    if lin.r() == 0 {
        // origin on the top edge: never interior
        let ss = 2 * a <= n && 2 * b <= n;
        return Status::from_tests(false, ss);
    }
    match (p.v.contains(1), p.v.contains(2)) {
        (false, false) => Status::Unstable,
        (true, false) => verdict(cmp_threshold(a, n, &lin, false), cmp_threshold(b, n, &lin, true)),
        (false, true) => verdict(cmp_threshold(a, n, &lin, true), cmp_threshold(b, n, &lin, false)),
        (true, true) => verdict(cmp_threshold(a, n, &lin, true), cmp_threshold(b, n, &lin, true)),
    }
}

/// Torus-level status through the polytope engine.
pub fn torus_status_of(p: &EnvPoint, params: &EnvParams) -> Result<Status> {
    Ok(contains_origin(&point_polytope(p, params)?)?.into())
}

/// Status for the group generated by SL(2) and the character torus, in closed form.
pub fn group_status(p: &EnvPoint, params: &EnvParams) -> Status {
    let lin = params.lin;
    let n = params.n;
    if !p.v.has_v0() || lin.r() < 0 || lin.cmp_tau_int(n as i64) == Ordering::Greater {
        return Status::Unstable;
    }
    let max_mult = p.divisor.max_multiplicity();
    if lin.r() == 0 {
        return Status::from_tests(false, 2 * max_mult <= n);
    }
    let Some(marked) = p.marked_mult else {
        return Status::Unstable;
    };
    if lin.cmp_tau_int(n as i64) == Ordering::Equal {
        return Status::from_tests(false, marked == 0);
    }
    let om = cmp_threshold(marked, n, &lin, false);
    let oa = cmp_threshold(max_mult, n, &lin, true);
    Status::from_tests(om == Ordering::Less && oa == Ordering::Less, om != Ordering::Greater && oa != Ordering::Greater)
}

/// The embedding σ ↦ ([1:1:0], σ), written in the torus frame as v = {0,1}
/// with marked point [1:0].
pub fn restrict_to_x(d: &Divisor) -> EnvPoint {
    EnvPoint { v: VSupport(0b011), divisor: d.clone(), marked_mult: Some(d.mult_inf()) }
}

/// Weights of T1 alone for the SL(2)-only linearisation O(N) ⊠ O(1).
pub fn unipotent_weights(p: &EnvPoint) -> Vec<AffineN> {
    let n = p.divisor.n() as i64;
    let lo = p.divisor.mult_inf() as i64;
    let hi = n - p.divisor.mult_zero() as i64;
    let mut out = Vec::new();
    for j in p.v.indices() {
        let shift = e_weight(j).x.const_term().clone();
        for i in [lo, hi] {
            out.push(&AffineN::n().scale(&shift) + &AffineN::from(2 * i - n));
        }
    }
    out
}

/// Torus-level status for the SL(2)-only envelope.
pub fn unipotent_torus_status(p: &EnvPoint) -> Result<Status> {
    Ok(contains_origin_1d(&unipotent_weights(p))?.into())
}

/// SL(2)-only envelope status in closed form. Only v0 ≠ 0 survives; if
/// (v1, v2) = 0 the classical test on σ applies, otherwise only the
/// multiplicity of σ at [v1:v2] is compared with n/2.
pub fn unipotent_status(p: &EnvPoint) -> Status {
    let n = p.divisor.n();
    if !p.v.has_v0() {
        return Status::Unstable;
    }
    let k = match p.marked_mult {
        None => p.divisor.max_multiplicity(),
        Some(k) => k,
    };
    match (2 * k).cmp(&n) {
        Ordering::Less => Status::Stable,
        Ordering::Equal => Status::StrictlySemistable,
        Ordering::Greater => Status::Unstable,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub stable: usize,
    pub strictly_semistable: usize,
    pub unstable: usize,
}

impl ClassCounts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Stable => self.stable += 1,
            Status::StrictlySemistable => self.strictly_semistable += 1,
            Status::Unstable => self.unstable += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeViolation {
    pub profile: String,
    pub intrinsic: Status,
    pub envelope: Status,
    pub failed: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongEnvelopeReport {
    pub n: u32,
    pub lin: LinParam,
    pub profiles: usize,
    /// From the intrinsic classification.
    pub intrinsic: ClassCounts,
    /// From the envelope, i.e. the completely (semi)stable loci.
    pub envelope: ClassCounts,
    pub stable_equal: bool,
    pub semistable_equal: bool,
    pub chain_holds: bool,
    pub violations: Vec<EnvelopeViolation>,
}

impl StrongEnvelopeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the completely (semi)stable loci with the intrinsic loci over the
/// degree-n census.
pub fn strong_envelope_report(n: u32, p: &LinParam, exec: Exec) -> Result<StrongEnvelopeReport> {
    let params = EnvParams::new(n, *p)?;
    let census = enumerate_profiles(n)?;
    let pairs = exec.map(census.profiles.clone(), |d| {
        let intrinsic = classify_h(&d, p);
        let envelope = group_status(&restrict_to_x(&d), &params);
        (d, intrinsic, envelope)
    });
    let mut report = StrongEnvelopeReport {
        n,
        lin: *p,
        profiles: pairs.len(),
        intrinsic: ClassCounts::default(),
        envelope: ClassCounts::default(),
        stable_equal: true,
        semistable_equal: true,
        chain_holds: true,
        violations: Vec::new(),
    };
    for (d, intrinsic, envelope) in pairs {
        report.intrinsic.add(intrinsic);
        report.envelope.add(envelope);
        let mut flag = |failed: &'static str| {
            report.violations.push(EnvelopeViolation { profile: d.profile_string(), intrinsic, envelope, failed })
        };
        if intrinsic.is_stable() != envelope.is_stable() {
            report.stable_equal = false;
            flag("stable loci differ");
        }
        if intrinsic.is_semistable() != envelope.is_semistable() {
            report.semistable_equal = false;
            flag("semistable loci differ");
        }
        let chain = (!envelope.is_stable() || intrinsic.is_stable())
            && (!intrinsic.is_stable() || intrinsic.is_semistable())
            && (!intrinsic.is_semistable() || envelope.is_semistable());
        if !chain {
            report.chain_holds = false;
            flag("inclusion chain broken");
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub n_value: u64,
    pub point: String,
    pub concrete: Status,
    pub symbolic: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub n0: u64,
    /// The largest concrete N below N₀ seen to disagree with the symbolic answer.
    pub last_disagreement: Option<Disagreement>,
}

const THRESHOLD_BOUND: u64 = 1 << 20;

/// One point per torus-relevant datum (v-support, mult at [1:0], mult at [0:1]).
fn torus_profiles(n: u32) -> Vec<EnvPoint> {
    let mut out = Vec::new();
    for v in VSupport::all() {
        for a in 0..=n {
            for b in 0..=(n - a) {
                let rest = n - a - b;
                let generic = if rest > 0 { vec![rest] } else { vec![] };
                let divisor = Divisor::new(n, a, b, generic).expect("profile sums to n");
                let marked = match (v.contains(1), v.contains(2)) {
                    (false, false) => None,
                    (true, false) => Some(a),
                    (false, true) => Some(b),
                    (true, true) => Some(0),
                };
                out.push(EnvPoint { v, divisor, marked_mult: marked });
            }
        }
    }
    out
}

fn first_disagreement(points: &[(EnvPoint, WeightSet, Status)], n_value: u64) -> Result<Option<Disagreement>> {
    let nv = int(n_value as i64);
    for (p, set, symbolic) in points {
        let concrete: Status = contains_origin(&set.eval_at(&nv)?)?.into();
        if concrete != *symbolic {
            return Ok(Some(Disagreement { n_value, point: p.to_string(), concrete, symbolic: *symbolic }));
        }
    }
    Ok(None)
}

/// Least N₀ in the doubling scan 1, 2, 4, … such that concrete evaluation at
/// every integer N ∈ [N₀, 4N₀] agrees with the symbolic-N status on every
/// torus-level profile of degree n.
pub fn n_threshold(n: u32, p: &LinParam, exec: Exec) -> Result<ThresholdReport> {
    let params = EnvParams::new(n, *p)?;
    let points = torus_profiles(n)
        .into_iter()
        .map(|pt| {
            let set = point_polytope(&pt, &params)?;
            let symbolic = torus_case_status(&pt, &params);
            Ok((pt, set, symbolic))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut last = None;
    let mut n0 = 1u64;
    while n0 <= THRESHOLD_BOUND {
        let found = exec
            .map((n0..=4 * n0).collect(), |nv| first_disagreement(&points, nv))
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .last();
        match found {
            None => return Ok(ThresholdReport { n0, last_disagreement: last }),
            Some(d) => last = Some(d),
        }
        n0 *= 2;
    }
    Err(Error::ScanExhausted(THRESHOLD_BOUND))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, m: i64, r: i64) -> EnvParams {
        EnvParams::new(n, LinParam::new(m, r).unwrap()).unwrap()
    }

    fn d(n: u32, inf: u32, zero: u32, g: &[u32]) -> Divisor {
        Divisor::new(n, inf, zero, g.to_vec()).unwrap()
    }

    fn v(ix: &[usize]) -> VSupport {
        VSupport::from_indices(ix).unwrap()
    }

    fn row(rows: &[Table1Row], family: usize, i: u32) -> &Table1Row {
        rows.iter().find(|r| r.family == family && r.i == i).unwrap()
    }

    #[test]
    fn table1_examples() {
        let rows = table1(&params(2, 1, 0));
        assert_eq!(rows.len(), 9);
        assert_eq!(row(&rows, 0, 1).weight, Weight2::from_ints(0, 0));
        assert_eq!(row(&rows, 0, 1).label, "([1:0:0],[xy])");
        let rows = table1(&params(1, 3, 2));
        assert_eq!(row(&rows, 1, 1).weight.to_string(), "(N+3, -N+2)");
        assert_eq!(row(&rows, 1, 1).label, "([0:1:0],[y])");
        assert_eq!(row(&rows, 2, 0).weight.to_string(), "(-N-3, -N+2)");
        assert_eq!(row(&rows, 2, 0).label, "([0:0:1],[x])");
    }

    #[test]
    fn marking_rules() {
        let dv = d(4, 1, 0, &[3]);
        assert!(EnvPoint::new(v(&[0, 1]), dv.clone(), Some(1)).is_ok());
        assert!(EnvPoint::new(v(&[0, 1]), dv.clone(), Some(3)).is_err());
        assert!(EnvPoint::new(v(&[0]), dv.clone(), Some(0)).is_err());
        assert!(EnvPoint::new(v(&[0, 2]), dv.clone(), None).is_err());
        assert!(EnvPoint::new(v(&[0, 1, 2]), dv.clone(), Some(3)).is_ok());
        assert!(EnvPoint::new(v(&[0, 1, 2]), dv, Some(1)).is_err());
        assert!(VSupport::new(0).is_err());
    }

    #[test]
    fn polytope_examples() {
        // v = {1} with σ = y^n, a root of multiplicity n at [1:0]: only the i = n monomial
        let pr = params(3, 2, 1);
        let p = EnvPoint::new(v(&[1]), d(3, 3, 0, &[]), Some(3)).unwrap();
        let set = point_polytope(&p, &pr).unwrap();
        let expected = row(&table1(&pr), 1, 3).weight.clone();
        assert!(set.iter().all(|w| *w == expected));
        // v = {0}, full support: horizontal segment m·[−n, n] at height r
        let p = EnvPoint::new(v(&[0]), d(3, 0, 0, &[1, 1, 1]), None).unwrap();
        let mut xs: Vec<_> = point_polytope(&p, &pr).unwrap().iter().map(|w| w.x.clone()).collect();
        xs.sort();
        assert_eq!(xs, vec![AffineN::from(-6), AffineN::from(6)]);
    }

    #[test]
    fn group_status_examples() {
        let pr = params(4, 1, 2);
        let p = EnvPoint::new(v(&[0, 1, 2]), d(4, 0, 2, &[2]), Some(2)).unwrap();
        assert_eq!(group_status(&p, &pr), Status::Unstable);
        let p = EnvPoint::new(v(&[0, 1, 2]), d(4, 0, 2, &[2]), Some(0)).unwrap();
        assert_eq!(group_status(&p, &pr), Status::Stable);
        let p = EnvPoint::new(v(&[0, 1, 2]), d(4, 0, 2, &[2]), Some(0)).unwrap();
        assert_eq!(group_status(&p, &params(4, 1, 4)), Status::StrictlySemistable);
        let p = EnvPoint::new(v(&[1, 2]), d(4, 0, 2, &[2]), Some(0)).unwrap();
        assert_eq!(group_status(&p, &pr), Status::Unstable);
    }

    #[test]
    fn torus_case_examples() {
        let pr = params(4, 1, 2);
        let p = EnvPoint::new(v(&[0, 1, 2]), d(4, 3, 1, &[]), Some(0)).unwrap();
        assert_eq!(torus_case_status(&p, &pr), Status::StrictlySemistable);
        let p = EnvPoint::new(v(&[0, 1, 2]), d(4, 2, 2, &[]), Some(0)).unwrap();
        assert_eq!(torus_case_status(&p, &pr), Status::Stable);
        let p = EnvPoint::new(v(&[0]), d(4, 0, 0, &[4]), None).unwrap();
        assert_eq!(torus_case_status(&p, &pr), Status::Unstable);
        assert_eq!(torus_case_status(&p, &params(4, 1, 0)), Status::StrictlySemistable);
    }

    #[test]
    fn torus_case_matches_polytope_engine() {
        for n in 1..=5 {
            let census = EnvPoint::census(n).unwrap();
            for (m, r) in [(1, -1), (1, 0), (2, 1), (1, 1), (3, 7), (1, n as i64), (1, n as i64 + 1)] {
                let pr = params(n, m, r);
                for p in &census {
                    assert_eq!(torus_case_status(p, &pr), torus_status_of(p, &pr).unwrap(), "{p} at ({m},{r})");
                }
            }
        }
    }

    #[test]
    fn restriction() {
        let p = restrict_to_x(&d(4, 1, 0, &[3]));
        assert_eq!(p.v_support(), v(&[0, 1]));
        assert_eq!(p.marked_mult(), Some(1));
        assert_eq!(restrict_to_x(&d(4, 0, 4, &[])).marked_mult(), Some(0));
        assert!(EnvPoint::new(p.v_support(), p.divisor().clone(), p.marked_mult()).is_ok());
    }

    #[test]
    fn unipotent_examples() {
        assert_eq!(unipotent_status(&restrict_to_x(&d(5, 2, 2, &[1]))), Status::Stable);
        assert_eq!(unipotent_status(&restrict_to_x(&d(4, 2, 2, &[]))), Status::StrictlySemistable);
        for p in EnvPoint::census(4).unwrap() {
            assert!(
                unipotent_torus_status(&p).unwrap() >= unipotent_status(&p),
                "torus level is never worse than the group level: {p}"
            );
        }
    }

    #[test]
    fn strong_envelope_small_cases() {
        let rep = strong_envelope_report(4, &LinParam::new(1, 2).unwrap(), Exec::Sequential).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.intrinsic, rep.envelope);
        assert!(rep.intrinsic.strictly_semistable > 0);
        let rep = strong_envelope_report(3, &LinParam::new(1, 1).unwrap(), Exec::Sequential).unwrap();
        assert!(rep.holds() && rep.intrinsic.strictly_semistable > 0);
        let rep = strong_envelope_report(5, &LinParam::new(2, -1).unwrap(), Exec::Sequential).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.intrinsic.unstable, rep.profiles);
    }

    #[test]
    fn threshold_scan() {
        let rep = n_threshold(2, &LinParam::new(1, 1).unwrap(), Exec::Sequential).unwrap();
        assert!(rep.n0 <= 16);
        let rep = n_threshold(1, &LinParam::new(1, 0).unwrap(), Exec::Sequential).unwrap();
        assert!(rep.n0 >= 1);
        let rep = n_threshold(4, &LinParam::new(1, 7).unwrap(), Exec::Sequential).unwrap();
        let last = rep.last_disagreement.expect("small N must disagree once r > N");
        assert!(last.n_value < rep.n0);
    }
}
