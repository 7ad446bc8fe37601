//! Torus (semi)stability on a projective space: weight polytopes, the pairing
//! μ(x, λ), and a finite certificate set of one-parameter subgroups.
//!
//! Convention: μ(x, λ) is the maximum of ⟨χ, λ⟩ over the characters χ in the
//! support of x, so that x is semistable iff μ(x, λ) ≥ 0 for every λ and stable
//! iff μ(x, λ) > 0 for every λ. With this convention the one-parameter-subgroup
//! test and the polytope test [`torus_status`] coincide.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::{contains_origin, AffineN, NPoly, Rational, Weight2, WeightSet};
use crate::status::Status;

/// One character per coordinate of the ambient linear space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    coord_weights: Vec<Weight2>,
}

impl TorusAction {
    pub fn new(coord_weights: Vec<Weight2>) -> Result<Self> {
        if coord_weights.is_empty() {
            return Err(Error::EmptySupport("torus action"));
        }
        Ok(Self { coord_weights })
    }

    pub fn weights(&self) -> &[Weight2] {
        &self.coord_weights
    }

    pub fn dim(&self) -> usize {
        self.coord_weights.len()
    }
}

/// Indices of the nonzero coordinates of a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSupport {
    indices: BTreeSet<usize>,
}

impl PointSupport {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(Error::EmptySupport("point support"));
        }
        Ok(Self { indices })
    }

    pub fn full(action: &TorusAction) -> Self {
        Self { indices: (0..action.dim()).collect() }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }
}

/// Direction of a one-parameter subgroup, stored as a primitive representative.
///
/// For N-free weights the components are coprime integers. Perpendiculars of
/// N-dependent weights are themselves N-dependent; those are kept as affine
/// functions of N with integer, content-free coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OnePS {
    x: AffineN,
    y: AffineN,
}

impl OnePS {
    pub fn new(x: i64, y: i64) -> Result<Self> {
        Self::from_direction(x.into(), y.into())
    }

    pub fn from_direction(x: AffineN, y: AffineN) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let parts = [x.n_coeff(), x.const_term(), y.n_coeff(), y.const_term()];
        let denom_lcm = parts.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigInt> =
            parts.iter().map(|q| (*q * Rational::from_integer(denom_lcm.clone())).to_integer()).collect();
        let content = scaled.iter().filter(|v| !v.is_zero()).fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let k = Rational::new(denom_lcm, content);
        Ok(Self { x: x.scale(&k), y: y.scale(&k) })
    }

    pub fn x(&self) -> &AffineN {
        &self.x
    }

    pub fn y(&self) -> &AffineN {
        &self.y
    }

    /// The integer pair when the direction does not depend on N.
    pub fn integer_pair(&self) -> Option<(BigInt, BigInt)> {
        if self.x.is_constant() && self.y.is_constant() {
            Some((self.x.const_term().to_integer(), self.y.const_term().to_integer()))
        } else {
            None
        }
    }

    pub fn pairing(&self, w: &Weight2) -> NPoly {
        &(&w.x.to_npoly() * &self.x.to_npoly()) + &(&w.y.to_npoly() * &self.y.to_npoly())
    }
}

/// Characters of the coordinates in the support; their hull is Δ_x.
pub fn weight_polytope(action: &TorusAction, support: &PointSupport) -> Result<WeightSet> {
    support
        .indices()
        .map(|i| action.coord_weights.get(i).cloned().ok_or(Error::IndexOutOfRange { index: i, len: action.dim() }))
        .collect()
}

pub fn mu(action: &TorusAction, support: &PointSupport, lambda: &OnePS) -> Result<NPoly> {
    let set = weight_polytope(action, support)?;
    mu_of_set(&set, lambda)
}

fn mu_of_set(set: &WeightSet, lambda: &OnePS) -> Result<NPoly> {
    set.iter().map(|w| lambda.pairing(w)).max().ok_or(Error::EmptySet)
}

/// Polytope form of the criterion: stable iff 0 is interior to Δ_x,
/// semistable iff 0 ∈ Δ_x.
pub fn torus_status(action: &TorusAction, support: &PointSupport) -> Result<Status> {
    let set = weight_polytope(action, support)?;
    Ok(contains_origin(&set)?.into())
}

fn perp(w: &Weight2) -> (AffineN, AffineN) {
    (-&w.y, w.x.clone())
}

/// Finite set of directions certifying the universally quantified
/// one-parameter-subgroup criterion on `set`: both signs of every nonzero
/// point, of its perpendicular, and of the perpendicular of every pairwise
/// difference. Falls back to the coordinate axes when every point is 0.
pub fn witness_lambdas(set: &WeightSet) -> Vec<OnePS> {
    let mut out = BTreeSet::new();
    let mut push = |x: AffineN, y: AffineN| {
        if let Ok(l) = OnePS::from_direction(x.clone(), y.clone()) {
            out.insert(l);
        }
        if let Ok(l) = OnePS::from_direction(-x, -y) {
            out.insert(l);
        }
    };
    let pts = set.points();
    for (i, p) in pts.iter().enumerate() {
        if !p.is_zero() {
            push(p.x.clone(), p.y.clone());
            let (px, py) = perp(p);
            push(px, py);
        }
        for q in &pts[i + 1..] {
            let (dx, dy) = perp(&(q - p));
            push(dx, dy);
        }
    }
    if out.is_empty() {
        for (x, y) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            out.insert(OnePS::new(x, y).expect("axis direction"));
        }
    }
    out.into_iter().collect()
}

/// One-parameter-subgroup form of the criterion, quantified over
/// [`witness_lambdas`].
pub fn status_by_one_ps(set: &WeightSet) -> Result<Status> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let worst = witness_lambdas(set)
        .iter()
        .map(|l| mu_of_set(set, l).map(|m| m.signum()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .ok_or_else(|| Error::Internal("empty witness set".into()))?;
    Ok(match worst {
        Ordering::Greater => Status::Stable,
        Ordering::Equal => Status::StrictlySemistable,
        Ordering::Less => Status::Unstable,
    })
}

pub fn torus_status_by_one_ps(action: &TorusAction, support: &PointSupport) -> Result<Status> {
    status_by_one_ps(&weight_polytope(action, support)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::int;

    fn action(ws: &[(i64, i64)]) -> TorusAction {
        TorusAction::new(ws.iter().map(|&(x, y)| Weight2::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn selection_of_support() {
        let a = action(&[(-2, 0), (0, 0), (2, 0)]);
        let s = PointSupport::new([0, 2]).unwrap();
        assert_eq!(weight_polytope(&a, &s).unwrap().points(), &[Weight2::from_ints(-2, 0), Weight2::from_ints(2, 0)]);
        assert_eq!(weight_polytope(&a, &PointSupport::full(&a)).unwrap().points(), a.weights());
        let bad = PointSupport::new([5]).unwrap();
        assert_eq!(weight_polytope(&a, &bad), Err(Error::IndexOutOfRange { index: 5, len: 3 }));
    }

    #[test]
    fn mu_examples() {
        let a = action(&[(-3, 0), (3, 0), (0, 0)]);
        let sym = PointSupport::new([0, 1]).unwrap();
        let m = mu(&a, &sym, &OnePS::new(1, 0).unwrap()).unwrap();
        assert_eq!(m.to_affine().unwrap(), AffineN::from(3));
        let origin = PointSupport::new([2]).unwrap();
        for (x, y) in [(1, 0), (0, -1), (2, 3)] {
            assert_eq!(mu(&a, &origin, &OnePS::new(x, y).unwrap()).unwrap(), NPoly::zero());
        }
    }

    #[test]
    fn one_ps_is_primitive() {
        let l = OnePS::new(4, -6).unwrap();
        assert_eq!(l.integer_pair(), Some((BigInt::from(2), BigInt::from(-3))));
        assert_eq!(OnePS::new(0, 0), Err(Error::ZeroDirection));
        let sym = OnePS::from_direction(AffineN::from_ints(2, 4), AffineN::from(-6)).unwrap();
        assert_eq!(sym.x(), &AffineN::from_ints(1, 2));
        assert_eq!(sym.y(), &AffineN::from(-3));
        assert!(sym.integer_pair().is_none());
    }

    #[test]
    fn status_examples() {
        let a = action(&[(1, 1), (-1, 1), (0, -1), (1, 0), (-1, 0)]);
        assert_eq!(torus_status(&a, &PointSupport::new([0, 1, 2]).unwrap()).unwrap(), Status::Stable);
        assert_eq!(torus_status(&a, &PointSupport::new([3, 4]).unwrap()).unwrap(), Status::StrictlySemistable);
        assert_eq!(torus_status(&a, &PointSupport::new([0, 3]).unwrap()).unwrap(), Status::Unstable);
    }

    #[test]
    fn witness_set_single_point() {
        let d = witness_lambdas(&WeightSet::new(vec![Weight2::from_ints(1, 0)]));
        for (x, y) in [(0, 1), (0, -1), (1, 0), (-1, 0)] {
            assert!(d.contains(&OnePS::new(x, y).unwrap()));
        }
        assert!(d.len() <= 2 * (1 + 1));
    }

    #[test]
    fn witness_set_size_bound() {
        let pts: Vec<Weight2> =
            [(1, 2), (-3, 1), (0, -5), (4, 4), (1, 2)].iter().map(|&(x, y)| Weight2::from_ints(x, y)).collect();
        let k = pts.len();
        assert!(witness_lambdas(&WeightSet::new(pts)).len() <= 2 * (k + k * k));
    }

    #[test]
    fn witness_set_all_zero_uses_axes() {
        let d = witness_lambdas(&WeightSet::new(vec![Weight2::origin(), Weight2::origin()]));
        assert_eq!(d.len(), 4);
        assert_eq!(status_by_one_ps(&WeightSet::new(vec![Weight2::origin()])).unwrap(), Status::StrictlySemistable);
    }

    #[test]
    fn one_ps_and_polytope_agree_symbolically() {
        let set = WeightSet::new(vec![
            Weight2::new(AffineN::from_ints(1, -2), AffineN::from_ints(-1, 1)),
            Weight2::new(AffineN::from_ints(-1, 2), AffineN::from_ints(-1, 1)),
            Weight2::new(AffineN::from(0), AffineN::from(1)),
        ]);
        assert_eq!(status_by_one_ps(&set).unwrap(), Status::Stable);
        assert_eq!(Status::from(contains_origin(&set).unwrap()), Status::Stable);
    }

    #[test]
    fn scaling_invariance() {
        let pts = vec![Weight2::from_ints(3, -1), Weight2::from_ints(-2, 4), Weight2::from_ints(0, -3)];
        let base = status_by_one_ps(&WeightSet::new(pts.clone())).unwrap();
        let k = int(7) / int(3);
        let scaled: WeightSet = pts.iter().map(|p| p.scale_rational(&k)).collect();
        assert_eq!(status_by_one_ps(&scaled).unwrap(), base);
    }
}
