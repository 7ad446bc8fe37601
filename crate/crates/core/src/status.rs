use std::fmt;

use serde::Serialize;

use crate::polytope::HullMembership;

/// Stability class of a point. Ordered from worst to best, so the status of a
/// point under a group is the minimum over its torus-level tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    Unstable,
    StrictlySemistable,
    Stable,
}

impl Status {
    pub fn is_stable(self) -> bool {
        self == Status::Stable
    }

    pub fn is_semistable(self) -> bool {
        self != Status::Unstable
    }

    /// Builds a status from the two membership tests `stable ⊆ semistable`.
    pub fn from_tests(stable: bool, semistable: bool) -> Self {
        match (stable, semistable) {
            (true, _) => Status::Stable,
            (false, true) => Status::StrictlySemistable,
            (false, false) => Status::Unstable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Unstable => "Unstable",
            Status::StrictlySemistable => "StrictlySemistable",
            Status::Stable => "Stable",
        }
    }
}

impl From<HullMembership> for Status {
    fn from(m: HullMembership) -> Self {
        match m {
            HullMembership::Outside => Status::Unstable,
            HullMembership::Boundary => Status::StrictlySemistable,
            HullMembership::Interior => Status::Stable,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
