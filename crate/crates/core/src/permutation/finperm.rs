use serde::{Deserialize, Serialize};

use super::{PartialInjection, PermutationError};

/// A total permutation of ℤ with a finite description.
///
/// `Tabled(T)` agrees with `T` on its domain. Off the domain it aligns the
/// complement `D = ℤ ∖ dom(T)` with `C = ℤ ∖ codom(T)` by order: both are
/// enumerated increasingly as `…, d₋₁, d₀, d₁, …` with `d₀` the least element
/// of `D` that is `≥ 0` (likewise `c₀`), and `d_k ↦ c_k`. The rule is
/// self-inverse under table inversion and gives the identity on the empty
/// table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinPermRepr", into = "FinPermRepr")]
pub enum FinPerm {
    Shift(i64),
    Tabled(Tabled),
}

/// A table together with the rank indices used by the complement alignment.
#[derive(Debug, Clone)]
pub struct Tabled {
    table: PartialInjection,
    dom_pos: HalfLine,
    dom_neg: HalfLine,
    cod_pos: HalfLine,
    cod_neg: HalfLine,
}

impl PartialEq for Tabled {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for Tabled {}

/// Sorted non-negative members of a set restricted to one side of zero.
/// The negative side is stored mirrored through `a ↦ -1 - a`.
#[derive(Debug, Clone, Default)]
struct HalfLine {
    members: Vec<i64>,
    // members[i] - i, non-decreasing
    slack: Vec<i64>,
}

impl HalfLine {
    fn new(mut members: Vec<i64>) -> Self {
        members.sort_unstable();
        let slack = members.iter().enumerate().map(|(i, &m)| m - i as i64).collect();
        Self { members, slack }
    }

    /// Number of members in `[0, x)`.
    fn rank_below(&self, x: i64) -> i64 {
        self.members.partition_point(|&m| m < x) as i64
    }

    /// The `k`-th (0-based) non-negative integer that is not a member.
    fn nth_gap(&self, k: i64) -> i64 {
        k + self.slack.partition_point(|&s| s <= k) as i64
    }
}

fn mirror(a: i64) -> i64 {
    -1 - a
}

fn split(points: impl Iterator<Item = i64>) -> (HalfLine, HalfLine) {
    let (pos, neg): (Vec<i64>, Vec<i64>) = points.partition(|&a| a >= 0);
    (
        HalfLine::new(pos),
        HalfLine::new(neg.into_iter().map(mirror).collect()),
    )
}

fn align(a: i64, from: (&HalfLine, &HalfLine), to: (&HalfLine, &HalfLine)) -> i64 {
    if a >= 0 {
        let k = a - from.0.rank_below(a);
        to.0.nth_gap(k)
    } else {
        let m = mirror(a);
        let k = m - from.1.rank_below(m);
        mirror(to.1.nth_gap(k))
    }
}

impl Tabled {
    fn new(table: PartialInjection) -> Self {
        let (dom_pos, dom_neg) = split(table.domain());
        let (cod_pos, cod_neg) = split(table.codomain());
        Self {
            table,
            dom_pos,
            dom_neg,
            cod_pos,
            cod_neg,
        }
    }

    pub fn table(&self) -> &PartialInjection {
        &self.table
    }

    fn apply(&self, a: i64) -> i64 {
        match self.table.get(a) {
            Some(b) => b,
            None => align(a, (&self.dom_pos, &self.dom_neg), (&self.cod_pos, &self.cod_neg)),
        }
    }

    fn apply_inverse(&self, a: i64) -> i64 {
        match self.table.preimage(a) {
            Some(b) => b,
            None => align(a, (&self.cod_pos, &self.cod_neg), (&self.dom_pos, &self.dom_neg)),
        }
    }
}

/// Extends a finite partial bijection to a permutation of ℤ by the
/// anchored order alignment.
pub fn complete(partial: PartialInjection) -> FinPerm {
    FinPerm::Tabled(Tabled::new(partial))
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::Shift(0)
    }

    pub fn apply(&self, a: i64) -> i64 {
        match self {
            FinPerm::Shift(s) => a + s,
            FinPerm::Tabled(t) => t.apply(a),
        }
    }

    pub fn apply_inverse(&self, a: i64) -> i64 {
        match self {
            FinPerm::Shift(s) => a - s,
            FinPerm::Tabled(t) => t.apply_inverse(a),
        }
    }

    /// `a` under `count` applications (or inverse applications).
    pub fn apply_repeated(&self, a: i64, count: usize, inverse: bool) -> i64 {
        match self {
            FinPerm::Shift(s) => {
                let delta = s * count as i64;
                if inverse {
                    a - delta
                } else {
                    a + delta
                }
            }
            FinPerm::Tabled(t) => (0..count).fold(a, |x, _| {
                if inverse {
                    t.apply_inverse(x)
                } else {
                    t.apply(x)
                }
            }),
        }
    }

    pub fn invert(&self) -> Self {
        match self {
            FinPerm::Shift(s) => FinPerm::Shift(-s),
            FinPerm::Tabled(t) => complete(t.table.inverse()),
        }
    }

    pub fn table(&self) -> Option<&PartialInjection> {
        match self {
            FinPerm::Shift(_) => None,
            FinPerm::Tabled(t) => Some(&t.table),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FinPermRepr {
    #[serde(rename = "shift")]
    Shift { s: i64 },
    #[serde(rename = "table")]
    Table { pairs: PartialInjection },
}

impl TryFrom<FinPermRepr> for FinPerm {
    type Error = PermutationError;

    fn try_from(repr: FinPermRepr) -> Result<Self, Self::Error> {
        Ok(match repr {
            FinPermRepr::Shift { s } => FinPerm::Shift(s),
            FinPermRepr::Table { pairs } => complete(pairs),
        })
    }
}

impl From<FinPerm> for FinPermRepr {
    fn from(p: FinPerm) -> Self {
        match p {
            FinPerm::Shift(s) => FinPermRepr::Shift { s },
            FinPerm::Tabled(t) => FinPermRepr::Table { pairs: t.table },
        }
    }
}
