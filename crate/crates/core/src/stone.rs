//! Positive and negative topologies on the ultrafilter set of a finite
//! semilattice.
//!
//! Points are the ultrafilters returned by [`all_ultrafilters`], indexed by
//! position. Point sets are bit masks and open families are materialized in
//! full, so every property checker is a scan.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::filter::{
    all_filters, all_ultrafilters, is_principal, is_ultrafilter_criterion,
    is_ultrafilter_maximality, Filter, MAX_SEARCH_WIDTH,
};
use crate::report::Report;
use crate::semilattice::Semilattice;

/// Spaces with more points are refused; the open family of a discrete space
/// has `2^points` members.
pub const MAX_POINTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(points: usize) -> Self {
        PointSet(if points == 64 {
            u64::MAX
        } else {
            (1u64 << points) - 1
        })
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1 << p)
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, points: usize) -> Self {
        PointSet(!self.0 & Self::full(points).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&p| self.contains(p))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|p| format!("p{p}")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Pos,
    Neg,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Pos => "pos",
            Side::Neg => "neg",
        })
    }
}

/// An explicit, sorted, duplicate-free family of open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenFamily {
    sets: Vec<PointSet>,
}

impl OpenFamily {
    /// Closes `subbase` under finite intersections (the empty intersection
    /// is the whole space), then under arbitrary unions.
    pub fn generate(points: usize, subbase: &[PointSet]) -> Self {
        let mut base: BTreeSet<PointSet> = subbase.iter().copied().collect();
        base.insert(PointSet::full(points));
        loop {
            let fresh: Vec<PointSet> = base
                .iter()
                .flat_map(|&a| base.iter().map(move |&b| a.intersection(b)))
                .filter(|s| !base.contains(s))
                .collect();
            if fresh.is_empty() {
                break;
            }
            base.extend(fresh);
        }
        let mut opens: BTreeSet<PointSet> = BTreeSet::from([PointSet::EMPTY]);
        for &b in &base {
            let grown: Vec<PointSet> = opens.iter().map(|&o| o.union(b)).collect();
            opens.extend(grown);
        }
        OpenFamily {
            sets: opens.into_iter().collect(),
        }
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_subfamily(&self, other: &OpenFamily) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Contains ∅ and the whole space and is closed under pairwise unions
    /// and intersections (enough for a finite family).
    pub fn is_topology(&self, points: usize) -> bool {
        self.contains(PointSet::EMPTY)
            && self.contains(PointSet::full(points))
            && self.iter().all(|a| {
                self.iter()
                    .all(|b| self.contains(a.union(b)) && self.contains(a.intersection(b)))
            })
    }
}

#[derive(Debug, Clone)]
pub struct StoneSpace {
    lattice: Semilattice,
    points: Vec<Filter>,
    side: Side,
    pos: Vec<PointSet>,
    opens: OpenFamily,
}

impl StoneSpace {
    pub fn generate(lattice: &Semilattice, side: Side) -> Result<Self> {
        let points = all_ultrafilters(lattice)?;
        if points.len() > MAX_POINTS {
            return Err(Error::SizeLimit(format!(
                "{} ultrafilters (limit {MAX_POINTS})",
                points.len()
            )));
        }
        let pos: Vec<PointSet> = lattice
            .elements()
            .map(|x| {
                PointSet(
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| p.contains(x))
                        .fold(0, |acc, (i, _)| acc | 1 << i),
                )
            })
            .collect();
        let n = points.len();
        let subbase: Vec<PointSet> = match side {
            Side::Pos => pos.clone(),
            Side::Neg => pos.iter().map(|s| s.complement(n)).collect(),
        };
        let opens = OpenFamily::generate(n, &subbase);
        Ok(StoneSpace {
            lattice: lattice.clone(),
            points,
            side,
            pos,
            opens,
        })
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn points(&self) -> &[Filter] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.points.len())
    }

    pub fn opens(&self) -> &OpenFamily {
        &self.opens
    }

    /// `(x)+`: ultrafilters containing `x`.
    pub fn pos_set(&self, x: usize) -> PointSet {
        self.pos[x]
    }

    /// `(x)-`: ultrafilters not containing `x`.
    pub fn neg_set(&self, x: usize) -> PointSet {
        self.pos[x].complement(self.points.len())
    }

    /// The generating family of this side.
    pub fn generators(&self) -> Vec<PointSet> {
        self.lattice
            .elements()
            .map(|x| match self.side {
                Side::Pos => self.pos_set(x),
                Side::Neg => self.neg_set(x),
            })
            .collect()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.contains(s)
    }

    /// Every singleton is closed.
    pub fn is_t1(&self) -> bool {
        (0..self.point_count())
            .all(|p| self.is_open(PointSet::singleton(p).complement(self.point_count())))
    }

    /// A pair of points without disjoint neighbourhoods, if any. The positive
    /// side scans basic opens `(x)+` only; the negative side scans the full
    /// open family.
    pub fn hausdorff_violation(&self) -> Option<(usize, usize)> {
        let candidates: Vec<PointSet> = match self.side {
            Side::Pos => self.pos.clone(),
            Side::Neg => self.opens.iter().collect(),
        };
        let n = self.point_count();
        for p in 0..n {
            for q in (p + 1)..n {
                let around_p: Vec<PointSet> = candidates
                    .iter()
                    .copied()
                    .filter(|s| s.contains(p))
                    .collect();
                let separated = candidates
                    .iter()
                    .filter(|s| s.contains(q))
                    .any(|&v| around_p.iter().any(|&u| u.intersection(v).is_empty()));
                if !separated {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_hausdorff(&self) -> bool {
        self.hausdorff_violation().is_none()
    }

    /// A point whose singleton is open.
    pub fn isolated_point(&self) -> Option<usize> {
        (0..self.point_count()).find(|&p| self.is_open(PointSet::singleton(p)))
    }

    pub fn is_principal_space(&self) -> bool {
        self.isolated_point().is_some()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.point_count()).all(|p| self.is_open(PointSet::singleton(p)))
    }

    /// Smallest subfamily of `cover` that still covers the space, as indices
    /// into `cover`. Subfamilies are tried in increasing size.
    pub fn finite_subcover(&self, cover: &[PointSet]) -> Result<Vec<usize>> {
        if let Some(bad) = cover.iter().find(|&&s| !self.is_open(s)) {
            return Err(Error::NotOpen(bad.0));
        }
        let full = self.full();
        if cover.iter().fold(PointSet::EMPTY, |a, &b| a.union(b)) != full {
            return Err(Error::NotACover);
        }
        for size in 0..=cover.len() {
            if let Some(pick) = first_covering_choice(cover, size, full) {
                return Ok(pick);
            }
        }
        unreachable!("the cover itself covers")
    }

    pub fn has_finite_subcover(&self, cover: &[PointSet]) -> Result<bool> {
        self.finite_subcover(cover).map(|_| true)
    }

    /// Indices of principal ultrafilters among the points.
    pub fn principal_points(&self) -> PointSet {
        PointSet(
            self.points
                .iter()
                .enumerate()
                .filter(|(_, p)| is_principal(&self.lattice, p).is_some())
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    }

    /// Property lines in the `PROP name STATUS [witness]` layout.
    pub fn property_report(&self) -> Report {
        let mut r = Report::new();
        r.check("t1", self.is_t1(), None);
        let h = self.hausdorff_violation();
        r.push(
            "hausdorff",
            if h.is_none() {
                crate::report::Status::Pass
            } else {
                crate::report::Status::Fail
            },
            h.map(|(p, q)| format!("inseparable p{p} p{q}")),
        );
        r.push(
            "principal_space",
            if self.is_principal_space() {
                crate::report::Status::Pass
            } else {
                crate::report::Status::Fail
            },
            self.isolated_point().map(|p| format!("isolated p{p}")),
        );
        r.check("discrete", self.is_discrete(), None);
        let basic = self.generators();
        match self.finite_subcover(&basic) {
            Ok(pick) => r.check(
                "finite_subcover_of_generators",
                true,
                Some(format!("{} of {}", pick.len(), basic.len())),
            ),
            Err(e) => r.check("finite_subcover_of_generators", false, Some(e.to_string())),
        }
        r
    }
}

fn first_covering_choice(cover: &[PointSet], size: usize, full: PointSet) -> Option<Vec<usize>> {
    fn rec(
        cover: &[PointSet],
        start: usize,
        left: usize,
        acc: PointSet,
        full: PointSet,
        pick: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            return acc == full;
        }
        for i in start..cover.len() {
            pick.push(i);
            if rec(cover, i + 1, left - 1, acc.union(cover[i]), full, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }
    let mut pick = Vec::new();
    rec(cover, 0, size, PointSet::EMPTY, full, &mut pick).then_some(pick)
}

/// Checks the general facts about ultrafilter spaces on `l` and reports
/// each one. A `FAIL` line indicates a library defect, not a data condition.
pub fn framework_report(l: &Semilattice) -> Report {
    let mut r = Report::new();

    if l.len() <= MAX_SEARCH_WIDTH {
        let filters = all_filters(l).expect("width checked");
        let bad = filters
            .iter()
            .find(|f| is_ultrafilter_criterion(l, f) != is_ultrafilter_maximality(l, f));
        r.check(
            "ultrafilter_criterion_matches_maximality",
            bad.is_none(),
            Some(match bad {
                Some(f) => format!("disagree on {}", f.render(l)),
                None => format!("{} filters", filters.len()),
            }),
        );
    } else {
        r.skip(
            "ultrafilter_criterion_matches_maximality",
            format!("carrier larger than {MAX_SEARCH_WIDTH}"),
        );
    }

    let spaces = StoneSpace::generate(l, Side::Pos)
        .and_then(|p| Ok((p, StoneSpace::generate(l, Side::Neg)?)));
    let (pos, neg) = match spaces {
        Ok(s) => s,
        Err(e) => {
            for name in TOPOLOGY_ITEMS {
                r.skip(*name, e.to_string());
            }
            return r;
        }
    };

    r.check("t1_pos", pos.is_t1(), None);
    r.check("t1_neg", neg.is_t1(), None);

    let union_bad = l.elements().find(|&x| {
        let union = l
            .elements()
            .filter(|&y| l.orthogonal(y, x))
            .fold(PointSet::EMPTY, |acc, y| acc.union(pos.pos_set(y)));
        union != pos.neg_set(x)
    });
    r.check(
        "neg_equals_union_of_orthogonal_pos",
        union_bad.is_none(),
        union_bad.map(|x| format!("fails at {}", l.name(x))),
    );
    r.check(
        "neg_topology_within_pos",
        neg.opens().is_subfamily(pos.opens()),
        Some(format!(
            "{} of {} opens",
            neg.opens().len(),
            pos.opens().len()
        )),
    );

    let base_bad = l.elements().find_map(|x| {
        l.elements()
            .find(|&y| pos.pos_set(x).intersection(pos.pos_set(y)) != pos.pos_set(l.meet(x, y)))
            .map(|y| (x, y))
    });
    r.check(
        "pos_intersection_is_pos_of_meet",
        base_bad.is_none(),
        base_bad.map(|(x, y)| format!("fails at {},{}", l.name(x), l.name(y))),
    );

    if l.is_downward_splitting() {
        let principal_exists = !pos.principal_points().is_empty();
        r.check(
            "principal_space_iff_principal_ultrafilter",
            pos.is_principal_space() == principal_exists,
            Some(format!(
                "principal space {}, principal ultrafilter {}",
                pos.is_principal_space(),
                principal_exists
            )),
        );
    } else {
        r.skip(
            "principal_space_iff_principal_ultrafilter",
            "not downward splitting",
        );
    }

    if l.is_principally_generated() {
        let principal = pos.principal_points();
        let miss = pos
            .opens()
            .iter()
            .find(|o| !o.is_empty() && o.intersection(principal).is_empty());
        r.check(
            "principal_points_dense",
            miss.is_none(),
            miss.map(|o| format!("open {o} misses them")),
        );
    } else {
        r.skip("principal_points_dense", "not principally generated");
    }

    if l.complementation().is_present() {
        r.check(
            "complemented_coincidence",
            pos.opens() == neg.opens(),
            Some(format!("{} opens", pos.opens().len())),
        );
    } else {
        r.skip("complemented_coincidence", "not complemented");
    }

    r.check("discrete_pos", pos.is_discrete(), None);
    r.check("discrete_neg", neg.is_discrete(), None);
    r
}

const TOPOLOGY_ITEMS: &[&str] = &[
    "t1_pos",
    "t1_neg",
    "neg_equals_union_of_orthogonal_pos",
    "neg_topology_within_pos",
    "pos_intersection_is_pos_of_meet",
    "principal_space_iff_principal_ultrafilter",
    "principal_points_dense",
    "complemented_coincidence",
    "discrete_pos",
    "discrete_neg",
];
