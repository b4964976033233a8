//! Filters and ultrafilters on finite semilattices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::semilattice::Semilattice;

/// Upper bound on the number of elements a brute-force filter search may
/// range over (subsets are enumerated as bitmasks).
pub const MAX_SEARCH_WIDTH: usize = 20;

/// A filter stored as its explicit member set, sorted in carrier order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: BTreeSet<usize>,
}

impl Filter {
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Wraps a member set after checking the filter axioms.
    pub fn from_members(l: &Semilattice, members: impl IntoIterator<Item = usize>) -> Option<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        is_filter_set(l, &members).then_some(Filter { members })
    }

    /// Sorted element names, as printed by the CLI.
    pub fn render(&self, l: &Semilattice) -> String {
        let names: Vec<&str> = self.members().map(|x| l.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn is_filter_set(l: &Semilattice, s: &BTreeSet<usize>) -> bool {
    !s.is_empty()
        && !s.contains(&l.zero())
        && s.iter()
            .all(|&x| s.iter().all(|&y| s.contains(&l.meet(x, y))))
        && s.iter()
            .all(|&x| l.elements().all(|y| !l.leq(x, y) || s.contains(&y)))
}

/// Closure of a family under binary meets.
fn meet_closure(l: &Semilattice, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let fresh: Vec<usize> = set
            .iter()
            .flat_map(|&x| set.iter().map(move |&y| (x, y)))
            .map(|(x, y)| l.meet(x, y))
            .filter(|m| !set.contains(m))
            .collect();
        if fresh.is_empty() {
            return set;
        }
        set.extend(fresh);
    }
}

fn upward_closure(l: &Semilattice, base: &BTreeSet<usize>) -> BTreeSet<usize> {
    l.elements()
        .filter(|&y| base.iter().any(|&x| l.leq(x, y)))
        .collect()
}

/// The smallest filter containing `seed`, completing meet-closure first.
pub fn generated_filter(l: &Semilattice, seed: &[usize]) -> Result<Filter> {
    if seed.is_empty() {
        return Err(Error::EmptyBase);
    }
    let base = meet_closure(l, seed);
    if base.contains(&l.zero()) {
        return Err(Error::ZeroGenerated);
    }
    Ok(Filter {
        members: upward_closure(l, &base),
    })
}

/// Principal filter `[{x}]`; `None` for zero.
pub fn principal_filter(l: &Semilattice, x: usize) -> Option<Filter> {
    generated_filter(l, &[x]).ok()
}

/// Ultrafilter test by the criterion: every `x` is in `f` or orthogonal to
/// some member of `f`.
pub fn is_ultrafilter_criterion(l: &Semilattice, f: &Filter) -> bool {
    l.elements()
        .all(|x| f.contains(x) || f.members().any(|y| l.orthogonal(y, x)))
}

/// Ultrafilter test by maximality: no filter properly extends `f`. Every
/// nonempty set of additional elements is tried.
///
/// Panics if more than [`MAX_SEARCH_WIDTH`] elements lie outside `f`.
pub fn is_ultrafilter_maximality(l: &Semilattice, f: &Filter) -> bool {
    let outside: Vec<usize> = l.elements().filter(|&x| !f.contains(x)).collect();
    assert!(
        outside.len() <= MAX_SEARCH_WIDTH,
        "maximality search over {} elements",
        outside.len()
    );
    (1u64..1 << outside.len()).all(|mask| {
        let mut s = f.members.clone();
        s.extend(
            outside
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x),
        );
        !is_filter_set(l, &s)
    })
}

/// Every filter on `l`, found by scanning all subsets of the carrier.
pub fn all_filters(l: &Semilattice) -> Result<Vec<Filter>> {
    let n = l.len();
    if n > MAX_SEARCH_WIDTH {
        return Err(Error::SizeLimit(format!(
            "filter enumeration over {n} elements (limit {MAX_SEARCH_WIDTH})"
        )));
    }
    let zero = l.zero();
    Ok((1u64..1 << n)
        .filter(|mask| mask >> zero & 1 == 0)
        .filter_map(|mask| {
            let s: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            is_filter_set(l, &s).then_some(Filter { members: s })
        })
        .collect())
}

/// All ultrafilters, one per atom, in carrier order of the atoms.
pub fn all_ultrafilters(l: &Semilattice) -> Result<Vec<Filter>> {
    if l.len() <= 1 {
        return Err(Error::EmptyLattice);
    }
    Ok(l.atoms()
        .into_iter()
        .map(|a| principal_filter(l, a).expect("atoms are nonzero"))
        .collect())
}

/// Full meet of `xs` is nonzero. The empty family has the property.
pub fn has_fip(l: &Semilattice, xs: &[usize]) -> bool {
    let fast = l.meet_all(xs.iter().copied()).is_none_or(|m| m != l.zero());
    if cfg!(debug_assertions) && xs.len() <= 12 {
        debug_assert_eq!(
            fast,
            has_fip_exhaustive(l, xs),
            "meet table disagrees with FIP scan"
        );
    }
    fast
}

/// FIP by checking the meet of every nonempty subfamily.
pub fn has_fip_exhaustive(l: &Semilattice, xs: &[usize]) -> bool {
    assert!(xs.len() < 64);
    (1u64..1 << xs.len()).all(|mask| {
        let sub = xs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x);
        l.meet_all(sub) != Some(l.zero())
    })
}

/// Extends a family with the finite intersection property to an
/// ultrafilter: close under meets, then adjoin every compatible element in
/// carrier order.
pub fn extend_to_ultrafilter(l: &Semilattice, xs: &[usize]) -> Result<Filter> {
    if !has_fip(l, xs) {
        return Err(Error::NoFip);
    }
    if l.len() <= 1 {
        return Err(Error::EmptyLattice);
    }
    let mut current: Option<Filter> = if xs.is_empty() {
        None
    } else {
        Some(generated_filter(l, xs)?)
    };
    for e in l.elements() {
        let compatible = match &current {
            None => e != l.zero(),
            Some(f) => {
                !f.contains(e) && {
                    let least = l.meet_all(f.members()).expect("filters are nonempty");
                    !l.orthogonal(least, e)
                }
            }
        };
        if compatible {
            let mut seed: Vec<usize> = current.iter().flat_map(|f| f.members()).collect();
            seed.push(e);
            current = Some(generated_filter(l, &seed)?);
        }
    }
    Ok(current.expect("a nonzero element exists"))
}

/// The generating element of a principal filter: the meet of all members,
/// provided it generates `f`.
pub fn is_principal(l: &Semilattice, f: &Filter) -> Option<usize> {
    let g = l.meet_all(f.members())?;
    if !f.contains(g) {
        return None;
    }
    let up = principal_filter(l, g)?;
    (up == *f).then_some(g)
}
