//! Independent oracles. They only read colors, order relations and run
//! lengths through the public accessors and recompute everything else from
//! scratch by direct scans.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use ultrapart::pinf::column_min;
use ultrapart::{EpPartition, ScPartition, Semilattice};

// ---- eventually periodic partitions ----

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Past this point every input is periodic with a common period, so a
/// window `[H, 2H)` sees every recurring color combination.
pub fn horizon(ps: &[&EpPartition]) -> usize {
    let start = ps.iter().map(|p| p.prefix().len()).max().unwrap_or(0);
    let period = ps
        .iter()
        .map(|p| p.period().len())
        .fold(1, |a, b| a / gcd(a, b) * b);
    start + period
}

pub fn labels(p: &EpPartition, n: usize) -> Vec<u32> {
    (0..n).map(|m| p.color(m)).collect()
}

/// Two labelings induce the same partition of `0..n`.
pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    let mut ab = HashMap::new();
    let mut ba = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

pub fn block_count(labels: &[u32]) -> usize {
    labels.iter().collect::<HashSet<_>>().len()
}

/// Every `b`-class lies inside one `a`-class.
pub fn coarser(a: &[u32], b: &[u32]) -> bool {
    let mut f = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *f.entry(y).or_insert(x) == x)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn root(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            x = self.0[x];
        }
        x
    }
    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.root(a), self.root(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// Finest common coarsening on `0..n` by joining positions that share a
/// color in either input. Labels are class roots.
pub fn meet_labels(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len();
    let mut d = Dsu((0..n).collect());
    let mut first_a = HashMap::new();
    let mut first_b = HashMap::new();
    for m in 0..n {
        let fa = *first_a.entry(a[m]).or_insert(m);
        let fb = *first_b.entry(b[m]).or_insert(m);
        d.join(m, fa);
        d.join(m, fb);
    }
    (0..n).map(|m| d.root(m) as u32).collect()
}

/// Coarsest common refinement on `0..2h`, or `None` when some pair class
/// does not recur in `[h, 2h)`, i.e. is finite.
pub fn join_labels(a: &[u32], b: &[u32], h: usize) -> Option<Vec<u32>> {
    let pair = |m: usize| (a[m], b[m]);
    let recurring: HashSet<(u32, u32)> = (h..2 * h).map(pair).collect();
    if (0..h).any(|m| !recurring.contains(&pair(m))) {
        return None;
    }
    let mut ids = HashMap::new();
    Some(
        (0..2 * h)
            .map(|m| {
                let next = ids.len() as u32;
                *ids.entry(pair(m)).or_insert(next)
            })
            .collect(),
    )
}

/// The finite classes of the pair coloring, as member lists.
pub fn finite_pair_classes(a: &[u32], b: &[u32], h: usize) -> Vec<Vec<usize>> {
    let pair = |m: usize| (a[m], b[m]);
    let recurring: HashSet<(u32, u32)> = (h..2 * h).map(pair).collect();
    let mut classes: Vec<((u32, u32), Vec<usize>)> = Vec::new();
    for m in 0..h {
        let p = pair(m);
        if recurring.contains(&p) {
            continue;
        }
        match classes.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => v.push(m),
            None => classes.push((p, vec![m])),
        }
    }
    classes.into_iter().map(|(_, v)| v).collect()
}

pub fn orth_coarse(x: &EpPartition, y: &EpPartition) -> bool {
    let n = 2 * horizon(&[x, y]);
    block_count(&meet_labels(&labels(x, n), &labels(y, n))) == 1
}

pub fn orth_fine(x: &EpPartition, y: &EpPartition) -> bool {
    let h = horizon(&[x, y]);
    join_labels(&labels(x, 2 * h), &labels(y, 2 * h), h).is_none()
}

pub fn is_coarser(x: &EpPartition, y: &EpPartition) -> bool {
    let n = 2 * horizon(&[x, y]);
    coarser(&labels(x, n), &labels(y, n))
}

pub fn ep_block_count(x: &EpPartition) -> usize {
    block_count(&labels(x, 2 * horizon(&[x])))
}

// ---- column segmentations ----

/// Cut columns below `limit`, from the run lengths.
pub fn cut_set(x: &ScPartition, limit: usize) -> BTreeSet<usize> {
    let mut cuts = BTreeSet::new();
    let mut c = 0;
    let runs = x
        .prefix_runs()
        .iter()
        .chain(x.periodic_runs().iter().cycle());
    for &r in runs {
        if c >= limit {
            break;
        }
        cuts.insert(c);
        c += r;
    }
    cuts
}

/// Columns past which both cut sets are periodic, doubled for slack.
pub fn sc_column_bound(x: &ScPartition, y: &ScPartition) -> usize {
    let ext = |p: &ScPartition| p.prefix_runs().iter().sum::<usize>();
    let per = |p: &ScPartition| p.periodic_runs().iter().sum::<usize>();
    let (a, b) = (per(x), per(y));
    ext(x).max(ext(y)) + 2 * (a / gcd(a, b) * b)
}

/// Least `n` with `glue_below(x, n)` coarser than `y`, by trying every `n`
/// up to the pairing value of the bound column.
pub fn leq_star_search(x: &ScPartition, y: &ScPartition) -> Option<u64> {
    let bound = column_min(sc_column_bound(x, y) as u64) + 1;
    (1..=bound).find(|&n| x.glue_below(n).is_coarser(y))
}

// ---- finite semilattices ----

/// Greatest lower bound from the order alone.
pub fn glb(l: &Semilattice, x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = l
        .elements()
        .filter(|&z| l.leq(z, x) && l.leq(z, y))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&g| lower.iter().all(|&z| l.leq(z, g)))
}

pub fn is_filter(l: &Semilattice, set: &BTreeSet<usize>) -> bool {
    !set.is_empty()
        && !set.contains(&l.zero())
        && set.iter().all(|&x| {
            l.elements().all(|y| !l.leq(x, y) || set.contains(&y))
                && set
                    .iter()
                    .all(|&y| glb(l, x, y).is_some_and(|m| set.contains(&m)))
        })
}

/// Every filter, by scanning all subsets.
pub fn filters(l: &Semilattice) -> Vec<BTreeSet<usize>> {
    let n = l.len();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .filter(|s| is_filter(l, s))
        .collect()
}

/// Filters with no proper filter superset.
pub fn maximal_filters(l: &Semilattice) -> Vec<BTreeSet<usize>> {
    let all = filters(l);
    all.iter()
        .filter(|f| !all.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
        .cloned()
        .collect()
}

/// Every involution of `0..n`, by recursive pairing.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(f: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = f.iter().position(Option::is_none) else {
            out.push(f.iter().map(|x| x.unwrap()).collect());
            return;
        };
        f[i] = Some(i);
        go(f, out);
        for j in i + 1..f.len() {
            if f[j].is_none() {
                f[i] = Some(j);
                f[j] = Some(i);
                go(f, out);
                f[j] = None;
            }
        }
        f[i] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

/// Involutions satisfying `meet(y, x) = 0  <=>  y <= f(x)`.
pub fn complement_maps(l: &Semilattice) -> Vec<Vec<usize>> {
    involutions(l.len())
        .into_iter()
        .filter(|f| {
            l.elements().all(|x| {
                l.elements()
                    .all(|y| (glb(l, x, y) == Some(l.zero())) == l.leq(y, f[x]))
            })
        })
        .collect()
}
