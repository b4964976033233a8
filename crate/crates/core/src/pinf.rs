//! Partitions of ω into infinitely many infinite blocks, built from the
//! columns of the Cantor pairing function.
//!
//! `π(i, j) = (i+j)(i+j+1)/2 + j`; column `j` is `{π(i, j) : i ∈ ω}`. A
//! partition in this class groups consecutive columns: run lengths segment
//! the column indices `0, 1, 2, …` and each segment is one block. The run
//! sequence is eventually periodic, and so is the *cut set*
//! `{0} ∪ {cumulative run sums}`, i.e. the first column of every block.
//!
//! With this encoding `X` is coarser than `Y` exactly when the cuts of `X`
//! are cuts of `Y`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{lcm, parse_list};

/// `π(i, j) = (i+j)(i+j+1)/2 + j`.
pub fn pair(i: u64, j: u64) -> u64 {
    let s = i + j;
    s * (s + 1) / 2 + j
}

/// Inverse of [`pair`].
pub fn unpair(m: u64) -> (u64, u64) {
    // w = floor((sqrt(8m+1) - 1) / 2), corrected for float rounding
    let mut w = ((((8 * m + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    while w * (w + 1) / 2 > m {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= m {
        w += 1;
    }
    let j = m - w * (w + 1) / 2;
    (w - j, j)
}

/// Least element of column `j`: `π(0, j) = (j² + 3j)/2`.
pub fn column_min(j: u64) -> u64 {
    (j * j + 3 * j) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScPartition {
    prefix_runs: Vec<usize>,
    periodic_runs: Vec<usize>,
}

/// Result of a coarse meet inside the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScMeet {
    Partition(ScPartition),
    /// Only finitely many common cuts: the meet has finitely many blocks and
    /// leaves the class. Carries the common cuts, starting with 0.
    FiniteRemainder(Vec<usize>),
}

impl fmt::Display for ScMeet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScMeet::Partition(p) => p.fmt(f),
            ScMeet::FiniteRemainder(cuts) => {
                let cuts: Vec<String> = cuts.iter().map(|c| c.to_string()).collect();
                write!(f, "finite-remainder cuts={}", cuts.join(","))
            }
        }
    }
}

/// Shortest prefix and primitive period of an eventually periodic run list.
fn canonical_runs(mut prefix: Vec<usize>, periodic: Vec<usize>) -> ScPartition {
    let p = periodic.len();
    let d = (1..=p)
        .find(|&d| p.is_multiple_of(d) && (0..p).all(|i| periodic[i] == periodic[i % d]))
        .expect("d = p qualifies");
    let mut periodic = periodic[..d].to_vec();
    while prefix.last().is_some() && prefix.last() == periodic.last() {
        prefix.pop();
        periodic.rotate_right(1);
    }
    ScPartition {
        prefix_runs: prefix,
        periodic_runs: periodic,
    }
}

impl ScPartition {
    pub fn new(prefix_runs: Vec<usize>, periodic_runs: Vec<usize>) -> Result<Self> {
        if periodic_runs.is_empty() {
            return Err(Error::syntax(1, "periodic runs must be nonempty"));
        }
        if prefix_runs.iter().chain(&periodic_runs).any(|&r| r == 0) {
            return Err(Error::ZeroRun);
        }
        Ok(canonical_runs(prefix_runs, periodic_runs))
    }

    /// Every column is its own block; the finest member of the class.
    pub fn columns() -> Self {
        ScPartition {
            prefix_runs: vec![],
            periodic_runs: vec![1],
        }
    }

    pub fn prefix_runs(&self) -> &[usize] {
        &self.prefix_runs
    }

    pub fn periodic_runs(&self) -> &[usize] {
        &self.periodic_runs
    }

    fn prefix_extent(&self) -> usize {
        self.prefix_runs.iter().sum()
    }

    fn period_sum(&self) -> usize {
        self.periodic_runs.iter().sum()
    }

    /// Run `k` of the (infinite) run sequence.
    fn run(&self, k: usize) -> usize {
        let lp = self.prefix_runs.len();
        if k < lp {
            self.prefix_runs[k]
        } else {
            self.periodic_runs[(k - lp) % self.periodic_runs.len()]
        }
    }

    /// Cut `t`: the first column of block `t`.
    pub fn cut(&self, t: usize) -> usize {
        let lp = self.prefix_runs.len();
        if t <= lp {
            return self.prefix_runs[..t].iter().sum();
        }
        let k = t - lp;
        let lper = self.periodic_runs.len();
        self.prefix_extent()
            + (k / lper) * self.period_sum()
            + self.periodic_runs[..k % lper].iter().sum::<usize>()
    }

    /// The cut set in increasing order (infinite).
    pub fn cuts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut acc = 0;
        std::iter::once(0).chain((0..).map(move |k| {
            acc += self.run(k);
            acc
        }))
    }

    pub fn is_cut(&self, c: usize) -> bool {
        let start = self.prefix_extent();
        if c < start {
            let mut acc = 0;
            for &r in &self.prefix_runs {
                if acc == c {
                    return true;
                }
                acc += r;
            }
            return false;
        }
        let r = (c - start) % self.period_sum();
        let mut acc = 0;
        for &q in &self.periodic_runs {
            if acc == r {
                return true;
            }
            acc += q;
        }
        false
    }

    /// Index of the block containing column `j`.
    pub fn group_of_column(&self, j: usize) -> usize {
        let lp = self.prefix_runs.len();
        let start = self.prefix_extent();
        if j < start {
            let mut acc = 0;
            for (t, &r) in self.prefix_runs.iter().enumerate() {
                acc += r;
                if j < acc {
                    return t;
                }
            }
            unreachable!()
        }
        let rem = j - start;
        let q = rem / self.period_sum();
        let mut r = rem % self.period_sum();
        let mut idx = 0;
        while r >= self.periodic_runs[idx] {
            r -= self.periodic_runs[idx];
            idx += 1;
        }
        lp + q * self.periodic_runs.len() + idx
    }

    /// Column positions past which both cut sets are periodic, and the
    /// joint period.
    fn joint(&self, other: &ScPartition) -> (usize, usize) {
        (
            self.prefix_extent().max(other.prefix_extent()),
            lcm(self.period_sum(), other.period_sum()),
        )
    }

    pub fn horizon_with(&self, other: &ScPartition) -> usize {
        let (start, period) = self.joint(other);
        start + period
    }

    /// `self ⊑ other`: every block of `self` is a union of blocks of
    /// `other`, i.e. the cuts of `self` are cuts of `other`.
    pub fn is_coarser(&self, other: &ScPartition) -> bool {
        self.is_coarser_at(other, self.horizon_with(other))
    }

    /// [`ScPartition::is_coarser`] over column horizon `horizon`, which
    /// must be at least the joint horizon.
    pub fn is_coarser_at(&self, other: &ScPartition, horizon: usize) -> bool {
        assert!(horizon >= self.horizon_with(other));
        self.cuts()
            .take_while(|&c| c < horizon)
            .all(|c| other.is_cut(c))
    }

    /// Finest common coarsening: the segmentation by the common cuts.
    pub fn coarse_meet(&self, other: &ScPartition) -> ScMeet {
        let (start, period) = self.joint(other);
        let common: Vec<usize> = self
            .cuts()
            .take_while(|&c| c < start + period)
            .filter(|&c| other.is_cut(c))
            .collect();
        let Some(first_tail) = common.iter().position(|&c| c >= start) else {
            return ScMeet::FiniteRemainder(common);
        };
        let head = &common[..=first_tail];
        let tail = &common[first_tail..];
        let prefix: Vec<usize> = head.windows(2).map(|w| w[1] - w[0]).collect();
        let mut periodic: Vec<usize> = tail.windows(2).map(|w| w[1] - w[0]).collect();
        periodic.push(tail[0] + period - tail[tail.len() - 1]);
        ScMeet::Partition(canonical_runs(prefix, periodic))
    }

    /// Coarse orthogonality: the meet is the one-block partition.
    pub fn orth_coarse(&self, other: &ScPartition) -> bool {
        self.coarse_meet(other) == ScMeet::FiniteRemainder(vec![0])
    }

    /// Block minima in increasing order (infinite).
    pub fn mmins(&self) -> impl Iterator<Item = u64> + '_ {
        self.cuts().map(|c| column_min(c as u64))
    }

    /// The `n`-th block in order of increasing minimum.
    pub fn nth_block(&self, n: usize) -> ScBlock {
        let first = self.cut(n);
        let end = self.cut(n + 1);
        ScBlock {
            index: n,
            first_column: first,
            end_column: end,
        }
    }

    /// `X ⊓ {n}`: merges every block meeting `{0, …, n-1}`. Those are the
    /// blocks holding a column `j` with `π(0, j) < n`, an initial run of
    /// blocks. `n = 0` glues nothing.
    pub fn glue_below(&self, n: u64) -> ScPartition {
        if n == 0 {
            return self.clone();
        }
        let mut last_col = 0u64;
        while column_min(last_col + 1) < n {
            last_col += 1;
        }
        let g = self.group_of_column(last_col as usize);
        let lp = self.prefix_runs.len();
        let mut prefix = vec![self.cut(g + 1)];
        let periodic = if g < lp {
            prefix.extend_from_slice(&self.prefix_runs[g + 1..]);
            self.periodic_runs.clone()
        } else {
            let mut p = self.periodic_runs.clone();
            let len = p.len();
            p.rotate_left((g + 1 - lp) % len);
            p
        };
        canonical_runs(prefix, periodic)
    }

    /// `X ⊑* Y`: the least `n >= 1` with `glue_below(X, n) ⊑ Y`, or `None`
    /// if there is none.
    ///
    /// Gluing below `n` deletes exactly the cuts inside the glued region, so
    /// a witness exists iff only finitely many cuts of `X` are not cuts of
    /// `Y`, and the least one is determined by the largest such cut.
    pub fn leq_star(&self, other: &ScPartition) -> Option<u64> {
        let (start, period) = self.joint(other);
        let missing: Vec<usize> = self
            .cuts()
            .take_while(|&c| c < start + period)
            .filter(|&c| !other.is_cut(c))
            .collect();
        match missing.last() {
            None => Some(1),
            Some(&c) if c >= start => None,
            Some(&c) => Some(column_min(c as u64) + 1),
        }
    }

    /// A cut of `self` missing from `other` that recurs with the joint
    /// period, proving `leq_star` has no witness.
    pub fn recurring_missing_cut(&self, other: &ScPartition) -> Option<(usize, usize)> {
        let (start, period) = self.joint(other);
        self.cuts()
            .take_while(|&c| c < start + period)
            .find(|&c| c >= start && !other.is_cut(c))
            .map(|c| (c, period))
    }
}

impl fmt::Display for ScPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "sc;runs={};periodic={}",
            join(&self.prefix_runs),
            join(&self.periodic_runs)
        )
    }
}

impl FromStr for ScPartition {
    type Err = Error;

    /// `sc;runs=r1,...;periodic=q1,...`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fields: Vec<&str> = s.split(';').collect();
        let [tag, runs, periodic] = fields.as_slice() else {
            return Err(Error::syntax(
                1,
                format!("expected three `;`-separated fields in `{s}`"),
            ));
        };
        if *tag != "sc" {
            return Err(Error::syntax(1, format!("expected `sc` tag in `{s}`")));
        }
        ScPartition::new(
            parse_list(runs, "runs", s)?,
            parse_list(periodic, "periodic", s)?,
        )
    }
}

/// Block `index` of an [`ScPartition`]: columns `first_column..end_column`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScBlock {
    pub index: usize,
    pub first_column: usize,
    pub end_column: usize,
}

impl ScBlock {
    pub fn min(&self) -> u64 {
        column_min(self.first_column as u64)
    }

    pub fn contains(&self, m: u64) -> bool {
        let (_, j) = unpair(m);
        (self.first_column as u64..self.end_column as u64).contains(&j)
    }
}
