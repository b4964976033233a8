//! Partitions of ω into finitely many infinite blocks, encoded as eventually
//! periodic colorings.
//!
//! A coloring is a finite `prefix` followed by a `period` repeated forever;
//! blocks are color classes. Every color of the prefix must reappear in the
//! period, otherwise its block would be finite. Values are kept in canonical
//! form (primitive period, shortest prefix, colors numbered by first
//! occurrence), so structural equality is partition equality.
//!
//! Two colorings together are exactly periodic beyond the longer prefix with
//! period the lcm of the two periods. All binary operations therefore only
//! look at positions below that *horizon*; the `*_at` variants accept a
//! larger horizon so the sufficiency of the default can be checked.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub type Color = u32;

/// Largest `k` accepted by [`prime_residue_family`].
pub const MAX_PRIME_FAMILY: usize = 6;
const PRIMES: [usize; MAX_PRIME_FAMILY] = [2, 3, 5, 7, 11, 13];

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpPartition {
    prefix: Vec<Color>,
    period: Vec<Color>,
}

/// Result of a fine join: the join leaves the partitions when some
/// refinement block would be finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BottomOrPartition {
    Bottom,
    Partition(EpPartition),
}

impl BottomOrPartition {
    pub fn is_bottom(&self) -> bool {
        matches!(self, BottomOrPartition::Bottom)
    }

    pub fn partition(&self) -> Option<&EpPartition> {
        match self {
            BottomOrPartition::Bottom => None,
            BottomOrPartition::Partition(p) => Some(p),
        }
    }
}

impl fmt::Display for BottomOrPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BottomOrPartition::Bottom => f.write_str("bottom"),
            BottomOrPartition::Partition(p) => p.fmt(f),
        }
    }
}

/// Prefix length and period after which a family of colorings is jointly
/// periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Horizon {
    pub start: usize,
    pub period: usize,
}

impl Horizon {
    pub fn of(parts: &[&EpPartition]) -> Self {
        parts.iter().fold(
            Horizon {
                start: 0,
                period: 1,
            },
            |h, p| Horizon {
                start: h.start.max(p.prefix.len()),
                period: lcm(h.period, p.period.len()),
            },
        )
    }

    /// First position past one full joint period.
    pub fn end(self) -> usize {
        self.start + self.period
    }
}

impl EpPartition {
    /// Validates and canonicalizes a coloring.
    pub fn new(prefix: Vec<Color>, period: Vec<Color>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::syntax(1, "period must be nonempty"));
        }
        let in_period: HashSet<Color> = period.iter().copied().collect();
        if let Some(&c) = prefix.iter().find(|c| !in_period.contains(c)) {
            return Err(Error::FiniteBlock(c));
        }
        Ok(canonical(
            prefix.into_iter().map(u64::from).collect(),
            period.into_iter().map(u64::from).collect(),
        ))
    }

    /// The one-block partition `{ω}`.
    pub fn trivial() -> Self {
        EpPartition {
            prefix: vec![],
            period: vec![0],
        }
    }

    /// Residues modulo `q`.
    pub fn residues(q: usize) -> Self {
        assert!(q >= 1);
        EpPartition {
            prefix: vec![],
            period: (0..q as Color).collect(),
        }
    }

    /// Builds the canonical partition whose coloring on `[0, start+period)`
    /// is given by `label`, periodic afterwards. Every label used below
    /// `start` must recur in `[start, start+period)`.
    fn from_labels(start: usize, period: usize, label: impl Fn(usize) -> u64) -> Self {
        let prefix: Vec<u64> = (0..start).map(&label).collect();
        let tail: Vec<u64> = (start..start + period).map(&label).collect();
        debug_assert!({
            let t: HashSet<u64> = tail.iter().copied().collect();
            prefix.iter().all(|c| t.contains(c))
        });
        canonical(prefix, tail)
    }

    pub fn prefix(&self) -> &[Color] {
        &self.prefix
    }

    pub fn period(&self) -> &[Color] {
        &self.period
    }

    /// Color of `m`, i.e. the index of its block in order of block minima.
    #[inline]
    pub fn color(&self, m: usize) -> Color {
        let n = self.prefix.len();
        if m < n {
            self.prefix[m]
        } else {
            self.period[(m - n) % self.period.len()]
        }
    }

    pub fn block_count(&self) -> usize {
        self.period
            .iter()
            .copied()
            .max()
            .map_or(0, |c| c as usize + 1)
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count() == 1
    }

    pub fn horizon_with(&self, other: &EpPartition) -> Horizon {
        Horizon::of(&[self, other])
    }

    /// Minimum of every block, ascending. Block `k` has minimum `mmins()[k]`.
    pub fn mmins(&self) -> Vec<usize> {
        let mut mins = vec![usize::MAX; self.block_count()];
        let mut found = 0;
        for m in 0.. {
            let c = self.color(m) as usize;
            if mins[c] == usize::MAX {
                mins[c] = m;
                found += 1;
                if found == mins.len() {
                    break;
                }
            }
        }
        mins
    }

    /// The `n`-th block in order of increasing minimum.
    pub fn nth_block(&self, n: usize) -> Result<EpBlock<'_>> {
        let count = self.block_count();
        if n >= count {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: count,
            });
        }
        Ok(EpBlock {
            partition: self,
            color: n as Color,
            min: self.mmins()[n],
        })
    }

    /// Merges every block that meets `{0, …, n-1}` into one.
    pub fn glue_below(&self, n: usize) -> Result<EpPartition> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, limit: 1 });
        }
        let reach = n.min(self.prefix.len() + self.period.len());
        let glued: HashSet<Color> = (0..reach).map(|m| self.color(m)).collect();
        Ok(self.recolor(|c| {
            if glued.contains(&c) {
                0
            } else {
                u64::from(c) + 1
            }
        }))
    }

    /// Two blocks: block 0 and everything else.
    pub fn two_block_coarsening(&self) -> Result<EpPartition> {
        if self.is_trivial() {
            return Err(Error::TrivialInput(0));
        }
        Ok(self.recolor(|c| u64::from(c != 0)))
    }

    fn recolor(&self, f: impl Fn(Color) -> u64) -> EpPartition {
        canonical(
            self.prefix.iter().map(|&c| f(c)).collect(),
            self.period.iter().map(|&c| f(c)).collect(),
        )
    }

    /// `self ⊑ other` in the coarsening order: every block of `self` is a
    /// union of blocks of `other`.
    pub fn is_coarser(&self, other: &EpPartition) -> bool {
        self.is_coarser_at(other, self.horizon_with(other).end())
    }

    /// [`EpPartition::is_coarser`] scanning `[0, horizon)`;
    /// `horizon` must be at least the joint horizon.
    pub fn is_coarser_at(&self, other: &EpPartition, horizon: usize) -> bool {
        assert!(horizon >= self.horizon_with(other).end());
        let mut image: Vec<Option<Color>> = vec![None; other.block_count()];
        (0..horizon).all(|m| {
            let slot = &mut image[other.color(m) as usize];
            *slot.get_or_insert(self.color(m)) == self.color(m)
        })
    }

    /// Same partition of ω, decided by checking that colors correspond
    /// bijectively on `[0, H)`.
    pub fn equals(&self, other: &EpPartition) -> bool {
        let h = self.horizon_with(other).end();
        let mut fwd: HashMap<Color, Color> = HashMap::new();
        let mut back: HashMap<Color, Color> = HashMap::new();
        (0..h).all(|m| {
            let (a, b) = (self.color(m), other.color(m));
            *fwd.entry(a).or_insert(b) == b && *back.entry(b).or_insert(a) == a
        })
    }

    /// `X ⊓ Y`: the finest common coarsening.
    pub fn coarse_meet(&self, other: &EpPartition) -> EpPartition {
        self.coarse_meet_at(other, self.horizon_with(other).end())
    }

    pub fn coarse_meet_at(&self, other: &EpPartition, horizon: usize) -> EpPartition {
        let h = self.horizon_with(other);
        assert!(horizon >= h.end());
        let offset = self.block_count();
        let mut uf = UnionFind::new(offset + other.block_count());
        for m in 0..horizon {
            uf.union(self.color(m) as usize, offset + other.color(m) as usize);
        }
        let roots: Vec<u64> = (0..offset).map(|c| uf.find(c) as u64).collect();
        EpPartition::from_labels(h.start, h.period, |m| roots[self.color(m) as usize])
    }

    /// `X ⊔ Y`: the coarsest common refinement, or `Bottom` when a pair of
    /// blocks meets in a finite nonempty set.
    pub fn fine_join(&self, other: &EpPartition) -> BottomOrPartition {
        self.fine_join_at(other, self.horizon_with(other).end())
    }

    pub fn fine_join_at(&self, other: &EpPartition, horizon: usize) -> BottomOrPartition {
        let h = self.horizon_with(other);
        assert!(horizon >= h.end());
        let kq = other.block_count() as u64;
        let pair = |m: usize| u64::from(self.color(m)) * kq + u64::from(other.color(m));
        let recurring: HashSet<u64> = (h.start..horizon).map(pair).collect();
        if (0..h.start).any(|m| !recurring.contains(&pair(m))) {
            return BottomOrPartition::Bottom;
        }
        BottomOrPartition::Partition(EpPartition::from_labels(h.start, h.period, pair))
    }

    /// The finite nonempty blocks that prevent `self ⊔ other` from being a
    /// partition, each listed in full.
    pub fn finite_join_blocks(&self, other: &EpPartition) -> Vec<Vec<usize>> {
        let h = self.horizon_with(other);
        let pair = |m: usize| (self.color(m), other.color(m));
        let recurring: HashSet<(Color, Color)> = (h.start..h.end()).map(pair).collect();
        let mut blocks: Vec<((Color, Color), Vec<usize>)> = Vec::new();
        for m in 0..h.start {
            let p = pair(m);
            if recurring.contains(&p) {
                continue;
            }
            match blocks.iter_mut().find(|(q, _)| *q == p) {
                Some((_, members)) => members.push(m),
                None => blocks.push((p, vec![m])),
            }
        }
        blocks.into_iter().map(|(_, b)| b).collect()
    }

    /// `X ⊥ Y` in the coarsening order: the meet is `{ω}`.
    pub fn orth_coarse(&self, other: &EpPartition) -> bool {
        self.coarse_meet(other).is_trivial()
    }

    /// `X ⊥ Y` in the refinement order: the join is `Bottom`.
    pub fn orth_fine(&self, other: &EpPartition) -> bool {
        self.fine_join(other).is_bottom()
    }
}

/// Primitive period, shortest prefix, colors renamed by first occurrence.
fn canonical(mut prefix: Vec<u64>, period: Vec<u64>) -> EpPartition {
    let p = period.len();
    let d = (1..=p)
        .find(|&d| p.is_multiple_of(d) && (0..p).all(|i| period[i] == period[i % d]))
        .expect("d = p always qualifies");
    let mut period = period[..d].to_vec();
    while prefix.last().is_some() && prefix.last() == period.last() {
        prefix.pop();
        period.rotate_right(1);
    }
    let mut names: HashMap<u64, Color> = HashMap::new();
    let mut rename = |c: u64| {
        let next = names.len() as Color;
        *names.entry(c).or_insert(next)
    };
    let prefix = prefix.into_iter().map(&mut rename).collect();
    let period = period.into_iter().map(&mut rename).collect();
    EpPartition { prefix, period }
}

fn join_colors(cs: &[Color]) -> String {
    cs.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for EpPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ep;prefix={};period={}",
            join_colors(&self.prefix),
            join_colors(&self.period)
        )
    }
}

pub(crate) fn parse_list<T: FromStr>(field: &str, key: &str, literal: &str) -> Result<Vec<T>> {
    let Some(body) = field.strip_prefix(key).and_then(|r| r.strip_prefix('=')) else {
        return Err(Error::syntax(
            1,
            format!("expected `{key}=` in `{literal}`"),
        ));
    };
    if body.is_empty() {
        return Ok(vec![]);
    }
    body.split(',')
        .map(|s| {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::syntax(1, format!("bad number `{s}` in `{literal}`")));
            }
            s.parse()
                .map_err(|_| Error::syntax(1, format!("bad number `{s}` in `{literal}`")))
        })
        .collect()
}

impl FromStr for EpPartition {
    type Err = Error;

    /// `ep;prefix=c1,c2,...;period=d1,d2,...`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fields: Vec<&str> = s.split(';').collect();
        let [tag, prefix, period] = fields.as_slice() else {
            return Err(Error::syntax(
                1,
                format!("expected three `;`-separated fields in `{s}`"),
            ));
        };
        if *tag != "ep" {
            return Err(Error::syntax(1, format!("expected `ep` tag in `{s}`")));
        }
        let prefix = parse_list(prefix, "prefix", s)?;
        let period = parse_list(period, "period", s)?;
        EpPartition::new(prefix, period)
    }
}

/// One block of an [`EpPartition`].
#[derive(Debug, Clone, Copy)]
pub struct EpBlock<'a> {
    partition: &'a EpPartition,
    color: Color,
    min: usize,
}

impl EpBlock<'_> {
    pub fn color(&self) -> Color {
        self.color
    }

    pub fn min(&self) -> usize {
        self.min
    }

    pub fn contains(&self, m: usize) -> bool {
        self.partition.color(m) == self.color
    }

    /// Members in increasing order (infinite).
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (self.min..).filter(move |&m| self.contains(m))
    }
}

/// Residue partitions modulo the first `k` primes.
pub fn prime_residue_family(k: usize) -> Result<Vec<EpPartition>> {
    if k > MAX_PRIME_FAMILY {
        return Err(Error::SizeLimit(format!(
            "prime family of size {k} (limit {MAX_PRIME_FAMILY})"
        )));
    }
    Ok(PRIMES[..k]
        .iter()
        .map(|&q| EpPartition::residues(q))
        .collect())
}

fn check_nontrivial(xs: &[EpPartition]) -> Result<()> {
    match xs.iter().position(EpPartition::is_trivial) {
        Some(i) => Err(Error::TrivialInput(i)),
        None => Ok(()),
    }
}

/// Points that meet every block of every input: block minima of the first
/// partition, then the minimum of each block of a later partition that the
/// set collected so far misses.
pub fn coarse_anchor_set(xs: &[EpPartition]) -> Result<BTreeSet<usize>> {
    check_nontrivial(xs)?;
    let mut anchors = BTreeSet::new();
    let Some((first, rest)) = xs.split_first() else {
        return Ok(anchors);
    };
    anchors.extend(first.mmins());
    for x in rest {
        let hit: HashSet<Color> = anchors.iter().map(|&z| x.color(z)).collect();
        let mins = x.mmins();
        anchors.extend(
            (0..x.block_count())
                .filter(|&k| !hit.contains(&(k as Color)))
                .map(|k| mins[k]),
        );
    }
    Ok(anchors)
}

/// A 2-block partition coarse-orthogonal to every input.
///
/// Block 0 is the anchor set from [`coarse_anchor_set`] together with every
/// even number past its maximum; block 1 is the rest.
pub fn witness_coarse_orthogonal(xs: &[EpPartition]) -> Result<EpPartition> {
    let anchors = coarse_anchor_set(xs)?;
    let start = anchors.last().map_or(0, |&z| z + 1);
    let prefix: Vec<u64> = (0..start)
        .map(|m| u64::from(!anchors.contains(&m)))
        .collect();
    let period = if start % 2 == 0 {
        vec![0, 1]
    } else {
        vec![1, 0]
    };
    Ok(canonical(prefix, period))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineCertificate {
    /// Index of the input partition.
    pub index: usize,
    /// The point adjoined for this input.
    pub point: usize,
    /// A finite nonempty block of the witness joined with the input.
    pub block: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineWitness {
    pub witness: EpPartition,
    /// Least element of the infinite class the witness is built around.
    pub core_min: usize,
    pub certificates: Vec<FineCertificate>,
}

/// A 2-block partition fine-orthogonal to every input.
///
/// Points are classed by their block in every input at once; `I` is the
/// infinite class with least minimum. For each input in turn the least
/// point outside the input's block containing `I` (and not yet chosen) is
/// added to `I`. The witness is `{I ∪ chosen, rest}`.
pub fn witness_fine_orthogonal(xs: &[EpPartition]) -> Result<FineWitness> {
    if xs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    check_nontrivial(xs)?;
    let refs: Vec<&EpPartition> = xs.iter().collect();
    let h = Horizon::of(&refs);
    let class = |m: usize| xs.iter().map(|x| x.color(m)).collect::<Vec<Color>>();

    let recurring: HashSet<Vec<Color>> = (h.start..h.end()).map(class).collect();
    let core_min = (0..h.end())
        .find(|&m| recurring.contains(&class(m)))
        .expect("some class recurs");
    let core = class(core_min);

    let mut chosen: Vec<usize> = Vec::with_capacity(xs.len());
    for (x, &home) in xs.iter().zip(&core) {
        let s = (0..)
            .find(|&m| x.color(m) != home && !chosen.contains(&m))
            .expect("non-trivial partitions have a second infinite block");
        chosen.push(s);
    }

    let start = h.start.max(chosen.iter().max().map_or(0, |&s| s + 1));
    let witness = EpPartition::from_labels(start, h.period, |m| {
        u64::from(!(chosen.contains(&m) || class(m) == core))
    });

    let certificates = xs
        .iter()
        .zip(&chosen)
        .enumerate()
        .map(|(index, (x, &point))| {
            let block = witness
                .finite_join_blocks(x)
                .into_iter()
                .find(|b| b.contains(&point))
                .expect("the adjoined point lies in a finite join block");
            FineCertificate {
                index,
                point,
                block,
            }
        })
        .collect();

    Ok(FineWitness {
        witness,
        core_min,
        certificates,
    })
}

/// Evidence that a finite family of basic opens `(X_i)+` does not cover:
/// a non-trivial `Y` orthogonal to every `X_i`. Any ultrafilter through `Y`
/// then contains no `X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeCertificate {
    pub witness: EpPartition,
    /// `{Y}` has the finite intersection property (`Y` is not `{ω}`).
    pub has_fip: bool,
    /// Coarse orthogonality of `Y` to each input, rechecked via the meet.
    pub orthogonal: Vec<bool>,
}

impl EscapeCertificate {
    pub fn holds(&self) -> bool {
        self.has_fip && self.orthogonal.iter().all(|&b| b)
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("Y {}", self.witness),
            format!("fip {}", self.has_fip),
        ];
        out.extend(
            self.orthogonal
                .iter()
                .enumerate()
                .map(|(i, o)| format!("orth Y X{i} {o}")),
        );
        out
    }
}

pub fn noncompactness_escape(xs: &[EpPartition]) -> Result<EscapeCertificate> {
    let witness = witness_coarse_orthogonal(xs)?;
    Ok(EscapeCertificate {
        has_fip: !witness.is_trivial(),
        orthogonal: xs.iter().map(|x| witness.orth_coarse(x)).collect(),
        witness,
    })
}
