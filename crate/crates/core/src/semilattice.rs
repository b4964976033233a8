//! Finite meet-semilattices with a least element.
//!
//! A [`Semilattice`] is built once, either from a textual description
//! (`semilattice v1` format) or by one of the generators, and is immutable
//! afterwards. The order relation and the meet operation are materialized as
//! dense tables, so every query downstream is a lookup.
//!
//! Elements are addressed by their index in declaration order ("carrier
//! order"); names are only used at the edges (parsing and printing).

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest carrier accepted by [`all_semilattices`].
pub const MAX_ENUMERATED_SIZE: usize = 5;

/// Unvalidated semilattice description: element names, the designated zero
/// and generating order pairs `(below, above)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawDescription {
    pub elements: Vec<String>,
    pub zero: String,
    pub leq_pairs: Vec<(String, String)>,
}

impl RawDescription {
    /// Parses the line-based `semilattice v1` format.
    ///
    /// `#` starts a comment; blank lines are ignored. The first meaningful
    /// line must be the header.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawDescription::default();
        let mut seen_header = false;
        let mut seen_elements = false;
        let mut seen_zero = false;

        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let mut words = line.split_whitespace();
            let Some(keyword) = words.next() else {
                continue;
            };
            let args: Vec<&str> = words.collect();

            if !seen_header {
                if keyword == "semilattice" && args == ["v1"] {
                    seen_header = true;
                    continue;
                }
                return Err(Error::syntax(lineno, "expected header `semilattice v1`"));
            }

            match keyword {
                "elements" => {
                    if seen_elements {
                        return Err(Error::syntax(lineno, "duplicate `elements` line"));
                    }
                    if args.is_empty() {
                        return Err(Error::syntax(lineno, "`elements` needs at least one id"));
                    }
                    raw.elements = args.iter().map(|s| s.to_string()).collect();
                    seen_elements = true;
                }
                "zero" => {
                    if seen_zero {
                        return Err(Error::syntax(lineno, "duplicate `zero` line"));
                    }
                    let [z] = args.as_slice() else {
                        return Err(Error::syntax(lineno, "`zero` takes exactly one id"));
                    };
                    raw.zero = z.to_string();
                    seen_zero = true;
                }
                "leq" => {
                    let [a, b] = args.as_slice() else {
                        return Err(Error::syntax(lineno, "`leq` takes exactly two ids"));
                    };
                    raw.leq_pairs.push((a.to_string(), b.to_string()));
                }
                other => {
                    return Err(Error::syntax(lineno, format!("unknown keyword `{other}`")));
                }
            }
        }

        if !seen_header {
            return Err(Error::syntax(0, "missing header `semilattice v1`"));
        }
        if !seen_elements {
            return Err(Error::syntax(0, "missing `elements` line"));
        }
        if !seen_zero {
            return Err(Error::syntax(0, "missing `zero` line"));
        }
        Ok(raw)
    }
}

/// A validated finite meet-semilattice with least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    zero: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
}

impl Semilattice {
    /// Parses and validates a `semilattice v1` description.
    pub fn parse(text: &str) -> Result<Self> {
        Self::validate(&RawDescription::parse(text)?)
    }

    /// Closes the generating pairs reflexively and transitively, checks the
    /// partial-order and zero axioms and tabulates all meets.
    pub fn validate(raw: &RawDescription) -> Result<Self> {
        let mut index = HashMap::with_capacity(raw.elements.len());
        for (i, name) in raw.elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let zero = lookup(&raw.zero)?;
        let n = raw.elements.len();

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in &raw.leq_pairs {
            let (a, b) = (lookup(a)?, lookup(b)?);
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }

        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(
                        raw.elements[i].clone(),
                        raw.elements[j].clone(),
                    ));
                }
            }
        }
        for x in 0..n {
            if !leq[zero * n + x] {
                return Err(Error::NoZero {
                    zero: raw.elements[zero].clone(),
                    element: raw.elements[x].clone(),
                });
            }
        }

        let meet = meet_table_from_order(n, &leq)
            .map_err(|(x, y)| Error::NoMeet(raw.elements[x].clone(), raw.elements[y].clone()))?;

        Ok(Semilattice {
            names: raw.elements.clone(),
            index,
            zero,
            leq,
            meet,
        })
    }

    /// Builds a semilattice from a full order relation and a meet table that
    /// the caller guarantees to be consistent. Used by the generators.
    pub(crate) fn from_tables(
        names: Vec<String>,
        zero: usize,
        leq: Vec<bool>,
        meet: Vec<usize>,
    ) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let s = Semilattice {
            names,
            index,
            zero,
            leq,
            meet,
        };
        debug_assert!(s.check_laws().is_ok());
        s
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Index of the least element.
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up an element by name.
    pub fn elem(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Element indices in carrier order.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Name-based meet, for callers holding identifiers.
    pub fn meet_named(&self, x: &str, y: &str) -> Result<&str> {
        let m = self.meet(self.elem(x)?, self.elem(y)?);
        Ok(self.name(m))
    }

    pub fn leq_named(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq(self.elem(x)?, self.elem(y)?))
    }

    /// `x ⊥ y`: the meet is the least element.
    #[inline]
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == self.zero
    }

    pub fn orthogonal_named(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.orthogonal(self.elem(x)?, self.elem(y)?))
    }

    /// Meet of a nonempty family; `None` for the empty family.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> Option<usize> {
        xs.into_iter().reduce(|a, b| self.meet(a, b))
    }

    /// Nonzero elements with nothing strictly between them and zero.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.zero)
            .filter(|&x| {
                self.elements()
                    .all(|y| !self.leq(y, x) || y == x || y == self.zero)
            })
            .collect()
    }

    pub fn is_atom(&self, x: usize) -> bool {
        x != self.zero
            && self
                .elements()
                .all(|y| !self.leq(y, x) || y == x || y == self.zero)
    }

    /// Decides downward splitting, returning an orthogonal witness pair below
    /// every non-atom, or the first element without one.
    pub fn downward_splitting(&self) -> Splitting {
        let mut witnesses = Vec::new();
        for x in self.elements() {
            if x == self.zero || self.is_atom(x) {
                continue;
            }
            let below: Vec<usize> = self
                .elements()
                .filter(|&y| y != self.zero && self.leq(y, x))
                .collect();
            let pair = below.iter().enumerate().find_map(|(i, &a)| {
                below[i + 1..]
                    .iter()
                    .find(|&&b| self.orthogonal(a, b))
                    .map(|&b| (a, b))
            });
            match pair {
                Some(pair) => witnesses.push((x, pair)),
                None => return Splitting::Violated { element: x },
            }
        }
        Splitting::Splits { witnesses }
    }

    pub fn is_downward_splitting(&self) -> bool {
        matches!(self.downward_splitting(), Splitting::Splits { .. })
    }

    /// Every nonzero element lies above some `y` with `[{y}]` an
    /// ultrafilter. On a finite semilattice those `y` are exactly the atoms.
    pub fn is_principally_generated(&self) -> bool {
        let atoms = self.atoms();
        self.elements()
            .filter(|&x| x != self.zero)
            .all(|x| atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// Searches for the complementation map.
    ///
    /// The only candidate for `∼x` is the maximum of the orthogonal set
    /// `{y : y ∧ x = 0}`. If every candidate exists, (C1) and (C2) are
    /// checked globally.
    pub fn complementation(&self) -> Complementation {
        let n = self.len();
        let mut mapping = Vec::with_capacity(n);
        for x in self.elements() {
            let orth: Vec<usize> = self.elements().filter(|&y| self.orthogonal(y, x)).collect();
            let max = orth
                .iter()
                .copied()
                .find(|&m| orth.iter().all(|&y| self.leq(y, m)));
            match max {
                Some(m) => mapping.push(m),
                None => {
                    return Complementation::Absent {
                        element: x,
                        reason: AbsenceReason::NoMaximum,
                    }
                }
            }
        }
        let map = ComplementMap { mapping };
        match map.first_violation(self) {
            None => Complementation::Present(map),
            Some((element, reason)) => Complementation::Absent { element, reason },
        }
    }

    /// The reversed semilattice: `x ≼ y` iff `∼x ⊑ ∼y`, with least element
    /// `∼0`. Verifies that `∼` is an isomorphism onto the result.
    pub fn reversed(&self, cmap: &ComplementMap) -> Result<Semilattice> {
        if let Some((x, reason)) = cmap.first_violation(self) {
            return Err(Error::NotComplemented(format!(
                "{reason} at `{}`",
                self.name(x)
            )));
        }
        let n = self.len();
        let c = &cmap.mapping;
        let mut leq = vec![false; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(c[x], c[y]);
                // ∼ carries meets of L to meets of the reversed order.
                meet[x * n + y] = c[self.meet(c[x], c[y])];
            }
        }
        let rev = Semilattice::from_tables(self.names.clone(), c[self.zero], leq, meet);
        rev.check_laws()
            .map_err(|e| Error::NotComplemented(format!("reversed order invalid: {e}")))?;
        if !is_isomorphism(self, &rev, c) {
            return Err(Error::NotComplemented(
                "complement map is not an isomorphism onto the reversed order".into(),
            ));
        }
        Ok(rev)
    }

    /// Checks every semilattice axiom over all pairs and triples.
    pub fn check_laws(&self) -> std::result::Result<(), String> {
        let n = self.len();
        if self.zero >= n {
            return Err("zero out of range".into());
        }
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(format!("leq not reflexive at {}", self.name(x)));
            }
            if !self.leq(self.zero, x) || self.meet(self.zero, x) != self.zero {
                return Err(format!("zero not least at {}", self.name(x)));
            }
            if self.meet(x, x) != x {
                return Err(format!("meet not idempotent at {}", self.name(x)));
            }
            for y in 0..n {
                let m = self.meet(x, y);
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(format!("leq not antisymmetric at {}", self.name(x)));
                }
                if m != self.meet(y, x) {
                    return Err(format!(
                        "meet not commutative at {},{}",
                        self.name(x),
                        self.name(y)
                    ));
                }
                if !self.leq(m, x) || !self.leq(m, y) {
                    return Err(format!(
                        "meet not a lower bound at {},{}",
                        self.name(x),
                        self.name(y)
                    ));
                }
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Err("leq not transitive".into());
                    }
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, m) {
                        return Err(format!(
                            "meet of {},{} not greatest",
                            self.name(x),
                            self.name(y)
                        ));
                    }
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z)) {
                        return Err("meet not associative".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes in the `semilattice v1` format, listing covering pairs only.
    pub fn to_text(&self) -> String {
        let mut out = String::from("semilattice v1\n");
        let _ = writeln!(out, "elements {}", self.names.join(" "));
        let _ = writeln!(out, "zero {}", self.name(self.zero));
        for (a, b) in self.covers() {
            let _ = writeln!(out, "leq {} {}", self.name(a), self.name(b));
        }
        out
    }

    /// Covering pairs `a ⋖ b` in carrier order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Meet table of a finite partial order with least element, or the first pair
/// that has two maximal common lower bounds.
fn meet_table_from_order(
    n: usize,
    leq: &[bool],
) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let mut meet = vec![0usize; n * n];
    for x in 0..n {
        for y in x..n {
            let lower: Vec<usize> = (0..n)
                .filter(|&k| leq[k * n + x] && leq[k * n + y])
                .collect();
            let maximal: Vec<usize> = lower
                .iter()
                .copied()
                .filter(|&k| !lower.iter().any(|&j| j != k && leq[k * n + j]))
                .collect();
            match maximal.as_slice() {
                [m] => {
                    meet[x * n + y] = *m;
                    meet[y * n + x] = *m;
                }
                _ => return Err((x, y)),
            }
        }
    }
    Ok(meet)
}

/// `f` is a bijection with `x ⊑ y` in `a` iff `f(x) ⊑ f(y)` in `b`.
pub fn is_isomorphism(a: &Semilattice, b: &Semilattice, f: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || f.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in f {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| a.leq(x, y) == b.leq(f[x], f[y])))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    /// One `(x, (y0, y1))` entry per non-atom nonzero `x`.
    Splits {
        witnesses: Vec<(usize, (usize, usize))>,
    },
    Violated {
        element: usize,
    },
}

/// An involution `∼` satisfying (C1) and (C2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementMap {
    mapping: Vec<usize>,
}

impl ComplementMap {
    /// Wraps an arbitrary map; use [`ComplementMap::verify`] before trusting it.
    pub fn from_mapping(mapping: Vec<usize>) -> Self {
        ComplementMap { mapping }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn verify(&self, lattice: &Semilattice) -> bool {
        self.first_violation(lattice).is_none()
    }

    fn first_violation(&self, l: &Semilattice) -> Option<(usize, AbsenceReason)> {
        if self.mapping.len() != l.len() || self.mapping.iter().any(|&y| y >= l.len()) {
            return Some((0, AbsenceReason::NotTotal));
        }
        for x in l.elements() {
            if self.mapping[self.mapping[x]] != x {
                return Some((x, AbsenceReason::NotInvolution));
            }
            for y in l.elements() {
                if l.orthogonal(y, x) != l.leq(y, self.mapping[x]) {
                    return Some((x, AbsenceReason::OrthogonalityMismatch));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsenceReason {
    /// The orthogonal set of the element has no maximum.
    NoMaximum,
    /// (C1) fails.
    NotInvolution,
    /// (C2) fails.
    OrthogonalityMismatch,
    NotTotal,
}

impl std::fmt::Display for AbsenceReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AbsenceReason::NoMaximum => "orthogonal set has no maximum",
            AbsenceReason::NotInvolution => "(C1) fails",
            AbsenceReason::OrthogonalityMismatch => "(C2) fails",
            AbsenceReason::NotTotal => "map is not total on the carrier",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Complementation {
    Present(ComplementMap),
    Absent {
        element: usize,
        reason: AbsenceReason,
    },
}

impl Complementation {
    pub fn map(&self) -> Option<&ComplementMap> {
        match self {
            Complementation::Present(m) => Some(m),
            Complementation::Absent { .. } => None,
        }
    }

    pub fn is_present(&self) -> bool {
        self.map().is_some()
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// The chain `c0 < c1 < … < c(n-1)`.
pub fn chain(n: usize) -> Result<Semilattice> {
    if n == 0 {
        return Err(Error::SizeLimit("chain needs n >= 1".into()));
    }
    let names = (0..n).map(|i| format!("c{i}")).collect();
    let mut leq = vec![false; n * n];
    let mut meet = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = x <= y;
            meet[x * n + y] = x.min(y);
        }
    }
    Ok(Semilattice::from_tables(names, 0, leq, meet))
}

pub const MAX_POWERSET_RANK: usize = 8;

/// Subsets of `{0,…,n-1}` under inclusion, in bitmask order. Element names
/// are set literals such as `{}` and `{0,2}`.
pub fn powerset_lattice(n: usize) -> Result<Semilattice> {
    if n == 0 || n > MAX_POWERSET_RANK {
        return Err(Error::SizeLimit(format!(
            "powerset_lattice needs 1 <= n <= {MAX_POWERSET_RANK}"
        )));
    }
    let size = 1usize << n;
    let names = (0..size).map(|mask| set_name(mask, n)).collect();
    let mut leq = vec![false; size * size];
    let mut meet = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            leq[x * size + y] = x & !y == 0;
            meet[x * size + y] = x & y;
        }
    }
    Ok(Semilattice::from_tables(names, 0, leq, meet))
}

fn set_name(mask: usize, n: usize) -> String {
    let items: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

pub const MAX_PARTITION_RANK: usize = 7;

/// Partitions of `{0,…,n-1}` ordered by coarsening (`X ⊑ Y` iff every block
/// of `X` is a union of blocks of `Y`). The one-block partition is zero and
/// meets are finest common coarsenings. Names list blocks joined by `|`,
/// e.g. `01|2`.
pub fn finite_partition_lattice(n: usize) -> Result<Semilattice> {
    if n == 0 || n > MAX_PARTITION_RANK {
        return Err(Error::SizeLimit(format!(
            "finite_partition_lattice needs 1 <= n <= {MAX_PARTITION_RANK}"
        )));
    }
    let parts = restricted_growth_strings(n);
    let pos: HashMap<Vec<u8>, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let size = parts.len();
    let mut meet = vec![0; size * size];
    let mut leq = vec![false; size * size];
    for x in 0..size {
        for y in 0..size {
            let m = pos[&coarsen_together(&parts[x], &parts[y])];
            meet[x * size + y] = m;
            leq[x * size + y] = m == x;
        }
    }
    let names = parts.iter().map(|p| block_name(p)).collect();
    Ok(Semilattice::from_tables(names, 0, leq, meet))
}

/// Restricted growth strings of length `n` in lexicographic order; the
/// all-zero string (one block) comes first.
fn restricted_growth_strings(n: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            rec(cur, max.max(c), n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8];
    rec(&mut cur, 0, n, &mut out);
    out
}

/// Finest common coarsening of two labelings, canonically relabeled.
fn coarsen_together(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if a[i] == a[j] || b[i] == b[j] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = ri.min(rj);
                }
            }
        }
    }
    let mut label = HashMap::new();
    (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            let next = label.len() as u8;
            *label.entry(r).or_insert(next)
        })
        .collect()
}

fn block_name(rgs: &[u8]) -> String {
    let blocks = rgs.iter().copied().max().map_or(0, |m| m as usize + 1);
    (0..blocks)
        .map(|b| {
            rgs.iter()
                .enumerate()
                .filter(|&(_, &c)| c as usize == b)
                .map(|(i, _)| i.to_string())
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Every meet-semilattice with zero on carriers `{e0,…,e(k-1)}`, `k <= n`,
/// with `e0` as the zero. Labeled: isomorphic copies are all produced.
pub fn all_semilattices(n: usize) -> Result<impl Iterator<Item = Semilattice>> {
    if n == 0 || n > MAX_ENUMERATED_SIZE {
        return Err(Error::SizeLimit(format!(
            "all_semilattices needs 1 <= n <= {MAX_ENUMERATED_SIZE}"
        )));
    }
    Ok((1..=n).flat_map(semilattices_of_size))
}

fn semilattices_of_size(k: usize) -> impl Iterator<Item = Semilattice> {
    // Strict order pairs among the nonzero elements e1..e(k-1).
    let m = k - 1;
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|a| (1..=m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let combos = 1u64 << pairs.len();
    (0..combos).filter_map(move |mask| {
        let mut leq = vec![false; k * k];
        for x in 0..k {
            leq[x * k + x] = true;
            leq[x] = true; // e0 below everything
        }
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[a * k + b] = true;
            }
        }
        // Only masks that already are a strict partial order, so each
        // order is produced exactly once.
        for &(a, b) in &pairs {
            if leq[a * k + b] && leq[b * k + a] {
                return None;
            }
        }
        for x in 1..k {
            for y in 1..k {
                for z in 1..k {
                    if leq[x * k + y] && leq[y * k + z] && !leq[x * k + z] {
                        return None;
                    }
                }
            }
        }
        let meet = meet_table_from_order(k, &leq).ok()?;
        let names = (0..k).map(|i| format!("e{i}")).collect();
        Some(Semilattice::from_tables(names, 0, leq, meet))
    })
}
