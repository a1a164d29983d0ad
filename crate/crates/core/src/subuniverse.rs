//! Subuniverses of total and partial join structures.
//!
//! A subuniverse is a subset closed under every defined join; the empty set
//! always qualifies. Two counting routes are provided and kept independent:
//! a scan of all `2^n` bitmasks and a pivot-splitting recursion with forced
//! inclusion/exclusion propagation and memoisation.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::order::{bit, elements, full_mask, JoinSemilattice, Mask, Poset};
use crate::DEFAULT_K;

/// Largest size accepted by the counting routines.
pub const COUNT_LIMIT: usize = 25;
/// Largest size for which explicit subuniverse lists are produced.
pub const LIST_LIMIT: usize = 20;

/// Anything whose subuniverses are determined by a list of join facts.
pub trait JoinStructure {
    fn size(&self) -> usize;

    /// Facts `(i, j, k)` meaning "`i ∨ j = k`" with `k ∉ {i, j}`; facts whose
    /// result is one of the operands never constrain a subset.
    fn constraints(&self) -> Vec<(usize, usize, usize)>;
}

impl JoinStructure for JoinSemilattice {
    fn size(&self) -> usize {
        self.len()
    }

    fn constraints(&self) -> Vec<(usize, usize, usize)> {
        self.proper_joins().collect()
    }
}

/// A finite set with a join defined only on selected unordered pairs. No
/// associativity or order compatibility is required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialBinaryAlgebra {
    n: usize,
    joins: BTreeMap<(usize, usize), usize>,
}

impl PartialBinaryAlgebra {
    pub fn new(n: usize, joins: &[(usize, usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > crate::MAX_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "structure",
                size: n,
                limit: crate::MAX_ELEMENTS,
            });
        }
        let mut map = BTreeMap::new();
        for &(i, j, k) in joins {
            for index in [i, j, k] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, k).is_some() {
                return Err(Error::DuplicatePair(key.0, key.1));
            }
        }
        Ok(PartialBinaryAlgebra { n, joins: map })
    }

    /// Each pair `{i, j}` (including `i = j`) gets a join with probability
    /// `density`, with a uniformly chosen result.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<Self> {
        let mut joins = Vec::new();
        for i in 0..n {
            for j in i..n {
                if rng.gen_bool(density) {
                    joins.push((i, j, rng.gen_range(0..n)));
                }
            }
        }
        Self::new(n, &joins)
    }

    /// Reads a proof-case diagram given by covering edges.
    ///
    /// Every element `w` with lower covers `p, q` contributes `p ∨ q = w`.
    /// For each such `w` that is maximal, the two branches below it are
    /// also joined: any incomparable `u, v`, where `u` is `p` or a join node
    /// below `p` and `v` is `q` or a join node below `q`, gets `u ∨ v = w`.
    /// Join nodes are elements with at least two lower covers.
    pub fn from_case_diagram(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let order = Poset::from_covers(n, covers)?;
        let join_nodes: Vec<usize> = (0..n).filter(|&w| order.lower_covers(w).count_ones() >= 2).collect();
        let mut joins: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &w in &join_nodes {
            let lower: Vec<usize> = elements(order.lower_covers(w)).collect();
            for (a, &p) in lower.iter().enumerate() {
                for &q in &lower[a + 1..] {
                    joins.insert((p, q), w);
                }
            }
        }
        let maximal = order.maximal_elements();
        for &w in join_nodes.iter().filter(|&&w| maximal & bit(w) != 0) {
            let lower: Vec<usize> = elements(order.lower_covers(w)).collect();
            let branch = |head: usize| -> Vec<usize> {
                std::iter::once(head)
                    .chain(join_nodes.iter().copied().filter(|&j| j != head && order.le(j, head)))
                    .collect()
            };
            for (a, &p) in lower.iter().enumerate() {
                for &q in &lower[a + 1..] {
                    for &u in &branch(p) {
                        for &v in &branch(q) {
                            if !order.comparable(u, v) {
                                joins.entry((u.min(v), u.max(v))).or_insert(w);
                            }
                        }
                    }
                }
            }
        }
        let facts: Vec<_> = joins.into_iter().map(|((i, j), k)| (i, j, k)).collect();
        Self::new(n, &facts)
    }

    /// The partial algebra of all least upper bounds that exist in `order`.
    pub fn from_poset_lubs(order: &Poset) -> Self {
        let n = order.len();
        let mut joins = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if order.comparable(i, j) {
                    continue;
                }
                let ub = order.up_set(i) & order.up_set(j);
                if let Some(m) = elements(ub).find(|&m| ub & !order.up_set(m) == 0) {
                    joins.insert((i, j), m);
                }
            }
        }
        PartialBinaryAlgebra { n, joins }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.joins.get(&(i.min(j), i.max(j))).copied()
    }

    /// Defined joins `(i, j, k)` with `i <= j`, sorted.
    pub fn joins(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.joins.iter().map(|(&(i, j), &k)| (i, j, k))
    }
}

impl JoinStructure for PartialBinaryAlgebra {
    fn size(&self) -> usize {
        self.n
    }

    fn constraints(&self) -> Vec<(usize, usize, usize)> {
        self.joins().filter(|&(i, j, k)| k != i && k != j).collect()
    }
}

/// Either kind of structure, for code that handles both uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Total(JoinSemilattice),
    Partial(PartialBinaryAlgebra),
}

impl Structure {
    pub fn as_semilattice(&self) -> Option<&JoinSemilattice> {
        match self {
            Structure::Total(l) => Some(l),
            Structure::Partial(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Total(_) => "semilattice",
            Structure::Partial(_) => "partial-algebra",
        }
    }
}

impl JoinStructure for Structure {
    fn size(&self) -> usize {
        match self {
            Structure::Total(l) => l.size(),
            Structure::Partial(a) => a.size(),
        }
    }

    fn constraints(&self) -> Vec<(usize, usize, usize)> {
        match self {
            Structure::Total(l) => l.constraints(),
            Structure::Partial(a) => a.constraints(),
        }
    }
}

impl<T: JoinStructure + ?Sized> JoinStructure for &T {
    fn size(&self) -> usize {
        (**self).size()
    }

    fn constraints(&self) -> Vec<(usize, usize, usize)> {
        (**self).constraints()
    }
}

/// Constraints as (operand mask, result mask) pairs for the bitmask test.
struct Rules(Vec<(Mask, Mask)>);

impl Rules {
    fn compile<A: JoinStructure + ?Sized>(a: &A) -> Self {
        Rules(
            a.constraints()
                .into_iter()
                .map(|(i, j, k)| (bit(i) | bit(j), bit(k)))
                .collect(),
        )
    }

    #[inline]
    fn closed(&self, s: Mask) -> bool {
        self.0.iter().all(|&(ops, res)| s & ops != ops || s & res != 0)
    }
}

fn check_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeLimit { what, size: n, limit })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubuniverseReport {
    pub count: u64,
    pub sigma: Dyadic,
    pub k: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsets: Option<Vec<Mask>>,
}

impl SubuniverseReport {
    pub fn new(count: u64, n: usize, k: i32) -> Self {
        SubuniverseReport {
            count,
            sigma: relative_count(count, n, k),
            k,
            subsets: None,
        }
    }

    /// The same count with σ taken at another reference size.
    pub fn at_k(&self, n: usize, k: i32) -> Self {
        SubuniverseReport {
            sigma: relative_count(self.count, n, k),
            k,
            ..self.clone()
        }
    }
}

/// `count · 2^(k - n)`.
pub fn relative_count(count: u64, n: usize, k: i32) -> Dyadic {
    Dyadic::new(count, k - n as i32)
}

pub fn is_subuniverse<A: JoinStructure + ?Sized>(a: &A, s: Mask) -> bool {
    Rules::compile(a).closed(s)
}

/// Counts closed subsets by testing every bitmask in ascending order.
pub fn count_subuniverses_bruteforce<A: JoinStructure + ?Sized>(a: &A) -> Result<SubuniverseReport> {
    let n = a.size();
    check_limit("brute-force counting", n, COUNT_LIMIT)?;
    let rules = Rules::compile(a);
    const CHUNK_BITS: usize = 16;
    let count = if n <= CHUNK_BITS {
        (0..=full_mask(n)).filter(|&s| rules.closed(s)).count() as u64
    } else {
        let chunk = 1u32 << CHUNK_BITS;
        (0..1u32 << (n - CHUNK_BITS))
            .into_par_iter()
            .map(|c| {
                let base = c << CHUNK_BITS;
                (0..chunk).filter(|&low| rules.closed(base | low)).count() as u64
            })
            .sum()
    };
    Ok(SubuniverseReport::new(count, n, DEFAULT_K))
}

/// All closed subsets in ascending bitmask order.
pub fn enumerate_subuniverses<A: JoinStructure + ?Sized>(a: &A) -> Result<Vec<Mask>> {
    let n = a.size();
    check_limit("subuniverse listing", n, LIST_LIMIT)?;
    let rules = Rules::compile(a);
    Ok((0..=full_mask(n)).filter(|&s| rules.closed(s)).collect())
}

struct SplitCounter {
    rules: Vec<(usize, usize, usize)>,
    full: Mask,
    memo: HashMap<(Mask, Mask), u64>,
}

impl SplitCounter {
    fn new<A: JoinStructure + ?Sized>(a: &A) -> Self {
        SplitCounter {
            rules: a.constraints(),
            full: full_mask(a.size()),
            memo: HashMap::new(),
        }
    }

    /// Closes (`included`, `excluded`) under forced moves; `None` on conflict.
    fn propagate(&self, mut inc: Mask, mut exc: Mask) -> Option<(Mask, Mask)> {
        loop {
            if inc & exc != 0 {
                return None;
            }
            let mut changed = false;
            for &(i, j, k) in &self.rules {
                let (bi, bj, bk) = (bit(i), bit(j), bit(k));
                let has_i = inc & bi != 0;
                let has_j = inc & bj != 0;
                if has_i && has_j {
                    if exc & bk != 0 {
                        return None;
                    }
                    if inc & bk == 0 {
                        inc |= bk;
                        changed = true;
                    }
                } else if exc & bk != 0 {
                    if has_i && exc & bj == 0 {
                        exc |= bj;
                        changed = true;
                    } else if has_j && exc & bi == 0 {
                        exc |= bi;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Some((inc, exc));
            }
        }
    }

    fn count(&mut self, inc: Mask, exc: Mask) -> u64 {
        let Some((inc, exc)) = self.propagate(inc, exc) else {
            return 0;
        };
        let undecided = self.full & !(inc | exc);
        if undecided == 0 {
            return 1;
        }
        if let Some(&c) = self.memo.get(&(inc, exc)) {
            return c;
        }
        let p = bit(undecided.trailing_zeros() as usize);
        let c = self.count(inc, exc | p) + self.count(inc | p, exc);
        self.memo.insert((inc, exc), c);
        c
    }
}

/// The three parts of a pivot split: subuniverses avoiding the pivot, those
/// containing it but missing all of `rest`, and those containing it and
/// meeting `rest`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitProfile {
    pub avoiding: u64,
    pub containing_disjoint: u64,
    pub containing_meeting: u64,
}

impl SplitProfile {
    pub fn total(&self) -> u64 {
        self.avoiding + self.containing_disjoint + self.containing_meeting
    }
}

fn check_pivot(n: usize, pivot: usize) -> Result<()> {
    if pivot >= n {
        Err(Error::IndexOutOfRange { index: pivot, n })
    } else {
        Ok(())
    }
}

/// Counts subuniverses as (avoiding `pivot`) + (containing `pivot`), each
/// side by recursive splitting.
pub fn count_subuniverses_split<A: JoinStructure + ?Sized>(a: &A, pivot: usize) -> Result<SubuniverseReport> {
    let n = a.size();
    check_limit("split counting", n, COUNT_LIMIT)?;
    check_pivot(n, pivot)?;
    let mut counter = SplitCounter::new(a);
    let p = bit(pivot);
    let count = counter.count(0, p) + counter.count(p, 0);
    Ok(SubuniverseReport::new(count, n, DEFAULT_K))
}

pub fn split_profile<A: JoinStructure + ?Sized>(a: &A, pivot: usize, rest: Mask) -> Result<SplitProfile> {
    let n = a.size();
    check_limit("split counting", n, COUNT_LIMIT)?;
    check_pivot(n, pivot)?;
    let p = bit(pivot);
    let rest = rest & full_mask(n) & !p;
    let mut counter = SplitCounter::new(a);
    let avoiding = counter.count(0, p);
    let containing = counter.count(p, 0);
    let containing_disjoint = counter.count(p, rest);
    Ok(SplitProfile {
        avoiding,
        containing_disjoint,
        containing_meeting: containing - containing_disjoint,
    })
}

/// σ_k = |Sub(a)| · 2^(k - n), exact.
pub fn sigma<A: JoinStructure + ?Sized>(a: &A, k: i32) -> Result<Dyadic> {
    Ok(count_subuniverses_bruteforce(a)?.at_k(a.size(), k).sigma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceBound {
    /// Number of distinct traces `H ∩ S` over all subuniverses `S`.
    pub traces: u64,
    /// `traces · 2^(k - |H|)`, an upper bound for σ_k.
    pub bound: Dyadic,
}

pub fn sigma_trace_bound<A: JoinStructure + ?Sized>(a: &A, h: Mask, k: i32) -> Result<TraceBound> {
    let n = a.size();
    check_limit("trace bound", n, COUNT_LIMIT)?;
    let h = h & full_mask(n);
    let rules = Rules::compile(a);
    let traces: HashSet<Mask> = (0..=full_mask(n)).filter(|&s| rules.closed(s)).map(|s| s & h).collect();
    let traces = traces.len() as u64;
    Ok(TraceBound {
        traces,
        bound: Dyadic::new(traces, k - h.count_ones() as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(m: usize) -> JoinSemilattice {
        let covers: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        JoinSemilattice::from_covers(m, &covers).unwrap()
    }

    // a=0 < b=1 < c=2 < 1=4, d=3 < 1
    fn h5() -> JoinSemilattice {
        JoinSemilattice::from_covers(5, &[(0, 1), (1, 2), (2, 4), (3, 4)]).unwrap()
    }

    // atoms a=0, b=1, c=2 under top 3
    fn k3() -> JoinSemilattice {
        JoinSemilattice::from_covers(4, &[(0, 3), (1, 3), (2, 3)]).unwrap()
    }

    /// Reference count straight from the join table, without the compiled
    /// rule list.
    fn count_from_table(l: &JoinSemilattice) -> u64 {
        (0..1u32 << l.len()).filter(|&s| l.is_closed(s)).count() as u64
    }

    #[test]
    fn empty_set_is_always_closed() {
        assert!(is_subuniverse(&h5(), 0));
        let a = PartialBinaryAlgebra::new(3, &[(0, 1, 2)]).unwrap();
        assert!(is_subuniverse(&a, 0));
    }

    #[test]
    fn k3_pairs_need_the_top() {
        assert!(!is_subuniverse(&k3(), 0b0011));
        assert!(is_subuniverse(&k3(), 0b1011));
    }

    #[test]
    fn h5_chain_part_is_closed() {
        assert!(is_subuniverse(&h5(), 0b10111));
    }

    #[test]
    fn chain_and_named_counts() {
        for m in 1..=10 {
            assert_eq!(count_subuniverses_bruteforce(&chain(m)).unwrap().count, 1 << m);
        }
        assert_eq!(count_subuniverses_bruteforce(&h5()).unwrap().count, 25);
        assert_eq!(count_subuniverses_bruteforce(&k3()).unwrap().count, 12);
        assert_eq!(count_from_table(&h5()), 25);
    }

    #[test]
    fn h5_split_by_d() {
        // pivot d, rest {a, b, c}
        let profile = split_profile(&h5(), 3, 0b00111).unwrap();
        assert_eq!(
            profile,
            SplitProfile {
                avoiding: 16,
                containing_disjoint: 2,
                containing_meeting: 7
            }
        );
        assert_eq!(count_subuniverses_split(&h5(), 3).unwrap().count, 25);
    }

    #[test]
    fn k3_split_by_a() {
        let profile = split_profile(&k3(), 0, 0b0110).unwrap();
        assert_eq!(
            profile,
            SplitProfile {
                avoiding: 7,
                containing_disjoint: 2,
                containing_meeting: 3
            }
        );
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(&chain(5), 5).unwrap(), Dyadic::from_int(32));
        assert_eq!(sigma(&k3(), 5).unwrap(), Dyadic::from_int(24));
        assert_eq!(sigma(&h5(), 8).unwrap(), Dyadic::from_int(200));
    }

    #[test]
    fn trace_bound_extremes() {
        let l = h5();
        let empty = sigma_trace_bound(&l, 0, 5).unwrap();
        assert_eq!(empty.traces, 1);
        assert_eq!(empty.bound, Dyadic::from_int(32));
        let full = sigma_trace_bound(&l, 0b11111, 5).unwrap();
        assert_eq!(full.traces, 25);
        assert_eq!(full.bound, sigma(&l, 5).unwrap());
    }

    #[test]
    fn trace_bound_on_h5_without_top() {
        // Any subset of {a,b,c,d} plus the top is closed, so all 16 traces occur.
        let traces: HashSet<Mask> = (0..32u32).filter(|&s| h5().is_closed(s)).map(|s| s & 0b01111).collect();
        let bound = sigma_trace_bound(&h5(), 0b01111, 5).unwrap();
        assert_eq!(bound.traces, traces.len() as u64);
        assert_eq!(bound.traces, 16);
        assert!(bound.bound >= Dyadic::from_int(25));
    }

    #[test]
    fn enumerate_lists_match_counts() {
        assert_eq!(enumerate_subuniverses(&chain(1)).unwrap(), vec![0, 1]);
        let b4 = JoinSemilattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let subs = enumerate_subuniverses(&b4).unwrap();
        assert_eq!(subs.len(), 14);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partial_algebra_errors() {
        assert_eq!(PartialBinaryAlgebra::new(0, &[]).unwrap_err(), Error::Empty);
        assert_eq!(
            PartialBinaryAlgebra::new(3, &[(0, 1, 2), (1, 0, 2)]).unwrap_err(),
            Error::DuplicatePair(0, 1)
        );
        assert!(matches!(
            PartialBinaryAlgebra::new(3, &[(0, 1, 3)]).unwrap_err(),
            Error::IndexOutOfRange { index: 3, n: 3 }
        ));
    }

    #[test]
    fn independent_triples_multiply() {
        // x=a∨b, y=c∨d, z=e∨f on nine points: 7^3.
        let a = PartialBinaryAlgebra::new(9, &[(0, 1, 6), (2, 3, 7), (4, 5, 8)]).unwrap();
        assert_eq!(count_subuniverses_bruteforce(&a).unwrap().count, 343);
        assert_eq!(enumerate_subuniverses(&a).unwrap().len(), 343);
        for pivot in 0..9 {
            assert_eq!(count_subuniverses_split(&a, pivot).unwrap().count, 343);
        }
    }

    #[test]
    fn limits() {
        let big = chain(26);
        assert!(matches!(
            count_subuniverses_bruteforce(&big).unwrap_err(),
            Error::SizeLimit { size: 26, .. }
        ));
        assert!(matches!(
            enumerate_subuniverses(&chain(21)).unwrap_err(),
            Error::SizeLimit { size: 21, .. }
        ));
        assert!(count_subuniverses_split(&h5(), 5).is_err());
    }

    #[test]
    fn parallel_scan_matches_chain_law() {
        assert_eq!(count_subuniverses_bruteforce(&chain(18)).unwrap().count, 1 << 18);
    }
}
