//! Canonical labelling of finite posets.
//!
//! The canonical code is the lexicographically least bit string
//!
//! ```text
//! for t in 1..n, for s in 0..t:  le(π(s), π(t)), le(π(t), π(s))
//! ```
//!
//! over all permutations `π` that list elements in order of a refined,
//! isomorphism-invariant colouring. Emitting bits position by position makes
//! every prefix of the code depend only on the already placed elements, so a
//! branch is cut as soon as its prefix exceeds the best code found so far.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::order::{bit, elements, Mask, Poset};
use crate::MAX_ELEMENTS;

/// Default size ceiling for [`canonical_form`].
pub const DEFAULT_CANON_LIMIT: usize = 12;

/// Canonical code of a poset plus the permutation that achieves it.
///
/// Equality, ordering and hashing only look at `(n, code)`; `perm[t]` is the
/// original element placed at canonical position `t`.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u64>,
    perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn code(&self) -> &[u64] {
        &self.code
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Stable textual form, `"<n>:<hex words>"`.
    pub fn code_string(&self) -> String {
        let mut s = format!("{}:", self.n);
        for w in &self.code {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.code == other.code
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.code).cmp(&(other.n, &other.code))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code_string())
    }
}

/// Iterated colour refinement. Starts from (|↓i|, |↑i|, lower cover count,
/// upper cover count) and splits colour classes by the multisets of colours
/// of upper and lower covers until stable. Colours are ranks of sorted
/// signatures, so the result depends only on the isomorphism type.
fn refined_colours(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let upper: Vec<Mask> = (0..n).map(|i| p.upper_covers(i)).collect();
    let lower: Vec<Mask> = (0..n).map(|i| p.lower_covers(i)).collect();
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            vec![
                p.down_set(i).count_ones() as usize,
                p.up_set(i).count_ones() as usize,
                lower[i].count_ones() as usize,
                upper[i].count_ones() as usize,
            ]
        })
        .collect();
    let mut colours = rank(&initial);
    let mut classes = colours.iter().max().map_or(0, |m| m + 1);
    loop {
        let signatures: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut up: Vec<usize> = elements(upper[i]).map(|j| colours[j]).collect();
                let mut down: Vec<usize> = elements(lower[i]).map(|j| colours[j]).collect();
                up.sort_unstable();
                down.sort_unstable();
                let mut sig = vec![colours[i], up.len()];
                sig.extend(up);
                sig.push(usize::MAX);
                sig.extend(down);
                sig
            })
            .collect();
        let next = rank(&signatures);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

struct Search<'a> {
    p: &'a Poset,
    n: usize,
    /// Colour class allowed at each canonical position.
    slot_class: Vec<usize>,
    members: Vec<Vec<usize>>,
    perm: Vec<usize>,
    used: Mask,
    bits: Vec<bool>,
    best_bits: Vec<bool>,
    best_perm: Vec<usize>,
    generation: u64,
}

impl Search<'_> {
    /// Interchangeable elements: incomparable with identical strict up- and
    /// down-sets. Swapping them is an automorphism fixing everything else.
    fn twins(&self, u: usize, v: usize) -> bool {
        let both = bit(u) | bit(v);
        !self.p.comparable(u, v)
            && self.p.up_set(u) & !both == self.p.up_set(v) & !both
            && self.p.down_set(u) & !both == self.p.down_set(v) & !both
    }

    fn dfs(&mut self, t: usize, less_in: bool) {
        if t == self.n {
            if less_in || self.best_perm.is_empty() {
                self.best_bits.clone_from(&self.bits);
                self.best_perm.clone_from(&self.perm);
                self.generation += 1;
            }
            return;
        }
        let mut less = less_in;
        let class = self.slot_class[t];
        let mut tried: Vec<usize> = Vec::new();
        for idx in 0..self.members[class].len() {
            let v = self.members[class][idx];
            if self.used & bit(v) != 0 || tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let start = self.bits.len();
            for s in 0..t {
                let u = self.perm[s];
                self.bits.push(self.p.le(u, v));
                self.bits.push(self.p.le(v, u));
            }
            let child_less = if less || self.best_perm.is_empty() {
                true
            } else {
                match self.bits[start..].cmp(&self.best_bits[start..self.bits.len()]) {
                    Ordering::Less => true,
                    Ordering::Equal => false,
                    Ordering::Greater => {
                        self.bits.truncate(start);
                        continue;
                    }
                }
            };
            self.perm.push(v);
            self.used |= bit(v);
            let generation = self.generation;
            self.dfs(t + 1, child_less);
            if self.generation != generation {
                // A new best now shares this node's prefix.
                less = false;
            }
            self.used &= !bit(v);
            self.perm.pop();
            self.bits.truncate(start);
        }
    }
}

fn pack(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64).max(1)];
    for (b, &set) in bits.iter().enumerate() {
        if set {
            words[b / 64] |= 1 << (63 - b % 64);
        }
    }
    words
}

/// Canonical form with the default size ceiling of 12 elements.
pub fn canonical_form(p: &Poset) -> Result<CanonicalForm> {
    canonical_form_with_limit(p, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(p: &Poset, limit: usize) -> Result<CanonicalForm> {
    let n = p.len();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "canonical form",
            size: n,
            limit,
        });
    }
    let colours = refined_colours(p);
    let classes = colours.iter().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); classes];
    for (i, &c) in colours.iter().enumerate() {
        members[c].push(i);
    }
    let slot_class = members
        .iter()
        .enumerate()
        .flat_map(|(c, m)| std::iter::repeat_n(c, m.len()))
        .collect();
    let mut search = Search {
        p,
        n,
        slot_class,
        members,
        perm: Vec::with_capacity(n),
        used: 0,
        bits: Vec::with_capacity(n * n),
        best_bits: Vec::new(),
        best_perm: Vec::new(),
        generation: 0,
    };
    search.dfs(0, true);
    Ok(CanonicalForm {
        n,
        code: pack(&search.best_bits),
        perm: search.best_perm,
    })
}

/// The canonically relabelled copy of `p`.
pub fn canonical_poset(p: &Poset) -> Result<(CanonicalForm, Poset)> {
    let form = canonical_form(p)?;
    let relabelled = p.relabel(form.perm());
    Ok((form, relabelled))
}

pub fn are_isomorphic(a: &Poset, b: &Poset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut da: Vec<(u32, u32)> = (0..a.len())
        .map(|i| (a.down_set(i).count_ones(), a.up_set(i).count_ones()))
        .collect();
    let mut db: Vec<(u32, u32)> = (0..b.len())
        .map(|i| (b.down_set(i).count_ones(), b.up_set(i).count_ones()))
        .collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    match (
        canonical_form_with_limit(a, MAX_ELEMENTS),
        canonical_form_with_limit(b, MAX_ELEMENTS),
    ) {
        (Ok(ca), Ok(cb)) => ca == cb,
        _ => false,
    }
}
