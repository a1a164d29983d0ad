//! Isomorph-free generation of finite join-semilattices.
//!
//! Removing a minimal element from an `n`-element join-semilattice leaves a
//! join-semilattice (no join of two other elements can land on a minimal
//! element), so every `n`-element structure is an `(n-1)`-element one plus a
//! new minimal element `m`. The strict up-set `U` of `m` must be upward
//! closed, contain the top, and for every old `x ∉ U` the set `U ∩ ↑x` must
//! have a least element, which becomes `m ∨ x`. Each level is deduplicated by
//! canonical form.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form_with_limit, CanonicalForm};
use crate::error::{Error, Result};
use crate::order::{bit, elements, full_mask, to_semilattice, JoinSemilattice, Mask, Poset};
use crate::MAX_ELEMENTS;

pub const DEFAULT_CEILING: usize = 9;
/// Largest size accepted by [`bruteforce_semilattices`].
pub const BRUTE_FORCE_CEILING: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub size: usize,
    pub candidates: u64,
    pub duplicates: u64,
    pub distinct: u64,
}

#[derive(Clone, Debug)]
pub struct EnumerationRun {
    pub n: usize,
    /// Canonically labelled structures sorted by canonical code.
    pub structures: Vec<JoinSemilattice>,
    pub codes: Vec<CanonicalForm>,
    pub levels: Vec<LevelStats>,
}

impl EnumerationRun {
    fn from_map(n: usize, map: BTreeMap<CanonicalForm, JoinSemilattice>, levels: Vec<LevelStats>) -> Self {
        let (codes, structures) = map.into_iter().unzip();
        EnumerationRun {
            n,
            structures,
            codes,
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.structures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structures.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, &JoinSemilattice)> {
        self.codes.iter().zip(&self.structures)
    }
}

fn canonicalise(p: Poset) -> Result<(CanonicalForm, JoinSemilattice)> {
    let form = canonical_form_with_limit(&p, MAX_ELEMENTS)?;
    let l = to_semilattice(p.relabel(form.perm()))?;
    Ok((form, l))
}

/// Strict up-sets that a new minimal element may receive below `parent`.
pub fn admissible_up_sets(parent: &JoinSemilattice) -> Vec<Mask> {
    let p = parent.poset();
    let m = parent.len();
    let top = bit(parent.top());
    (0..=full_mask(m))
        .filter(|&u| u & top != 0)
        .filter(|&u| elements(u).all(|i| p.up_set(i) & !u == 0))
        .filter(|&u| {
            elements(full_mask(m) & !u).all(|x| {
                let v = u & p.up_set(x);
                elements(v).any(|y| v & !p.up_set(y) == 0)
            })
        })
        .collect()
}

/// All one-element extensions of `parent` by a new minimal element, which
/// gets index `parent.len()`.
pub fn extend_by_minimal(parent: &JoinSemilattice) -> Vec<Poset> {
    let m = parent.len();
    admissible_up_sets(parent)
        .into_iter()
        .map(|u| {
            let mut up: Vec<Mask> = parent.poset().up_sets().to_vec();
            up.push(bit(m) | u);
            Poset::from_up_sets_unchecked(up)
        })
        .collect()
}

fn check_ceiling(n: usize, ceiling: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let limit = ceiling.min(MAX_ELEMENTS);
    if n > limit {
        return Err(Error::SizeLimit {
            what: "enumeration",
            size: n,
            limit,
        });
    }
    Ok(())
}

pub fn enumerate_semilattices(n: usize) -> Result<EnumerationRun> {
    enumerate_semilattices_with_ceiling(n, DEFAULT_CEILING)
}

/// Every `n`-element join-semilattice up to isomorphism. Parents of a level
/// are expanded in parallel on the current rayon pool; the merged result
/// is ordered by canonical code, so it does not depend on the pool size.
pub fn enumerate_semilattices_with_ceiling(n: usize, ceiling: usize) -> Result<EnumerationRun> {
    check_ceiling(n, ceiling)?;
    let singleton = Poset::from_up_sets_unchecked(vec![1]);
    let mut current = BTreeMap::new();
    let (form, l) = canonicalise(singleton)?;
    current.insert(form, l);
    let mut levels = vec![LevelStats {
        size: 1,
        candidates: 1,
        duplicates: 0,
        distinct: 1,
    }];
    for size in 2..=n {
        let parents: Vec<&JoinSemilattice> = current.values().collect();
        let children: Vec<Vec<(CanonicalForm, JoinSemilattice)>> = parents
            .par_iter()
            .map(|parent| {
                extend_by_minimal(parent)
                    .into_iter()
                    .map(canonicalise)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut next = BTreeMap::new();
        let mut candidates = 0u64;
        for (form, l) in children.into_iter().flatten() {
            candidates += 1;
            next.entry(form).or_insert(l);
        }
        let distinct = next.len() as u64;
        levels.push(LevelStats {
            size,
            candidates,
            duplicates: candidates - distinct,
            distinct,
        });
        current = next;
    }
    Ok(EnumerationRun::from_map(n, current, levels))
}

/// A random `n`-element join-semilattice built by `n - 1` random
/// minimal-element extensions of the singleton. Not uniform over
/// isomorphism classes.
pub fn random_semilattice<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<JoinSemilattice> {
    check_ceiling(n, MAX_ELEMENTS)?;
    let mut l = to_semilattice(Poset::from_up_sets_unchecked(vec![1]))?;
    for _ in 1..n {
        let up = *admissible_up_sets(&l)
            .choose(rng)
            .expect("the top alone is always admissible");
        let mut ups = l.poset().up_sets().to_vec();
        ups.push(bit(l.len()) | up);
        l = to_semilattice(Poset::from_up_sets_unchecked(ups))?;
    }
    Ok(l)
}

/// Independent oracle: every labelled order relation on `n ≤ 5` points,
/// filtered to join-semilattices and deduplicated by canonical form.
pub fn bruteforce_semilattices(n: usize) -> Result<EnumerationRun> {
    check_ceiling(n, BRUTE_FORCE_CEILING)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut found = BTreeMap::new();
    let mut candidates = 0u64;
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut up: Vec<Mask> = (0..n).map(bit).collect();
        let mut rest = code;
        for &(i, j) in &pairs {
            match rest % 3 {
                1 => up[i] |= bit(j),
                2 => up[j] |= bit(i),
                _ => {}
            }
            rest /= 3;
        }
        let Ok(p) = Poset::from_up_sets(up) else { continue };
        let Ok(l) = to_semilattice(p) else { continue };
        candidates += 1;
        let (form, canon) = canonicalise(l.into_poset())?;
        found.entry(form).or_insert(canon);
    }
    let distinct = found.len() as u64;
    let levels = vec![LevelStats {
        size: n,
        candidates,
        duplicates: candidates - distinct,
        distinct,
    }];
    Ok(EnumerationRun::from_map(n, found, levels))
}
