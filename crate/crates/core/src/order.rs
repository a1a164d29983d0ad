//! Finite posets and join-semilattices.
//!
//! Elements are the dense indices `0..n`. Every poset keeps two bitmask rows
//! per element, the up-set `↑i` and the down-set `↓i`, so common upper bounds
//! are a single `&`.

use crate::error::{Error, Result};
use crate::MAX_ELEMENTS;

/// Bitmask over element indices; bit `i` stands for element `i`.
pub type Mask = u32;

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub fn elements(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_ELEMENTS {
        return Err(Error::SizeLimit {
            what: "structure",
            size: n,
            limit: MAX_ELEMENTS,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    up: Vec<Mask>,
    down: Vec<Mask>,
}

impl Poset {
    /// Builds a poset from up-sets that are already known to be a valid
    /// reflexive, antisymmetric, transitive relation.
    pub(crate) fn from_up_sets_unchecked(up: Vec<Mask>) -> Self {
        let n = up.len();
        let mut down = vec![0; n];
        for (i, &row) in up.iter().enumerate() {
            for j in elements(row) {
                down[j] |= bit(i);
            }
        }
        Poset { up, down }
    }

    /// Validates a relation given as up-set masks.
    pub fn from_up_sets(up: Vec<Mask>) -> Result<Self> {
        let n = up.len();
        check_size(n)?;
        let full = full_mask(n);
        for (i, &row) in up.iter().enumerate() {
            if row & !full != 0 {
                let index = (row & !full).trailing_zeros() as usize;
                return Err(Error::IndexOutOfRange { index, n });
            }
            if row & bit(i) == 0 {
                return Err(Error::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in elements(up[i]) {
                if j != i && up[j] & bit(i) != 0 {
                    return Err(Error::NotAntisymmetric(i.min(j), i.max(j)));
                }
            }
        }
        for i in 0..n {
            for j in elements(up[i]) {
                let missing = up[j] & !up[i];
                if missing != 0 {
                    return Err(Error::NotTransitive(i, j, missing.trailing_zeros() as usize));
                }
            }
        }
        Ok(Self::from_up_sets_unchecked(up))
    }

    /// Reflexive-transitive closure of a covering (or any acyclic) relation.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut up: Vec<Mask> = (0..n).map(bit).collect();
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            up[lo] |= bit(hi);
        }
        // Warshall on rows: whenever k ∈ ↑i, absorb ↑k.
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        Self::from_up_sets(up)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    /// `↑i`, including `i`.
    #[inline]
    pub fn up_set(&self, i: usize) -> Mask {
        self.up[i]
    }

    /// `↓i`, including `i`.
    #[inline]
    pub fn down_set(&self, i: usize) -> Mask {
        self.down[i]
    }

    pub fn up_sets(&self) -> &[Mask] {
        &self.up
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn minimal_elements(&self) -> Mask {
        (0..self.len())
            .filter(|&i| self.down[i] == bit(i))
            .fold(0, |m, i| m | bit(i))
    }

    pub fn maximal_elements(&self) -> Mask {
        (0..self.len())
            .filter(|&i| self.up[i] == bit(i))
            .fold(0, |m, i| m | bit(i))
    }

    /// Upper covers of `i`: minimal elements of `↑i \ {i}`.
    pub fn upper_covers(&self, i: usize) -> Mask {
        let strict = self.up[i] & !bit(i);
        elements(strict)
            .filter(|&j| self.down[j] & strict == bit(j))
            .fold(0, |m, j| m | bit(j))
    }

    /// Lower covers of `i`: maximal elements of `↓i \ {i}`.
    pub fn lower_covers(&self, i: usize) -> Mask {
        let strict = self.down[i] & !bit(i);
        elements(strict)
            .filter(|&j| self.up[j] & strict == bit(j))
            .fold(0, |m, j| m | bit(j))
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| elements(self.upper_covers(i)).map(move |j| (i, j)))
            .collect()
    }

    /// `new.le(perm_inv[i], perm_inv[j]) == self.le(i, j)`; element `perm[t]`
    /// of `self` becomes element `t` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        let mut inv = vec![0; n];
        for (t, &old) in perm.iter().enumerate() {
            inv[old] = t;
        }
        let up = perm
            .iter()
            .map(|&old| elements(self.up[old]).fold(0, |m, j| m | bit(inv[j])))
            .collect();
        Poset::from_up_sets_unchecked(up)
    }

    /// The subposet on the elements of `mask`, re-indexed in ascending order.
    pub fn induced(&self, mask: Mask) -> Result<Poset> {
        let keep: Vec<usize> = elements(mask & self.full()).collect();
        check_size(keep.len())?;
        let mut index = vec![usize::MAX; self.len()];
        for (t, &old) in keep.iter().enumerate() {
            index[old] = t;
        }
        let up = keep
            .iter()
            .map(|&old| elements(self.up[old] & mask).fold(0, |m, j| m | bit(index[j])))
            .collect();
        Ok(Poset::from_up_sets_unchecked(up))
    }

    /// Dense `le` matrix, mainly for tests and serialisation.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.le(i, j)).collect())
            .collect()
    }
}

/// Checks a boolean relation for the poset axioms, reporting a witness on
/// failure.
pub fn validate_poset(le: &[Vec<bool>]) -> Result<Poset> {
    let n = le.len();
    check_size(n)?;
    let mut up = Vec::with_capacity(n);
    for (row, entries) in le.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        up.push(
            entries
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0, |m, (j, _)| m | bit(j)),
        );
    }
    Poset::from_up_sets(up)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinSemilattice {
    poset: Poset,
    join: Vec<u8>,
    top: usize,
}

/// Least upper bound of `i` and `j`, if any: the element of the common
/// upper bounds whose up-set contains all of them.
fn least_upper_bound(p: &Poset, i: usize, j: usize) -> Option<usize> {
    let ub = p.up[i] & p.up[j];
    elements(ub).find(|&m| ub & !p.up[m] == 0)
}

/// Computes the join table of `p`, failing with the first pair that has no
/// least upper bound.
pub fn to_semilattice(p: Poset) -> Result<JoinSemilattice> {
    let n = p.len();
    let mut join = vec![0u8; n * n];
    for i in 0..n {
        join[i * n + i] = i as u8;
        for j in i + 1..n {
            let m = least_upper_bound(&p, i, j).ok_or(Error::JoinMissing(i, j))?;
            join[i * n + j] = m as u8;
            join[j * n + i] = m as u8;
        }
    }
    // A finite join-semilattice has exactly one maximal element.
    let top = p.maximal_elements().trailing_zeros() as usize;
    Ok(JoinSemilattice { poset: p, join, top })
}

impl JoinSemilattice {
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        to_semilattice(Poset::from_covers(n, covers)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.poset.le(i, j)
    }

    /// The unique bottom element, when there is one.
    pub fn bottom(&self) -> Option<usize> {
        let minimal = self.poset.minimal_elements();
        (minimal.count_ones() == 1).then(|| minimal.trailing_zeros() as usize)
    }

    /// Greatest lower bound of `i` and `j`, or `None` when it does not exist.
    pub fn partial_meet(&self, i: usize, j: usize) -> Option<usize> {
        let lb = self.poset.down[i] & self.poset.down[j];
        elements(lb).find(|&m| lb & !self.poset.down[m] == 0)
    }

    pub fn is_closed(&self, mask: Mask) -> bool {
        elements(mask).all(|i| elements(mask & !full_mask(i + 1)).all(|j| mask & bit(self.join(i, j)) != 0))
    }

    /// The subsemilattice on a join-closed, nonempty `mask`.
    pub fn induced(&self, mask: Mask) -> Result<JoinSemilattice> {
        if !self.is_closed(mask) {
            return Err(Error::NotClosed { mask });
        }
        to_semilattice(self.poset.induced(mask)?)
    }

    pub fn relabel(&self, perm: &[usize]) -> JoinSemilattice {
        let poset = self.poset.relabel(perm);
        let n = self.len();
        let mut inv = vec![0; n];
        for (t, &old) in perm.iter().enumerate() {
            inv[old] = t;
        }
        let mut join = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = inv[self.join(perm[a], perm[b])] as u8;
            }
        }
        JoinSemilattice {
            poset,
            join,
            top: inv[self.top],
        }
    }

    /// Nontrivial join facts `(i, j, i ∨ j)` with `i < j` and `i ∥ j`.
    pub fn proper_joins(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (i + 1..n)
                .filter(move |&j| !self.poset.comparable(i, j))
                .map(move |j| (i, j, self.join(i, j)))
        })
    }
}
