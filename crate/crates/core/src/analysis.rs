//! Narrows and the chain-attached families `C_p +ord core ⊞ C_q`.
//!
//! Membership is decided by building every candidate split of the size and
//! comparing canonical forms. Stripping narrows does not work directly: the
//! glue element of `core ⊞ C_q` is itself a narrows once `q > 1`.

use serde::Serialize;

use crate::canon::{canonical_form_with_limit, CanonicalForm};
use crate::catalog::{family_member, h3_b4, h5, k3};
use crate::error::Result;
use crate::order::{bit, JoinSemilattice, Mask};
use crate::MAX_ELEMENTS;

/// Non-top elements comparable with every element.
pub fn narrows(l: &JoinSemilattice) -> Mask {
    let p = l.poset();
    let full = p.full();
    (0..l.len())
        .filter(|&u| u != l.top() && (p.up_set(u) | p.down_set(u)) == full)
        .fold(0, |m, u| m | bit(u))
}

pub fn verify_narrows_free(core: &JoinSemilattice) -> bool {
    narrows(core) == 0
}

/// The three cores of the ranking theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Core {
    #[serde(rename = "H5")]
    H5,
    #[serde(rename = "H3_B4")]
    H3B4,
    #[serde(rename = "K3")]
    K3,
}

impl Core {
    pub const ALL: [Core; 3] = [Core::H5, Core::H3B4, Core::K3];

    pub fn id(&self) -> &'static str {
        match self {
            Core::H5 => "H5",
            Core::H3B4 => "H3_B4",
            Core::K3 => "K3",
        }
    }

    pub fn from_id(id: &str) -> Option<Core> {
        Core::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn structure(&self) -> JoinSemilattice {
        match self {
            Core::H5 => h5(),
            Core::H3B4 => h3_b4(),
            Core::K3 => k3(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub core_id: String,
    /// Lower chain length; 0 when unmatched or when there is no lower chain.
    pub c0_len: usize,
    /// Upper glued chain length; 0 when unmatched.
    pub c1_len: usize,
    pub matched: bool,
}

/// All `(c0, c1)` with `c0 + |core| + c1 - 1 = n`, `c0 ≥ 0`, `c1 ≥ 1`.
pub fn family_splits(core_len: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    let spare = n.checked_sub(core_len);
    (0..=spare.unwrap_or(0))
        .filter(move |_| spare.is_some())
        .map(move |c0| (c0, spare.unwrap_or(0) - c0 + 1))
}

/// Canonical forms of every `n`-element member of the family of `core`.
pub fn family_codes(core: &JoinSemilattice, n: usize) -> Result<Vec<(usize, usize, CanonicalForm)>> {
    family_splits(core.len(), n)
        .map(|(c0, c1)| {
            let member = family_member(core, c0, c1)?;
            Ok((c0, c1, canonical_form_with_limit(member.poset(), MAX_ELEMENTS)?))
        })
        .collect()
}

pub fn matches_family(l: &JoinSemilattice, core: Core) -> Result<FamilyMatch> {
    matches_family_with(l, &core.structure(), core.id())
}

/// Tries every split; a negative answer is exhaustive.
pub fn matches_family_with(l: &JoinSemilattice, core: &JoinSemilattice, core_id: &str) -> Result<FamilyMatch> {
    let target = canonical_form_with_limit(l.poset(), MAX_ELEMENTS)?;
    for (c0, c1, code) in family_codes(core, l.len())? {
        if code == target {
            return Ok(FamilyMatch {
                core_id: core_id.to_string(),
                c0_len: c0,
                c1_len: c1,
                matched: true,
            });
        }
    }
    Ok(FamilyMatch {
        core_id: core_id.to_string(),
        c0_len: 0,
        c1_len: 0,
        matched: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{chain, ordinal_sum};
    use crate::order::{elements, to_semilattice};

    #[test]
    fn narrows_of_chain_and_h5() {
        let c = chain(4).unwrap();
        assert_eq!(narrows(&c), 0b0111);
        assert_eq!(narrows(&h5()), 0);
        assert!(verify_narrows_free(&h5()));
        assert!(verify_narrows_free(&k3()));
        assert!(!verify_narrows_free(&c));
    }

    #[test]
    fn added_bottom_is_the_only_narrows() {
        let l = to_semilattice(ordinal_sum(chain(1).unwrap().poset(), h5().poset()).unwrap()).unwrap();
        let brute: Vec<usize> = (0..l.len())
            .filter(|&u| u != l.top() && (0..l.len()).all(|x| l.le(u, x) || l.le(x, u)))
            .collect();
        assert_eq!(elements(narrows(&l)).collect::<Vec<_>>(), brute);
        assert_eq!(brute, vec![0]);
    }

    #[test]
    fn family_matches() {
        let m = matches_family(&h5(), Core::H5).unwrap();
        assert_eq!((m.matched, m.c0_len, m.c1_len), (true, 0, 1));
        let l = family_member(&k3(), 2, 3).unwrap();
        let m = matches_family(&l, Core::K3).unwrap();
        assert_eq!((m.matched, m.c0_len, m.c1_len), (true, 2, 3));
        assert!(!matches_family(&chain(7).unwrap(), Core::H5).unwrap().matched);
        assert!(!matches_family(&k3(), Core::H5).unwrap().matched);
    }

    #[test]
    fn splits_cover_sizes() {
        assert_eq!(family_splits(5, 5).collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(family_splits(4, 6).collect::<Vec<_>>(), vec![(0, 3), (1, 2), (2, 1)]);
        assert_eq!(family_splits(6, 5).count(), 0);
    }

    #[test]
    fn core_ids_round_trip() {
        for c in Core::ALL {
            assert_eq!(Core::from_id(c.id()), Some(c));
        }
    }

    #[test]
    fn glue_point_of_h3_b4_is_a_narrows() {
        // H3 occupies 0..=2 and its top 2 is the bottom of B4.
        let l = h3_b4();
        assert_eq!(elements(narrows(&l)).collect::<Vec<_>>(), vec![2]);
        assert!(!verify_narrows_free(&l));
    }
}
