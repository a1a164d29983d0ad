//! Exhaustive checks of the ranking theorem and its lemmas.
//!
//! Every report is plain data with a deterministic field and element order,
//! so serialising the same report twice gives identical bytes regardless of
//! the rayon pool size.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{family_codes, family_splits, matches_family, verify_narrows_free, Core};
use crate::canon::canonical_form_with_limit;
use crate::catalog::{build_named, family_member, h5, k3, reconstructions, Expected, CATALOG_IDS};
use crate::dyadic::Dyadic;
use crate::enumerate::{enumerate_semilattices_with_ceiling, EnumerationRun};
use crate::error::{Error, Result};
use crate::order::{bit, full_mask, JoinSemilattice};
use crate::subuniverse::{
    count_subuniverses_bruteforce, count_subuniverses_split, enumerate_subuniverses, sigma, sigma_trace_bound,
    split_profile, PartialBinaryAlgebra, SplitProfile, Structure,
};
use crate::{DEFAULT_K, MAX_ELEMENTS};

/// σ_5 values of ranks 1–6: three from the earlier top-three result, then
/// the three theorem values.
pub fn ranked_sigma5() -> [Dyadic; 6] {
    [
        Dyadic::from_int(32),
        Dyadic::from_int(28),
        Dyadic::from_int(26),
        Dyadic::from_int(25),
        Dyadic::new(49, -1),
        Dyadic::from_int(24),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankedValue {
    pub rank: usize,
    pub count: u64,
    pub sigma5: Dyadic,
    /// Canonical codes of the structures attaining `count`, sorted.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// The predicted count is not an integer at this size.
    SizeInfeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub core: &'static str,
    pub sigma5: Dyadic,
    pub expected_count: Option<u64>,
    pub expected_rank: Option<usize>,
    pub actual_rank: Option<usize>,
    pub witnesses: usize,
    pub family_members: usize,
    /// Family members that do not attain the value.
    pub missing: Vec<String>,
    /// Structures attaining the value outside the family.
    pub unexpected: Vec<String>,
    pub status: ClaimStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankingReport {
    pub n: usize,
    pub structures: usize,
    pub values: Vec<RankedValue>,
    pub family_check: Vec<ClaimCheck>,
}

impl RankingReport {
    pub fn value_at_rank(&self, rank: usize) -> Option<u64> {
        self.values.get(rank.checked_sub(1)?).map(|v| v.count)
    }
}

/// Counts every structure with both algorithms.
fn cross_checked_counts(run: &EnumerationRun) -> Result<Vec<u64>> {
    run.structures
        .par_iter()
        .map(|l| {
            let brute = count_subuniverses_bruteforce(l)?.count;
            let split = count_subuniverses_split(l, 0)?.count;
            if brute == split {
                Ok(brute)
            } else {
                Err(Error::OracleMismatch { brute, split })
            }
        })
        .collect()
}

fn claim_checks(n: usize, values: &[RankedValue]) -> Result<Vec<ClaimCheck>> {
    let scale = n as i32 - DEFAULT_K;
    let feasible: Vec<u64> = ranked_sigma5()
        .iter()
        .filter_map(|s| s.scale_pow2(scale).to_u64())
        .collect();
    let claims = [("i", Core::H5, 3), ("ii", Core::H3B4, 4), ("iii", Core::K3, 5)];
    claims
        .into_iter()
        .map(|(claim, core, index)| {
            let sigma5 = ranked_sigma5()[index];
            let expected_count = sigma5.scale_pow2(scale).to_u64();
            let family: BTreeSet<String> = family_codes(&core.structure(), n)?
                .into_iter()
                .map(|(_, _, code)| code.code_string())
                .collect();
            let Some(count) = expected_count else {
                return Ok(ClaimCheck {
                    claim,
                    core: core.id(),
                    sigma5,
                    expected_count,
                    expected_rank: None,
                    actual_rank: None,
                    witnesses: 0,
                    family_members: family.len(),
                    missing: Vec::new(),
                    unexpected: Vec::new(),
                    status: ClaimStatus::SizeInfeasible,
                });
            };
            let expected_rank = feasible.iter().position(|&v| v == count).map(|i| i + 1);
            let found = values.iter().find(|v| v.count == count);
            let witnesses: BTreeSet<String> = found.map(|v| v.witnesses.iter().cloned().collect()).unwrap_or_default();
            let missing: Vec<String> = family.difference(&witnesses).cloned().collect();
            let unexpected: Vec<String> = witnesses.difference(&family).cloned().collect();
            let actual_rank = found.map(|v| v.rank);
            let pass =
                actual_rank.is_some() && actual_rank == expected_rank && missing.is_empty() && unexpected.is_empty();
            Ok(ClaimCheck {
                claim,
                core: core.id(),
                sigma5,
                expected_count,
                expected_rank,
                actual_rank,
                witnesses: witnesses.len(),
                family_members: family.len(),
                missing,
                unexpected,
                status: if pass { ClaimStatus::Pass } else { ClaimStatus::Fail },
            })
        })
        .collect()
}

pub fn rank(n: usize, ceiling: usize) -> Result<RankingReport> {
    let run = enumerate_semilattices_with_ceiling(n, ceiling)?;
    rank_run(&run)
}

pub fn rank_run(run: &EnumerationRun) -> Result<RankingReport> {
    let n = run.n;
    let counts = cross_checked_counts(run)?;
    let mut groups: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for (form, count) in run.codes.iter().zip(&counts) {
        groups.entry(*count).or_default().push(form.code_string());
    }
    let values: Vec<RankedValue> = groups
        .into_iter()
        .rev()
        .enumerate()
        .map(|(i, (count, mut witnesses))| {
            witnesses.sort();
            RankedValue {
                rank: i + 1,
                count,
                sigma5: Dyadic::new(count, DEFAULT_K - n as i32),
                witnesses,
            }
        })
        .collect();
    let family_check = if n >= 5 { claim_checks(n, &values)? } else { Vec::new() };
    Ok(RankingReport {
        n,
        structures: run.len(),
        values,
        family_check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Top3Entry {
    pub rank: usize,
    pub expected: u64,
    pub actual: Option<u64>,
    pub witnesses: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Top3Report {
    pub n: usize,
    /// Never gates a pass/fail decision.
    pub informational: bool,
    pub entries: Vec<Top3Entry>,
    pub chain_attains_max: bool,
    pub all_match: bool,
}

fn top3_from(report: &RankingReport) -> Result<Top3Report> {
    let n = report.n;
    let scale = n as i32 - DEFAULT_K;
    let entries: Vec<Top3Entry> = ranked_sigma5()[..3]
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let expected = s.scale_pow2(scale).to_u64().unwrap_or(0);
            let actual = report.values.get(i);
            Top3Entry {
                rank: i + 1,
                expected,
                actual: actual.map(|v| v.count),
                witnesses: actual.map(|v| v.witnesses.clone()).unwrap_or_default(),
                matches: actual.is_some_and(|v| v.count == expected),
            }
        })
        .collect();
    let chain = crate::catalog::chain(n)?;
    let chain_code = canonical_form_with_limit(chain.poset(), MAX_ELEMENTS)?.code_string();
    let chain_attains_max = report
        .values
        .first()
        .is_some_and(|v| v.count == 1u64 << n && v.witnesses.contains(&chain_code));
    let all_match = entries.iter().all(|e| e.matches);
    Ok(Top3Report {
        n,
        informational: true,
        entries,
        chain_attains_max,
        all_match,
    })
}

pub fn context_top3(n: usize, ceiling: usize) -> Result<Top3Report> {
    top3_from(&rank(n, ceiling)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub structures: usize,
    pub distinct_values: usize,
    pub top: Vec<RankedValue>,
    pub claims: Vec<ClaimCheck>,
    /// Counts strictly between the rank-6 and rank-4 values other than the
    /// rank-5 value.
    pub gap_violations: Vec<u64>,
    pub context_top3: Top3Report,
    pub passed: bool,
}

pub fn verify_theorem(n: usize, ceiling: usize) -> Result<TheoremReport> {
    if n < 5 {
        return Err(Error::SizeLimit {
            what: "theorem verification (minimum)",
            size: n,
            limit: 5,
        });
    }
    let report = rank(n, ceiling)?;
    let scale = n as i32 - DEFAULT_K;
    let s = ranked_sigma5();
    let lo = s[5].scale_pow2(scale);
    let hi = s[3].scale_pow2(scale);
    let mid = s[4].scale_pow2(scale);
    let gap_violations: Vec<u64> = report
        .values
        .iter()
        .map(|v| v.count)
        .filter(|&c| {
            let d = Dyadic::from_int(c);
            d > lo && d < hi && d != mid
        })
        .collect();
    let context_top3 = top3_from(&report)?;
    let passed = gap_violations.is_empty() && report.family_check.iter().all(|c| c.status != ClaimStatus::Fail);
    Ok(TheoremReport {
        n,
        structures: report.structures,
        distinct_values: report.values.len(),
        top: report.values.iter().take(6).cloned().collect(),
        claims: report.family_check,
        gap_violations,
        context_top3,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ExactMatch,
    Rounding,
    Contradiction,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyEntry {
    pub location: String,
    pub description: String,
    pub n: usize,
    pub count: u64,
    pub reported_value: String,
    pub computed_value: Dyadic,
    pub computed_decimal: String,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub entries: Vec<DiscrepancyEntry>,
}

impl DiscrepancyReport {
    pub fn mismatches(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.classification == Classification::Mismatch)
            .count()
    }
}

fn classify(expected: &Expected, computed: Dyadic) -> Classification {
    match (expected, expected.accepts(computed)) {
        (_, false) => Classification::Mismatch,
        (Expected::Exact { .. }, true) => Classification::ExactMatch,
        (Expected::Rounded { .. }, true) => Classification::Rounding,
        (Expected::Contradictory { .. }, true) => Classification::Contradiction,
    }
}

/// σ_5 of every catalog entry against its reported value.
pub fn discrepancy_report() -> Result<DiscrepancyReport> {
    let entries = CATALOG_IDS
        .iter()
        .map(|id| {
            let named = build_named(id)?;
            let count = count_subuniverses_bruteforce(&named.structure)?.count;
            let split = count_subuniverses_split(&named.structure, 0)?.count;
            if split != count {
                return Err(Error::OracleMismatch { brute: count, split });
            }
            let computed = Dyadic::new(count, DEFAULT_K - named.len() as i32);
            let note = match &named.structure {
                Structure::Partial(a) if !named.covers.is_empty() => {
                    let order = crate::order::Poset::from_covers(named.len(), &named.covers)?;
                    let lubs = PartialBinaryAlgebra::from_poset_lubs(&order);
                    let literal = count_subuniverses_bruteforce(&lubs)?.count;
                    (lubs != *a).then(|| {
                        format!(
                            "least-upper-bound reading of the diagram gives {literal} subuniverses (σ_5 = {})",
                            Dyadic::new(literal, DEFAULT_K - named.len() as i32)
                        )
                    })
                }
                _ => None,
            };
            Ok(DiscrepancyEntry {
                location: named.id.clone(),
                description: named.description.clone(),
                n: named.len(),
                count,
                reported_value: named.expected_sigma5.reported(),
                computed_value: computed,
                computed_decimal: computed.to_decimal_string(),
                classification: classify(&named.expected_sigma5, computed),
                note,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DiscrepancyReport { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub structure: &'static str,
    pub pivot: usize,
    pub rest: Vec<usize>,
    pub expected: SplitProfile,
    pub computed: SplitProfile,
    pub passes: bool,
}

fn split_checks() -> Result<Vec<SplitCheck>> {
    let cases = [
        ("H5", h5(), 3, vec![0, 1, 2], (16, 2, 7)),
        ("K3", k3(), 0, vec![1, 2], (7, 2, 3)),
    ];
    cases
        .into_iter()
        .map(|(structure, l, pivot, rest, (a, b, c))| {
            let mask = rest.iter().fold(0, |m, &i| m | bit(i));
            let computed = split_profile(&l, pivot, mask)?;
            let expected = SplitProfile {
                avoiding: a,
                containing_disjoint: b,
                containing_meeting: c,
            };
            Ok(SplitCheck {
                structure,
                pivot,
                rest,
                expected,
                computed,
                passes: computed == expected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionSummary {
    pub id: &'static str,
    pub n: usize,
    pub target: SplitProfile,
    pub reported_sigma5: &'static str,
    pub computed_sigma5: Option<Dyadic>,
    pub matches: usize,
    pub unique_up_to_isomorphism: bool,
    pub codes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaConfig {
    pub seed: u64,
    /// Random instances for each of the monotonicity and trace-bound checks.
    pub samples: usize,
    /// Largest enumerated size to sample from.
    pub sample_max_n: usize,
    /// Largest total size for the chain-attachment check.
    pub family_max_n: usize,
    /// Largest enumerated size for the converse family check.
    pub converse_max_n: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            seed: 0x5ab5_e1f0,
            samples: 128,
            sample_max_n: 7,
            family_max_n: 10,
            converse_max_n: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub config: LemmaConfig,
    pub discrepancies: DiscrepancyReport,
    pub split_checks: Vec<SplitCheck>,
    pub reconstructions: Vec<ReconstructionSummary>,
    /// σ(L) ≤ σ(K) for a random subsemilattice K of a random L.
    pub monotonicity: PropertyTally,
    /// σ(L) is at most the trace bound for a random subset H.
    pub trace_bound: PropertyTally,
    /// Every family member up to the size bound has the σ_5 of its core.
    pub chain_attachment: PropertyTally,
    /// Enumerated structures with a core's σ_5 that contain the core are
    /// family members. Only narrows-free cores are checked.
    pub converse: PropertyTally,
    pub converse_cores: Vec<&'static str>,
    pub passed: bool,
}

fn reconstruction_summary() -> Result<Vec<ReconstructionSummary>> {
    reconstructions()?
        .iter()
        .map(|r| {
            let computed_sigma5 = match r.matches.first() {
                Some(m) => Some(sigma(&m.structure, DEFAULT_K)?),
                None => None,
            };
            Ok(ReconstructionSummary {
                id: r.id,
                n: r.n,
                target: r.target,
                reported_sigma5: r.reported_sigma5,
                computed_sigma5,
                matches: r.matches.len(),
                unique_up_to_isomorphism: r.unique_up_to_isomorphism,
                codes: r.matches.iter().map(|m| m.code.clone()).collect(),
            })
        })
        .collect()
}

fn sampled_properties(config: &LemmaConfig, runs: &[EnumerationRun]) -> Result<(PropertyTally, PropertyTally)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pool: Vec<&JoinSemilattice> = runs
        .iter()
        .filter(|r| r.n >= 2 && r.n <= config.sample_max_n)
        .flat_map(|r| r.structures.iter())
        .collect();
    let mut mono = PropertyTally {
        checked: 0,
        violations: 0,
    };
    let mut trace = PropertyTally {
        checked: 0,
        violations: 0,
    };
    if pool.is_empty() {
        return Ok((mono, trace));
    }
    for _ in 0..config.samples {
        let l = pool[rng.gen_range(0..pool.len())];
        let subs: Vec<_> = enumerate_subuniverses(l)?.into_iter().filter(|&s| s != 0).collect();
        let s = subs[rng.gen_range(0..subs.len())];
        let k = l.induced(s)?;
        mono.checked += 1;
        if sigma(l, DEFAULT_K)? > sigma(&k, DEFAULT_K)? {
            mono.violations += 1;
        }

        let l = pool[rng.gen_range(0..pool.len())];
        let h = rng.gen_range(1..=full_mask(l.len()));
        trace.checked += 1;
        if sigma(l, DEFAULT_K)? > sigma_trace_bound(l, h, DEFAULT_K)?.bound {
            trace.violations += 1;
        }
    }
    Ok((mono, trace))
}

fn chain_attachment(max_n: usize) -> Result<PropertyTally> {
    let mut tally = PropertyTally {
        checked: 0,
        violations: 0,
    };
    for core in Core::ALL {
        let c = core.structure();
        let base = sigma(&c, DEFAULT_K)?;
        for n in c.len()..=max_n {
            for (c0, c1) in family_splits(c.len(), n) {
                tally.checked += 1;
                if sigma(&family_member(&c, c0, c1)?, DEFAULT_K)? != base {
                    tally.violations += 1;
                }
            }
        }
    }
    Ok(tally)
}

fn contains_copy(l: &JoinSemilattice, core: &JoinSemilattice) -> Result<bool> {
    let target = canonical_form_with_limit(core.poset(), MAX_ELEMENTS)?;
    for s in enumerate_subuniverses(l)? {
        if s.count_ones() as usize == core.len()
            && canonical_form_with_limit(l.induced(s)?.poset(), MAX_ELEMENTS)? == target
        {
            return Ok(true);
        }
    }
    Ok(false)
}

fn converse_cores() -> Vec<Core> {
    Core::ALL
        .into_iter()
        .filter(|c| verify_narrows_free(&c.structure()))
        .collect()
}

fn converse(runs: &[EnumerationRun]) -> Result<PropertyTally> {
    let cores: Vec<(Core, Dyadic)> = converse_cores()
        .into_iter()
        .map(|c| Ok((c, sigma(&c.structure(), DEFAULT_K)?)))
        .collect::<Result<_>>()?;
    let results: Vec<(usize, usize)> = runs
        .iter()
        .flat_map(|r| r.structures.iter())
        .collect::<Vec<_>>()
        .par_iter()
        .map(|l| {
            let s = sigma(*l, DEFAULT_K)?;
            let mut tally = (0, 0);
            for (core, value) in &cores {
                if *value == s && core.structure().len() <= l.len() && contains_copy(l, &core.structure())? {
                    tally.0 += 1;
                    if !matches_family(l, *core)?.matched {
                        tally.1 += 1;
                    }
                }
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    let (checked, violations) = results.into_iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(PropertyTally { checked, violations })
}

pub fn verify_lemmas(config: &LemmaConfig) -> Result<LemmaReport> {
    let max_n = config.sample_max_n.max(config.converse_max_n);
    let runs: Vec<EnumerationRun> = (1..=max_n)
        .map(|n| enumerate_semilattices_with_ceiling(n, max_n))
        .collect::<Result<_>>()?;
    let discrepancies = discrepancy_report()?;
    let split_checks = split_checks()?;
    let reconstructions = reconstruction_summary()?;
    let (monotonicity, trace_bound) = sampled_properties(config, &runs)?;
    let chain_attachment = chain_attachment(config.family_max_n)?;
    let converse_runs: Vec<EnumerationRun> = runs
        .into_iter()
        .filter(|r| r.n >= 4 && r.n <= config.converse_max_n)
        .collect();
    let converse = converse(&converse_runs)?;
    let passed = discrepancies.mismatches() == 0
        && split_checks.iter().all(|c| c.passes)
        && reconstructions.iter().all(|r| r.matches > 0)
        && [&monotonicity, &trace_bound, &chain_attachment, &converse]
            .iter()
            .all(|t| t.violations == 0);
    Ok(LemmaReport {
        config: config.clone(),
        discrepancies,
        split_checks,
        reconstructions,
        monotonicity,
        trace_bound,
        chain_attachment,
        converse,
        converse_cores: converse_cores().iter().map(Core::id).collect(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_CEILING;

    #[test]
    fn rank_five() {
        let r = rank(5, DEFAULT_CEILING).unwrap();
        assert_eq!(r.structures, 15);
        assert_eq!(r.values[0].count, 32);
        assert_eq!(r.values[0].witnesses.len(), 1);
        assert!(r.values.windows(2).all(|w| w[0].count > w[1].count));
        assert!(r.values.iter().all(|v| !v.witnesses.is_empty()));
        let total: usize = r.values.iter().map(|v| v.witnesses.len()).sum();
        assert_eq!(total, 15);
    }

    #[test]
    fn theorem_at_five() {
        let t = verify_theorem(5, DEFAULT_CEILING).unwrap();
        let status: Vec<ClaimStatus> = t.claims.iter().map(|c| c.status).collect();
        assert_eq!(
            status,
            [ClaimStatus::Pass, ClaimStatus::SizeInfeasible, ClaimStatus::Pass]
        );
        assert_eq!(t.claims[0].witnesses, 1);
        assert!(t.passed);
        let expected: Vec<u64> = t.context_top3.entries.iter().map(|e| e.expected).collect();
        assert_eq!(expected, [32, 28, 26]);
        assert!(t.context_top3.chain_attains_max);
    }

    /// Chain of `m - 1` elements with one extra atom below the top.
    fn chain_plus_atom(m: usize) -> JoinSemilattice {
        let mut covers: Vec<(usize, usize)> = (1..m - 1).map(|i| (i - 1, i)).collect();
        covers.push((m - 1, m - 2));
        JoinSemilattice::from_covers(m, &covers).unwrap()
    }

    #[test]
    fn chain_plus_atom_counts() {
        // Avoiding the atom: any subset of the chain. Containing it: {d},
        // {d, 1}, or a nonempty set of non-top chain elements plus the top.
        for m in 3..=9 {
            let expected = (1u64 << (m - 1)) + 2 + ((1u64 << (m - 2)) - 1);
            assert_eq!(
                count_subuniverses_bruteforce(&chain_plus_atom(m)).unwrap().count,
                expected
            );
        }
        assert_eq!(sigma(&chain_plus_atom(6), DEFAULT_K).unwrap(), Dyadic::new(49, -1));
        assert_eq!(sigma(&chain_plus_atom(7), DEFAULT_K).unwrap(), Dyadic::new(97, -2));
    }

    #[test]
    fn theorem_at_six() {
        let t = verify_theorem(6, DEFAULT_CEILING).unwrap();
        assert_eq!(t.top[3].count, 50);
        assert_eq!(t.top[4].count, 49);
        assert_eq!(t.top[5].count, 48);
        assert_eq!(t.claims[0].status, ClaimStatus::Pass);
        assert_eq!(t.claims[2].status, ClaimStatus::Pass);
        // The chain-plus-atom of size 6 also has 49 subuniverses.
        let extra = canonical_form_with_limit(chain_plus_atom(6).poset(), MAX_ELEMENTS)
            .unwrap()
            .code_string();
        assert_eq!(t.claims[1].status, ClaimStatus::Fail);
        assert_eq!(t.claims[1].unexpected, vec![extra]);
        assert!(t.claims[1].missing.is_empty());
        assert!(t.gap_violations.is_empty());
        assert!(t.context_top3.all_match);
        assert!(!t.passed);
    }

    #[test]
    fn theorem_requires_five() {
        assert!(verify_theorem(4, DEFAULT_CEILING).is_err());
    }

    #[test]
    fn discrepancies_have_no_mismatch() {
        let d = discrepancy_report().unwrap();
        assert_eq!(d.entries.len(), CATALOG_IDS.len());
        let bad: Vec<_> = d
            .entries
            .iter()
            .filter(|e| e.classification == Classification::Mismatch)
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
        let u1 = d.entries.iter().find(|e| e.location == "U1").unwrap();
        assert_eq!(u1.classification, Classification::Rounding);
        assert_eq!(u1.computed_decimal, "21.4375");
        let u14 = d.entries.iter().find(|e| e.location == "U14").unwrap();
        assert_eq!(u14.classification, Classification::ExactMatch);
    }

    #[test]
    fn proof_splits() {
        assert!(split_checks().unwrap().iter().all(|c| c.passes));
    }

    #[test]
    fn chain_attachment_holds() {
        let t = chain_attachment(8).unwrap();
        assert!(t.checked > 0);
        assert_eq!(t.violations, 0);
    }
}
