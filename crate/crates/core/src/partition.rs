//! The tie-set partition hierarchy for a canonical code (first codeword
//! all-zero): the coarse cover of the tie region by per-codeword equidistance
//! sets, the signature-based support partition, the per-weight refinement,
//! the representative fine partition, the counting formulas, the auxiliary
//! flip construction, and the consistency checks tying all of it together.
//!
//! Every construction here evaluates its defining conditions literally over
//! explicit output sets; nothing is derived from the counting formulas being
//! verified.

use std::collections::BTreeMap;

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitcode::{hamming_restricted, Code, Codeword, IndexSet};
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, ratio_string, spectrum_probability, ChannelParams, DistanceSpectrum, ExactRational,
};

/// A sorted set of channel outputs of common blocklength.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OutputSet {
    n: u32,
    words: Vec<Codeword>,
}

impl OutputSet {
    pub fn empty(n: u32) -> Self {
        Self {
            n,
            words: Vec::new(),
        }
    }

    /// Builds a set from members collected in ascending order.
    fn from_sorted(n: u32, words: Vec<Codeword>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        Self { n, words }
    }

    pub fn from_words(n: u32, mut words: Vec<Codeword>) -> Self {
        words.sort();
        words.dedup();
        Self { n, words }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn contains(&self, word: Codeword) -> bool {
        self.words.binary_search(&word).is_ok()
    }

    pub fn is_subset_of(&self, other: &OutputSet) -> bool {
        self.words.iter().all(|&w| other.contains(w))
    }

    pub fn is_disjoint_from(&self, other: &OutputSet) -> bool {
        self.words.iter().all(|&w| !other.contains(w))
    }

    /// Counts of members per Hamming weight, i.e. per distance from the
    /// all-zero word.
    pub fn weight_spectrum(&self) -> DistanceSpectrum {
        let mut spec = DistanceSpectrum::zero(self.n);
        for word in &self.words {
            spec.bump(word.weight(), 1);
        }
        spec
    }

    /// Exact probability of this set conditioned on the all-zero codeword
    /// being sent.
    pub fn probability_from_zero(&self, ch: &ChannelParams) -> Result<ExactRational> {
        spectrum_probability(&self.weight_spectrum(), ch)
    }

    pub fn render(&self) -> Vec<String> {
        self.words.iter().map(|w| w.to_string()).collect()
    }
}

/// One block of the signature partition of a codeword support: the indices
/// whose membership pattern across the earlier supports is identical.
#[derive(Clone, Debug)]
pub struct SignatureGroup {
    m: BigUint,
    members: IndexSet,
    prev_cumulative: IndexSet,
    cumulative: IndexSet,
}

impl SignatureGroup {
    /// The rank 1 + sum of lambda_r * 2^(r-2) encoding the signature.
    pub fn m(&self) -> &BigUint {
        &self.m
    }

    pub fn members(&self) -> IndexSet {
        self.members
    }

    /// Union of all groups up to and including this one.
    pub fn cumulative(&self) -> IndexSet {
        self.cumulative
    }

    /// Union of all groups strictly before this one.
    pub fn prev_cumulative(&self) -> IndexSet {
        self.prev_cumulative
    }

    pub fn ell(&self) -> u32 {
        self.cumulative.len()
    }

    pub fn ell_prev(&self) -> u32 {
        self.prev_cumulative.len()
    }
}

/// The signature partition of the support of codeword `j` in a canonical
/// code, with cumulative unions and the level-index mapping.
#[derive(Clone, Debug)]
pub struct SupportProfile {
    j: usize,
    support: IndexSet,
    groups: Vec<SignatureGroup>,
}

impl SupportProfile {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn support(&self) -> IndexSet {
        self.support
    }

    /// Support size; levels are indexed k = 0..ell-1.
    pub fn ell(&self) -> u32 {
        self.support.len()
    }

    /// Non-empty signature groups in increasing rank order; their cumulative
    /// sizes are strictly increasing and end at `ell`.
    pub fn groups(&self) -> &[SignatureGroup] {
        &self.groups
    }

    /// The group index selected for level `k`: the unique group whose
    /// cumulative-size window contains `k`, or for the last level the first
    /// group reaching the full support.
    pub fn sigma_index(&self, k: u32) -> Result<usize> {
        let ell = self.ell();
        if k >= ell {
            return Err(Error::LevelOutOfRange { k, ell });
        }
        if k + 1 == ell {
            return Ok(self.groups.len() - 1);
        }
        for (idx, group) in self.groups.iter().enumerate() {
            let lo = group.ell_prev() as i64 - 1;
            let hi = group.ell() as i64 - 1;
            if lo <= k as i64 && (k as i64) < hi {
                return Ok(idx);
            }
        }
        Err(Error::Inconsistency {
            detail: format!("no signature group covers level k={k}"),
        })
    }

    pub fn sigma(&self, k: u32) -> Result<&SignatureGroup> {
        Ok(&self.groups[self.sigma_index(k)?])
    }

    /// The rank value of the group selected for level `k`.
    pub fn sigma_m(&self, k: u32) -> Result<BigUint> {
        Ok(self.sigma(k)?.m().clone())
    }
}

fn check_canonical(code: &Code) -> Result<()> {
    if !code.is_canonical() {
        return Err(Error::NotCanonical);
    }
    Ok(())
}

fn check_j(code: &Code, j: usize) -> Result<()> {
    if j < 2 || j > code.m() {
        return Err(Error::IndexOutOfRange {
            index: j,
            m: code.m(),
        });
    }
    Ok(())
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    Ok(())
}

/// Groups the support of codeword `j` by the membership signature of each
/// index across the supports of codewords 2..j-1.
///
/// Only non-empty groups are materialized; for j = 2 the signature is empty
/// and the whole support forms the single group of rank 1.
pub fn build_support_profile(code: &Code, j: usize) -> Result<SupportProfile> {
    check_canonical(code)?;
    check_j(code, j)?;
    let n = code.n();
    let support = code.word(j).support();
    let prior_supports: Vec<IndexSet> = (2..j).map(|r| code.word(r).support()).collect();

    let mut by_rank: BTreeMap<BigUint, u64> = BTreeMap::new();
    for pos in support.positions() {
        let mut rank = BigUint::zero();
        for (offset, prior) in prior_supports.iter().enumerate() {
            if prior.contains(pos) {
                rank.set_bit(offset as u64, true);
            }
        }
        rank += 1u32;
        *by_rank.entry(rank).or_insert(0u64) |= IndexSet::from_positions(n, [pos])?.mask();
    }

    let mut groups = Vec::with_capacity(by_rank.len());
    let mut cumulative = 0u64;
    for (m, mask) in by_rank {
        let prev_cumulative = IndexSet::from_mask(n, cumulative)?;
        cumulative |= mask;
        groups.push(SignatureGroup {
            m,
            members: IndexSet::from_mask(n, mask)?,
            prev_cumulative,
            cumulative: IndexSet::from_mask(n, cumulative)?,
        });
    }
    Ok(SupportProfile { j, support, groups })
}

/// The coarse pair for codeword `j` of a canonical code, by literal
/// evaluation over all 2^n outputs:
///
/// - tie side: outputs equidistant from the all-zero word and codeword `j`,
///   strictly closer to both than to every codeword 2..j-1;
/// - error side: outputs one flip past the tie (distance to the all-zero word
///   exceeds the distance to codeword `j` by exactly two) whose decremented
///   distance differs from every earlier codeword's incremented distance.
pub fn build_coarse(code: &Code, j: usize, cap: u32) -> Result<(OutputSet, OutputSet)> {
    check_canonical(code)?;
    check_j(code, j)?;
    let n = code.n();
    check_cap(n, cap)?;

    let xj = code.word(j).bits();
    let prior: Vec<u64> = (2..j).map(|r| code.word(r).bits()).collect();
    let mut ties = Vec::new();
    let mut errors = Vec::new();
    for yv in 0..(1u64 << n) {
        let d1 = yv.count_ones();
        let dj = (xj ^ yv).count_ones();
        if d1 == dj && prior.iter().all(|&b| d1 < (b ^ yv).count_ones()) {
            ties.push(Codeword::new(yv, n)?);
        }
        if d1 == dj + 2 && prior.iter().all(|&b| d1 - 1 != (b ^ yv).count_ones() + 1) {
            errors.push(Codeword::new(yv, n)?);
        }
    }
    Ok((
        OutputSet::from_sorted(n, ties),
        OutputSet::from_sorted(n, errors),
    ))
}

fn restricted_weight(word: Codeword, set: IndexSet) -> u32 {
    hamming_restricted(Codeword::zero(word.n()), word, set).expect("matching lengths")
}

fn filter_level_tie(parent: &OutputSet, group: &SignatureGroup, k: u32) -> OutputSet {
    let lo = group.ell_prev() as i64 - 1;
    let words = parent
        .words()
        .iter()
        .copied()
        .filter(|&y| {
            let d_prev = restricted_weight(y, group.prev_cumulative()) as i64;
            let d_cur = restricted_weight(y, group.cumulative()) as i64;
            lo <= d_prev && d_prev <= d_cur && d_cur == k as i64
        })
        .collect();
    OutputSet::from_sorted(parent.n(), words)
}

fn filter_level_error(parent: &OutputSet, group: &SignatureGroup, k: u32) -> OutputSet {
    let lp = group.ell_prev();
    let words = parent
        .words()
        .iter()
        .copied()
        .filter(|&y| {
            let d_prev = restricted_weight(y, group.prev_cumulative());
            let d_cur = restricted_weight(y, group.cumulative());
            d_prev == lp && d_prev <= d_cur && d_cur == k + 1
        })
        .collect();
    OutputSet::from_sorted(parent.n(), words)
}

/// The level-k pair: the coarse sets filtered by the cumulative restricted
/// weights selected through the level mapping.
pub fn build_level_k(code: &Code, j: usize, k: u32, cap: u32) -> Result<(OutputSet, OutputSet)> {
    let (ties, errors) = build_coarse(code, j, cap)?;
    let profile = build_support_profile(code, j)?;
    let group = profile.sigma(k)?;
    Ok((
        filter_level_tie(&ties, group, k),
        filter_level_error(&errors, group, k),
    ))
}

/// One block of the fine partition: the level-k members sharing a bit
/// pattern outside the cumulative index set, keyed by the lexicographically
/// smallest member as representative, together with the matching error-side
/// subset.
#[derive(Clone, Debug)]
pub struct FineBlock {
    pub rep: Codeword,
    pub ties: OutputSet,
    pub errors: OutputSet,
}

fn fine_blocks(
    level_ties: &OutputSet,
    level_errors: &OutputSet,
    group: &SignatureGroup,
) -> Vec<FineBlock> {
    let n = level_ties.n();
    let off_mask = group.cumulative().complement().mask();
    let mut by_pattern: BTreeMap<u64, Vec<Codeword>> = BTreeMap::new();
    for &y in level_ties.words() {
        by_pattern.entry(y.bits() & off_mask).or_default().push(y);
    }
    let mut blocks: Vec<FineBlock> = by_pattern
        .into_iter()
        .map(|(pattern, members)| {
            let errors = level_errors
                .words()
                .iter()
                .copied()
                .filter(|w| w.bits() & off_mask == pattern)
                .collect();
            FineBlock {
                rep: members[0],
                ties: OutputSet::from_sorted(n, members),
                errors: OutputSet::from_sorted(n, errors),
            }
        })
        .collect();
    blocks.sort_by_key(|b| b.rep);
    blocks
}

/// The fine partition of the level-k tie set, with the matching error-side
/// subsets. The induced blocks, not the representative choice, are the
/// meaningful output.
pub fn build_fine(code: &Code, j: usize, k: u32, cap: u32) -> Result<Vec<FineBlock>> {
    let (ties, errors) = build_level_k(code, j, k, cap)?;
    let profile = build_support_profile(code, j)?;
    let group = profile.sigma(k)?;
    Ok(fine_blocks(&ties, &errors, group))
}

/// Upper bound on the size of a fine tie block: outputs matching the
/// representative off the cumulative set, carrying either one-less-than-full
/// or full weight on the previous cumulative set, and total restricted
/// weight k.
pub fn eq86_upper(profile: &SupportProfile, k: u32) -> Result<BigUint> {
    let group = profile.sigma(k)?;
    let lp = group.ell_prev() as u64;
    let lc = group.ell() as u64;
    let k = k as i64;
    let span = lc - lp;
    Ok(binomial(lp, lp as i64 - 1) * binomial(span, k - (lp as i64 - 1))
        + binomial(lp, lp as i64) * binomial(span, k - lp as i64))
}

/// Exact size of a fine error block: full weight on the previous cumulative
/// set and k+1 total, so the free choices sit in the selected group alone.
pub fn eq36_count(profile: &SupportProfile, k: u32) -> Result<BigUint> {
    let group = profile.sigma(k)?;
    let lp = group.ell_prev() as u64;
    let lc = group.ell() as u64;
    Ok(binomial(lc - lp, k as i64 + 1 - lp as i64))
}

/// Flips one zero of a fine-block representative into a member of the
/// matching error block: inside the selected group when the previous
/// cumulative set is already all-ones, inside the previous cumulative set
/// when exactly one zero remains there.
pub fn construct_auxiliary(u: Codeword, code: &Code, j: usize, k: u32) -> Result<Codeword> {
    check_canonical(code)?;
    check_j(code, j)?;
    let profile = build_support_profile(code, j)?;
    let group = profile.sigma(k)?;
    let d_prev = restricted_weight(u, group.prev_cumulative());
    let target = if d_prev == group.ell_prev() {
        group.members()
    } else if d_prev + 1 == group.ell_prev() {
        group.prev_cumulative()
    } else {
        return Err(Error::Inconsistency {
            detail: format!(
                "representative {u} has restricted weight {d_prev}, expected {} or {}",
                group.ell_prev(),
                group.ell_prev().saturating_sub(1)
            ),
        });
    };
    let zeros = target.mask() & !u.bits();
    if zeros == 0 {
        return Err(Error::Inconsistency {
            detail: format!("no flippable zero in {} for representative {u}", target),
        });
    }
    // lowest position index = highest bit of the mask
    let pos = u.n() - (63 - zeros.leading_zeros());
    Ok(u.flip(pos))
}

/// Result of the implication check behind the exact error-block count: every
/// output satisfying the error-side weight conditions and matching the
/// representative off the cumulative set must land strictly past the tie
/// against codeword j and against no earlier codeword.
#[derive(Clone, Debug)]
pub struct AppendixCheck {
    pub count: u64,
    pub expected: BigUint,
    pub all_conditions_hold: bool,
    pub counterexample: Option<Codeword>,
}

impl AppendixCheck {
    pub fn holds(&self) -> bool {
        self.all_conditions_hold && BigUint::from(self.count) == self.expected
    }
}

/// Enumerates every output satisfying the error-side membership conditions
/// for representative `u` at level `k` and verifies the two distance
/// conclusions on each, by literal full-space filtering.
pub fn verify_appendix(
    code: &Code,
    j: usize,
    k: u32,
    u: Codeword,
    cap: u32,
) -> Result<AppendixCheck> {
    check_canonical(code)?;
    check_j(code, j)?;
    let n = code.n();
    check_cap(n, cap)?;
    let profile = build_support_profile(code, j)?;
    let group = profile.sigma(k)?;
    let lp = group.ell_prev();
    let prev_mask = group.prev_cumulative().mask();
    let cum_mask = group.cumulative().mask();
    let off_mask = group.cumulative().complement().mask();
    let xj = code.word(j).bits();
    let prior: Vec<u64> = (2..j).map(|r| code.word(r).bits()).collect();

    let mut count = 0u64;
    let mut all_hold = true;
    let mut counterexample = None;
    for wv in 0..(1u64 << n) {
        if (wv & prev_mask).count_ones() != lp || (wv & cum_mask).count_ones() != k + 1 {
            continue;
        }
        if (wv ^ u.bits()) & off_mask != 0 {
            continue;
        }
        count += 1;
        let d1 = wv.count_ones() as i64;
        let dj = (xj ^ wv).count_ones() as i64;
        let past_tie = d1 - 1 == dj + 1;
        let no_earlier = prior.iter().all(|&b| d1 - 1 != (b ^ wv).count_ones() as i64 + 1);
        if !(past_tie && no_earlier) && all_hold {
            all_hold = false;
            counterexample = Some(Codeword::new(wv, n)?);
        }
    }
    Ok(AppendixCheck {
        count,
        expected: eq36_count(&profile, k)?,
        all_conditions_hold: all_hold,
        counterexample,
    })
}

/// The fully constructed hierarchy for one canonical code: the top tie and
/// error regions, and per codeword j the coarse pair, support profile,
/// levels, and fine blocks.
pub(crate) struct Hierarchy {
    pub n: u32,
    pub t1: OutputSet,
    pub n1: OutputSet,
    pub layers: Vec<Layer>,
}

pub(crate) struct Layer {
    pub j: usize,
    pub ties: OutputSet,
    pub errors: OutputSet,
    pub profile: SupportProfile,
    pub levels: Vec<LevelSets>,
}

pub(crate) struct LevelSets {
    pub k: u32,
    pub group_index: usize,
    pub ties: OutputSet,
    pub errors: OutputSet,
    pub fine: Vec<FineBlock>,
}

impl Hierarchy {
    pub(crate) fn build(code: &Code, cap: u32) -> Result<Hierarchy> {
        check_canonical(code)?;
        let n = code.n();
        check_cap(n, cap)?;

        // top-level regions for the all-zero sent word, by literal comparison
        let others: Vec<u64> = code.words()[1..].iter().map(|w| w.bits()).collect();
        let mut t1 = Vec::new();
        let mut n1 = Vec::new();
        for yv in 0..(1u64 << n) {
            let d1 = yv.count_ones();
            let min_others = others
                .iter()
                .map(|&b| (b ^ yv).count_ones())
                .min()
                .expect("M >= 2");
            if d1 > min_others {
                n1.push(Codeword::new(yv, n)?);
            } else if d1 == min_others {
                t1.push(Codeword::new(yv, n)?);
            }
        }

        let mut layers = Vec::with_capacity(code.m() - 1);
        for j in 2..=code.m() {
            let (ties, errors) = build_coarse(code, j, cap)?;
            let profile = build_support_profile(code, j)?;
            let mut levels = Vec::with_capacity(profile.ell() as usize);
            for k in 0..profile.ell() {
                let group_index = profile.sigma_index(k)?;
                let group = &profile.groups()[group_index];
                let level_ties = filter_level_tie(&ties, group, k);
                let level_errors = filter_level_error(&errors, group, k);
                let fine = fine_blocks(&level_ties, &level_errors, group);
                levels.push(LevelSets {
                    k,
                    group_index,
                    ties: level_ties,
                    errors: level_errors,
                    fine,
                });
            }
            layers.push(Layer {
                j,
                ties,
                errors,
                profile,
                levels,
            });
        }
        Ok(Hierarchy { n, t1, n1, layers })
    }
}

/// A named check outcome; failing checks carry a minimal witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckVerdict {
    fn ok(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    fn fail(name: impl Into<String>, witness: String) -> Self {
        Self {
            name: name.into(),
            pass: false,
            witness: Some(witness),
        }
    }

    fn from_option(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::ok(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

/// Full hierarchy report: every constructed set plus the verdicts of all
/// structural, counting, ratio, and implication checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: usize,
    pub p: String,
    pub tie_region: Vec<String>,
    pub error_region: Vec<String>,
    pub layers: Vec<LayerReport>,
    pub checks: Vec<CheckVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerReport {
    pub j: usize,
    pub tie_set: Vec<String>,
    pub error_set: Vec<String>,
    pub support: Vec<u32>,
    pub groups: Vec<GroupReport>,
    pub sigma: Vec<String>,
    pub levels: Vec<LevelReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub m: String,
    pub members: Vec<u32>,
    pub cumulative_size: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub k: u32,
    pub m: String,
    pub tie_set: Vec<String>,
    pub error_set: Vec<String>,
    pub fine: Vec<FineReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FineReport {
    pub representative: String,
    pub tie_block: Vec<String>,
    pub error_block: Vec<String>,
    pub tie_size_bound: String,
    pub error_size: String,
}

impl PartitionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&CheckVerdict> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn first_duplicate(sets: &[&OutputSet]) -> Option<(usize, usize, Codeword)> {
    let mut tagged: Vec<(Codeword, usize)> = Vec::new();
    for (idx, set) in sets.iter().enumerate() {
        tagged.extend(set.words().iter().map(|&w| (w, idx)));
    }
    tagged.sort();
    tagged
        .windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1, w[1].1, w[0].0))
}

fn ratio_of(
    ties: &OutputSet,
    errors: &OutputSet,
    ch: &ChannelParams,
) -> Result<Option<ExactRational>> {
    if errors.is_empty() {
        return Ok(None);
    }
    Ok(Some(
        ties.probability_from_zero(ch)? / errors.probability_from_zero(ch)?,
    ))
}

/// Builds the whole hierarchy and verifies every property it is supposed to
/// have: disjoint covers, partitions, non-emptiness, the two counting
/// formulas, the per-block weight structure with its exact ratio identity,
/// the ratio ladder up to the linear bound, the auxiliary flips, and the
/// error-side implication.
pub fn verify_all(code: &Code, ch: &ChannelParams, cap: u32) -> Result<PartitionReport> {
    let hier = Hierarchy::build(code, cap)?;
    let n = hier.n;
    if ch.n() != n {
        return Err(Error::SpectrumLengthMismatch {
            left: n,
            right: ch.n(),
        });
    }
    let mut checks: Vec<CheckVerdict> = Vec::new();

    // coarse tie sets: pairwise disjoint and together covering the tie region
    let tie_sets: Vec<&OutputSet> = hier.layers.iter().map(|l| &l.ties).collect();
    checks.push(CheckVerdict::from_option(
        "coarse_tie_disjoint",
        first_duplicate(&tie_sets).map(|(a, b, w)| {
            format!(
                "{w} appears in both j={} and j={}",
                hier.layers[a].j, hier.layers[b].j
            )
        }),
    ));
    checks.push(CheckVerdict::from_option(
        "coarse_tie_covers_region",
        hier.t1
            .words()
            .iter()
            .find(|&&w| !hier.layers.iter().any(|l| l.ties.contains(w)))
            .map(|w| format!("tie output {w} not covered by any coarse tie set")),
    ));

    // coarse error sets: pairwise disjoint subsets of the error region
    let err_sets: Vec<&OutputSet> = hier.layers.iter().map(|l| &l.errors).collect();
    checks.push(CheckVerdict::from_option(
        "coarse_error_disjoint",
        first_duplicate(&err_sets).map(|(a, b, w)| {
            format!(
                "{w} appears in both j={} and j={}",
                hier.layers[a].j, hier.layers[b].j
            )
        }),
    ));
    checks.push(CheckVerdict::from_option(
        "coarse_error_subset_region",
        hier.layers
            .iter()
            .find_map(|l| {
                l.errors
                    .words()
                    .iter()
                    .find(|&&w| !hier.n1.contains(w))
                    .map(|w| format!("j={}: {w} lies outside the error region", l.j))
            }),
    ));

    // per-j level structure
    let mut level_tie_partition = None;
    let mut level_no_full_weight = None;
    let mut level_error_disjoint = None;
    for layer in &hier.layers {
        let level_ties: Vec<&OutputSet> = layer.levels.iter().map(|l| &l.ties).collect();
        if level_tie_partition.is_none() {
            if let Some((a, b, w)) = first_duplicate(&level_ties) {
                level_tie_partition =
                    Some(format!("j={}: {w} in both k={} and k={}", layer.j, a, b));
            } else {
                let covered: usize = level_ties.iter().map(|s| s.len()).sum();
                if covered != layer.ties.len()
                    || !layer.levels.iter().all(|l| l.ties.is_subset_of(&layer.ties))
                {
                    level_tie_partition = Some(format!(
                        "j={}: levels cover {covered} of {} tie outputs",
                        layer.j,
                        layer.ties.len()
                    ));
                }
            }
        }
        if level_no_full_weight.is_none() {
            for group in layer.profile.groups() {
                if let Some(w) = layer
                    .ties
                    .words()
                    .iter()
                    .find(|&&w| restricted_weight(w, group.cumulative()) == layer.profile.ell())
                {
                    level_no_full_weight = Some(format!(
                        "j={}: {w} has full restricted weight {} on {}",
                        layer.j,
                        layer.profile.ell(),
                        group.cumulative()
                    ));
                }
            }
        }
        if level_error_disjoint.is_none() {
            let level_errs: Vec<&OutputSet> = layer.levels.iter().map(|l| &l.errors).collect();
            if let Some((a, b, w)) = first_duplicate(&level_errs) {
                level_error_disjoint =
                    Some(format!("j={}: {w} in both k={} and k={}", layer.j, a, b));
            } else if let Some(l) = layer
                .levels
                .iter()
                .find(|l| !l.errors.is_subset_of(&layer.errors))
            {
                level_error_disjoint = Some(format!(
                    "j={}: level k={} error set escapes the coarse error set",
                    layer.j, l.k
                ));
            }
        }
    }
    checks.push(CheckVerdict::from_option(
        "level_tie_partition",
        level_tie_partition,
    ));
    checks.push(CheckVerdict::from_option(
        "level_tie_no_full_restricted_weight",
        level_no_full_weight,
    ));
    checks.push(CheckVerdict::from_option(
        "level_error_disjoint_subsets",
        level_error_disjoint,
    ));

    // fine structure: partitions, non-empty error blocks, counting formulas,
    // per-block weight structure and the exact ratio identity
    let mut fine_tie_partition = None;
    let mut fine_error_nonempty = None;
    let mut fine_error_disjoint = None;
    let mut count_exact = None;
    let mut count_upper = None;
    let mut block_weights = None;
    let mut ratio_identity = None;
    let mut ratio_linear = None;
    let c = ch.likelihood_constant();
    let linear_bound = &c * BigRational::from_integer(n.into());
    for layer in &hier.layers {
        for level in &layer.levels {
            let group = &layer.profile.groups()[level.group_index];
            let fine_ties: Vec<&OutputSet> = level.fine.iter().map(|b| &b.ties).collect();
            if fine_tie_partition.is_none() {
                let covered: usize = fine_ties.iter().map(|s| s.len()).sum();
                if first_duplicate(&fine_ties).is_some() || covered != level.ties.len() {
                    fine_tie_partition = Some(format!(
                        "j={}, k={}: blocks cover {covered} of {}",
                        layer.j,
                        level.k,
                        level.ties.len()
                    ));
                }
            }
            if fine_error_disjoint.is_none() {
                let fine_errs: Vec<&OutputSet> = level.fine.iter().map(|b| &b.errors).collect();
                if let Some((a, b, w)) = first_duplicate(&fine_errs) {
                    fine_error_disjoint = Some(format!(
                        "j={}, k={}: {w} in blocks {a} and {b}",
                        layer.j, level.k
                    ));
                } else if let Some(block) = level
                    .fine
                    .iter()
                    .find(|b| !b.errors.is_subset_of(&level.errors))
                {
                    fine_error_disjoint = Some(format!(
                        "j={}, k={}, u={}: error block escapes the level error set",
                        layer.j, level.k, block.rep
                    ));
                }
            }
            let expected_exact = eq36_count(&layer.profile, level.k)?;
            let expected_upper = eq86_upper(&layer.profile, level.k)?;
            for block in &level.fine {
                if fine_error_nonempty.is_none() && block.errors.is_empty() {
                    fine_error_nonempty = Some(format!(
                        "j={}, k={}, u={}: empty error block",
                        layer.j, level.k, block.rep
                    ));
                }
                if count_exact.is_none() && BigUint::from(block.errors.len()) != expected_exact {
                    count_exact = Some(format!(
                        "j={}, k={}, u={}: |error block| = {} but the formula gives {}",
                        layer.j,
                        level.k,
                        block.rep,
                        block.errors.len(),
                        expected_exact
                    ));
                }
                if count_upper.is_none() && BigUint::from(block.ties.len()) > expected_upper {
                    count_upper = Some(format!(
                        "j={}, k={}, u={}: |tie block| = {} exceeds the bound {}",
                        layer.j,
                        level.k,
                        block.rep,
                        block.ties.len(),
                        expected_upper
                    ));
                }
                if block_weights.is_none() {
                    let off = group.cumulative().complement();
                    let bad_tie = block.ties.words().iter().find(|&&w| {
                        restricted_weight(w, group.cumulative()) != level.k
                            || hamming_restricted(w, block.rep, off).unwrap() != 0
                    });
                    let bad_err = block.errors.words().iter().find(|&&w| {
                        restricted_weight(w, group.cumulative()) != level.k + 1
                            || hamming_restricted(w, block.rep, off).unwrap() != 0
                    });
                    if let Some(w) = bad_tie.or(bad_err) {
                        block_weights = Some(format!(
                            "j={}, k={}, u={}: {w} violates the block weight structure",
                            layer.j, level.k, block.rep
                        ));
                    }
                }
                if let Some(r) = ratio_of(&block.ties, &block.errors, ch)? {
                    let by_count = &c
                        * BigRational::new(
                            (block.ties.len() as u64).into(),
                            (block.errors.len() as u64).into(),
                        );
                    if ratio_identity.is_none() && r != by_count {
                        ratio_identity = Some(format!(
                            "j={}, k={}, u={}: probability ratio {} differs from (1-p)/p * |T|/|N| = {}",
                            layer.j,
                            level.k,
                            block.rep,
                            ratio_string(&r),
                            ratio_string(&by_count)
                        ));
                    }
                    if ratio_linear.is_none() && r > linear_bound {
                        ratio_linear = Some(format!(
                            "j={}, k={}, u={}: block ratio {} exceeds (1-p)n/p = {}",
                            layer.j,
                            level.k,
                            block.rep,
                            ratio_string(&r),
                            ratio_string(&linear_bound)
                        ));
                    }
                } else if ratio_linear.is_none() && !block.ties.is_empty() {
                    ratio_linear = Some(format!(
                        "j={}, k={}, u={}: non-empty tie block with empty error block",
                        layer.j, level.k, block.rep
                    ));
                }
            }
        }
    }
    checks.push(CheckVerdict::from_option(
        "fine_tie_partition",
        fine_tie_partition,
    ));
    checks.push(CheckVerdict::from_option(
        "fine_error_nonempty",
        fine_error_nonempty,
    ));
    checks.push(CheckVerdict::from_option(
        "fine_error_disjoint",
        fine_error_disjoint,
    ));
    checks.push(CheckVerdict::from_option("count_error_exact", count_exact));
    checks.push(CheckVerdict::from_option("count_tie_upper", count_upper));
    checks.push(CheckVerdict::from_option(
        "fine_block_weight_structure",
        block_weights,
    ));
    checks.push(CheckVerdict::from_option(
        "fine_ratio_identity",
        ratio_identity,
    ));
    checks.push(CheckVerdict::from_option(
        "fine_ratio_linear_bound",
        ratio_linear,
    ));

    // ratio ladder between the levels of the hierarchy
    checks.push(ladder_checks(&hier, ch)?);

    // auxiliary flip soundness
    let mut aux_witness = None;
    for layer in &hier.layers {
        for level in &layer.levels {
            for block in &level.fine {
                let v = construct_auxiliary(block.rep, code, layer.j, level.k)?;
                if !block.errors.contains(v) {
                    aux_witness = Some(format!(
                        "j={}, k={}, u={}: flip result {v} is not in the error block",
                        layer.j, level.k, block.rep
                    ));
                }
                if aux_witness.is_some() {
                    break;
                }
            }
        }
    }
    checks.push(CheckVerdict::from_option(
        "auxiliary_flip_sound",
        aux_witness,
    ));

    // error-side implication: membership via the weight conditions alone
    let mut appendix_witness = None;
    for layer in &hier.layers {
        for level in &layer.levels {
            for block in &level.fine {
                let result = verify_appendix(code, layer.j, level.k, block.rep, cap)?;
                if !result.holds() && appendix_witness.is_none() {
                    appendix_witness = Some(format!(
                        "j={}, k={}, u={}: count {} vs expected {}{}",
                        layer.j,
                        level.k,
                        block.rep,
                        result.count,
                        result.expected,
                        result
                            .counterexample
                            .map(|w| format!(", counterexample {w}"))
                            .unwrap_or_default()
                    ));
                }
            }
        }
    }
    checks.push(CheckVerdict::from_option(
        "error_membership_implication",
        appendix_witness,
    ));

    // assemble the report
    let layers = hier
        .layers
        .iter()
        .map(|layer| LayerReport {
            j: layer.j,
            tie_set: layer.ties.render(),
            error_set: layer.errors.render(),
            support: layer.profile.support().positions(),
            groups: layer
                .profile
                .groups()
                .iter()
                .map(|g| GroupReport {
                    m: g.m().to_string(),
                    members: g.members().positions(),
                    cumulative_size: g.ell(),
                })
                .collect(),
            sigma: (0..layer.profile.ell())
                .map(|k| layer.profile.sigma_m(k).map(|m| m.to_string()))
                .collect::<Result<_>>()
                .unwrap_or_default(),
            levels: layer
                .levels
                .iter()
                .map(|level| LevelReport {
                    k: level.k,
                    m: layer.profile.groups()[level.group_index].m().to_string(),
                    tie_set: level.ties.render(),
                    error_set: level.errors.render(),
                    fine: level
                        .fine
                        .iter()
                        .map(|b| FineReport {
                            representative: b.rep.to_string(),
                            tie_block: b.ties.render(),
                            error_block: b.errors.render(),
                            tie_size_bound: eq86_upper(&layer.profile, level.k)
                                .map(|v| v.to_string())
                                .unwrap_or_default(),
                            error_size: eq36_count(&layer.profile, level.k)
                                .map(|v| v.to_string())
                                .unwrap_or_default(),
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();

    Ok(PartitionReport {
        n,
        m: code.m(),
        p: ratio_string(ch.p()),
        tie_region: hier.t1.render(),
        error_region: hier.n1.render(),
        layers,
        checks,
    })
}

/// Exact ratio comparisons between consecutive levels of the hierarchy: the
/// top tie/error ratio against the best coarse ratio, each coarse ratio
/// against its best level ratio, and each level ratio against its best fine
/// ratio. Empty tie sets are skipped; a non-empty tie set facing an empty
/// error set is itself a failure.
fn ladder_checks(hier: &Hierarchy, ch: &ChannelParams) -> Result<CheckVerdict> {
    let name = "ratio_ladder";
    if hier.t1.is_empty() {
        return Ok(CheckVerdict::ok(name));
    }
    let top = match ratio_of(&hier.t1, &hier.n1, ch)? {
        Some(r) => r,
        None => {
            return Ok(CheckVerdict::fail(
                name,
                "non-empty tie region with empty error region".into(),
            ))
        }
    };

    let mut best_coarse: Option<ExactRational> = None;
    for layer in &hier.layers {
        if layer.ties.is_empty() {
            continue;
        }
        let coarse = match ratio_of(&layer.ties, &layer.errors, ch)? {
            Some(r) => r,
            None => {
                return Ok(CheckVerdict::fail(
                    name,
                    format!("j={}: non-empty coarse tie set with empty error set", layer.j),
                ))
            }
        };

        let mut best_level: Option<ExactRational> = None;
        for level in &layer.levels {
            if level.ties.is_empty() {
                continue;
            }
            let level_ratio = match ratio_of(&level.ties, &level.errors, ch)? {
                Some(r) => r,
                None => {
                    return Ok(CheckVerdict::fail(
                        name,
                        format!(
                            "j={}, k={}: non-empty level tie set with empty error set",
                            layer.j, level.k
                        ),
                    ))
                }
            };

            let mut best_fine: Option<ExactRational> = None;
            for block in &level.fine {
                match ratio_of(&block.ties, &block.errors, ch)? {
                    Some(r) => {
                        if best_fine.as_ref().map_or(true, |b| &r > b) {
                            best_fine = Some(r);
                        }
                    }
                    None => {
                        return Ok(CheckVerdict::fail(
                            name,
                            format!(
                                "j={}, k={}, u={}: fine block with empty error side",
                                layer.j, level.k, block.rep
                            ),
                        ))
                    }
                }
            }
            let best_fine = best_fine.expect("non-empty level tie set has fine blocks");
            if level_ratio > best_fine {
                return Ok(CheckVerdict::fail(
                    name,
                    format!(
                        "j={}, k={}: level ratio {} exceeds best fine ratio {}",
                        layer.j,
                        level.k,
                        ratio_string(&level_ratio),
                        ratio_string(&best_fine)
                    ),
                ));
            }
            if best_level.as_ref().map_or(true, |b| &level_ratio > b) {
                best_level = Some(level_ratio);
            }
        }
        let best_level = match best_level {
            Some(b) => b,
            None => {
                return Ok(CheckVerdict::fail(
                    name,
                    format!("j={}: non-empty coarse tie set but every level is empty", layer.j),
                ))
            }
        };
        if coarse > best_level {
            return Ok(CheckVerdict::fail(
                name,
                format!(
                    "j={}: coarse ratio {} exceeds best level ratio {}",
                    layer.j,
                    ratio_string(&coarse),
                    ratio_string(&best_level)
                ),
            ));
        }
        if best_coarse.as_ref().map_or(true, |b| &coarse > b) {
            best_coarse = Some(coarse);
        }
    }
    let best_coarse = match best_coarse {
        Some(b) => b,
        None => {
            return Ok(CheckVerdict::fail(
                name,
                "non-empty tie region but every coarse tie set is empty".into(),
            ))
        }
    };
    if top > best_coarse {
        return Ok(CheckVerdict::fail(
            name,
            format!(
                "top ratio {} exceeds best coarse ratio {}",
                ratio_string(&top),
                ratio_string(&best_coarse)
            ),
        ));
    }
    let linear = ch.likelihood_constant() * BigRational::from_integer(hier.n.into());
    if best_coarse > linear && hier.layers.iter().any(|l| !l.ties.is_empty()) {
        // redundant with the per-block check but kept as the ladder endpoint
        let worst = hier
            .layers
            .iter()
            .filter(|l| !l.ties.is_empty())
            .map(|l| l.j)
            .collect::<Vec<_>>();
        return Ok(CheckVerdict::fail(
            name,
            format!(
                "best coarse ratio {} exceeds the linear bound {} (layers {:?})",
                ratio_string(&best_coarse),
                ratio_string(&linear),
                worst
            ),
        ));
    }
    Ok(CheckVerdict::ok(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_ratio;
    use crate::DEFAULT_ENUM_CAP;
    use proptest::prelude::*;

    fn example1() -> Code {
        Code::parse("0000\n1100\n0110").unwrap()
    }

    fn example2() -> Code {
        Code::parse("000000\n111100\n001111").unwrap()
    }

    fn ch(p: &str, n: u32) -> ChannelParams {
        ChannelParams::new(parse_ratio(p).unwrap(), n).unwrap()
    }

    fn set(n: u32, members: &[&str]) -> OutputSet {
        OutputSet::from_words(
            n,
            members.iter().map(|s| Codeword::parse(s).unwrap()).collect(),
        )
    }

    fn w(text: &str) -> Codeword {
        Codeword::parse(text).unwrap()
    }

    #[test]
    fn coarse_sets_for_example1() {
        let code = example1();
        let (t2, n2) = build_coarse(&code, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(
            t2,
            set(4, &["0100", "1000", "0101", "1001", "1010", "1011", "0110", "0111"])
        );
        assert_eq!(n2, set(4, &["1100", "1101", "1110", "1111"]));

        let (t3, n3) = build_coarse(&code, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(t3, set(4, &["0010", "0011"]));
        assert_eq!(n3, set(4, &["0110", "0111"]));
    }

    #[test]
    fn coarse_sets_for_example2() {
        let (t3, n3) = build_coarse(&example2(), 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(
            t3,
            set(
                6,
                &["001010", "001001", "000110", "000101", "000011", "010011", "100011"]
            )
        );
        assert_eq!(
            n3,
            set(
                6,
                &[
                    "000111", "001011", "001101", "001110", "101011", "011011", "100111",
                    "010111", "111101", "111110"
                ]
            )
        );
    }

    #[test]
    fn coarse_requires_canonical_code() {
        let code = Code::parse("1000\n0100").unwrap();
        assert!(matches!(
            build_coarse(&code, 2, DEFAULT_ENUM_CAP),
            Err(Error::NotCanonical)
        ));
    }

    #[test]
    fn support_profile_examples() {
        // j = 3 of the n = 6 example: group {5,6} at rank 1, {3,4} at rank 2
        let profile = build_support_profile(&example2(), 3).unwrap();
        assert_eq!(profile.ell(), 4);
        let groups = profile.groups();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].m(), &BigUint::from(1u32));
        assert_eq!(groups[0].members().positions(), vec![5, 6]);
        assert_eq!(groups[0].ell(), 2);
        assert_eq!(groups[1].m(), &BigUint::from(2u32));
        assert_eq!(groups[1].members().positions(), vec![3, 4]);
        assert_eq!(groups[1].ell(), 4);

        // j = 3 of the n = 4 example: supports {1,2} and {2,3}
        let profile = build_support_profile(&example1(), 3).unwrap();
        let groups = profile.groups();
        assert_eq!(groups[0].members().positions(), vec![3]);
        assert_eq!(groups[1].members().positions(), vec![2]);
        assert_eq!(groups[0].ell(), 1);
        assert_eq!(groups[1].ell(), 2);

        // j = 2 always has a single full group
        let profile = build_support_profile(&example1(), 2).unwrap();
        assert_eq!(profile.groups().len(), 1);
        assert_eq!(profile.groups()[0].members().positions(), vec![1, 2]);
    }

    #[test]
    fn sigma_examples() {
        let profile = build_support_profile(&example2(), 3).unwrap();
        let sigmas: Vec<u32> = (0..4)
            .map(|k| u32::try_from(&profile.sigma_m(k).unwrap()).unwrap())
            .collect();
        assert_eq!(sigmas, vec![1, 2, 2, 2]);

        let profile = build_support_profile(&example1(), 3).unwrap();
        assert_eq!(profile.sigma_m(0).unwrap(), BigUint::from(2u32));
        assert_eq!(profile.sigma_m(1).unwrap(), BigUint::from(2u32));
        assert!(matches!(
            profile.sigma(2),
            Err(Error::LevelOutOfRange { k: 2, ell: 2 })
        ));

        // single-group profiles map every level to rank 1
        let profile = build_support_profile(&example1(), 2).unwrap();
        for k in 0..2 {
            assert_eq!(profile.sigma_m(k).unwrap(), BigUint::from(1u32));
        }
    }

    #[test]
    fn level_sets_for_example3() {
        let code = example2();
        let full_t = set(
            6,
            &["001010", "001001", "000110", "000101", "000011", "010011", "100011"],
        );
        for k in [0u32, 1, 3] {
            let (tk, _) = build_level_k(&code, 3, k, DEFAULT_ENUM_CAP).unwrap();
            assert!(tk.is_empty(), "tie level k={k} should be empty");
        }
        let (t2, n2) = build_level_k(&code, 3, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(t2, full_t);
        // the error side follows the letter of the defining conditions
        assert_eq!(
            n2,
            set(6, &["000111", "001011", "101011", "011011", "100111", "010111"])
        );
        let (_, n0) = build_level_k(&code, 3, 0, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(n0, set(6, &["001101", "001110", "111101", "111110"]));
        let (_, n1) = build_level_k(&code, 3, 1, DEFAULT_ENUM_CAP).unwrap();
        assert!(n1.is_empty());
        let (_, n3) = build_level_k(&code, 3, 3, DEFAULT_ENUM_CAP).unwrap();
        assert!(n3.is_empty());
    }

    #[test]
    fn level_sets_for_example1() {
        // all four k = 0 sets empty
        for j in [2usize, 3] {
            let (t0, n0) = build_level_k(&example1(), j, 0, DEFAULT_ENUM_CAP).unwrap();
            assert!(t0.is_empty());
            assert!(n0.is_empty());
        }
    }

    #[test]
    fn fine_partition_for_example2() {
        let blocks = build_fine(&example2(), 3, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0].rep, w("000011"));
        assert_eq!(
            blocks[0].ties,
            set(6, &["000011", "000101", "000110", "001001", "001010"])
        );
        assert_eq!(blocks[0].errors, set(6, &["000111", "001011"]));
        assert_eq!(blocks[1].rep, w("010011"));
        assert_eq!(blocks[1].ties, set(6, &["010011"]));
        assert_eq!(blocks[1].errors, set(6, &["011011", "010111"]));
        assert_eq!(blocks[2].rep, w("100011"));
        assert_eq!(blocks[2].ties, set(6, &["100011"]));
        assert_eq!(blocks[2].errors, set(6, &["101011", "100111"]));
    }

    #[test]
    fn fine_partition_for_example1_level1() {
        let blocks = build_fine(&example1(), 2, 1, DEFAULT_ENUM_CAP).unwrap();
        let tie_blocks: Vec<OutputSet> = blocks.iter().map(|b| b.ties.clone()).collect();
        assert_eq!(
            tie_blocks,
            vec![
                set(4, &["0100", "1000"]),
                set(4, &["0101", "1001"]),
                set(4, &["0110", "1010"]),
                set(4, &["0111", "1011"]),
            ]
        );

        let blocks = build_fine(&example1(), 3, 1, DEFAULT_ENUM_CAP).unwrap();
        let reps: Vec<Codeword> = blocks.iter().map(|b| b.rep).collect();
        assert_eq!(reps, vec![w("0010"), w("0011")]);
    }

    #[test]
    fn counting_formula_examples() {
        let profile = build_support_profile(&example2(), 3).unwrap();
        assert_eq!(eq86_upper(&profile, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(eq36_count(&profile, 2).unwrap(), BigUint::from(2u32));
        // last level: a single full-weight choice remains
        assert_eq!(eq36_count(&profile, 3).unwrap(), BigUint::from(1u32));

        let profile = build_support_profile(&example1(), 3).unwrap();
        assert_eq!(eq86_upper(&profile, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(eq36_count(&profile, 1).unwrap(), BigUint::from(1u32));

        // rank-1 levels start from an empty previous cumulative set
        let profile = build_support_profile(&example1(), 2).unwrap();
        assert_eq!(eq86_upper(&profile, 0).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn auxiliary_flip_examples() {
        let code = example2();
        assert_eq!(construct_auxiliary(w("000011"), &code, 3, 2).unwrap(), w("001011"));
        assert_eq!(construct_auxiliary(w("001010"), &code, 3, 2).unwrap(), w("001011"));

        let code = example1();
        assert_eq!(construct_auxiliary(w("0010"), &code, 3, 1).unwrap(), w("0110"));
    }

    #[test]
    fn appendix_examples() {
        let result = verify_appendix(&example2(), 3, 2, w("000011"), DEFAULT_ENUM_CAP).unwrap();
        assert!(result.holds());
        assert_eq!(result.count, 2);

        let result = verify_appendix(&example1(), 2, 1, w("0100"), DEFAULT_ENUM_CAP).unwrap();
        assert!(result.holds());
        assert_eq!(result.count, 1);

        let result = verify_appendix(&example1(), 3, 1, w("0010"), DEFAULT_ENUM_CAP).unwrap();
        assert!(result.holds());
        assert_eq!(result.count, 1);
    }

    #[test]
    fn verify_all_passes_on_the_worked_examples() {
        for (code, n) in [(example1(), 4u32), (example2(), 6u32)] {
            let report = verify_all(&code, &ch("1/4", n), DEFAULT_ENUM_CAP).unwrap();
            assert!(
                report.all_pass(),
                "failed checks: {:?}",
                report.failed()
            );
        }
    }

    #[test]
    fn verify_all_report_shape_for_example1() {
        let report = verify_all(&example1(), &ch("1/4", 4), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(report.tie_region.len(), 8);
        assert_eq!(report.error_region.len(), 6);
        // the coarse tie cover strictly contains the tie region
        let covered: usize = report.layers.iter().map(|l| l.tie_set.len()).sum();
        assert!(covered > report.tie_region.len());

        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: PartitionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn verify_all_passes_on_random_canonical_codes(
            seed in any::<u64>(), n in 2u32..=9, m in 2usize..=5,
        ) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap().canonicalize(1).unwrap();
            let report = verify_all(&code, &ch("1/4", n), DEFAULT_ENUM_CAP).unwrap();
            prop_assert!(report.all_pass(), "failed: {:?}", report.failed());
        }

        #[test]
        fn public_fine_builder_matches_the_level_sets(
            seed in any::<u64>(), n in 2u32..=8, m in 2usize..=4,
        ) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap().canonicalize(1).unwrap();
            for j in 2..=m {
                let profile = build_support_profile(&code, j).unwrap();
                for k in 0..profile.ell() {
                    let (tk, nk) = build_level_k(&code, j, k, DEFAULT_ENUM_CAP).unwrap();
                    let blocks = build_fine(&code, j, k, DEFAULT_ENUM_CAP).unwrap();
                    let total: usize = blocks.iter().map(|b| b.ties.len()).sum();
                    prop_assert_eq!(total, tk.len());
                    for block in &blocks {
                        prop_assert!(block.ties.is_subset_of(&tk));
                        prop_assert!(block.errors.is_subset_of(&nk));
                    }
                }
            }
        }
    }
}
