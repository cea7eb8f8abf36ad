//! The brute-force ground truth: classify every channel output for every sent
//! codeword and produce exact values of the minimum error probability `a_n`,
//! the tie-free bound `b_n`, and the tie probability `delta_n`.
//!
//! Enumeration order: `y` ranges over the integers `0..2^n`, bit `i` of the
//! integer being tuple position `n - i`. Contiguous ranges are split into
//! chunks whose partial spectra are combined with exact integer addition, so
//! results are bit-identical at any parallelism degree.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitcode::{Code, Codeword};
use crate::error::{Error, Result};
use crate::exactnum::{
    ratio_string, spectrum_probability, ChannelParams, DistanceSpectrum, ExactRational,
};

const CHUNK_BITS: u32 = 14;

/// Classification of one channel output for one sent codeword.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OutcomeClass {
    /// The sent codeword is the unique minimum-distance codeword.
    StrictCorrect,
    /// Some other codeword is strictly closer: a guaranteed decoder error.
    StrictError,
    /// The sent codeword ties for the minimum distance; `winners` holds the
    /// 1-based indices of all minimum-distance codewords (at least two,
    /// including the sent one).
    Tie { winners: Vec<usize> },
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    Ok(())
}

/// The 1-based indices of all minimum-distance codewords for `y`, plus the
/// minimum distance itself.
pub fn winners(code: &Code, y: Codeword) -> (Vec<usize>, u32) {
    let mut best = u32::MAX;
    let mut idx = Vec::new();
    for (i, w) in code.words().iter().enumerate() {
        let d = (w.bits() ^ y.bits()).count_ones();
        if d < best {
            best = d;
            idx.clear();
            idx.push(i + 1);
        } else if d == best {
            idx.push(i + 1);
        }
    }
    (idx, best)
}

/// Classifies `y` for the given sent codeword by literal comparison of
/// `d(x_sent, y)` against the minimum distance over the other codewords.
pub fn classify(code: &Code, sent: usize, y: Codeword) -> Result<OutcomeClass> {
    if sent == 0 || sent > code.m() {
        return Err(Error::IndexOutOfRange {
            index: sent,
            m: code.m(),
        });
    }
    if y.n() != code.n() {
        return Err(Error::LengthMismatch {
            left: code.n(),
            right: y.n(),
        });
    }
    let d_sent = (code.word(sent).bits() ^ y.bits()).count_ones();
    let min_others = code
        .words()
        .iter()
        .enumerate()
        .filter(|(i, _)| i + 1 != sent)
        .map(|(_, w)| (w.bits() ^ y.bits()).count_ones())
        .min()
        .expect("M >= 2");
    if d_sent > min_others {
        Ok(OutcomeClass::StrictError)
    } else if d_sent == min_others {
        let (w, _) = winners(code, y);
        Ok(OutcomeClass::Tie { winners: w })
    } else {
        Ok(OutcomeClass::StrictCorrect)
    }
}

/// Tie-break rule for the fixed-rule decoder.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TieBreak {
    LowestIndex,
    HighestIndex,
}

/// Minimum-distance decoding with the named tie-break rule; returns a
/// 1-based codeword index.
pub fn decode(code: &Code, y: Codeword, tiebreak: TieBreak) -> usize {
    let (w, _) = winners(code, y);
    match tiebreak {
        TieBreak::LowestIndex => w[0],
        TieBreak::HighestIndex => *w.last().expect("winner set is non-empty"),
    }
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let step = 1u64 << CHUNK_BITS;
    let mut ranges = Vec::new();
    let mut start = 0u64;
    while start < total {
        ranges.push((start, (start + step).min(total)));
        start += step;
    }
    ranges
}

/// Exhaustively classifies all `2^n` outputs for one sent codeword by literal
/// evaluation of the strict-error / tie conditions, returning the
/// (error, tie, correct) distance spectra relative to the sent codeword.
pub fn enumerate(
    code: &Code,
    sent: usize,
    cap: u32,
) -> Result<(DistanceSpectrum, DistanceSpectrum, DistanceSpectrum)> {
    if sent == 0 || sent > code.m() {
        return Err(Error::IndexOutOfRange {
            index: sent,
            m: code.m(),
        });
    }
    let n = code.n();
    check_cap(n, cap)?;
    let total = 1u64 << n;
    let sent_bits = code.word(sent).bits();
    let other_bits: Vec<u64> = code
        .words()
        .iter()
        .enumerate()
        .filter(|(i, _)| i + 1 != sent)
        .map(|(_, w)| w.bits())
        .collect();

    let width = n as usize + 1;
    let merged = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut err = vec![0u64; width];
            let mut tie = vec![0u64; width];
            let mut cor = vec![0u64; width];
            for y in lo..hi {
                let d_sent = (sent_bits ^ y).count_ones();
                let min_others = other_bits
                    .iter()
                    .map(|&b| (b ^ y).count_ones())
                    .min()
                    .expect("M >= 2");
                if d_sent > min_others {
                    err[d_sent as usize] += 1;
                } else if d_sent == min_others {
                    tie[d_sent as usize] += 1;
                } else {
                    cor[d_sent as usize] += 1;
                }
            }
            (err, tie, cor)
        })
        .reduce(
            || (vec![0u64; width], vec![0u64; width], vec![0u64; width]),
            |mut a, b| {
                for d in 0..width {
                    a.0[d] += b.0[d];
                    a.1[d] += b.1[d];
                    a.2[d] += b.2[d];
                }
                a
            },
        );

    Ok((
        DistanceSpectrum::from_u64_counts(n, &merged.0)?,
        DistanceSpectrum::from_u64_counts(n, &merged.1)?,
        DistanceSpectrum::from_u64_counts(n, &merged.2)?,
    ))
}

struct ScanAccum {
    err: Vec<Vec<u64>>,
    tie: Vec<Vec<u64>>,
    cor: Vec<Vec<u64>>,
    /// At index d: sum over outputs with minimum distance d of
    /// (|winner set| - 1); evaluating this spectrum gives the exact gap
    /// between `a_n` and `b_n` (times M).
    excess: Vec<u64>,
}

impl ScanAccum {
    fn new(m: usize, width: usize) -> Self {
        Self {
            err: vec![vec![0; width]; m],
            tie: vec![vec![0; width]; m],
            cor: vec![vec![0; width]; m],
            excess: vec![0; width],
        }
    }

    fn merge(mut self, other: ScanAccum) -> ScanAccum {
        for i in 0..self.err.len() {
            for d in 0..self.excess.len() {
                self.err[i][d] += other.err[i][d];
                self.tie[i][d] += other.tie[i][d];
                self.cor[i][d] += other.cor[i][d];
            }
        }
        for d in 0..self.excess.len() {
            self.excess[d] += other.excess[d];
        }
        self
    }
}

fn scan_all(code: &Code) -> ScanAccum {
    let n = code.n();
    let m = code.m();
    let width = n as usize + 1;
    let total = 1u64 << n;
    let word_bits: Vec<u64> = code.words().iter().map(|w| w.bits()).collect();

    chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = ScanAccum::new(m, width);
            let mut dists = vec![0u32; m];
            for y in lo..hi {
                let mut min = u32::MAX;
                let mut min_count = 0u32;
                for (i, &b) in word_bits.iter().enumerate() {
                    let d = (b ^ y).count_ones();
                    dists[i] = d;
                    if d < min {
                        min = d;
                        min_count = 1;
                    } else if d == min {
                        min_count += 1;
                    }
                }
                for (i, &d) in dists.iter().enumerate() {
                    if d > min {
                        acc.err[i][d as usize] += 1;
                    } else if min_count >= 2 {
                        acc.tie[i][d as usize] += 1;
                    } else {
                        acc.cor[i][d as usize] += 1;
                    }
                }
                acc.excess[min as usize] += (min_count - 1) as u64;
            }
            acc
        })
        .reduce(|| ScanAccum::new(m, width), ScanAccum::merge)
}

/// Exact per-code analysis: per-codeword error/tie/correct spectra plus the
/// probabilities `a_n`, `b_n`, `delta_n` and the derived theorem quantities.
#[derive(Clone, Debug)]
pub struct TieAnalysis {
    n: u32,
    m: usize,
    p: ExactRational,
    spec_error: Vec<DistanceSpectrum>,
    spec_tie: Vec<DistanceSpectrum>,
    spec_correct: Vec<DistanceSpectrum>,
    tie_excess: DistanceSpectrum,
    a: ExactRational,
    b: ExactRational,
    delta: ExactRational,
    ratio: ExactRational,
    rhs: ExactRational,
}

impl TieAnalysis {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &ExactRational {
        &self.p
    }

    pub fn a_n(&self) -> &ExactRational {
        &self.a
    }

    pub fn b_n(&self) -> &ExactRational {
        &self.b
    }

    pub fn delta_n(&self) -> &ExactRational {
        &self.delta
    }

    /// delta_n / b_n (b_n > 0 holds for every code of distinct codewords).
    pub fn ratio_delta_b(&self) -> &ExactRational {
        &self.ratio
    }

    /// (1 + (1-p)/p * n) * b_n.
    pub fn bound_rhs(&self) -> &ExactRational {
        &self.rhs
    }

    /// bound_rhs - a_n.
    pub fn theorem_margin(&self) -> ExactRational {
        &self.rhs - &self.a
    }

    pub fn spec_error(&self, sent: usize) -> &DistanceSpectrum {
        &self.spec_error[sent - 1]
    }

    pub fn spec_tie(&self, sent: usize) -> &DistanceSpectrum {
        &self.spec_tie[sent - 1]
    }

    pub fn spec_correct(&self, sent: usize) -> &DistanceSpectrum {
        &self.spec_correct[sent - 1]
    }

    /// Probability that the sent codeword is involved in a tie for a single
    /// sent index, i.e. the value of its tie spectrum.
    pub fn tie_probability(&self, sent: usize, ch: &ChannelParams) -> Result<ExactRational> {
        spectrum_probability(&self.spec_tie[sent - 1], ch)
    }

    pub fn to_report(&self) -> AnalyzeReport {
        AnalyzeReport {
            n: self.n,
            m: self.m,
            p: ratio_string(&self.p),
            a_n: ratio_string(&self.a),
            b_n: ratio_string(&self.b),
            delta_n: ratio_string(&self.delta),
            ratio: ratio_string(&self.ratio),
            bound_rhs: ratio_string(&self.rhs),
            spectra: (0..self.m)
                .map(|i| SpectrumRow {
                    index: i + 1,
                    error: self.spec_error[i].clone(),
                    tie: self.spec_tie[i].clone(),
                    correct: self.spec_correct[i].clone(),
                })
                .collect(),
        }
    }
}

/// JSON form of a [`TieAnalysis`]; all rationals rendered as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: usize,
    pub p: String,
    pub a_n: String,
    pub b_n: String,
    pub delta_n: String,
    pub ratio: String,
    pub bound_rhs: String,
    pub spectra: Vec<SpectrumRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub index: usize,
    pub error: DistanceSpectrum,
    pub tie: DistanceSpectrum,
    pub correct: DistanceSpectrum,
}

/// Exact analysis of a code over the channel.
///
/// `b_n` and `delta_n` come from the per-codeword spectra; `a_n` uses the
/// winner-set identity: for each output, every minimum-distance codeword
/// beyond the decoded one contributes its conditional probability to the gap
/// `a_n - b_n`, independently of the tie-break rule.
pub fn analyze(code: &Code, ch: &ChannelParams, cap: u32) -> Result<TieAnalysis> {
    let n = code.n();
    check_cap(n, cap)?;
    if ch.n() != n {
        return Err(Error::SpectrumLengthMismatch {
            left: n,
            right: ch.n(),
        });
    }
    let m = code.m();
    let acc = scan_all(code);

    let spec_error: Vec<DistanceSpectrum> = acc
        .err
        .iter()
        .map(|c| DistanceSpectrum::from_u64_counts(n, c))
        .collect::<Result<_>>()?;
    let spec_tie: Vec<DistanceSpectrum> = acc
        .tie
        .iter()
        .map(|c| DistanceSpectrum::from_u64_counts(n, c))
        .collect::<Result<_>>()?;
    let spec_correct: Vec<DistanceSpectrum> = acc
        .cor
        .iter()
        .map(|c| DistanceSpectrum::from_u64_counts(n, c))
        .collect::<Result<_>>()?;
    let tie_excess = DistanceSpectrum::from_u64_counts(n, &acc.excess)?;

    let m_rat = BigRational::from_integer(BigInt::from(m));
    let mut b = BigRational::zero();
    let mut delta = BigRational::zero();
    for i in 0..m {
        b += spectrum_probability(&spec_error[i], ch)?;
        delta += spectrum_probability(&spec_tie[i], ch)?;
    }
    b /= &m_rat;
    delta /= &m_rat;
    let a = &b + spectrum_probability(&tie_excess, ch)? / &m_rat;

    let ratio = &delta / &b;
    let c = ch.likelihood_constant();
    let rhs = (BigRational::one() + c * BigRational::from_integer(BigInt::from(n))) * &b;

    Ok(TieAnalysis {
        n,
        m,
        p: ch.p().clone(),
        spec_error,
        spec_tie,
        spec_correct,
        tie_excess,
        a,
        b,
        delta,
        ratio,
        rhs,
    })
}

/// Exact error probability of the fixed-tie-break minimum-distance decoder,
/// computed by running the decoder on every output. Independent of the
/// winner-set identity used by [`analyze`]; the two must agree exactly.
pub fn decoder_error_probability(
    code: &Code,
    ch: &ChannelParams,
    tiebreak: TieBreak,
    cap: u32,
) -> Result<ExactRational> {
    let n = code.n();
    check_cap(n, cap)?;
    let m = code.m();
    let width = n as usize + 1;
    let total = 1u64 << n;
    let word_bits: Vec<u64> = code.words().iter().map(|w| w.bits()).collect();

    let err = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut err = vec![vec![0u64; width]; m];
            let mut dists = vec![0u32; m];
            for y in lo..hi {
                let mut min = u32::MAX;
                for (i, &b) in word_bits.iter().enumerate() {
                    let d = (b ^ y).count_ones();
                    dists[i] = d;
                    if d < min {
                        min = d;
                    }
                }
                let decoded = match tiebreak {
                    TieBreak::LowestIndex => dists.iter().position(|&d| d == min),
                    TieBreak::HighestIndex => dists.iter().rposition(|&d| d == min),
                }
                .expect("minimum is attained");
                for (i, &d) in dists.iter().enumerate() {
                    if i != decoded {
                        err[i][d as usize] += 1;
                    }
                }
            }
            err
        })
        .reduce(
            || vec![vec![0u64; width]; m],
            |mut a, b| {
                for i in 0..m {
                    for d in 0..width {
                        a[i][d] += b[i][d];
                    }
                }
                a
            },
        );

    let mut total_prob = BigRational::zero();
    for counts in &err {
        let spec = DistanceSpectrum::from_u64_counts(n, counts)?;
        total_prob += spectrum_probability(&spec, ch)?;
    }
    Ok(total_prob / BigRational::from_integer(BigInt::from(m)))
}

/// The tie-free bound computed from its posterior-probability definition:
/// the joint probability of pairs (x, y) whose posterior is strictly below
/// the best competing posterior. Uses literal exact-rational posterior
/// comparisons rather than Hamming distances, as an independent route.
pub fn posterior_genie_bound(code: &Code, ch: &ChannelParams, cap: u32) -> Result<ExactRational> {
    let n = code.n();
    check_cap(n, cap)?;
    if ch.n() != n {
        return Err(Error::SpectrumLengthMismatch {
            left: n,
            right: ch.n(),
        });
    }
    let m = code.m();
    let width = n as usize + 1;
    let total = 1u64 << n;
    let word_bits: Vec<u64> = code.words().iter().map(|w| w.bits()).collect();

    // Conditional output weights: P(y|x) = weight[d(x,y)] / den^n with
    // weight[d] = num^d * (den - num)^(n - d).
    let x = ch.p().numer().to_biguint().expect("0 < p");
    let y_den = ch.p().denom().to_biguint().expect("positive denominator");
    let q = &y_den - &x;
    let mut weight = vec![BigUint::one(); width];
    for d in 0..width {
        weight[d] = num::pow::pow(x.clone(), d) * num::pow::pow(q.clone(), n as usize - d);
    }

    let err = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut err = vec![vec![0u64; width]; m];
            let mut dists = vec![0usize; m];
            for yv in lo..hi {
                for (i, &b) in word_bits.iter().enumerate() {
                    dists[i] = (b ^ yv).count_ones() as usize;
                }
                // Posterior of x_i given y, with the uniform prior: the
                // conditional weight divided by the total output weight.
                let total_weight: BigUint = dists.iter().map(|&d| &weight[d]).sum();
                let denom = BigInt::from(total_weight);
                let posts: Vec<BigRational> = dists
                    .iter()
                    .map(|&d| BigRational::new_raw(BigInt::from(weight[d].clone()), denom.clone()))
                    .collect();
                // max and second max posterior by exact comparison
                let mut best = 0usize;
                let mut best_count = 1u32;
                for i in 1..m {
                    if posts[i] > posts[best] {
                        best = i;
                        best_count = 1;
                    } else if posts[i] == posts[best] {
                        best_count += 1;
                    }
                }
                let mut second: Option<usize> = None;
                for i in 0..m {
                    if i != best && second.map_or(true, |s| posts[i] > posts[s]) {
                        second = Some(i);
                    }
                }
                for i in 0..m {
                    let competitor = if i == best && best_count == 1 {
                        second.expect("M >= 2")
                    } else {
                        best
                    };
                    if posts[i] < posts[competitor] {
                        err[i][dists[i]] += 1;
                    }
                }
            }
            err
        })
        .reduce(
            || vec![vec![0u64; width]; m],
            |mut a, b| {
                for i in 0..m {
                    for d in 0..width {
                        a[i][d] += b[i][d];
                    }
                }
                a
            },
        );

    let mut b_total = BigRational::zero();
    for counts in &err {
        let spec = DistanceSpectrum::from_u64_counts(n, counts)?;
        b_total += spectrum_probability(&spec, ch)?;
    }
    Ok(b_total / BigRational::from_integer(BigInt::from(m)))
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

    fn ch(p: &str, n: u32) -> ChannelParams {
        ChannelParams::new(parse_ratio(p).unwrap(), n).unwrap()
    }

    fn w(text: &str) -> Codeword {
        Codeword::parse(text).unwrap()
    }

    #[test]
    fn classify_examples() {
        let code = example1();
        assert_eq!(
            classify(&code, 1, w("0100")).unwrap(),
            OutcomeClass::Tie {
                winners: vec![1, 2]
            }
        );
        assert_eq!(
            classify(&code, 1, w("1111")).unwrap(),
            OutcomeClass::StrictError
        );
        // sent word itself, all other codewords at distance >= 2
        assert_eq!(
            classify(&code, 1, w("0000")).unwrap(),
            OutcomeClass::StrictCorrect
        );
    }

    #[test]
    fn enumerate_examples() {
        let code = example1();
        let (e, t, c) = enumerate(&code, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e, DistanceSpectrum::from_u64_counts(4, &[0, 0, 2, 3, 1]).unwrap());
        assert_eq!(t, DistanceSpectrum::from_u64_counts(4, &[0, 3, 4, 1, 0]).unwrap());
        assert_eq!(c, DistanceSpectrum::from_u64_counts(4, &[1, 1, 0, 0, 0]).unwrap());

        let code = Code::parse("0\n1").unwrap();
        let (e, t, c) = enumerate(&code, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e, DistanceSpectrum::from_u64_counts(1, &[0, 1]).unwrap());
        assert_eq!(t, DistanceSpectrum::from_u64_counts(1, &[0, 0]).unwrap());
        assert_eq!(c, DistanceSpectrum::from_u64_counts(1, &[1, 0]).unwrap());

        let code = Code::parse("00\n11").unwrap();
        let (e, t, c) = enumerate(&code, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e, DistanceSpectrum::from_u64_counts(2, &[0, 0, 1]).unwrap());
        assert_eq!(t, DistanceSpectrum::from_u64_counts(2, &[0, 2, 0]).unwrap());
        assert_eq!(c, DistanceSpectrum::from_u64_counts(2, &[1, 0, 0]).unwrap());
    }

    #[test]
    fn enumerate_respects_cap() {
        let code = example1();
        assert!(matches!(
            enumerate(&code, 1, 3),
            Err(Error::EnumerationCapExceeded { n: 4, cap: 3 })
        ));
    }

    #[test]
    fn analyze_two_word_codes() {
        let code = Code::parse("00\n11").unwrap();
        let analysis = analyze(&code, &ch("1/4", 2), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(analysis.b_n(), &parse_ratio("1/16").unwrap());
        assert_eq!(analysis.delta_n(), &parse_ratio("3/8").unwrap());
        assert_eq!(analysis.a_n(), &parse_ratio("1/4").unwrap());

        let code = Code::parse("0\n1").unwrap();
        let analysis = analyze(&code, &ch("1/4", 1), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(analysis.a_n(), &parse_ratio("1/4").unwrap());
        assert_eq!(analysis.b_n(), &parse_ratio("1/4").unwrap());
        assert!(analysis.delta_n().is_zero());
    }

    #[test]
    fn analyze_example1_golden() {
        // frozen from an independent brute-force pass over all 16 outputs
        // and 3 sent codewords
        let analysis = analyze(&example1(), &ch("1/4", 4), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(analysis.a_n(), &parse_ratio("3/8").unwrap());
        assert_eq!(analysis.b_n(), &parse_ratio("7/64").unwrap());
        assert_eq!(analysis.delta_n(), &parse_ratio("15/32").unwrap());
        assert_eq!(analysis.ratio_delta_b(), &parse_ratio("30/7").unwrap());
        assert_eq!(analysis.bound_rhs(), &parse_ratio("91/64").unwrap());
    }

    #[test]
    fn decode_examples() {
        let code = example1();
        assert_eq!(decode(&code, w("0100"), TieBreak::LowestIndex), 1);
        assert_eq!(decode(&code, w("0100"), TieBreak::HighestIndex), 2);
        assert_eq!(decode(&code, w("1111"), TieBreak::LowestIndex), 2);
    }

    #[test]
    fn analyze_matches_per_sent_enumeration() {
        let code = example1();
        let analysis = analyze(&code, &ch("1/4", 4), DEFAULT_ENUM_CAP).unwrap();
        for sent in 1..=code.m() {
            let (e, t, c) = enumerate(&code, sent, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(analysis.spec_error(sent), &e);
            assert_eq!(analysis.spec_tie(sent), &t);
            assert_eq!(analysis.spec_correct(sent), &c);
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let analysis = analyze(&example1(), &ch("1/4", 4), DEFAULT_ENUM_CAP).unwrap();
        let report = analysis.to_report();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: AnalyzeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn spectra_partition_the_binomial_row(seed in any::<u64>(), n in 1u32..=8, m in 2usize..=6) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap();
            let analysis = analyze(&code, &ch("1/4", n), DEFAULT_ENUM_CAP).unwrap();
            for sent in 1..=m {
                let mut sum = analysis.spec_error(sent).clone();
                sum = crate::exactnum::spectrum_add(&sum, analysis.spec_tie(sent)).unwrap();
                sum = crate::exactnum::spectrum_add(&sum, analysis.spec_correct(sent)).unwrap();
                for (d, count) in sum.counts().iter().enumerate() {
                    prop_assert_eq!(count.clone(), crate::exactnum::binomial(n as u64, d as i64));
                }
            }
        }

        #[test]
        fn tie_break_rule_does_not_change_the_error_probability(
            seed in any::<u64>(), n in 1u32..=8, m in 2usize..=6,
        ) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap();
            let channel = ch("1/4", n);
            let analysis = analyze(&code, &channel, DEFAULT_ENUM_CAP).unwrap();
            let low = decoder_error_probability(&code, &channel, TieBreak::LowestIndex, DEFAULT_ENUM_CAP).unwrap();
            let high = decoder_error_probability(&code, &channel, TieBreak::HighestIndex, DEFAULT_ENUM_CAP).unwrap();
            prop_assert_eq!(&low, &high);
            prop_assert_eq!(&low, analysis.a_n());
        }

        #[test]
        fn sandwich_holds_exactly(seed in any::<u64>(), n in 1u32..=8, m in 2usize..=6) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap();
            let analysis = analyze(&code, &ch("1/4", n), DEFAULT_ENUM_CAP).unwrap();
            prop_assert!(analysis.b_n() <= analysis.a_n());
            prop_assert!(analysis.a_n() <= &(analysis.b_n() + analysis.delta_n()));
            // positivity: some strictly-closer codeword always exists
            prop_assert!(analysis.b_n() > &BigRational::zero());
        }

        #[test]
        fn classification_matches_winner_set_characterization(
            seed in any::<u64>(), n in 1u32..=7, m in 2usize..=5,
        ) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap();
            for yv in 0..(1u64 << n) {
                let y = Codeword::new(yv, n).unwrap();
                let (win, _) = winners(&code, y);
                for sent in 1..=m {
                    let class = classify(&code, sent, y).unwrap();
                    let in_w = win.contains(&sent);
                    match class {
                        OutcomeClass::Tie { winners: tw } => {
                            prop_assert!(in_w && win.len() >= 2);
                            prop_assert_eq!(&tw, &win);
                        }
                        OutcomeClass::StrictError => prop_assert!(!in_w),
                        OutcomeClass::StrictCorrect => prop_assert!(in_w && win.len() == 1),
                    }
                }
            }
        }

        #[test]
        fn posterior_definition_agrees_with_distance_definition(
            seed in any::<u64>(), n in 1u32..=7, m in 2usize..=5,
        ) {
            let m = m.min(1 << n);
            if m < 2 { return Ok(()); }
            let code = crate::harness::random_code(n, m, seed).unwrap();
            for p in ["1/4", "49/100"] {
                let channel = ch(p, n);
                let analysis = analyze(&code, &channel, DEFAULT_ENUM_CAP).unwrap();
                let via_posterior = posterior_genie_bound(&code, &channel, DEFAULT_ENUM_CAP).unwrap();
                prop_assert_eq!(analysis.b_n(), &via_posterior);
            }
        }
    }
}
