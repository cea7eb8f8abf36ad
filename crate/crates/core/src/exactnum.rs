//! Exact probability arithmetic: arbitrary-precision rationals and distance
//! spectra.
//!
//! A [`DistanceSpectrum`] counts channel outputs at each Hamming distance
//! from a conditioning codeword; it is the integer-exact, channel-free form
//! in which all probabilities are carried until the final evaluation against
//! the crossover probability `p`.

use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always in canonical reduced form with a
/// positive denominator.
pub type ExactRational = BigRational;

/// Parses `"num/den"` (or a bare integer) into an exact rational.
pub fn parse_ratio(text: &str) -> Result<ExactRational> {
    let bad = || Error::InvalidRational {
        text: text.to_string(),
    };
    let trimmed = text.trim();
    let (num_text, den_text) = match trimmed.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num_text.parse().map_err(|_| bad())?;
    let den: BigInt = den_text.parse().map_err(|_| bad())?;
    if den <= BigInt::zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `"num/den"` in canonical reduced form.
pub fn ratio_string(value: &ExactRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// The channel: a crossover probability 0 < p < 1/2 and a blocklength.
#[derive(Clone, PartialEq, Eq)]
pub struct ChannelParams {
    p: ExactRational,
    n: u32,
}

impl ChannelParams {
    pub fn new(p: ExactRational, n: u32) -> Result<Self> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if p <= BigRational::zero() || p >= half {
            return Err(Error::CrossoverOutOfRange { p: ratio_string(&p) });
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> &ExactRational {
        &self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The likelihood-ratio constant c = (1 - p) / p.
    pub fn likelihood_constant(&self) -> ExactRational {
        (BigRational::one() - &self.p) / &self.p
    }
}

impl fmt::Debug for ChannelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChannelParams(p={}, n={})", ratio_string(&self.p), self.n)
    }
}

/// Counts of channel outputs per Hamming distance d = 0..=n from a
/// conditioning codeword.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceSpectrum {
    n: u32,
    counts: Vec<BigUint>,
}

impl DistanceSpectrum {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            counts: vec![BigUint::zero(); n as usize + 1],
        }
    }

    pub fn from_counts(n: u32, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n as usize + 1 {
            return Err(Error::SpectrumLengthMismatch {
                left: n + 1,
                right: counts.len() as u32,
            });
        }
        Ok(Self { n, counts })
    }

    pub fn from_u64_counts(n: u32, counts: &[u64]) -> Result<Self> {
        Self::from_counts(n, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn bump(&mut self, distance: u32, by: u64) {
        self.counts[distance as usize] += by;
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|c| c.is_zero())
    }
}

impl Serialize for DistanceSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for count in &self.counts {
            match count.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&count.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DistanceSpectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Count {
            Small(u64),
            Big(String),
        }
        let raw = Vec::<Count>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("empty spectrum"));
        }
        let counts = raw
            .into_iter()
            .map(|c| match c {
                Count::Small(v) => Ok(BigUint::from(v)),
                Count::Big(s) => s
                    .parse::<BigUint>()
                    .map_err(|_| serde::de::Error::custom("bad spectrum count")),
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(Self {
            n: counts.len() as u32 - 1,
            counts,
        })
    }
}

/// Evaluates sum over d of c[d] * p^d * (1-p)^(n-d), exactly.
pub fn spectrum_probability(s: &DistanceSpectrum, ch: &ChannelParams) -> Result<ExactRational> {
    if s.n != ch.n {
        return Err(Error::SpectrumLengthMismatch {
            left: s.n,
            right: ch.n,
        });
    }
    // With p = x/y reduced, p^d (1-p)^(n-d) = x^d (y-x)^(n-d) / y^n.
    let x = ch.p.numer().to_biguint().expect("0 < p");
    let y = ch.p.denom().to_biguint().expect("positive denominator");
    let q = &y - &x;
    let n = s.n as usize;
    let mut x_pow = vec![BigUint::one(); n + 1];
    let mut q_pow = vec![BigUint::one(); n + 1];
    for d in 1..=n {
        x_pow[d] = &x_pow[d - 1] * &x;
        q_pow[d] = &q_pow[d - 1] * &q;
    }
    let mut sum = BigUint::zero();
    for (d, count) in s.counts.iter().enumerate() {
        if !count.is_zero() {
            sum += count * &x_pow[d] * &q_pow[n - d];
        }
    }
    let denom = num::pow::pow(y, n);
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(denom)))
}

/// Componentwise sum; the associative combine used by parallel enumeration.
pub fn spectrum_add(a: &DistanceSpectrum, b: &DistanceSpectrum) -> Result<DistanceSpectrum> {
    if a.n != b.n {
        return Err(Error::SpectrumLengthMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let counts = a
        .counts
        .iter()
        .zip(&b.counts)
        .map(|(x, y)| x + y)
        .collect();
    Ok(DistanceSpectrum { n: a.n, counts })
}

/// Binomial coefficient with the conventions C(a, b) = 0 for b < 0 or b > a
/// and C(0, 0) = 1.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    num::integer::binomial(BigUint::from(a), BigUint::from(b as u64))
}
