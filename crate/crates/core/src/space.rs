//! Dice, coins, and their Cartesian-power sample spaces.
//!
//! A [`SampleSpace`] never stores its outcomes. Cardinality and the weight
//! denominator are exact big integers computed at construction; outcomes are
//! streamed in lexicographic face-index order by [`OutcomeCursor`] (zero
//! allocation per step) or the [`Outcomes`] iterator built on top of it.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// Default refusal threshold for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DieError {
    #[error("faces: the face list is empty")]
    Empty,
    #[error("faces[{index}].label: duplicate label {label:?}")]
    DuplicateLabel { index: usize, label: String },
    #[error("faces[*].weight: every weight is zero, at least one must be positive")]
    AllZeroWeights,
    #[error("faces[*].weight: total weight overflows a 64-bit integer")]
    WeightOverflow,
    #[error("invalid die specification {text:?}: {reason}")]
    Syntax { text: String, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a sample space needs at least one die (d >= 1)")]
    NoDice,
    #[error(
        "sample space has {cardinality} outcomes, above the enumeration cap of {cap}; \
         use the convolution engine for sum distributions or raise the cap"
    )]
    CapExceeded { cardinality: BigUint, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub label: String,
    pub value: i64,
    pub weight: u64,
}

impl Face {
    pub fn new(label: impl Into<String>, value: i64, weight: u64) -> Self {
        Face {
            label: label.into(),
            value,
            weight,
        }
    }
}

/// A finite alphabet of labelled, weighted faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DieSpec {
    faces: Vec<Face>,
    total_weight: u64,
}

impl DieSpec {
    /// Validates and builds a die. Face order is preserved and fixes the
    /// enumeration order.
    pub fn new(faces: Vec<Face>) -> Result<Self, DieError> {
        if faces.is_empty() {
            return Err(DieError::Empty);
        }
        let mut seen = HashSet::with_capacity(faces.len());
        for (index, face) in faces.iter().enumerate() {
            if !seen.insert(face.label.as_str()) {
                return Err(DieError::DuplicateLabel {
                    index,
                    label: face.label.clone(),
                });
            }
        }
        let total_weight = faces
            .iter()
            .try_fold(0u64, |acc, f| acc.checked_add(f.weight))
            .ok_or(DieError::WeightOverflow)?;
        if total_weight == 0 {
            return Err(DieError::AllZeroWeights);
        }
        Ok(DieSpec {
            faces,
            total_weight,
        })
    }

    /// Unit-weight die whose labels are the decimal face values.
    pub fn fair(values: RangeInclusive<i64>) -> Self {
        let faces = values.map(|v| Face::new(v.to_string(), v, 1)).collect();
        DieSpec::new(faces).expect("non-empty range gives a valid die")
    }

    /// Fair coin: `K` (value 1) then `Z` (value 0).
    pub fn coin() -> Self {
        DieSpec::new(vec![Face::new("K", 1, 1), Face::new("Z", 0, 1)]).unwrap()
    }

    /// Die with value-labelled faces and the given `(value, weight)` pairs.
    pub fn weighted(pairs: &[(i64, u64)]) -> Result<Self, DieError> {
        DieSpec::new(
            pairs
                .iter()
                .map(|&(v, w)| Face::new(v.to_string(), v, w))
                .collect(),
        )
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn is_fair(&self) -> bool {
        self.faces.windows(2).all(|w| w[0].weight == w[1].weight)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.faces.iter().all(|f| f.weight == 1)
    }

    /// Smallest value among faces with positive weight.
    pub fn min_value(&self) -> i64 {
        self.live_faces().map(|f| f.value).min().unwrap()
    }

    /// Largest value among faces with positive weight.
    pub fn max_value(&self) -> i64 {
        self.live_faces().map(|f| f.value).max().unwrap()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.label == label)
    }

    fn live_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.weight > 0)
    }
}

impl fmt::Display for DieSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("faces=")?;
        for (i, face) in self.faces.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if face.label == face.value.to_string() {
                write!(f, "{}:{}", face.value, face.weight)?;
            } else {
                write!(f, "{}={}:{}", face.label, face.value, face.weight)?;
            }
        }
        Ok(())
    }
}

/// Parses the die text format:
///
/// * `coin` for the fair `K`/`Z` coin,
/// * `faces=1-6` for a fair die with faces `1..=6`,
/// * `faces=1:1,2:1,3:1,4:1,5:1,6:5` for `value:weight` pairs (a bare value
///   means weight 1), optionally labelled as `label=value:weight`.
impl FromStr for DieSpec {
    type Err = DieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let syntax = |reason: &str| DieError::Syntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if text == "coin" {
            return Ok(DieSpec::coin());
        }
        let body = text
            .strip_prefix("faces=")
            .ok_or_else(|| syntax("expected `coin` or `faces=...`"))?;
        if body.is_empty() {
            return Err(DieError::Empty);
        }
        if let Some((lo, hi)) = parse_range(body) {
            if lo > hi {
                return Err(syntax("range is empty"));
            }
            return Ok(DieSpec::fair(lo..=hi));
        }
        let mut faces = Vec::new();
        for item in body.split(',') {
            let item = item.trim();
            let (label, rest) = match item.split_once('=') {
                Some((l, r)) => (Some(l.trim()), r.trim()),
                None => (None, item),
            };
            let (value, weight) = match rest.split_once(':') {
                Some((v, w)) => (v.trim(), w.trim()),
                None => (rest, "1"),
            };
            let value: i64 = value
                .parse()
                .map_err(|_| syntax(&format!("face value {value:?} is not an integer")))?;
            let weight: u64 = weight
                .parse()
                .map_err(|_| syntax(&format!("weight {weight:?} is not a nonnegative integer")))?;
            if matches!(label, Some("")) {
                return Err(syntax("empty face label"));
            }
            let label = label.map_or_else(|| value.to_string(), str::to_string);
            faces.push(Face::new(label, value, weight));
        }
        DieSpec::new(faces)
    }
}

/// `a-b` with nonnegative integer bounds.
fn parse_range(body: &str) -> Option<(i64, i64)> {
    let (lo, hi) = body.split_once('-')?;
    if lo.is_empty() || hi.contains([',', ':', '=']) {
        return None;
    }
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

/// One element of a sample space: face indices in roll order.
///
/// Ordering is lexicographic over face indices, which is the enumeration
/// order. Positions are 1-indexed wherever they are shown to users.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome {
    faces: Vec<usize>,
}

impl Outcome {
    pub fn new(faces: Vec<usize>) -> Self {
        Outcome { faces }
    }

    pub fn face_indices(&self) -> &[usize] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn values<'a>(&'a self, die: &'a DieSpec) -> impl Iterator<Item = i64> + 'a {
        self.faces.iter().map(move |&i| die.faces[i].value)
    }

    /// Product of the face weights.
    pub fn weight(&self, die: &DieSpec) -> BigUint {
        self.faces
            .iter()
            .fold(BigUint::one(), |acc, &i| acc * die.faces[i].weight)
    }

    /// `(4,6)` style rendering with face labels.
    pub fn display<'a>(&'a self, die: &'a DieSpec) -> impl fmt::Display + 'a {
        OutcomeDisplay { outcome: self, die }
    }
}

struct OutcomeDisplay<'a> {
    outcome: &'a Outcome,
    die: &'a DieSpec,
}

impl fmt::Display for OutcomeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, &i) in self.outcome.faces.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.die.faces[i].label)?;
        }
        f.write_str(")")
    }
}

/// The `d`-fold Cartesian power of a die.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpace {
    die: DieSpec,
    dice: usize,
    cardinality: BigUint,
    denominator: BigUint,
    cap: u64,
}

impl SampleSpace {
    /// Builds the space without touching any outcome. `dice == 0` is accepted
    /// here and refused by [`SampleSpace::enumerate`].
    pub fn new(die: DieSpec, dice: usize) -> Self {
        let exp = u32::try_from(dice).expect("dice count fits in u32");
        let cardinality = BigUint::from(die.face_count()).pow(exp);
        let denominator = BigUint::from(die.total_weight()).pow(exp);
        SampleSpace {
            die,
            dice,
            cardinality,
            denominator,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn die(&self) -> &DieSpec {
        &self.die
    }

    pub fn dice(&self) -> usize {
        self.dice
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// `|faces|^d`, exact.
    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    /// `total_weight^d`; the common denominator of every probability.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Checks that the space may be enumerated.
    pub fn check_enumerable(&self) -> Result<(), SpaceError> {
        if self.dice == 0 {
            return Err(SpaceError::NoDice);
        }
        if self.cardinality > BigUint::from(self.cap) {
            return Err(SpaceError::CapExceeded {
                cardinality: self.cardinality.clone(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Streams every outcome once, in lexicographic order.
    pub fn enumerate(&self) -> Result<Outcomes, SpaceError> {
        self.check_enumerable()?;
        Ok(Outcomes {
            cursor: self.cursor(),
        })
    }

    pub fn cursor(&self) -> OutcomeCursor {
        OutcomeCursor::new(self.die.face_count(), self.dice)
    }

    /// Splits the space into disjoint prefix blocks for parallel scans. Each
    /// prefix fixes the first `k` coordinates; concatenating the blocks in
    /// the returned order reproduces the sequential order.
    pub(crate) fn partitions(&self) -> Vec<Vec<usize>> {
        const SEQUENTIAL_BELOW: u64 = 4096;
        const TARGET_BLOCKS: usize = 64;
        let radix = self.die.face_count();
        let small = self
            .cardinality
            .to_u64()
            .is_some_and(|c| c < SEQUENTIAL_BELOW);
        if small || radix == 1 {
            return vec![Vec::new()];
        }
        let mut k = 0;
        let mut blocks = 1usize;
        while k < self.dice && blocks < TARGET_BLOCKS {
            blocks *= radix;
            k += 1;
        }
        let mut out = Vec::with_capacity(blocks);
        let mut prefix = OutcomeCursor::new(radix, k);
        while let Some(p) = prefix.advance() {
            out.push(p.to_vec());
        }
        out
    }

    /// Per-outcome weight strategy for exact accumulation.
    pub(crate) fn weight_mode(&self) -> WeightMode {
        if self.die.has_unit_weights() {
            WeightMode::Unit
        } else if self.denominator <= BigUint::from(i128::MAX as u128) {
            WeightMode::Small
        } else {
            WeightMode::Big
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WeightMode {
    Unit,
    /// Every outcome weight fits in an `i128`.
    Small,
    Big,
}

impl WeightMode {
    pub(crate) fn small_weight(self, die: &DieSpec, faces: &[usize]) -> i128 {
        match self {
            WeightMode::Unit => 1,
            _ => faces.iter().map(|&i| die.faces[i].weight as i128).product(),
        }
    }

    pub(crate) fn big_weight(die: &DieSpec, faces: &[usize]) -> BigInt {
        faces
            .iter()
            .fold(BigInt::one(), |acc, &i| acc * die.faces[i].weight)
    }
}

/// Odometer over `radix^len` index tuples, optionally with a fixed prefix.
///
/// `advance` hands out a borrowed slice, so a full scan allocates nothing
/// after construction.
#[derive(Debug, Clone)]
pub struct OutcomeCursor {
    radix: usize,
    digits: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl OutcomeCursor {
    pub fn new(radix: usize, len: usize) -> Self {
        OutcomeCursor {
            radix,
            digits: vec![0; len],
            fixed: 0,
            started: false,
            done: radix == 0,
        }
    }

    /// Cursor over the outcomes of length `len` that start with `prefix`.
    pub fn with_prefix(radix: usize, len: usize, prefix: &[usize]) -> Self {
        assert!(prefix.len() <= len, "prefix longer than outcome");
        let mut c = OutcomeCursor::new(radix, len);
        c.digits[..prefix.len()].copy_from_slice(prefix);
        c.fixed = prefix.len();
        c
    }

    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for pos in (self.fixed..self.digits.len()).rev() {
            if self.digits[pos] + 1 < self.radix {
                self.digits[pos] += 1;
                return Some(&self.digits);
            }
            self.digits[pos] = 0;
        }
        self.done = true;
        None
    }
}

/// Owning iterator over the outcomes of a space.
#[derive(Debug, Clone)]
pub struct Outcomes {
    cursor: OutcomeCursor,
}

impl Iterator for Outcomes {
    type Item = Outcome;

    fn next(&mut self) -> Option<Outcome> {
        self.cursor.advance().map(|f| Outcome::new(f.to_vec()))
    }
}
