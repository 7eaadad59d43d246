//! Factor index over a finite prefix of an infinite word.
//!
//! For every length `n <= n_max` the index lists the distinct factors of the
//! prefix with their occurrences and left/right extension letters. A factor of
//! length `n` is a maximal run of suffix-array slots sharing their first `n`
//! letters, so occurrences are slices of the suffix array.
//!
//! A prefix only approximates the language of the infinite word. Each index
//! carries a [`TrustRange`]: queries about lengths beyond `trusted_n` are
//! refused.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{champernowne_through, WordSpec};
use crate::suffix::SuffixArray;
use crate::symmetry::{is_theta_pal_unchecked, Symmetry};
use crate::word::{Letter, LetterSet, Word};

/// Default cap on the prefix length used by [`stabilize`].
pub const DEFAULT_MAX_PREFIX: usize = 10_000_000;

/// How the trust range of an index was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Built directly from a caller-supplied prefix.
    Caller,
    /// Factor sets unchanged across a doubling of the prefix, and every
    /// factor occurs at least twice.
    Doubling { rounds: usize },
    /// Champernowne: every one of the `10^n` strings of length `n` was
    /// observed, so the factor set is complete.
    Complete { through_integer: u64 },
    /// Stabilization gave up; only the lengths that settled are trusted.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrustRange {
    pub trusted_n: usize,
    pub prefix_len: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug)]
struct FactorEntry {
    lo: u32,
    hi: u32,
    lext: LetterSet,
    rext: LetterSet,
}

#[derive(Clone, Debug)]
pub struct FactorIndex {
    text: Word,
    alphabet: usize,
    n_max: usize,
    trust: TrustRange,
    sa: SuffixArray,
    levels: Vec<Vec<FactorEntry>>,
}

/// A factor of the indexed prefix together with its extension data.
#[derive(Clone, Copy)]
pub struct Factor<'a> {
    index: &'a FactorIndex,
    len: usize,
    entry: &'a FactorEntry,
}

impl<'a> Factor<'a> {
    pub fn word(&self) -> &'a [Letter] {
        let p = self.index.sa.sa()[self.entry.lo as usize] as usize;
        &self.index.text[p..p + self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of occurrences in the prefix.
    pub fn count(&self) -> usize {
        (self.entry.hi - self.entry.lo) as usize
    }

    /// Sorted occurrence positions.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ: Vec<usize> = self.index.sa.sa()
            [self.entry.lo as usize..self.entry.hi as usize]
            .iter()
            .map(|&p| p as usize)
            .collect();
        occ.sort_unstable();
        occ
    }

    pub fn lext(&self) -> LetterSet {
        self.entry.lext
    }

    pub fn rext(&self) -> LetterSet {
        self.entry.rext
    }

    pub fn is_left_special(&self) -> bool {
        self.entry.lext.len() >= 2
    }

    pub fn is_right_special(&self) -> bool {
        self.entry.rext.len() >= 2
    }

    pub fn is_special(&self) -> bool {
        self.is_left_special() || self.is_right_special()
    }

    pub fn is_bispecial(&self) -> bool {
        self.is_left_special() && self.is_right_special()
    }
}

impl std::fmt::Debug for Factor<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Factor")
            .field("word", &Word::from(self.word()))
            .field("count", &self.count())
            .field("lext", &self.lext())
            .field("rext", &self.rext())
            .finish()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialFactors {
    pub left: Vec<Word>,
    pub right: Vec<Word>,
    pub bispecial: Vec<Word>,
}

impl FactorIndex {
    /// Indexes all factors of `prefix` of length `0..=n_max`. The caller
    /// vouches for the prefix: the trust range is the full `n_max`.
    pub fn build(prefix: Word, n_max: usize) -> Result<Self> {
        let alphabet = prefix.min_alphabet();
        Self::build_with(prefix, n_max, alphabet, None)
    }

    fn build_with(
        prefix: Word,
        n_max: usize,
        alphabet: usize,
        trust: Option<TrustRange>,
    ) -> Result<Self> {
        if prefix.len() <= n_max {
            return Err(Error::invalid(format!(
                "prefix of length {} cannot index factors up to length {n_max}",
                prefix.len()
            )));
        }
        let sa = SuffixArray::new(&prefix);
        let levels = (0..=n_max).map(|n| level(&prefix, &sa, n)).collect();
        let trust = trust.unwrap_or(TrustRange {
            trusted_n: n_max,
            prefix_len: prefix.len(),
            certificate: Certificate::Caller,
        });
        Ok(FactorIndex {
            text: prefix,
            alphabet: alphabet.max(1),
            n_max,
            trust,
            sa,
            levels,
        })
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn trust(&self) -> &TrustRange {
        &self.trust
    }

    pub fn trusted_n(&self) -> usize {
        self.trust.trusted_n
    }

    /// Letters that occur in the prefix.
    pub fn letters(&self) -> LetterSet {
        self.levels[0][0].rext
    }

    pub(crate) fn require_trusted(&self, n: usize) -> Result<()> {
        if n > self.trust.trusted_n {
            Err(Error::UntrustedRange {
                requested: n,
                trusted: self.trust.trusted_n,
            })
        } else {
            Ok(())
        }
    }

    /// Factors of length `n`, in lexicographic order.
    pub fn factors(&self, n: usize) -> impl Iterator<Item = Factor<'_>> + '_ {
        self.levels
            .get(n)
            .into_iter()
            .flatten()
            .map(move |entry| Factor {
                index: self,
                len: n,
                entry,
            })
    }

    /// `C(n)`, the number of distinct factors of length `n`.
    pub fn complexity(&self, n: usize) -> Result<usize> {
        self.require_trusted(n)?;
        Ok(self.levels[n].len())
    }

    /// `ΔC(n) = C(n+1) - C(n)`.
    pub fn delta_c(&self, n: usize) -> Result<i64> {
        self.require_trusted(n + 1)?;
        Ok(self.levels[n + 1].len() as i64 - self.levels[n].len() as i64)
    }

    /// `Δ²C(n) = ΔC(n+1) - ΔC(n)`.
    pub fn delta2_c(&self, n: usize) -> Result<i64> {
        Ok(self.delta_c(n + 1)? - self.delta_c(n)?)
    }

    /// The factor `w`, if `|w| <= n_max` and it occurs in the prefix.
    pub fn lookup(&self, w: &[Letter]) -> Option<Factor<'_>> {
        let level = self.levels.get(w.len())?;
        let sa = self.sa.sa();
        let n = w.len();
        let slot = level
            .binary_search_by(|e| {
                let p = sa[e.lo as usize] as usize;
                self.text[p..p + n].cmp(w)
            })
            .ok()?;
        Some(Factor {
            index: self,
            len: n,
            entry: &level[slot],
        })
    }

    /// Whether `w` occurs in the prefix (any length).
    pub fn contains(&self, w: &[Letter]) -> bool {
        let (lo, hi) = self.sa.find(&self.text, w);
        lo < hi
    }

    /// Sorted occurrence positions of `w` in the prefix (any length).
    pub fn occurrences(&self, w: &[Letter]) -> Vec<usize> {
        let (lo, hi) = self.sa.find(&self.text, w);
        let mut occ: Vec<usize> = self.sa.sa()[lo..hi].iter().map(|&p| p as usize).collect();
        occ.sort_unstable();
        occ
    }

    /// `b(w) = #{awb} - #Lext(w) - #Rext(w) + 1`.
    pub fn bilateral_order(&self, w: &[Letter]) -> Result<i64> {
        self.require_trusted(w.len() + 2)?;
        let factor = self
            .lookup(w)
            .ok_or_else(|| Error::NotAFactor(Word::from(w)))?;
        let n = w.len();
        let mut pairs: BTreeSet<(Letter, Letter)> = BTreeSet::new();
        for p in factor.occurrences() {
            if p >= 1 && p + n < self.text.len() {
                pairs.insert((self.text[p - 1], self.text[p + n]));
            }
        }
        Ok(pairs.len() as i64 - factor.lext().len() as i64 - factor.rext().len() as i64 + 1)
    }

    pub fn special_factors(&self, n: usize) -> Result<SpecialFactors> {
        self.require_trusted(n + 1)?;
        let mut out = SpecialFactors::default();
        for f in self.factors(n) {
            if f.is_left_special() {
                out.left.push(Word::from(f.word()));
            }
            if f.is_right_special() {
                out.right.push(Word::from(f.word()));
            }
            if f.is_bispecial() {
                out.bispecial.push(Word::from(f.word()));
            }
        }
        Ok(out)
    }

    /// Distinct complete return words of `w` observed in the prefix.
    pub fn complete_return_words(&self, w: &[Letter]) -> Result<BTreeSet<Word>> {
        let occ = self.occurrences(w);
        if occ.len() < 2 {
            return Err(Error::InsufficientOccurrences {
                word: Word::from(w),
                occurrences: occ.len(),
            });
        }
        Ok(occ
            .windows(2)
            .map(|pair| Word::from(&self.text[pair[0]..pair[1] + w.len()]))
            .collect())
    }

    /// First factor of length `1..=n` whose image under `sym` is missing.
    pub fn closure_violation(&self, sym: &Symmetry, n: usize) -> Result<Option<Word>> {
        self.require_trusted(n)?;
        if sym.alphabet_size() < self.alphabet {
            return Err(Error::invalid(format!(
                "{sym} acts on {} letters, the word uses {}",
                sym.alphabet_size(),
                self.alphabet
            )));
        }
        for m in 1..=n {
            for f in self.factors(m) {
                let image = sym.apply_unchecked(f.word());
                if self.lookup(&image).is_none() {
                    return Ok(Some(Word::from(f.word())));
                }
            }
        }
        Ok(None)
    }

    pub fn is_closed_under(&self, sym: &Symmetry, n: usize) -> Result<bool> {
        Ok(self.closure_violation(sym, n)?.is_none())
    }

    pub(crate) fn require_closed(&self, sym: &Symmetry, n: usize) -> Result<()> {
        match self.closure_violation(sym, n)? {
            None => Ok(()),
            Some(factor) => Err(Error::NotClosed {
                symmetry: sym.to_string(),
                factor,
            }),
        }
    }

    /// Number of factors of length `n` fixed by the antimorphism `theta`
    /// (no trust or involution checks).
    pub(crate) fn count_fixed(&self, theta: &Symmetry, n: usize) -> usize {
        self.factors(n)
            .filter(|f| is_theta_pal_unchecked(f.word(), theta))
            .count()
    }

    fn with_trust(mut self, trust: TrustRange) -> Self {
        self.trust = trust;
        self
    }

    fn all_recurrent_up_to(&self, n: usize) -> bool {
        (0..=n).all(|m| self.factors(m).all(|f| f.count() >= 2))
    }
}

fn level(text: &[Letter], sa: &SuffixArray, n: usize) -> Vec<FactorEntry> {
    let len = text.len();
    let mut out: Vec<FactorEntry> = Vec::new();
    let mut current: Option<FactorEntry> = None;
    for (r, (&p, &lcp)) in sa.sa().iter().zip(sa.lcp()).enumerate() {
        let p = p as usize;
        if len - p < n {
            continue;
        }
        let starts_new = current.is_none() || (lcp as usize) < n;
        if starts_new {
            if let Some(done) = current.take() {
                out.push(done);
            }
            current = Some(FactorEntry {
                lo: r as u32,
                hi: r as u32,
                lext: LetterSet::new(),
                rext: LetterSet::new(),
            });
        }
        let entry = current.as_mut().unwrap();
        entry.hi = r as u32 + 1;
        if p > 0 {
            entry.lext.insert(text[p - 1]);
        }
        if p + n < len {
            entry.rext.insert(text[p + n]);
        }
    }
    out.extend(current);
    out
}

#[derive(Clone, Debug)]
pub struct StabilizeOptions {
    pub max_prefix: usize,
}

impl Default for StabilizeOptions {
    fn default() -> Self {
        StabilizeOptions {
            max_prefix: DEFAULT_MAX_PREFIX,
        }
    }
}

/// Index of a prefix of `spec` certified to contain every factor of length
/// `<= n_max` of the infinite word.
pub fn stabilize(spec: &WordSpec, n_max: usize) -> Result<FactorIndex> {
    stabilize_with(spec, n_max, &StabilizeOptions::default())
}

pub fn stabilize_with(
    spec: &WordSpec,
    n_max: usize,
    opts: &StabilizeOptions,
) -> Result<FactorIndex> {
    match spec {
        WordSpec::Champernowne => return stabilize_champernowne(n_max, opts),
        WordSpec::Literal(_) => {
            return Err(Error::spec(
                "a literal word has no infinite language to stabilize",
            ))
        }
        _ => {}
    }
    let alphabet = spec.alphabet_size();
    let mut len = (4 * n_max).max(16);
    if len > opts.max_prefix {
        return Err(Error::invalid(format!(
            "max prefix {} is below the starting length {len}",
            opts.max_prefix
        )));
    }
    let mut prev = FactorIndex::build_with(spec.prefix(len)?, n_max, alphabet, None)?;
    let mut rounds = 0;
    let mut earlier: Option<Vec<usize>> = None;
    loop {
        let next_len = len * 2;
        if next_len > opts.max_prefix {
            // Settled: unchanged by the last doubling and recurrent.
            let settled = (0..=n_max)
                .take_while(|&m| {
                    earlier
                        .as_ref()
                        .is_some_and(|c: &Vec<usize>| c[m] == prev.levels[m].len())
                        && prev.factors(m).all(|f| f.count() >= 2)
                })
                .last()
                .unwrap_or(0);
            let trust = TrustRange {
                trusted_n: settled,
                prefix_len: prev.text.len(),
                certificate: Certificate::Partial,
            };
            return Err(Error::StabilizationFailure {
                n_max,
                max_prefix: opts.max_prefix,
                partial: Box::new(prev.with_trust(trust)),
            });
        }
        let next = FactorIndex::build_with(spec.prefix(next_len)?, n_max, alphabet, None)?;
        rounds += 1;
        let same = (0..=n_max).all(|m| prev.levels[m].len() == next.levels[m].len());
        if same && next.all_recurrent_up_to(n_max) {
            let trust = TrustRange {
                trusted_n: n_max,
                prefix_len: next.text.len(),
                certificate: Certificate::Doubling { rounds },
            };
            return Ok(next.with_trust(trust));
        }
        earlier = Some(prev.levels.iter().map(Vec::len).collect());
        prev = next;
        len = next_len;
    }
}

fn stabilize_champernowne(n_max: usize, opts: &StabilizeOptions) -> Result<FactorIndex> {
    let pow = |e: usize| 10u64.checked_pow(e as u32);
    let mut last_built = None;
    for exponent in [n_max.max(1), n_max.max(1) + 1] {
        let through = pow(exponent).ok_or_else(|| Error::invalid("n_max too large"))?;
        let prefix = champernowne_through(through);
        if prefix.len() > opts.max_prefix {
            break;
        }
        let idx = FactorIndex::build_with(prefix, n_max, 10, None)?;
        let complete = (0..=n_max).all(|m| Some(idx.levels[m].len() as u64) == pow(m));
        if complete {
            let trust = TrustRange {
                trusted_n: n_max,
                prefix_len: idx.text.len(),
                certificate: Certificate::Complete {
                    through_integer: through,
                },
            };
            return Ok(idx.with_trust(trust));
        }
        last_built = Some(idx);
    }
    let partial = match last_built {
        Some(idx) => idx,
        None => FactorIndex::build_with(champernowne_through(9), 0, 10, None)?,
    };
    let settled = (0..=partial.n_max)
        .take_while(|&m| pow(m) == Some(partial.levels[m].len() as u64))
        .last()
        .unwrap_or(0);
    let trust = TrustRange {
        trusted_n: settled,
        prefix_len: partial.text.len(),
        certificate: Certificate::Partial,
    };
    Err(Error::StabilizationFailure {
        n_max,
        max_prefix: opts.max_prefix,
        partial: Box::new(partial.with_trust(trust)),
    })
}
