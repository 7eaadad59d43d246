//! Morphisms and antimorphisms given by a permutation of letters.
//!
//! Any element of a finite group of non-erasing morphisms and antimorphisms
//! restricts to a permutation on letters, so a [`Symmetry`] is exactly a
//! permutation plus a direction flag. An antimorphism maps `w1 w2 ... wn` to
//! `π(wn) ... π(w2) π(w1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Morphism,
    Antimorphism,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    kind: Kind,
    perm: Vec<Letter>,
}

impl Symmetry {
    pub fn new(perm: Vec<Letter>, kind: Kind) -> Result<Self> {
        let k = perm.len();
        if k == 0 || k > crate::word::MAX_ALPHABET {
            return Err(Error::invalid(format!("permutation on {k} letters")));
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &a)| a as usize != i) {
            return Err(Error::invalid(format!(
                "{perm:?} is not a permutation of 0..{k}"
            )));
        }
        Ok(Symmetry { perm, kind })
    }

    pub fn identity(k: usize) -> Self {
        Symmetry {
            perm: (0..k).map(|a| a as Letter).collect(),
            kind: Kind::Morphism,
        }
    }

    /// The mirror image map, written `R`.
    pub fn reversal(k: usize) -> Self {
        Symmetry {
            perm: (0..k).map(|a| a as Letter).collect(),
            kind: Kind::Antimorphism,
        }
    }

    /// Builds a symmetry on `k` letters from explicit `from -> to` pairs;
    /// letters not listed are fixed.
    pub fn from_pairs(k: usize, kind: Kind, pairs: &[(Letter, Letter)]) -> Result<Self> {
        let mut perm: Vec<Letter> = (0..k).map(|a| a as Letter).collect();
        let mut assigned = vec![false; k];
        for &(from, to) in pairs {
            if from as usize >= k || to as usize >= k {
                return Err(Error::invalid(format!(
                    "mapping {from}>{to} outside alphabet of size {k}"
                )));
            }
            if assigned[from as usize] {
                return Err(Error::invalid(format!("letter {from} mapped twice")));
            }
            assigned[from as usize] = true;
            perm[from as usize] = to;
        }
        Symmetry::new(perm, kind)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_antimorphism(&self) -> bool {
        self.kind == Kind::Antimorphism
    }

    pub fn alphabet_size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[Letter] {
        &self.perm
    }

    #[inline]
    pub fn map_letter(&self, a: Letter) -> Letter {
        self.perm[a as usize]
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|&&a| a as usize >= self.perm.len()) {
            Some(a) => Err(Error::invalid(format!(
                "letter {a} outside alphabet of size {}",
                self.perm.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        self.check_word(w)?;
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &[Letter]) -> Word {
        match self.kind {
            Kind::Morphism => w.iter().map(|&a| self.map_letter(a)).collect(),
            Kind::Antimorphism => w.iter().rev().map(|&a| self.map_letter(a)).collect(),
        }
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Symmetry) -> Result<Symmetry> {
        if self.perm.len() != inner.perm.len() {
            return Err(Error::invalid(format!(
                "cannot compose symmetries on {} and {} letters",
                self.perm.len(),
                inner.perm.len()
            )));
        }
        let perm = inner.perm.iter().map(|&a| self.map_letter(a)).collect();
        let kind = if self.kind == inner.kind {
            Kind::Morphism
        } else {
            Kind::Antimorphism
        };
        Ok(Symmetry { perm, kind })
    }

    pub fn inverse(&self) -> Symmetry {
        let mut perm = vec![0; self.perm.len()];
        for (a, &b) in self.perm.iter().enumerate() {
            perm[b as usize] = a as Letter;
        }
        Symmetry {
            perm,
            kind: self.kind,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Morphism && self.fixes_all_letters()
    }

    fn fixes_all_letters(&self) -> bool {
        self.perm.iter().enumerate().all(|(a, &b)| a == b as usize)
    }

    /// True when the letter permutation is an involution; together with the
    /// kind this decides whether the map squares to the identity.
    pub fn is_involution(&self) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(a, &b)| self.perm[b as usize] as usize == a)
    }

    pub fn is_involutive_antimorphism(&self) -> bool {
        self.is_antimorphism() && self.is_involution()
    }

    pub(crate) fn require_involutive_antimorphism(&self) -> Result<()> {
        if self.is_involutive_antimorphism() {
            Ok(())
        } else {
            Err(Error::NotInvolutive(self.to_string()))
        }
    }

    /// Letters with `a != Θ(a)`.
    pub fn moves(&self, a: Letter) -> bool {
        self.map_letter(a) != a
    }
}

/// `Θ(w) == w` for an antimorphism `Θ`. The empty word always qualifies.
pub fn is_theta_palindrome(w: &[Letter], theta: &Symmetry) -> Result<bool> {
    if !theta.is_antimorphism() {
        return Err(Error::invalid(format!(
            "{theta} is a morphism, not an antimorphism"
        )));
    }
    theta.check_word(w)?;
    Ok(is_theta_pal_unchecked(w, theta))
}

#[inline]
pub(crate) fn is_theta_pal_unchecked(w: &[Letter], theta: &Symmetry) -> bool {
    let n = w.len();
    (0..n.div_ceil(2)).all(|i| w[i] == theta.map_letter(w[n - 1 - i]))
}

impl fmt::Display for Symmetry {
    /// Uses the text grammar: `R`, `Id`, `a:0>1,1>0`, `m:2>3,3>2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fixes_all_letters() {
            return f.write_str(match self.kind {
                Kind::Morphism => "Id",
                Kind::Antimorphism => "R",
            });
        }
        let prefix = match self.kind {
            Kind::Morphism => "m",
            Kind::Antimorphism => "a",
        };
        let moved: Vec<String> = self
            .perm
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a != b as usize)
            .map(|(a, b)| format!("{a}>{b}"))
            .collect();
        write!(f, "{prefix}:{}", moved.join(","))
    }
}

impl fmt::Debug for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symmetry({self} on {} letters)", self.perm.len())
    }
}

/// A parsed symmetry term whose alphabet size is not fixed yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryTerm {
    pub kind: Kind,
    pub pairs: Vec<(Letter, Letter)>,
}

impl SymmetryTerm {
    pub fn on(&self, k: usize) -> Result<Symmetry> {
        Symmetry::from_pairs(k, self.kind, &self.pairs)
    }

    /// Smallest alphabet the listed mappings fit in.
    pub fn min_alphabet(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(a, b)| a.max(b) as usize + 1)
            .max()
            .unwrap_or(1)
    }
}

impl FromStr for SymmetryTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "R" => {
                return Ok(SymmetryTerm {
                    kind: Kind::Antimorphism,
                    pairs: vec![],
                })
            }
            "Id" => {
                return Ok(SymmetryTerm {
                    kind: Kind::Morphism,
                    pairs: vec![],
                })
            }
            _ => {}
        }
        let (head, body) = s.split_once(':').ok_or_else(|| {
            Error::invalid(format!("symmetry {s:?}: expected R, Id, a:... or m:..."))
        })?;
        let kind = match head.trim() {
            "a" => Kind::Antimorphism,
            "m" => Kind::Morphism,
            other => return Err(Error::invalid(format!("unknown symmetry kind {other:?}"))),
        };
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (from, to) = item
                .split_once('>')
                .ok_or_else(|| Error::invalid(format!("mapping {item:?} must look like 0>1")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<Letter>()
                    .map_err(|_| Error::invalid(format!("bad letter {t:?} in {item:?}")))
            };
            pairs.push((parse(from)?, parse(to)?));
        }
        Ok(SymmetryTerm { kind, pairs })
    }
}

/// Parses a `;`-separated list of symmetry terms on `k` letters.
pub fn parse_symmetries(s: &str, k: usize) -> Result<Vec<Symmetry>> {
    let terms: Vec<&str> = s
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if terms.is_empty() {
        return Err(Error::invalid("empty symmetry list"));
    }
    terms
        .into_iter()
        .map(|t| t.parse::<SymmetryTerm>()?.on(k))
        .collect()
}
