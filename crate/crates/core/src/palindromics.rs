//! Θ-palindromic complexity, Θ-defect and the richness deficit `T_Θ(n)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::FactorIndex;
use crate::generators::WordSpec;
use crate::pal_tree::ThetaPalTree;
use crate::symmetry::{is_theta_pal_unchecked, Symmetry};
use crate::word::{Letter, LetterSet, Word};

/// `P_Θ(n)`: Θ-palindromes among the factors of length `n`.
pub fn pal_complexity(idx: &FactorIndex, theta: &Symmetry, n: usize) -> Result<usize> {
    theta.require_involutive_antimorphism()?;
    idx.require_trusted(n)?;
    Ok(idx.count_fixed(theta, n))
}

/// `γ_Θ(w)`: unordered pairs `{a, Θ(a)}` with `a ≠ Θ(a)` and `a` in `w`.
pub fn gamma(theta: &Symmetry, w: &[Letter]) -> Result<usize> {
    theta.require_involutive_antimorphism()?;
    theta.check_word(w)?;
    let present = LetterSet::of(w);
    Ok(present
        .iter()
        .filter(|&a| {
            let b = theta.map_letter(a);
            // Count each pair once, from its smaller letter or from the only
            // member present.
            a != b && (a < b || !present.contains(b))
        })
        .count())
}

/// `D_Θ(w) = |w| + 1 - γ_Θ(w) - #Pal_Θ(w)`, computed incrementally.
pub fn defect(theta: &Symmetry, w: &[Letter]) -> Result<usize> {
    theta.check_word(w)?;
    let mut tree = ThetaPalTree::new(theta)?;
    for &a in w {
        tree.push(a);
    }
    Ok(tree.defect())
}

pub fn is_theta_rich(theta: &Symmetry, w: &[Letter]) -> Result<bool> {
    Ok(defect(theta, w)? == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPalSuffix {
    pub suffix: Word,
    /// The suffix occurs exactly once in the word. Always `false` for ε.
    pub unioccurrent: bool,
}

/// Longest Θ-palindromic suffix of `w` and whether it is unioccurrent.
pub fn lps(theta: &Symmetry, w: &[Letter]) -> Result<LongestPalSuffix> {
    theta.require_involutive_antimorphism()?;
    theta.check_word(w)?;
    let n = w.len();
    let start = (0..n)
        .find(|&s| is_theta_pal_unchecked(&w[s..], theta))
        .unwrap_or(n);
    let suffix = &w[start..];
    let unioccurrent = !suffix.is_empty()
        && w.windows(suffix.len())
            .filter(|window| *window == suffix)
            .count()
            == 1;
    Ok(LongestPalSuffix {
        suffix: Word::from(suffix),
        unioccurrent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectVerdict {
    /// No prefix had positive defect.
    Zero,
    /// Positive, but no growth in the last quarter of the prefix.
    FiniteSoFar,
    /// Still increasing in the last quarter of the prefix.
    Growing,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectCurve {
    /// `curve[i]` is the defect of the prefix of length `i`.
    #[serde(skip)]
    pub curve: Vec<u32>,
    pub prefix_len: usize,
    pub sup: usize,
    /// Prefix lengths at which the defect increased.
    pub increments: usize,
    pub last_increase_at: Option<usize>,
    pub verdict: DefectVerdict,
}

/// Θ-defect along the prefixes of `spec` up to `max_prefix` letters.
pub fn word_defect(spec: &WordSpec, theta: &Symmetry, max_prefix: usize) -> Result<DefectCurve> {
    let prefix = spec.prefix(max_prefix)?;
    if theta.alphabet_size() < spec.alphabet_size() {
        return Err(Error::invalid(format!(
            "{theta} acts on {} letters, {spec} uses {}",
            theta.alphabet_size(),
            spec.alphabet_size()
        )));
    }
    defect_curve(theta, &prefix)
}

pub fn defect_curve(theta: &Symmetry, prefix: &[Letter]) -> Result<DefectCurve> {
    theta.check_word(prefix)?;
    let mut tree = ThetaPalTree::new(theta)?;
    let mut curve = Vec::with_capacity(prefix.len() + 1);
    curve.push(0u32);
    let mut increments = 0;
    let mut last_increase_at = None;
    for (i, &a) in prefix.iter().enumerate() {
        if tree.push(a).defect_increment > 0 {
            increments += 1;
            last_increase_at = Some(i + 1);
        }
        curve.push(tree.defect() as u32);
    }
    let len = prefix.len();
    let verdict = match last_increase_at {
        None => DefectVerdict::Zero,
        Some(at) if 4 * at > 3 * len => DefectVerdict::Growing,
        Some(_) => DefectVerdict::FiniteSoFar,
    };
    Ok(DefectCurve {
        sup: tree.defect(),
        curve,
        prefix_len: len,
        increments,
        last_increase_at,
        verdict,
    })
}

/// `T_Θ(n) = ΔC(n) + 2 - P_Θ(n+1) - P_Θ(n)`, which is non-negative when the
/// language is closed under Θ and vanishes for all `n >= 1` exactly when the
/// word is Θ-rich.
pub fn richness_deficit(idx: &FactorIndex, theta: &Symmetry, n: usize) -> Result<i64> {
    theta.require_involutive_antimorphism()?;
    idx.require_trusted(n + 1)?;
    idx.require_closed(theta, n + 1)?;
    Ok(idx.delta_c(n)? + 2
        - idx.count_fixed(theta, n + 1) as i64
        - idx.count_fixed(theta, n) as i64)
}

/// A Θ-palindrome with a complete return word that is not a Θ-palindrome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrwViolation {
    pub palindrome: Word,
    pub return_word: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrwLengthRow {
    pub n: usize,
    /// Θ-palindromes of length `n` with at least two occurrences.
    pub checked: usize,
    /// Those with a non-Θ-palindromic complete return word.
    pub violating: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrwReport {
    pub rows: Vec<CrwLengthRow>,
    pub violations: Vec<CrwViolation>,
}

impl CrwReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each Θ-palindromic factor of length `min_len..=trusted_n`, checks
/// that every complete return word seen in the prefix is a Θ-palindrome.
pub fn crw_palindromicity_check(
    idx: &FactorIndex,
    theta: &Symmetry,
    min_len: usize,
) -> Result<CrwReport> {
    theta.require_involutive_antimorphism()?;
    let mut report = CrwReport::default();
    let text = idx.text();
    for n in min_len.max(1)..=idx.trusted_n() {
        let mut row = CrwLengthRow {
            n,
            ..Default::default()
        };
        for f in idx.factors(n) {
            if f.count() < 2 || !is_theta_pal_unchecked(f.word(), theta) {
                continue;
            }
            row.checked += 1;
            let occ = f.occurrences();
            let mut bad: BTreeSet<Word> = BTreeSet::new();
            for pair in occ.windows(2) {
                let crw = &text[pair[0]..pair[1] + n];
                if !is_theta_pal_unchecked(crw, theta) {
                    bad.insert(Word::from(crw));
                }
            }
            if !bad.is_empty() {
                row.violating += 1;
                report
                    .violations
                    .extend(bad.into_iter().map(|return_word| CrwViolation {
                        palindrome: Word::from(f.word()),
                        return_word,
                    }));
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

/// Letters `a` with `a w Θ(a)` in the language, for a Θ-palindrome `w`.
pub fn theta_pal_extensions(
    idx: &FactorIndex,
    theta: &Symmetry,
    w: &[Letter],
) -> Result<BTreeSet<Letter>> {
    theta.require_involutive_antimorphism()?;
    theta.check_word(w)?;
    if !is_theta_pal_unchecked(w, theta) {
        return Err(Error::invalid(format!(
            "{} is not a {theta}-palindrome",
            Word::from(w)
        )));
    }
    idx.require_trusted(w.len() + 2)?;
    let mut out = BTreeSet::new();
    for a in 0..idx.alphabet_size().min(theta.alphabet_size()) {
        let a = a as Letter;
        let mut ext = Word::from_letters(vec![a]);
        ext.extend_from_slice(w);
        ext.push(theta.map_letter(a));
        if idx.contains(&ext) {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Split of a period `w = p s` into two Θ-palindromes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSplit {
    pub p: Word,
    pub s: Word,
}

/// Splits the shortest period of `period^ω` into two Θ-palindromes, which is
/// possible whenever the language of `period^ω` is closed under Θ.
pub fn period_decomposition(theta: &Symmetry, period: &[Letter]) -> Result<PeriodSplit> {
    theta.require_involutive_antimorphism()?;
    theta.check_word(period)?;
    if period.is_empty() {
        return Err(Error::invalid("period must be non-empty"));
    }
    let q = period.len();
    if let Some(d) =
        (1..q).find(|&d| q.is_multiple_of(d) && period.chunks(d).all(|c| c == &period[..d]))
    {
        return Err(Error::invalid(format!(
            "{} is not the shortest period (it repeats a block of length {d})",
            Word::from(period)
        )));
    }

    let word = WordSpec::Periodic(Word::from(period));
    let n = 2 * q;
    let idx = FactorIndex::build(word.prefix(4 * q + 2)?, n)?;
    idx.require_closed(theta, n)?;

    if is_theta_pal_unchecked(period, theta) {
        return Ok(PeriodSplit {
            p: Word::from(period),
            s: Word::new(),
        });
    }
    (1..q)
        .find(|&i| {
            is_theta_pal_unchecked(&period[..i], theta)
                && is_theta_pal_unchecked(&period[i..], theta)
        })
        .map(|i| PeriodSplit {
            p: Word::from(&period[..i]),
            s: Word::from(&period[i..]),
        })
        .ok_or_else(|| {
            Error::Contradiction(format!(
                "closed under {theta} but {} has no split into two {theta}-palindromes",
                Word::from(period)
            ))
        })
}

/// `n·P_Θ(n) <= 16·(C(n) + C(⌊n/4⌋))`, the classical upper bound on
/// palindromic complexity evaluated with Θ-palindromes. Informational.
pub fn abcd_bound_check(idx: &FactorIndex, theta: &Symmetry, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("the bound is stated for n >= 1"));
    }
    let p = pal_complexity(idx, theta, n)?;
    let c = idx.complexity(n)? + idx.complexity(n / 4)?;
    Ok(n * p <= 16 * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::stabilize;
    use crate::symmetry::Kind;
    use crate::word::w;

    fn swap01() -> Symmetry {
        Symmetry::from_pairs(2, Kind::Antimorphism, &[(0, 1), (1, 0)]).unwrap()
    }

    fn tr(k: usize) -> Symmetry {
        Symmetry::reversal(k)
    }

    #[test]
    fn pal_complexity_examples() {
        let tm = stabilize(&WordSpec::thue_morse(), 8).unwrap();
        assert_eq!(pal_complexity(&tm, &tr(2), 6).unwrap(), 4);
        assert_eq!(pal_complexity(&tm, &swap01(), 5).unwrap(), 0);
        let per = stabilize(&WordSpec::Periodic(w("01")), 4).unwrap();
        assert_eq!(pal_complexity(&per, &tr(2), 2).unwrap(), 0);
        let cyc = Symmetry::new(vec![1, 0], Kind::Morphism).unwrap();
        assert!(pal_complexity(&per, &cyc, 2).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&tr(2), &w("0110")).unwrap(), 0);
        assert_eq!(gamma(&swap01(), &w("0011")).unwrap(), 1);
        assert_eq!(gamma(&swap01(), &w("1")).unwrap(), 1);
        let theta1 = Symmetry::from_pairs(4, Kind::Antimorphism, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(gamma(&theta1, &w("0123")).unwrap(), 1);
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&tr(3), &w("0102010")).unwrap(), 0);
        assert_eq!(defect(&tr(2), &w("")).unwrap(), 0);
        assert_eq!(defect(&swap01(), &w("01")).unwrap(), 0);
        assert!(defect(&tr(2), &w("0110100110010110")).unwrap() > 0);
    }

    #[test]
    fn lps_examples() {
        assert_eq!(
            lps(&tr(2), &w("011010")).unwrap(),
            LongestPalSuffix {
                suffix: w("010"),
                unioccurrent: true
            }
        );
        assert_eq!(
            lps(&tr(2), &w("0110")).unwrap(),
            LongestPalSuffix {
                suffix: w("0110"),
                unioccurrent: true
            }
        );
        assert_eq!(
            lps(&swap01(), &w("0")).unwrap(),
            LongestPalSuffix {
                suffix: w(""),
                unioccurrent: false
            }
        );
        assert!(!lps(&tr(3), &w("01201")).unwrap().unioccurrent);
    }

    #[test]
    fn deficits() {
        let tm = stabilize(&WordSpec::thue_morse(), 8).unwrap();
        assert_eq!(richness_deficit(&tm, &tr(2), 1).unwrap(), 0);
        assert_eq!(richness_deficit(&tm, &tr(2), 4).unwrap(), 2);
        let per = stabilize(&WordSpec::Periodic(w("01")), 10).unwrap();
        for n in 1..10 {
            assert_eq!(richness_deficit(&per, &tr(2), n).unwrap(), 0);
        }
        let fib = stabilize(&WordSpec::fibonacci(), 6).unwrap();
        assert!(matches!(
            richness_deficit(&fib, &swap01(), 2),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn extensions() {
        let u = stabilize(&WordSpec::example62(), 8).unwrap();
        let theta1 = Symmetry::from_pairs(4, Kind::Antimorphism, &[(0, 1), (1, 0)]).unwrap();
        let theta2 = Symmetry::from_pairs(4, Kind::Antimorphism, &[(2, 3), (3, 2)]).unwrap();
        assert_eq!(
            theta_pal_extensions(&u, &theta1, &w("2")).unwrap(),
            BTreeSet::from([0])
        );
        assert_eq!(theta_pal_extensions(&u, &theta2, &w("0")).unwrap().len(), 1);
        let tm = stabilize(&WordSpec::thue_morse(), 8).unwrap();
        assert_eq!(
            theta_pal_extensions(&tm, &tr(2), &w("11")).unwrap(),
            BTreeSet::from([0])
        );
        assert!(theta_pal_extensions(&tm, &tr(2), &w("01")).is_err());
    }

    #[test]
    fn period_splits() {
        assert_eq!(
            period_decomposition(&swap01(), &w("01")).unwrap(),
            PeriodSplit {
                p: w("01"),
                s: w("")
            }
        );
        assert_eq!(
            period_decomposition(&tr(2), &w("01")).unwrap(),
            PeriodSplit {
                p: w("0"),
                s: w("1")
            }
        );
        assert!(matches!(
            period_decomposition(&tr(3), &w("012")),
            Err(Error::NotClosed { .. })
        ));
        assert!(period_decomposition(&tr(2), &w("0101")).is_err());
    }

    #[test]
    fn abcd_bound() {
        let tm = stabilize(&WordSpec::thue_morse(), 8).unwrap();
        assert!(abcd_bound_check(&tm, &tr(2), 8).unwrap());
        let fib = stabilize(&WordSpec::fibonacci(), 12).unwrap();
        assert!(abcd_bound_check(&fib, &tr(2), 12).unwrap());
        let per = stabilize(&WordSpec::Periodic(w("01")), 5).unwrap();
        assert!(abcd_bound_check(&per, &tr(2), 5).unwrap());
    }

    #[test]
    fn crw_checks() {
        let fib = stabilize(&WordSpec::fibonacci(), 12).unwrap();
        assert!(crw_palindromicity_check(&fib, &tr(2), 1)
            .unwrap()
            .is_clean());
        let per = stabilize(&WordSpec::Periodic(w("01")), 8).unwrap();
        assert!(crw_palindromicity_check(&per, &swap01(), 2)
            .unwrap()
            .is_clean());
        let tm = stabilize(&WordSpec::thue_morse(), 12).unwrap();
        let report = crw_palindromicity_check(&tm, &tr(2), 1).unwrap();
        assert_eq!(report.rows.len(), 12);
    }

    #[test]
    fn defect_verdicts() {
        assert_eq!(
            word_defect(&WordSpec::fibonacci(), &tr(2), 20_000)
                .unwrap()
                .verdict,
            DefectVerdict::Zero
        );
        let tm = word_defect(&WordSpec::thue_morse(), &tr(2), 20_000).unwrap();
        assert_ne!(tm.verdict, DefectVerdict::Zero);
        assert_eq!(tm.sup as u32, *tm.curve.last().unwrap());
        assert!(tm
            .curve
            .windows(2)
            .all(|d| d[1] - d[0] <= 1 && d[1] >= d[0]));
        assert_eq!(
            word_defect(&WordSpec::Periodic(w("01")), &swap01(), 1000)
                .unwrap()
                .verdict,
            DefectVerdict::Zero
        );
    }
}
