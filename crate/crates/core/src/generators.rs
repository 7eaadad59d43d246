//! Prefixes of infinite words: substitution fixed points, the digit-sum
//! words `t_{b,m}`, the Champernowne word and periodic words.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{format_letters, Letter, Word, MAX_ALPHABET};

/// A non-erasing substitution on `k` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let k = images.len();
        if k == 0 || k > MAX_ALPHABET {
            return Err(Error::spec(format!("substitution on {k} letters")));
        }
        for (a, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::spec(format!(
                    "image of letter {a} is empty (erasing)"
                )));
            }
            if let Some(&b) = image.iter().find(|&&b| b as usize >= k) {
                return Err(Error::spec(format!(
                    "image of letter {a} uses letter {b} outside the {k}-letter alphabet"
                )));
            }
        }
        Ok(Substitution { images })
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize]
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Word::new();
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    /// `0 -> 01`, `1 -> 10`.
    pub fn thue_morse() -> Self {
        tbm_substitution(2, 2).expect("valid parameters")
    }

    /// `0 -> 01`, `1 -> 0`.
    pub fn fibonacci() -> Self {
        Substitution::new(vec!["01".parse().unwrap(), "0".parse().unwrap()]).unwrap()
    }

    /// `0 -> 0130`, `1 -> 1021`, `2 -> 102`, `3 -> 013`: a fixed point with
    /// irrational letter densities whose language is closed under the
    /// antimorphisms exchanging `0,1` and `2,3` respectively.
    pub fn irrational_densities() -> Self {
        Substitution::new(
            ["0130", "1021", "102", "013"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Parses lines of the form `letter -> image`. Blank lines and `#`
    /// comments are skipped. Letters must cover `0..k` exactly once.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut pairs: Vec<(Letter, Word)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
                Error::spec(format!("line {}: expected `letter -> image`", lineno + 1))
            })?;
            let letter: Letter = lhs.trim().parse().map_err(|_| {
                Error::spec(format!("line {}: bad letter {:?}", lineno + 1, lhs.trim()))
            })?;
            let image: Word = rhs
                .trim()
                .parse()
                .map_err(|e| Error::spec(format!("line {}: {e}", lineno + 1)))?;
            pairs.push((letter, image));
        }
        pairs.sort_by_key(|(a, _)| *a);
        for (i, (a, _)) in pairs.iter().enumerate() {
            if *a as usize != i {
                return Err(Error::spec(format!(
                    "substitution letters must be exactly 0..{}, found {a} at position {i}",
                    pairs.len()
                )));
            }
        }
        Substitution::new(pairs.into_iter().map(|(_, image)| image).collect())
    }

    pub fn to_text(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(a, image)| format!("{a} -> {}\n", format_letters(image)))
            .collect()
    }
}

/// Prefix of length `min_len` of the fixed point starting with `seed`.
///
/// The seed must be prolongable: its image starts with it and has length at
/// least 2.
pub fn fixed_point_prefix(s: &Substitution, seed: Letter, min_len: usize) -> Result<Word> {
    if seed as usize >= s.alphabet_size() {
        return Err(Error::spec(format!("seed {seed} outside the alphabet")));
    }
    let image = s.image(seed);
    if image.len() < 2 || image[0] != seed {
        return Err(Error::spec(format!(
            "seed {seed} is not prolongable (image {image})"
        )));
    }
    let mut word = Word::from_letters(vec![seed]);
    while word.len() < min_len {
        // Only the part of the current prefix needed to reach min_len is
        // expanded; every image is non-empty so each letter adds at least one.
        let mut next = Word::new();
        for &a in word.iter() {
            next.extend_from_slice(s.image(a));
            if next.len() >= min_len {
                break;
            }
        }
        word = next;
    }
    word.truncate(min_len);
    Ok(word)
}

/// Base-`b` digit sum of `n`.
pub fn digit_sum(mut n: u64, b: u64) -> u64 {
    let mut sum = 0;
    while n > 0 {
        sum += n % b;
        n /= b;
    }
    sum
}

/// `t_{b,m}`: the `n`-th letter is the base-`b` digit sum of `n` modulo `m`.
pub fn tbm_prefix(b: u32, m: u32, len: usize) -> Result<Word> {
    check_tbm(b, m)?;
    Ok((0..len as u64)
        .map(|n| (digit_sum(n, b as u64) % m as u64) as Letter)
        .collect())
}

/// The `m`-letter substitution `k -> k (k+1) ... (k+b-1)` (indices mod `m`)
/// fixing `t_{b,m}`.
pub fn tbm_substitution(b: u32, m: u32) -> Result<Substitution> {
    check_tbm(b, m)?;
    let images = (0..m)
        .map(|k| (0..b).map(|j| ((k + j) % m) as Letter).collect())
        .collect();
    Substitution::new(images)
}

fn check_tbm(b: u32, m: u32) -> Result<()> {
    if b < 2 || m < 2 {
        return Err(Error::spec(format!(
            "t_(b,m) needs b, m >= 2, got b={b}, m={m}"
        )));
    }
    if m as usize > MAX_ALPHABET {
        return Err(Error::spec(format!(
            "modulus {m} exceeds the alphabet limit"
        )));
    }
    Ok(())
}

/// Decimal expansions of 1, 2, 3, ... concatenated, truncated to `len`.
pub fn champernowne_prefix(len: usize) -> Word {
    let mut word = Word::new();
    let mut k: u64 = 1;
    while word.len() < len {
        push_decimal(&mut word, k);
        k += 1;
    }
    word.truncate(len);
    word
}

/// The Champernowne prefix ending with the full expansion of `last`.
pub fn champernowne_through(last: u64) -> Word {
    let mut word = Word::new();
    for k in 1..=last {
        push_decimal(&mut word, k);
    }
    word
}

fn push_decimal(word: &mut Word, k: u64) {
    for d in k.to_string().bytes() {
        word.push(d - b'0');
    }
}

pub fn periodic_prefix(period: &[Letter], len: usize) -> Result<Word> {
    if period.is_empty() {
        return Err(Error::spec("period must be non-empty"));
    }
    Ok(period.iter().copied().cycle().take(len).collect())
}

/// Empirical letter frequencies of a finite word.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub counts: Vec<usize>,
    pub len: usize,
    /// Limit densities, when known for the word the prefix came from.
    pub expected: Option<Vec<f64>>,
}

impl DensityReport {
    pub fn frequency(&self, a: Letter) -> f64 {
        self.counts[a as usize] as f64 / self.len as f64
    }

    /// Exact frequency as `(count, len)`.
    pub fn ratio(&self, a: Letter) -> (usize, usize) {
        (self.counts[a as usize], self.len)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.counts.len())
            .map(|a| self.frequency(a as Letter))
            .collect()
    }

    /// Largest `|frequency - expected|` over letters, if expectations exist.
    pub fn max_deviation(&self) -> Option<f64> {
        let expected = self.expected.as_ref()?;
        Some(
            expected
                .iter()
                .enumerate()
                .map(|(a, e)| (self.frequency(a as Letter) - e).abs())
                .fold(0.0, f64::max),
        )
    }
}

pub fn letter_densities(w: &[Letter], alphabet: usize) -> Result<DensityReport> {
    if w.is_empty() {
        return Err(Error::invalid("densities of the empty word are undefined"));
    }
    let mut counts = vec![0usize; alphabet.max(Word::from(w).min_alphabet())];
    for &a in w {
        counts[a as usize] += 1;
    }
    Ok(DensityReport {
        counts,
        len: w.len(),
        expected: None,
    })
}

/// Densities of `0,1` and of `2,3` in the fixed point of
/// [`Substitution::irrational_densities`], read off the Perron eigenvector
/// for the eigenvalue `2 + √3`.
pub fn irrational_expected_densities() -> Vec<f64> {
    let s3 = 3f64.sqrt();
    let big = (s3 - 1.0) / 2.0;
    let small = (2.0 - s3) / 2.0;
    vec![big, big, small, small]
}

/// An infinite word (or a finite literal) that prefixes can be drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSpec {
    /// Fixed point of a substitution. `label` is the text the spec was
    /// parsed from, e.g. `tm` or `fixpoint:subst.txt:0`.
    FixedPoint {
        label: String,
        substitution: Substitution,
        seed: Letter,
    },
    Tbm {
        base: u32,
        modulus: u32,
    },
    Champernowne,
    Periodic(Word),
    Literal(Word),
}

impl WordSpec {
    pub fn thue_morse() -> Self {
        WordSpec::FixedPoint {
            label: "tm".into(),
            substitution: Substitution::thue_morse(),
            seed: 0,
        }
    }

    pub fn fibonacci() -> Self {
        WordSpec::FixedPoint {
            label: "fib".into(),
            substitution: Substitution::fibonacci(),
            seed: 0,
        }
    }

    pub fn example62() -> Self {
        WordSpec::FixedPoint {
            label: "example62".into(),
            substitution: Substitution::irrational_densities(),
            seed: 0,
        }
    }

    pub fn prefix(&self, len: usize) -> Result<Word> {
        match self {
            WordSpec::FixedPoint {
                substitution, seed, ..
            } => fixed_point_prefix(substitution, *seed, len),
            WordSpec::Tbm { base, modulus } => tbm_prefix(*base, *modulus, len),
            WordSpec::Champernowne => Ok(champernowne_prefix(len)),
            WordSpec::Periodic(period) => periodic_prefix(period, len),
            WordSpec::Literal(word) => {
                if len > word.len() {
                    Err(Error::spec(format!(
                        "literal word has length {}, {len} letters requested",
                        word.len()
                    )))
                } else {
                    Ok(Word::from(&word[..len]))
                }
            }
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            WordSpec::FixedPoint { substitution, .. } => substitution.alphabet_size(),
            WordSpec::Tbm { modulus, .. } => *modulus as usize,
            WordSpec::Champernowne => 10,
            WordSpec::Periodic(w) | WordSpec::Literal(w) => w.min_alphabet(),
        }
    }

    /// Whether arbitrarily long prefixes exist.
    pub fn is_infinite(&self) -> bool {
        !matches!(self, WordSpec::Literal(_))
    }

    pub fn expected_densities(&self) -> Option<Vec<f64>> {
        match self {
            WordSpec::FixedPoint {
                substitution,
                seed: 0,
                ..
            } if *substitution == Substitution::irrational_densities() => {
                Some(irrational_expected_densities())
            }
            _ => None,
        }
    }

    pub fn densities(&self, len: usize) -> Result<DensityReport> {
        let prefix = self.prefix(len)?;
        let mut report = letter_densities(&prefix, self.alphabet_size())?;
        report.expected = self.expected_densities();
        Ok(report)
    }

    /// Parses the spec grammar: `tm`, `fib`, `example62`, `champernowne`,
    /// `tbm:b,m`, `periodic:<word>`, `literal:<word>`,
    /// `fixpoint:<substitution file>:<seed>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, arg) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        let no_arg = |spec: WordSpec| match arg {
            None => Ok(spec),
            Some(_) => Err(Error::spec(format!("{head} takes no argument"))),
        };
        let need_arg = || arg.ok_or_else(|| Error::spec(format!("{head} needs an argument")));
        match head {
            "tm" => no_arg(WordSpec::thue_morse()),
            "fib" => no_arg(WordSpec::fibonacci()),
            "example62" => no_arg(WordSpec::example62()),
            "champernowne" => no_arg(WordSpec::Champernowne),
            "tbm" => {
                let arg = need_arg()?;
                let (b, m) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::spec(format!("tbm expects b,m, got {arg:?}")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::spec(format!("bad tbm parameter {t:?}")))
                };
                let (base, modulus) = (parse(b)?, parse(m)?);
                check_tbm(base, modulus)?;
                Ok(WordSpec::Tbm { base, modulus })
            }
            "periodic" => {
                let period: Word = need_arg()?
                    .parse()
                    .map_err(|e| Error::spec(format!("{e}")))?;
                if period.is_empty() {
                    return Err(Error::spec("period must be non-empty"));
                }
                Ok(WordSpec::Periodic(period))
            }
            "literal" => Ok(WordSpec::Literal(
                need_arg()?
                    .parse()
                    .map_err(|e| Error::spec(format!("{e}")))?,
            )),
            "fixpoint" => {
                let arg = need_arg()?;
                let (path, seed) = arg
                    .rsplit_once(':')
                    .ok_or_else(|| Error::spec("fixpoint expects <file>:<seed>"))?;
                let seed: Letter = seed
                    .trim()
                    .parse()
                    .map_err(|_| Error::spec(format!("bad seed {seed:?}")))?;
                let substitution = read_substitution(Path::new(path))?;
                let spec = WordSpec::FixedPoint {
                    label: text.to_string(),
                    substitution,
                    seed,
                };
                // Fail early on a non-prolongable seed.
                spec.prefix(1)?;
                Ok(spec)
            }
            _ => Err(Error::spec(format!("unknown word spec {text:?}"))),
        }
    }
}

pub fn read_substitution(path: &Path) -> Result<Substitution> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::spec(format!("cannot read {}: {e}", path.display())))?;
    Substitution::parse_text(&text)
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WordSpec::parse(s)
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::FixedPoint { label, .. } => f.write_str(label),
            WordSpec::Tbm { base, modulus } => write!(f, "tbm:{base},{modulus}"),
            WordSpec::Champernowne => f.write_str("champernowne"),
            WordSpec::Periodic(p) => write!(f, "periodic:{}", format_letters(p)),
            WordSpec::Literal(w) => write!(f, "literal:{}", format_letters(w)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn thue_morse_prefix() {
        let tm = fixed_point_prefix(&Substitution::thue_morse(), 0, 16).unwrap();
        assert_eq!(tm, w("0110100110010110"));
    }

    #[test]
    fn irrational_word_prefix() {
        let u = fixed_point_prefix(&Substitution::irrational_densities(), 0, 8).unwrap();
        assert_eq!(u, w("01301021"));
    }

    #[test]
    fn non_prolongable_or_erasing() {
        let s = Substitution::new(vec![w("0"), w("10")]).unwrap();
        assert!(matches!(
            fixed_point_prefix(&s, 0, 5),
            Err(Error::InvalidSpec(_))
        ));
        let s = Substitution::new(vec![w("01"), w("0")]).unwrap();
        assert!(
            fixed_point_prefix(&s, 1, 5).is_err(),
            "image of 1 starts with 0"
        );
        assert!(Substitution::new(vec![w("01"), w("")]).is_err());
    }

    #[test]
    fn tbm_examples() {
        assert_eq!(tbm_prefix(2, 2, 16).unwrap(), w("0110100110010110"));
        assert_eq!(tbm_prefix(5, 2, 8).unwrap(), w("01010101"));
        assert_eq!(tbm_prefix(2, 4, 8).unwrap(), w("01121223"));
        assert!(tbm_prefix(1, 2, 8).is_err());
    }

    #[test]
    fn tbm_substitutions() {
        let s = tbm_substitution(2, 4).unwrap();
        assert_eq!(s.to_text(), "0 -> 01\n1 -> 12\n2 -> 23\n3 -> 30\n");
        assert_eq!(tbm_substitution(2, 2).unwrap(), Substitution::thue_morse());
        let s = tbm_substitution(3, 2).unwrap();
        assert_eq!(
            (s.image(0).clone(), s.image(1).clone()),
            (w("010"), w("101"))
        );
    }

    #[test]
    fn champernowne() {
        assert_eq!(champernowne_prefix(10), w("1234567891"));
        assert_eq!(champernowne_prefix(0), w(""));
        assert_eq!(champernowne_prefix(15), w("123456789101112"));
        assert_eq!(champernowne_through(12), w("123456789101112"));
    }

    #[test]
    fn periodic() {
        assert_eq!(periodic_prefix(&w("01"), 6).unwrap(), w("010101"));
        assert_eq!(periodic_prefix(&w("012"), 7).unwrap(), w("0120120"));
        assert_eq!(periodic_prefix(&w("0"), 3).unwrap(), w("000"));
        assert!(periodic_prefix(&w(""), 3).is_err());
    }

    #[test]
    fn densities() {
        let d = letter_densities(&w("010101"), 2).unwrap();
        assert_eq!(d.ratio(0), (3, 6));
        assert!((d.frequencies().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(letter_densities(&w(""), 2).is_err());

        let tm = WordSpec::thue_morse().densities(1 << 16).unwrap();
        assert_eq!(tm.ratio(0), (1 << 15, 1 << 16));
        assert!(tm.expected.is_none());
    }

    #[test]
    fn spec_grammar() {
        for text in [
            "tm",
            "fib",
            "example62",
            "champernowne",
            "tbm:4,2",
            "periodic:01",
            "literal:0102",
        ] {
            assert_eq!(WordSpec::parse(text).unwrap().to_string(), text);
        }
        assert_eq!(WordSpec::parse("tbm:2,4").unwrap().alphabet_size(), 4);
        assert!(WordSpec::parse("tbm:1,2").is_err());
        assert!(WordSpec::parse("periodic:").is_err());
        assert!(WordSpec::parse("nope").is_err());
        assert!(WordSpec::parse("tm:3").is_err());
        assert!(WordSpec::parse("literal:01").unwrap().prefix(3).is_err());
    }

    #[test]
    fn substitution_file_format() {
        let s = Substitution::parse_text("# fib\n0 -> 01\n1 -> 0\n").unwrap();
        assert_eq!(s, Substitution::fibonacci());
        assert!(Substitution::parse_text("0 -> 01\n2 -> 0\n").is_err());
        assert!(Substitution::parse_text("0 = 01\n").is_err());

        let dir = std::env::temp_dir().join(format!("wordsym-subst-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tm.txt");
        std::fs::write(&path, Substitution::thue_morse().to_text()).unwrap();
        let spec = WordSpec::parse(&format!("fixpoint:{}:0", path.display())).unwrap();
        assert_eq!(spec.prefix(8).unwrap(), w("01101001"));
        assert!(WordSpec::parse(&format!("fixpoint:{}:1", path.display())).is_ok());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
