//! Overlaps, squares, and the search for longest square-free Θ-rich words.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pal_tree::ThetaPalTree;
use crate::suffix::Lce;
use crate::symmetry::{Symmetry, SymmetryTerm};
use crate::word::{Letter, Word};

/// An overlap `w w w'` at `position`, with `w'` a non-empty prefix of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapWitness {
    pub position: usize,
    pub w: Word,
    pub w_prime: Word,
}

impl OverlapWitness {
    pub fn factor(&self) -> Word {
        let mut f = self.w.concat(&self.w);
        f.extend_from_slice(&self.w_prime);
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub position: usize,
    pub root: Word,
}

/// Starts `(p, i)` of the distinct factors of length `2p + extra` with
/// period `p`, ordered by `p` and then lexicographically, at most `limit`. Each start
/// is the leftmost occurrence.
///
/// Such a factor at `i` needs `text[j] == text[j + p]` for the `p + extra`
/// positions `j` starting at `i`. Maximal intervals of matching positions
/// are found from anchors at multiples of `p`, each interval at its first
/// anchor. Inside an interval only starts within its smallest period can
/// give new factors, and that period divides `p`.
fn scan_periodic(text: &[Letter], extra: usize, limit: usize) -> Vec<(usize, usize)> {
    let len = text.len();
    let mut found = Vec::new();
    if len < 2 || limit == 0 {
        return found;
    }
    let lce = Lce::new(text);
    let mut starts = Vec::new();
    for p in 1..=len / 2 {
        let need = p + extra;
        if p + need > len {
            break;
        }
        starts.clear();
        let mut q = 0;
        while q + p < len {
            let f = lce.forward(q, q + p);
            let b = if q == 0 {
                0
            } else {
                lce.backward(q - 1, q + p - 1)
            };
            if f > 0 && b < p {
                let start = q - b;
                let end = q + f;
                if end >= start + need {
                    let run = end + p - start;
                    let period = divisors(p)
                        .find(|&d| lce.forward(start, start + d) >= run - d)
                        .unwrap_or(p);
                    starts.extend(start..=(end - need).min(start + period - 1));
                }
            }
            q += p;
        }
        let width = 2 * p + extra;
        starts.sort_unstable_by_key(|&i| lce.rank(i));
        let block = found.len();
        for &i in &starts {
            // Equal factors are adjacent in rank order; keep the leftmost.
            if let Some((_, j)) = found[block..].last_mut() {
                if lce.forward(i, *j) >= width {
                    *j = (*j).min(i);
                    continue;
                }
            }
            if found.len() == limit {
                return found;
            }
            found.push((p, i));
        }
        if found.len() == limit {
            break;
        }
    }
    found
}

fn divisors(p: usize) -> impl Iterator<Item = usize> {
    (1..=p).filter(move |&d| p.is_multiple_of(d))
}

/// Distinct overlaps of the form `w w a`, sorted by length then
/// lexicographically, at most `max_report` of them. Every overlap contains
/// one of these, with the same `w`.
pub fn find_overlaps(prefix: &[Letter], max_report: usize) -> Vec<OverlapWitness> {
    scan_periodic(prefix, 1, max_report)
        .into_iter()
        .map(|(p, i)| OverlapWitness {
            position: i,
            w: Word::from(&prefix[i..i + p]),
            w_prime: Word::from(&prefix[i + 2 * p..i + 2 * p + 1]),
        })
        .collect()
}

/// Distinct squares `w w`, sorted by length then lexicographically, at most
/// `max_report` of them.
pub fn find_squares(prefix: &[Letter], max_report: usize) -> Vec<SquareWitness> {
    scan_periodic(prefix, 0, max_report)
        .into_iter()
        .map(|(p, i)| SquareWitness {
            position: i,
            root: Word::from(&prefix[i..i + p]),
        })
        .collect()
}

/// Whether some suffix of `w` is a square.
fn has_square_suffix(w: &[Letter]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|p| w[n - p..] == w[n - 2 * p..n - p])
}

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub alphabet_size: usize,
    pub theta: Symmetry,
    /// Length of the longest square-free Θ-rich word using every letter.
    pub r: usize,
    /// All words of length `r` found. With Θ = reversal they are listed up to
    /// a permutation of letters, with first occurrences in increasing order.
    pub witnesses: BTreeSet<Word>,
    pub nodes: u64,
    pub exhausted: bool,
    /// Roots of the subtrees still unexplored, in search order.
    pub frontier: Vec<Word>,
}

impl SearchResult {
    /// Letter-first-occurrence reduction is sound when every relabeling of
    /// the alphabet maps Θ-rich words to Θ-rich words, i.e. for Θ = reversal.
    pub fn reduced(&self) -> bool {
        self.theta
            .perm()
            .iter()
            .enumerate()
            .all(|(i, &a)| i == a as usize)
    }

    /// Checkpoint text, read back by [`SearchResult::from_checkpoint`].
    pub fn to_checkpoint(&self) -> String {
        let mut out = String::from("# wordsym search checkpoint v1\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet_size);
        let _ = writeln!(out, "theta {}", self.theta);
        let _ = writeln!(out, "nodes {}", self.nodes);
        let _ = writeln!(out, "best {}", self.r);
        for w in &self.witnesses {
            let _ = writeln!(out, "witness {}", crate::word::format_letters(w));
        }
        for w in &self.frontier {
            let _ = writeln!(out, "frontier {}", crate::word::format_letters(w));
        }
        out
    }

    pub fn from_checkpoint(text: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut theta_text = None;
        let mut nodes = 0;
        let mut r = 0;
        let mut witnesses = BTreeSet::new();
        let mut frontier = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once(' ').unwrap_or((line, ""));
            let bad =
                |what: &str| Error::invalid(format!("checkpoint line {}: bad {what}", lineno + 1));
            match key {
                "alphabet" => alphabet = Some(value.parse::<usize>().map_err(|_| bad("alphabet"))?),
                "theta" => theta_text = Some(value.to_string()),
                "nodes" => nodes = value.parse().map_err(|_| bad("node count"))?,
                "best" => r = value.parse().map_err(|_| bad("best length"))?,
                "witness" => {
                    witnesses.insert(value.parse::<Word>()?);
                }
                "frontier" => frontier.push(value.parse::<Word>()?),
                other => {
                    return Err(Error::invalid(format!(
                        "checkpoint line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        let alphabet_size =
            alphabet.ok_or_else(|| Error::invalid("checkpoint lacks an alphabet line"))?;
        let theta = theta_text
            .ok_or_else(|| Error::invalid("checkpoint lacks a theta line"))?
            .parse::<SymmetryTerm>()?
            .on(alphabet_size)?;
        Ok(SearchResult {
            alphabet_size,
            theta,
            r,
            witnesses,
            nodes,
            exhausted: frontier.is_empty(),
            frontier,
        })
    }
}

struct Searcher {
    k: usize,
    reduced: bool,
    tree: ThetaPalTree,
    budget: u64,
    spent: u64,
    best: usize,
    witnesses: BTreeSet<Word>,
    frontier: Vec<Word>,
}

impl Searcher {
    /// Appends `a` if the word stays square-free and Θ-rich.
    fn try_push(&mut self, a: Letter) -> bool {
        let out = self.tree.push(a);
        if out.defect_increment > 0 || has_square_suffix(self.tree.text()) {
            self.tree.pop();
            return false;
        }
        true
    }

    fn record(&mut self) {
        let text = self.tree.text();
        let used = text.iter().copied().collect::<BTreeSet<_>>().len();
        if used < self.k || text.len() < self.best {
            return;
        }
        if text.len() > self.best {
            self.best = text.len();
            self.witnesses.clear();
        }
        self.witnesses.insert(Word::from(text));
    }

    fn children(&self) -> std::ops::Range<usize> {
        let text = self.tree.text();
        let limit = if self.reduced {
            let next = text.iter().map(|&a| a as usize + 1).max().unwrap_or(0);
            (next + 1).min(self.k)
        } else {
            self.k
        };
        0..limit
    }

    /// Explores the subtree below the current word. Returns `false` when the
    /// budget ran out, after appending the unexplored roots to `frontier`.
    /// Deeper levels are appended first, which is search order.
    fn dfs(&mut self) -> bool {
        for a in self.children() {
            let a = a as Letter;
            if self.spent >= self.budget {
                let rest: Vec<Word> = self
                    .children()
                    .filter(|&b| b >= a as usize)
                    .map(|b| {
                        let mut v = Word::from(self.tree.text());
                        v.push(b as Letter);
                        v
                    })
                    .collect();
                self.frontier.extend(rest);
                return false;
            }
            if !self.try_push(a) {
                continue;
            }
            self.spent += 1;
            self.record();
            let finished = self.dfs();
            self.tree.pop();
            if !finished {
                let pending: Vec<Word> = self
                    .children()
                    .filter(|&b| b > a as usize)
                    .map(|b| {
                        let mut v = Word::from(self.tree.text());
                        v.push(b as Letter);
                        v
                    })
                    .collect();
                self.frontier.extend(pending);
                return false;
            }
        }
        true
    }

    /// Checks `root` and searches below it. Returns `Ok(true)` when the
    /// subtree was finished or `root` was pruned.
    fn explore(&mut self, root: &[Letter]) -> Result<bool> {
        for (i, &a) in root.iter().enumerate() {
            if a as usize >= self.k {
                return Err(Error::invalid(format!(
                    "frontier word {} uses letters outside the alphabet",
                    Word::from(root)
                )));
            }
            if !self.try_push(a) {
                for _ in 0..i {
                    self.tree.pop();
                }
                return Ok(true);
            }
        }
        if !root.is_empty() {
            self.spent += 1;
            self.record();
        }
        let finished = self.dfs();
        for _ in 0..root.len() {
            self.tree.pop();
        }
        Ok(finished)
    }
}

/// Exhaustive search for the longest square-free Θ-rich words over `k`
/// letters, using every letter, within `node_budget` search nodes.
pub fn search_squarefree_rich(
    k: usize,
    theta: &Symmetry,
    node_budget: u64,
) -> Result<SearchResult> {
    let start = SearchResult {
        alphabet_size: k,
        theta: theta.clone(),
        r: 0,
        witnesses: BTreeSet::new(),
        nodes: 0,
        exhausted: false,
        frontier: vec![Word::new()],
    };
    resume_search(&start, node_budget)
}

/// Continues a search from the frontier of an earlier, budget-limited one.
pub fn resume_search(state: &SearchResult, node_budget: u64) -> Result<SearchResult> {
    let k = state.alphabet_size;
    if k == 0 || k != state.theta.alphabet_size() {
        return Err(Error::invalid(format!(
            "{} does not act on an alphabet of {k} letters",
            state.theta
        )));
    }
    let mut s = Searcher {
        k,
        reduced: state.reduced(),
        tree: ThetaPalTree::new(&state.theta)?,
        budget: node_budget,
        spent: 0,
        best: state.r,
        witnesses: state.witnesses.clone(),
        frontier: Vec::new(),
    };
    let mut roots = state.frontier.iter();
    for root in roots.by_ref() {
        if !s.explore(root)? {
            break;
        }
    }
    s.frontier.extend(roots.cloned());
    Ok(SearchResult {
        alphabet_size: k,
        theta: state.theta.clone(),
        r: s.best,
        witnesses: s.witnesses,
        nodes: state.nodes + s.spent,
        exhausted: s.frontier.is_empty(),
        frontier: s.frontier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::WordSpec;
    use crate::palindromics::defect;
    use crate::word::w;

    fn naive_overlaps(t: &[Letter]) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for p in 1..=t.len() / 2 {
            for i in 0..t.len().saturating_sub(2 * p) {
                let f = &t[i..i + 2 * p + 1];
                if (0..=p).all(|j| f[j] == f[j + p]) {
                    out.insert(Word::from(f));
                }
            }
        }
        out
    }

    fn naive_squares(t: &[Letter]) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for p in 1..=t.len() / 2 {
            for i in 0..=t.len() - 2 * p {
                if t[i..i + p] == t[i + p..i + 2 * p] {
                    out.insert(Word::from(&t[i..i + 2 * p]));
                }
            }
        }
        out
    }

    #[test]
    fn overlap_examples() {
        let o = find_overlaps(&w("000"), 10);
        assert_eq!(
            o,
            vec![OverlapWitness {
                position: 0,
                w: w("0"),
                w_prime: w("0")
            }]
        );
        let tm = WordSpec::thue_morse().prefix(4096).unwrap();
        assert!(find_overlaps(&tm, 10).is_empty());
        let fib = WordSpec::fibonacci().prefix(1000).unwrap();
        let o = find_overlaps(&fib, usize::MAX);
        assert!(o.iter().any(|x| x.factor() == w("0010010")));
        for x in &o {
            assert_eq!(
                &fib[x.position..x.position + x.factor().len()],
                x.factor().letters()
            );
        }
    }

    #[test]
    fn square_examples() {
        assert!(find_squares(&w("0102010"), 10).is_empty());
        assert_eq!(
            find_squares(&w("0101"), 10),
            vec![SquareWitness {
                position: 0,
                root: w("01")
            }]
        );
        let tm = WordSpec::thue_morse().prefix(64).unwrap();
        let sq = find_squares(&tm, 3);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq[0].root, w("0"));
    }

    #[test]
    fn scans_match_naive() {
        let words = [
            WordSpec::fibonacci().prefix(300).unwrap(),
            WordSpec::thue_morse().prefix(300).unwrap(),
            WordSpec::Periodic(w("01")).prefix(60).unwrap(),
            WordSpec::Periodic(w("0010")).prefix(50).unwrap(),
            w("0120102012021"),
            w("00000000"),
        ];
        for t in &words {
            let fast: BTreeSet<Word> = find_overlaps(t, usize::MAX)
                .iter()
                .map(|x| x.factor())
                .collect();
            assert_eq!(fast, naive_overlaps(t), "{t}");
            let fast: BTreeSet<Word> = find_squares(t, usize::MAX)
                .iter()
                .map(|x| x.root.concat(&x.root))
                .collect();
            assert_eq!(fast, naive_squares(t), "{t}");
        }
    }

    #[test]
    fn sorted_and_capped() {
        let t = WordSpec::Periodic(w("0010")).prefix(60).unwrap();
        let all = find_overlaps(&t, usize::MAX);
        let keys: Vec<(usize, Word)> = all.iter().map(|x| (x.factor().len(), x.factor())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(find_overlaps(&t, 2), all[..2].to_vec());
    }

    #[test]
    fn small_searches() {
        for (k, r) in [(1, 1), (2, 3), (3, 7)] {
            let res =
                search_squarefree_rich(k, &Symmetry::reversal(k), DEFAULT_NODE_BUDGET).unwrap();
            assert!(res.exhausted);
            assert_eq!(res.r, r);
            for wit in &res.witnesses {
                assert_eq!(defect(&Symmetry::reversal(k), wit).unwrap(), 0);
                assert!(find_squares(wit, 1).is_empty());
            }
        }
        let res = search_squarefree_rich(3, &Symmetry::reversal(3), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(res.witnesses, BTreeSet::from([w("0102010"), w("0121012")]));
        let res = search_squarefree_rich(2, &Symmetry::reversal(2), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(res.witnesses, BTreeSet::from([w("010")]));
    }

    #[test]
    fn budget_and_resume() {
        let theta = Symmetry::reversal(3);
        let full = search_squarefree_rich(3, &theta, DEFAULT_NODE_BUDGET).unwrap();
        let mut state = search_squarefree_rich(3, &theta, 5).unwrap();
        assert!(!state.exhausted);
        let mut rounds = 0;
        while !state.exhausted {
            let text = state.to_checkpoint();
            let reloaded = SearchResult::from_checkpoint(&text).unwrap();
            assert_eq!(reloaded, state);
            state = resume_search(&reloaded, 5).unwrap();
            rounds += 1;
            assert!(rounds < 1000);
        }
        assert_eq!(state.r, full.r);
        assert_eq!(state.witnesses, full.witnesses);
        assert_eq!(state.nodes, full.nodes);
    }

    #[test]
    fn unreduced_search_for_other_theta() {
        let swap = "a:0>1,1>0".parse::<SymmetryTerm>().unwrap().on(2).unwrap();
        let res = search_squarefree_rich(2, &swap, DEFAULT_NODE_BUDGET).unwrap();
        assert!(res.exhausted);
        for wit in &res.witnesses {
            assert_eq!(defect(&swap, wit).unwrap(), 0);
            assert!(find_squares(wit, 1).is_empty());
        }
    }
}
