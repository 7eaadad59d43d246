//! Suffix array, LCP array and constant-time longest-common-extension
//! queries over a word.

use std::cmp::Ordering;

use crate::word::Letter;

#[derive(Clone, Debug)]
pub struct SuffixArray {
    sa: Vec<u32>,
    rank: Vec<u32>,
    /// `lcp[i]` = longest common prefix of suffixes `sa[i-1]` and `sa[i]`;
    /// `lcp[0] = 0`.
    lcp: Vec<u32>,
}

impl SuffixArray {
    /// Prefix doubling, `O(n log² n)`.
    pub fn new(text: &[Letter]) -> Self {
        let n = text.len();
        assert!(
            n < u32::MAX as usize,
            "text too long for a u32 suffix array"
        );
        let mut sa: Vec<u32> = (0..n as u32).collect();
        let mut rank: Vec<u32> = text.iter().map(|&a| a as u32).collect();
        let mut next_rank = vec![0u32; n];
        let mut k = 1usize;
        if n > 0 {
            loop {
                let key = |i: u32| {
                    let i = i as usize;
                    let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
                    ((rank[i] as u64) << 32) | second
                };
                sa.sort_unstable_by_key(|&i| key(i));
                next_rank[sa[0] as usize] = 0;
                for j in 1..n {
                    let bump = (key(sa[j - 1]) != key(sa[j])) as u32;
                    next_rank[sa[j] as usize] = next_rank[sa[j - 1] as usize] + bump;
                }
                std::mem::swap(&mut rank, &mut next_rank);
                if rank[sa[n - 1] as usize] as usize == n - 1 || k >= n {
                    break;
                }
                k *= 2;
            }
        }
        let lcp = kasai(text, &sa, &rank);
        SuffixArray { sa, rank, lcp }
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn rank(&self) -> &[u32] {
        &self.rank
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Half-open range of suffix-array slots whose suffixes start with
    /// `pattern`.
    pub fn find(&self, text: &[Letter], pattern: &[Letter]) -> (usize, usize) {
        let cmp = |i: u32| {
            let suffix = &text[i as usize..];
            let head = &suffix[..suffix.len().min(pattern.len())];
            match head.cmp(pattern) {
                Ordering::Equal if head.len() < pattern.len() => Ordering::Less,
                other => other,
            }
        };
        let lo = self.sa.partition_point(|&i| cmp(i) == Ordering::Less);
        let hi = lo + self.sa[lo..].partition_point(|&i| cmp(i) == Ordering::Equal);
        (lo, hi)
    }
}

fn kasai(text: &[Letter], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r > 0 {
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Range-minimum sparse table.
#[derive(Clone, Debug)]
struct SparseMin {
    levels: Vec<Vec<u32>>,
}

impl SparseMin {
    fn new(values: &[u32]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=values.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseMin { levels }
    }

    /// Minimum over `lo..hi` (non-empty).
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let span = hi - lo;
        let level = (usize::BITS - 1 - span.leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi - (1 << level)])
    }
}

/// Longest common extensions forwards (`text[i..]` vs `text[j..]`) and
/// backwards (`text[..=i]` vs `text[..=j]`, read right to left).
#[derive(Clone, Debug)]
pub struct Lce {
    n: usize,
    forward: SuffixArray,
    forward_min: SparseMin,
    backward: SuffixArray,
    backward_min: SparseMin,
}

impl Lce {
    pub fn new(text: &[Letter]) -> Self {
        let forward = SuffixArray::new(text);
        let reversed: Vec<Letter> = text.iter().rev().copied().collect();
        let backward = SuffixArray::new(&reversed);
        Lce {
            n: text.len(),
            forward_min: SparseMin::new(&forward.lcp),
            backward_min: SparseMin::new(&backward.lcp),
            forward,
            backward,
        }
    }

    fn query(sa: &SuffixArray, table: &SparseMin, n: usize, i: usize, j: usize) -> usize {
        if i == j {
            return n - i;
        }
        let (a, b) = (sa.rank[i] as usize, sa.rank[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        table.min(lo + 1, hi + 1) as usize
    }

    /// Rank of `text[i..]` among all suffixes.
    pub fn rank(&self, i: usize) -> usize {
        self.forward.rank[i] as usize
    }

    /// Length of the longest common prefix of `text[i..]` and `text[j..]`.
    pub fn forward(&self, i: usize, j: usize) -> usize {
        if i >= self.n || j >= self.n {
            return 0;
        }
        Self::query(&self.forward, &self.forward_min, self.n, i, j)
    }

    /// Length of the longest common suffix of `text[..=i]` and `text[..=j]`.
    pub fn backward(&self, i: usize, j: usize) -> usize {
        if i >= self.n || j >= self.n {
            return 0;
        }
        let (ri, rj) = (self.n - 1 - i, self.n - 1 - j);
        Self::query(&self.backward, &self.backward_min, self.n, ri, rj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn naive_sa(text: &[Letter]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    fn naive_lce(text: &[Letter], i: usize, j: usize) -> usize {
        text[i..]
            .iter()
            .zip(&text[j..])
            .take_while(|(a, b)| a == b)
            .count()
    }

    #[test]
    fn matches_naive_sort() {
        for text in [
            "",
            "0",
            "0110100110010110",
            "000000",
            "0102010301020104",
            "2101201",
        ] {
            let t = w(text);
            let sa = SuffixArray::new(&t);
            assert_eq!(sa.sa(), naive_sa(&t).as_slice(), "{text}");
            for r in 1..t.len() {
                let (a, b) = (sa.sa()[r - 1] as usize, sa.sa()[r] as usize);
                assert_eq!(sa.lcp()[r] as usize, naive_lce(&t, a, b));
            }
        }
    }

    #[test]
    fn find_ranges() {
        let t = w("0110100110010110");
        let sa = SuffixArray::new(&t);
        let (lo, hi) = sa.find(&t, &w("01"));
        let mut occ: Vec<u32> = sa.sa()[lo..hi].to_vec();
        occ.sort();
        assert_eq!(occ, vec![0, 3, 6, 10, 12]);
        assert_eq!(sa.find(&t, &w("111")).0, sa.find(&t, &w("111")).1);
        assert_eq!(sa.find(&t, &w("")), (0, t.len()));
    }

    #[test]
    fn lce_matches_naive() {
        let t = w("01101001100101101001011001101001");
        let lce = Lce::new(&t);
        let rev: Vec<Letter> = t.iter().rev().copied().collect();
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(lce.forward(i, j), naive_lce(&t, i, j));
                let (ri, rj) = (t.len() - 1 - i, t.len() - 1 - j);
                assert_eq!(lce.backward(i, j), naive_lce(&rev, ri, rj));
            }
        }
    }
}
