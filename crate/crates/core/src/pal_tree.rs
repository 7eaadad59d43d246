//! Palindromic tree (eertree) generalized to an involutive antimorphism Θ.
//!
//! Nodes are the distinct non-empty Θ-palindromic factors of the text read
//! so far. Appending a letter `a` creates at most one node: the longest
//! Θ-palindromic suffix of the new text, which is new exactly when it is
//! unioccurrent. The tree supports `pop`, so it can back a depth-first
//! search.

use std::collections::HashMap;

use crate::error::Result;
use crate::symmetry::Symmetry;
use crate::word::{Letter, LetterSet, Word};

const IMAGINARY: usize = 0;
const EMPTY: usize = 1;

#[derive(Clone, Debug)]
struct Node {
    len: i64,
    link: usize,
}

#[derive(Clone, Debug)]
struct Step {
    prev_suffix: usize,
    created: Option<(usize, Letter)>,
    gamma_grew: bool,
    first_of_letter: bool,
    defect_increment: usize,
}

/// What happened when a letter was appended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushOutcome {
    /// Length of the longest Θ-palindromic suffix (0 for ε).
    pub suffix_len: usize,
    /// The longest Θ-palindromic suffix is non-empty and occurs once.
    pub unioccurrent: bool,
    /// γ_Θ increased: neither `a` nor `Θ(a)` occurred before and `a ≠ Θ(a)`.
    pub gamma_grew: bool,
    /// Change of the Θ-defect, 0 or 1.
    pub defect_increment: usize,
}

#[derive(Clone, Debug)]
pub struct ThetaPalTree {
    theta: Symmetry,
    text: Vec<Letter>,
    nodes: Vec<Node>,
    edges: HashMap<(usize, Letter), usize>,
    suffix: usize,
    seen: LetterSet,
    letter_counts: Vec<usize>,
    gamma: usize,
    defect: usize,
    history: Vec<Step>,
}

impl ThetaPalTree {
    pub fn new(theta: &Symmetry) -> Result<Self> {
        theta.require_involutive_antimorphism()?;
        Ok(ThetaPalTree {
            theta: theta.clone(),
            text: Vec::new(),
            nodes: vec![
                Node {
                    len: -1,
                    link: IMAGINARY,
                },
                Node {
                    len: 0,
                    link: IMAGINARY,
                },
            ],
            edges: HashMap::new(),
            suffix: EMPTY,
            seen: LetterSet::new(),
            letter_counts: vec![0; theta.alphabet_size()],
            gamma: 0,
            defect: 0,
            history: Vec::new(),
        })
    }

    pub fn theta(&self) -> &Symmetry {
        &self.theta
    }

    pub fn text(&self) -> &[Letter] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Distinct Θ-palindromic factors, counting ε.
    pub fn palindrome_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn defect(&self) -> usize {
        self.defect
    }

    pub fn longest_suffix_len(&self) -> usize {
        self.nodes[self.suffix].len.max(0) as usize
    }

    pub fn longest_suffix(&self) -> Word {
        Word::from(&self.text[self.text.len() - self.longest_suffix_len()..])
    }

    /// Whether `text[i - len - 1]` exists and equals `Θ(a)`, so that node
    /// `v` extends to a Θ-palindrome ending at position `i` with letter `a`.
    fn extends(&self, v: usize, i: usize, mirror: Letter) -> bool {
        let j = i as i64 - self.nodes[v].len - 1;
        j >= 0 && self.text[j as usize] == mirror
    }

    /// Walks suffix links from `v` to the first node extendable by `a`.
    /// Falls off the imaginary root when no non-empty Θ-palindromic suffix
    /// ends with `a`.
    fn find_extendable(&self, mut v: usize, i: usize, mirror: Letter) -> Option<usize> {
        loop {
            if self.extends(v, i, mirror) {
                return Some(v);
            }
            if v == IMAGINARY {
                return None;
            }
            v = self.nodes[v].link;
        }
    }

    pub fn push(&mut self, a: Letter) -> PushOutcome {
        let i = self.text.len();
        self.text.push(a);
        let mirror = self.theta.map_letter(a);

        let first_of_letter = self.letter_counts[a as usize] == 0;
        self.letter_counts[a as usize] += 1;
        let gamma_grew = a != mirror && first_of_letter && !self.seen.contains(mirror);
        self.seen.insert(a);
        if gamma_grew {
            self.gamma += 1;
        }

        let prev_suffix = self.suffix;
        let mut created = None;
        match self.find_extendable(self.suffix, i, mirror) {
            None => self.suffix = EMPTY,
            Some(v) => {
                if let Some(&child) = self.edges.get(&(v, a)) {
                    self.suffix = child;
                } else {
                    let len = self.nodes[v].len + 2;
                    let link = if len == 1 {
                        EMPTY
                    } else {
                        let from = self.nodes[v].link;
                        match self.find_extendable(from, i, mirror) {
                            Some(u) => *self
                                .edges
                                .get(&(u, a))
                                .expect("proper Θ-palindromic suffix already occurred"),
                            None => EMPTY,
                        }
                    };
                    let id = self.nodes.len();
                    self.nodes.push(Node { len, link });
                    self.edges.insert((v, a), id);
                    created = Some((v, a));
                    self.suffix = id;
                }
            }
        }

        let unioccurrent = created.is_some();
        let defect_increment = usize::from(!unioccurrent && !gamma_grew);
        self.defect += defect_increment;
        self.history.push(Step {
            prev_suffix,
            created,
            gamma_grew,
            first_of_letter,
            defect_increment,
        });
        PushOutcome {
            suffix_len: self.longest_suffix_len(),
            unioccurrent,
            gamma_grew,
            defect_increment,
        }
    }

    /// Undoes the last `push`.
    pub fn pop(&mut self) -> Option<Letter> {
        let step = self.history.pop()?;
        let a = self.text.pop().expect("history and text in sync");
        self.letter_counts[a as usize] -= 1;
        if step.first_of_letter {
            // The letter set only ever grows with first occurrences.
            let mut seen = LetterSet::new();
            for (b, &c) in self.letter_counts.iter().enumerate() {
                if c > 0 {
                    seen.insert(b as Letter);
                }
            }
            self.seen = seen;
        }
        if step.gamma_grew {
            self.gamma -= 1;
        }
        if let Some(key) = step.created {
            self.edges.remove(&key);
            self.nodes.pop();
        }
        self.defect -= step.defect_increment;
        self.suffix = step.prev_suffix;
        Some(a)
    }
}
