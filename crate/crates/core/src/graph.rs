//! Graphs of symmetries `Γ_n` and the G-richness tests built on them.
//!
//! Vertices of the directed graph are G-orbits of special (left or right
//! special) factors of length `n`. An edge label is a factor `e` whose only
//! special length-`n` windows are its prefix and its suffix; it starts at the
//! class of its prefix. The undirected graph `Γ_n` groups labels into G-orbits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{stabilize_with, FactorIndex, StabilizeOptions, TrustRange};
use crate::generators::WordSpec;
use crate::group::SymmetryGroup;
use crate::symmetry::{is_theta_pal_unchecked, Symmetry};
use crate::word::{Letter, LetterSet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Lexicographically smallest member of the orbit.
    pub representative: Word,
    pub members: Vec<Word>,
}

impl Vertex {
    pub fn class_size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub label: Word,
    /// Index into [`SymmetryGraph::vertices`] of the class of the prefix.
    pub start: usize,
    /// Class of the suffix.
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub representative: Word,
    pub labels: Vec<Word>,
    /// Vertex indices, smaller first.
    pub endpoints: (usize, usize),
    /// An antimorphism of G fixing one of the labels, if any.
    pub fixed_by: Option<Symmetry>,
}

impl EdgeClass {
    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryGraph {
    pub n: usize,
    pub group_order: usize,
    pub vertices: Vec<Vertex>,
    /// Sorted by label.
    pub edges: Vec<DirectedEdge>,
    /// Sorted by representative.
    pub classes: Vec<EdgeClass>,
}

impl SymmetryGraph {
    pub fn loops(&self) -> impl Iterator<Item = &EdgeClass> {
        self.classes.iter().filter(|c| c.is_loop())
    }

    pub fn loop_count(&self) -> usize {
        self.loops().count()
    }

    pub fn vertex_of(&self, w: &[Letter]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.members.iter().any(|m| m.letters() == w))
    }

    /// Every loop class contains a Θ-palindrome for some Θ in G.
    pub fn loops_ok(&self) -> bool {
        self.loops().all(|c| c.fixed_by.is_some())
    }

    /// After deleting loops, the multigraph of edge classes is a tree. The
    /// empty graph counts as a tree.
    pub fn tree_ok(&self) -> bool {
        let v = self.vertices.len();
        if v == 0 {
            return true;
        }
        let proper: Vec<(usize, usize)> = self
            .classes
            .iter()
            .filter(|c| !c.is_loop())
            .map(|c| c.endpoints)
            .collect();
        if proper.len() != v - 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in proper {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

fn require_group_fits(idx: &FactorIndex, group: &SymmetryGroup) -> Result<()> {
    if group.alphabet_size() < idx.alphabet_size() {
        return Err(Error::invalid(format!(
            "the group acts on {} letters, the word uses {}",
            group.alphabet_size(),
            idx.alphabet_size()
        )));
    }
    Ok(())
}

fn require_closed_under_group(idx: &FactorIndex, group: &SymmetryGroup, n: usize) -> Result<()> {
    require_group_fits(idx, group)?;
    for g in group.elements() {
        idx.require_closed(g, n)?;
    }
    Ok(())
}

fn is_special_window(idx: &FactorIndex, w: &[Letter]) -> Result<Option<LetterSet>> {
    let f = idx
        .lookup(w)
        .ok_or_else(|| Error::NotAFactor(Word::from(w)))?;
    Ok(if f.is_special() { None } else { Some(f.rext()) })
}

/// Builds `Γ_n` from a trusted index. Requires `n + 1 <= trusted_n` and
/// closure of the language under every element of `group`.
pub fn build_gamma(idx: &FactorIndex, group: &SymmetryGroup, n: usize) -> Result<SymmetryGraph> {
    idx.require_trusted(n + 1)?;
    require_closed_under_group(idx, group, n + 1)?;

    let special: Vec<(Word, LetterSet)> = idx
        .factors(n)
        .filter(|f| f.is_special())
        .map(|f| (Word::from(f.word()), f.rext()))
        .collect();

    let mut class_of: BTreeMap<Word, Word> = BTreeMap::new();
    let mut members: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for (w, _) in &special {
        let rep = group.canonical(w);
        members.entry(rep.clone()).or_default().insert(w.clone());
        class_of.insert(w.clone(), rep);
    }
    let vertices: Vec<Vertex> = members
        .into_iter()
        .map(|(representative, m)| Vertex {
            representative,
            members: m.into_iter().collect(),
        })
        .collect();
    let vertex_index: BTreeMap<&Word, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (&v.representative, i))
        .collect();
    let vertex_of = |w: &[Letter]| -> Result<usize> {
        let rep = class_of
            .get(w)
            .ok_or_else(|| Error::Contradiction(format!("{} is not special", Word::from(w))))?;
        Ok(vertex_index[rep])
    };

    // A walk longer than the prefix cannot be certified by it.
    let max_walk = idx.text().len();
    let mut edges = Vec::new();
    for (w, rext) in &special {
        for a in rext.iter() {
            let mut label = w.clone();
            label.push(a);
            loop {
                let window = &label[label.len() - n..];
                match is_special_window(idx, window)? {
                    None => break,
                    Some(next) => {
                        if next.len() != 1 || label.len() >= max_walk {
                            return Err(Error::TrustExhausted { n });
                        }
                        label.push(next.iter().next().unwrap());
                    }
                }
            }
            let start = vertex_of(&label[..n])?;
            let end = vertex_of(&label[label.len() - n..])?;
            edges.push(DirectedEdge { label, start, end });
        }
    }
    edges.sort_by(|x, y| x.label.cmp(&y.label));

    let mut grouped: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        grouped
            .entry(group.canonical(&e.label))
            .or_default()
            .push(i);
    }
    let classes = grouped
        .into_iter()
        .map(|(representative, ids)| {
            let e = &edges[ids[0]];
            let endpoints = (e.start.min(e.end), e.start.max(e.end));
            let labels: Vec<Word> = ids.iter().map(|&i| edges[i].label.clone()).collect();
            let fixed_by = group
                .antimorphisms()
                .find(|theta| labels.iter().any(|l| is_theta_pal_unchecked(l, theta)))
                .cloned();
            EdgeClass {
                representative,
                labels,
                endpoints,
                fixed_by,
            }
        })
        .collect();

    Ok(SymmetryGraph {
        n,
        group_order: group.order(),
        vertices,
        edges,
        classes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphCheck {
    pub loops_ok: bool,
    pub tree_ok: bool,
}

impl GraphCheck {
    pub fn passed(&self) -> bool {
        self.loops_ok && self.tree_ok
    }
}

pub fn check_grichness_at(
    idx: &FactorIndex,
    group: &SymmetryGroup,
    n: usize,
) -> Result<GraphCheck> {
    let g = build_gamma(idx, group, n)?;
    Ok(GraphCheck {
        loops_ok: g.loops_ok(),
        tree_ok: g.tree_ok(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// Least `n` such that every factor of length `n` contains every letter
    /// of the word. `None` when no such length lies in the trust range.
    pub n_allletters: Option<usize>,
    /// Least `n >= 1` such that distinct antimorphisms of G, and distinct
    /// morphisms of G, disagree on every factor of length `>= n`.
    pub n_weak: Option<usize>,
}

impl Thresholds {
    /// Length from which the equality test replaces the graph test.
    pub fn effective(&self) -> Option<usize> {
        self.n_weak.or(self.n_allletters).map(|n| n.max(1))
    }
}

/// Thresholds `N` above which the group inequality and its equality case apply.
pub fn compute_n(idx: &FactorIndex, group: &SymmetryGroup) -> Result<Thresholds> {
    require_group_fits(idx, group)?;
    let trusted = idx.trusted_n();
    let letters = idx.letters();
    let n_allletters = (0..=trusted).find(|&n| {
        idx.factors(n)
            .all(|f| letters.is_subset(&LetterSet::of(f.word())))
    });

    // Two symmetries of the same kind agree on `w` exactly when every letter
    // of `w` lies in the set where their permutations agree.
    let elements = group.elements();
    let mut agreement: Vec<LetterSet> = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            if a.kind() != b.kind() {
                continue;
            }
            let set: LetterSet = (0..a.alphabet_size())
                .map(|x| x as Letter)
                .filter(|&x| a.map_letter(x) == b.map_letter(x))
                .collect();
            agreement.push(set);
        }
    }
    let n_weak = (1..=trusted).find(|&n| {
        idx.factors(n).all(|f| {
            let used = LetterSet::of(f.word());
            !agreement.iter().any(|set| used.is_subset(set))
        })
    });
    Ok(Thresholds {
        n_allletters,
        n_weak,
    })
}

/// `R(n) = Σ_{Θ ∈ G^(2)} (P_Θ(n) + P_Θ(n+1))`, with the individual
/// `P_Θ(n)` in the order of `group.involutive_antimorphisms()`.
pub fn pal_sum(idx: &FactorIndex, group: &SymmetryGroup, n: usize) -> Result<(usize, Vec<usize>)> {
    idx.require_trusted(n + 1)?;
    let mut total = 0;
    let mut per_theta = Vec::new();
    for theta in group.involutive_antimorphisms() {
        let p = idx.count_fixed(theta, n);
        total += p + idx.count_fixed(theta, n + 1);
        per_theta.push(p);
    }
    Ok((total, per_theta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichnessRow {
    pub n: usize,
    pub delta_c: i64,
    /// `P_Θ(n)` for each Θ in `G^(2)`.
    pub pal: Vec<usize>,
    pub r: usize,
    /// `ΔC(n) + #G >= R(n)`.
    pub inequality: bool,
    /// `ΔC(n) + #G = R(n)`; tested only for `n >= N`.
    pub equality: Option<bool>,
    /// Graph check; run only for `n < N`.
    pub graph: Option<GraphCheck>,
}

impl RichnessRow {
    pub fn passed(&self) -> bool {
        self.equality.unwrap_or(true) && self.graph.is_none_or(|g| g.passed())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RichnessVerdict {
    GRichSoFar,
    /// Every failure is below `n0`, and the checks pass on `n0..=n_max`.
    AlmostGRichSoFar {
        n0: usize,
    },
    NotGRich,
}

#[derive(Clone, Debug, Serialize)]
pub struct RichnessReport {
    pub group_order: usize,
    pub thresholds: Thresholds,
    /// `N` used to switch from graph checks to the equality.
    pub n_used: usize,
    pub trust: TrustRange,
    pub rows: Vec<RichnessRow>,
    pub verdict: RichnessVerdict,
}

/// Rows `n = 1..=n_max` of the G-richness test on a stabilized index.
pub fn g_richness_report_on(
    idx: &FactorIndex,
    group: &SymmetryGroup,
    n_max: usize,
) -> Result<RichnessReport> {
    idx.require_trusted(n_max + 1)?;
    require_closed_under_group(idx, group, n_max + 1)?;
    let thresholds = compute_n(idx, group)?;
    let n_used = thresholds.effective().unwrap_or(idx.trusted_n() + 1);
    let order = group.order() as i64;

    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let delta_c = idx.delta_c(n)?;
        let (r, pal) = pal_sum(idx, group, n)?;
        let lhs = delta_c + order;
        let graph = if n < n_used {
            Some(check_grichness_at(idx, group, n)?)
        } else {
            None
        };
        rows.push(RichnessRow {
            n,
            delta_c,
            pal,
            r,
            inequality: lhs >= r as i64,
            equality: (n >= n_used).then_some(lhs == r as i64),
            graph,
        });
    }
    let verdict = verdict_of(&rows, n_max);
    Ok(RichnessReport {
        group_order: group.order(),
        thresholds,
        n_used,
        trust: idx.trust().clone(),
        rows,
        verdict,
    })
}

/// Failures confined to the first three quarters of the range, followed by
/// passing rows, count as evidence of almost G-richness.
fn verdict_of(rows: &[RichnessRow], n_max: usize) -> RichnessVerdict {
    match rows.iter().rev().find(|r| !r.passed()) {
        None => RichnessVerdict::GRichSoFar,
        Some(last) if 4 * last.n < 3 * n_max => {
            RichnessVerdict::AlmostGRichSoFar { n0: last.n + 1 }
        }
        Some(_) => RichnessVerdict::NotGRich,
    }
}

pub fn g_richness_report(
    spec: &WordSpec,
    group: &SymmetryGroup,
    n_max: usize,
    opts: &StabilizeOptions,
) -> Result<RichnessReport> {
    let idx = stabilize_with(spec, n_max + 1, opts)?;
    g_richness_report_on(&idx, group, n_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairBound {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `ΔC(n) + 4 >= P_{Θ1}(n) + P_{Θ2}(n) - P_{Θ1,Θ2}(n) + (same at n+1)` for
/// two distinct commuting involutive antimorphisms.
pub fn theorem41_check(
    idx: &FactorIndex,
    t1: &Symmetry,
    t2: &Symmetry,
    n: usize,
) -> Result<PairBound> {
    if t1 == t2 {
        return Err(Error::NotDistinct(t1.to_string()));
    }
    for t in [t1, t2] {
        if !t.is_involutive_antimorphism() {
            return Err(Error::NotInvolutive(t.to_string()));
        }
    }
    if t1.compose(t2)? != t2.compose(t1)? {
        return Err(Error::NotCommuting(t1.to_string(), t2.to_string()));
    }
    idx.require_trusted(n + 1)?;
    idx.require_closed(t1, n + 1)?;
    idx.require_closed(t2, n + 1)?;
    let both = |m: usize| {
        idx.factors(m)
            .filter(|f| {
                is_theta_pal_unchecked(f.word(), t1) && is_theta_pal_unchecked(f.word(), t2)
            })
            .count() as i64
    };
    let p = |t: &Symmetry, m: usize| idx.count_fixed(t, m) as i64;
    let lhs = idx.delta_c(n)? + 4;
    let rhs = p(t1, n) + p(t2, n) - both(n) + p(t1, n + 1) + p(t2, n + 1) - both(n + 1);
    Ok(PairBound {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

fn dot_id(w: &Word) -> String {
    format!("\"{w}\"")
}

/// DOT rendering of the undirected graph `Γ_n`.
pub fn export_dot(graph: &SymmetryGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph gamma_{} {{", graph.n);
    for v in &graph.vertices {
        let _ = writeln!(
            out,
            "  {} [label=\"[{}] ({})\"];",
            dot_id(&v.representative),
            v.representative,
            v.class_size()
        );
    }
    for c in &graph.classes {
        let (a, b) = c.endpoints;
        let mut label = format!("[{}] ({})", c.representative, c.labels.len());
        if c.is_loop() {
            if let Some(theta) = &c.fixed_by {
                let _ = write!(label, " fixed by {theta}");
            }
        }
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{label}\"];",
            dot_id(&graph.vertices[a].representative),
            dot_id(&graph.vertices[b].representative)
        );
    }
    out.push_str("}\n");
    out
}
