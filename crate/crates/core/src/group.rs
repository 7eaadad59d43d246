//! Finite groups of symmetries and the orbits they induce on words.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::symmetry::Symmetry;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    elements: Vec<Symmetry>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    table: Vec<Vec<usize>>,
    identity: usize,
}

/// Default closure bound: `2·k!` elements, saturating.
pub fn default_group_limit(k: usize) -> usize {
    (1..=k)
        .try_fold(2usize, |acc, i| acc.checked_mul(i))
        .unwrap_or(usize::MAX)
}

impl SymmetryGroup {
    /// Closure of `gens` under composition.
    pub fn generate(gens: &[Symmetry]) -> Result<Self> {
        let k = gens
            .first()
            .ok_or_else(|| Error::invalid("generator list is empty"))?
            .alphabet_size();
        Self::generate_bounded(gens, default_group_limit(k))
    }

    pub fn generate_bounded(gens: &[Symmetry], limit: usize) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::invalid("generator list is empty"))?;
        let k = first.alphabet_size();
        if let Some(bad) = gens.iter().find(|g| g.alphabet_size() != k) {
            return Err(Error::invalid(format!(
                "generator {bad} acts on {} letters, expected {k}",
                bad.alphabet_size()
            )));
        }

        let mut elements = vec![Symmetry::identity(k)];
        let mut seen: HashMap<Symmetry, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let next = g.compose(&elements[i])?;
                if !seen.contains_key(&next) {
                    if elements.len() >= limit {
                        return Err(Error::GroupTooLarge { limit });
                    }
                    seen.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            i += 1;
        }

        // Keep a deterministic order: identity first, then sorted.
        elements[1..].sort();
        let index: HashMap<&Symmetry, usize> =
            elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = a.compose(b)?;
                table[i][j] = *index
                    .get(&c)
                    .ok_or_else(|| Error::Contradiction(format!("closure missed {a} ∘ {b}")))?;
            }
        }
        Ok(SymmetryGroup {
            elements,
            table,
            identity: 0,
        })
    }

    pub fn elements(&self) -> &[Symmetry] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.elements[0].alphabet_size()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn compose_index(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn antimorphisms(&self) -> impl Iterator<Item = &Symmetry> {
        self.elements.iter().filter(|s| s.is_antimorphism())
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &Symmetry> {
        self.elements.iter().filter(|s| !s.is_antimorphism())
    }

    pub fn has_antimorphism(&self) -> bool {
        self.antimorphisms().next().is_some()
    }

    /// `G^(2)`: the involutive antimorphisms.
    pub fn involutive_antimorphisms(&self) -> Vec<&Symmetry> {
        self.elements
            .iter()
            .filter(|s| s.is_involutive_antimorphism())
            .collect()
    }

    pub fn contains(&self, sym: &Symmetry) -> bool {
        self.elements.contains(sym)
    }

    pub fn orbit(&self, w: &[Letter]) -> Result<BTreeSet<Word>> {
        self.elements
            .iter()
            .map(|g| g.apply(w))
            .collect::<Result<BTreeSet<_>>>()
    }

    /// Lexicographically smallest member of the orbit of `w`.
    pub fn canonical(&self, w: &[Letter]) -> Word {
        self.elements
            .iter()
            .map(|g| g.apply_unchecked(w))
            .min()
            .expect("group contains the identity")
    }
}

pub fn generate_group(gens: &[Symmetry]) -> Result<SymmetryGroup> {
    SymmetryGroup::generate(gens)
}

pub fn orbit(w: &[Letter], group: &SymmetryGroup) -> Result<BTreeSet<Word>> {
    group.orbit(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Kind;
    use crate::word::w;

    fn g4() -> SymmetryGroup {
        let theta = Symmetry::from_pairs(2, Kind::Antimorphism, &[(0, 1), (1, 0)]).unwrap();
        SymmetryGroup::generate(&[Symmetry::reversal(2), theta]).unwrap()
    }

    #[test]
    fn binary_group_has_four_elements() {
        let g = g4();
        assert_eq!(g.order(), 4);
        let names: Vec<String> = g.elements().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["Id", "m:0>1,1>0", "R", "a:0>1,1>0"]);
        let g2: Vec<String> = g
            .involutive_antimorphisms()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(g2, ["R", "a:0>1,1>0"]);
    }

    #[test]
    fn trivial_group() {
        let g = SymmetryGroup::generate(&[Symmetry::identity(3)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(!g.has_antimorphism());
    }

    #[test]
    fn tbm_2_4_group_has_eight_elements() {
        let gens: Vec<Symmetry> = [
            vec![0, 3, 2, 1],
            vec![1, 0, 3, 2],
            vec![2, 1, 0, 3],
            vec![3, 2, 1, 0],
        ]
        .into_iter()
        .map(|p| Symmetry::new(p, Kind::Antimorphism).unwrap())
        .collect();
        let g = SymmetryGroup::generate(&gens).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn orbits() {
        let g = g4();
        assert_eq!(
            g.orbit(&w("01")).unwrap(),
            BTreeSet::from([w("01"), w("10")])
        );
        assert_eq!(
            g.orbit(&w("0110")).unwrap(),
            BTreeSet::from([w("0110"), w("1001")])
        );
        assert_eq!(g.orbit(&w("")).unwrap().len(), 1);
        assert_eq!(g.canonical(&w("1001")), w("0110"));
    }

    #[test]
    fn table_is_closed_associative_and_graded() {
        let g = g4();
        let n = g.order();
        for i in 0..n {
            assert_eq!(g.compose_index(g.identity_index(), i), i);
            assert!((0..n).any(|j| g.compose_index(i, j) == g.identity_index()));
            for j in 0..n {
                let ij = g.compose_index(i, j);
                let same = g.elements()[i].kind() == g.elements()[j].kind();
                assert_eq!(g.elements()[ij].kind() == Kind::Morphism, same);
                for l in 0..n {
                    assert_eq!(
                        g.compose_index(ij, l),
                        g.compose_index(i, g.compose_index(j, l))
                    );
                }
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let gens = [Symmetry::new(vec![1, 2, 0], Kind::Morphism).unwrap()];
        assert!(matches!(
            SymmetryGroup::generate_bounded(&gens, 2),
            Err(Error::GroupTooLarge { limit: 2 })
        ));
        assert!(SymmetryGroup::generate(&[]).is_err());
    }
}
