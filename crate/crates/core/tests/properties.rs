use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use wordsym::factors::stabilize;
use wordsym::graph::{build_gamma, compute_n, pal_sum};
use wordsym::palindromics::{defect, defect_curve, gamma, lps, pal_complexity, richness_deficit};
use wordsym::repetitions::{find_overlaps, find_squares};
use wordsym::suffix::{Lce, SuffixArray};
use wordsym::symmetry::{is_theta_palindrome, parse_symmetries};
use wordsym::{FactorIndex, Kind, Letter, Symmetry, SymmetryGroup, ThetaPalTree, Word, WordSpec};

fn word(max_k: u8, max_len: usize) -> impl Strategy<Value = (usize, Word)> {
    (1..=max_k).prop_flat_map(move |k| {
        (
            Just(k as usize),
            prop::collection::vec(0..k, 0..=max_len).prop_map(Word::from),
        )
    })
}

fn symmetry_on(k: usize) -> impl Strategy<Value = Symmetry> {
    (
        Just((0..k as Letter).collect::<Vec<_>>()).prop_shuffle(),
        any::<bool>(),
    )
        .prop_map(|(perm, anti)| {
            let kind = if anti {
                Kind::Antimorphism
            } else {
                Kind::Morphism
            };
            Symmetry::new(perm, kind).unwrap()
        })
}

fn involutive_antimorphisms(k: usize) -> Vec<Symmetry> {
    // Involutions are products of disjoint transpositions.
    fn build(rest: &[Letter], perm: &mut Vec<Letter>, out: &mut Vec<Symmetry>) {
        let Some((&a, tail)) = rest.split_first() else {
            out.push(Symmetry::new(perm.clone(), Kind::Antimorphism).unwrap());
            return;
        };
        build(tail, perm, out);
        for (i, &b) in tail.iter().enumerate() {
            perm[a as usize] = b;
            perm[b as usize] = a;
            let remaining: Vec<Letter> = tail
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &c)| c)
                .collect();
            build(&remaining, perm, out);
            perm[a as usize] = a;
            perm[b as usize] = b;
        }
    }
    let letters: Vec<Letter> = (0..k as Letter).collect();
    let mut out = Vec::new();
    build(&letters, &mut letters.clone(), &mut out);
    out
}

fn brute_pals(w: &[Letter], theta: &Symmetry) -> usize {
    let mut set: BTreeSet<&[Letter]> = BTreeSet::from([&[][..]]);
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if theta.apply(&w[i..j]).unwrap().letters() == &w[i..j] {
                set.insert(&w[i..j]);
            }
        }
    }
    set.len()
}

fn brute_gamma(w: &[Letter], theta: &Symmetry) -> usize {
    let present: BTreeSet<Letter> = w.iter().copied().collect();
    present
        .iter()
        .map(|&a| (a, theta.map_letter(a)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect::<BTreeSet<_>>()
        .len()
}

struct Stabilized {
    name: &'static str,
    index: FactorIndex,
    group: SymmetryGroup,
}

const N_MAX: usize = 20;

fn stabilized() -> &'static [Stabilized] {
    static CELL: OnceLock<Vec<Stabilized>> = OnceLock::new();
    CELL.get_or_init(|| {
        let group = |s: &str, k| SymmetryGroup::generate(&parse_symmetries(s, k).unwrap()).unwrap();
        let words = [
            ("tm", WordSpec::thue_morse(), group("R;a:0>1,1>0", 2)),
            (
                "tbm:4,2",
                WordSpec::Tbm {
                    base: 4,
                    modulus: 2,
                },
                group("R;a:0>1,1>0", 2),
            ),
            (
                "example62",
                WordSpec::example62(),
                group("a:0>1,1>0;a:2>3,3>2", 4),
            ),
            ("fib", WordSpec::fibonacci(), group("R", 2)),
            (
                "periodic:01",
                WordSpec::Periodic("01".parse().unwrap()),
                group("R;a:0>1,1>0", 2),
            ),
            (
                "periodic:0010",
                WordSpec::Periodic("0010".parse().unwrap()),
                group("R", 2),
            ),
        ];
        words
            .into_iter()
            .map(|(name, spec, group)| Stabilized {
                name,
                index: stabilize(&spec, N_MAX + 2).unwrap(),
                group,
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn antimorphisms_reverse_concatenation(
        (sym, u, v) in (1usize..=5).prop_flat_map(|k| (
            symmetry_on(k),
            prop::collection::vec(0..k as Letter, 0..8),
            prop::collection::vec(0..k as Letter, 0..8),
        ))
    ) {
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let (iu, iv) = (sym.apply(&u).unwrap(), sym.apply(&v).unwrap());
        let expected = if sym.is_antimorphism() { iv.concat(&iu) } else { iu.concat(&iv) };
        prop_assert_eq!(sym.apply(&uv).unwrap(), expected);
    }

    #[test]
    fn composition_acts_as_function_composition(
        (a, b, w) in (1usize..=5).prop_flat_map(|k| (
            symmetry_on(k),
            symmetry_on(k),
            prop::collection::vec(0..k as Letter, 0..10),
        ))
    ) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.apply(&w).unwrap(), a.apply(&b.apply(&w).unwrap()).unwrap());
        prop_assert_eq!(ab.is_antimorphism(), a.is_antimorphism() != b.is_antimorphism());
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn grammar_round_trips(sym in (1usize..=6).prop_flat_map(symmetry_on)) {
        let text = sym.to_string();
        let parsed = parse_symmetries(&text, sym.alphabet_size()).unwrap();
        prop_assert_eq!(&parsed[0], &sym);
    }

    #[test]
    fn orbits_partition_and_divide_group_order(
        (gens, w) in (2usize..=4).prop_flat_map(|k| (
            prop::collection::vec(symmetry_on(k), 1..3),
            prop::collection::vec(0..k as Letter, 1..8),
        ))
    ) {
        let g = SymmetryGroup::generate(&gens).unwrap();
        let orbit = g.orbit(&w).unwrap();
        prop_assert_eq!(g.order() % orbit.len(), 0);
        prop_assert!(orbit.contains(&g.canonical(&w)));
        prop_assert_eq!(orbit.iter().next().unwrap(), &g.canonical(&w));
        for x in &orbit {
            prop_assert_eq!(&g.orbit(x).unwrap(), &orbit);
        }
    }

    // #Pal_Θ(w) ≤ |w| + 1 - γ_Θ(w), with the defect as the gap.
    #[test]
    fn palindrome_bound_and_defect((k, w) in word(4, 14)) {
        for theta in involutive_antimorphisms(k) {
            let pals = brute_pals(&w, &theta);
            let g = brute_gamma(&w, &theta);
            prop_assert!(pals + g <= w.len() + 1);
            prop_assert_eq!(gamma(&theta, &w).unwrap(), g);
            prop_assert_eq!(defect(&theta, &w).unwrap(), w.len() + 1 - g - pals);
        }
    }

    #[test]
    fn defect_increments_follow_longest_palindromic_suffix((k, w) in word(4, 14)) {
        for theta in involutive_antimorphisms(k) {
            let curve = defect_curve(&theta, &w).unwrap();
            for i in 0..w.len() {
                let step = curve.curve[i + 1] - curve.curve[i];
                prop_assert!(step <= 1);
                let prefix = &w[..=i];
                let suffix = lps(&theta, prefix).unwrap();
                let gamma_grew = gamma(&theta, prefix).unwrap() > gamma(&theta, &w[..i]).unwrap();
                prop_assert_eq!(step == 0, suffix.unioccurrent || gamma_grew);
                prop_assert!(is_theta_palindrome(&suffix.suffix, &theta).unwrap());
                for start in 0..prefix.len() - suffix.suffix.len() {
                    prop_assert!(!is_theta_palindrome(&prefix[start..], &theta).unwrap());
                }
            }
        }
    }

    #[test]
    fn pal_tree_pop_restores((k, w) in word(4, 14), extra in prop::collection::vec(0u8..4, 0..8)) {
        let theta = Symmetry::reversal(k);
        let mut tree = ThetaPalTree::new(&theta).unwrap();
        for &a in w.iter() {
            tree.push(a);
        }
        let before = (tree.palindrome_count(), tree.gamma(), tree.defect(), tree.longest_suffix());
        let extra: Vec<Letter> = extra.into_iter().map(|a| a % k as Letter).collect();
        for &a in &extra {
            tree.push(a);
        }
        for _ in &extra {
            tree.pop();
        }
        prop_assert_eq!((tree.palindrome_count(), tree.gamma(), tree.defect(), tree.longest_suffix()), before);
    }

    #[test]
    fn suffix_array_and_lce_match_naive((_, w) in word(3, 40)) {
        let sa = SuffixArray::new(&w);
        let mut naive: Vec<u32> = (0..w.len() as u32).collect();
        naive.sort_by(|&a, &b| w[a as usize..].cmp(&w[b as usize..]));
        prop_assert_eq!(sa.sa(), naive.as_slice());
        let lce = Lce::new(&w);
        for i in 0..w.len() {
            for j in 0..w.len() {
                let f = w[i..].iter().zip(&w[j..]).take_while(|(a, b)| a == b).count();
                prop_assert_eq!(lce.forward(i, j), f);
                let b = w[..=i].iter().rev().zip(w[..=j].iter().rev()).take_while(|(a, b)| a == b).count();
                prop_assert_eq!(lce.backward(i, j), b);
            }
        }
    }

    #[test]
    fn factor_index_matches_windows((_, w) in word(3, 40), n in 1usize..6) {
        prop_assume!(w.len() > n);
        let idx = FactorIndex::build(w.clone(), n).unwrap();
        let indexed: BTreeSet<Word> = idx.factors(n).map(|f| Word::from(f.word())).collect();
        let windows: BTreeSet<Word> = w.windows(n).map(Word::from).collect();
        prop_assert_eq!(&indexed, &windows);
        for f in idx.factors(n) {
            let occ: Vec<usize> = (0..=w.len() - n).filter(|&i| &w[i..i + n] == f.word()).collect();
            prop_assert_eq!(f.occurrences(), occ);
        }
    }

    #[test]
    fn fast_repetition_scans_match_naive((_, w) in word(3, 60)) {
        let mut overlaps = BTreeSet::new();
        let mut squares = BTreeSet::new();
        for p in 1..=w.len() / 2 {
            for i in 0..=w.len() - 2 * p {
                if w[i..i + p] == w[i + p..i + 2 * p] {
                    squares.insert(Word::from(&w[i..i + 2 * p]));
                    if i + 2 * p < w.len() && w[i + 2 * p] == w[i] {
                        overlaps.insert(Word::from(&w[i..=i + 2 * p]));
                    }
                }
            }
        }
        let first = |f: &Word| w.windows(f.len()).position(|x| x == f.letters()).unwrap();
        let found: Vec<(usize, Word)> = find_overlaps(&w, usize::MAX).iter().map(|o| (o.position, o.factor())).collect();
        let squares_found: Vec<(usize, Word)> =
            find_squares(&w, usize::MAX).iter().map(|s| (s.position, s.root.concat(&s.root))).collect();
        for (expected, found) in [(overlaps, found), (squares, squares_found)] {
            for (pos, f) in &found {
                prop_assert_eq!(*pos, first(f));
            }
            let keys: Vec<(usize, &Word)> = found.iter().map(|(_, f)| (f.len(), f)).collect();
            prop_assert!(keys.windows(2).all(|k| k[0] < k[1]));
            prop_assert_eq!(found.into_iter().map(|(_, f)| f).collect::<BTreeSet<_>>(), expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ΔC and Δ²C as sums over factors, on stabilized words.
    #[test]
    fn complexity_identities(which in 0usize..6, n in 0usize..=N_MAX) {
        let s = &stabilized()[which];
        let idx = &s.index;
        let dc = idx.delta_c(n).unwrap();
        let r: i64 = idx.factors(n).map(|f| f.rext().len() as i64 - 1).sum();
        let l: i64 = idx.factors(n).map(|f| f.lext().len() as i64 - 1).sum();
        prop_assert_eq!(dc, r, "{}", s.name);
        prop_assert_eq!(dc, l, "{}", s.name);
        let b: i64 = idx.factors(n).map(|f| idx.bilateral_order(f.word()).unwrap()).sum();
        prop_assert_eq!(idx.delta2_c(n).unwrap(), b, "{}", s.name);
    }

    // T_Θ(n) ≥ 0 under closure.
    #[test]
    fn richness_deficit_non_negative(which in 0usize..6, n in 1usize..=N_MAX) {
        let s = &stabilized()[which];
        for theta in s.group.involutive_antimorphisms() {
            prop_assert!(richness_deficit(&s.index, theta, n).unwrap() >= 0, "{} {}", s.name, theta);
            let naive = s.index.factors(n).filter(|f| theta.apply(f.word()).unwrap().letters() == f.word()).count();
            prop_assert_eq!(pal_complexity(&s.index, theta, n).unwrap(), naive);
        }
    }

    // ΔC(n) + #G ≥ R(n) for n ≥ N.
    #[test]
    fn group_inequality(which in 0usize..6, n in 1usize..=N_MAX) {
        let s = &stabilized()[which];
        let t = compute_n(&s.index, &s.group).unwrap();
        prop_assume!(t.n_allletters.is_some_and(|m| n >= m));
        let (r, _) = pal_sum(&s.index, &s.group, n).unwrap();
        prop_assert!(s.index.delta_c(n).unwrap() + s.group.order() as i64 >= r as i64, "{}", s.name);
    }

    #[test]
    fn edge_labels_are_group_invariant(which in 0usize..6, n in 1usize..=12) {
        let s = &stabilized()[which];
        let g = build_gamma(&s.index, &s.group, n).unwrap();
        let labels: BTreeSet<&Word> = g.edges.iter().map(|e| &e.label).collect();
        let special: usize = s.index.factors(n).filter(|f| f.is_special()).map(|f| f.rext().len()).sum();
        prop_assert_eq!(g.edges.len(), special);
        for e in &g.edges {
            prop_assert!(e.label.len() > n);
            for sym in s.group.elements() {
                let image = sym.apply(&e.label).unwrap();
                prop_assert!(labels.contains(&image), "{}: {} maps to {}", s.name, e.label, image);
            }
            for start in 1..e.label.len() - n {
                prop_assert!(!s.index.lookup(&e.label[start..start + n]).unwrap().is_special());
            }
        }
    }
}
