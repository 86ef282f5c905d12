//! Shared fixtures: a corpus of small groups plus brute-force oracles that
//! stay independent of the stabilizer-chain machinery under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use wreathcoord::{NamedGenerator, Permutation, PermutationGroup};

pub fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(text, degree).unwrap()
}

pub fn named(name: &str, text: &str, degree: usize) -> NamedGenerator {
    NamedGenerator::new(name, perm(text, degree)).unwrap()
}

pub fn group(gens: &[(&str, &str)], degree: usize) -> PermutationGroup {
    let gens = gens
        .iter()
        .map(|(n, c)| named(n, c, degree))
        .collect::<Vec<_>>();
    PermutationGroup::from_generators(gens, degree).unwrap()
}

/// Brute-force closure of a generating set: plain BFS over composition,
/// no stabilizer chains involved.
pub fn enumerate(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(element_key(&elements[0]));
    let mut pos = 0;
    while pos < elements.len() {
        let e = elements[pos].clone();
        pos += 1;
        for g in gens {
            let f = e.compose(g);
            if seen.insert(element_key(&f)) {
                elements.push(f);
            }
        }
    }
    elements
}

pub fn enumerate_group(g: &PermutationGroup) -> Vec<Permutation> {
    let gens: Vec<Permutation> = g.generators().iter().map(|x| x.perm().clone()).collect();
    enumerate(&gens, g.degree())
}

/// Small named groups of order up to 5040, mixing transitive, intransitive,
/// abelian, simple and solvable cases.
pub fn corpus() -> Vec<(&'static str, PermutationGroup)> {
    vec![
        ("trivial", group(&[("e", "()")], 3)),
        ("c2", group(&[("a", "(1,2)")], 2)),
        ("c3", group(&[("a", "(1,2,3)")], 3)),
        ("c4", group(&[("r", "(1,2,3,4)")], 4)),
        ("c6", group(&[("r", "(1,2,3,4,5,6)")], 6)),
        (
            "c13",
            group(&[("r", "(1,2,3,4,5,6,7,8,9,10,11,12,13)")], 13),
        ),
        ("v4", group(&[("a", "(1,2)(3,4)"), ("b", "(1,3)(2,4)")], 4)),
        ("s3", group(&[("t", "(1,2)"), ("r", "(1,2,3)")], 3)),
        ("d4", group(&[("r", "(1,2,3,4)"), ("f", "(1,3)")], 4)),
        (
            "q8",
            group(
                &[("i", "(1,3,2,4)(5,8,6,7)"), ("j", "(1,5,2,6)(3,7,4,8)")],
                8,
            ),
        ),
        (
            "d6",
            group(&[("r", "(1,2,3,4,5,6)"), ("f", "(1,6)(2,5)(3,4)")], 6),
        ),
        ("c2xc4", group(&[("a", "(1,2)"), ("b", "(3,4,5,6)")], 6)),
        ("a4", group(&[("x", "(1,2,3)"), ("y", "(2,3,4)")], 4)),
        (
            "s3xc2",
            group(&[("a", "(1,2)"), ("b", "(1,2,3)"), ("c", "(4,5)")], 5),
        ),
        ("f20", group(&[("a", "(1,2,3,4,5)"), ("b", "(2,3,5,4)")], 5)),
        ("s4", group(&[("a", "(1,2)"), ("b", "(1,2,3,4)")], 4)),
        ("a5", group(&[("a", "(1,2,3,4,5)"), ("b", "(3,4,5)")], 5)),
        ("s5", group(&[("a", "(1,2)"), ("b", "(1,2,3,4,5)")], 5)),
        (
            "psl27",
            group(&[("a", "(1,2,4,3,6,7,5)"), ("b", "(4,5)(6,7)")], 7),
        ),
        (
            "a6",
            group(&[("a", "(1,2,3,4,5)"), ("b", "(2,3,4,5,6)")], 6),
        ),
        ("s6", group(&[("a", "(1,2)"), ("b", "(1,2,3,4,5,6)")], 6)),
        ("s7", group(&[("a", "(1,2)"), ("b", "(1,2,3,4,5,6,7)")], 7)),
    ]
}

/// Corpus entries of order at most `max`.
pub fn corpus_up_to(max: u64) -> Vec<(&'static str, PermutationGroup)> {
    corpus()
        .into_iter()
        .filter(|(_, g)| g.order() <= &num_bigint::BigUint::from(max))
        .collect()
}

fn element_key(p: &Permutation) -> Vec<u32> {
    (1..=p.degree() as u32)
        .map(|x| p.apply(wreathcoord::Point::new(x)).unwrap().value())
        .collect()
}

fn subgroup_key(elements: &[Permutation]) -> BTreeSet<Vec<u32>> {
    elements.iter().map(element_key).collect()
}

/// All subgroups of a small group, found by closing the set of cyclic
/// subgroups under pairwise joins. Feasible up to order ~200.
pub fn all_subgroups(elements: &[Permutation], degree: usize) -> Vec<Vec<Permutation>> {
    use std::collections::HashMap;
    // subgroup key -> small generating list
    let mut subs: HashMap<BTreeSet<Vec<u32>>, Vec<Permutation>> = HashMap::new();
    let identity = Permutation::identity(degree);
    subs.insert(subgroup_key(std::slice::from_ref(&identity)), vec![]);
    for e in elements {
        let closure = enumerate(std::slice::from_ref(e), degree);
        subs.entry(subgroup_key(&closure))
            .or_insert_with(|| vec![e.clone()]);
    }
    loop {
        let current: Vec<Vec<Permutation>> = subs.values().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let mut gens = current[i].clone();
                gens.extend(current[j].iter().cloned());
                if gens.is_empty() {
                    continue;
                }
                let closure = enumerate(&gens, degree);
                if let std::collections::hash_map::Entry::Vacant(entry) =
                    subs.entry(subgroup_key(&closure))
                {
                    entry.insert(gens);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    subs.into_values()
        .map(|gens| {
            if gens.is_empty() {
                vec![identity.clone()]
            } else {
                enumerate(&gens, degree)
            }
        })
        .collect()
}

/// The core of `H` in `G` by definition: elements of `H` all of whose
/// conjugates stay in `H`.
pub fn brute_core(g_elements: &[Permutation], h_elements: &[Permutation]) -> Vec<Permutation> {
    let h_keys: HashSet<Vec<u32>> = h_elements.iter().map(element_key).collect();
    h_elements
        .iter()
        .filter(|k| {
            g_elements.iter().all(|x| {
                let conj = x.inverse().compose(k).compose(x);
                h_keys.contains(&element_key(&conj))
            })
        })
        .cloned()
        .collect()
}

/// All partitions of `{1..n}` (for tiny n), used to brute-force minimal
/// block systems.
pub fn all_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(n: usize, next: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next == n {
            out.push(current.clone());
            return;
        }
        for i in 0..current.len() {
            current[i].push(next);
            go(n, next + 1, current, out);
            current[i].pop();
        }
        current.push(vec![next]);
        go(n, next + 1, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks that a word is free-reduced: no adjacent letter undoes its
/// predecessor.
pub fn assert_free_reduced(w: &wreathcoord::Word) {
    for pair in w.letters().windows(2) {
        assert!(
            !(pair[0].name == pair[1].name && pair[0].inverse != pair[1].inverse),
            "word is not free-reduced around {} {}",
            pair[0].name,
            pair[1].name
        );
    }
}
