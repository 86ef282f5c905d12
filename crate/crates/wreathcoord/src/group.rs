//! Permutation groups with a base and strong generating set.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::bsgs::StabChain;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};
use crate::word::{Letter, Word};

const FORBIDDEN_NAME_CHARS: &[char] = &['(', ')', ',', '\'', '^', '*', ';', '#'];

/// A generator with the name it goes by in words.
#[derive(Clone, Debug)]
pub struct NamedGenerator {
    name: Arc<str>,
    perm: Permutation,
}

impl NamedGenerator {
    pub fn new(name: &str, perm: Permutation) -> Result<NamedGenerator> {
        if name.is_empty()
            || name.chars().any(char::is_whitespace)
            || name.contains(FORBIDDEN_NAME_CHARS)
        {
            return Err(Error::InvalidGeneratorName(name.to_string()));
        }
        Ok(NamedGenerator {
            name: Arc::from(name),
            perm,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn name_arc(&self) -> Arc<str> {
        self.name.clone()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }
}

/// A permutation group built from named generators.
///
/// Construction runs a deterministic Schreier-Sims, after which order,
/// membership, factorization and stabilizer queries are exact. Groups are
/// immutable once built; all queries are read-only.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    gens: Vec<NamedGenerator>,
    gen_inverses: Vec<Permutation>,
    name_index: HashMap<Arc<str>, usize>,
    chain: Arc<StabChain>,
}

impl PermutationGroup {
    /// Builds the group generated by `gens`. Base points are chosen as the
    /// smallest point moved by the remaining generators, so the whole
    /// structure is reproducible for a fixed generator list.
    pub fn from_generators(gens: Vec<NamedGenerator>, degree: usize) -> Result<PermutationGroup> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        Self::from_parts(gens, degree, &[])
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> PermutationGroup {
        Self::from_parts(Vec::new(), degree, &[]).expect("trivial group always builds")
    }

    fn from_parts(
        gens: Vec<NamedGenerator>,
        degree: usize,
        base_hints: &[u32],
    ) -> Result<PermutationGroup> {
        let mut name_index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.perm.degree() != degree {
                return Err(Error::DegreeMismatch(g.perm.degree(), degree));
            }
            if name_index.insert(g.name_arc(), i).is_some() {
                return Err(Error::DuplicateGeneratorName(g.name().to_string()));
            }
        }
        let perms: Vec<Permutation> = gens.iter().map(|g| g.perm.clone()).collect();
        let chain = StabChain::build(&perms, base_hints, degree);
        let gen_inverses = gens.iter().map(|g| g.perm.inverse()).collect();
        Ok(PermutationGroup {
            degree,
            gens,
            gen_inverses,
            name_index,
            chain: Arc::new(chain),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[NamedGenerator] {
        &self.gens
    }

    pub fn generator(&self, name: &str) -> Option<&NamedGenerator> {
        self.name_index.get(name).map(|&i| &self.gens[i])
    }

    /// Position of a generator in declaration order.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    /// Exact group order.
    pub fn order(&self) -> &BigUint {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == &BigUint::from(1u8)
    }

    /// True iff all generator pairs commute.
    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| a.perm.compose(&b.perm) == b.perm.compose(&a.perm))
        })
    }

    /// The base of the stabilizer chain.
    pub fn base(&self) -> Vec<Point> {
        self.chain
            .base()
            .iter()
            .map(|&b| Point::from_index(b as usize))
            .collect()
    }

    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.chain.fundamental_orbit_lengths()
    }

    /// True iff `p` is a product of the generators. Panics on degree
    /// mismatch.
    pub fn contains(&self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch in membership");
        self.chain.contains(p)
    }

    /// Expresses a group member as a word over the named generators.
    ///
    /// A member that is itself a generator (or a generator inverse) comes
    /// back as the single-letter word; everything else goes through
    /// transversal sifting. Words are free-reduced but not short.
    pub fn factorize(&self, p: &Permutation) -> Result<Word> {
        assert_eq!(p.degree(), self.degree, "degree mismatch in factorization");
        if p.is_identity() {
            return Ok(Word::empty());
        }
        for (i, g) in self.gens.iter().enumerate() {
            if &g.perm == p {
                let mut w = Word::empty();
                w.push(Letter::new(g.name_arc(), false));
                return Ok(w);
            }
            if &self.gen_inverses[i] == p {
                let mut w = Word::empty();
                w.push(Letter::new(g.name_arc(), true));
                return Ok(w);
            }
        }
        let letters = self.chain.factorize_letters(p).ok_or(Error::NotInGroup)?;
        let mut w = Word::empty();
        for (gi, inv) in letters {
            w.push(Letter::new(self.gens[gi as usize].name_arc(), inv));
        }
        Ok(w)
    }

    /// Left-to-right product of the named generators in `w`.
    pub fn evaluate_word(&self, w: &Word) -> Result<Permutation> {
        let mut acc = Permutation::identity(self.degree);
        for letter in w.letters() {
            let &i = self
                .name_index
                .get(&letter.name)
                .ok_or_else(|| Error::UnknownGenerator(letter.name.to_string()))?;
            acc = if letter.inverse {
                acc.compose(&self.gen_inverses[i])
            } else {
                acc.compose(&self.gens[i].perm)
            };
        }
        Ok(acc)
    }

    /// The subgroup fixing every point of `pts`, generated by the sifted
    /// Schreier generators of a chain whose base starts with `pts`.
    pub fn pointwise_stabilizer(&self, pts: &[Point]) -> Result<PermutationGroup> {
        if pts.is_empty() {
            return Ok(self.clone());
        }
        for p in pts {
            if p.index() >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p.value(),
                    degree: self.degree,
                });
            }
        }
        let hints: Vec<u32> = pts.iter().map(|p| p.index() as u32).collect();
        let perms: Vec<Permutation> = self.gens.iter().map(|g| g.perm.clone()).collect();
        let aux = StabChain::build(&perms, &hints, self.degree);
        let stab_gens = aux.strong_gens_fixing(&hints);
        Self::from_schreier_generators(stab_gens, self.degree)
    }

    /// Wraps machine-found generators (auto-named `s1`, `s2`, ...) into a
    /// group; empty input yields the trivial group.
    pub(crate) fn from_schreier_generators(
        perms: Vec<Permutation>,
        degree: usize,
    ) -> Result<PermutationGroup> {
        if perms.is_empty() {
            return Ok(PermutationGroup::trivial(degree));
        }
        let gens = perms
            .into_iter()
            .enumerate()
            .map(|(i, p)| NamedGenerator::new(&format!("s{}", i + 1), p))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(gens, degree, &[])
    }

    /// A deterministic pseudo-random element: the product of a fixed-length
    /// seeded random word over the generators and their inverses. Membership
    /// is guaranteed by construction; the distribution is not uniform.
    pub fn random_element(&self, seed: u64) -> Permutation {
        if self.gens.is_empty() {
            return Permutation::identity(self.degree);
        }
        let mut rng = SplitMix64::new(seed);
        let mut acc = Permutation::identity(self.degree);
        for _ in 0..96 {
            let r = rng.next() as usize;
            let i = r % self.gens.len();
            let inverse = (r / self.gens.len()) % 2 == 1;
            acc = if inverse {
                acc.compose(&self.gen_inverses[i])
            } else {
                acc.compose(&self.gens[i].perm)
            };
        }
        acc
    }

    /// Orbits of the natural action, sorted by smallest point; fixed points
    /// appear as singletons.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start as u32];
            seen[start] = true;
            let mut pos = 0;
            while pos < orbit.len() {
                let x = orbit[pos] as usize;
                pos += 1;
                for g in &self.gens {
                    let y = g.perm.image_of_index(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y as u32);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(
                orbit
                    .iter()
                    .map(|&x| Point::from_index(x as usize))
                    .collect(),
            );
        }
        orbits
    }

    /// The orbit of a single point, sorted.
    pub fn orbit_of(&self, p: Point) -> Result<Vec<Point>> {
        if p.index() >= self.degree {
            return Err(Error::PointOutOfRange {
                point: p.value(),
                degree: self.degree,
            });
        }
        Ok(self
            .orbits()
            .into_iter()
            .find(|orbit| orbit.contains(&p))
            .expect("every point lies in an orbit"))
    }

    pub(crate) fn coset_canonical(&self, g: &Permutation) -> Permutation {
        self.chain.coset_canonical(g)
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermutationGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order(),
            self.gens.len()
        )
    }
}

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn named(name: &str, cycles: &str, degree: usize) -> NamedGenerator {
        NamedGenerator::new(name, Permutation::parse_cycles(cycles, degree).unwrap()).unwrap()
    }

    fn s4() -> PermutationGroup {
        PermutationGroup::from_generators(
            vec![named("a", "(1,2)", 4), named("b", "(1,2,3,4)", 4)],
            4,
        )
        .unwrap()
    }

    #[test]
    fn builds_small_groups() {
        let c3 = PermutationGroup::from_generators(vec![named("r", "(1,2,3)", 3)], 3).unwrap();
        assert_eq!(c3.order(), &BigUint::from(3u8));
        assert_eq!(s4().order(), &BigUint::from(24u8));

        let t = PermutationGroup::from_generators(vec![named("e", "()", 3)], 3).unwrap();
        assert_eq!(t.order(), &BigUint::from(1u8));
        assert!(t.is_trivial());
    }

    #[test]
    fn rejects_bad_generator_lists() {
        assert!(PermutationGroup::from_generators(vec![], 3).is_err());
        let err = PermutationGroup::from_generators(
            vec![named("a", "(1,2)", 4), named("b", "(1,2)", 3)],
            4,
        );
        assert!(matches!(err, Err(Error::DegreeMismatch(3, 4))));
        let err = PermutationGroup::from_generators(
            vec![named("a", "(1,2)", 4), named("a", "(1,3)", 4)],
            4,
        );
        assert!(matches!(err, Err(Error::DuplicateGeneratorName(_))));
        assert!(NamedGenerator::new("", Permutation::identity(3)).is_err());
        assert!(NamedGenerator::new("a b", Permutation::identity(3)).is_err());
        assert!(NamedGenerator::new("a'", Permutation::identity(3)).is_err());
    }

    #[test]
    fn membership_and_factorization() {
        let g = s4();
        let p = Permutation::parse_cycles("(1,3)(2,4)", 4).unwrap();
        assert!(g.contains(&p));
        let w = g.factorize(&p).unwrap();
        assert_eq!(g.evaluate_word(&w).unwrap(), p);

        // generator lookup short-circuits sifting
        let w = g
            .factorize(&Permutation::parse_cycles("(1,2)", 4).unwrap())
            .unwrap();
        assert_eq!(w.to_string(), "a");
        let w = g
            .factorize(&Permutation::parse_cycles("(1,4,3,2)", 4).unwrap())
            .unwrap();
        assert_eq!(w.to_string(), "b'");
        assert!(g.factorize(&Permutation::identity(4)).unwrap().is_empty());

        let odd_outsider = Permutation::parse_cycles("(1,2,3)", 3).unwrap();
        let c3 = PermutationGroup::from_generators(vec![named("r", "(1,2,3)", 3)], 3).unwrap();
        assert!(c3
            .factorize(&Permutation::parse_cycles("(1,2)", 3).unwrap())
            .is_err());
        assert!(c3.contains(&odd_outsider));
    }

    #[test]
    fn evaluate_word_basics() {
        let g = s4();
        assert!(g.evaluate_word(&Word::empty()).unwrap().is_identity());
        let w = Word::parse("b b b b").unwrap();
        assert!(g.evaluate_word(&w).unwrap().is_identity());
        assert!(g
            .evaluate_word(&Word::parse("a a'").unwrap())
            .unwrap()
            .is_identity());
        assert!(g.evaluate_word(&Word::parse("x").unwrap()).is_err());
    }

    #[test]
    fn pointwise_stabilizers() {
        let g = s4();
        let same = g.pointwise_stabilizer(&[]).unwrap();
        assert_eq!(same.order(), g.order());

        let stab3 = g
            .pointwise_stabilizer(&[Point::new(1), Point::new(2), Point::new(3)])
            .unwrap();
        assert!(stab3.is_trivial());

        // orbit-stabilizer law at every point
        for x in 1..=4u32 {
            let stab = g.pointwise_stabilizer(&[Point::new(x)]).unwrap();
            let orbit = g.orbit_of(Point::new(x)).unwrap();
            assert_eq!(BigUint::from(orbit.len()) * stab.order(), g.order().clone());
        }
    }

    #[test]
    fn random_elements_are_members_and_deterministic() {
        let g = s4();
        for seed in 0..20 {
            let p = g.random_element(seed);
            assert!(g.contains(&p));
            assert_eq!(p, g.random_element(seed));
        }
        let t = PermutationGroup::trivial(4);
        assert!(t.random_element(7).is_identity());
    }

    #[test]
    fn orbit_structure() {
        // intransitive: S3 x C2 on 5 points
        let g = PermutationGroup::from_generators(
            vec![
                named("a", "(1,2)", 5),
                named("b", "(1,2,3)", 5),
                named("c", "(4,5)", 5),
            ],
            5,
        )
        .unwrap();
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].len(), 3);
        assert_eq!(orbits[1].len(), 2);
        assert_eq!(g.order(), &BigUint::from(12u8));
    }
}
