//! Right-coset transversals with a deterministic coset automaton, and the
//! action of the parent group on the coset space.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Default bound on the number of cosets a single table may enumerate.
pub const DEFAULT_INDEX_CAP: usize = 1_000_000;

/// An ordered transversal of the right cosets `H·g` of `sub` in `parent`.
///
/// Cosets are numbered from 1 in BFS discovery order, starting from the
/// identity coset; the representative of a newly discovered coset is
/// `rep(parent coset) · generator`, so `reps[1]` is the identity and every
/// representative is reproducible. The automaton maps
/// `(coset index, parent generator)` to the index of the translated coset.
pub struct RightCosetTable {
    parent: Arc<PermutationGroup>,
    sub: Arc<PermutationGroup>,
    reps: Vec<Permutation>,
    automaton: Vec<u32>,     // [idx0 * n_gens + gen] -> idx0
    automaton_inv: Vec<u32>, // reverse edges, same layout
    canon_index: HashMap<Vec<u32>, u32>,
    n_gens: usize,
}

impl RightCosetTable {
    /// Enumerates the cosets of `sub` in `parent` with the default index
    /// cap.
    pub fn build(parent: Arc<PermutationGroup>, sub: Arc<PermutationGroup>) -> Result<Self> {
        Self::build_with_cap(parent, sub, DEFAULT_INDEX_CAP)
    }

    pub fn build_with_cap(
        parent: Arc<PermutationGroup>,
        sub: Arc<PermutationGroup>,
        cap: usize,
    ) -> Result<Self> {
        if parent.degree() != sub.degree() {
            return Err(Error::DegreeMismatch(parent.degree(), sub.degree()));
        }
        for g in sub.generators() {
            if !parent.contains(g.perm()) {
                return Err(Error::NotASubgroup(g.name().to_string()));
            }
        }
        let index = parent.order() / sub.order();
        if index > BigUint::from(cap) {
            return Err(Error::IndexCapExceeded {
                index: usize::try_from(&index).unwrap_or(usize::MAX),
                cap,
            });
        }
        let expected: usize = usize::try_from(&index).expect("index fits after cap check");

        let n_gens = parent.generators().len();
        let degree = parent.degree();
        let mut reps = vec![Permutation::identity(degree)];
        let mut canon_index = HashMap::with_capacity(expected);
        canon_index.insert(
            sub.coset_canonical(&Permutation::identity(degree))
                .images()
                .to_vec(),
            0u32,
        );
        let mut automaton = Vec::with_capacity(expected * n_gens);

        let mut pos = 0;
        while pos < reps.len() {
            let rep = reps[pos].clone();
            for g in parent.generators() {
                let translated = rep.compose(g.perm());
                let key = sub.coset_canonical(&translated).images().to_vec();
                let target = match canon_index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = reps.len() as u32;
                        if reps.len() >= cap {
                            return Err(Error::IndexCapExceeded {
                                index: reps.len() + 1,
                                cap,
                            });
                        }
                        canon_index.insert(key, t);
                        reps.push(translated);
                        t
                    }
                };
                automaton.push(target);
            }
            pos += 1;
        }
        assert_eq!(
            reps.len(),
            expected,
            "coset enumeration found {} cosets, index says {}",
            reps.len(),
            expected
        );

        let mut automaton_inv = vec![0u32; automaton.len()];
        for idx in 0..reps.len() {
            for gen in 0..n_gens {
                let target = automaton[idx * n_gens + gen] as usize;
                automaton_inv[target * n_gens + gen] = idx as u32;
            }
        }

        Ok(RightCosetTable {
            parent,
            sub,
            reps,
            automaton,
            automaton_inv,
            canon_index,
            n_gens,
        })
    }

    pub fn parent(&self) -> &Arc<PermutationGroup> {
        &self.parent
    }

    pub fn sub(&self) -> &Arc<PermutationGroup> {
        &self.sub
    }

    pub fn index_count(&self) -> usize {
        self.reps.len()
    }

    /// Representative of a coset, indices starting at 1.
    pub fn rep(&self, index: u32) -> Result<&Permutation> {
        if index == 0 || index as usize > self.reps.len() {
            return Err(Error::CoordinateOutOfRange {
                level: 0,
                value: index,
                max: self.reps.len(),
            });
        }
        Ok(&self.reps[(index - 1) as usize])
    }

    /// The coset index and fixed representative of `H·g`, found by
    /// factorizing `g` over the parent's generators and tracing the word
    /// through the automaton from the identity coset.
    pub fn canonical_rep(&self, g: &Permutation) -> Result<(u32, &Permutation)> {
        let word = self.parent.factorize(g)?;
        let mut idx = 0usize;
        for letter in word.letters() {
            let gen = self
                .parent
                .generator_index(&letter.name)
                .expect("factorize yields parent generator names");
            idx = if letter.inverse {
                self.automaton_inv[idx * self.n_gens + gen] as usize
            } else {
                self.automaton[idx * self.n_gens + gen] as usize
            };
        }
        Ok((idx as u32 + 1, &self.reps[idx]))
    }

    /// Automaton step `(index, generator position)`, indices 1-based.
    pub fn step(&self, index: u32, gen: usize, inverse: bool) -> u32 {
        let idx = (index - 1) as usize;
        let next = if inverse {
            self.automaton_inv[idx * self.n_gens + gen]
        } else {
            self.automaton[idx * self.n_gens + gen]
        };
        next + 1
    }

    /// Coset index of an arbitrary parent element via canonical-form lookup.
    pub(crate) fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.canon_index
            .get(self.sub.coset_canonical(g).images())
            .map(|&i| i + 1)
    }
}

/// The (made faithful) action of the parent group on coset indices.
///
/// The image of a parent generator is read straight off the automaton
/// columns. The kernel of the action is the core of `sub` in `parent`:
/// an element is in the kernel exactly when its index image is the
/// identity.
pub struct CosetActionImage {
    table: Arc<RightCosetTable>,
    images: Vec<Permutation>, // aligned with parent generators
    order: OnceLock<BigUint>,
    image_group: OnceLock<PermutationGroup>,
}

impl CosetActionImage {
    pub fn new(table: Arc<RightCosetTable>) -> CosetActionImage {
        let count = table.index_count();
        let n_gens = table.n_gens;
        let images = (0..n_gens)
            .map(|gen| {
                let images: Vec<u32> = (0..count)
                    .map(|idx| table.automaton[idx * n_gens + gen])
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        CosetActionImage {
            table,
            images,
            order: OnceLock::new(),
            image_group: OnceLock::new(),
        }
    }

    pub fn table(&self) -> &Arc<RightCosetTable> {
        &self.table
    }

    /// Index permutations of the parent generators, in declaration order.
    pub fn images(&self) -> impl Iterator<Item = (&str, &Permutation)> {
        self.table
            .parent
            .generators()
            .iter()
            .map(|g| g.name())
            .zip(self.images.iter())
    }

    /// The index permutation induced by an arbitrary parent element.
    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let word = self.table.parent.factorize(g)?;
        let mut acc = Permutation::identity(self.table.index_count());
        for letter in word.letters() {
            let gen = self
                .table
                .parent
                .generator_index(&letter.name)
                .expect("factorize yields parent generator names");
            acc = if letter.inverse {
                acc.compose(&self.images[gen].inverse())
            } else {
                acc.compose(&self.images[gen])
            };
        }
        Ok(acc)
    }

    pub fn is_in_kernel(&self, g: &Permutation) -> Result<bool> {
        Ok(self.image_of(g)?.is_identity())
    }

    /// Exact order of the image group, via `|image| = index count × |image
    /// of the subgroup|`; the subgroup's image is the stabilizer of the
    /// identity coset. Avoids running Schreier-Sims on the full coset
    /// degree.
    pub fn order(&self) -> &BigUint {
        self.order.get_or_init(|| {
            let sub_images: Vec<Permutation> = self
                .table
                .sub
                .generators()
                .iter()
                .map(|h| {
                    let images: Vec<u32> = self
                        .table
                        .reps
                        .iter()
                        .map(|rep| {
                            let moved = rep.compose(h.perm());
                            self.table
                                .index_of(&moved)
                                .expect("coset translate stays in the table")
                                - 1
                        })
                        .collect();
                    Permutation::from_images_unchecked(images)
                })
                .collect();
            let sub_image_group =
                PermutationGroup::from_schreier_generators(sub_images, self.table.index_count())
                    .expect("image group builds");
            BigUint::from(self.table.index_count()) * sub_image_group.order()
        })
    }

    /// The image as a standalone permutation group on the coset indices.
    /// Built on first use; expensive when the index count is large — prefer
    /// [`CosetActionImage::order`] for size queries.
    pub fn image_group(&self) -> &PermutationGroup {
        self.image_group.get_or_init(|| {
            let gens: Vec<crate::group::NamedGenerator> = self
                .table
                .parent
                .generators()
                .iter()
                .zip(self.images.iter())
                .map(|(g, p)| crate::group::NamedGenerator::new(g.name(), p.clone()))
                .collect::<Result<Vec<_>>>()
                .expect("parent names stay valid");
            if gens.is_empty() {
                PermutationGroup::trivial(self.table.index_count())
            } else {
                PermutationGroup::from_generators(gens, self.table.index_count())
                    .expect("image group builds")
            }
        })
    }
}
