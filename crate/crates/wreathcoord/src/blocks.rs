//! Block systems (systems of imprimitivity) and actions induced on them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{NamedGenerator, PermutationGroup};
use crate::perm::{Permutation, Point};

/// A partition of one orbit into blocks permuted setwise by the group.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    blocks: Vec<Vec<Point>>,
    block_of: HashMap<u32, usize>, // 0-based point index -> block id
}

impl BlockSystem {
    fn from_classes(mut blocks: Vec<Vec<Point>>) -> BlockSystem {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = HashMap::new();
        for (id, block) in blocks.iter().enumerate() {
            for p in block {
                block_of.insert(p.index() as u32, id);
            }
        }
        BlockSystem { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    /// Block id containing a point, if the point lies in the partitioned
    /// orbit.
    pub fn block_containing(&self, p: Point) -> Option<usize> {
        self.block_of.get(&(p.index() as u32)).copied()
    }

    /// Whether every generator maps every block onto a block.
    pub fn is_invariant_under(&self, group: &PermutationGroup) -> bool {
        self.generator_images(group).is_ok()
    }

    fn generator_images(&self, group: &PermutationGroup) -> Result<Vec<Permutation>> {
        let nblocks = self.blocks.len();
        let mut images = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            let mut image = vec![u32::MAX; nblocks];
            for (id, block) in self.blocks.iter().enumerate() {
                let mut mapped: Vec<u32> = block
                    .iter()
                    .map(|p| g.perm().image_of_index(p.index()) as u32)
                    .collect();
                mapped.sort_unstable();
                let target = match self.block_of.get(&mapped[0]) {
                    Some(&t) => t,
                    None => return Err(Error::PartitionNotInvariant),
                };
                let target_points: Vec<u32> = self.blocks[target]
                    .iter()
                    .map(|p| p.index() as u32)
                    .collect();
                if mapped != target_points {
                    return Err(Error::PartitionNotInvariant);
                }
                image[id] = target as u32;
            }
            images.push(Permutation::from_images_unchecked(image));
        }
        Ok(images)
    }
}

/// The action of a group on the blocks of an invariant partition, with its
/// exact kernel.
pub struct InducedAction {
    system: BlockSystem,
    images: Vec<(NamedGenerator, Permutation)>,
    image_group: PermutationGroup,
    kernel: PermutationGroup,
    // group data needed for setwise-stabilizer preimages
    parent_gens: Vec<NamedGenerator>,
    parent_degree: usize,
}

impl InducedAction {
    pub fn system(&self) -> &BlockSystem {
        &self.system
    }

    /// Per original generator, its permutation of block ids.
    pub fn images(&self) -> impl Iterator<Item = (&NamedGenerator, &Permutation)> {
        self.images.iter().map(|(g, p)| (g, p))
    }

    /// The group generated by the block-id images.
    pub fn image_group(&self) -> &PermutationGroup {
        &self.image_group
    }

    /// Elements fixing every block setwise.
    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    /// The setwise stabilizer of one block in the parent group, i.e. the
    /// preimage of the block's point stabilizer in the induced action.
    pub fn preimage_stabilizer(&self, block_id: usize) -> Result<PermutationGroup> {
        assert!(block_id < self.system.len(), "block id out of range");
        stabilize_aug_points(
            &self.parent_gens,
            self.parent_degree,
            &block_sets(&self.system),
            &[block_id],
        )
    }
}

fn block_sets(system: &BlockSystem) -> Vec<Vec<u32>> {
    system
        .blocks()
        .iter()
        .map(|b| b.iter().map(|p| p.index() as u32).collect())
        .collect()
}

/// Extends each generator to act on `degree + sets.len()` points, the extra
/// points tracking how the sets move, then takes the pointwise stabilizer of
/// the selected set-points and restricts back to the original degree.
fn stabilize_aug_points(
    gens: &[NamedGenerator],
    degree: usize,
    sets: &[Vec<u32>],
    fixed_set_ids: &[usize],
) -> Result<PermutationGroup> {
    if gens.is_empty() {
        return Ok(PermutationGroup::trivial(degree));
    }
    let mut set_index: HashMap<Vec<u32>, usize> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        let mut key = s.clone();
        key.sort_unstable();
        set_index.insert(key, i);
    }

    let aug_degree = degree + sets.len();
    let mut aug_gens = Vec::with_capacity(gens.len());
    for g in gens {
        let mut images: Vec<u32> = (0..aug_degree as u32).collect();
        for (i, &img) in g.perm().images().iter().enumerate() {
            images[i] = img;
        }
        for (i, s) in sets.iter().enumerate() {
            let mut mapped: Vec<u32> = s
                .iter()
                .map(|&p| g.perm().image_of_index(p as usize) as u32)
                .collect();
            mapped.sort_unstable();
            let target = set_index.get(&mapped).ok_or(Error::PartitionNotInvariant)?;
            images[degree + i] = (degree + target) as u32;
        }
        aug_gens.push(NamedGenerator::new(
            g.name(),
            Permutation::from_images_unchecked(images),
        )?);
    }

    let aug_group = PermutationGroup::from_generators(aug_gens, aug_degree)?;
    let aug_points: Vec<Point> = fixed_set_ids
        .iter()
        .map(|&i| Point::from_index(degree + i))
        .collect();
    let aug_stab = aug_group.pointwise_stabilizer(&aug_points)?;

    let restricted: Vec<Permutation> = aug_stab
        .generators()
        .iter()
        .map(|g| Permutation::from_images_unchecked(g.perm().images()[..degree].to_vec()))
        .collect();
    PermutationGroup::from_schreier_generators(restricted, degree)
}

impl PermutationGroup {
    /// The minimal nontrivial block system whose blocks contain the seed
    /// pair, over the orbit of the seed points. For a primitive action this
    /// degenerates to the single full-orbit block.
    pub fn minimal_blocks(&self, seed: (Point, Point)) -> Result<BlockSystem> {
        let (a, b) = seed;
        for p in [a, b] {
            if p.index() >= self.degree() {
                return Err(Error::PointOutOfRange {
                    point: p.value(),
                    degree: self.degree(),
                });
            }
        }
        let orbit = self.orbit_of(a)?;
        if !orbit.contains(&b) {
            return Err(Error::SeedsInDifferentOrbits(a.value(), b.value()));
        }

        // classic minimal-block closure: whenever two points merge, merge
        // their generator images too
        let mut uf = UnionFind::new(self.degree());
        uf.union(a.index(), b.index());
        let mut agenda = vec![(a.index(), b.index())];
        while let Some((x, y)) = agenda.pop() {
            for g in self.generators() {
                let gx = g.perm().image_of_index(x);
                let gy = g.perm().image_of_index(y);
                if uf.union(gx, gy) {
                    agenda.push((gx, gy));
                }
            }
        }

        let mut classes: HashMap<usize, Vec<Point>> = HashMap::new();
        for p in &orbit {
            classes.entry(uf.find(p.index())).or_default().push(*p);
        }
        let blocks: Vec<Vec<Point>> = classes.into_values().collect();
        let system = BlockSystem::from_classes(blocks);
        debug_assert!(system
            .blocks()
            .iter()
            .all(|b| b.len() == system.block_size()));
        Ok(system)
    }

    /// The action induced on the blocks of an invariant partition, with the
    /// exact kernel of that action.
    pub fn induced_action(&self, system: &BlockSystem) -> Result<InducedAction> {
        let image_perms = system.generator_images(self)?;
        let nblocks = system.len();

        let named_images: Vec<NamedGenerator> = self
            .generators()
            .iter()
            .zip(&image_perms)
            .map(|(g, p)| NamedGenerator::new(g.name(), p.clone()))
            .collect::<Result<Vec<_>>>()?;
        let image_group = if named_images.is_empty() {
            PermutationGroup::trivial(nblocks)
        } else {
            PermutationGroup::from_generators(named_images, nblocks)?
        };

        let all_ids: Vec<usize> = (0..nblocks).collect();
        let kernel = stabilize_aug_points(
            self.generators(),
            self.degree(),
            &block_sets(system),
            &all_ids,
        )?;

        Ok(InducedAction {
            system: system.clone(),
            images: self.generators().iter().cloned().zip(image_perms).collect(),
            image_group,
            kernel,
            parent_gens: self.generators().to_vec(),
            parent_degree: self.degree(),
        })
    }

    /// The setwise stabilizer of an arbitrary point set, computed through
    /// the action on the set's orbit. Fails if that orbit exceeds the cap
    /// of 100000 sets.
    pub fn setwise_stabilizer(&self, set: &[Point]) -> Result<PermutationGroup> {
        const SET_ORBIT_CAP: usize = 100_000;
        let mut start: Vec<u32> = set.iter().map(|p| p.index() as u32).collect();
        for p in set {
            if p.index() >= self.degree() {
                return Err(Error::PointOutOfRange {
                    point: p.value(),
                    degree: self.degree(),
                });
            }
        }
        start.sort_unstable();
        start.dedup();

        let mut sets = vec![start.clone()];
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        seen.insert(start, 0);
        let mut pos = 0;
        while pos < sets.len() {
            let current = sets[pos].clone();
            pos += 1;
            for g in self.generators() {
                let mut mapped: Vec<u32> = current
                    .iter()
                    .map(|&p| g.perm().image_of_index(p as usize) as u32)
                    .collect();
                mapped.sort_unstable();
                if !seen.contains_key(&mapped) {
                    if sets.len() >= SET_ORBIT_CAP {
                        return Err(Error::SetOrbitTooLarge { cap: SET_ORBIT_CAP });
                    }
                    seen.insert(mapped.clone(), sets.len());
                    sets.push(mapped);
                }
            }
        }
        stabilize_aug_points(self.generators(), self.degree(), &sets, &[0])
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct before the call.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        // smaller root wins, for reproducible class representatives
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn named(name: &str, cycles: &str, degree: usize) -> NamedGenerator {
        NamedGenerator::new(name, Permutation::parse_cycles(cycles, degree).unwrap()).unwrap()
    }

    fn c4() -> PermutationGroup {
        PermutationGroup::from_generators(vec![named("r", "(1,2,3,4)", 4)], 4).unwrap()
    }

    fn s4() -> PermutationGroup {
        PermutationGroup::from_generators(
            vec![named("a", "(1,2)", 4), named("b", "(1,2,3,4)", 4)],
            4,
        )
        .unwrap()
    }

    #[test]
    fn c4_minimal_blocks() {
        let system = c4().minimal_blocks((Point::new(1), Point::new(3))).unwrap();
        assert_eq!(system.len(), 2);
        assert_eq!(system.blocks()[0], vec![Point::new(1), Point::new(3)]);
        assert_eq!(system.blocks()[1], vec![Point::new(2), Point::new(4)]);
    }

    #[test]
    fn primitive_group_yields_full_block() {
        let system = s4().minimal_blocks((Point::new(1), Point::new(2))).unwrap();
        assert_eq!(system.len(), 1);
        assert_eq!(system.block_size(), 4);
    }

    #[test]
    fn different_orbits_rejected() {
        let g = PermutationGroup::from_generators(
            vec![named("a", "(1,2,3)", 5), named("c", "(4,5)", 5)],
            5,
        )
        .unwrap();
        assert!(matches!(
            g.minimal_blocks((Point::new(1), Point::new(4))),
            Err(Error::SeedsInDifferentOrbits(1, 4))
        ));
    }

    #[test]
    fn c4_induced_action_orders() {
        let g = c4();
        let system = g.minimal_blocks((Point::new(1), Point::new(3))).unwrap();
        let action = g.induced_action(&system).unwrap();
        assert_eq!(action.image_group().order(), &BigUint::from(2u8));
        assert_eq!(action.kernel().order(), &BigUint::from(2u8));
        // kernel elements fix every block setwise
        for k in action.kernel().generators() {
            for block in system.blocks() {
                let mut mapped: Vec<Point> =
                    block.iter().map(|p| k.perm().apply(*p).unwrap()).collect();
                mapped.sort_unstable();
                assert_eq!(&mapped, block);
            }
        }
    }

    #[test]
    fn trivial_group_induced_action() {
        let t = PermutationGroup::trivial(4);
        let system = c4().minimal_blocks((Point::new(1), Point::new(3))).unwrap();
        let action = t.induced_action(&system).unwrap();
        assert!(action.image_group().is_trivial());
        assert!(action.kernel().is_trivial());
    }

    #[test]
    fn invariance_is_checked() {
        let system = c4().minimal_blocks((Point::new(1), Point::new(3))).unwrap();
        let bad = PermutationGroup::from_generators(vec![named("t", "(1,2)", 4)], 4).unwrap();
        assert!(matches!(
            bad.induced_action(&system),
            Err(Error::PartitionNotInvariant)
        ));
        assert!(!system.is_invariant_under(&bad));
        assert!(system.is_invariant_under(&c4()));
    }

    #[test]
    fn setwise_stabilizer_of_a_pair_in_s4() {
        let g = s4();
        let stab = g
            .setwise_stabilizer(&[Point::new(1), Point::new(2)])
            .unwrap();
        // {id, (12), (34), (12)(34)}
        assert_eq!(stab.order(), &BigUint::from(4u8));
        let swap = Permutation::parse_cycles("(1,2)", 4).unwrap();
        assert!(stab.contains(&swap));
        let breaking = Permutation::parse_cycles("(2,3)", 4).unwrap();
        assert!(!stab.contains(&breaking));
    }

    #[test]
    fn preimage_stabilizer_contains_kernel() {
        let g = c4();
        let system = g.minimal_blocks((Point::new(1), Point::new(3))).unwrap();
        let action = g.induced_action(&system).unwrap();
        let pre = action.preimage_stabilizer(0).unwrap();
        // index of the preimage equals the image-orbit size of the block
        assert_eq!(g.order().clone(), pre.order() * BigUint::from(2u8));
        for k in action.kernel().generators() {
            assert!(pre.contains(k.perm()));
        }
    }
}
