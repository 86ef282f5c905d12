//! Hierarchical coordinate systems on a group from a subgroup chain.
//!
//! A validated chain `G = G₁ ≥ G₂ ≥ … ≥ G_{n+1}` yields one coset table per
//! adjacent pair. A group element then corresponds to the tuple of coset
//! indices peeled off level by level, every state change decomposes into
//! per-level component actions, and a state is driven back to the identity
//! by applying the level killers top-down.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::coset::{CosetActionImage, RightCosetTable, DEFAULT_INDEX_CAP};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::word::Word;

/// A descending chain of subgroups, validated on construction.
///
/// Adjacent equal groups carry no information; they are dropped with a
/// warning instead of rejected.
pub struct SubgroupChain {
    groups: Vec<Arc<PermutationGroup>>,
    warnings: Vec<String>,
}

impl SubgroupChain {
    pub fn new(groups: Vec<Arc<PermutationGroup>>) -> Result<SubgroupChain> {
        if groups.is_empty() {
            return Err(Error::ChainError("chain is empty".into()));
        }
        let degree = groups[0].degree();
        let mut kept: Vec<Arc<PermutationGroup>> = vec![groups[0].clone()];
        let mut warnings = Vec::new();
        for (i, g) in groups.iter().enumerate().skip(1) {
            if g.degree() != degree {
                return Err(Error::ChainError(format!(
                    "group {} has degree {}, expected {}",
                    i + 1,
                    g.degree(),
                    degree
                )));
            }
            let prev = kept.last().unwrap();
            for gen in g.generators() {
                if !prev.contains(gen.perm()) {
                    return Err(Error::ChainError(format!(
                        "group {} is not a subgroup of its predecessor: generator {} falls outside",
                        i + 1,
                        gen.name()
                    )));
                }
            }
            if g.order() == prev.order() {
                warnings.push(format!(
                    "group {} equals its predecessor; the index-1 level is dropped",
                    i + 1
                ));
                continue;
            }
            kept.push(g.clone());
        }
        Ok(SubgroupChain {
            groups: kept,
            warnings,
        })
    }

    pub fn groups(&self) -> &[Arc<PermutationGroup>] {
        &self.groups
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn top(&self) -> &Arc<PermutationGroup> {
        &self.groups[0]
    }

    pub fn bottom(&self) -> &Arc<PermutationGroup> {
        self.groups.last().unwrap()
    }

    /// Number of coordinate levels.
    pub fn num_levels(&self) -> usize {
        self.groups.len() - 1
    }
}

impl fmt::Debug for SubgroupChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupChain(")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, " ≥ ")?;
            }
            write!(f, "{}", g.order())?;
        }
        write!(f, ")")
    }
}

/// The chain descending by the stabilizer of the smallest moved point until
/// the trivial group is reached.
pub fn point_stabilizer_chain(top: Arc<PermutationGroup>) -> Result<SubgroupChain> {
    let mut groups = vec![top.clone()];
    let mut cur = (*top).clone();
    while !cur.is_trivial() {
        let p = cur
            .generators()
            .iter()
            .filter_map(|g| g.perm().smallest_moved_point())
            .min()
            .expect("nontrivial group moves a point");
        cur = cur.pointwise_stabilizer(&[p])?;
        groups.push(Arc::new(cur.clone()));
    }
    SubgroupChain::new(groups)
}

/// One coordinate level: the coset table of `G_{i+1}` in `G_i` together
/// with the induced action on its indices.
pub struct Level {
    table: Arc<RightCosetTable>,
    action: CosetActionImage,
}

impl Level {
    pub fn table(&self) -> &Arc<RightCosetTable> {
        &self.table
    }

    pub fn action(&self) -> &CosetActionImage {
        &self.action
    }

    pub fn index_count(&self) -> usize {
        self.table.index_count()
    }
}

/// A coordinate tuple: one 1-based coset index per level. The all-ones
/// tuple is the base state and corresponds to the identity element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coordinates {
    indices: Vec<u32>,
}

impl Coordinates {
    pub fn new(indices: Vec<u32>) -> Coordinates {
        Coordinates { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Parses a comma-separated index list such as `1,2,3`.
    pub fn parse(text: &str) -> Result<Coordinates> {
        let mut indices = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let v: u32 = part
                .parse()
                .map_err(|_| Error::ChainError(format!("bad coordinate value {part:?}")))?;
            indices.push(v);
        }
        Ok(Coordinates { indices })
    }
}

impl fmt::Display for Coordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {v}")?;
        }
        f.write_str(" )")
    }
}

/// The per-level component actions of one group element at one state:
/// `actions[i]` lies in `G_{i+1}` of the chain and depends only on the
/// element and the first `i` coordinates.
#[derive(Clone, Debug)]
pub struct LevelActions {
    actions: Vec<Permutation>,
}

impl LevelActions {
    pub fn actions(&self) -> &[Permutation] {
        &self.actions
    }
}

/// A built coordinate system: one level per adjacent pair of the chain.
pub struct Decomposition {
    chain: SubgroupChain,
    levels: Vec<Level>,
}

impl Decomposition {
    pub fn build(chain: SubgroupChain) -> Result<Decomposition> {
        Self::build_with_cap(chain, DEFAULT_INDEX_CAP)
    }

    pub fn build_with_cap(chain: SubgroupChain, cap: usize) -> Result<Decomposition> {
        let mut levels = Vec::with_capacity(chain.num_levels());
        for pair in chain.groups().windows(2) {
            let table = Arc::new(RightCosetTable::build_with_cap(
                pair[0].clone(),
                pair[1].clone(),
                cap,
            )?);
            let action = CosetActionImage::new(table.clone());
            levels.push(Level { table, action });
        }
        Ok(Decomposition { chain, levels })
    }

    pub fn chain(&self) -> &SubgroupChain {
        &self.chain
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn top(&self) -> &Arc<PermutationGroup> {
        self.chain.top()
    }

    /// Number of coordinate tuples; equals `|G₁|/|G_{n+1}|`, so with a
    /// trivial bottom group it is the order of the top group.
    pub fn tuple_count(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.index_count()))
            .product()
    }

    /// The all-ones tuple (the solved state).
    pub fn base_coordinates(&self) -> Coordinates {
        Coordinates::new(vec![1; self.levels.len()])
    }

    fn check_coordinates(&self, c: &Coordinates) -> Result<()> {
        if c.len() != self.levels.len() {
            return Err(Error::ChainError(format!(
                "expected {} coordinates, got {}",
                self.levels.len(),
                c.len()
            )));
        }
        for (i, (&v, level)) in c.indices().iter().zip(&self.levels).enumerate() {
            if v == 0 || v as usize > level.index_count() {
                return Err(Error::CoordinateOutOfRange {
                    level: i + 1,
                    value: v,
                    max: level.index_count(),
                });
            }
        }
        Ok(())
    }

    /// Peels `g` into its coordinate tuple: the level-1 representative is
    /// split off first and the residue is encoded recursively, so
    /// `g = xₙ ⋯ x₂ · x₁` exactly when the chain ends at the trivial group.
    /// With a nontrivial bottom the tuple addresses the coset
    /// `G_{n+1} · g` instead of `g` itself.
    pub fn encode(&self, g: &Permutation) -> Result<Coordinates> {
        if !self.top().contains(g) {
            return Err(Error::NotInGroup);
        }
        let mut indices = Vec::with_capacity(self.levels.len());
        let mut cur = g.clone();
        for level in &self.levels {
            let (idx, rep) = level.table.canonical_rep(&cur)?;
            indices.push(idx);
            cur = cur.compose(&rep.inverse());
        }
        Ok(Coordinates::new(indices))
    }

    /// Representative permutations `x₁, …, xₙ` of a coordinate tuple.
    pub fn reps(&self, c: &Coordinates) -> Result<Vec<&Permutation>> {
        self.check_coordinates(c)?;
        c.indices()
            .iter()
            .zip(&self.levels)
            .map(|(&v, level)| level.table.rep(v))
            .collect()
    }

    /// The element `xₙ · x_{n-1} ⋯ x₁` of a coordinate tuple (bottom level
    /// applied first).
    pub fn decode(&self, c: &Coordinates) -> Result<Permutation> {
        let reps = self.reps(c)?;
        let mut acc = Permutation::identity(self.top().degree());
        for rep in reps.into_iter().rev() {
            acc = acc.compose(rep);
        }
        Ok(acc)
    }

    /// Component actions of `g` at the state `c`: the recursion
    /// `g₁ := g`, `g_{i+1} := x_i·g_i·(x̄_i·g_i)⁻¹` with the overline the
    /// fixed coset representative at level `i`. Returns the per-level
    /// actions and the moved state `(x₁·g₁, …, xₙ·gₙ)`.
    pub fn component_actions(
        &self,
        c: &Coordinates,
        g: &Permutation,
    ) -> Result<(LevelActions, Coordinates)> {
        self.check_coordinates(c)?;
        if !self.top().contains(g) {
            return Err(Error::NotInGroup);
        }
        let mut actions = Vec::with_capacity(self.levels.len());
        let mut new_indices = Vec::with_capacity(self.levels.len());
        let mut g_i = g.clone();
        for (level, &idx) in self.levels.iter().zip(c.indices()) {
            let x_i = level.table.rep(idx)?;
            let moved = x_i.compose(&g_i);
            let (new_idx, new_rep) = level.table.canonical_rep(&moved)?;
            new_indices.push(new_idx);
            let next = moved.compose(&new_rep.inverse());
            actions.push(g_i);
            g_i = next;
        }
        Ok((LevelActions { actions }, Coordinates::new(new_indices)))
    }

    /// Applies `g` to a state in coordinate space.
    pub fn act(&self, c: &Coordinates, g: &Permutation) -> Result<Coordinates> {
        Ok(self.component_actions(c, g)?.1)
    }

    /// The level killers `k_i = x_i⁻¹`: applying them in order drives the
    /// coordinate prefix to ones and the whole product to the identity.
    pub fn level_killers(&self, c: &Coordinates) -> Result<Vec<Permutation>> {
        Ok(self
            .reps(c)?
            .into_iter()
            .map(Permutation::inverse)
            .collect())
    }

    /// The level builders, i.e. the representatives themselves: applying
    /// `xₙ`, then `x_{n-1}`, …, then `x₁` to the identity rebuilds the
    /// state bottom-up.
    pub fn level_builders(&self, c: &Coordinates) -> Result<Vec<Permutation>> {
        Ok(self.reps(c)?.into_iter().cloned().collect())
    }

    /// An element moving the state `from` to the state `to`, assembled from
    /// the killers of `from` followed by the builders of `to`.
    pub fn navigate(&self, from: &Coordinates, to: &Coordinates) -> Result<Permutation> {
        let mut acc = Permutation::identity(self.top().degree());
        for killer in self.level_killers(from)? {
            acc = acc.compose(&killer);
        }
        for builder in self.level_builders(to)?.into_iter().rev() {
            acc = acc.compose(&builder);
        }
        Ok(acc)
    }

    /// A solving word: the level killers of `encode(g)`, each factorized
    /// over the top group's generators, concatenated top-down and
    /// free-reduced across the joints. Evaluating the word after `g` yields
    /// the identity. Requires a trivial bottom group.
    pub fn solve_word(&self, g: &Permutation) -> Result<Word> {
        let mut word = Word::empty();
        for part in self.solve_words_per_level(g)? {
            word.extend(&part);
        }
        Ok(word)
    }

    /// One word per level killer, top-down.
    pub fn solve_words_per_level(&self, g: &Permutation) -> Result<Vec<Word>> {
        if !self.chain.bottom().is_trivial() {
            return Err(Error::NontrivialBottom);
        }
        let c = self.encode(g)?;
        self.level_killers(&c)?
            .iter()
            .map(|killer| self.top().factorize(killer))
            .collect()
    }
}
