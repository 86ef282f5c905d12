//! Deterministic Schreier-Sims stabilizer chains.
//!
//! Strong generators carry straight-line programs over the original
//! generators, so membership sifting doubles as factorization. Nothing here
//! is randomized: base points, orbit BFS order and generator processing
//! order are all fixed, which keeps transversals (and therefore coordinates)
//! reproducible across runs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::perm::Permutation;

type SlpRef = u32;

/// A word over the original generators in straight-line form. Expansion to
/// letters happens only on demand; shared subwords are stored once.
enum SlpNode {
    Gen(u32),
    Inv(SlpRef),
    Prod(Vec<SlpRef>),
}

struct StrongGen {
    perm: Permutation,
    inv: Permutation,
    slp: SlpRef,
}

struct Level {
    base: u32, // 0-based point
    gen_idxs: Vec<usize>,
    orbit: Vec<u32>, // BFS discovery order; orbit[0] == base
    tree: HashMap<u32, (u32, usize)>,
}

impl Level {
    fn new(base: u32) -> Level {
        Level {
            base,
            gen_idxs: Vec::new(),
            orbit: vec![base],
            tree: HashMap::new(),
        }
    }
}

pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<StrongGen>,
    strong_seen: HashSet<Vec<u32>>,
    levels: Vec<Level>,
    slp: Vec<SlpNode>,
    order: BigUint,
}

impl StabChain {
    /// Runs deterministic Schreier-Sims over `origs`. `base_hints` points
    /// (0-based) are installed as the leading base points in the given
    /// order, so the stabilizer of the hint points can be read off the
    /// chain afterwards.
    pub fn build(origs: &[Permutation], base_hints: &[u32], degree: usize) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_seen: HashSet::new(),
            levels: Vec::new(),
            slp: Vec::new(),
            order: BigUint::from(1u8),
        };

        for (j, p) in origs.iter().enumerate() {
            if p.is_identity() {
                continue;
            }
            if !chain.strong_seen.insert(p.images().to_vec()) {
                continue;
            }
            let slp = chain.push_slp(SlpNode::Gen(j as u32));
            chain.strong.push(StrongGen {
                inv: p.inverse(),
                perm: p.clone(),
                slp,
            });
        }

        for &h in base_hints {
            if !chain.levels.iter().any(|l| l.base == h) {
                chain.levels.push(Level::new(h));
            }
        }
        // extend the base until every generator moves some base point; each
        // new base point is the smallest point moved by the generators that
        // still fix the whole base
        loop {
            let next = chain
                .strong
                .iter()
                .filter(|sg| {
                    chain
                        .levels
                        .iter()
                        .all(|l| sg.perm.image_of_index(l.base as usize) == l.base as usize)
                })
                .map(|sg| {
                    sg.perm
                        .smallest_moved_point()
                        .expect("identity was filtered out")
                        .value()
                        - 1
                })
                .min();
            match next {
                Some(b) => chain.levels.push(Level::new(b)),
                None => break,
            }
        }
        for lvl in 0..chain.levels.len() {
            for gi in 0..chain.strong.len() {
                if chain.gen_fixes_prefix(gi, lvl) {
                    chain.levels[lvl].gen_idxs.push(gi);
                }
            }
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            chain.rebuild_orbit(lvl);
            match chain.scan_level(lvl) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }

        chain.order = chain
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
        chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators fixing every point of `pts` (0-based). When `pts`
    /// is a prefix of the base these generate the pointwise stabilizer.
    pub fn strong_gens_fixing(&self, pts: &[u32]) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for sg in &self.strong {
            if pts
                .iter()
                .all(|&p| sg.perm.image_of_index(p as usize) == p as usize)
                && seen.insert(sg.perm.images().to_vec())
            {
                out.push(sg.perm.clone());
            }
        }
        out
    }

    fn gen_fixes_prefix(&self, gi: usize, lvl: usize) -> bool {
        self.levels[..lvl]
            .iter()
            .all(|l| self.strong[gi].perm.image_of_index(l.base as usize) == l.base as usize)
    }

    fn push_slp(&mut self, node: SlpNode) -> SlpRef {
        self.slp.push(node);
        (self.slp.len() - 1) as SlpRef
    }

    fn rebuild_orbit(&mut self, lvl: usize) {
        let base = self.levels[lvl].base;
        let gen_idxs = self.levels[lvl].gen_idxs.clone();
        let level = &mut self.levels[lvl];
        level.orbit.clear();
        level.orbit.push(base);
        level.tree.clear();
        let mut pos = 0;
        while pos < self.levels[lvl].orbit.len() {
            let x = self.levels[lvl].orbit[pos];
            pos += 1;
            for &gi in &gen_idxs {
                let z = self.strong[gi].perm.image_of_index(x as usize) as u32;
                if z != base && !self.levels[lvl].tree.contains_key(&z) {
                    self.levels[lvl].tree.insert(z, (x, gi));
                    self.levels[lvl].orbit.push(z);
                }
            }
        }
    }

    /// Path of strong-generator indices from the base to `y`, in
    /// application order.
    fn path(&self, lvl: usize, y: u32) -> Vec<usize> {
        let mut labels = Vec::new();
        let mut cur = y;
        while cur != self.levels[lvl].base {
            let &(parent, gi) = self.levels[lvl]
                .tree
                .get(&cur)
                .expect("point not in orbit tree");
            labels.push(gi);
            cur = parent;
        }
        labels.reverse();
        labels
    }

    /// The transversal element mapping the level base point to `y`.
    fn transversal(&self, lvl: usize, y: u32) -> Permutation {
        let mut t = Permutation::identity(self.degree);
        for gi in self.path(lvl, y) {
            t = t.compose(&self.strong[gi].perm);
        }
        t
    }

    /// Returns `g · t_y⁻¹` without materializing the transversal element.
    fn apply_transversal_inv(&self, lvl: usize, y: u32, g: Permutation) -> Permutation {
        let mut cur = g;
        for gi in self.path(lvl, y).into_iter().rev() {
            cur = cur.compose(&self.strong[gi].inv);
        }
        cur
    }

    /// Sifts `g` through levels `start..`, returning the residue, the level
    /// at which sifting stopped and the (level, orbit point) corrections
    /// applied on the way down.
    fn sift_from(&self, start: usize, g: Permutation) -> (Permutation, usize, Vec<(usize, u32)>) {
        let mut cur = g;
        let mut trace = Vec::new();
        for lvl in start..self.levels.len() {
            if cur.is_identity() {
                return (cur, lvl, trace);
            }
            let base = self.levels[lvl].base;
            let y = cur.image_of_index(base as usize) as u32;
            if y == base {
                continue;
            }
            if !self.levels[lvl].tree.contains_key(&y) {
                return (cur, lvl, trace);
            }
            cur = self.apply_transversal_inv(lvl, y, cur);
            trace.push((lvl, y));
        }
        (cur, self.levels.len(), trace)
    }

    /// One verification pass over a level. Returns `Some(j)` when a new
    /// strong generator was installed at level `j` (processing must resume
    /// there), `None` when every Schreier generator sifted to the identity.
    fn scan_level(&mut self, lvl: usize) -> Option<usize> {
        let orbit = self.levels[lvl].orbit.clone();
        let gens = self.levels[lvl].gen_idxs.clone();
        for &y in &orbit {
            let t_y = self.transversal(lvl, y);
            for &gi in &gens {
                let moved = t_y.compose(&self.strong[gi].perm);
                let z = moved.image_of_index(self.levels[lvl].base as usize) as u32;
                let schreier = self.apply_transversal_inv(lvl, z, moved);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stuck, trace) = self.sift_from(lvl + 1, schreier);
                if residue.is_identity() {
                    continue;
                }

                let j = stuck;
                if j == self.levels.len() {
                    let nb = residue
                        .smallest_moved_point()
                        .expect("nontrivial residue moves a point")
                        .value()
                        - 1;
                    self.levels.push(Level::new(nb));
                }

                let residue_key = residue.images().to_vec();
                let gen_index = if self.strong_seen.insert(residue_key.clone()) {
                    // SLP: t_y · s · t_z⁻¹ · (sift corrections)⁻¹
                    let mut parts: Vec<SlpRef> = Vec::new();
                    for pgi in self.path(lvl, y) {
                        parts.push(self.strong[pgi].slp);
                    }
                    parts.push(self.strong[gi].slp);
                    for pgi in self.path(lvl, z).into_iter().rev() {
                        let r = self.strong[pgi].slp;
                        parts.push(self.push_slp(SlpNode::Inv(r)));
                    }
                    for &(l2, y2) in &trace {
                        for pgi in self.path(l2, y2).into_iter().rev() {
                            let r = self.strong[pgi].slp;
                            parts.push(self.push_slp(SlpNode::Inv(r)));
                        }
                    }
                    let slp = self.push_slp(SlpNode::Prod(parts));
                    self.strong.push(StrongGen {
                        inv: residue.inverse(),
                        perm: residue,
                        slp,
                    });
                    self.strong.len() - 1
                } else {
                    self.strong
                        .iter()
                        .position(|sg| sg.perm.images() == residue_key.as_slice())
                        .expect("duplicate residue must exist in strong set")
                };

                // if multiple hint levels share the residue's fixed prefix,
                // the residue may already be registered somewhere
                for target in lvl + 1..=j {
                    if !self.levels[target].gen_idxs.contains(&gen_index) {
                        self.levels[target].gen_idxs.push(gen_index);
                    }
                }
                return Some(j);
            }
        }
        None
    }

    /// Membership residue: identity iff the element is in the group.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.sift_from(0, g.clone()).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.sift(g).is_identity()
    }

    /// Factorizes a group member into letters `(original generator index,
    /// inverted)` with free reduction; `None` when `g` is not a member.
    pub fn factorize_letters(&self, g: &Permutation) -> Option<Vec<(u32, bool)>> {
        let (residue, _, trace) = self.sift_from(0, g.clone());
        if !residue.is_identity() {
            return None;
        }
        let mut out = Vec::new();
        for &(lvl, y) in trace.iter().rev() {
            for gi in self.path(lvl, y) {
                self.expand_slp(self.strong[gi].slp, false, &mut out);
            }
        }
        Some(out)
    }

    fn expand_slp(&self, root: SlpRef, inverted: bool, out: &mut Vec<(u32, bool)>) {
        // explicit stack: (node, inverted, next child position)
        let mut stack = vec![(root, inverted, 0usize)];
        while let Some((node, inv, pos)) = stack.pop() {
            match &self.slp[node as usize] {
                SlpNode::Gen(j) => push_letter(out, (*j, inv)),
                SlpNode::Inv(c) => stack.push((*c, !inv, 0)),
                SlpNode::Prod(children) => {
                    if pos < children.len() {
                        stack.push((node, inv, pos + 1));
                        let child = if inv {
                            children[children.len() - 1 - pos]
                        } else {
                            children[pos]
                        };
                        stack.push((child, inv, 0));
                    }
                }
            }
        }
    }

    /// Canonical element of the right coset `H·g` where `H` is this chain's
    /// group: minimizes the base images level by level, so two elements get
    /// the same canonical form exactly when they lie in the same coset.
    pub fn coset_canonical(&self, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for lvl in 0..self.levels.len() {
            let level = &self.levels[lvl];
            let mut best = level.orbit[0];
            let mut best_image = cur.image_of_index(best as usize);
            for &y in &level.orbit[1..] {
                let img = cur.image_of_index(y as usize);
                if img < best_image {
                    best = y;
                    best_image = img;
                }
            }
            if best != level.base {
                cur = self.transversal(lvl, best).compose(&cur);
            }
        }
        cur
    }
}

fn push_letter(out: &mut Vec<(u32, bool)>, letter: (u32, bool)) {
    if let Some(&(last_gen, last_inv)) = out.last() {
        if last_gen == letter.0 && last_inv != letter.1 {
            out.pop();
            return;
        }
    }
    out.push(letter);
}
