//! Permutations on {0..n-1} and finitely generated permutation groups.
//!
//! Groups carry a lazily built stabilizer chain (deterministic Schreier-Sims,
//! base points in increasing order skipping fixed points) supporting exact
//! order, membership, point/pointwise/setwise stabilizers, and transitivity
//! and homogeneity tests. Orders are exact big integers.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A permutation given by its image list: point i maps to `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: u32) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// Composition acting left-to-right on the page: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u128 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut ord: u128 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = lcm_u128(ord, len);
        }
        ord
    }

    /// Points fixed by this permutation.
    pub fn fixed_points(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &y)| i as u32 == y)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &y)| i as u32 != y)
            .map(|(i, _)| i as u32)
    }

    /// Image of a sorted point set, returned sorted.
    pub fn apply_set(&self, s: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = s.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / gcd_u128(a, b) * b
}

/// One level of a stabilizer chain: a base point, the indices (into the
/// strong generator pool) of the generators fixing all earlier base points,
/// the basic orbit, and a Schreier tree for transversal recovery.
struct ChainLevel {
    base: u32,
    gen_idx: Vec<usize>,
    orbit: Vec<u32>,
    /// point -> (pool index of generator, parent point); base not present.
    tree: HashMap<u32, (usize, u32)>,
}

/// Base and strong generating set built by deterministic Schreier-Sims.
pub struct StabChain {
    degree: u32,
    strong: Vec<Perm>,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    /// Build a chain for the group generated by `gens`. Points listed in
    /// `preferred_base` are installed as the leading base points (in order);
    /// further base points are chosen as the smallest moved point, which for
    /// an empty preference yields increasing base points skipping fixed ones.
    pub fn build(degree: u32, gens: &[Perm], preferred_base: &[u32]) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for &b in preferred_base {
            chain.levels.push(ChainLevel {
                base: b,
                gen_idx: Vec::new(),
                orbit: vec![b],
                tree: HashMap::new(),
            });
        }
        for g in gens {
            if !g.is_identity() {
                chain.add_strong(g.clone());
            }
        }
        chain.complete();
        // preferred base points can leave trivial levels behind; keep them
        // (harmless for order/orbit queries, needed for stabilizer prefixes)
        chain
    }

    fn level_gens(&self, lev: usize) -> &[usize] {
        &self.levels[lev].gen_idx
    }

    /// Register a new strong generator: it joins every level whose base
    /// prefix it fixes.
    fn add_strong(&mut self, g: Perm) {
        let idx = self.strong.len();
        let mut lev = 0;
        while lev < self.levels.len() {
            let b = self.levels[lev].base;
            self.levels[lev].gen_idx.push(idx);
            if g.apply(b) != b {
                break;
            }
            lev += 1;
        }
        if lev == self.levels.len() {
            // fixes every existing base: open a new level at its first moved
            // point (there is one; identities are filtered before this call)
            let b = g.first_moved().expect("non-identity generator");
            self.levels.push(ChainLevel {
                base: b,
                gen_idx: vec![idx],
                orbit: vec![b],
                tree: HashMap::new(),
            });
        }
        self.strong.push(g);
    }

    fn recompute_orbit(&mut self, lev: usize) {
        let base = self.levels[lev].base;
        let gen_idx: Vec<usize> = self.level_gens(lev).to_vec();
        let mut orbit = vec![base];
        let mut tree = HashMap::new();
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for &gi in &gen_idx {
                let q = self.strong[gi].apply(p);
                if q != base && !tree.contains_key(&q) {
                    tree.insert(q, (gi, p));
                    orbit.push(q);
                }
            }
        }
        let level = &mut self.levels[lev];
        level.orbit = orbit;
        level.tree = tree;
    }

    /// Transversal element mapping the base of `lev` to `point`.
    fn transversal(&self, lev: usize, point: u32) -> Perm {
        let mut word: Vec<usize> = Vec::new();
        let mut x = point;
        let base = self.levels[lev].base;
        while x != base {
            let &(gi, parent) = self.levels[lev]
                .tree
                .get(&x)
                .expect("point must lie in the basic orbit");
            word.push(gi);
            x = parent;
        }
        let mut u = Perm::identity(self.degree);
        for &gi in word.iter().rev() {
            u = self.strong[gi].compose(&u);
        }
        u
    }

    /// Strip `g` through levels starting at `from`; returns the residue and
    /// the level where it escaped (residue is identity iff g is in the group
    /// generated by levels `from..`).
    fn strip_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for lev in from..self.levels.len() {
            let b = self.levels[lev].base;
            let img = h.apply(b);
            if img == b {
                continue;
            }
            if !self.levels[lev].tree.contains_key(&img) {
                return (h, lev);
            }
            let u = self.transversal(lev, img);
            h = u.inverse().compose(&h);
        }
        (h, self.levels.len())
    }

    /// Verify the Schreier condition everywhere, adding strong generators as
    /// needed (deterministic order: orbit discovery order, generator index).
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        for lev in 0..self.levels.len() {
            self.recompute_orbit(lev);
        }
        let mut lev = self.levels.len() - 1;
        loop {
            self.recompute_orbit(lev);
            let mut dirty: Option<usize> = None;
            'scan: for oi in 0..self.levels[lev].orbit.len() {
                let p = self.levels[lev].orbit[oi];
                let u_p = self.transversal(lev, p);
                for gpos in 0..self.level_gens(lev).len() {
                    let gi = self.level_gens(lev)[gpos];
                    let g = &self.strong[gi];
                    let q = g.apply(p);
                    let u_q = self.transversal(lev, q);
                    let schreier = u_q.inverse().compose(&g.compose(&u_p));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, esc) = self.strip_from(&schreier, lev + 1);
                    if !residue.is_identity() {
                        // install the residue at levels lev+1..=esc
                        let idx = self.strong.len();
                        let need_new_level = esc == self.levels.len();
                        if need_new_level {
                            let b = residue.first_moved().expect("residue moves a point");
                            self.levels.push(ChainLevel {
                                base: b,
                                gen_idx: Vec::new(),
                                orbit: vec![b],
                                tree: HashMap::new(),
                            });
                        }
                        for l in (lev + 1)..=esc {
                            self.levels[l].gen_idx.push(idx);
                        }
                        self.strong.push(residue);
                        for l in (lev + 1)..=esc {
                            self.recompute_orbit(l);
                        }
                        dirty = Some(esc);
                        break 'scan;
                    }
                }
            }
            match dirty {
                Some(esc) => lev = esc,
                None => {
                    if lev == 0 {
                        break;
                    }
                    lev -= 1;
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.strip_from(g, 0);
        res.is_identity()
    }

    /// Strong generators fixing the first `prefix` base points, i.e.
    /// generators of the pointwise stabilizer of those base points.
    fn gens_below(&self, prefix: usize) -> Vec<Perm> {
        if prefix >= self.levels.len() {
            return Vec::new();
        }
        self.levels[prefix]
            .gen_idx
            .iter()
            .map(|&i| self.strong[i].clone())
            .collect()
    }

    fn base_points(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Points fixed by every generator at level `lev` (all points when the
    /// level group is trivial).
    fn fixed_by_level(&self, lev: usize) -> Vec<bool> {
        let mut fixed = vec![true; self.degree as usize];
        if lev < self.levels.len() {
            for &gi in &self.levels[lev].gen_idx {
                for (i, f) in fixed.iter_mut().enumerate() {
                    if self.strong[gi].apply(i as u32) != i as u32 {
                        *f = false;
                    }
                }
            }
        }
        fixed
    }
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. The chain is built at most once; all queries after that are
/// read-only, so a chain-complete group can be shared across threads.
pub struct PermGroup {
    degree: u32,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree={}, gens={})", self.degree, self.gens.len())
    }
}

/// Orbits of a group on a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Sorted orbits, ordered by smallest element.
    pub orbits: Vec<Vec<u32>>,
}

impl OrbitPartition {
    /// Multiset of orbit lengths as sorted (length, count) pairs.
    pub fn length_multiset(&self) -> Vec<(u64, u64)> {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for o in &self.orbits {
            *counts.entry(o.len() as u64).or_insert(0) += 1;
        }
        let mut out: Vec<(u64, u64)> = counts.into_iter().collect();
        out.sort_unstable();
        out
    }
}

impl PermGroup {
    pub fn new(degree: u32, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: u32) -> PermGroup {
        PermGroup::new(degree, vec![]).unwrap()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    /// Eagerly build the stabilizer chain (see the sharing contract above).
    pub fn ensure_chain(&self) {
        let _ = self.chain();
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Group order as u64; panics if it does not fit (callers use this for
    /// groups known to be small).
    pub fn order_u64(&self) -> u64 {
        let o = self.order();
        let digits = o.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => panic!("group order exceeds u64"),
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn base_points(&self) -> Vec<u32> {
        self.chain().base_points()
    }

    /// Orbit of one point, sorted.
    pub fn orbit(&self, x: u32) -> Result<Vec<u32>> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let mut orbit = vec![x];
        let mut seen: HashMap<u32, ()> = HashMap::new();
        seen.insert(x, ());
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if seen.insert(q, ()).is_none() {
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Partition of `pts` into orbits. Every point must be in range and the
    /// set must be G-invariant for the parts to be genuine orbits; points
    /// whose orbit leaves `pts` get grouped with the reachable part only if
    /// it stays inside, so we require invariance and check it.
    pub fn orbits(&self, pts: &[u32]) -> Result<OrbitPartition> {
        let inside: std::collections::HashSet<u32> = pts.iter().copied().collect();
        for &x in pts {
            if x >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        let mut assigned: HashMap<u32, ()> = HashMap::new();
        let mut orbits = Vec::new();
        let mut sorted_pts: Vec<u32> = pts.to_vec();
        sorted_pts.sort_unstable();
        sorted_pts.dedup();
        for &x in &sorted_pts {
            if assigned.contains_key(&x) {
                continue;
            }
            let orb = self.orbit(x)?;
            for &y in &orb {
                if !inside.contains(&y) {
                    return Err(Error::InvalidParameter(format!(
                        "point set is not invariant: {} escapes to {}",
                        x, y
                    )));
                }
                assigned.insert(y, ());
            }
            orbits.push(orb);
        }
        Ok(OrbitPartition { orbits })
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(&self, x: u32) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[x])
    }

    /// Pointwise stabilizer of a point list: a fresh chain is built with the
    /// given points as leading base, and the strong generators fixing all of
    /// them are read off.
    pub fn pointwise_stabilizer(&self, pts: &[u32]) -> Result<PermGroup> {
        for &x in pts {
            if x >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        let chain = StabChain::build(self.degree, &self.gens, pts);
        PermGroup::new(self.degree, chain.gens_below(pts.len()))
    }

    /// Setwise stabilizer {g in G : S^g = S} by backtracking over a chain
    /// whose base starts with the points of S, pruned by basic orbits and
    /// determined-point consistency.
    pub fn setwise_stabilizer(&self, s: &[u32]) -> Result<PermGroup> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut sset: Vec<u32> = s.to_vec();
        sset.sort_unstable();
        sset.dedup();
        for &x in &sset {
            if x >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        if sset.len() == self.degree as usize {
            return Ok(self.clone());
        }
        let chain = StabChain::build(self.degree, &self.gens, &sset);
        let in_s: Vec<bool> = {
            let mut v = vec![false; self.degree as usize];
            for &x in &sset {
                v[x as usize] = true;
            }
            v
        };
        // fixed-point sets per level, computed once
        let fixed: Vec<Vec<bool>> = (0..=chain.levels.len())
            .map(|l| chain.fixed_by_level(l))
            .collect();
        let mut found: Vec<Perm> = Vec::new();
        let identity = Perm::identity(self.degree);
        self.setwise_dfs(&chain, &in_s, &sset, &fixed, 0, &identity, &mut found);
        PermGroup::new(self.degree, found)
    }

    #[allow(clippy::too_many_arguments)]
    fn setwise_dfs(
        &self,
        chain: &StabChain,
        in_s: &[bool],
        sset: &[u32],
        fixed: &[Vec<bool>],
        lev: usize,
        prefix: &Perm,
        found: &mut Vec<Perm>,
    ) {
        // if every point of S has a determined image and those images stay in
        // S, the whole coset prefix * G^(lev) stabilizes S
        let all_determined = sset.iter().all(|&x| fixed[lev][x as usize]);
        if all_determined {
            let ok = sset.iter().all(|&x| in_s[prefix.apply(x) as usize]);
            if ok {
                if !prefix.is_identity() {
                    found.push(prefix.clone());
                }
                for g in chain.gens_below(lev) {
                    found.push(g);
                }
            }
            return;
        }
        if lev >= chain.levels.len() {
            if sset.iter().all(|&x| in_s[prefix.apply(x) as usize]) && !prefix.is_identity() {
                found.push(prefix.clone());
            }
            return;
        }
        let base = chain.levels[lev].base;
        let mut orbit: Vec<u32> = chain.levels[lev].orbit.clone();
        orbit.sort_unstable();
        for p in orbit {
            let image = prefix.apply(p);
            if in_s[base as usize] != in_s[image as usize] {
                continue;
            }
            let u = chain.transversal(lev, p);
            let next = prefix.compose(&u);
            // determined points of the deeper group must respect S
            let det = &fixed[lev + 1];
            let consistent = sset
                .iter()
                .all(|&x| !det[x as usize] || in_s[next.apply(x) as usize]);
            if !consistent {
                continue;
            }
            self.setwise_dfs(chain, in_s, sset, fixed, lev + 1, &next, found);
        }
    }

    /// True iff G is transitive on ordered t-tuples of distinct points,
    /// decided exactly via the index of a pointwise stabilizer.
    pub fn is_t_transitive(&self, t: u32) -> Result<bool> {
        if t < 1 || t > self.degree {
            return Err(Error::InvalidParameter(format!(
                "t = {} out of range 1..={}",
                t, self.degree
            )));
        }
        let pts: Vec<u32> = (0..t).collect();
        let stab = self.pointwise_stabilizer(&pts)?;
        let mut falling = BigUint::one();
        for i in 0..t {
            falling *= BigUint::from(self.degree - i);
        }
        Ok(self.order() == falling * stab.order())
    }

    /// True iff G has a single orbit on unordered t-subsets, computed by
    /// union-find over the C(degree, t) subset ranks.
    pub fn is_t_homogeneous(&self, t: u32) -> Result<bool> {
        if t < 1 || t > self.degree {
            return Err(Error::InvalidParameter(format!(
                "t = {} out of range 1..={}",
                t, self.degree
            )));
        }
        let total = binomial_u128(self.degree as u64, t as u64);
        if total > 10_000_000 {
            return Err(Error::BoundExceeded(format!(
                "C({},{}) = {} t-subsets exceed 10^7",
                self.degree, t, total
            )));
        }
        let total = total as usize;
        if total <= 1 {
            return Ok(true);
        }
        let ranker = SubsetRanker::new(self.degree, t);
        let mut uf = UnionFind::new(total);
        let mut subset: Vec<u32> = (0..t).collect();
        loop {
            let r = ranker.rank(&subset);
            for g in &self.gens {
                let img = g.apply_set(&subset);
                uf.union(r, ranker.rank(&img));
            }
            if !next_subset(&mut subset, self.degree) {
                break;
            }
        }
        Ok(uf.count_roots() == 1)
    }
}

/// Next t-subset of {0..n-1} in lexicographic order; false when exhausted.
pub fn next_subset(subset: &mut [u32], n: u32) -> bool {
    let t = subset.len();
    let mut i = t;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < n - (t - i) as u32 {
            subset[i] += 1;
            for j in i + 1..t {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
}

pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Colex ranking of sorted t-subsets of {0..n-1}.
pub struct SubsetRanker {
    binom: Vec<Vec<u64>>,
    t: usize,
}

impl SubsetRanker {
    pub fn new(n: u32, t: u32) -> SubsetRanker {
        let n = n as usize;
        let t = t as usize;
        // Pascal's triangle; entries stay within u64 at the 10^7 subset bound
        let mut binom = vec![vec![0u64; t + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for j in 1..=t {
                if i > 0 {
                    let below = binom[i - 1][j];
                    let diag = binom[i - 1][j - 1];
                    binom[i][j] = below + diag;
                }
            }
        }
        SubsetRanker { binom, t }
    }

    /// Rank of a sorted subset in colexicographic order.
    pub fn rank(&self, subset: &[u32]) -> usize {
        debug_assert_eq!(subset.len(), self.t);
        let mut r = 0u64;
        for (i, &x) in subset.iter().enumerate() {
            r += self.binom[x as usize][i + 1];
        }
        r as usize
    }

    /// Inverse of `rank`.
    pub fn unrank(&self, mut r: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.t];
        for i in (0..self.t).rev() {
            // largest x with C(x, i+1) <= r
            let mut x = i;
            while x + 1 < self.binom.len() && self.binom[x + 1][i + 1] <= r {
                x += 1;
            }
            out[i] = x as u32;
            r -= self.binom[x][i + 1];
        }
        out
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
        }
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.parent[i] as usize == i)
            .count()
    }
}

/// Parse the group text format: first line "degree n", then one permutation
/// per line as space-separated images.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let mut it = header.split_whitespace();
    match (it.next(), it.next()) {
        (Some("degree"), Some(n)) => {
            let degree: u32 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree {:?}", n)))?;
            let mut gens = Vec::new();
            for line in lines {
                let images: std::result::Result<Vec<u32>, _> =
                    line.split_whitespace().map(|w| w.parse()).collect();
                let images = images.map_err(|_| Error::Parse(format!("bad permutation line {:?}", line)))?;
                if images.len() != degree as usize {
                    return Err(Error::Parse(format!(
                        "permutation has {} images, expected {}",
                        images.len(),
                        degree
                    )));
                }
                gens.push(Perm::new(images)?);
            }
            PermGroup::new(degree, gens)
        }
        _ => Err(Error::Parse("group file must start with 'degree n'".into())),
    }
}

/// Serialize a group in the same text format.
pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for p in g.generators() {
        let words: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Convenience constructor from cycle notation, for tests and small inputs.
pub fn perm_from_cycles(degree: u32, cycles: &[&[u32]]) -> Perm {
    let mut images: Vec<u32> = (0..degree).collect();
    for cyc in cycles {
        for w in cyc.windows(2) {
            images[w[0] as usize] = w[1];
        }
        if cyc.len() > 1 {
            images[cyc[cyc.len() - 1] as usize] = cyc[0];
        }
    }
    Perm::new(images).expect("valid cycles")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    /// Brute-force element enumeration, the independent oracle for chain
    /// orders on small groups.
    fn enumerate_elements(g: &PermGroup) -> Vec<Perm> {
        let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
        let mut queue = vec![Perm::identity(g.degree())];
        seen.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for gen in g.generators() {
                let y = gen.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                perm_from_cycles(4, &[&[0, 1]]),
                perm_from_cycles(4, &[&[0, 1, 2, 3]]),
            ],
        )
        .unwrap()
    }

    fn s5() -> PermGroup {
        PermGroup::new(
            5,
            vec![
                perm_from_cycles(5, &[&[0, 1]]),
                perm_from_cycles(5, &[&[0, 1, 2, 3, 4]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn perm_basics() {
        let p = perm_from_cycles(5, &[&[0, 1, 2]]);
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.order(), 3);
        assert_eq!(p.inverse().compose(&p), Perm::identity(5));
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert_eq!(Perm::identity(6).fixed_points().len(), 6);
    }

    #[test]
    fn order_examples() {
        assert_eq!(s4().order(), BigUint::from(24u32));
        let trivial = PermGroup::trivial(5);
        assert_eq!(trivial.order(), BigUint::from(1u32));
        let c5 = PermGroup::new(5, vec![perm_from_cycles(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(c5.order(), BigUint::from(5u32));
    }

    #[test]
    fn chain_order_matches_enumeration() {
        let groups: Vec<PermGroup> = vec![
            s4(),
            s5(),
            PermGroup::new(5, vec![perm_from_cycles(5, &[&[0, 1, 2, 3, 4]])]).unwrap(),
            // D8 on 4 points
            PermGroup::new(
                4,
                vec![
                    perm_from_cycles(4, &[&[0, 1, 2, 3]]),
                    perm_from_cycles(4, &[&[1, 3]]),
                ],
            )
            .unwrap(),
            // A4
            PermGroup::new(
                4,
                vec![
                    perm_from_cycles(4, &[&[0, 1, 2]]),
                    perm_from_cycles(4, &[&[1, 2, 3]]),
                ],
            )
            .unwrap(),
        ];
        for g in &groups {
            let elems = enumerate_elements(g);
            assert_eq!(g.order(), BigUint::from(elems.len()));
            for e in elems.iter().take(50) {
                assert!(g.contains(e));
            }
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let a4 = PermGroup::new(
            4,
            vec![
                perm_from_cycles(4, &[&[0, 1, 2]]),
                perm_from_cycles(4, &[&[1, 2, 3]]),
            ],
        )
        .unwrap();
        assert!(!a4.contains(&perm_from_cycles(4, &[&[0, 1]])));
        assert!(a4.contains(&perm_from_cycles(4, &[&[0, 1], &[2, 3]])));
    }

    #[test]
    fn orbits_examples() {
        let c5 = PermGroup::new(5, vec![perm_from_cycles(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        let part = c5.orbits(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(part.length_multiset(), vec![(5, 1)]);

        let trivial = PermGroup::trivial(6);
        let part = trivial.orbits(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(part.length_multiset(), vec![(1, 6)]);
        assert!(trivial.orbits(&[7]).is_err());
    }

    #[test]
    fn point_stabilizer_orbit_stabilizer() {
        let g = s4();
        let stab = g.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), BigUint::from(6u32));
        // orbit-stabilizer on every point
        for x in 0..4 {
            let orb = g.orbit(x).unwrap();
            let st = g.point_stabilizer(x).unwrap();
            assert_eq!(g.order(), st.order() * BigUint::from(orb.len()));
        }
        let trivial = PermGroup::trivial(3);
        assert_eq!(trivial.point_stabilizer(1).unwrap().order(), BigUint::from(1u32));
    }

    #[test]
    fn setwise_stabilizer_examples() {
        // S5 on {0,1}: 2! * 3! = 12
        let g = s5();
        let stab = g.setwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(stab.order(), BigUint::from(12u32));
        for p in stab.generators() {
            assert_eq!(p.apply_set(&[0, 1]), vec![0, 1]);
        }
        // S = all points: G itself
        let stab = g.setwise_stabilizer(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(stab.order(), g.order());
        assert!(g.setwise_stabilizer(&[]).is_err());
    }

    /// Setwise stabilizer against brute-force filtering on small groups.
    #[test]
    fn setwise_stabilizer_oracle() {
        let cases: Vec<(PermGroup, Vec<u32>)> = vec![
            (s4(), vec![0, 2]),
            (s5(), vec![1, 3, 4]),
            (
                PermGroup::new(
                    6,
                    vec![
                        perm_from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]),
                        perm_from_cycles(6, &[&[1, 5], &[2, 4]]),
                    ],
                )
                .unwrap(),
                vec![0, 3],
            ),
        ];
        for (g, s) in cases {
            let expect = enumerate_elements(&g)
                .into_iter()
                .filter(|p| p.apply_set(&s) == s)
                .count();
            let stab = g.setwise_stabilizer(&s).unwrap();
            assert_eq!(stab.order(), BigUint::from(expect));
            // contains the pointwise stabilizer
            let pw = g.pointwise_stabilizer(&s).unwrap();
            for gen in pw.generators() {
                assert!(stab.contains(gen));
            }
        }
    }

    #[test]
    fn transitivity_examples() {
        assert!(s5().is_t_transitive(5).unwrap());
        let c5 = PermGroup::new(5, vec![perm_from_cycles(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(c5.is_t_transitive(1).unwrap());
        assert!(!c5.is_t_transitive(2).unwrap());
        assert!(c5.is_t_homogeneous(1).unwrap());
        // transitive => 1-homogeneous
        assert!(s4().is_t_homogeneous(1).unwrap());
        // t-transitive implies t-homogeneous on this corpus
        for t in 1..=3 {
            if s4().is_t_transitive(t).unwrap() {
                assert!(s4().is_t_homogeneous(t).unwrap());
            }
        }
        assert!(s4().is_t_transitive(0).is_err());
    }

    #[test]
    fn subset_ranker_roundtrip() {
        let r = SubsetRanker::new(10, 3);
        let mut subset = vec![0u32, 1, 2];
        let mut count = 0usize;
        let mut seen = std::collections::HashSet::new();
        loop {
            let rank = r.rank(&subset);
            assert!(rank < 120);
            assert!(seen.insert(rank));
            assert_eq!(r.unrank(rank as u64), subset);
            count += 1;
            if !next_subset(&mut subset, 10) {
                break;
            }
        }
        assert_eq!(count, 120);
    }

    #[test]
    fn group_file_roundtrip() {
        let g = s4();
        let text = format_group(&g);
        let h = parse_group(&text).unwrap();
        assert_eq!(h.order(), g.order());
        assert!(parse_group("nope").is_err());
        assert!(parse_group("degree 3\n0 1\n").is_err());
    }
}
