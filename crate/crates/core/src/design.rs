//! Finite incidence structures: t-design verification, parameters, derived
//! designs, automorphism checks and the full automorphism group by
//! partition-refined backtracking.
//!
//! Blocks are sorted integer lists kept in a global lexicographic order, so
//! design files are diffable across runs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{binomial_u128, Perm, PermGroup, SubsetRanker};

/// A validated t-(v,k,lambda) design. Every t-subset of points lies in
/// exactly `lambda` blocks; invariants are established by `Design::verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub t: u32,
    pub v: u32,
    pub k: u32,
    pub lambda: u64,
    blocks: Vec<Vec<u32>>,
}

/// An incident point-block pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flag {
    pub point: u32,
    pub block: usize,
}

/// Replication numbers of a validated design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub b: u64,
    /// Blocks through one point.
    pub r: u64,
    /// Blocks through one pair of points (needs t >= 2).
    pub lambda2: Option<u64>,
}

/// What a group does to a design.
#[derive(Debug, Clone, Serialize)]
pub struct TransitivityReport {
    pub point_trans_degree: u32,
    pub point_homog_degree: u32,
    pub block_transitive: bool,
    pub flag_transitive: bool,
    pub flag_orbit_count: u64,
}

impl Design {
    /// Validate a block list as a t-(v,k,lambda) design. Coverage is counted
    /// by walking each block's t-subsets into a dense counter array of size
    /// C(v,t) (bounded at 10^8), never by probing uncovered subsets blindly.
    pub fn verify(blocks: Vec<Vec<u32>>, t: u32, v: u32, k: u32, lambda: u64) -> Result<Design> {
        if blocks.is_empty() {
            return Err(Error::BadBlock("block list is empty".into()));
        }
        if t < 1 || t > k || k > v {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= t <= k <= v, got t={} k={} v={}",
                t, k, v
            )));
        }
        let space = binomial_u128(v as u64, t as u64);
        if space > 100_000_000 {
            return Err(Error::BoundExceeded(format!(
                "C({},{}) = {} coverage counters exceed 10^8",
                v, t, space
            )));
        }
        if lambda == 0 || lambda > u8::MAX as u64 - 1 {
            return Err(Error::InvalidParameter(format!("lambda = {} unsupported", lambda)));
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if b.len() != k as usize {
                return Err(Error::BadBlock(format!(
                    "block {:?} has {} points, expected {}",
                    b,
                    b.len(),
                    k
                )));
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadBlock(format!("block {:?} repeats a point", b)));
            }
            if *b.last().unwrap() >= v {
                return Err(Error::BadBlock(format!("block {:?} exceeds v = {}", b, v)));
            }
        }
        blocks.sort_unstable();
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadBlock("duplicate block".into()));
        }
        let ranker = SubsetRanker::new(v, t);
        let mut counts = vec![0u8; space as usize];
        let mut subset_idx: Vec<usize> = (0..t as usize).collect();
        for block in &blocks {
            loop {
                let subset: Vec<u32> = subset_idx.iter().map(|&i| block[i]).collect();
                let c = &mut counts[ranker.rank(&subset)];
                *c = c.saturating_add(1);
                if !next_index_subset(&mut subset_idx, k as usize) {
                    break;
                }
            }
            subset_idx.iter_mut().enumerate().for_each(|(i, x)| *x = i);
        }
        for (rank, &c) in counts.iter().enumerate() {
            if c as u64 != lambda {
                return Err(Error::CoverageMismatch {
                    t_subset: ranker.unrank(rank as u64),
                    count: c as u64,
                    lambda,
                });
            }
        }
        Ok(Design {
            t,
            v,
            k,
            lambda,
            blocks,
        })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn b(&self) -> u64 {
        self.blocks.len() as u64
    }

    /// All flags in (block, point) order.
    pub fn flags(&self) -> Vec<Flag> {
        let mut out = Vec::with_capacity(self.blocks.len() * self.k as usize);
        for (bi, block) in self.blocks.iter().enumerate() {
            for &x in block {
                out.push(Flag { point: x, block: bi });
            }
        }
        out
    }

    /// b, r and lambda_2, each verified against actual incidence counts.
    pub fn params(&self) -> Result<DesignParams> {
        let b = self.b();
        // r: count blocks through each point; all must agree
        let mut per_point = vec![0u64; self.v as usize];
        for block in &self.blocks {
            for &x in block {
                per_point[x as usize] += 1;
            }
        }
        let r = per_point[0];
        if per_point.iter().any(|&c| c != r) {
            return Err(Error::InvalidParameter(
                "point replication is not constant".into(),
            ));
        }
        if b * self.k as u64 != self.v as u64 * r {
            return Err(Error::InvalidParameter("bk = vr fails".into()));
        }
        let lambda2 = if self.t >= 2 {
            let mut pair_counts: HashMap<(u32, u32), u64> = HashMap::new();
            for block in &self.blocks {
                for i in 0..block.len() {
                    for j in i + 1..block.len() {
                        *pair_counts.entry((block[i], block[j])).or_insert(0) += 1;
                    }
                }
            }
            let l2 = *pair_counts.get(&(self.blocks[0][0], self.blocks[0][1])).unwrap();
            // r(k-1) = lambda2 (v-1)
            if r * (self.k as u64 - 1) != l2 * (self.v as u64 - 1) {
                return Err(Error::InvalidParameter("r(k-1) = lambda2(v-1) fails".into()));
            }
            let expect = binomial_u128(self.v as u64, 2) as u64;
            if pair_counts.len() as u64 != expect || pair_counts.values().any(|&c| c != l2) {
                return Err(Error::InvalidParameter(
                    "pair replication is not constant".into(),
                ));
            }
            Some(l2)
        } else {
            None
        };
        Ok(DesignParams { b, r, lambda2 })
    }

    /// Derived design at x: blocks through x with x removed, points
    /// reindexed order-preservingly; validated as a (t-1)-design.
    pub fn derived(&self, x: u32) -> Result<Design> {
        if x >= self.v {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.v,
            });
        }
        if self.t < 2 {
            return Err(Error::InvalidParameter("derived design needs t >= 2".into()));
        }
        let reindex = |y: u32| if y > x { y - 1 } else { y };
        let blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .filter(|b| b.binary_search(&x).is_ok())
            .map(|b| b.iter().filter(|&&y| y != x).map(|&y| reindex(y)).collect())
            .collect();
        Design::verify(blocks, self.t - 1, self.v - 1, self.k - 1, self.lambda)
    }

    /// Index lookup for a sorted block.
    pub fn block_index(&self, block: &[u32]) -> Option<usize> {
        self.blocks.binary_search_by(|b| b.as_slice().cmp(block)).ok()
    }

    /// Induced block permutation of a point permutation, if incidence is
    /// preserved.
    pub fn induced_block_perm(&self, g: &Perm) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            let img = g.apply_set(block);
            out.push(self.block_index(&img)?);
        }
        Some(out)
    }
}

fn next_index_subset(subset: &mut [usize], n: usize) -> bool {
    let t = subset.len();
    let mut i = t;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < n - (t - i) {
            subset[i] += 1;
            for j in i + 1..t {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
}

/// True iff every generator of G maps the block set onto itself.
pub fn is_automorphism_group(design: &Design, group: &PermGroup) -> Result<bool> {
    if group.degree() != design.v {
        return Err(Error::DegreeMismatch {
            expected: design.v,
            got: group.degree(),
        });
    }
    Ok(group
        .generators()
        .iter()
        .all(|g| design.induced_block_perm(g).is_some()))
}

/// Transitivity data of an automorphism group on points, blocks and flags.
pub fn transitivity_report(design: &Design, group: &PermGroup) -> Result<TransitivityReport> {
    if !is_automorphism_group(design, group)? {
        return Err(Error::NotAutomorphismGroup);
    }
    let block_perms: Vec<Vec<usize>> = group
        .generators()
        .iter()
        .map(|g| design.induced_block_perm(g).unwrap())
        .collect();

    // flag orbits by union-find over flag indices (block-major)
    let k = design.k as usize;
    let nflags = design.blocks.len() * k;
    let mut parent: Vec<u32> = (0..nflags as u32).collect();
    fn find(parent: &mut [u32], x: usize) -> usize {
        let mut root = x;
        while parent[root] as usize != root {
            root = parent[root] as usize;
        }
        let mut cur = x;
        while cur != root {
            let nxt = parent[cur] as usize;
            parent[cur] = root as u32;
            cur = nxt;
        }
        root
    }
    let pos_in_block: Vec<HashMap<u32, usize>> = design
        .blocks
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();
    for (g, bp) in group.generators().iter().zip(&block_perms) {
        for (bi, block) in design.blocks.iter().enumerate() {
            let target = bp[bi];
            for (pi, &x) in block.iter().enumerate() {
                let y = g.apply(x);
                let qi = pos_in_block[target][&y];
                let a = find(&mut parent, bi * k + pi);
                let b = find(&mut parent, target * k + qi);
                if a != b {
                    parent[a.max(b)] = a.min(b) as u32;
                }
            }
        }
    }
    let flag_orbit_count = (0..nflags).filter(|&i| parent[i] as usize == i).count() as u64;

    // block orbits via union-find too
    let mut bparent: Vec<u32> = (0..design.blocks.len() as u32).collect();
    for bp in &block_perms {
        for (bi, &ti) in bp.iter().enumerate() {
            let a = find(&mut bparent, bi);
            let b = find(&mut bparent, ti);
            if a != b {
                bparent[a.max(b)] = a.min(b) as u32;
            }
        }
    }
    let block_orbits = (0..design.blocks.len())
        .filter(|&i| bparent[i] as usize == i)
        .count();

    let mut point_trans_degree = 0;
    for t in 1..=design.v {
        match group.is_t_transitive(t) {
            Ok(true) => point_trans_degree = t,
            _ => break,
        }
    }
    let mut point_homog_degree = 0;
    for t in 1..=design.v {
        match group.is_t_homogeneous(t) {
            Ok(true) => point_homog_degree = t,
            _ => break,
        }
    }
    Ok(TransitivityReport {
        point_trans_degree,
        point_homog_degree,
        block_transitive: block_orbits == 1,
        flag_transitive: flag_orbit_count == 1,
        flag_orbit_count,
    })
}

/// The full automorphism group by point-partition backtracking.
///
/// A strong generating set relative to the base 0,1,...,v-1 is assembled
/// level by level: for each level p and candidate image y, one completion is
/// searched that fixes 0..p-1 pointwise and maps p to y. Pruning uses the
/// per-point profile of partially-mapped block sizes and, for lambda = 1,
/// the forced image block once t points of a block are mapped.
pub fn automorphism_group(design: &Design) -> Result<PermGroup> {
    if design.v > 24 || design.b() > 1000 {
        return Err(Error::BoundExceeded(format!(
            "automorphism search is bounded at v <= 24, b <= 1000 (got v={}, b={})",
            design.v,
            design.b()
        )));
    }
    let search = AutSearch::new(design);
    let v = design.v;
    let mut strong: Vec<Perm> = Vec::new();
    for level in 0..v {
        // orbit of `level` under the strong generators fixing 0..level-1
        let level_gens: Vec<&Perm> = strong
            .iter()
            .filter(|g| (0..level).all(|x| g.apply(x) == x))
            .collect();
        let mut orbit: HashSet<u32> = HashSet::new();
        orbit.insert(level);
        let mut stack = vec![level];
        while let Some(x) = stack.pop() {
            for g in &level_gens {
                let y = g.apply(x);
                if orbit.insert(y) {
                    stack.push(y);
                }
            }
        }
        for y in level + 1..v {
            if orbit.contains(&y) {
                continue;
            }
            if let Some(g) = search.complete(level, y) {
                // grow the orbit with the new generator
                strong.push(g);
                let level_gens: Vec<Perm> = strong
                    .iter()
                    .filter(|g| (0..level).all(|x| g.apply(x) == x))
                    .cloned()
                    .collect();
                let mut stack: Vec<u32> = orbit.iter().copied().collect();
                while let Some(x) = stack.pop() {
                    for g in &level_gens {
                        let yy = g.apply(x);
                        if orbit.insert(yy) {
                            stack.push(yy);
                        }
                    }
                }
            }
        }
    }
    PermGroup::new(v, strong)
}

struct AutSearch<'a> {
    design: &'a Design,
    /// blocks through each point
    through: Vec<Vec<usize>>,
    /// sorted t-subset -> block index (lambda = 1 only)
    block_of_tset: Option<HashMap<Vec<u32>, usize>>,
    block_set: HashSet<Vec<u32>>,
}

impl<'a> AutSearch<'a> {
    fn new(design: &'a Design) -> AutSearch<'a> {
        let mut through = vec![Vec::new(); design.v as usize];
        for (bi, block) in design.blocks.iter().enumerate() {
            for &x in block {
                through[x as usize].push(bi);
            }
        }
        let block_of_tset = if design.lambda == 1 {
            let mut map = HashMap::new();
            let mut idxs: Vec<usize> = (0..design.t as usize).collect();
            for (bi, block) in design.blocks.iter().enumerate() {
                loop {
                    let subset: Vec<u32> = idxs.iter().map(|&i| block[i]).collect();
                    map.insert(subset, bi);
                    if !next_index_subset(&mut idxs, design.k as usize) {
                        break;
                    }
                }
                idxs.iter_mut().enumerate().for_each(|(i, x)| *x = i);
            }
            Some(map)
        } else {
            None
        };
        let block_set = design.blocks.iter().cloned().collect();
        AutSearch {
            design,
            through,
            block_of_tset,
            block_set,
        }
    }

    /// Search one automorphism fixing 0..level-1 pointwise with level -> y.
    fn complete(&self, level: u32, y: u32) -> Option<Perm> {
        let v = self.design.v as usize;
        let mut state = AutState {
            image: vec![u32::MAX; v],
            used: vec![false; v],
            num_mapped: 0,
            dom_cnt: vec![0u32; self.design.blocks.len()],
            img_cnt: vec![0u32; self.design.blocks.len()],
            forced: vec![usize::MAX; self.design.blocks.len()],
        };
        let mut scratch = Vec::new();
        for x in 0..level {
            if !self.assign(&mut state, x, x, &mut scratch) {
                return None;
            }
        }
        if !self.profile_ok(&state, level, y) {
            return None;
        }
        if !self.assign(&mut state, level, y, &mut scratch) {
            return None;
        }
        self.dfs(&mut state, 0)
            .then(|| Perm::new(state.image.clone()).expect("completed map is a bijection"))
    }

    fn dfs(&self, state: &mut AutState, from: u32) -> bool {
        let v = self.design.v;
        let x = match (from..v).find(|&x| state.image[x as usize] == u32::MAX) {
            Some(x) => x,
            None => return self.final_check(state),
        };
        for y in 0..v {
            if state.used[y as usize] {
                continue;
            }
            if !self.profile_ok(state, x, y) {
                continue;
            }
            let mut newly_forced = Vec::new();
            let ok = self.assign(state, x, y, &mut newly_forced);
            if ok && self.dfs(state, x + 1) {
                return true;
            }
            self.unassign(state, x, y, &newly_forced);
        }
        false
    }

    /// Multiset of partially-mapped sizes of blocks through x must match the
    /// image-side multiset through y. Once the forced-block pruning has
    /// taken over (lambda = 1, enough points mapped), this check is skipped.
    fn profile_ok(&self, state: &AutState, x: u32, y: u32) -> bool {
        if self.block_of_tset.is_some() && state.num_mapped >= 2 * self.design.t {
            return true;
        }
        let mut a: Vec<u32> = self.through[x as usize]
            .iter()
            .map(|&bi| state.dom_cnt[bi])
            .collect();
        let mut b: Vec<u32> = self.through[y as usize]
            .iter()
            .map(|&bi| state.img_cnt[bi])
            .collect();
        if a.len() != b.len() {
            return false;
        }
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    fn assign(&self, state: &mut AutState, x: u32, y: u32, newly_forced: &mut Vec<usize>) -> bool {
        state.image[x as usize] = y;
        state.used[y as usize] = true;
        state.num_mapped += 1;
        for &bi in &self.through[y as usize] {
            state.img_cnt[bi] += 1;
        }
        let t = self.design.t;
        let mut ok = true;
        for &bi in &self.through[x as usize] {
            state.dom_cnt[bi] += 1;
            if !ok {
                continue;
            }
            if let Some(map) = &self.block_of_tset {
                let cnt = state.dom_cnt[bi];
                if cnt == t {
                    // any t points determine a block: pin the image block
                    let block = &self.design.blocks[bi];
                    let mut imgs: Vec<u32> = block
                        .iter()
                        .filter(|&&p| state.image[p as usize] != u32::MAX)
                        .map(|&p| state.image[p as usize])
                        .collect();
                    imgs.sort_unstable();
                    let target = map[&imgs];
                    state.forced[bi] = target;
                    newly_forced.push(bi);
                } else if cnt > t {
                    let target = state.forced[bi];
                    if self.design.blocks[target].binary_search(&y).is_err() {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn unassign(&self, state: &mut AutState, x: u32, y: u32, newly_forced: &[usize]) {
        for &bi in newly_forced {
            state.forced[bi] = usize::MAX;
        }
        state.image[x as usize] = u32::MAX;
        state.used[y as usize] = false;
        state.num_mapped -= 1;
        for &bi in &self.through[x as usize] {
            state.dom_cnt[bi] -= 1;
        }
        for &bi in &self.through[y as usize] {
            state.img_cnt[bi] -= 1;
        }
    }

    fn final_check(&self, state: &AutState) -> bool {
        let perm = match Perm::new(state.image.clone()) {
            Ok(p) => p,
            Err(_) => return false,
        };
        self.design
            .blocks
            .iter()
            .all(|b| self.block_set.contains(&perm.apply_set(b)))
    }
}

struct AutState {
    image: Vec<u32>,
    used: Vec<bool>,
    num_mapped: u32,
    dom_cnt: Vec<u32>,
    img_cnt: Vec<u32>,
    forced: Vec<usize>,
}

// --- design file format ------------------------------------------------

/// Serialize in the canonical text format: "t v k lambda b" then one sorted
/// block per line, lines in lexicographic order.
pub fn format_design(d: &Design) -> String {
    let mut out = format!("{} {} {} {} {}\n", d.t, d.v, d.k, d.lambda, d.b());
    for block in d.blocks() {
        let words: Vec<String> = block.iter().map(|x| x.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Parse and re-validate a design file.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty design file".into()))?;
    let nums: std::result::Result<Vec<u64>, _> =
        header.split_whitespace().map(|w| w.parse()).collect();
    let nums = nums.map_err(|_| Error::Parse(format!("bad header {:?}", header)))?;
    if nums.len() != 5 {
        return Err(Error::Parse("header must be 't v k lambda b'".into()));
    }
    let (t, v, k, lambda, b) = (nums[0] as u32, nums[1] as u32, nums[2] as u32, nums[3], nums[4]);
    let mut blocks = Vec::new();
    for line in lines {
        let row: std::result::Result<Vec<u32>, _> =
            line.split_whitespace().map(|w| w.parse()).collect();
        let row = row.map_err(|_| Error::Parse(format!("bad block line {:?}", line)))?;
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("block line not sorted: {:?}", line)));
        }
        blocks.push(row);
    }
    if blocks.len() as u64 != b {
        return Err(Error::Parse(format!(
            "header promises {} blocks, file has {}",
            b,
            blocks.len()
        )));
    }
    if blocks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("block lines not in lexicographic order".into()));
    }
    Design::verify(blocks, t, v, k, lambda)
}

/// b = lambda C(v,t) / C(k,t) as an exact big integer, when integral.
pub fn block_count_formula(t: u32, v: u32, k: u32, lambda: u64) -> Option<BigUint> {
    let num = big_binomial(v as u64, t as u64) * BigUint::from(lambda);
    let den = big_binomial(k as u64, t as u64);
    (num.clone() % &den == BigUint::from(0u32)).then(|| num / den)
}

pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// All k-subsets of {0..v-1}: the trivial design for any t <= k.
pub fn all_k_subsets(v: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut subset: Vec<u32> = (0..k).collect();
    loop {
        out.push(subset.clone());
        if !crate::perm::next_subset(&mut subset, v) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm_from_cycles;
    use num_bigint::BigUint;

    fn fano_blocks() -> Vec<Vec<u32>> {
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ]
    }

    #[test]
    fn verify_trivial_design() {
        // all triples of a 7-set form the trivial 3-(7,3,1)
        let d = Design::verify(all_k_subsets(7, 3), 3, 7, 3, 1).unwrap();
        assert_eq!(d.b(), 35);
        let p = d.params().unwrap();
        assert_eq!(p.r, 15); // C(6,2)
    }

    #[test]
    fn verify_fano_and_witness() {
        let d = Design::verify(fano_blocks(), 2, 7, 3, 1).unwrap();
        assert_eq!(d.b(), 7);
        assert_eq!(
            d.params().unwrap(),
            DesignParams {
                b: 7,
                r: 3,
                lambda2: Some(1)
            }
        );
        // removing a block leaves a witness pair
        let mut blocks = fano_blocks();
        blocks.pop();
        match Design::verify(blocks, 2, 7, 3, 1) {
            Err(Error::CoverageMismatch { t_subset, count, lambda }) => {
                assert_eq!(count, 0);
                assert_eq!(lambda, 1);
                assert_eq!(t_subset.len(), 2);
            }
            other => panic!("expected coverage witness, got {:?}", other),
        }
    }

    #[test]
    fn verify_rejects_bad_blocks() {
        assert!(matches!(
            Design::verify(vec![vec![0, 1]], 2, 7, 3, 1),
            Err(Error::BadBlock(_))
        ));
        let mut blocks = fano_blocks();
        blocks.push(vec![0, 1, 2]);
        assert!(matches!(
            Design::verify(blocks, 2, 7, 3, 1),
            Err(Error::BadBlock(_))
        ));
    }

    #[test]
    fn derived_design_drops_t() {
        // trivial 3-(6,4,3): every triple is in C(3,1) = 3 blocks
        let d = Design::verify(all_k_subsets(6, 4), 3, 6, 4, 3).unwrap();
        let dx = d.derived(2).unwrap();
        assert_eq!((dx.t, dx.v, dx.k, dx.lambda), (2, 5, 3, 3));
        assert_eq!(dx.b(), 10); // blocks through x: C(5,3)
        assert!(d.derived(9).is_err());
    }

    #[test]
    fn automorphism_checks() {
        let d = Design::verify(fano_blocks(), 2, 7, 3, 1).unwrap();
        let full = automorphism_group(&d).unwrap();
        assert_eq!(full.order(), BigUint::from(168u32));
        assert!(is_automorphism_group(&d, &full).unwrap());
        // a transposition that breaks the plane
        let swap = PermGroup::new(7, vec![perm_from_cycles(7, &[&[0, 1]])]).unwrap();
        assert!(!is_automorphism_group(&d, &swap).unwrap());
        // identity group preserves anything
        let trivial = PermGroup::trivial(7);
        assert!(is_automorphism_group(&d, &trivial).unwrap());
    }

    #[test]
    fn automorphism_group_of_trivial_design_is_symmetric() {
        let d = Design::verify(all_k_subsets(5, 2), 2, 5, 2, 1).unwrap();
        let g = automorphism_group(&d).unwrap();
        assert_eq!(g.order(), BigUint::from(120u32));
    }

    #[test]
    fn fano_report() {
        let d = Design::verify(fano_blocks(), 2, 7, 3, 1).unwrap();
        let g = automorphism_group(&d).unwrap();
        let rep = transitivity_report(&d, &g).unwrap();
        assert!(rep.flag_transitive);
        assert!(rep.block_transitive);
        assert_eq!(rep.point_trans_degree, 2);
        assert_eq!(rep.flag_orbit_count, 1);
        // trivial group: one orbit per flag
        let rep = transitivity_report(&d, &PermGroup::trivial(7)).unwrap();
        assert!(!rep.flag_transitive);
        assert_eq!(rep.flag_orbit_count, 21);
    }

    #[test]
    fn design_file_roundtrip() {
        let d = Design::verify(fano_blocks(), 2, 7, 3, 1).unwrap();
        let text = format_design(&d);
        assert!(text.starts_with("2 7 3 1 7\n"));
        let d2 = parse_design(&text).unwrap();
        assert_eq!(d, d2);
        assert!(parse_design("3 7 3 1 2\n0 1 2\n").is_err());
        assert!(parse_design("").is_err());
    }

    #[test]
    fn block_count_formula_examples() {
        assert_eq!(block_count_formula(5, 24, 8, 1), Some(BigUint::from(759u32)));
        assert_eq!(block_count_formula(5, 12, 6, 1), Some(BigUint::from(132u32)));
        assert_eq!(block_count_formula(5, 8, 6, 1), None); // 56/6
    }
}
