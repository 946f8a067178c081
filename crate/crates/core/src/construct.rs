//! Named design constructions: the plane designs of AG(d,2), spherical
//! designs on the projective line, the sixth-root extension designs with
//! their triple-system derivations, and the two Witt 5-designs found as
//! base-block orbits under PSL(2,q).

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::design::{block_count_formula, transitivity_report, Design};
use crate::error::{Error, Result};
use crate::gf::{prime_power_decompose, Field};
use crate::perm::{Perm, PermGroup};
use crate::pgl::{GroupFamily, ProjectiveLine, PslContext};

/// Certificate for a base-block orbit construction.
#[derive(Debug, Clone, Serialize)]
pub struct BaseBlockCertificate {
    pub q: u64,
    pub group: String,
    pub base_block: Vec<u32>,
    pub orbit_length: u64,
    pub stabilizer_order: u64,
}

/// Outcome of the flag-transitivity sharpness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sharpness {
    pub flag_transitive: bool,
    pub sharply: bool,
}

/// The 3-(2^d, 4, 1) design of points and planes of AG(d,2).
///
/// Blocks are the 4-sets {x, y, z, x^y^z}; enumerating sorted triples and
/// keeping the completions that extend them upward lists each plane once.
pub fn ag_plane_design(d: u32) -> Result<Design> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!(
            "affine plane design needs d >= 3, got {}",
            d
        )));
    }
    if d > 16 {
        return Err(Error::BoundExceeded(format!("d = {} too large", d)));
    }
    let n = 1u32 << d;
    let mut blocks = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let w = x ^ y ^ z;
                if w > z {
                    blocks.push(vec![x, y, z, w]);
                }
            }
        }
    }
    Design::verify(blocks, 3, n, 4, 1)
}

/// Orbit of a point set under a list of generators, with an optional cutoff.
/// Returns the sorted, deduplicated list of sets.
pub fn set_orbit(gens: &[Perm], start: &[u32], cutoff: Option<usize>) -> Option<Vec<Vec<u32>>> {
    let mut start = start.to_vec();
    start.sort_unstable();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let img = g.apply_set(&cur);
            if !seen.contains(&img) {
                if let Some(cap) = cutoff {
                    if seen.len() >= cap {
                        return None;
                    }
                }
                seen.insert(img.clone());
                queue.push(img);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort_unstable();
    Some(out)
}

/// The 3-(q^e + 1, q + 1, 1) design on PL(q^e) whose blocks are the images
/// of the subline GF(q) u {oo} under PGL(2, q^e).
pub fn spherical_design(q: u64, e: u32) -> Result<Design> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("need q >= 3, got {}", q)));
    }
    if e < 2 {
        return Err(Error::InvalidParameter(format!("need e >= 2, got {}", e)));
    }
    let (p, f) = prime_power_decompose(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a prime power", q)))?;
    let big_q = q
        .checked_pow(e)
        .filter(|&bq| bq + 1 <= (1 << 16))
        .ok_or_else(|| Error::BoundExceeded(format!("q^e + 1 = {}^{}+1 exceeds 2^16", q, e)))?;
    let field = Field::new(p, f * e)?;
    let line = ProjectiveLine::new(field);
    // the subfield of order q is exactly the fixed set of x -> x^q
    let mut subline: Vec<u32> = line
        .field
        .elements()
        .filter(|z| line.field.pow(z, q as i64).unwrap() == *z)
        .map(|z| line.point_of_elem(&z))
        .collect();
    subline.push(line.infinity());
    debug_assert_eq!(subline.len() as u64, q + 1);
    let pgl = GroupFamily::Pgl2 { q: big_q }.build()?;
    let blocks =
        set_orbit(pgl.generators(), &subline, None).expect("unbounded orbit cannot abort");
    Design::verify(blocks, 3, (big_q + 1) as u32, (q + 1) as u32, 1)
}

/// The 3-(q+1, 4, 1) extension design for q = 7 (mod 12): the PSL(2,q) orbit
/// of {0, 1, eps, oo} with eps a primitive sixth root of unity. Its derived
/// design at any point is the Netto triple system.
pub fn netto_extension_design(q: u64) -> Result<Design> {
    if q % 12 != 7 {
        return Err(Error::InvalidParameter(format!(
            "extension design needs q = 7 (mod 12), got {}",
            q
        )));
    }
    let ctx = PslContext::new(q)?;
    let f = &ctx.line.field;
    let eps = f.primitive_sixth_root()?;
    let base = vec![
        ctx.line.point_of_elem(&f.zero()),
        ctx.line.point_of_elem(&f.one()),
        ctx.line.point_of_elem(&eps),
        ctx.line.infinity(),
    ];
    let blocks = set_orbit(&ctx.gens, &base, None).expect("unbounded orbit cannot abort");
    Design::verify(blocks, 3, (q + 1) as u32, 4, 1)
}

/// The Witt 5-designs via deterministic base-block search under PSL(2,q):
/// q = 23 yields the 5-(24,8,1), q = 11 the 5-(12,6,1).
///
/// The block stabilizer has order |G| / b, so the block is a union of orbits
/// of a cyclic subgroup of prime order dividing that; those unions are
/// enumerated in a fixed order and the first whose orbit closes at b blocks
/// and validates wins. A lexicographic whole-block sweep backs this up.
pub fn witt_design_via_psl(q: u64) -> Result<(Design, BaseBlockCertificate)> {
    let (t, k): (u32, u32) = match q {
        23 => (5, 8),
        11 => (5, 6),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Witt construction is defined for q in {{11, 23}}, got {}",
                q
            )))
        }
    };
    let v = (q + 1) as u32;
    let b_target = {
        let b = block_count_formula(t, v, k, 1).expect("parameters are feasible");
        b.to_u64_digits()[0]
    };
    let ctx = PslContext::new(q)?;
    let group = ctx.group();
    let group_order = group.order_u64();
    let stab_target = group_order / b_target;

    let design = search_base_block_orbit(&ctx, t, v, k, b_target, stab_target)?;

    // canonical certificate: lexicographically least block of the design
    let base_block = design.blocks()[0].clone();
    let stab = group.setwise_stabilizer(&base_block)?;
    let stabilizer_order = stab.order_u64();
    let orbit_length = design.b();
    if orbit_length * stabilizer_order != group_order {
        return Err(Error::InvalidParameter(
            "orbit-stabilizer accounting failed".into(),
        ));
    }
    Ok((
        design,
        BaseBlockCertificate {
            q,
            group: format!("PSL(2,{})", q),
            base_block,
            orbit_length,
            stabilizer_order,
        },
    ))
}

fn search_base_block_orbit(
    ctx: &PslContext,
    t: u32,
    v: u32,
    k: u32,
    b_target: u64,
    stab_target: u64,
) -> Result<Design> {
    let smallest_prime = crate::gf::prime_factors(stab_target)
        .into_iter()
        .min()
        .unwrap_or(stab_target);
    // orbits of a cyclic group of that prime order seed the candidates
    if smallest_prime > 1 {
        if let Ok(cyc) = ctx.element_of_order(smallest_prime) {
            let cyc_group = PermGroup::new(ctx.line.size(), vec![cyc])?;
            let all: Vec<u32> = (0..ctx.line.size()).collect();
            let orbits = cyc_group.orbits(&all)?.orbits;
            let mut chosen: Vec<usize> = Vec::new();
            if let Some(d) = try_orbit_unions(ctx, &orbits, &mut chosen, 0, 0, t, v, k, b_target) {
                return Ok(d);
            }
        }
    }
    // fallback: plain lexicographic sweep over k-subsets
    let mut subset: Vec<u32> = (0..k).collect();
    loop {
        if let Some(d) = try_candidate(ctx, &subset, t, v, k, b_target) {
            return Ok(d);
        }
        if !crate::perm::next_subset(&mut subset, v) {
            return Err(Error::InvalidParameter(format!(
                "no base block found for 5-({},{},1)",
                v, k
            )));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn try_orbit_unions(
    ctx: &PslContext,
    orbits: &[Vec<u32>],
    chosen: &mut Vec<usize>,
    next: usize,
    size: u32,
    t: u32,
    v: u32,
    k: u32,
    b_target: u64,
) -> Option<Design> {
    if size == k {
        let mut cand: Vec<u32> = chosen
            .iter()
            .flat_map(|&i| orbits[i].iter().copied())
            .collect();
        cand.sort_unstable();
        return try_candidate(ctx, &cand, t, v, k, b_target);
    }
    for i in next..orbits.len() {
        let olen = orbits[i].len() as u32;
        if size + olen > k {
            continue;
        }
        chosen.push(i);
        if let Some(d) = try_orbit_unions(ctx, orbits, chosen, i + 1, size + olen, t, v, k, b_target)
        {
            return Some(d);
        }
        chosen.pop();
    }
    None
}

fn try_candidate(
    ctx: &PslContext,
    cand: &[u32],
    t: u32,
    v: u32,
    k: u32,
    b_target: u64,
) -> Option<Design> {
    let blocks = set_orbit(&ctx.gens, cand, Some(b_target as usize + 1))?;
    if blocks.len() as u64 != b_target {
        return None;
    }
    Design::verify(blocks, t, v, k, 1).ok()
}

/// Flag-transitivity plus the sharpness test |G| = bk.
pub fn sharpness_check(design: &Design, group: &PermGroup) -> Result<Sharpness> {
    let report = transitivity_report(design, group)?;
    let flag_count = BigUint::from(design.b()) * BigUint::from(design.k as u64);
    Ok(Sharpness {
        flag_transitive: report.flag_transitive,
        sharply: report.flag_transitive && group.order() == flag_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::is_automorphism_group;

    #[test]
    fn ag_plane_examples() {
        let d3 = ag_plane_design(3).unwrap();
        assert_eq!((d3.t, d3.v, d3.k, d3.b()), (3, 8, 4, 14));
        let d4 = ag_plane_design(4).unwrap();
        assert_eq!((d4.v, d4.b()), (16, 140));
        assert!(ag_plane_design(2).is_err());
    }

    #[test]
    fn ag_plane_admits_agl() {
        let d = ag_plane_design(4).unwrap();
        let g = GroupFamily::AffineSl { d: 4 }.build().unwrap();
        assert!(is_automorphism_group(&d, &g).unwrap());
        let rep = transitivity_report(&d, &g).unwrap();
        assert!(rep.flag_transitive);
    }

    #[test]
    fn spherical_examples() {
        let d = spherical_design(3, 2).unwrap();
        assert_eq!((d.t, d.v, d.k, d.b()), (3, 10, 4, 30));
        let d = spherical_design(4, 2).unwrap();
        assert_eq!((d.v, d.k, d.b()), (17, 5, 68));
        assert!(spherical_design(3, 1).is_err());
        assert!(spherical_design(2, 2).is_err());
    }

    #[test]
    fn spherical_derived_is_affine_line_design() {
        let d = spherical_design(3, 2).unwrap();
        // derived design at any point: the 2-(9,3,1) of AG(2,3)
        let dx = d.derived(0).unwrap();
        assert_eq!((dx.t, dx.v, dx.k, dx.b()), (2, 9, 3, 12));
    }

    #[test]
    fn netto_examples() {
        let d = netto_extension_design(7).unwrap();
        assert_eq!((d.t, d.v, d.k, d.b()), (3, 8, 4, 14));
        let d19 = netto_extension_design(19).unwrap();
        assert_eq!((d19.v, d19.b()), (20, 285));
        assert!(netto_extension_design(13).is_err());
        // invariant under PSL(2,q) by construction
        let g = GroupFamily::Psl2 { q: 19 }.build().unwrap();
        assert!(is_automorphism_group(&d19, &g).unwrap());
        // derived design is a triple system
        let triples = d19.derived(3).unwrap();
        assert_eq!((triples.t, triples.v, triples.k), (2, 19, 3));
    }

    #[test]
    fn witt_12_construction() {
        let (d, cert) = witt_design_via_psl(11).unwrap();
        assert_eq!((d.t, d.v, d.k, d.b()), (5, 12, 6, 132));
        assert_eq!(cert.orbit_length, 132);
        assert_eq!(cert.stabilizer_order, 5);
        let g = GroupFamily::Psl2 { q: 11 }.build().unwrap();
        assert!(is_automorphism_group(&d, &g).unwrap());
        assert!(witt_design_via_psl(13).is_err());
    }

    #[test]
    fn witt_24_construction_and_sharpness() {
        let (d, cert) = witt_design_via_psl(23).unwrap();
        assert_eq!((d.t, d.v, d.k, d.b()), (5, 24, 8, 759));
        assert_eq!(cert.stabilizer_order, 8);
        let g = GroupFamily::Psl2 { q: 23 }.build().unwrap();
        let sharp = sharpness_check(&d, &g).unwrap();
        assert!(sharp.flag_transitive);
        assert!(sharp.sharply); // 6072 = 759 * 8
        // derived chain: 4-(23,7,1) then 3-(22,6,1)
        let d4 = d.derived(0).unwrap();
        assert_eq!((d4.t, d4.v, d4.k, d4.b()), (4, 23, 7, 253));
        let d3 = d4.derived(0).unwrap();
        assert_eq!((d3.t, d3.v, d3.k, d3.b()), (3, 22, 6, 77));
    }

    #[test]
    fn sharpness_trivial_group() {
        let d = ag_plane_design(3).unwrap();
        let sharp = sharpness_check(&d, &PermGroup::trivial(8)).unwrap();
        assert!(!sharp.flag_transitive);
        assert!(!sharp.sharply);
    }
}
