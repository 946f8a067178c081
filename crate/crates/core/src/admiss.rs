//! Arithmetic admissibility of design parameters and the flag-transitivity
//! constraints: replication integrality, the Cameron bounds and the block
//! size corollary, the r | |G_x| divisibility filter, the two-point flag
//! equation, the divisibility condition on affine 2^d-3, and the equation
//! families that drive the projective-line case analysis for t = 5 and 6.
//!
//! Everything here is exact big-integer arithmetic; no filter depends on
//! machine word width.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_power_decompose};

/// big binomial, shared with the design module
pub use crate::design::big_binomial;

/// A feasible parameter tuple with its derived replication numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    pub t: u32,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub b: BigUint,
    pub r: BigUint,
    pub lambda2: Option<BigUint>,
}

impl ParamSet {
    /// True in the non-trivial range t < k < v.
    pub fn non_trivial(&self) -> bool {
        (self.t as u64) < self.k && self.k < self.v
    }
}

/// Which integrality failed, when a tuple is arithmetically impossible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Infeasible {
    pub failed_identity: String,
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "infeasible: {} is not integral", self.failed_identity)
    }
}

/// lambda_i = lambda C(v-i, t-i) / C(k-i, t-i); integral for every i <= t in
/// any design.
fn lambda_level(t: u32, v: u64, k: u64, lambda: u64, i: u32) -> Option<BigUint> {
    let num = big_binomial(v - i as u64, (t - i) as u64) * BigUint::from(lambda);
    let den = big_binomial(k - i as u64, (t - i) as u64);
    if den.is_zero() {
        return None;
    }
    ((&num % &den).is_zero()).then(|| num / den)
}

/// Exact b, r, lambda2 for a t-(v,k,lambda) tuple, or the identity that
/// fails integrality.
pub fn param_arithmetic(
    t: u32,
    v: u64,
    k: u64,
    lambda: u64,
) -> Result<std::result::Result<ParamSet, Infeasible>> {
    if t == 0 || (t as u64) > k || k > v {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= k <= v, got ({}, {}, {})",
            t, v, k
        )));
    }
    let b = match lambda_level(t, v, k, lambda, 0) {
        Some(b) => b,
        None => {
            return Ok(Err(Infeasible {
                failed_identity: "b = lambda C(v,t)/C(k,t)".into(),
            }))
        }
    };
    let r = match lambda_level(t, v, k, lambda, 1) {
        Some(r) => r,
        None => {
            return Ok(Err(Infeasible {
                failed_identity: "r = lambda C(v-1,t-1)/C(k-1,t-1)".into(),
            }))
        }
    };
    let lambda2 = if t >= 2 {
        match lambda_level(t, v, k, lambda, 2) {
            Some(l2) => Some(l2),
            None => {
                return Ok(Err(Infeasible {
                    failed_identity: "lambda2 = lambda C(v-2,t-2)/C(k-2,t-2)".into(),
                }))
            }
        }
    } else {
        None
    };
    Ok(Ok(ParamSet {
        t,
        v,
        k,
        lambda,
        b,
        r,
        lambda2,
    }))
}

/// All replication levels lambda_0..lambda_{t-1} integral (lambda = 1).
pub fn steiner_all_levels_integral(t: u32, v: u64, k: u64) -> bool {
    (0..t).all(|i| lambda_level(t, v, k, 1, i).is_some())
}

/// The two parameter inequalities for non-trivial Steiner t-designs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CameronBounds {
    /// v >= (t+1)(k-t+1)
    pub a_ok: bool,
    /// v-t+1 >= (k-t+2)(k-t+1), for t > 2
    pub b_ok: bool,
    /// set when the second inequality is tight
    pub equality_case: Option<(u32, u64, u64)>,
}

pub fn cameron_bounds(t: u32, v: u64, k: u64) -> CameronBounds {
    let a_ok = v >= (t as u64 + 1) * (k - t as u64 + 1);
    if t <= 2 {
        return CameronBounds {
            a_ok,
            b_ok: true,
            equality_case: None,
        };
    }
    let lhs = v - t as u64 + 1;
    let rhs = (k - t as u64 + 2) * (k - t as u64 + 1);
    CameronBounds {
        a_ok,
        b_ok: lhs >= rhs,
        equality_case: (lhs == rhs).then_some((t, k, v)),
    }
}

fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

/// Block size bound floor(sqrt(v) + 3/2 + i) for t = 3 + i, 0 <= i <= 3.
pub fn k_upper_bound(t: u32, v: u64) -> Result<u64> {
    if !(3..=6).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "block-size bound defined for 3 <= t <= 6, got {}",
            t
        )));
    }
    let i = (t - 3) as u64;
    // floor(sqrt(v) + (3 + 2i)/2) = (floor(2 sqrt(v)) + 3 + 2i) div 2
    Ok((isqrt(4 * v) + 3 + 2 * i) / 2)
}

/// r | |G_x| for a point stabilizer: necessary for flag-transitivity.
/// Requires r itself to be integral (non-integral r is killed upstream).
pub fn divprop_filter(t: u32, v: u64, k: u64, order_gx: &BigUint) -> Result<bool> {
    if t == 0 || (t as u64) > k || k > v {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= k <= v, got ({}, {}, {})",
            t, v, k
        )));
    }
    match lambda_level(t, v, k, 1, 1) {
        Some(r) => Ok((order_gx % &r).is_zero()),
        None => Err(Error::InvalidParameter(
            "r is not integral; the tuple is already infeasible".into(),
        )),
    }
}

/// Exact test of C(v-2,t-2) = (k-1) C(k-2,t-2) |G_xy| / |G_xB| (cleared of
/// denominators).
pub fn flag_equation_check(t: u32, v: u64, k: u64, order_gxy: u64, order_gxb: u64) -> bool {
    if t < 3 || order_gxy == 0 || order_gxb == 0 {
        return false;
    }
    let lhs = big_binomial(v - 2, (t - 2) as u64) * BigUint::from(order_gxb);
    let rhs =
        BigUint::from(k - 1) * big_binomial(k - 2, (t - 2) as u64) * BigUint::from(order_gxy);
    lhs == rhs
}

/// Block-transitive 5-design condition on AG(d,2): (2^d - 3) | C(k,4).
pub fn alltop_filter(d: u32, k: u64) -> bool {
    let m = (1u64 << d) - 3;
    let c = big_binomial(k, 4);
    (c % BigUint::from(m)).is_zero()
}

/// The t = 5 projective-line equation for a flag-transitive socle:
/// (q-2)(q-3) |G_0B| n = (k-1)(k-2)(k-3)(k-4), combined with the two
/// inequalities q-3 >= (k-3)(k-4) and (q-2) |G_0B| n <= (k-1)(k-2).
pub fn case2_t5_filter(q: u64, k: u64, stab_order: u64, n: u64) -> bool {
    if k < 4 || stab_order == 0 {
        return false;
    }
    let lhs = BigUint::from(q - 2) * BigUint::from(q - 3) * BigUint::from(stab_order) * BigUint::from(n);
    let rhs = BigUint::from(k - 1) * BigUint::from(k - 2) * BigUint::from(k - 3) * BigUint::from(k - 4);
    let eq_a = q - 3 >= (k - 3) * (k - 4);
    let eq_b = BigUint::from(q - 2) * BigUint::from(stab_order) * BigUint::from(n)
        <= BigUint::from(k - 1) * BigUint::from(k - 2);
    lhs == rhs && eq_a && eq_b
}

/// The t = 6 projective-line chain: the divisibility
/// (q-2)(q-3)(q-4) | (k-1)(k-2)(k-3)(k-4)(k-5) e, the block-size bound, and
/// integrality of b, r, lambda2.
pub fn case2_t6_filter(q: u64, k: u64) -> bool {
    let (_, e) = match prime_power_decompose(q) {
        Some(pe) => pe,
        None => return false,
    };
    if k <= 6 || k > q {
        return false;
    }
    match k_upper_bound(6, q + 1) {
        Ok(bound) if k <= bound => {}
        _ => return false,
    }
    let lhs = BigUint::from(q - 2) * BigUint::from(q - 3) * BigUint::from(q - 4);
    let rhs = BigUint::from(k - 1)
        * BigUint::from(k - 2)
        * BigUint::from(k - 3)
        * BigUint::from(k - 4)
        * BigUint::from(k - 5)
        * BigUint::from(e as u64);
    if !(rhs % lhs).is_zero() {
        return false;
    }
    matches!(param_arithmetic(6, q + 1, k, 1), Ok(Ok(_)))
}

// ---------------------------------------------------------------------------
// equation scans
// ---------------------------------------------------------------------------

/// Identifiers of the displayed case equations and equation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquationId {
    /// (q-2)(q-3)|G_0B| n = (k-1)(k-2)(k-3)(k-4) over all prime powers.
    Eq0,
    /// The halved variant for an index-2 flag orbit split (odd q).
    Eq0Half,
    /// Characteristic-2 branch family over all subgroup kinds.
    CondB,
    /// Characteristic-3 branch family over all subgroup kinds.
    CondBstar,
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    /// The t = 6 divisibility chain over all prime powers.
    EqE,
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EquationId::Eq0 => "eq0",
            EquationId::Eq0Half => "eq0-half",
            EquationId::CondB => "cond-b",
            EquationId::CondBstar => "cond-b-star",
            EquationId::E1 => "e1",
            EquationId::E2 => "e2",
            EquationId::E3 => "e3",
            EquationId::E4 => "e4",
            EquationId::E5 => "e5",
            EquationId::E6 => "e6",
            EquationId::E7 => "e7",
            EquationId::E8 => "e8",
            EquationId::EqE => "eq-e",
        };
        write!(f, "{}", s)
    }
}

impl std::str::FromStr for EquationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<EquationId> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "eq0" => EquationId::Eq0,
            "eq0-half" | "eq0half" => EquationId::Eq0Half,
            "cond-b" | "condb" => EquationId::CondB,
            "cond-b-star" | "condbstar" => EquationId::CondBstar,
            "e1" => EquationId::E1,
            "e2" => EquationId::E2,
            "e3" => EquationId::E3,
            "e4" => EquationId::E4,
            "e5" => EquationId::E5,
            "e6" => EquationId::E6,
            "e7" => EquationId::E7,
            "e8" => EquationId::E8,
            "eq-e" | "eqe" => EquationId::EqE,
            other => return Err(Error::Parse(format!("unknown equation id {:?}", other))),
        })
    }
}

/// A surviving instance of one of the case equations. Scans are expected to
/// return none of these beyond the documented exceptions.
#[derive(Debug, Clone, Serialize)]
pub struct CaseEquation {
    pub id: String,
    pub q: u64,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qbar: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stab_order: Option<u64>,
    pub side_conditions: Vec<String>,
}

impl CaseEquation {
    fn new(id: EquationId, q: u64, k: u64) -> CaseEquation {
        CaseEquation {
            id: id.to_string(),
            q,
            k,
            s: None,
            u: None,
            w: None,
            c: None,
            qbar: None,
            stab_order: None,
            side_conditions: Vec::new(),
        }
    }
}

/// Caps for the scans. When absent, each equation uses the cap its own
/// derivation establishes, widened by one extra power step.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanBounds {
    /// Cap on the exponent s^u (prime-power towers q = p^(s^u)).
    pub su_cap: Option<u64>,
    /// Cap on q itself for the flat scans.
    pub q_cap: Option<u64>,
}

/// Prime powers q with 4 <= q <= cap, ascending.
pub fn prime_powers_up_to(cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in 4..=cap {
        if prime_power_decompose(q).is_some() {
            out.push(q);
        }
    }
    out
}

/// Scan the base t = 5 equation over all prime powers up to the cap; the
/// survivor set is expected to be exactly (q,k,stab) = (23,8,1).
pub fn eq0_scan(q_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(q_cap) {
        let n = if q % 2 == 1 { 2 } else { 1 };
        let bound = match k_upper_bound(5, q + 1) {
            Ok(b) => b.min(q), // non-trivial: k < v = q+1
            Err(_) => continue,
        };
        for k in 6..=bound {
            // stab range from (q-2) stab n <= (k-1)(k-2)
            let cap = (k - 1) * (k - 2) / ((q - 2) * n);
            for stab in 1..=cap.max(0) {
                if case2_t5_filter(q, k, stab, n) {
                    let mut ce = CaseEquation::new(EquationId::Eq0, q, k);
                    ce.stab_order = Some(stab);
                    ce.side_conditions.push(format!("n = {}", n));
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// Scan the halved equation (q-2)(q-3) |G_0B| = (k-1)(k-2)(k-3)(k-4) that
/// governs the index-2 flag-orbit split for odd q. The lone arithmetic
/// survivor (23,8,2) is impossible because involutions of PSL(2,q) are
/// fixed-point-free for q = 3 (mod 4); the census layer applies that step.
pub fn eq0_half_scan(q_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(q_cap) {
        if q % 2 == 0 {
            continue;
        }
        let bound = match k_upper_bound(5, q + 1) {
            Ok(b) => b.min(q),
            Err(_) => continue,
        };
        for k in 6..=bound {
            let cap = (k - 1) * (k - 2) / (q - 2);
            for stab in 1..=cap.max(0) {
                let lhs = BigUint::from(q - 2) * BigUint::from(q - 3) * BigUint::from(stab);
                let rhs = BigUint::from(k - 1)
                    * BigUint::from(k - 2)
                    * BigUint::from(k - 3)
                    * BigUint::from(k - 4);
                let eq_a = q - 3 >= (k - 3) * (k - 4);
                if lhs == rhs && eq_a {
                    let mut ce = CaseEquation::new(EquationId::Eq0Half, q, k);
                    ce.stab_order = Some(stab);
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// Scan the t = 6 chain; expected to be empty for every cap.
pub fn eq_e_scan(q_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(q_cap) {
        let bound = match k_upper_bound(6, q + 1) {
            Ok(b) => b.min(q),
            Err(_) => continue,
        };
        for k in 7..=bound {
            if case2_t6_filter(q, k) {
                out.push(CaseEquation::new(EquationId::EqE, q, k));
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// (s, u, q = base^(s^u)) towers with s prime and s^u <= su_cap.
fn towers(base: u64, su_cap: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for s in 2..=su_cap {
        if !is_prime(s) {
            continue;
        }
        let mut su = s;
        let mut u = 1u32;
        while su <= su_cap {
            if let Some(q) = base.checked_pow(su as u32) {
                out.push((s, u, q));
            }
            match su.checked_mul(s) {
                Some(next) if next <= su_cap => {
                    su = next;
                    u += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_unstable_by_key(|&(s, u, _)| (s, u));
    out
}

fn poch4(k: u64) -> BigUint {
    BigUint::from(k - 1) * BigUint::from(k - 2) * BigUint::from(k - 3) * BigUint::from(k - 4)
}

fn q23(q: u64) -> BigUint {
    BigUint::from(q - 2) * BigUint::from(q - 3)
}

/// The displayed equation scans for the characteristic-3 subcases, each with
/// its own derivation cap widened by one power step (times two), plus the
/// two comprehensive per-kind families. Survivor lists are expected empty.
pub fn subcase_equation_scan(id: EquationId, bounds: ScanBounds) -> Result<Vec<CaseEquation>> {
    match id {
        EquationId::Eq0 => Ok(eq0_scan(bounds.q_cap.unwrap_or(2048))),
        EquationId::Eq0Half => Ok(eq0_half_scan(bounds.q_cap.unwrap_or(2048))),
        EquationId::EqE => Ok(eq_e_scan(bounds.q_cap.unwrap_or(100_000))),
        EquationId::E1 => Ok(scan_e1(bounds.su_cap.unwrap_or(14))),
        EquationId::E2 => Ok(scan_e2(bounds.su_cap.unwrap_or(10))),
        EquationId::E3 => Ok(scan_e3(bounds.su_cap.unwrap_or(14))),
        EquationId::E4 => Ok(scan_e4(bounds.su_cap.unwrap_or(14))),
        EquationId::E5 => Ok(scan_e5(bounds.su_cap.unwrap_or(14))),
        EquationId::E6 => Ok(scan_e6(bounds.su_cap.unwrap_or(14))),
        EquationId::E7 => Ok(scan_e7(bounds.su_cap.unwrap_or(14))),
        EquationId::E8 => Ok(scan_e8(bounds.su_cap.unwrap_or(14))),
        EquationId::CondB => Ok(scan_cond_b(bounds.su_cap.unwrap_or(11), 2)),
        EquationId::CondBstar => Ok(scan_cond_b(bounds.su_cap.unwrap_or(11), 3)),
    }
}

/// cyclic block stabilizer, k = c: (q-2)(q-3) = (c-1)(c-2)(c-3)(c-4) s / 2.
fn scan_e1(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        let bound = k_upper_bound(5, q + 1).unwrap().min(q);
        for half in [(q + 1) / 2, (q - 1) / 2] {
            for c in divisors(half) {
                if c <= 5 || c > bound {
                    continue;
                }
                if q23(q) * 2u32 == poch4(c) * s {
                    let mut ce = CaseEquation::new(EquationId::E1, q, c);
                    ce.s = Some(s);
                    ce.u = Some(u);
                    ce.c = Some(c);
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// dihedral block stabilizer, k = c: (q-2)(q-3) = (c-1)(c-2)(c-3)(c-4) s / 4.
fn scan_e2(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        let bound = k_upper_bound(5, q + 1).unwrap().min(q);
        for half in [(q + 1) / 2, (q - 1) / 2] {
            for c in divisors(half) {
                if c <= 5 || c > bound {
                    continue;
                }
                if q23(q) * 4u32 == poch4(c) * s {
                    let mut ce = CaseEquation::new(EquationId::E2, q, c);
                    ce.s = Some(s);
                    ce.u = Some(u);
                    ce.c = Some(c);
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// dihedral block stabilizer, k = 2c:
/// (q-2)(q-3)/2 = (2c-1)(c-1)(2c-3)(c-2) s.
fn scan_e3(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        let bound = k_upper_bound(5, q + 1).unwrap().min(q);
        for half in [(q + 1) / 2, (q - 1) / 2] {
            for c in divisors(half) {
                let k = 2 * c;
                if k <= 5 || k > bound {
                    continue;
                }
                let rhs = BigUint::from(2 * c - 1)
                    * BigUint::from(c - 1)
                    * BigUint::from(2 * c - 3)
                    * BigUint::from(c - 2)
                    * BigUint::from(2u32)
                    * s;
                if q23(q) == rhs {
                    let mut ce = CaseEquation::new(EquationId::E3, q, k);
                    ce.s = Some(s);
                    ce.u = Some(u);
                    ce.c = Some(c);
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// elementary abelian block stabilizer, k = qbar:
/// 2(q-2)(q-3) = (qbar-1)(qbar-2)(qbar-3)(qbar-4) s.
fn scan_e4(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        let e = {
            let (_, e) = prime_power_decompose(q).unwrap();
            e
        };
        let bound = k_upper_bound(5, q + 1).unwrap().min(q);
        for j in 1..e {
            let qbar = 3u64.pow(j);
            if qbar <= 5 || qbar > bound {
                continue;
            }
            if q23(q) * 2u32 == poch4(qbar) * s {
                let mut ce = CaseEquation::new(EquationId::E4, q, qbar);
                ce.s = Some(s);
                ce.u = Some(u);
                ce.qbar = Some(qbar);
                out.push(ce);
            }
        }
    }
    out
}

/// elementary abelian with multiplier, k = c qbar:
/// 2(q-2)(q-3) = (c qbar - 1)(c qbar - 2)(c qbar - 3)(c qbar - 4) s.
fn scan_e5(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        let e = {
            let (_, e) = prime_power_decompose(q).unwrap();
            e
        };
        let bound = k_upper_bound(5, q + 1).unwrap().min(q);
        for j in 1..e {
            let qbar = 3u64.pow(j);
            for c in divisors(gcd(qbar - 1, q - 1)) {
                if c < 2 {
                    continue;
                }
                let k = c * qbar;
                if k <= 5 || k > bound {
                    continue;
                }
                if q23(q) * 2u32 == poch4(k) * s {
                    let mut ce = CaseEquation::new(EquationId::E5, q, k);
                    ce.s = Some(s);
                    ce.u = Some(u);
                    ce.c = Some(c);
                    ce.qbar = Some(qbar);
                    out.push(ce);
                }
            }
        }
    }
    out
}

/// subfield block stabilizer, k = qbar + 1: (q-2)(q-3) = (qbar-2)(qbar-3) s.
fn scan_e6(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        for w in 0..=u {
            let sw = s.pow(w);
            let qbar = match 3u64.checked_pow(sw as u32) {
                Some(x) if x < q => x,
                _ => continue,
            };
            let k = qbar + 1;
            if k <= 5 || k > k_upper_bound(5, q + 1).unwrap() {
                continue;
            }
            if q23(q) == q23(qbar) * s {
                let mut ce = CaseEquation::new(EquationId::E6, q, k);
                ce.s = Some(s);
                ce.u = Some(u);
                ce.w = Some(w);
                ce.qbar = Some(qbar);
                out.push(ce);
            }
        }
    }
    out
}

/// subfield block stabilizer, k = qbar(qbar-1), even power:
/// (q-2)(q-3)(qbar+1) = (qbar^2-qbar-1)...(qbar^2-qbar-4) s.
fn scan_e7(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        if s != 2 {
            continue; // the power s^(u-w) must be even
        }
        for w in 0..u {
            let sw = s.pow(w);
            let qbar = match 3u64.checked_pow(sw as u32) {
                Some(x) if x < q => x,
                _ => continue,
            };
            let k = qbar * (qbar - 1);
            if k <= 5 || k > k_upper_bound(5, q + 1).unwrap() {
                continue;
            }
            let a = qbar * qbar - qbar;
            let rhs = BigUint::from(a - 1)
                * BigUint::from(a - 2)
                * BigUint::from(a - 3)
                * BigUint::from(a - 4)
                * s;
            if q23(q) * BigUint::from(qbar + 1) == rhs {
                let mut ce = CaseEquation::new(EquationId::E7, q, k);
                ce.s = Some(s);
                ce.u = Some(u);
                ce.w = Some(w);
                ce.qbar = Some(qbar);
                out.push(ce);
            }
        }
    }
    out
}

/// subfield block stabilizer, regular block:
/// 2(q-2)(q-3) = ((qbar^3-qbar)/2 - 1)...((qbar^3-qbar)/2 - 4) s.
fn scan_e8(su_cap: u64) -> Vec<CaseEquation> {
    let mut out = Vec::new();
    for (s, u, q) in towers(3, su_cap) {
        for w in 0..=u {
            let sw = s.pow(w);
            let qbar = match 3u64.checked_pow(sw as u32) {
                Some(x) if x < q => x,
                _ => continue,
            };
            let a = (qbar * qbar * qbar - qbar) / 2;
            let k = a;
            if k <= 5 || k > k_upper_bound(5, q + 1).unwrap() {
                continue;
            }
            let rhs = BigUint::from(a - 1)
                * BigUint::from(a - 2)
                * BigUint::from(a - 3)
                * BigUint::from(a - 4)
                * s;
            if q23(q) * 2u32 == rhs {
                let mut ce = CaseEquation::new(EquationId::E8, q, k);
                ce.s = Some(s);
                ce.u = Some(u);
                ce.w = Some(w);
                ce.qbar = Some(qbar);
                out.push(ce);
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Comprehensive branch scan for characteristic 2 or 3: every tabulated
/// subgroup kind is offered as a block stabilizer with every orbit length
/// (and doubled equal-orbit unions) as k, both stabilizer branches included.
/// For p = 2 the governing equation is
///   (q-2)(q-3) stab = (k-1)(k-2)(k-3)(k-4) s,
/// for p = 3 it carries the extra factor two on the left.
fn scan_cond_b(su_cap: u64, p: u64) -> Vec<CaseEquation> {
    use crate::pgl::{admitted_kinds, predicted_orbit_census};
    let id = if p == 2 {
        EquationId::CondB
    } else {
        EquationId::CondBstar
    };
    let lhs_factor = if p == 2 { 1u32 } else { 2u32 };
    let mut out = Vec::new();
    for (s, u, q) in towers(p, su_cap) {
        if q <= 4 {
            continue;
        }
        let bound = match k_upper_bound(5, q + 1) {
            Ok(b) => b.min(q),
            Err(_) => continue,
        };
        for kind in admitted_kinds(q) {
            let table = match predicted_orbit_census(kind, q) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let usize_order = kind.group_order();
            // candidate block sizes: single orbits, and unions of two equal
            // orbits (the two-equal-flag-orbit possibility)
            let mut k_cands: Vec<(u64, u64)> = Vec::new(); // (k, orbit multiplier)
            for &(len, cnt) in &table {
                k_cands.push((len, 1));
                if cnt >= 2 {
                    k_cands.push((2 * len, 2));
                }
            }
            for (k, mult) in k_cands {
                if k <= 5 || k > bound {
                    continue;
                }
                // |U_0| = |U| mult / k when integral
                if (usize_order * mult) % k != 0 {
                    continue;
                }
                let base_stab = usize_order * mult / k;
                for branch in [s, 1] {
                    let stab = base_stab * branch;
                    if stab == 0 {
                        continue;
                    }
                    let lhs = q23(q) * BigUint::from(stab) * lhs_factor;
                    let rhs = poch4(k) * s;
                    if lhs == rhs {
                        let mut ce = CaseEquation::new(id, q, k);
                        ce.s = Some(s);
                        ce.u = Some(u);
                        ce.stab_order = Some(stab);
                        ce.side_conditions.push(format!("kind {}", kind));
                        ce.side_conditions.push(format!("branch {}", branch));
                        out.push(ce);
                    }
                }
            }
        }
    }
    out
}

/// Equality sweep for the second Cameron inequality over arithmetically
/// feasible non-trivial Steiner parameters.
pub fn cameron_equality_scan(t_max: u32, k_max: u64, v_max: u64) -> Vec<(u32, u64, u64)> {
    let mut out = Vec::new();
    for t in 3..=t_max {
        for k in (t as u64 + 1)..=k_max {
            let v = (k - t as u64 + 2) * (k - t as u64 + 1) + t as u64 - 1;
            if v > v_max || v <= k {
                continue;
            }
            if steiner_all_levels_integral(t, v, k) {
                out.push((t, k, v));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn param_examples() {
        let ps = param_arithmetic(5, 24, 8, 1).unwrap().unwrap();
        assert_eq!((ps.b, ps.r, ps.lambda2), (big(759), big(253), Some(big(77))));
        let ps = param_arithmetic(5, 12, 6, 1).unwrap().unwrap();
        assert_eq!((ps.b, ps.r, ps.lambda2), (big(132), big(66), Some(big(30))));
        let inf = param_arithmetic(6, 32, 7, 1).unwrap().unwrap_err();
        assert!(inf.failed_identity.contains("r ="));
        assert!(param_arithmetic(5, 4, 8, 1).is_err());
    }

    #[test]
    fn param_identities_hold_when_feasible() {
        for (t, v, k) in [(5u32, 24u64, 8u64), (5, 12, 6), (4, 23, 7), (3, 22, 6), (2, 7, 3)] {
            let ps = param_arithmetic(t, v, k, 1).unwrap().unwrap();
            // bk = vr
            assert_eq!(ps.b.clone() * big(k), ps.r.clone() * big(v));
            if let Some(l2) = &ps.lambda2 {
                assert_eq!(ps.r.clone() * big(k - 1), l2.clone() * big(v - 1));
            }
        }
    }

    #[test]
    fn cameron_examples() {
        let cb = cameron_bounds(5, 24, 8);
        assert!(cb.a_ok && cb.b_ok);
        assert_eq!(cb.equality_case, Some((5, 8, 24)));
        let cb = cameron_bounds(3, 8, 4);
        assert_eq!(cb.equality_case, Some((3, 4, 8)));
        let cb = cameron_bounds(5, 100, 8);
        assert!(cb.a_ok && cb.b_ok && cb.equality_case.is_none());
    }

    #[test]
    fn k_bound_examples() {
        assert_eq!(k_upper_bound(5, 24).unwrap(), 8);
        assert_eq!(k_upper_bound(5, 12).unwrap(), 6);
        assert_eq!(k_upper_bound(3, 8).unwrap(), 4); // sqrt(8)+1.5 = 4.33
        assert_eq!(k_upper_bound(6, 8).unwrap(), 7); // the Cameron bound is what kills v=8
        assert!(k_upper_bound(2, 10).is_err());
    }

    #[test]
    fn divprop_examples() {
        // k = 8 at v = 24 with |G_x| = 253: r = 253 divides
        assert!(divprop_filter(5, 24, 8, &big(253)).unwrap());
        // A7 point stabilizer order 2520 at v = 16 fails both k
        assert!(!divprop_filter(5, 16, 6, &big(2520)).unwrap());
        assert!(!divprop_filter(5, 16, 7, &big(2520)).unwrap());
        // r = 1 always divides
        assert!(divprop_filter(2, 3, 3, &big(5)).unwrap());
    }

    #[test]
    fn flag_equation_examples() {
        // t=5, v=24, k=8, |G_xy| = 11, |G_xB| = 1: C(22,3) = 7 C(6,3) 11
        assert!(flag_equation_check(5, 24, 8, 11, 1));
        assert!(!flag_equation_check(5, 24, 8, 11, 2));
        // t=3: C(v-2,1) = (k-1) C(k-2,1) |G_xy|/|G_xB|
        assert!(flag_equation_check(3, 8, 4, 1, 1)); // 6 = 3*2*1
        assert!(!flag_equation_check(3, 10, 4, 1, 1)); // 8 != 6
    }

    #[test]
    fn alltop_examples() {
        assert!(alltop_filter(3, 6)); // 5 | 15
        assert!(!alltop_filter(4, 8)); // 13 does not divide 70
        assert!(!alltop_filter(5, 7)); // 29 does not divide 35
        for k in [6u64, 7, 8] {
            assert!(alltop_filter(3, k));
            for d in 4..=20 {
                assert!(!alltop_filter(d, k), "d={} k={}", d, k);
            }
        }
    }

    #[test]
    fn case2_t5_examples() {
        assert!(case2_t5_filter(23, 8, 1, 2));
        assert!(!case2_t5_filter(23, 8, 2, 2));
        assert!(!case2_t5_filter(11, 6, 1, 2));
    }

    #[test]
    fn eq0_scan_unique_survivor() {
        let survivors = eq0_scan(512);
        assert_eq!(survivors.len(), 1);
        assert_eq!(
            (survivors[0].q, survivors[0].k, survivors[0].stab_order),
            (23, 8, Some(1))
        );
    }

    #[test]
    fn eq0_half_scan_survivor() {
        let survivors = eq0_half_scan(512);
        assert_eq!(survivors.len(), 1);
        assert_eq!(
            (survivors[0].q, survivors[0].k, survivors[0].stab_order),
            (23, 8, Some(2))
        );
    }

    #[test]
    fn case2_t6_false_on_sample() {
        assert!(!case2_t6_filter(64, 11));
        assert!(!case2_t6_filter(7, 7)); // r non-integral despite divisibility
        assert!(!case2_t6_filter(8, 7));
        for q in prime_powers_up_to(500) {
            for k in 7..=k_upper_bound(6, q + 1).unwrap().min(q) {
                assert!(!case2_t6_filter(q, k), "q={} k={}", q, k);
            }
        }
    }

    #[test]
    fn e_scans_empty() {
        for id in [
            EquationId::E1,
            EquationId::E2,
            EquationId::E3,
            EquationId::E4,
            EquationId::E5,
            EquationId::E6,
            EquationId::E7,
            EquationId::E8,
        ] {
            let survivors = subcase_equation_scan(id, ScanBounds::default()).unwrap();
            assert!(survivors.is_empty(), "{:?}: {:?}", id, survivors);
        }
    }

    #[test]
    fn cond_b_scans_empty() {
        for id in [EquationId::CondB, EquationId::CondBstar] {
            let survivors = subcase_equation_scan(
                id,
                ScanBounds {
                    su_cap: Some(11),
                    q_cap: None,
                },
            )
            .unwrap();
            assert!(survivors.is_empty(), "{:?}: {:?}", id, survivors);
        }
    }

    #[test]
    fn cameron_equality_five_tuples() {
        let found = cameron_equality_scan(6, 50, 2500);
        assert_eq!(
            found,
            vec![(3, 4, 8), (3, 6, 22), (3, 12, 112), (4, 7, 23), (5, 8, 24)]
        );
    }
}
