//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored in the polynomial basis as length-`e` coefficient
//! vectors (little-endian, i.e. `coeffs[i]` multiplies x^i) and reduced
//! modulo a monic irreducible polynomial chosen deterministically at field
//! construction. Fields are capped at p^e <= 2^20 so every search staying
//! inside one field is cheap.

use crate::error::{Error, Result};

/// Hard cap on field size; everything downstream needs q only up to ~10^5.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of GF(p^e): `coeffs[i]` is the coefficient of x^i, reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub coeffs: Vec<u32>,
}

/// GF(p^e) with an explicit monic irreducible reduction polynomial.
///
/// The reduction polynomial is the lexicographically smallest monic
/// irreducible of degree `e` over GF(p), comparing coefficient sequences
/// low-degree first. This makes `Field::new` deterministic across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
    pub e: u32,
    /// e+1 coefficients, low-degree first, monic (last entry 1).
    pub reduction_poly: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division irreducibility test for a monic polynomial over GF(p).
/// `poly` is low-degree first with leading coefficient 1.
fn is_irreducible(poly: &[u32], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // constant term zero => divisible by x
    if poly[0] == 0 {
        return false;
    }
    // try all monic divisors of degree 1..=deg/2
    try_divisors(poly, p, deg / 2)
}

fn try_divisors(poly: &[u32], p: u64, max_deg: usize) -> bool {
    for d in 1..=max_deg {
        // enumerate all monic polynomials of degree d
        let mut coeffs = vec![0u32; d + 1];
        coeffs[d] = 1;
        loop {
            if poly_rem_is_zero(poly, &coeffs, p) {
                return false;
            }
            // increment low-order coefficients as a base-p counter
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                coeffs[i] += 1;
                if (coeffs[i] as u64) < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// True iff `divisor` divides `poly` over GF(p). Both monic, low-degree first.
fn poly_rem_is_zero(poly: &[u32], divisor: &[u32], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = rem[rem.len() - 1] % p;
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for i in 0..=dd {
                let idx = shift + i;
                let sub = (lead * divisor[i] as u64) % p;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

impl Field {
    /// Build GF(p^e) with the lexicographically smallest monic irreducible
    /// reduction polynomial (coefficients compared low-degree first).
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::BadDegree(e as u64));
        }
        let mut size: u64 = 1;
        for _ in 0..e {
            size = size.saturating_mul(p);
            if size > MAX_FIELD_SIZE {
                return Err(Error::BoundExceeded(format!(
                    "field size {}^{} exceeds 2^20",
                    p, e
                )));
            }
        }
        if e == 1 {
            // x - 0 is reducible only formally; x itself is the canonical
            // degree-1 modulus (elements are plain residues mod p).
            return Ok(Field {
                p,
                e,
                reduction_poly: vec![0, 1],
            });
        }
        // lex enumeration: coefficient c_0 varies slowest (compared first)
        let deg = e as usize;
        let mut coeffs = vec![0u32; deg + 1];
        coeffs[deg] = 1;
        loop {
            if is_irreducible(&coeffs, p) {
                return Ok(Field {
                    p,
                    e,
                    reduction_poly: coeffs,
                });
            }
            // lexicographic successor: bump the LAST free position first so
            // that c_0 stays smallest as long as possible
            let mut i = deg;
            loop {
                if i == 0 {
                    // exhausted (cannot happen: irreducibles exist for all p,e)
                    return Err(Error::InvalidParameter(format!(
                        "no irreducible polynomial of degree {} over GF({})",
                        e, p
                    )));
                }
                i -= 1;
                coeffs[i] += 1;
                if (coeffs[i] as u64) < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Number of elements p^e.
    pub fn size(&self) -> u64 {
        let mut s = 1u64;
        for _ in 0..self.e {
            s *= self.p;
        }
        s
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.e as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut c = vec![0; self.e as usize];
        c[0] = 1;
        FieldElem { coeffs: c }
    }

    /// The basis element x. For e = 1 the modulus is x itself, so x reduces
    /// to zero.
    pub fn monomial_x(&self) -> FieldElem {
        if self.e == 1 {
            return self.zero();
        }
        let mut c = vec![0; self.e as usize];
        c[1] = 1;
        FieldElem { coeffs: c }
    }

    /// Embed an integer residue (mod p) as a constant.
    pub fn from_int(&self, n: u64) -> FieldElem {
        let mut c = vec![0; self.e as usize];
        c[0] = (n % self.p) as u32;
        FieldElem { coeffs: c }
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        if a.coeffs.len() != self.e as usize
            || a.coeffs.iter().any(|&c| (c as u64) >= self.p)
        {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (((x as u64) + (y as u64)) % self.p) as u32)
            .collect();
        Ok(FieldElem { coeffs })
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (((x as u64) + self.p - (y as u64)) % self.p) as u32)
            .collect();
        Ok(FieldElem { coeffs })
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + (a.coeffs[i] as u64) * (b.coeffs[j] as u64)) % self.p;
            }
        }
        // reduce modulo the monic reduction polynomial
        for d in (e..2 * e - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // x^d = x^(d-e) * (x^e) = x^(d-e) * (-(lower part of modulus))
            for i in 0..e {
                let m = self.reduction_poly[i] as u64;
                if m != 0 {
                    let idx = d - e + i;
                    prod[idx] = (prod[idx] + self.p - (c * m) % self.p) % self.p;
                }
            }
        }
        Ok(FieldElem {
            coeffs: prod[..e].iter().map(|&c| (c % self.p) as u32).collect(),
        })
    }

    /// `a^n` for any integer exponent; negative exponents require nonzero `a`.
    pub fn pow(&self, a: &FieldElem, n: i64) -> Result<FieldElem> {
        self.check(a)?;
        if n < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -n);
        }
        let mut base = a.clone();
        let mut acc = self.one();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse via Fermat: a^(q-2).
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        self.pow(a, (self.size() - 2) as i64)
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let binv = self.inv(b)?;
        self.mul(a, &binv)
    }

    /// Least n >= 1 with a^n = 1; divides q-1.
    pub fn element_order(&self, a: &FieldElem) -> Result<u64> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let group = self.size() - 1;
        let mut order = group;
        for f in prime_factors(group) {
            while order % f == 0 {
                let cand = self.pow(a, (order / f) as i64)?;
                if cand == self.one() {
                    order /= f;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    /// The order-6 element with lexicographically smallest coefficient
    /// sequence (low-degree coefficients compared first). Requires 6 | q-1.
    pub fn primitive_sixth_root(&self) -> Result<FieldElem> {
        let q = self.size();
        if (q - 1) % 6 != 0 {
            return Err(Error::NoSuchOrder { order: 6, q });
        }
        for idx in 0..q {
            let a = self.elem_from_index(idx);
            if self.is_zero(&a) {
                continue;
            }
            // order exactly 6: a^6 = 1, a^2 != 1, a^3 != 1
            if self.pow(&a, 6)? == self.one()
                && self.pow(&a, 2)? != self.one()
                && self.pow(&a, 3)? != self.one()
            {
                return Ok(a);
            }
        }
        Err(Error::NoSuchOrder { order: 6, q })
    }

    /// Smallest (in index order) element of multiplicative order q-1.
    pub fn primitive_element(&self) -> FieldElem {
        let q = self.size();
        for idx in 1..q {
            let a = self.elem_from_index(idx);
            if self.is_zero(&a) {
                continue;
            }
            if let Ok(o) = self.element_order(&a) {
                if o == q - 1 {
                    return a;
                }
            }
        }
        unreachable!("GF(q)* is cyclic, a generator exists")
    }

    /// Index of an element in lexicographic coefficient order: the
    /// coefficient of x^0 is compared first, so it is the most significant
    /// digit of the rank.
    pub fn index_of(&self, a: &FieldElem) -> u64 {
        let mut idx = 0u64;
        for &c in &a.coeffs {
            idx = idx * self.p + c as u64;
        }
        idx
    }

    /// Inverse of `index_of`.
    pub fn elem_from_index(&self, mut idx: u64) -> FieldElem {
        let e = self.e as usize;
        let mut coeffs = vec![0u32; e];
        for i in (0..e).rev() {
            coeffs[i] = (idx % self.p) as u32;
            idx /= self.p;
        }
        FieldElem { coeffs }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size()).map(move |i| self.elem_from_index(i))
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: &FieldElem) -> Result<FieldElem> {
        self.pow(a, self.p as i64)
    }
}

/// Distinct prime factors of n.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decompose a prime power q = p^e; None if q is not a prime power (or < 2).
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut e = 0u32;
    let mut m = q;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        e += 1;
    }
    Some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_make_basic() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.size(), 8);
        let f = Field::new(3, 2).unwrap();
        // lexicographically smallest monic irreducible over GF(3) is x^2+1
        assert_eq!(f.reduction_poly, vec![1, 0, 1]);
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(7, 0), Err(Error::BadDegree(0))));
        assert!(Field::new(2, 21).is_err());
    }

    #[test]
    fn field_make_deterministic() {
        for &(p, e) in &[(2u64, 4u32), (3, 3), (5, 2), (7, 1), (2, 8)] {
            let a = Field::new(p, e).unwrap();
            let b = Field::new(p, e).unwrap();
            assert_eq!(a.reduction_poly, b.reduction_poly);
        }
    }

    /// Independent oracle for the GF(9) reduction polynomial: enumerate all
    /// nine monic quadratics over GF(3) and filter by a root search.
    #[test]
    fn gf9_poly_oracle() {
        let mut smallest: Option<Vec<u32>> = None;
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root && smallest.is_none() {
                    smallest = Some(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(smallest.unwrap(), Field::new(3, 2).unwrap().reduction_poly);
    }

    #[test]
    fn arith_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let three = f7.from_int(3);
        let five = f7.from_int(5);
        assert_eq!(f7.mul(&three, &five).unwrap(), f7.from_int(1));

        // GF(9) with modulus x^2+1: x*x = -1 = 2
        let f9 = Field::new(3, 2).unwrap();
        let x = f9.monomial_x();
        assert_eq!(f9.mul(&x, &x).unwrap(), f9.from_int(2));

        let f5 = Field::new(5, 1).unwrap();
        assert!(matches!(f5.inv(&f5.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn field_mismatch_detected() {
        let f9 = Field::new(3, 2).unwrap();
        let wrong = FieldElem { coeffs: vec![1] };
        assert!(matches!(
            f9.add(&wrong, &f9.one()),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn element_order_examples() {
        let f19 = Field::new(19, 1).unwrap();
        assert_eq!(f19.element_order(&f19.from_int(8)).unwrap(), 6);
        assert_eq!(f19.element_order(&f19.one()).unwrap(), 1);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.element_order(&f7.from_int(3)).unwrap(), 6);
        assert!(matches!(
            f7.element_order(&f7.zero()),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn sixth_root_examples() {
        let f19 = Field::new(19, 1).unwrap();
        assert_eq!(f19.primitive_sixth_root().unwrap(), f19.from_int(8));
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.primitive_sixth_root().unwrap(), f7.from_int(3));
        let f8 = Field::new(2, 3).unwrap();
        assert!(f8.primitive_sixth_root().is_err());
    }

    /// Fermat/Lagrange: a^(q-1) = 1 for all nonzero a, exhaustively for
    /// every field with q <= 2^10 built from a few (p,e) shapes.
    #[test]
    fn fermat_exhaustive() {
        for &(p, e) in &[(2u64, 6u32), (3, 4), (5, 3), (7, 2), (11, 2), (31, 1), (2, 10)] {
            let f = Field::new(p, e).unwrap();
            let one = f.one();
            for a in f.elements() {
                if f.is_zero(&a) {
                    continue;
                }
                assert_eq!(f.pow(&a, (f.size() - 1) as i64).unwrap(), one);
                assert_eq!((f.size() - 1) % f.element_order(&a).unwrap(), 0);
            }
        }
    }

    /// Ring axioms on sampled triples plus inverses for every nonzero element.
    #[test]
    fn field_axioms_sampled() {
        for &(p, e) in &[(2u64, 4u32), (3, 2), (5, 2), (13, 1)] {
            let f = Field::new(p, e).unwrap();
            let q = f.size();
            let pick = |i: u64| f.elem_from_index(i % q);
            for i in 0..60u64 {
                let a = pick(i * 7 + 1);
                let b = pick(i * 13 + 5);
                let c = pick(i * 29 + 11);
                assert_eq!(f.add(&a, &b).unwrap(), f.add(&b, &a).unwrap());
                assert_eq!(f.mul(&a, &b).unwrap(), f.mul(&b, &a).unwrap());
                assert_eq!(
                    f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap(),
                    f.mul(&f.mul(&a, &b).unwrap(), &c).unwrap()
                );
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c).unwrap()).unwrap(),
                    f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap())
                        .unwrap()
                );
            }
            for a in f.elements() {
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn pow_negative_exponent() {
        let f = Field::new(11, 1).unwrap();
        let a = f.from_int(7);
        assert_eq!(f.pow(&a, -1).unwrap(), f.inv(&a).unwrap());
        assert_eq!(f.pow(&a, -3).unwrap(), f.inv(&f.pow(&a, 3).unwrap()).unwrap());
    }

    #[test]
    fn index_roundtrip_is_lex() {
        let f = Field::new(3, 2).unwrap();
        // lex order on (c0, c1): (0,0),(0,1),(0,2),(1,0),...
        assert_eq!(f.elem_from_index(0).coeffs, vec![0, 0]);
        assert_eq!(f.elem_from_index(1).coeffs, vec![0, 1]);
        assert_eq!(f.elem_from_index(3).coeffs, vec![1, 0]);
        for i in 0..9 {
            assert_eq!(f.index_of(&f.elem_from_index(i)), i);
        }
    }

    #[test]
    fn prime_power_decompose_works() {
        assert_eq!(prime_power_decompose(8), Some((2, 3)));
        assert_eq!(prime_power_decompose(81), Some((3, 4)));
        assert_eq!(prime_power_decompose(23), Some((23, 1)));
        assert_eq!(prime_power_decompose(12), None);
        assert_eq!(prime_power_decompose(1), None);
    }
}
