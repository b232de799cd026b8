//! Integer polynomials: the fast core behind rational polynomial arithmetic.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use std::sync::{LazyLock, Mutex};

use super::poly::Polynomial;

/// Nonnegative gcd of two integers.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.bits() < 192 || b.bits() < 192 {
        return a.gcd(b);
    }
    let to = |x: &BigInt| dashu_int::UBig::from_words(&x.magnitude().to_u64_digits());
    let g = dashu_int::ops::Gcd::gcd(&to(a), &to(b));
    BigInt::from_biguint(Sign::Plus, BigUint::from_bytes_le(&g.to_le_bytes()))
}

/// Dense integer polynomial, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    pub c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        ZPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with −1 for zero.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * i).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        if s.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn div_scalar(&self, s: &BigInt) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| x / s).collect() }
    }

    pub fn shift(&self, n: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); n];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = int_gcd(&g, x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            self.clone()
        } else {
            self.div_scalar(&g)
        }
    }

    pub fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }
}

pub fn add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (long, short) = if a.c.len() >= b.c.len() { (a, b) } else { (b, a) };
    let mut c = long.c.clone();
    for (i, x) in short.c.iter().enumerate() {
        c[i] += x;
    }
    ZPoly::new(c)
}

pub fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut c = a.c.clone();
    if c.len() < b.c.len() {
        c.resize(b.c.len(), BigInt::zero());
    }
    for (i, x) in b.c.iter().enumerate() {
        c[i] -= x;
    }
    ZPoly::new(c)
}

const KRONECKER_MIN: usize = 6;

pub fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return ZPoly::zero();
    }
    if a.c.len().min(b.c.len()) < KRONECKER_MIN {
        return schoolbook(a, b);
    }
    kronecker(a, b)
}

pub fn schoolbook(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return ZPoly::zero();
    }
    let mut c = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    ZPoly::new(c)
}

/// Slot width in 64-bit limbs large enough to hold every product coefficient.
fn slot_limbs(a: &ZPoly, b: &ZPoly) -> usize {
    let n = a.c.len().min(b.c.len()) as u64;
    let bits = a.max_bits() + b.max_bits() + (64 - n.leading_zeros()) as u64 + 2;
    bits.div_ceil(64) as usize
}

fn pack(p: &ZPoly, limbs: usize) -> BigInt {
    let mut pos = vec![0u64; p.c.len() * limbs];
    let mut neg = vec![0u64; p.c.len() * limbs];
    let mut any_neg = false;
    for (i, x) in p.c.iter().enumerate() {
        let (sign, digits) = x.to_u64_digits();
        let dst = if sign == Sign::Minus {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        dst[i * limbs..i * limbs + digits.len()].copy_from_slice(&digits);
    }
    let pos = BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&to_u32(&pos)));
    if !any_neg {
        return pos;
    }
    pos - BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&to_u32(&neg)))
}

fn to_u32(v: &[u64]) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len() * 2);
    for &x in v {
        out.push(x as u32);
        out.push((x >> 32) as u32);
    }
    out
}

/// Balanced base-2^(64·limbs) digits of `v`.
fn unpack(v: &BigInt, limbs: usize, len: usize) -> ZPoly {
    let negative = v.is_negative();
    let digits = v.magnitude().to_u64_digits();
    let half = BigUint::one() << (64 * limbs - 1);
    let full = BigInt::one() << (64 * limbs);
    let mut out = Vec::with_capacity(len);
    let mut carry = false;
    for i in 0..len {
        let lo = (i * limbs).min(digits.len());
        let hi = ((i + 1) * limbs).min(digits.len());
        let mut chunk = BigUint::from_slice(&to_u32(&digits[lo..hi]));
        if carry {
            chunk += 1u32;
        }
        let mut x = BigInt::from_biguint(Sign::Plus, chunk.clone());
        carry = chunk >= half;
        if carry {
            x -= &full;
        }
        out.push(if negative { -x } else { x });
    }
    ZPoly::new(out)
}

fn kronecker(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let limbs = slot_limbs(a, b);
    let pa = pack(a, limbs);
    let pb = pack(b, limbs);
    unpack(&(pa * pb), limbs, a.c.len() + b.c.len() - 1)
}

/// Exact quotient `a / d` over Z, or `None` when `d` does not divide `a`.
pub fn exact_div(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    assert!(!d.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(ZPoly::zero());
    }
    if a.c.len() < d.c.len() {
        return None;
    }
    let dd = d.c.len() - 1;
    if dd == 0 {
        let s = &d.c[0];
        let mut q = Vec::with_capacity(a.c.len());
        for x in &a.c {
            let (qq, r) = x.div_rem(s);
            if !r.is_zero() {
                return None;
            }
            q.push(qq);
        }
        return Some(ZPoly::new(q));
    }
    let lc = d.lc();
    let mut r = a.c.clone();
    let mut q = vec![BigInt::zero(); a.c.len() - dd];
    for i in (0..q.len()).rev() {
        let top = &r[i + dd];
        if top.is_zero() {
            continue;
        }
        let (qi, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in d.c.iter().enumerate() {
            r[i + j] -= &qi * dc;
        }
        q[i] = qi;
    }
    r[..dd].iter().all(Zero::is_zero).then(|| ZPoly::new(q))
}

/// `lc(b)^(deg a − deg b + 1) · a mod b`.
pub fn pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.deg();
    let mut r = a.clone();
    let lc = b.lc().clone();
    let mut steps = a.deg() - db + 1;
    while !r.is_zero() && r.deg() >= db {
        let shift = (r.deg() - db) as usize;
        let t = r.lc().clone();
        r = sub(&r.scale(&lc), &b.scale(&t).shift(shift));
        steps -= 1;
    }
    if steps > 0 {
        r = r.scale(&num_traits::pow(lc, steps as usize));
    }
    r
}

/// GCD by the subresultant polynomial remainder sequence.
pub fn subresultant_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if a.deg() >= b.deg() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if b.is_zero() {
        return a.primitive();
    }
    let d = a.content().gcd(&b.content());
    a = a.primitive();
    b = b.primitive();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.deg() - b.deg()) as usize;
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b.primitive().scale(&d);
        }
        if r.deg() == 0 {
            return ZPoly::new(vec![d]);
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_scalar(&divisor);
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
}

/// Heuristic GCD by evaluation and interpolation, verified by division.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut xi: BigInt = a.max_norm().min(b.max_norm()) * 2 + 29;
    let max_deg = a.deg().max(b.deg()) as u64;
    for _ in 0..6 {
        if xi.bits() * max_deg > 2_000_000 {
            return None;
        }
        let ga = a.eval(&xi);
        let gb = b.eval(&xi);
        let gamma = int_gcd(&ga, &gb);
        let cand = interpolate(&gamma, &xi).primitive();
        if !cand.is_zero() && exact_div(a, &cand).is_some() && exact_div(b, &cand).is_some() {
            return Some(cand);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn interpolate(v: &BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut v = v.clone();
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut r = v.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        v = (&v - &r) / xi;
        out.push(r);
    }
    ZPoly::new(out)
}

const PRIMES: [u64; 3] = [2305843009213693951, 4611686018427387847, 9223372036854775783];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce_mod(a: &ZPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.c.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced")).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of `gcd(a mod p, b mod p)`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = powmod(*b.last().expect("nonempty"), p - 2, p);
        while a.len() >= b.len() {
            let q = mulmod(*a.last().expect("nonempty"), inv, p);
            let off = a.len() - b.len();
            for (i, &y) in b.iter().enumerate() {
                let t = mulmod(q, y, p);
                let x = a[off + i];
                a[off + i] = if x >= t { x - t } else { x + (p - t) };
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `a` and `b` are certainly coprime over Q, by one good reduction.
pub fn coprime_mod_p(a: &ZPoly, b: &ZPoly) -> bool {
    for &p in &PRIMES {
        let (ra, rb) = (reduce_mod(a, p), reduce_mod(b, p));
        if ra.len() != a.c.len() || rb.len() != b.c.len() {
            continue;
        }
        return gcd_degree_mod(ra, rb, p) == 0;
    }
    false
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^60, descending.
static SMALL_PRIMES: LazyLock<Mutex<Vec<u64>>> = LazyLock::new(Default::default);

fn primes(count: usize) -> Vec<u64> {
    let mut v = SMALL_PRIMES.lock().expect("prime table");
    let mut x = v.last().copied().unwrap_or(1 << 60);
    while v.len() < count {
        x -= 1;
        if is_prime_u64(x) {
            v.push(x);
        }
    }
    v[..count].to_vec()
}

/// `x mod p` given `pw[k] = 2^(64k) mod p`.
fn residue(x: &BigInt, p: u64, pw: &[u64]) -> u64 {
    let (sign, digits) = x.to_u64_digits();
    let mut acc = 0u128;
    for (chunk, pws) in digits.chunks(8).zip(pw.chunks(8)) {
        let part: u128 = chunk.iter().zip(pws).map(|(&d, &w)| d as u128 * w as u128).sum();
        acc = (acc + part % p as u128) % p as u128;
    }
    let r = acc as u64;
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// `a·b` modulo `p < 2^60`.
fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut wide = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (w, &y) in wide[i..].iter_mut().zip(b) {
                *w += x as u128 * y as u128;
            }
        }
        if i % 128 == 127 {
            for w in wide.iter_mut() {
                *w %= p as u128;
            }
        }
    }
    wide.into_iter().map(|w| (w % p as u128) as u64).collect()
}

/// Exact test of `Σ cᵢ·aᵢ·bᵢ = 0`, by reduction modulo enough primes.
pub fn vanishes(terms: &[(&BigInt, &ZPoly, &ZPoly)]) -> bool {
    all_vanish(&[terms.to_vec()])[0]
}

/// Term type of [`all_vanish`].
pub type Term<'a> = (&'a BigInt, &'a ZPoly, &'a ZPoly);

/// [`vanishes`] for several identities at once, sharing reductions and products.
pub fn all_vanish(ids: &[Vec<Term<'_>>]) -> Vec<bool> {
    let mut distinct: Vec<&ZPoly> = Vec::new();
    let mut products: Vec<(usize, usize)> = Vec::new();
    fn slot<'a>(q: &'a ZPoly, distinct: &mut Vec<&'a ZPoly>) -> usize {
        match distinct.iter().position(|d| std::ptr::eq(*d, q) || **d == *q) {
            Some(i) => i,
            None => {
                distinct.push(q);
                distinct.len() - 1
            }
        }
    }
    let mut plan: Vec<Vec<(&BigInt, usize)>> = Vec::with_capacity(ids.len());
    let mut bounds = Vec::with_capacity(ids.len());
    for terms in ids {
        let mut row = Vec::new();
        let mut bound = 0u64;
        for &(c, a, b) in terms {
            if c.is_zero() || a.is_zero() || b.is_zero() {
                continue;
            }
            let (ia, ib) = (slot(a, &mut distinct), slot(b, &mut distinct));
            let key = (ia.min(ib), ia.max(ib));
            let k = products.iter().position(|x| *x == key).unwrap_or_else(|| {
                products.push(key);
                products.len() - 1
            });
            row.push((c, k));
            let b = c.bits() + a.max_bits() + b.max_bits() + (a.c.len().min(b.c.len()) as u64).ilog2() as u64 + 1;
            bound = bound.max(b);
        }
        // every coefficient of the sum is below 2^bound
        bounds.push(bound + (row.len().max(1) as u64).ilog2() as u64 + 2);
        plan.push(row);
    }
    let mut alive: Vec<bool> = vec![true; ids.len()];
    let need: Vec<usize> = bounds.iter().map(|b| (*b as usize).div_ceil(59)).collect();
    let limbs = distinct.iter().map(|q| q.max_bits().div_ceil(64) as usize).max().unwrap_or(1).max(1);
    for (pi, p) in primes(need.iter().copied().max().unwrap_or(0)).into_iter().enumerate() {
        let active: Vec<usize> = (0..ids.len()).filter(|&i| alive[i] && pi < need[i]).collect();
        if active.is_empty() {
            break;
        }
        let pw = powers(limbs, p);
        let reduced: Vec<Vec<u64>> = distinct.iter().map(|q| q.c.iter().map(|x| residue(x, p, &pw)).collect()).collect();
        let mut cache: Vec<Option<Vec<u64>>> = vec![None; products.len()];
        for i in active {
            let mut acc: Vec<u64> = Vec::new();
            for &(c, k) in &plan[i] {
                let prod = cache[k].get_or_insert_with(|| {
                    let (ia, ib) = products[k];
                    mul_mod(&reduced[ia], &reduced[ib], p)
                });
                if acc.len() < prod.len() {
                    acc.resize(prod.len(), 0);
                }
                let rc = residue(c, p, &powers((c.bits().div_ceil(64) as usize).max(1), p));
                for (x, &y) in acc.iter_mut().zip(prod.iter()) {
                    *x = (*x + mulmod(rc, y, p)) % p;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                alive[i] = false;
            }
        }
    }
    alive
}

fn powers(n: usize, p: u64) -> Vec<u64> {
    let r64 = ((1u128 << 64) % p as u128) as u64;
    let mut pw = vec![1u64; n];
    for k in 1..n {
        pw[k] = mulmod(pw[k - 1], r64, p);
    }
    pw
}

/// GCD with positive leading coefficient and full content.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive().scale(&a.content());
    }
    let cg = a.content().gcd(&b.content());
    let pa = a.primitive();
    let pb = b.primitive();
    if pa.deg() == 0 || pb.deg() == 0 {
        return ZPoly::new(vec![cg]);
    }
    // common power of z
    let v = pa.valuation().min(pb.valuation());
    let (pa, pb) = if v > 0 {
        (ZPoly::new(pa.c[v..].to_vec()), ZPoly::new(pb.c[v..].to_vec()))
    } else {
        (pa, pb)
    };
    let g = if pa.deg() == 0 || pb.deg() == 0 || coprime_mod_p(&pa, &pb) {
        ZPoly::one()
    } else if pa == pb {
        pa.clone()
    } else {
        heuristic_gcd(&pa, &pb).unwrap_or_else(|| subresultant_gcd(&pa, &pb))
    };
    g.shift(v).scale(&cg)
}

/// `p = scale · z` with `z` primitive and positive leading coefficient.
pub fn from_rational(p: &Polynomial<BigRational>) -> (BigRational, ZPoly) {
    if p.is_zero() {
        return (BigRational::zero(), ZPoly::zero());
    }
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let z = ZPoly::new(ints);
    let mut g = z.content();
    if z.lc().is_negative() {
        g = -g;
    }
    (BigRational::new(g.clone(), den), z.div_scalar(&g))
}

pub fn to_rational(z: &ZPoly, scale: &BigRational) -> Polynomial<BigRational> {
    if scale.is_one() {
        return Polynomial::from_coeffs(z.c.iter().map(|x| BigRational::from_integer(x.clone())).collect());
    }
    Polynomial::from_coeffs(z.c.iter().map(|x| scale * x).collect())
}

/// Integer polynomial identity from a rational one with integral coefficients.
pub fn from_integral(p: &Polynomial<BigRational>) -> Option<ZPoly> {
    p.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.numer().clone()))
        .collect::<Option<Vec<_>>>()
        .map(ZPoly::new)
}
