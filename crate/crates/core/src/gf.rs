//! Exact arithmetic in GF(p^k).
//!
//! A field is the quotient `GF(p)[x] / (m(x))` for a monic irreducible `m` of
//! degree `k`. Elements are addressed by their canonical index
//! `sum(c_i * p^i)` where `c_i` are the coefficients of the residue
//! polynomial, constant term first. Multiplication goes through discrete
//! log/exp tables built once per field; addition is digit-wise.
//!
//! Fields are interned: constructing the same `(p, modulus)` twice returns the
//! same [`Field`] handle, so element identity checks are pointer comparisons.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_Q_BOUND: u64 = 1 << 20;

/// Immutable description of a finite field plus its arithmetic tables.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    canonical: bool,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// Membership table of `U = {u^2 + u}` (characteristic 2 only).
    artin_schreier_image: OnceLock<Vec<bool>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Shared handle to an interned [`FieldSpec`].
#[derive(Clone, Copy)]
pub struct Field(&'static FieldSpec);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, Vec<u32>), &'static FieldSpec>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, Vec<u32>), &'static FieldSpec>>> =
        OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^k) with the canonical modulus, bounded by [`DEFAULT_Q_BOUND`].
pub fn make_field(p: u64, k: u32) -> Result<Field> {
    make_field_bounded(p, k, DEFAULT_Q_BOUND)
}

/// Builds GF(p^k) with the canonical modulus and an explicit bound on `q`.
///
/// The canonical modulus is the lexicographically smallest monic irreducible
/// of degree `k`, comparing coefficients from the highest degree down. For
/// `k = 1` that is `x`, so arithmetic is plain arithmetic mod `p`.
pub fn make_field_bounded(p: u64, k: u32, bound: u64) -> Result<Field> {
    let p32 = check_order(p, k, bound)?;
    let modulus = canonical_modulus(p32, k);
    Ok(intern(p32, modulus, true))
}

/// Builds GF(p^k) from a caller-supplied modulus (constant term first).
///
/// The modulus must be monic and irreducible. Element encodings depend on the
/// modulus, so a non-canonical one produces a different (isomorphic) field.
pub fn make_field_with_modulus(p: u64, modulus: &[u64]) -> Result<Field> {
    if modulus.len() < 2 {
        return Err(Error::BadModulus(0));
    }
    let k = (modulus.len() - 1) as u32;
    let p32 = check_order(p, k, DEFAULT_Q_BOUND)?;
    if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
        return Err(Error::BadModulus(k));
    }
    let modulus: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
    if !is_irreducible(p32, &modulus) {
        return Err(Error::BadModulus(k));
    }
    let canonical = canonical_modulus(p32, k) == modulus;
    Ok(intern(p32, modulus, canonical))
}

fn check_order(p: u64, k: u32, bound: u64) -> Result<u32> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::CompositeP(p));
    }
    let q = (p as u128).checked_pow(k);
    match q {
        Some(q) if k >= 1 && q <= bound as u128 && q <= u32::MAX as u128 => Ok(p as u32),
        _ => Err(Error::DegreeOutOfRange { p, k, bound }),
    }
}

fn intern(p: u32, modulus: Vec<u32>, canonical: bool) -> Field {
    let mut reg = registry().lock().expect("field registry poisoned");
    if let Some(spec) = reg.get(&(p, modulus.clone())) {
        return Field(spec);
    }
    let spec: &'static FieldSpec = Box::leak(Box::new(FieldSpec::build(p, modulus.clone(), canonical)));
    reg.insert((p, modulus), spec);
    Field(spec)
}

/// Remainder of `a` modulo the monic polynomial `m` (both constant term first).
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division against all monic polynomials of degree
/// at most `k / 2`.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = digits(idx, p, d);
            divisor.push(1);
            if poly_rem(p, m, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut m = digits(idx, p, k as usize);
        m.push(1);
        if is_irreducible(p, &m) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

impl FieldSpec {
    fn build(p: u32, modulus: Vec<u32>, canonical: bool) -> Self {
        let k = (modulus.len() - 1) as u32;
        let q = p.pow(k);
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            canonical,
            exp: Vec::new(),
            log: Vec::new(),
            artin_schreier_image: OnceLock::new(),
        };
        spec.build_tables();
        spec
    }

    fn to_index(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn poly_mulmod(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let da = digits(a as u64, self.p, k);
        let db = digits(b as u64, self.p, k);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(self.p, &prod, &self.modulus);
        self.to_index(&r)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        for g in 1..q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.poly_mulmod(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

impl Field {
    pub fn spec(&self) -> &'static FieldSpec {
        self.0
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    /// Coefficient vector of the element with the given index.
    pub fn coeffs_of(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.0.p, self.0.k as usize)
    }

    pub fn index_of_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients below {}",
                self.0.k, self.0.p
            )));
        }
        Ok(self.0.to_index(coeffs))
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange(index));
        }
        Ok(FieldElement { field: *self, index: index as u32 })
    }

    /// Element from an index known to be in range.
    pub fn elem(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.0.q);
        FieldElement { field: *self, index }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All `q` elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let f = *self;
        (0..self.0.q).map(move |i| f.elem(i))
    }

    // Raw index arithmetic. These are the hot paths for linear algebra.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = self.0;
        if s.k == 1 {
            let t = a + b;
            if t >= s.p {
                t - s.p
            } else {
                t
            }
        } else if s.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..s.k {
                let d = (a % s.p + b % s.p) % s.p;
                out += d * place;
                place *= s.p;
                a /= s.p;
                b /= s.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let s = self.0;
        if s.p == 2 {
            a
        } else if s.k == 1 {
            if a == 0 {
                0
            } else {
                s.p - a
            }
        } else {
            let mut a = a;
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..s.k {
                let d = (s.p - a % s.p) % s.p;
                out += d * place;
                place *= s.p;
                a /= s.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.0;
        let n = s.q - 1;
        let e = s.log[a as usize] as u64 + s.log[b as usize] as u64;
        s.exp[(e % n as u64) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let s = self.0;
        let n = s.q - 1;
        Some(s.exp[((n - s.log[a as usize]) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Euler's criterion (every nonzero element is a square in characteristic 2).
    pub fn square_class(&self, a: u32) -> SquareClass {
        if a == 0 {
            SquareClass::Zero
        } else if self.0.p == 2 || self.pow(a, (self.0.q as u64 - 1) / 2) == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }

    /// A square root, preferring the smaller canonical index.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if self.0.p == 2 {
            return Some(self.pow(a, self.0.q as u64 / 2));
        }
        if self.square_class(a) == SquareClass::NonSquare {
            return None;
        }
        (0..self.0.q).find(|&r| self.mul(r, r) == a)
    }

    /// Smallest-index solution of `l^2 + l = c`, if any.
    pub fn artin_schreier_solve(&self, c: u32) -> Result<Option<u32>> {
        self.require_char2()?;
        Ok((0..self.0.q).find(|&u| self.add(self.mul(u, u), u) == c))
    }

    /// Class of `c` in `F / U` where `U = {u^2 + u}`: 0 when `c` lies in `U`.
    pub fn arf_residue(&self, c: u32) -> Result<u8> {
        self.require_char2()?;
        Ok(if self.artin_schreier_image()[c as usize] { 0 } else { 1 })
    }

    /// Membership table of `U = {u^2 + u : u in F}`, computed once per field.
    pub fn artin_schreier_image(&self) -> &[bool] {
        self.0.artin_schreier_image.get_or_init(|| {
            let mut member = vec![false; self.0.q as usize];
            for u in 0..self.0.q {
                member[self.add(self.mul(u, u), u) as usize] = true;
            }
            member
        })
    }

    /// Absolute trace `a + a^p + ... + a^(p^(k-1))`, an element of the prime field.
    pub fn absolute_trace(&self, a: u32) -> u32 {
        let mut acc = 0u32;
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.pow(x, self.0.p as u64);
        }
        acc
    }

    /// Smallest-index non-square (odd characteristic).
    pub fn canonical_nonsquare(&self) -> Result<u32> {
        if self.0.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok((1..self.0.q)
            .find(|&a| self.square_class(a) == SquareClass::NonSquare)
            .expect("odd fields have non-squares"))
    }

    /// Smallest-index element outside `U` (characteristic 2).
    pub fn canonical_arf_one(&self) -> Result<u32> {
        self.require_char2()?;
        let image = self.artin_schreier_image();
        Ok((0..self.0.q).find(|&c| !image[c as usize]).expect("|U| = q/2"))
    }

    fn require_char2(&self) -> Result<()> {
        if self.0.p == 2 {
            Ok(())
        } else {
            Err(Error::OddCharacteristic)
        }
    }
}

/// Square class of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

impl SquareClass {
    /// Class of a product from the classes of its factors.
    pub fn compose(self, other: SquareClass) -> SquareClass {
        use SquareClass::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Square, Square) | (NonSquare, NonSquare) => Square,
            _ => NonSquare,
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        self.compose(rhs)
    }
}

/// An element of a specific field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    index: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Canonical integer index in `[0, q)`.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<Field> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(&rhs)?;
        Ok(f.elem(f.add(self.index, rhs.index)))
    }

    pub fn try_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(&rhs)?;
        Ok(f.elem(f.sub(self.index, rhs.index)))
    }

    pub fn try_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(&rhs)?;
        Ok(f.elem(f.mul(self.index, rhs.index)))
    }

    pub fn try_div(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(&rhs)?;
        f.div(self.index, rhs.index).map(|i| f.elem(i)).ok_or(Error::DivisionByZero)
    }

    pub fn inv(self) -> Result<FieldElement> {
        self.field
            .inv(self.index)
            .map(|i| self.field.elem(i))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.index, e))
    }

    pub fn square_class(self) -> SquareClass {
        self.field.square_class(self.index)
    }

    pub fn sqrt(self) -> Option<FieldElement> {
        self.field.sqrt(self.index).map(|i| self.field.elem(i))
    }

    pub fn artin_schreier_solve(self) -> Result<Option<FieldElement>> {
        Ok(self.field.artin_schreier_solve(self.index)?.map(|i| self.field.elem(i)))
    }

    pub fn arf_residue(self) -> Result<u8> {
        self.field.arf_residue(self.index)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            /// Panics on mixed fields; use the `try_` variant to get an error instead.
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$try(rhs).expect("field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(self.field.neg(self.index))
    }
}
