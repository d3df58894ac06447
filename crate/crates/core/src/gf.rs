//! Finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are dense indices in `[0, q)`. An element of an extension of
//! degree `d` over a base field of order `b` is the residue polynomial
//! `c_0 + c_1 x + ... + c_{d-1} x^{d-1}`, packed as `c_0 + c_1 b + ... `.
//! For an extension of a prime field this makes `0` the zero element, `1` the
//! one element and `p` the residue class of `x`.
//!
//! A field is either prime, built by [`field_make`], or an extension of
//! another [`FieldSpec`] built by [`FieldSpec::extension`]. The latter is how
//! GF(q^m) is realised as an m-dimensional vector space over GF(q) with the
//! polynomial basis `1, a, ..., a^{m-1}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Orders up to this bound get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// Default moduli over prime fields, constant term first.
///
/// Every entry is a primitive polynomial, so the residue class of `x` generates
/// the multiplicative group. GF(8) uses `x^3 + x + 1` and GF(4) `x^2 + x + 1`.
const DEFAULT_MODULI: &[(u32, u32, &[u16])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[3, 1, 1]),
];

/// An element of a finite field, identified by its index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated finite field. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    base: Option<FieldSpec>,
    degree: u32,
    modulus: Vec<u16>,
    primitive: u16,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q
                && self.0.p == other.0.p
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.0.q)?;
        if self.0.e > 1 {
            write!(f, "; modulus {:?}", self.0.modulus)?;
        }
        write!(f, ")")
    }
}

/// Builds GF(p^e) over its prime field.
///
/// Without an explicit modulus a shipped primitive polynomial is used, falling
/// back to the first primitive polynomial in coefficient order.
pub fn field_make(p: u32, e: u32, modulus: Option<&[u16]>) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if e == 0 {
        return Err(Error::ParameterOutOfRange("extension degree must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if order > MAX_ORDER {
        return Err(Error::FieldTooLarge(order));
    }
    let prime = FieldSpec::prime(p)?;
    if e == 1 {
        if let Some(m) = modulus {
            if m.len() != 2 || m[1] != 1 || m[0] as u32 >= p {
                return Err(Error::InvalidModulus(format!(
                    "expected a monic degree-1 polynomial, got {m:?}"
                )));
            }
        }
        return Ok(prime);
    }
    FieldSpec::extension(&prime, e, modulus)
}

/// Builds the field of order `q`, which must be a prime power.
pub fn field_of_order(q: u32, modulus: Option<&[u16]>) -> Result<FieldSpec> {
    let (p, e) = prime_power(q).ok_or(Error::NonPrimeCharacteristic(q))?;
    field_make(p, e, modulus)
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(p as u64));
        }
        let q = p;
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = ((a + b) % q) as u16;
                }
            }
            t
        });
        let neg = (0..q).map(|a| ((q - a) % q) as u16).collect();
        let mul = |a: u16, b: u16| ((a as u32 * b as u32) % p) as u16;
        let primitive = find_primitive(q, mul);
        let (exp, log) = build_log_tables(q, primitive, mul);
        Ok(FieldSpec(Arc::new(Inner {
            p,
            e: 1,
            q,
            base: None,
            degree: 1,
            modulus: vec![0, 1],
            primitive,
            exp,
            log,
            add,
            neg,
        })))
    }

    /// Builds the degree-`degree` extension of `base` defined by `modulus`
    /// (monic, coefficients over `base`, constant term first).
    pub fn extension(base: &FieldSpec, degree: u32, modulus: Option<&[u16]>) -> Result<FieldSpec> {
        if degree == 0 {
            return Err(Error::ParameterOutOfRange("extension degree must be at least 1".into()));
        }
        let qb = base.order();
        let order = (qb as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        let modulus: Vec<u16> = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {degree}, got {m:?}"
                    )));
                }
                if m.iter().any(|&c| c as u32 >= qb) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient out of range for GF({qb}) in {m:?}"
                    )));
                }
                if !is_irreducible(base, m) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => default_modulus(base, degree),
        };
        let q = order as u32;
        let d = degree as usize;
        let digits = |a: u16| -> Vec<u16> {
            let mut v = Vec::with_capacity(d);
            let mut x = a as u32;
            for _ in 0..d {
                v.push((x % qb) as u16);
                x /= qb;
            }
            v
        };
        let pack = |v: &[u16]| -> u16 {
            let mut x = 0u32;
            for &c in v.iter().rev() {
                x = x * qb + c as u32;
            }
            x as u16
        };
        let add_slow = |a: u16, b: u16| -> u16 {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u16> = da
                .iter()
                .zip(&db)
                .map(|(&x, &y)| base.add(FieldElement(x), FieldElement(y)).0)
                .collect();
            pack(&s)
        };
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_slow(a as u16, b as u16);
                }
            }
            t
        });
        let neg = (0..q)
            .map(|a| {
                let na: Vec<u16> = digits(a as u16)
                    .iter()
                    .map(|&c| base.neg(FieldElement(c)).0)
                    .collect();
                pack(&na)
            })
            .collect();
        let mul = |a: u16, b: u16| -> u16 {
            let prod = poly_mulmod(base, &digits(a), &digits(b), &modulus);
            pack(&prod)
        };
        let primitive = find_primitive(q, mul);
        let (exp, log) = build_log_tables(q, primitive, mul);
        Ok(FieldSpec(Arc::new(Inner {
            p: base.characteristic(),
            e: base.0.e * degree,
            q,
            base: Some(base.clone()),
            degree,
            modulus,
            primitive,
            exp,
            log,
            add,
            neg,
        })))
    }

    /// Characteristic p.
    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    #[inline]
    pub fn prime_degree(&self) -> u32 {
        self.0.e
    }

    /// Field order q.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Base field of an extension; `None` for a prime field.
    pub fn base(&self) -> Option<&FieldSpec> {
        self.0.base.as_ref()
    }

    /// Degree over the base field (1 for prime fields).
    pub fn degree_over_base(&self) -> u32 {
        self.0.degree
    }

    /// Defining polynomial over the base field, constant term first.
    pub fn modulus(&self) -> &[u16] {
        &self.0.modulus
    }

    /// The generator used for the log/antilog tables.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.0.primitive)
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given index, if it is in range.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.0.q).then_some(FieldElement(index as u16))
    }

    /// All elements in index order. This is the canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(|i| FieldElement(i as u16))
    }

    /// The nonzero elements in index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q).map(|i| FieldElement(i as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let q = self.0.q as usize;
        match &self.0.add {
            Some(t) => FieldElement(t[a.index() * q + b.index()]),
            None => self.add_digits(a, b),
        }
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.0.base {
            None => FieldElement(((a.0 as u32 + b.0 as u32) % self.0.p) as u16),
            Some(base) => {
                let qb = base.order();
                let (mut x, mut y) = (a.0 as u32, b.0 as u32);
                let mut out = 0u32;
                let mut scale = 1u32;
                for _ in 0..self.0.degree {
                    let s = base.add(FieldElement((x % qb) as u16), FieldElement((y % qb) as u16));
                    out += s.0 as u32 * scale;
                    scale = scale.wrapping_mul(qb);
                    x /= qb;
                    y /= qb;
                }
                FieldElement(out as u16)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let l = self.0.log[a.index()] + self.0.log[b.index()];
        FieldElement(self.0.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = (n - self.0.log[a.index()]) % n;
        Ok(FieldElement(self.0.exp[l as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        let l = (self.0.log[a.index()] as u64 * (k % n)) % n;
        FieldElement(self.0.exp[l as usize])
    }

    /// Discrete logarithm to the base [`primitive_element`](Self::primitive_element).
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.index()])
    }

    /// `g^k` for the primitive element `g`.
    pub fn antilog(&self, k: u64) -> FieldElement {
        let n = (self.0.q - 1) as u64;
        FieldElement(self.0.exp[(k % n) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.0.q - 1;
        Some(n / gcd(n, l))
    }

    /// Coordinates over the base field with respect to `1, x, ..., x^{d-1}`.
    pub fn coords(&self, a: FieldElement) -> Vec<FieldElement> {
        let d = self.0.degree as usize;
        let qb = match &self.0.base {
            None => return vec![a],
            Some(b) => b.order(),
        };
        let mut x = a.0 as u32;
        (0..d)
            .map(|_| {
                let c = FieldElement((x % qb) as u16);
                x /= qb;
                c
            })
            .collect()
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        if coords.len() != self.0.degree as usize {
            return Err(Error::BasisMismatch(format!(
                "expected {} coordinates, got {}",
                self.0.degree,
                coords.len()
            )));
        }
        let qb = match &self.0.base {
            None => return Ok(coords[0]),
            Some(b) => b.order(),
        };
        let mut x = 0u32;
        for c in coords.iter().rev() {
            if c.0 as u32 >= qb {
                return Err(Error::BasisMismatch(format!("coordinate {c} out of range")));
            }
            x = x * qb + c.0 as u32;
        }
        Ok(FieldElement(x as u16))
    }

    /// The residue class of `x` (the generator of the polynomial basis).
    pub fn basis_generator(&self) -> FieldElement {
        match &self.0.base {
            None => FieldElement::ONE,
            Some(b) if self.0.degree == 1 => {
                // x is a root of x + c_0, i.e. -c_0
                b.neg(FieldElement(self.0.modulus[0]))
            }
            Some(b) => FieldElement(b.order() as u16),
        }
    }

    /// Whether `a` lies in the index range of this field.
    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u32) < self.0.q
    }
}

fn find_primitive(q: u32, mul: impl Fn(u16, u16) -> u16) -> u16 {
    if q == 2 {
        return 1;
    }
    let n = q - 1;
    let factors = prime_factors(n);
    let pow = |g: u16, mut k: u32| -> u16 {
        let mut acc = 1u16;
        let mut b = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            k >>= 1;
        }
        acc
    };
    (2..q)
        .map(|g| g as u16)
        .find(|&g| factors.iter().all(|&r| pow(g, n / r) != 1))
        .expect("every finite field has a primitive element")
}

fn build_log_tables(q: u32, g: u16, mul: impl Fn(u16, u16) -> u16) -> (Vec<u16>, Vec<u32>) {
    let n = (q - 1) as usize;
    let mut exp = vec![0u16; 2 * n.max(1)];
    let mut log = vec![u32::MAX; q as usize];
    let mut x = 1u16;
    for i in 0..n {
        exp[i] = x;
        log[x as usize] = i as u32;
        x = mul(x, g);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    (exp, log)
}

/// Product of two polynomials over `base`, reduced modulo a monic `modulus`.
fn poly_mulmod(base: &FieldSpec, a: &[u16], b: &[u16], modulus: &[u16]) -> Vec<u16> {
    let d = modulus.len() - 1;
    let mut prod = vec![FieldElement::ZERO; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = base.mul(FieldElement(x), FieldElement(y));
            prod[i + j] = base.add(prod[i + j], t);
        }
    }
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c.is_zero() {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate().take(d) {
            let t = base.mul(c, FieldElement(mk));
            prod[top - d + k] = base.sub(prod[top - d + k], t);
        }
        prod[top] = FieldElement::ZERO;
    }
    prod.truncate(d);
    prod.resize(d, FieldElement::ZERO);
    prod.into_iter().map(|c| c.0).collect()
}

/// Remainder of `a` modulo a monic `b`, both constant term first.
fn poly_rem(base: &FieldSpec, a: &[u16], b: &[u16]) -> Vec<u16> {
    let db = b.len() - 1;
    let mut r: Vec<FieldElement> = a.iter().map(|&c| FieldElement(c)).collect();
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top];
        if !c.is_zero() {
            for (k, &bk) in b.iter().enumerate().take(db) {
                let t = base.mul(c, FieldElement(bk));
                r[top - db + k] = base.sub(r[top - db + k], t);
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c.0).collect()
}

/// Trial factorization by every monic polynomial of degree at most half.
fn is_irreducible(base: &FieldSpec, poly: &[u16]) -> bool {
    let d = poly.len() - 1;
    if d == 0 {
        return false;
    }
    let qb = base.order() as u64;
    for deg in 1..=d / 2 {
        let count = qb.pow(deg as u32);
        for lower in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut x = lower;
            for _ in 0..deg {
                div.push((x % qb) as u16);
                x /= qb;
            }
            div.push(1);
            if poly_rem(base, poly, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(base: &FieldSpec, degree: u32) -> Vec<u16> {
    if base.is_prime_field() {
        if let Some((_, _, m)) = DEFAULT_MODULI
            .iter()
            .find(|(p, e, _)| *p == base.order() && *e == degree)
        {
            return m.to_vec();
        }
    }
    // First primitive polynomial in coefficient order.
    let qb = base.order() as u64;
    let d = degree as usize;
    let q = qb.pow(degree) as u32;
    let factors = prime_factors(q - 1);
    for lower in 0..qb.pow(degree) {
        let mut poly = Vec::with_capacity(d + 1);
        let mut x = lower;
        for _ in 0..d {
            poly.push((x % qb) as u16);
            x /= qb;
        }
        poly.push(1);
        if poly[0] == 0 || !is_irreducible(base, &poly) {
            continue;
        }
        // x is primitive iff x^((q-1)/r) != 1 for each prime r | q-1
        let mut gen = vec![0u16; d];
        if d == 1 {
            gen[0] = base.neg(FieldElement(poly[0])).0;
        } else {
            gen[1] = 1;
        }
        let one: Vec<u16> = {
            let mut v = vec![0u16; d];
            v[0] = 1;
            v
        };
        let pow = |mut k: u32| -> Vec<u16> {
            let mut acc = one.clone();
            let mut b = gen.clone();
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly_mulmod(base, &acc, &b, &poly);
                }
                b = poly_mulmod(base, &b, &b, &poly);
                k >>= 1;
            }
            acc
        };
        if factors.iter().all(|&r| pow((q - 1) / r) != one) {
            return poly;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e`; `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    (x == 1).then_some((p, e))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
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

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
