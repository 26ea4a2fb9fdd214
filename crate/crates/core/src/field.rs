//! Finite fields GF(p^m) with q = p^m <= 2^16.
//!
//! Elements are stored in the polynomial basis: the coordinate vector
//! `(c_0, ..., c_{m-1})` of `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is packed
//! into the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Two elements are
//! equal iff their coordinates are equal, so the packed value is canonical.
//! Multiplication goes through exp/log tables built from the designated
//! primitive element.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// A field element in packed polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// Packed coordinate value, `sum c_i p^i`.
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Where a field's modulus came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusSource {
    /// Prime field; no modulus is involved.
    Prime,
    /// Conway polynomial from the built-in table.
    Conway,
    /// Supplied by the caller.
    User,
    /// Least primitive polynomial found by search (no table entry).
    Search,
}

impl ModulusSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusSource::Prime => "prime",
            ModulusSource::Conway => "conway",
            ModulusSource::User => "user",
            ModulusSource::Search => "search",
        }
    }
}

/// Conway polynomials, ascending coefficients.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    source: ModulusSource,
    generator: Element,
    // exp has length 2(q-1) so that log a + log b never needs reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Description of GF(p^m): characteristic, modulus and primitive element.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus
                && self.inner.generator == other.inner.generator)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.description())
    }
}

/// Arithmetic operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Neg,
    Mul,
    Inv,
    Pow(i64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Dense polynomial arithmetic over GF(p), used only while building tables.
mod poly {
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let top = *r.last().unwrap();
            if top != 0 {
                let c = top * lead_inv % p;
                let shift = r.len() - 1 - db;
                for (i, &bi) in b.iter().enumerate() {
                    let t = &mut r[shift + i];
                    *t = (*t + p - c * bi % p) % p;
                }
            }
            r.pop();
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        let mut r = rem(&prod, modulus, p);
        r.resize(modulus.len() - 1, 0);
        r
    }

    pub fn powmod(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let m = modulus.len() - 1;
        let mut result = vec![0u32; m];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, modulus, p);
            }
            base = mulmod(&base, &base, modulus, p);
            e >>= 1;
        }
        result
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut t = idx;
                for _ in 0..d {
                    g.push((t % p as u64) as u32);
                    t /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn unpack(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the Conway polynomial is
    /// used when tabulated, otherwise the least primitive polynomial.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let (p32, q32) = (p as u32, q as u32);

        if let Some(f) = &modulus {
            if f.len() != m as usize + 1 {
                return Err(Error::MalformedModulus(format!(
                    "expected {} coefficients, got {}",
                    m + 1,
                    f.len()
                )));
            }
            if let Some(&c) = f.iter().find(|&&c| c as u64 >= p) {
                return Err(Error::MalformedModulus(format!(
                    "coefficient {c} not reduced mod {p}"
                )));
            }
            if f[m as usize] != 1 {
                return Err(Error::MalformedModulus("modulus must be monic".into()));
            }
        }

        if m == 1 {
            let g = (1..p32)
                .find(|&g| Self::prime_order_is_full(g, p32))
                .expect("every prime field has a primitive root");
            let modulus_vec = modulus.unwrap_or_else(|| vec![(p32 - g) % p32, 1]);
            return Ok(Self::from_generator(
                p32,
                1,
                q32,
                modulus_vec,
                ModulusSource::Prime,
                g,
            ));
        }

        let (modulus, source) = match modulus {
            Some(f) => {
                if !poly::is_irreducible(&f, p32) {
                    return Err(Error::ReducibleModulus(p));
                }
                (f, ModulusSource::User)
            }
            None => match CONWAY.iter().find(|(cp, cm, _)| *cp == p32 && *cm == m) {
                Some((_, _, f)) => (f.to_vec(), ModulusSource::Conway),
                None => (Self::least_primitive_poly(p32, m), ModulusSource::Search),
            },
        };

        // prefer x as the generator; otherwise the least primitive element
        let x = p32;
        let generator = std::iter::once(x)
            .chain(2..q32)
            .find(|&g| Self::is_primitive_poly_elem(g, p32, m, q32, &modulus))
            .expect("the multiplicative group of a field is cyclic");
        Ok(Self::from_generator(
            p32, m, q32, modulus, source, generator,
        ))
    }

    /// Parses a field description `p`, `p^m` or `p^m/c0,c1,...,cm`.
    pub fn from_description(text: &str) -> Result<Field> {
        let bad = || Error::ParseField(text.to_string());
        let text = text.trim();
        let (head, modulus) = match text.split_once('/') {
            Some((h, tail)) => {
                let coeffs = tail
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (h, Some(coeffs))
            }
            None => (text, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u64>().map_err(|_| bad())?, 1),
        };
        if m == 1 && modulus.is_some() {
            return Err(bad());
        }
        Field::new(p, m, modulus)
    }

    fn prime_order_is_full(g: u32, p: u32) -> bool {
        if p == 2 {
            return g == 1;
        }
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            b %= p as u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p as u64;
                }
                b = b * b % p as u64;
                e >>= 1;
            }
            r
        };
        prime_factors(p as u64 - 1)
            .into_iter()
            .all(|r| powmod(g as u64, (p as u64 - 1) / r) != 1)
    }

    fn is_primitive_poly_elem(g: u32, p: u32, m: u32, q: u32, modulus: &[u32]) -> bool {
        let coeffs = unpack(g, p, m);
        let one = {
            let mut v = vec![0u32; m as usize];
            v[0] = 1;
            v
        };
        let order = q as u64 - 1;
        poly::powmod(&coeffs, order, modulus, p) == one
            && prime_factors(order)
                .into_iter()
                .all(|r| poly::powmod(&coeffs, order / r, modulus, p) != one)
    }

    fn least_primitive_poly(p: u32, m: u32) -> Vec<u32> {
        let q = p.pow(m);
        for idx in 0..q {
            let mut f = unpack(idx, p, m);
            f.push(1);
            if f[0] != 0
                && poly::is_irreducible(&f, p)
                && Self::is_primitive_poly_elem(p, p, m, q, &f)
            {
                return f;
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn from_generator(
        p: u32,
        m: u32,
        q: u32,
        modulus: Vec<u32>,
        source: ModulusSource,
        generator: u32,
    ) -> Field {
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let g = unpack(generator, p, m);
        let mut cur = unpack(1, p, m);
        for i in 0..order {
            let v = pack(&cur, p);
            exp[i] = v;
            log[v as usize] = i as u32;
            cur = if m == 1 {
                vec![(cur[0] as u64 * g[0] as u64 % p as u64) as u32]
            } else {
                poly::mulmod(&cur, &g, &modulus, p)
            };
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        Field {
            inner: Arc::new(FieldInner {
                p,
                m,
                q,
                modulus,
                source,
                generator: Element(generator),
                exp,
                log,
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements q.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    /// Modulus coefficients, ascending. For prime fields this is `x - g`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn modulus_source(&self) -> ModulusSource {
        self.inner.source
    }

    pub fn generator(&self) -> Element {
        self.inner.generator
    }

    /// `p^m/c0,...,cm`, or just `p` for prime fields.
    pub fn description(&self) -> String {
        if self.inner.m == 1 {
            self.inner.p.to_string()
        } else {
            let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.inner.p, self.inner.m, coeffs.join(","))
        }
    }

    pub fn contains(&self, a: Element) -> bool {
        a.0 < self.inner.q
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::FieldMismatch(a.0))
        }
    }

    /// Element with the given polynomial-basis coordinates.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Element> {
        if coeffs.len() != self.inner.m as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::ParseElement {
                token: format!("{coeffs:?}"),
                reason: format!("need {} coordinates below {}", self.inner.m, self.inner.p),
            });
        }
        Ok(Element(pack(coeffs, self.inner.p)))
    }

    pub fn coeffs(&self, a: Element) -> Vec<u32> {
        unpack(a.0, self.inner.p, self.inner.m)
    }

    /// The integer `n` reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> Element {
        Element(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element from its packed value; panics when out of range.
    pub fn elem(&self, v: u32) -> Element {
        assert!(
            v < self.inner.q,
            "{v} is not an element of GF({})",
            self.inner.q
        );
        Element(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.inner.q).map(Element)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> {
        (1..self.inner.q).map(Element)
    }

    /// `g^i` for the designated generator.
    pub fn gen_pow(&self, i: i64) -> Element {
        let order = (self.inner.q - 1) as i64;
        Element(self.inner.exp[i.rem_euclid(order) as usize])
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log(&self, a: Element) -> Option<u32> {
        (!a.is_zero()).then(|| self.inner.log[a.0 as usize])
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a.0 + b.0;
            Element(if s >= p { s - p } else { s })
        } else if p == 2 {
            Element(a.0 ^ b.0)
        } else {
            let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
            while x > 0 || y > 0 {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            Element(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        let p = self.inner.p;
        if p == 2 {
            a
        } else if self.inner.m == 1 {
            Element(if a.0 == 0 { 0 } else { p - a.0 })
        } else {
            let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
            while x > 0 {
                out += ((p - x % p) % p) * place;
                x /= p;
                place *= p;
            }
            Element(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element::ZERO;
        }
        let inner = &*self.inner;
        Element(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let order = self.inner.q - 1;
        Ok(Element(
            self.inner.exp[((order - self.inner.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; a negative exponent inverts first.
    pub fn pow(&self, a: Element, e: i64) -> Result<Element> {
        if a.is_zero() {
            return match e.signum() {
                0 => Ok(Element::ONE),
                1 => Ok(Element::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let order = (self.inner.q - 1) as i64;
        let l = self.inner.log[a.0 as usize] as i64;
        let idx = (l * (e.rem_euclid(order))).rem_euclid(order);
        Ok(Element(self.inner.exp[idx as usize]))
    }

    /// `a^e` for a non-negative exponent.
    pub fn pow_u(&self, a: Element, e: u64) -> Element {
        if a.is_zero() {
            return if e == 0 { Element::ONE } else { Element::ZERO };
        }
        let order = (self.inner.q - 1) as u64;
        let idx = self.inner.log[a.0 as usize] as u64 * (e % order) % order;
        Element(self.inner.exp[idx as usize])
    }

    /// Checked arithmetic entry point: validates membership of every operand.
    pub fn arith(&self, op: ArithOp, operands: &[Element]) -> Result<Element> {
        for &a in operands {
            self.check(a)?;
        }
        let arity = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            ArithOp::Neg | ArithOp::Inv | ArithOp::Pow(_) => 1,
        };
        if operands.len() != arity {
            return Err(Error::Dimension(format!(
                "{op:?} takes {arity} operand(s), got {}",
                operands.len()
            )));
        }
        match op {
            ArithOp::Add => Ok(self.add(operands[0], operands[1])),
            ArithOp::Sub => Ok(self.sub(operands[0], operands[1])),
            ArithOp::Mul => Ok(self.mul(operands[0], operands[1])),
            ArithOp::Neg => Ok(self.neg(operands[0])),
            ArithOp::Inv => self.inv(operands[0]),
            ArithOp::Pow(e) => self.pow(operands[0], e),
        }
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items
            .into_iter()
            .fold(Element::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items
            .into_iter()
            .fold(Element::ONE, |acc, x| self.mul(acc, x))
    }

    /// Parses `"0".."p-1"` in prime fields and `"0"` / `"g^i"` otherwise.
    pub fn parse(&self, token: &str) -> Result<Element> {
        let token = token.trim();
        let fail = |reason: &str| Error::ParseElement {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        if self.is_prime_field() {
            if token.starts_with("g^") {
                return Err(fail("power notation is reserved for extension fields"));
            }
            let v: u64 = token
                .parse()
                .map_err(|_| fail("expected a decimal residue"))?;
            if v >= self.inner.p as u64 {
                return Err(fail("residue out of range"));
            }
            return Ok(Element(v as u32));
        }
        if token == "0" {
            return Ok(Element::ZERO);
        }
        let exp = token
            .strip_prefix("g^")
            .ok_or_else(|| fail("expected 0 or g^i"))?;
        let i: u64 = exp.parse().map_err(|_| fail("malformed exponent"))?;
        if i >= (self.inner.q - 1) as u64 {
            return Err(fail("exponent out of range"));
        }
        Ok(self.gen_pow(i as i64))
    }

    pub fn format(&self, a: Element) -> String {
        if self.is_prime_field() {
            a.0.to_string()
        } else if a.is_zero() {
            "0".to_string()
        } else {
            format!("g^{}", self.inner.log[a.0 as usize])
        }
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Element>> {
        text.split(',').map(|t| self.parse(t)).collect()
    }

    /// Sort key matching the textual notation: residue order for prime
    /// fields, `0` then generator-power order for extension fields.
    pub fn notation_key(&self, a: Element) -> u32 {
        if self.is_prime_field() || a.is_zero() {
            a.0
        } else {
            1 + self.inner.log[a.0 as usize]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_gf7() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.generator(), Element(3));
        assert_eq!(f.description(), "7");
        assert_eq!(f.add(Element(3), Element(5)), Element(1));
        assert_eq!(f.inv(Element(3)).unwrap(), Element(5));
    }

    #[test]
    fn gf8_reduction() {
        let f = Field::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
        assert_eq!(f.generator(), Element(2));
        let g2 = f.gen_pow(2);
        // g^4 = g^2 + g mod x^3 + x + 1
        assert_eq!(f.mul(g2, g2), f.from_coeffs(&[0, 1, 1]).unwrap());
        assert_eq!(f.modulus_source(), ModulusSource::User);
        assert_eq!(f, Field::new(2, 3, None).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
        assert_eq!(Field::new(5, 0, None).unwrap_err(), Error::InvalidDegree(0));
        assert!(matches!(
            Field::new(2, 17, None),
            Err(Error::FieldTooLarge { .. })
        ));
        assert_eq!(
            Field::new(2, 2, Some(vec![1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(
            Field::new(2, 2, Some(vec![1, 1, 0])),
            Err(Error::MalformedModulus(_))
        ));
        assert!(matches!(
            Field::new(3, 2, Some(vec![1, 1])),
            Err(Error::MalformedModulus(_))
        ));
    }

    #[test]
    fn conway_table_entries_are_primitive() {
        for &(p, m, f) in CONWAY {
            let field = Field::new(p as u64, m, None).unwrap();
            assert_eq!(field.modulus(), f);
            assert_eq!(field.modulus_source(), ModulusSource::Conway);
            // x itself must be primitive for a Conway polynomial
            assert_eq!(field.generator(), Element(p), "GF({p}^{m})");
        }
    }

    #[test]
    fn search_fallback() {
        let f = Field::new(17, 2, None).unwrap();
        assert_eq!(f.modulus_source(), ModulusSource::Search);
        assert_eq!(f.order(), 289);
        let elems: std::collections::HashSet<_> = (0..288).map(|i| f.gen_pow(i)).collect();
        assert_eq!(elems.len(), 288);
    }

    #[test]
    fn codec() {
        let f11 = Field::new(11, 1, None).unwrap();
        assert_eq!(f11.parse("7").unwrap(), Element(7));
        assert!(f11.parse("11").is_err());
        let f16 = Field::new(2, 4, None).unwrap();
        assert_eq!(f16.format(f16.gen_pow(5)), "g^5");
        assert_eq!(f16.parse("g^5").unwrap(), f16.gen_pow(5));
        assert!(f16.parse("g^15").is_err());
        assert!(f16.parse("3").is_err());
        let f7 = Field::new(7, 1, None).unwrap();
        assert!(f7.parse("g^2").is_err());
    }

    #[test]
    fn descriptions_round_trip() {
        for d in ["7", "2^3/1,1,0,1", "3^2/2,2,1", "2^4/1,1,0,0,1"] {
            let f = Field::from_description(d).unwrap();
            assert_eq!(f.description(), d);
        }
        assert_eq!(
            Field::from_description("2^4").unwrap().description(),
            "2^4/1,1,0,0,1"
        );
        assert!(Field::from_description("7/1,2").is_err());
        assert!(Field::from_description("x").is_err());
    }

    #[test]
    fn checked_arith() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(
            f.arith(ArithOp::Add, &[Element(3), Element(5)]).unwrap(),
            Element(1)
        );
        assert_eq!(
            f.arith(ArithOp::Inv, &[Element(0)]).unwrap_err(),
            Error::ZeroInverse
        );
        assert_eq!(
            f.arith(ArithOp::Mul, &[Element(9), Element(1)])
                .unwrap_err(),
            Error::FieldMismatch(9)
        );
        assert_eq!(
            f.arith(ArithOp::Pow(-1), &[Element(3)]).unwrap(),
            Element(5)
        );
        assert_eq!(
            f.arith(ArithOp::Pow(-2), &[Element(3)]).unwrap(),
            Element(4)
        );
    }

    fn fields() -> Vec<Field> {
        [
            (2, 1),
            (3, 1),
            (7, 1),
            (13, 1),
            (2, 3),
            (2, 4),
            (3, 2),
            (5, 2),
        ]
        .iter()
        .map(|&(p, m)| Field::new(p, m, None).unwrap())
        .collect()
    }

    #[test]
    fn generator_enumerates_group() {
        for f in fields() {
            let q = f.order() as i64;
            let mut seen = std::collections::HashSet::new();
            for i in 0..q - 1 {
                assert!(seen.insert(f.gen_pow(i)));
            }
            assert!(!seen.contains(&Element::ZERO));
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, q - 1).unwrap(), Element::ONE);
            }
        }
    }

    #[test]
    fn characteristic_sums_to_zero() {
        for f in fields() {
            for a in f.elements() {
                let s = f.sum(std::iter::repeat_n(a, f.characteristic() as usize));
                assert_eq!(s, Element::ZERO);
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms(fi in 0usize..8, a in 0u32..65536, b in 0u32..65536, c in 0u32..65536) {
            let f = &fields()[fi];
            let q = f.order();
            let (a, b, c) = (Element(a % q), Element(b % q), Element(c % q));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Element::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Element::ONE);
            }
        }

        #[test]
        fn codec_round_trip(fi in 0usize..8, a in 0u32..65536) {
            let f = &fields()[fi];
            let a = Element(a % f.order());
            prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
    }
}
