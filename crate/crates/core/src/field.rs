//! Exact arithmetic in GF(2^n) for 2 <= n <= 24, polynomial basis.
//!
//! Elements are bit vectors: bit `i` of [`FieldElement`] is the coefficient
//! of `y^i`, where `y` is the residue class of the indeterminate modulo the
//! reduction polynomial. Every built-in reduction polynomial is *primitive*,
//! so `g = y` generates the multiplicative group and discrete logs are well
//! defined. All operations are exact; there is no floating point anywhere.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;
/// Log/exp tables are materialized up to this degree (4 MiB of u32 at n=20).
const LOG_TABLE_MAX_DEGREE: u32 = 20;

/// Built-in primitive polynomials, little-endian bits, indexed by n-2.
///
/// Each is verified at construction time: the class of `y` must have order
/// 2^n - 1. The n = 6 entry is y^6 + y^4 + y^3 + y + 1, whose root generates
/// the F_64 used by all of the golden reference data in this crate.
const DEFAULT_MODULI: [u32; 23] = [
    0x7,       // n=2:  y^2 + y + 1
    0xB,       // n=3:  y^3 + y + 1
    0x13,      // n=4:  y^4 + y + 1
    0x25,      // n=5:  y^5 + y^2 + 1
    0x5B,      // n=6:  y^6 + y^4 + y^3 + y + 1
    0x83,      // n=7:  y^7 + y + 1
    0x11D,     // n=8:  y^8 + y^4 + y^3 + y^2 + 1
    0x211,     // n=9:  y^9 + y^4 + 1
    0x409,     // n=10: y^10 + y^3 + 1
    0x805,     // n=11: y^11 + y^2 + 1
    0x1053,    // n=12: y^12 + y^6 + y^4 + y + 1
    0x201B,    // n=13: y^13 + y^4 + y^3 + y + 1
    0x4443,    // n=14: y^14 + y^10 + y^6 + y + 1
    0x8003,    // n=15: y^15 + y + 1
    0x1100B,   // n=16: y^16 + y^12 + y^3 + y + 1
    0x20009,   // n=17: y^17 + y^3 + 1
    0x40081,   // n=18: y^18 + y^7 + 1
    0x80027,   // n=19: y^19 + y^5 + y^2 + y + 1
    0x100009,  // n=20: y^20 + y^3 + 1
    0x200005,  // n=21: y^21 + y^2 + 1
    0x400003,  // n=22: y^22 + y + 1
    0x800021,  // n=23: y^23 + y^5 + 1
    0x1000087, // n=24: y^24 + y^7 + y^2 + y + 1
];

/// Construction and parsing failures for [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside the supported range {MIN_DEGREE}..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("modulus {} has degree {found}, expected {expected}", poly_string(*poly))]
    WrongDegree { poly: u64, found: u32, expected: u32 },
    #[error("modulus {} is reducible: {} divides it", poly_string(*poly), poly_string(*factor))]
    Reducible { poly: u64, factor: u64 },
    #[error(
        "modulus {} is not primitive: y has order {order}, not {group_order}",
        poly_string(*poly)
    )]
    NotPrimitive { poly: u64, order: u64, group_order: u64 },
    #[error("exponent {d} is not invertible mod {modulus}; x^{d} is not a permutation")]
    NotAPermutationExponent { d: u64, modulus: u64 },
    #[error("cannot parse {0:?} as a field element (expected `g^i`, `0xHH`, or `0`)")]
    BadElementSyntax(String),
    #[error("bit pattern 0x{0:X} does not fit in {1} bits")]
    ElementOutOfRange(u64, u32),
}

/// An element of GF(2^n): bit `i` is the coefficient of `y^i`.
///
/// The element itself does not remember its field; all arithmetic goes
/// through a [`FieldSpec`], which checks that the bit pattern is in range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bit pattern. Range checking happens at the first use
    /// inside a [`FieldSpec`] operation; see [`FieldSpec::element`] for the
    /// checked constructor.
    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// JSON description of a field: `{"n": 6, "poly": "0x5B", "generator": "g"}`.
///
/// The polynomial is hex with little-endian bit order (bit i = coefficient
/// of y^i), so y^6 + y^4 + y^3 + y + 1 encodes as 0x5B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub n: u32,
    pub poly: String,
    pub generator: String,
}

/// A validated GF(2^n) in polynomial basis.
///
/// Immutable after construction and safe to share across threads; all
/// operations are pure functions of their inputs.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    n: u32,
    poly: u32,
    q: u32,
    trace_mask: u32,
    /// log[x] = i with g^i = x, for x in 1..q; log[0] is a sentinel.
    log: Vec<u32>,
    /// exp[i] = g^(i mod q-1), doubled to 2(q-1) entries so sums of two
    /// logs index without reduction.
    exp: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(2^n) with the built-in primitive polynomial for `n`.
    pub fn new(n: u32) -> Result<FieldSpec, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        Self::with_modulus(n, u64::from(DEFAULT_MODULI[(n - MIN_DEGREE) as usize]))
    }

    /// Builds GF(2^n) with an explicit reduction polynomial (little-endian
    /// bits, degree exactly `n`). The polynomial must be irreducible and
    /// primitive; reducibility errors name a nontrivial factor.
    pub fn with_modulus(n: u32, poly: u64) -> Result<FieldSpec, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if poly >> n != 1 {
            return Err(FieldError::WrongDegree {
                poly,
                found: if poly == 0 { 0 } else { poly_degree(poly) },
                expected: n,
            });
        }
        if let Some(factor) = smallest_factor(poly, n) {
            return Err(FieldError::Reducible { poly, factor });
        }
        let q: u32 = 1 << n;
        let group_order = u64::from(q) - 1;

        // Order of y in the multiplicative group; the modulus is primitive
        // exactly when the order is 2^n - 1.
        let order = raw_order(poly, n, 0b10);
        if order != group_order {
            return Err(FieldError::NotPrimitive { poly, order, group_order });
        }

        let (log, exp) = if n <= LOG_TABLE_MAX_DEGREE {
            let mut log = vec![0u32; q as usize];
            let mut exp = vec![0u32; 2 * group_order as usize];
            let mut x: u32 = 1;
            for i in 0..group_order as usize {
                exp[i] = x;
                exp[i + group_order as usize] = x;
                log[x as usize] = i as u32;
                x = raw_mul(poly, x, 0b10);
            }
            (log, exp)
        } else {
            (Vec::new(), Vec::new())
        };

        let mut trace_mask = 0u32;
        for i in 0..n {
            let mut t = 0u32;
            let mut p = 1u32 << i;
            for _ in 0..n {
                t ^= p;
                p = raw_mul(poly, p, p);
            }
            debug_assert!(t <= 1);
            trace_mask |= t << i;
        }

        Ok(FieldSpec { n, poly: poly as u32, q, trace_mask, log, exp })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field size q = 2^n.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Reduction polynomial, little-endian bits with bit n set.
    #[inline]
    pub fn modulus(&self) -> u64 {
        u64::from(self.poly) | (1u64 << self.n)
    }

    /// The primitive element g (the class of y).
    #[inline]
    pub fn generator(&self) -> FieldElement {
        FieldElement(0b10)
    }

    /// All q elements in ascending bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Checked element constructor.
    pub fn element(&self, bits: u64) -> Result<FieldElement, FieldError> {
        if bits >> self.n != 0 {
            return Err(FieldError::ElementOutOfRange(bits, self.n));
        }
        Ok(FieldElement(bits as u32))
    }

    /// Log/exp tables for hot loops, when materialized (n <= 20). `log` is
    /// indexed by element bits, `exp` by exponent with 2(q-1) entries so
    /// sums of two logs need no reduction.
    #[inline]
    pub(crate) fn tables(&self) -> Option<(&[u32], &[u32])> {
        if self.log.is_empty() {
            None
        } else {
            Some((&self.log, &self.exp))
        }
    }

    /// Bit mask of basis elements with absolute trace 1.
    #[inline]
    pub(crate) fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    #[inline]
    fn check(&self, x: FieldElement) {
        assert!(
            x.0 < self.q,
            "element 0x{:X} does not belong to GF(2^{}); was it built for a larger field?",
            x.0,
            self.n
        );
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        FieldElement(x.0 ^ y.0)
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.log.is_empty() {
            let m = u64::from(self.poly) | (1u64 << self.n);
            FieldElement(raw_mul(m, x.0, y.0))
        } else {
            let i = self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize;
            FieldElement(self.exp[i])
        }
    }

    #[inline]
    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// Multiplicative inverse, with inv(0) = 0 (0^{-1} = 0^(2^n - 2)).
    #[inline]
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        self.check(x);
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let r = self.q as usize - 1;
        if self.log.is_empty() {
            self.pow(x, -1)
        } else {
            FieldElement(self.exp[r - self.log[x.0 as usize] as usize])
        }
    }

    /// x^e, with negative exponents inverted through the group order;
    /// 0^0 = 1 and 0^e = 0 otherwise (consistent with inv(0) = 0).
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        self.check(x);
        if x.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let r = i64::from(self.q) - 1;
        let e = e.rem_euclid(r) as u64;
        if !self.log.is_empty() {
            let r = u64::from(self.q) - 1;
            let i = (u64::from(self.log[x.0 as usize]) * e) % r;
            return FieldElement(self.exp[i as usize]);
        }
        let m = u64::from(self.poly) | (1u64 << self.n);
        let mut acc = 1u32;
        let mut base = x.0;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = raw_mul(m, acc, base);
            }
            base = raw_mul(m, base, base);
            e >>= 1;
        }
        FieldElement(acc)
    }

    /// x^(2^j), the j-fold Frobenius.
    pub fn frobenius(&self, x: FieldElement, j: u32) -> FieldElement {
        let mut t = x;
        for _ in 0..(j % self.n) {
            t = self.square(t);
        }
        t
    }

    /// Unique square root: x^(2^(n-1)). Squaring is a bijection in
    /// characteristic 2, so sqrt(x)^2 = x for every x.
    #[inline]
    pub fn sqrt(&self, x: FieldElement) -> FieldElement {
        self.frobenius(x, self.n - 1)
    }

    /// Absolute trace onto F_2, as a bit.
    #[inline]
    pub fn abs_trace(&self, x: FieldElement) -> u32 {
        self.check(x);
        (x.0 & self.trace_mask).count_ones() & 1
    }

    /// Relative trace onto the subfield F_{2^e}: sum of x^(2^(e*i)) for
    /// i in 0..n/e. Requires e | n.
    pub fn rel_trace(&self, x: FieldElement, e: u32) -> FieldElement {
        assert!(
            e >= 1 && self.n.is_multiple_of(e),
            "relative trace needs e | n, got e={e}, n={}",
            self.n
        );
        let mut acc = x;
        let mut t = x;
        for _ in 1..self.n / e {
            t = self.frobenius(t, e);
            acc = self.add(acc, t);
        }
        debug_assert_eq!(self.frobenius(acc, e), acc, "relative trace must land in F_{{2^e}}");
        acc
    }

    /// Does x lie in the subfield F_{2^e}? (Requires e | n.)
    #[inline]
    pub fn in_subfield(&self, x: FieldElement, e: u32) -> bool {
        debug_assert!(e >= 1 && self.n.is_multiple_of(e));
        self.frobenius(x, e) == x
    }

    /// Is u a (2^e+1)-th power, i.e. u = g^(t(2^e+1)) for some t?
    ///
    /// Meaningful only when n/e is even, which makes 2^e + 1 divide
    /// 2^n - 1; when n/e is odd every nonzero element qualifies and the
    /// question is vacuous, so it is rejected. Requires u != 0.
    pub fn is_gold_residue(&self, u: FieldElement, e: u32) -> bool {
        assert!(!u.is_zero(), "residue test needs u != 0");
        assert!(
            e >= 1 && self.n.is_multiple_of(e) && (self.n / e).is_multiple_of(2),
            "residue test needs n/e even, got n={}, e={e}",
            self.n
        );
        if self.log.is_empty() {
            self.residue_by_pow(u, e)
        } else {
            self.residue_by_log(u, e)
        }
    }

    /// Membership via log divisibility: log_g(u) = 0 mod 2^e + 1.
    pub(crate) fn residue_by_log(&self, u: FieldElement, e: u32) -> bool {
        let d = (1u64 << e) + 1;
        u64::from(self.log[u.0 as usize]) % d == 0
    }

    /// Membership via exponentiation: u^((2^n-1)/(2^e+1)) = 1.
    pub(crate) fn residue_by_pow(&self, u: FieldElement, e: u32) -> bool {
        let d = (1u64 << e) + 1;
        let r = u64::from(self.q) - 1;
        debug_assert_eq!(r % d, 0);
        self.pow(u, (r / d) as i64) == FieldElement::ONE
    }

    /// Discrete log base g, when the table exists (n <= 20) and x != 0.
    pub fn discrete_log(&self, x: FieldElement) -> Option<u64> {
        self.check(x);
        if x.0 == 0 || self.log.is_empty() {
            return None;
        }
        Some(u64::from(self.log[x.0 as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: FieldElement) -> u64 {
        self.check(x);
        assert!(!x.is_zero(), "order of 0 is undefined");
        let mut order = u64::from(self.q) - 1;
        for (p, _) in factorize(order) {
            while order % p == 0 && self.pow(x, (order / p) as i64) == FieldElement::ONE {
                order /= p;
            }
        }
        order
    }

    /// Parses `g^i`, `g`, `0xHH`, or `0`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let t = s.trim();
        if t == "0" {
            return Ok(FieldElement::ZERO);
        }
        if t == "g" {
            return Ok(self.generator());
        }
        if let Some(rest) = t.strip_prefix("g^") {
            let e: i64 = rest
                .parse()
                .map_err(|_| FieldError::BadElementSyntax(s.to_string()))?;
            return Ok(self.pow(self.generator(), e));
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            let bits = u64::from_str_radix(hex, 16)
                .map_err(|_| FieldError::BadElementSyntax(s.to_string()))?;
            return self.element(bits);
        }
        Err(FieldError::BadElementSyntax(s.to_string()))
    }

    /// Canonical hex form, zero padded to the field's nibble width.
    pub fn format_element(&self, x: FieldElement) -> String {
        self.check(x);
        format!("0x{:0w$X}", x.0, w = self.n.div_ceil(4) as usize)
    }

    /// Serializable field description.
    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            n: self.n,
            poly: format!("0x{:X}", self.modulus()),
            generator: "g".to_string(),
        }
    }
}

/// Gold-map parameters for F(x) = x^(2^k+1) over GF(2^n).
///
/// Everything downstream dispatches on e = gcd(k, n) and the parity of n/e;
/// m = n/2 is recorded whenever n is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldParams {
    n: u32,
    k: u32,
    e: u32,
    m: Option<u32>,
    ratio_parity: RatioParity,
}

/// Parity of n / gcd(k, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioParity {
    Odd,
    Even,
}

impl GoldParams {
    pub fn new(n: u32, k: u32) -> GoldParams {
        assert!(n >= 2 && k >= 1 && k < n, "need 1 <= k < n, got k={k}, n={n}");
        let e = gcd(k as u64, n as u64) as u32;
        let ratio_parity = if (n / e) % 2 == 1 { RatioParity::Odd } else { RatioParity::Even };
        let m = if n.is_multiple_of(2) { Some(n / 2) } else { None };
        if ratio_parity == RatioParity::Even {
            debug_assert!(n.is_multiple_of(2));
        }
        GoldParams { n, k, e, m, ratio_parity }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// e = gcd(k, n).
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    /// n/2 when n is even.
    #[inline]
    pub fn m(&self) -> Option<u32> {
        self.m
    }

    #[inline]
    pub fn ratio_parity(&self) -> RatioParity {
        self.ratio_parity
    }

    #[inline]
    pub fn ratio_is_odd(&self) -> bool {
        self.ratio_parity == RatioParity::Odd
    }

    /// The Gold exponent d = 2^k + 1.
    #[inline]
    pub fn d(&self) -> u64 {
        (1u64 << self.k) + 1
    }

    /// (-1)^(m/e), the sign attached to the 2^m Weil values (n/e even).
    pub fn half_sign(&self) -> i64 {
        let m = self.m.expect("half_sign needs n even");
        debug_assert!(self.ratio_parity == RatioParity::Even);
        if (m / self.e).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// d' with d*d' = 1 mod 2^n - 1; x -> x^d' inverts the Gold map when
    /// n/e is odd.
    pub fn root_exponent(&self) -> u64 {
        inverse_exponent(self.d(), self.n)
            .expect("2^k + 1 is invertible mod 2^n - 1 when n/e is odd")
    }
}

/// gcd(2^k + 1, 2^n - 1) in closed form: 1 when n/e is odd, 2^e + 1 when
/// n/e is even, where e = gcd(k, n).
pub fn gold_gcd(k: u32, n: u32) -> u64 {
    assert!(k >= 1 && k < n, "need 1 <= k < n, got k={k}, n={n}");
    let e = gcd(k as u64, n as u64);
    if (u64::from(n) / e) % 2 == 1 {
        1
    } else {
        (1 << e) + 1
    }
}

/// Jacobi symbol (2/M) = (-1)^((M^2-1)/8) for odd M.
pub fn jacobi_2(m: u64) -> i64 {
    assert!(m % 2 == 1, "Jacobi symbol (2/M) needs odd M, got {m}");
    match m % 8 {
        1 | 7 => 1,
        _ => -1,
    }
}

/// Inverse of d modulo 2^n - 1, so that x -> x^d' undoes x -> x^d.
/// Errors when gcd(d, 2^n - 1) != 1, i.e. when x^d is not a permutation.
pub fn inverse_exponent(d: u64, n: u32) -> Result<u64, FieldError> {
    let r = (1u64 << n) - 1;
    let d_red = d % r;
    let (g, inv) = extended_gcd(d_red as i128, r as i128);
    if g != 1 {
        return Err(FieldError::NotAPermutationExponent { d, modulus: r });
    }
    Ok(inv.rem_euclid(r as i128) as u64)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns (gcd(a, b), x) with a*x = gcd mod b.
fn extended_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut mult = 0;
            while x.is_multiple_of(p) {
                x /= p;
                mult += 1;
            }
            out.push((p, mult));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

// ---------------------------------------------------------------------------
// Raw polynomial arithmetic over F_2, used before the tables exist and for
// fields too large to tabulate.
// ---------------------------------------------------------------------------

#[inline]
fn poly_degree(x: u64) -> u32 {
    debug_assert!(x != 0);
    63 - x.leading_zeros()
}

fn poly_mul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn poly_rem(mut x: u64, m: u64) -> u64 {
    let md = poly_degree(m);
    while x != 0 && poly_degree(x) >= md {
        x ^= m << (poly_degree(x) - md);
    }
    x
}

/// Product of two reduced elements modulo `m` (full modulus, bit n set).
#[inline]
fn raw_mul(m: u64, a: u32, b: u32) -> u32 {
    poly_rem(poly_mul(u64::from(a), u64::from(b)), m) as u32
}

fn raw_pow(m: u64, x: u32, mut e: u64) -> u32 {
    let mut acc = 1u32;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = raw_mul(m, acc, base);
        }
        base = raw_mul(m, base, base);
        e >>= 1;
    }
    acc
}

fn raw_order(poly: u64, n: u32, x: u32) -> u64 {
    let group = (1u64 << n) - 1;
    let mut order = group;
    for (p, _) in factorize(group) {
        while order.is_multiple_of(p) && raw_pow(poly, x, order / p) == 1 {
            order /= p;
        }
    }
    order
}

/// Lowest-degree, lowest-bits nontrivial factor of `poly` (degree n), or
/// None when irreducible. Trial division over every divisor candidate of
/// degree 1..=n/2; exhaustive and exact for n <= 24.
fn smallest_factor(poly: u64, n: u32) -> Option<u64> {
    for deg in 1..=n / 2 {
        for d in (1u64 << deg)..(1u64 << (deg + 1)) {
            if poly_rem(poly, d) == 0 {
                return Some(d);
            }
        }
    }
    None
}

/// Renders a polynomial bit pattern as `y^6 + y^4 + y^3 + y + 1`.
pub fn poly_string(bits: u64) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..=poly_degree(bits)).rev() {
        if bits >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            });
        }
    }
    terms.join(" + ")
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:X}", self.0)
    }
}
