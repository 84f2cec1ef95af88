//! Dense univariate polynomials over `Z` and the reduced rational functions
//! `t^k · a(t) / b(t)` built from them.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Poly = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Multiply by `t^k`, `k >= 0`.
pub(crate) fn shift_up(a: &[BigInt], k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

fn scale(a: &[BigInt], c: &BigInt) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn div_scalar_exact(a: &[BigInt], c: &BigInt) -> Poly {
    a.iter().map(|x| x / c).collect()
}

fn primitive_part(a: &[BigInt]) -> Poly {
    let c = content(a);
    if c.is_zero() || c.is_one() {
        a.to_vec()
    } else {
        div_scalar_exact(a, &c)
    }
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut r: Poly = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lb * r - lr * t^(dr - db) * b
        r = scale(&r, lb);
        let sub = shift_up(&scale(b, &lr), dr - db);
        for (x, y) in r.iter_mut().zip(sub.iter()) {
            *x -= y;
        }
        trim(&mut r);
        // Keep coefficients small.
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = div_scalar_exact(&r, &c);
        }
    }
    r
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MODULUS - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn reduce_mod(a: &[BigInt]) -> Vec<u64> {
    let m = BigInt::from(MODULUS);
    a.iter().map(|c| u64::try_from(c.mod_floor(&m)).expect("residue fits")).collect()
}

/// Whether `a` and `b` are certainly coprime over `Q`: their gcd modulo a
/// prime not dividing either leading coefficient is constant. A `false`
/// answer is inconclusive.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.last().is_none_or(|&c| c == 0) || y.last().is_none_or(|&c| c == 0) {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let lead_inv = inv_mod(*y.last().expect("nonempty"));
        let dy = y.len() - 1;
        while x.len() > dy {
            let dx = x.len() - 1;
            let f = mul_mod(x[dx], lead_inv);
            for (i, &c) in y.iter().enumerate() {
                let sub = mul_mod(f, c);
                let xi = &mut x[dx - dy + i];
                *xi = if *xi >= sub { *xi - sub } else { *xi + MODULUS - sub };
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// Primitive gcd with positive leading coefficient. Constant gcds come back as `[1]`.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.len() > 1 && b.len() > 1 && coprime_mod_p(a, b) {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    if x.is_empty() {
        return vec![BigInt::one()];
    }
    if x.last().is_some_and(Signed::is_negative) {
        x = neg(&x);
    }
    x
}

/// Exact division in `Z[t]`; the caller guarantees `b | a` with an integral quotient.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Poly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (coef, rem) = r[dr].div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (i, y) in b.iter().enumerate() {
            r[dr - db + i] -= &coef * y;
        }
        q[dr - db] = coef;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "nonzero remainder in exact division");
    trim(&mut q);
    q
}

/// A nonzero-or-zero element of `Q(t)` in the canonical form
/// `t^shift · num / den` with `num(0) != 0`, `den(0) != 0`, `gcd(num, den) = 1`
/// over `Q`, the joint integer content of `num` and `den` equal to one, and a
/// positive leading coefficient on `den`. Zero is `num = []`, `den = [1]`,
/// `shift = 0`. Equal values therefore have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct RatFunc {
    pub(crate) shift: i64,
    pub(crate) num: Poly,
    pub(crate) den: Poly,
}

fn strip_low_zeros(p: &mut Poly) -> usize {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        p.drain(..k);
    }
    k
}

impl RatFunc {
    pub(crate) fn zero() -> Self {
        RatFunc { shift: 0, num: Vec::new(), den: vec![BigInt::one()] }
    }

    pub(crate) fn from_int(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub(crate) fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { shift: exp, num: vec![c], den: vec![BigInt::one()] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn den_is_one(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one()
    }

    /// Builds the canonical form of `t^shift · num / den`.
    pub(crate) fn normalize(mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        trim(&mut num);
        trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        shift += strip_low_zeros(&mut num) as i64;
        shift -= strip_low_zeros(&mut den) as i64;
        if den.len() > 1 && num.len() > 1 {
            let g = gcd(&num, &den);
            if g.len() > 1 {
                num = div_exact(&num, &g);
                den = div_exact(&den, &g);
            }
        }
        let c = content(&num).gcd(&content(&den));
        if !c.is_one() {
            num = div_scalar_exact(&num, &c);
            den = div_scalar_exact(&den, &c);
        }
        if den.last().is_some_and(Signed::is_negative) {
            num = neg(&num);
            den = neg(&den);
        }
        RatFunc { shift, num, den }
    }

    pub(crate) fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub(crate) fn neg(&self) -> Self {
        RatFunc { shift: self.shift, num: neg(&self.num), den: self.den.clone() }
    }

    /// Multiply by `t^k`.
    pub(crate) fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        RatFunc { shift: self.shift + k, num: self.num.clone(), den: self.den.clone() }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.shift <= other.shift { (self, other) } else { (other, self) };
        let gap = (hi.shift - lo.shift) as usize;
        if lo.den == hi.den {
            let num = add(&lo.num, &shift_up(&hi.num, gap));
            return Self::normalize(lo.shift, num, lo.den.clone());
        }
        let g = gcd(&lo.den, &hi.den);
        if g.len() == 1 {
            let num = add(&mul(&lo.num, &hi.den), &shift_up(&mul(&hi.num, &lo.den), gap));
            return Self::normalize(lo.shift, num, mul(&lo.den, &hi.den));
        }
        let (lo_rest, hi_rest) = (div_exact(&lo.den, &g), div_exact(&hi.den, &g));
        let num = add(&mul(&lo.num, &hi_rest), &shift_up(&mul(&hi.num, &lo_rest), gap));
        Self::normalize(lo.shift, num, mul(&lo_rest, &hi.den))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den_is_one() && other.den_is_one() {
            // Product of primitive-content-free polynomials needs only a content pass.
            return Self::normalize(shift, mul(&self.num, &other.num), vec![BigInt::one()]);
        }
        // Cross-cancel before multiplying so the final gcd works on smaller inputs.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let (n1, d2) = (div_exact(&self.num, &g1), div_exact(&other.den, &g1));
        let (n2, d1) = (div_exact(&other.num, &g2), div_exact(&self.den, &g2));
        Self::normalize(shift, mul(&n1, &n2), mul(&d1, &d2))
    }

    pub(crate) fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.last().is_some_and(Signed::is_negative) {
            num = neg(&num);
            den = neg(&den);
        }
        Some(RatFunc { shift: -self.shift, num, den })
    }

    /// Terms `(coefficient, exponent)` of the numerator including the shift.
    pub(crate) fn numerator_terms(&self) -> Vec<(BigInt, i64)> {
        terms(&self.num, self.shift)
    }

    pub(crate) fn denominator_terms(&self) -> Option<Vec<(BigInt, i64)>> {
        (!self.den_is_one()).then(|| terms(&self.den, 0))
    }
}

fn terms(p: &[BigInt], shift: i64) -> Vec<(BigInt, i64)> {
    p.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), i as i64 + shift))
        .collect()
}
