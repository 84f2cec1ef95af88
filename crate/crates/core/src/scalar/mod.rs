//! Exact elements of a field with a discrete valuation.
//!
//! Two kinds of field are supported: `Q` with the `p`-adic valuation, where
//! elements are exact rationals, and `Q(t)` with the `t`-adic valuation, where
//! elements are reduced rational functions. Every value carries its
//! [`FieldContext`]; mixing contexts is an error.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use self::parse::parse_scalar;
use self::poly::RatFunc;
use crate::error::{Error, Result};

/// The field `K` together with its uniformizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldContext {
    /// `Q` with the `p`-adic valuation; the uniformizer is `p`.
    #[serde(rename = "p-adic")]
    PAdic { p: u64 },
    /// `Q(t)` with the `t`-adic valuation; the uniformizer is the variable.
    #[serde(rename = "function-field")]
    FunctionField { variable: char },
}

impl FieldContext {
    pub fn p_adic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldContext::PAdic { p })
    }

    pub fn function_field(variable: char) -> Result<Self> {
        if !variable.is_ascii_alphabetic() {
            return Err(Error::Invalid(format!("variable `{variable}` must be an ASCII letter")));
        }
        Ok(FieldContext::FunctionField { variable })
    }

    /// Re-checks the invariants; used after deserialization.
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldContext::PAdic { p } => Self::p_adic(p),
            FieldContext::FunctionField { variable } => Self::function_field(variable),
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::PAdic { p } => write!(f, "Q_{p}"),
            FieldContext::FunctionField { variable } => write!(f, "Q({variable})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An integer or `+∞`; the value group of the valuation plus `val(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    Fin(i64),
    Inf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == ExtInt::Inf
    }
}

impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::Inf,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            ExtInt::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ExtInt::Fin(v)),
            Raw::Str(s) if s == "inf" => Ok(ExtInt::Inf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Rational(BigRational),
    Function(RatFunc),
}

/// An exact element of `K`.
///
/// The representation is canonical, so `==` is equality of field elements.
/// The derived `Ord` is a structural order used for sorting keys; it is not
/// the order of `Q`.
///
/// The arithmetic operators panic when the operands live in different fields;
/// the `try_*` methods report [`Error::ContextMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuedScalar {
    ctx: FieldContext,
    value: Value,
}

impl ValuedScalar {
    pub fn zero(ctx: FieldContext) -> Self {
        let value = match ctx {
            FieldContext::PAdic { .. } => Value::Rational(BigRational::zero()),
            FieldContext::FunctionField { .. } => Value::Function(RatFunc::zero()),
        };
        ValuedScalar { ctx, value }
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: FieldContext, n: i64) -> Self {
        Self::from_bigint(ctx, BigInt::from(n))
    }

    pub fn from_bigint(ctx: FieldContext, n: BigInt) -> Self {
        let value = match ctx {
            FieldContext::PAdic { .. } => Value::Rational(BigRational::from_integer(n)),
            FieldContext::FunctionField { .. } => Value::Function(RatFunc::from_int(n)),
        };
        ValuedScalar { ctx, value }
    }

    /// `num / den` as a field element. Fails on a zero denominator.
    pub fn from_ratio(ctx: FieldContext, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::from_int(ctx, num).try_div(&Self::from_int(ctx, den))
    }

    /// `π^k` for the uniformizer `π` of `ctx`.
    pub fn uniformizer_pow(ctx: FieldContext, k: i64) -> Self {
        Self::one(ctx).mul_uniformizer_pow(k)
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ctx)
    }

    /// The discrete valuation; `val(0) = ∞`.
    pub fn val(&self) -> ExtInt {
        match (&self.value, self.ctx) {
            (Value::Rational(r), FieldContext::PAdic { p }) => {
                if r.is_zero() {
                    return ExtInt::Inf;
                }
                let p = BigInt::from(p);
                ExtInt::Fin(multiplicity(r.numer(), &p) - multiplicity(r.denom(), &p))
            }
            (Value::Function(f), _) => f.valuation().map_or(ExtInt::Inf, ExtInt::Fin),
            _ => unreachable!("value kind always matches its context"),
        }
    }

    /// Whether the element lies in the valuation ring `R`.
    pub fn is_integral(&self) -> bool {
        self.val() >= ExtInt::Fin(0)
    }

    /// Whether the element is a unit of `R`.
    pub fn is_unit(&self) -> bool {
        self.val() == ExtInt::Fin(0)
    }

    /// `self · π^k`. Cheap for function fields (only the shift changes).
    pub fn mul_uniformizer_pow(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let value = match (&self.value, self.ctx) {
            (Value::Rational(r), FieldContext::PAdic { p }) => {
                let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
                if k > 0 {
                    Value::Rational(r * BigRational::from_integer(pk))
                } else {
                    Value::Rational(r / BigRational::from_integer(pk))
                }
            }
            (Value::Function(f), _) => Value::Function(f.shifted(k)),
            _ => unreachable!("value kind always matches its context"),
        };
        ValuedScalar { ctx: self.ctx, value }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx, other.ctx))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Function(a), Value::Function(b)) => Value::Function(a.add(b)),
            _ => unreachable!("value kind always matches its context"),
        };
        Ok(ValuedScalar { ctx: self.ctx, value })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Function(a), Value::Function(b)) => Value::Function(a.mul(b)),
            _ => unreachable!("value kind always matches its context"),
        };
        Ok(ValuedScalar { ctx: self.ctx, value })
    }

    pub fn inv(&self) -> Result<Self> {
        let value = match &self.value {
            Value::Rational(r) if r.is_zero() => return Err(Error::DivisionByZero),
            Value::Rational(r) => Value::Rational(r.recip()),
            Value::Function(f) => Value::Function(f.inv().ok_or(Error::DivisionByZero)?),
        };
        Ok(ValuedScalar { ctx: self.ctx, value })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.ctx);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn neg_ref(&self) -> Self {
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(-r),
            Value::Function(f) => Value::Function(f.neg()),
        };
        ValuedScalar { ctx: self.ctx, value }
    }

    /// Unit part `self / π^val(self)`; `None` for zero.
    pub fn unit_part(&self) -> Option<Self> {
        self.val().finite().map(|v| self.mul_uniformizer_pow(-v))
    }

    /// The exact rational value, for p-adic elements.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            Value::Function(_) => None,
        }
    }
}

/// Exponent of the prime `p` in the nonzero integer `n`.
fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&ValuedScalar> for &ValuedScalar {
            type Output = ValuedScalar;
            fn $method(self, rhs: &ValuedScalar) -> ValuedScalar {
                self.$try(rhs).expect("field context mismatch")
            }
        }
        impl $tr<ValuedScalar> for ValuedScalar {
            type Output = ValuedScalar;
            fn $method(self, rhs: ValuedScalar) -> ValuedScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &ValuedScalar {
    type Output = ValuedScalar;
    fn neg(self) -> ValuedScalar {
        self.neg_ref()
    }
}

impl Neg for ValuedScalar {
    type Output = ValuedScalar;
    fn neg(self) -> ValuedScalar {
        self.neg_ref()
    }
}

fn write_term(out: &mut String, coef: &BigInt, exp: i64, var: char, first: bool) {
    let negative = coef.is_negative();
    let mag = coef.abs();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    match exp {
        0 => out.push_str(&mag.to_string()),
        _ => {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push(var);
            if exp != 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
        }
    }
}

fn write_poly(terms: &[(BigInt, i64)], var: char) -> String {
    let mut s = String::new();
    for (i, (c, e)) in terms.iter().enumerate() {
        write_term(&mut s, c, *e, var, i == 0);
    }
    s
}

/// Writes the value in the scalar grammar accepted by [`parse_scalar`].
impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.value, self.ctx) {
            (Value::Rational(r), _) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            (Value::Function(rf), FieldContext::FunctionField { variable }) => {
                if rf.is_zero() {
                    return f.write_str("0");
                }
                let mut num = rf.numerator_terms();
                match rf.denominator_terms() {
                    None => f.write_str(&write_poly(&num, variable)),
                    Some(mut den) => {
                        if den[0].0.is_negative() {
                            for term in num.iter_mut().chain(den.iter_mut()) {
                                term.0 = -term.0.clone();
                            }
                        }
                        let n = write_poly(&num, variable);
                        let d = write_poly(&den, variable);
                        let n = if num.len() > 1 { format!("({n})") } else { n };
                        let d = if den.len() > 1 || den[0].1 != 0 { format!("({d})") } else { d };
                        write!(f, "{n}/{d}")
                    }
                }
            }
            _ => unreachable!("value kind always matches its context"),
        }
    }
}

impl fmt::Debug for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
