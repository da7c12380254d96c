// SPDX-License-Identifier: Apache-2.0

//! Worst-case constants of the scheme construction.
//!
//! Most of them are far too large to write down. Each value is kept exact
//! when it fits in [`MAX_EXACT_BITS`] bits and otherwise as a formula over
//! exact ingredients together with an estimate of `log2(log2(value))`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::SchemeParams;
use crate::graph::DEFAULT_VERTEX_BUDGET;

pub const MAX_EXACT_BITS: u64 = 1 << 20;

/// `n(x, y, z)`: the path length needed to split a geodesic into windows, by its recurrence;
/// `None` on overflow.
pub fn n_rec(x: usize, y: usize, z: usize) -> Option<u128> {
    if x == 0 {
        return None;
    }
    let (y, z) = (y as u128, z as u128);
    let mut n = y.checked_add(z)?;
    for i in 2..=x as u128 {
        let inner = n.checked_sub((i - 1).checked_mul(z)?)?;
        n = y.checked_mul(inner)?.checked_add(i.checked_mul(z)?)?;
    }
    Some(n)
}

/// Arbitrary-precision recurrence; `x` iterations.
pub fn n_rec_big(x: usize, y: &BigUint, z: &BigUint) -> BigUint {
    assert!(x >= 1, "n is defined for x >= 1");
    let mut n = y + z;
    for i in 2..=x {
        let i = BigUint::from(i);
        n = y * (n - (&i - 1u32) * z) + i * z;
    }
    n
}

/// `log2` of a positive big integer as a float.
fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::log2);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// `base^exp` when the result stays under `MAX_EXACT_BITS` bits.
fn pow_bounded(base: &BigUint, exp: &BigUint) -> Option<BigUint> {
    if base.is_zero() || base.is_one() || exp.is_zero() {
        return Some(if base.is_zero() && !exp.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        });
    }
    let e = exp.to_u64()?;
    if (e as f64) * log2_big(base) > MAX_EXACT_BITS as f64 {
        return None;
    }
    Some(num_traits::pow::pow(base.clone(), e as usize))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Exact(BigUint),
    /// Defining formula and an estimate of `log2(log2(value))`.
    Formula { expr: String, log2_log2: f64 },
}

impl Magnitude {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Formula { .. } => None,
        }
    }

    pub fn log2_log2(&self) -> f64 {
        match self {
            Magnitude::Exact(v) if *v <= BigUint::one() => f64::NEG_INFINITY,
            Magnitude::Exact(v) => log2_big(v).log2(),
            Magnitude::Formula { log2_log2, .. } => *log2_log2,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(v) => write!(f, "{v}"),
            Magnitude::Formula { expr, .. } => f.write_str(expr),
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Magnitude", 3)?;
        match self {
            Magnitude::Exact(v) => {
                st.serialize_field("value", &Some(v.to_string()))?;
                st.serialize_field("expr", &v.to_string())?;
            }
            Magnitude::Formula { expr, .. } => {
                st.serialize_field("value", &None::<String>)?;
                st.serialize_field("expr", expr)?;
            }
        }
        let ll = self.log2_log2();
        st.serialize_field("log2_log2", &ll.is_finite().then_some(ll))?;
        st.end()
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsTable {
    pub h: usize,
    pub k: usize,
    pub r: usize,
    #[serde(serialize_with = "as_decimal")]
    pub d_homo: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub n1: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub n2: BigUint,
    pub t0: Magnitude,
    pub t1: Magnitude,
    pub k0: Magnitude,
    /// `n(t1, k0, 3) + 1 = k0^t1 + 3 t1 + 1`.
    pub l0: Magnitude,
    #[serde(serialize_with = "as_decimal")]
    pub d: BigUint,
    /// `(h-2)(r+1)^(2^(r-1))(k+h)2^(r-1)`; `t` is `2^(this + 2^(r-1))`.
    pub t_exponent: Magnitude,
    pub t: Magnitude,
    pub n_star: Magnitude,
    pub n: Magnitude,
    pub practical: bool,
}

impl ConstantsTable {
    /// Practical parameters when every value fits a machine word.
    pub fn scheme_params(&self) -> Option<SchemeParams> {
        let small = |m: &Magnitude| m.exact().and_then(|v| v.to_usize());
        Some(SchemeParams {
            h: self.h,
            k: self.k,
            r: self.r,
            d: self.d.to_usize()?,
            n: small(&self.n)?,
            l0: small(&self.l0)?,
            t: small(&self.t)?,
        })
    }

    /// Exact comparison of `t`: `Some(true)` when `self.t >= other.t`.
    pub fn t_at_least(&self, other: &ConstantsTable) -> Option<bool> {
        let e = |c: &ConstantsTable| -> Option<BigUint> {
            Some(c.t_exponent.exact()? + (BigUint::one() << (c.r - 1)))
        };
        Some(e(self)? >= e(other)?)
    }

    /// Exact comparison of `N`. `N` is nondecreasing in `d`, `t1`, `k0`,
    /// `k + h`, `n1` and `n2`, so dominance in every ingredient settles it
    /// even when neither value can be expanded. `None` when an ingredient
    /// is not exact or the ingredients do not all point the same way.
    pub fn n_at_least(&self, other: &ConstantsTable) -> Option<bool> {
        if let (Some(a), Some(b)) = (self.n.exact(), other.n.exact()) {
            return Some(a >= b);
        }
        let (t1a, t1b) = (self.t1.exact()?, other.t1.exact()?);
        let (k0a, k0b) = (self.k0.exact()?, other.k0.exact()?);
        let ge = self.d >= other.d
            && t1a >= t1b
            && k0a >= k0b
            && self.k + self.h >= other.k + other.h
            && self.n1 >= other.n1
            && self.n2 >= other.n2;
        let eq = self.d == other.d
            && t1a == t1b
            && k0a == k0b
            && self.k + self.h == other.k + other.h
            && self.n1 == other.n1
            && self.n2 == other.n2;
        let le = self.d <= other.d
            && t1a <= t1b
            && k0a <= k0b
            && self.k + self.h <= other.k + other.h
            && self.n1 <= other.n1
            && self.n2 <= other.n2;
        if ge {
            Some(true)
        } else if le {
            Some(eq)
        } else {
            None
        }
    }
}

/// `log2` of a magnitude (may be infinite for formulas).
fn lg(m: &Magnitude) -> f64 {
    match m {
        Magnitude::Exact(v) if v.is_zero() => f64::NEG_INFINITY,
        Magnitude::Exact(v) => log2_big(v),
        Magnitude::Formula { log2_log2, .. } => log2_log2.exp2(),
    }
}

fn formula(expr: String, log2_of_value: f64) -> Magnitude {
    Magnitude::Formula {
        expr,
        log2_log2: log2_of_value.log2(),
    }
}

/// `base^exp` as a magnitude, written as `expr` when it cannot be expanded.
fn power(base: &Magnitude, exp: &Magnitude, expr: &str) -> Magnitude {
    if let (Some(b), Some(e)) = (base.exact(), exp.exact()) {
        if let Some(p) = pow_bounded(b, e) {
            return Magnitude::Exact(p);
        }
    }
    Magnitude::Formula {
        expr: expr.to_string(),
        log2_log2: lg(exp) + lg(base).log2(),
    }
}

/// Derived constants for `(h, k, r)` and the caller-supplied homogeneity
/// constants. The caller's `n2` is raised to `N*` when it is smaller.
pub fn paper_constants(h: usize, k: usize, r: usize, d_homo: u64, n1: u64, n2: u64) -> ConstantsTable {
    assert!(h >= 3 && k >= 1 && r >= 1, "need h >= 3, k >= 1, r >= 1");
    let ex = |x: BigUint| Magnitude::Exact(x);
    let big = |x: usize| BigUint::from(x);
    let half = ex(BigUint::one() << (r - 1));

    // t0 = (h-2)(r+1) 2^(r-1) r^(2^(r-1))
    let t0 = match power(&ex(big(r)), &half, &format!("{r}^(2^{})", r - 1)) {
        Magnitude::Exact(p) => ex(big(h - 2) * big(r + 1) * half.exact().unwrap() * p),
        m => formula(
            format!("{}*{}*2^{}*{m}", h - 2, r + 1, r - 1),
            lg(&m) + ((h - 2) * (r + 1)) as f64 + (r - 1) as f64,
        ),
    };
    let exp1 = match &t0 {
        Magnitude::Exact(v) => ex(v + big(r)),
        m => m.clone(),
    };
    let t1 = power(&ex(big(3)), &exp1, &format!("3^({r} + t0)"));
    let k0 = match &t1 {
        Magnitude::Exact(v) => ex(BigUint::one() + big(h + k - 1) * (BigUint::from(6u32) * v + 1u32)),
        m => formula(format!("1 + {}*(6*t1 + 1)", h + k - 1), lg(m) + ((6 * (h + k - 1)) as f64).log2()),
    };
    // n(t1, k0, 3) = k0^t1 + 3 t1
    let l0 = match (power(&k0, &t1, "k0^t1"), t1.exact()) {
        (Magnitude::Exact(p), Some(t)) => ex(p + BigUint::from(3u32) * t + 1u32),
        (m, _) => Magnitude::Formula {
            expr: "k0^t1 + 3*t1 + 1".into(),
            log2_log2: m.log2_log2(),
        },
    };
    let d = BigUint::from(d_homo) + 1u32;

    let t_exponent = match power(&ex(big(r + 1)), &half, &format!("{}^(2^{})", r + 1, r - 1)) {
        Magnitude::Exact(b) => ex(big(h - 2) * b * big(k + h) * half.exact().unwrap()),
        m => formula(
            format!("{}*{m}*{}*2^{}", h - 2, k + h, r - 1),
            lg(&m) + (((h - 2) * (k + h)) as f64).log2() + (r - 1) as f64,
        ),
    };
    let t = match &t_exponent {
        Magnitude::Exact(e) => {
            let total = e + half.exact().unwrap();
            power(&ex(big(2)), &ex(total.clone()), &format!("2^{total}"))
        }
        m => Magnitude::Formula {
            expr: format!("2^({m} + 2^{})", r - 1),
            log2_log2: lg(m).log2(),
        },
    };

    // N* = (k+h) d^l0, N = d^l0 + N1 + max(n2, N*)
    let d_pow = power(&ex(d.clone()), &l0, "d^l0");
    let n1_big = BigUint::from(n1);
    let n2_big = BigUint::from(n2);
    let (n_star, n) = match &d_pow {
        Magnitude::Exact(p) => {
            let ns = big(k + h) * p;
            let n2_eff = (&ns).max(&n2_big).clone();
            (ex(ns.clone()), ex(p + &n1_big + n2_eff))
        }
        m => (
            formula(format!("{}*d^l0", k + h), lg(m) + ((k + h) as f64).log2()),
            formula(format!("d^l0 + {n1} + max({n2}, N*)"), lg(m) + ((k + h + 1) as f64).log2()),
        ),
    };
    let budget = BigUint::from(DEFAULT_VERTEX_BUDGET);
    let fits = |m: &Magnitude| m.exact().is_some_and(|v| *v <= budget);
    let practical = fits(&l0) && fits(&t) && fits(&n_star) && fits(&n) && d <= budget;
    ConstantsTable {
        h,
        k,
        r,
        d_homo: BigUint::from(d_homo),
        n1: n1_big,
        n2: n2_big,
        t0,
        t1,
        k0,
        l0,
        d,
        t_exponent,
        t,
        n_star,
        n,
        practical,
    }
}
