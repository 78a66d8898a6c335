//! Closed forms and lower bounds for `eta`, in exact arithmetic.
//!
//! Everything here is independent of group objects and generic over the
//! integer type; comparisons are exact (rationals, or cross-multiplied
//! integers where a bound involves `n / l`).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::scalar::{lift, ExactInt, FloatScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    /// `lhs` divides `rhs`; both must be integers.
    #[serde(rename = "divides")]
    Divides,
}

impl Relation {
    pub fn holds<T: ExactInt>(self, lhs: &Ratio<T>, rhs: &Ratio<T>) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Divides => {
                lhs.is_integer()
                    && rhs.is_integer()
                    && !lhs.is_zero()
                    && (rhs.numer().clone() % lhs.numer().clone()).is_zero()
            }
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Divides => "divides",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Named integer parameters of a check (`p`, `n`, `l`, `a`, `b`, ...).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Context(pub BTreeMap<String, i64>);

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn with(mut self, key: &str, value: impl ToPrimitive) -> Self {
        self.0
            .insert(key.to_owned(), value.to_i64().expect("parameter fits i64"));
        self
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.0.get(key).copied()
    }
}

/// One exact comparison `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck<T: ExactInt> {
    pub label: String,
    pub lhs: Ratio<T>,
    pub relation: Relation,
    pub rhs: Ratio<T>,
    /// Whether the relation holds; computed once at construction.
    pub pass: bool,
    pub context: Context,
}

impl<T: ExactInt> BoundCheck<T> {
    pub fn new(label: impl Into<String>, lhs: Ratio<T>, relation: Relation, rhs: Ratio<T>, context: Context) -> Self {
        let pass = relation.holds(&lhs, &rhs);
        BoundCheck {
            label: label.into(),
            lhs,
            relation,
            rhs,
            pass,
            context,
        }
    }
}

fn int_ratio<T: ExactInt>(v: impl Into<i128>) -> Ratio<T> {
    Ratio::from_integer(lift(v))
}

/// `g_p(a, b) = p^(l-1) ((k - l)(p - 1) + p + 1)` with `k = max(a, b)`,
/// `l = min(a, b)`: the value of `eta(C_{p^a} x C_{p^b})`.
pub fn g_p<T: ExactInt>(p: u64, a: u32, b: u32) -> T {
    assert!(a >= 1 && b >= 1, "g_p needs positive exponents");
    let (k, l) = (a.max(b), a.min(b));
    let p_t: T = lift(p);
    let tail = lift::<T>(k - l) * (p_t.clone() - T::one()) + p_t.clone() + T::one();
    num_traits::pow(p_t, (l - 1) as usize) * tail
}

/// `phi(p^k)`; `phi(1) = 1`.
pub fn euler_phi_prime_power<T: ExactInt>(p: u64, k: u32) -> T {
    if k == 0 {
        return T::one();
    }
    let p_t: T = lift(p);
    num_traits::pow(p_t.clone(), (k - 1) as usize) * (p_t - T::one())
}

/// `(p - 1)(n - 2) + p + 1`, the lower bound for noncyclic abelian groups of
/// order `p^n`.
pub fn abelian_bound<T: ExactInt>(p: u64, n: u32) -> T {
    let p_t: T = lift(p);
    (p_t.clone() - T::one()) * (lift::<T>(n) - lift(2)) + p_t + T::one()
}

/// `(p + 1) n / 2`, the sharper abelian bound for odd `p`.
pub fn odd_abelian_bound<T: ExactInt>(p: u64, n: u32) -> Result<Ratio<T>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("odd_abelian_bound needs an odd prime, got {p}")));
    }
    Ok(Ratio::new(lift::<T>(p + 1) * lift(n), lift(2)))
}

/// `(p - 1)(n / l - 2) + p + 1` as an exact rational.
pub fn class_bound<T: ExactInt>(p: u64, n: u32, l: u32) -> Result<Ratio<T>> {
    if l == 0 {
        return Err(Error::Precondition("nilpotence class must be at least 1".into()));
    }
    let p_r: Ratio<T> = int_ratio(p);
    let n_over_l = Ratio::new(lift::<T>(n), lift(l));
    Ok((p_r.clone() - Ratio::one()) * (n_over_l - int_ratio(2)) + p_r + Ratio::one())
}

/// `(a + 1) eta(H) + 1`, the lower bound for `eta(H x C_{p^a})`.
pub fn product_bound<T: ExactInt>(a: u32, eta_h: u64) -> T {
    lift::<T>(a + 1) * lift(eta_h) + T::one()
}

/// `((eta - p - 1) / (p - 1) + 2) l`, the bound on `log_p |G|` implied by
/// the class bound.
pub fn size_bound_from_eta<T: ExactInt>(p: u64, eta: u64, l: u32) -> Ratio<T> {
    let num = lift::<T>(eta) - lift(p) - T::one();
    (Ratio::new(num, lift(p - 1)) + int_ratio(2)) * int_ratio(l)
}

/// The class bound for a group with the given `eta`, decided by
/// `l (eta - p - 1) >= (p - 1)(n - 2l)` in integers. The recorded `rhs` is
/// [`class_bound`]; both routes must agree.
pub fn main_theorem_check<T: ExactInt>(p: u64, n: u32, l: u32, eta: u64) -> Result<BoundCheck<T>> {
    let rhs = class_bound::<T>(p, n, l)?;
    let left = lift::<T>(l) * (lift::<T>(eta) - lift(p) - T::one());
    let right = lift::<T>(p - 1) * (lift::<T>(n) - lift::<T>(2 * l));
    let mut check = BoundCheck::new(
        "eta >= (p-1)(n/l-2)+p+1",
        int_ratio(eta),
        Relation::Ge,
        rhs,
        Context::new().with("p", p).with("n", n).with("l", l).with("eta", eta),
    );
    let cross = left >= right;
    if cross != check.pass {
        return Err(Error::Inconsistent(format!(
            "cross-multiplied and rational forms disagree at p={p} n={n} l={l} eta={eta}"
        )));
    }
    check.pass = cross;
    Ok(check)
}

/// Exhaustive scan of `g_p(n - b, b)` over `1 <= b <= n / 2`.
#[derive(Clone, Debug)]
pub struct GpMinimum<T: ExactInt> {
    pub p: u64,
    pub n: u32,
    /// `(b, g_p(n - b, b))` for each `b`.
    pub values: Vec<(u32, T)>,
    pub minimum: T,
    /// Whether `b = 1` attains the minimum.
    pub attained_at_one: bool,
    /// `minimum >= abelian_bound(p, n)`.
    pub check: BoundCheck<T>,
}

impl<T: ExactInt> GpMinimum<T> {
    pub fn passed(&self) -> bool {
        self.attained_at_one && self.check.pass
    }
}

pub fn check_gp_minimum<T: ExactInt>(p: u64, n: u32) -> Result<GpMinimum<T>> {
    if n < 2 {
        return Err(Error::Precondition(format!("check_gp_minimum needs n >= 2, got {n}")));
    }
    let values: Vec<(u32, T)> = (1..=n / 2).map(|b| (b, g_p::<T>(p, n - b, b))).collect();
    let minimum = values.iter().map(|(_, v)| v.clone()).min().expect("b = 1 is always scanned");
    let attained_at_one = values[0].1 == minimum;
    let check = BoundCheck::new(
        "min_b g_p(n-b,b) >= (p-1)(n-2)+p+1",
        Ratio::from_integer(minimum.clone()),
        Relation::Ge,
        Ratio::from_integer(abelian_bound(p, n)),
        Context::new().with("p", p).with("n", n),
    );
    Ok(GpMinimum {
        p,
        n,
        values,
        minimum,
        attained_at_one,
        check,
    })
}

/// Whether `(p + 1) / (2(p - 1)) - 1 / ln p` is certainly positive.
///
/// Each floating-point quantity is widened by a few ulps in the unfavourable
/// direction before comparing, so `true` holds for the exact reals.
pub fn critical_point_positivity<F: FloatScalar>(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let c = |v: f64| F::from_f64(v).expect("constant fits float type");
    let pf = F::from_u64(p).expect("prime fits float type");
    if pf.to_u64() != Some(p) {
        return false;
    }
    let slack = c(8.0) * F::epsilon();
    let lower = |v: F| v * (F::one() - slack);
    let upper = |v: F| v * (F::one() + slack);
    let ratio_lo = lower((pf + F::one()) / (c(2.0) * (pf - F::one())));
    let ln_lo = lower(pf.ln());
    if ln_lo <= F::zero() {
        return false;
    }
    let inv_ln_hi = upper(F::one() / ln_lo);
    ratio_lo > inv_ln_hi
}
