//! Truncated power series in `T` and the plethystic `Exp`/`Log` pair.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPoly, Rational, RationalFn, Vars};

/// Coefficient ring of a [`TruncSeries`]: a commutative Q-algebra with
/// Adams operations `x ↦ x^k` applied to every variable.
///
/// All coefficients of one series share a variable list, so the ring
/// operations here never see mismatched operands.
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn vars(&self) -> &Vars;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn adams(&self, k: u32) -> Self;
    /// Exact equality, possibly more expensive than structural equality.
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coeff for LaurentPoly {
    fn vars(&self) -> &Vars {
        LaurentPoly::vars(self)
    }
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::scale(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        LaurentPoly::adams(self, k)
    }
}

impl Coeff for RationalFn {
    fn vars(&self) -> &Vars {
        RationalFn::vars(self)
    }
    fn zero_like(&self) -> Self {
        RationalFn::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RationalFn::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("series coefficients share variables")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("series coefficients share variables")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("series coefficients share variables")
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFn::scale(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        RationalFn::adams(self, k)
    }
    fn same(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

/// `Σ_{n=0}^{N} c_n T^n`, everything past `T^N` discarded.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Series from `c_0..c_N`. Panics on an empty list; errors on mixed variables.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        let v = coeffs[0].vars();
        if let Some(bad) = coeffs.iter().find(|c| c.vars() != v) {
            return Err(Error::VarMismatch {
                left: v.names().to_vec(),
                right: bad.vars().names().to_vec(),
            });
        }
        Ok(TruncSeries { coeffs })
    }

    /// Zero series of order `n`, shaped like `template`.
    pub fn zero(template: &C, n: usize) -> Self {
        TruncSeries { coeffs: vec![template.zero_like(); n + 1] }
    }

    pub fn one(template: &C, n: usize) -> Self {
        let mut s = Self::zero(template, n);
        s.coeffs[0] = template.one_like();
        s
    }

    /// Sets `c_k`, ignoring `k > N`.
    pub fn with_coeff(mut self, k: usize, c: C) -> Self {
        if k <= self.order() {
            self.coeffs[k] = c;
        }
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Same series cut down to order `n ≤ N`.
    pub fn truncate(&self, n: usize) -> Self {
        TruncSeries { coeffs: self.coeffs[..=n.min(self.order())].to_vec() }
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> TruncSeries<D> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Coeff>(&self, f: impl FnMut(&C) -> Result<D>) -> Result<TruncSeries<D>> {
        Ok(TruncSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::usage(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        if self.coeffs[0].vars() != other.coeffs[0].vars() {
            return Err(Error::VarMismatch {
                left: self.coeffs[0].vars().names().to_vec(),
                right: other.coeffs[0].vars().names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(&self.coeffs[0], n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.coeffs[j].is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Coefficient-wise exact comparison; returns the first differing index.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().max(other.order());
        (0..=n).find(|&k| match (self.coeffs.get(k), other.coeffs.get(k)) {
            (Some(a), Some(b)) => !a.same(b),
            (Some(a), None) | (None, Some(a)) => !a.is_zero(),
            (None, None) => false,
        })
    }

    /// The `U_n` with `log F = Σ U_n T^n / n`, for `n = 1..=N`.
    pub fn log_raw(&self) -> Result<Vec<C>> {
        if !self.coeffs[0].same(&self.coeffs[0].one_like()) {
            return Err(Error::usage("log needs constant term 1"));
        }
        let n = self.order();
        let f = &self.coeffs;
        let mut u: Vec<C> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut acc = f[k].scale(&rat(k as i64));
            for j in 1..k {
                if !u[j - 1].is_zero() && !f[k - j].is_zero() {
                    acc = acc.sub(&u[j - 1].mul(&f[k - j]));
                }
            }
            u.push(acc);
        }
        Ok(u)
    }

    /// Plethystic logarithm: the unique `V` with `Exp(V) = F`.
    pub fn log_pleth(&self) -> Result<Self> {
        let u = self.log_raw()?;
        let v = v_from_u(&u);
        let mut coeffs = Vec::with_capacity(v.len() + 1);
        coeffs.push(self.coeffs[0].zero_like());
        coeffs.extend(v);
        Ok(TruncSeries { coeffs })
    }

    /// Plethystic exponential `exp(Σ_r ψ_r(V)(T^r) / r)`.
    pub fn exp_pleth(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::usage("Exp needs zero constant term"));
        }
        let n = self.order();
        let u = u_from_v(&self.coeffs[1..]);
        let mut f = Self::one(&self.coeffs[0], n);
        for k in 1..=n {
            let mut acc = f.coeffs[0].zero_like();
            for j in 1..=k {
                if !u[j - 1].is_zero() && !f.coeffs[k - j].is_zero() {
                    acc = acc.add(&u[j - 1].mul(&f.coeffs[k - j]));
                }
            }
            f.coeffs[k] = acc.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(f)
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.order() + 1)
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `V_n = (1/n) Σ_{d|n} μ(d) ψ_d(U_{n/d})`, with `u[k-1] = U_k`.
pub fn v_from_u<C: Coeff>(u: &[C]) -> Vec<C> {
    (1..=u.len())
        .map(|n| {
            let mut acc = u[0].zero_like();
            for d in divisors(n) {
                let m = mobius(d);
                if m == 0 {
                    continue;
                }
                let term = u[n / d - 1].adams(d as u32);
                acc = if m > 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc.scale(&Rational::new(1.into(), (n as i64).into()))
        })
        .collect()
}

/// `U_n = Σ_{d|n} d ψ_{n/d}(V_d)`, with `v[k-1] = V_k`.
pub fn u_from_v<C: Coeff>(v: &[C]) -> Vec<C> {
    (1..=v.len())
        .map(|n| {
            let mut acc = v[0].zero_like();
            for d in divisors(n) {
                if !v[d - 1].is_zero() {
                    acc = acc.add(&v[d - 1].adams((n / d) as u32).scale(&rat(d as i64)));
                }
            }
            acc
        })
        .collect()
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The number-theoretic Möbius function.
pub fn mobius(mut n: usize) -> i64 {
    assert!(n > 0);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
