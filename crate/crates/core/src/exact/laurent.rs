use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Maximum number of variables a polynomial may carry.
pub const MAX_VARS: usize = 3;

/// Exponent vector. Entries past the variable count are always zero, so the
/// derived lexicographic order is the canonical term order.
pub type Exponents = [i32; MAX_VARS];

/// Ordered list of variable names shared by every operand of a ring operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(
            !names.is_empty() && names.len() <= MAX_VARS,
            "a polynomial carries between 1 and {MAX_VARS} variables"
        );
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Where a variable goes under [`LaurentPoly::substitute`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Zero,
    /// `sign * out_vars^exps`, with `sign` equal to +1 or -1.
    Monomial { sign: i8, exps: Vec<i32> },
}

impl Image {
    pub fn monomial(sign: i8, exps: &[i32]) -> Self {
        Image::Monomial { sign, exps: exps.to_vec() }
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored and terms live in a `BTreeMap`, so the
/// representation is canonical: two equal polynomials are structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

fn pad(vars: &Vars, exps: &[i32]) -> Exponents {
    assert_eq!(exps.len(), vars.len(), "exponent vector length must equal variable count");
    let mut e = [0; MAX_VARS];
    e[..exps.len()].copy_from_slice(exps);
    e
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    let mut e = *a;
    for i in 0..MAX_VARS {
        e[i] += b[i];
    }
    e
}

fn sub_exps(a: &Exponents, b: &Exponents) -> Exponents {
    let mut e = *a;
    for i in 0..MAX_VARS {
        e[i] -= b[i];
    }
    e
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn monomial(vars: &Vars, exps: &[i32], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(pad(vars, exps), c);
        }
        p
    }

    /// The variable `name` itself.
    pub fn var(vars: &Vars, name: &str) -> Self {
        let i = vars.index_of(name).unwrap_or_else(|| panic!("unknown variable `{name}`"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, &e, Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(pad(vars, &e), c);
        }
        p
    }

    /// Integer-coefficient convenience constructor: `[(exps, coeff)]`.
    pub fn from_int_terms(vars: &Vars, terms: &[(&[i32], i64)]) -> Self {
        Self::from_terms(
            vars,
            terms.iter().map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into()))),
        )
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&[0; MAX_VARS]).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &Rational)> + '_ {
        let n = self.nvars();
        self.terms.iter().map(move |(e, c)| (&e[..n], c))
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(&pad(&self.vars, exps)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&[0; MAX_VARS]).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&[i32], &Rational)> {
        self.terms().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&[i32], &Rational)> {
        self.terms().next()
    }

    /// Smallest exponent of variable `i` over all terms.
    pub fn min_degree(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn max_degree(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        // Integer fast path: accumulate without per-step gcd.
        if self.is_integral() && other.is_integral() {
            let mut acc: HashMap<Exponents, BigInt> =
                HashMap::with_capacity(self.len() * other.len() / 2 + 1);
            for (ea, ca) in &self.terms {
                let ca = ca.numer();
                for (eb, cb) in &other.terms {
                    *acc.entry(add_exps(ea, eb)).or_default() += ca * cb.numer();
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, Rational::from_integer(c)))
                .collect();
            return Ok(LaurentPoly { vars: self.vars.clone(), terms });
        }
        // Common-denominator path: clear denominators, multiply over Z, rescale.
        let (da, na) = self.clear_denominators();
        let (db, nb) = other.clear_denominators();
        let prod = na.checked_mul(&nb)?;
        Ok(prod.scale(&Rational::new(BigInt::one(), da * db)))
    }

    /// Returns `(d, d * self)` with `d` the lcm of coefficient denominators.
    fn clear_denominators(&self) -> (BigInt, LaurentPoly) {
        let d = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = self.scale(&Rational::from_integer(d.clone()));
        (d, scaled)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(c.into()))
    }

    /// Multiply by the monomial `vars^exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let s = pad(&self.vars, exps);
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (add_exps(e, &s), c.clone())).collect(),
        }
    }

    /// Nonnegative integer power by repeated squaring. `pow(0)` is one.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents are only defined for single terms.
    pub fn pow_i(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        if self.len() != 1 {
            return Err(Error::usage("negative power of a non-monomial Laurent polynomial"));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv = LaurentPoly {
            vars: self.vars.clone(),
            terms: std::iter::once((sub_exps(&[0; MAX_VARS], e), c.recip())).collect(),
        };
        Ok(inv.pow((-k) as u32))
    }

    /// Adams operation `x_i -> x_i^k` on every variable.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "adams operation needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        let k = k as i32;
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2.iter_mut().for_each(|x| *x *= k);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Replaces every variable by its [`Image`] in the polynomial ring over
    /// `out_vars`. Images are given per input variable, in order.
    pub fn substitute(&self, images: &[Image], out_vars: &Vars) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::usage(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        for im in images {
            if let Image::Monomial { sign, exps } = im {
                if (*sign != 1 && *sign != -1) || exps.len() != out_vars.len() {
                    return Err(Error::usage("substitution image must be ±monomial in the output variables"));
                }
            }
        }
        let mut out = Self::zero(out_vars);
        'terms: for (e, c) in &self.terms {
            let mut exps = [0i32; MAX_VARS];
            let mut coeff = c.clone();
            for (i, im) in images.iter().enumerate() {
                let k = e[i];
                match im {
                    Image::Zero => {
                        if k > 0 {
                            continue 'terms;
                        }
                        if k < 0 {
                            return Err(Error::DivisionByZero);
                        }
                    }
                    Image::Monomial { sign, exps: m } => {
                        for (j, mj) in m.iter().enumerate() {
                            exps[j] += mj * k;
                        }
                        if *sign < 0 && k % 2 != 0 {
                            coeff = -coeff;
                        }
                    }
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Single-variable substitution `var -> image`, other variables fixed.
    /// The image is a ±monomial in this polynomial's own variables.
    pub fn substitute_var(&self, var: &str, image: Image) -> Result<Self> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::usage(format!("unknown variable `{var}`")))?;
        let n = self.nvars();
        let images: Vec<Image> = (0..n)
            .map(|i| {
                if i == idx {
                    image.clone()
                } else {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    Image::Monomial { sign: 1, exps: e }
                }
            })
            .collect();
        self.substitute(&images, &self.vars)
    }

    /// Re-expresses a polynomial in `s` as one in `s^2`, renaming the
    /// variable. Fails if any exponent of `var` is odd.
    pub fn halve_exponents(&self, var: &str, new_name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::usage(format!("unknown variable `{var}`")))?;
        let mut names = self.vars.names().to_vec();
        names[idx] = new_name.to_string();
        let vars = Vars::new(&names);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[idx] % 2 != 0 {
                return Err(Error::HalfIntegerResidue { var: var.to_string() });
            }
            let mut e2 = *e;
            e2[idx] /= 2;
            terms.insert(e2, c.clone());
        }
        Ok(LaurentPoly { vars, terms })
    }

    /// Inverse of [`halve_exponents`](Self::halve_exponents): `q -> s^2`.
    pub fn double_exponents(&self, var: &str, new_name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::usage(format!("unknown variable `{var}`")))?;
        let mut names = self.vars.names().to_vec();
        names[idx] = new_name.to_string();
        let vars = Vars::new(&names);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[idx] *= 2;
                (e2, c.clone())
            })
            .collect();
        Ok(LaurentPoly { vars, terms })
    }

    /// Same terms, different variable names (same count).
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        LaurentPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Evaluates at a rational point. Zero at a negative exponent is an error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::usage("evaluation point has wrong dimension"));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                if x.is_zero() {
                    if k < 0 {
                        return Err(Error::DivisionByZero);
                    }
                    t = Rational::zero();
                    break;
                }
                t *= num_traits::pow::Pow::pow(x, k);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn eval_int(&self, point: &[i64]) -> Result<Rational> {
        let pt: Vec<Rational> = point.iter().map(|&x| Rational::from_integer(x.into())).collect();
        self.eval(&pt)
    }

    /// Exact division. `Ok(None)` means `den` does not divide `self`.
    ///
    /// Runs lexicographic long division. For Laurent polynomials the exact
    /// quotient must fit in the exponent box `[min(num)-min(den), max(num)-max(den)]`
    /// per variable, which bounds the loop.
    pub fn exact_divide(&self, den: &Self) -> Result<Option<Self>> {
        self.check_vars(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(&self.vars)));
        }
        let n = self.nvars();
        let mut lo = [0i32; MAX_VARS];
        let mut hi = [0i32; MAX_VARS];
        for i in 0..n {
            lo[i] = self.min_degree(i).unwrap() - den.min_degree(i).unwrap();
            hi[i] = self.max_degree(i).unwrap() - den.max_degree(i).unwrap();
            if lo[i] > hi[i] {
                return Ok(None);
            }
        }
        let (lead_e, lead_c) = den.terms.iter().next_back().unwrap();
        let lead_inv = lead_c.recip();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.pop_last() {
            let qe = sub_exps(&e, lead_e);
            if (0..n).any(|i| qe[i] < lo[i] || qe[i] > hi[i]) {
                return Ok(None);
            }
            let qc = &c * &lead_inv;
            for (de, dc) in den.terms.iter().rev().skip(1) {
                let te = add_exps(&qe, de);
                let tc = &qc * dc;
                match rem.entry(te) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-tc);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= tc;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.insert(qe, qc);
        }
        Ok(Some(LaurentPoly { vars: self.vars.clone(), terms: quot }))
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms<F: FnMut(&[i32], &Rational) -> bool>(&self, mut keep: F) -> Self {
        let n = self.nvars();
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, c)| keep(&e[..n], c))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Maps every term `(e, c)` to a new exponent in `vars`; terms landing on
    /// the same exponent are summed.
    pub fn map_terms<F>(&self, vars: &Vars, mut f: F) -> Self
    where
        F: FnMut(&[i32], &Rational) -> (Vec<i32>, Rational),
    {
        let n = self.nvars();
        Self::from_terms(vars, self.terms.iter().map(|(e, c)| f(&e[..n], c)))
    }

    /// Re-canonicalizes (a no-op on any value built through this API).
    pub fn canonicalize(&self) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms().map(|(e, c)| (e.to_vec(), c.clone())),
        )
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.names())
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly{:?}({})", self.vars, self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("operands must share a variable list")
            }
        }
        impl std::ops::$tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$checked(&rhs).expect("operands must share a variable list")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
