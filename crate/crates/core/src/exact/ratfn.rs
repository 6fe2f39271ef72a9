use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::laurent::{Exponents, Image, LaurentPoly, Vars, MAX_VARS};
use super::Rational;
use crate::error::{Error, Result};

/// Content-free binomial `x^hi + ratio * x^lo` with `hi > lo` lexicographically
/// and `min(hi_i, lo_i) = 0` for every variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub hi: Exponents,
    pub lo: Exponents,
    pub ratio: Rational,
}

impl Binomial {
    pub fn to_poly(&self, vars: &Vars) -> LaurentPoly {
        let n = vars.len();
        LaurentPoly::from_terms(
            vars,
            vec![
                (self.hi[..n].to_vec(), Rational::one()),
                (self.lo[..n].to_vec(), self.ratio.clone()),
            ],
        )
    }

    /// `p * self`, computed without a general product.
    pub fn mul_into(&self, p: &LaurentPoly) -> LaurentPoly {
        let n = p.nvars();
        let a = p.shift(&self.hi[..n]);
        let b = p.shift(&self.lo[..n]).scale(&self.ratio);
        a + b
    }
}

/// Result of normalizing a two-term factor: `unit * x^shift * prod(atoms)`.
struct Factored {
    unit: Rational,
    shift: Exponents,
    atoms: Vec<Binomial>,
}

fn halve(e: &Exponents) -> Option<Exponents> {
    if e.iter().all(|x| x % 2 == 0) {
        let mut h = *e;
        h.iter_mut().for_each(|x| *x /= 2);
        Some(h)
    } else {
        None
    }
}

/// Splits `x^hi - x^lo` by repeated difference of squares, which keeps every
/// piece a binomial.
fn split_atom(b: Binomial, out: &mut Vec<Binomial>) {
    let minus_one = -Rational::one();
    if b.ratio == minus_one {
        if let (Some(h), Some(l)) = (halve(&b.hi), halve(&b.lo)) {
            split_atom(Binomial { hi: h, lo: l, ratio: minus_one }, out);
            split_atom(Binomial { hi: h, lo: l, ratio: Rational::one() }, out);
            return;
        }
    }
    out.push(b);
}

fn factor_binomial(p: &LaurentPoly) -> Result<Factored> {
    let n = p.nvars();
    match p.len() {
        0 => Err(Error::DivisionByZero),
        1 => {
            let (e, c) = p.terms().next().unwrap();
            let mut shift = [0; MAX_VARS];
            shift[..n].copy_from_slice(e);
            Ok(Factored { unit: c.clone(), shift, atoms: vec![] })
        }
        2 => {
            let mut it = p.terms();
            let (e1, c1) = it.next().unwrap();
            let (e2, c2) = it.next().unwrap();
            let mut shift = [0; MAX_VARS];
            let mut hi = [0; MAX_VARS];
            let mut lo = [0; MAX_VARS];
            for i in 0..n {
                shift[i] = e1[i].min(e2[i]);
                hi[i] = e2[i] - shift[i];
                lo[i] = e1[i] - shift[i];
            }
            let mut atoms = Vec::new();
            split_atom(Binomial { hi, lo, ratio: c1 / c2 }, &mut atoms);
            Ok(Factored { unit: c2.clone(), shift, atoms })
        }
        _ => Err(Error::usage(format!(
            "denominator factor must have at most two terms, got {p}"
        ))),
    }
}

/// Quotient of a Laurent polynomial by a multiset of binomial factors.
///
/// The denominator is never expanded except by [`to_poly`](Self::to_poly).
/// Sums merge denominators by taking the multiset maximum, which needs no
/// polynomial gcd. Numerators are opportunistically divided by denominator
/// atoms to keep sizes down, but values are not guaranteed to be in lowest
/// terms; equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: BTreeMap<Binomial, u32>,
}

impl RationalFn {
    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: BTreeMap::new() }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::one(vars))
    }

    /// `num / prod(factors)`; every factor must have one or two terms.
    pub fn new(num: LaurentPoly, factors: &[LaurentPoly]) -> Result<Self> {
        let mut r = Self::from_poly(num);
        for f in factors {
            r.divide_by_factor(f, 1)?;
        }
        Ok(r)
    }

    /// `num / prod(factor^mult)`.
    pub fn with_powers(num: LaurentPoly, factors: &[(LaurentPoly, u32)]) -> Result<Self> {
        let mut r = Self::from_poly(num);
        for (f, m) in factors {
            r.divide_by_factor(f, *m)?;
        }
        Ok(r)
    }

    fn divide_by_factor(&mut self, f: &LaurentPoly, mult: u32) -> Result<()> {
        if f.vars() != self.num.vars() {
            return Err(Error::VarMismatch {
                left: self.num.vars().names().to_vec(),
                right: f.vars().names().to_vec(),
            });
        }
        if mult == 0 {
            return Ok(());
        }
        let fac = factor_binomial(f)?;
        let n = self.num.nvars();
        let mut neg = [0; MAX_VARS];
        for i in 0..n {
            neg[i] = -fac.shift[i] * mult as i32;
        }
        let unit = num_traits::pow::Pow::pow(&fac.unit, mult);
        self.num = self.num.shift(&neg[..n]).scale(&unit.recip());
        for a in fac.atoms {
            *self.den.entry(a).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator atoms with multiplicities.
    pub fn denominator(&self) -> impl Iterator<Item = (&Binomial, u32)> + '_ {
        self.den.iter().map(|(b, m)| (b, *m))
    }

    pub fn den_degree(&self) -> u32 {
        self.den.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Expanded denominator polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one(self.vars());
        for (b, m) in &self.den {
            for _ in 0..*m {
                d = b.mul_into(&d);
            }
        }
        d
    }

    /// Divides the numerator by its own denominator atoms where exact.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let vars = self.vars().clone();
        let atoms: Vec<Binomial> = self.den.keys().cloned().collect();
        for a in atoms {
            let ap = a.to_poly(&vars);
            loop {
                let m = self.den.get(&a).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                match self.num.exact_divide(&ap) {
                    Ok(Some(q)) => {
                        self.num = q;
                        if m == 1 {
                            self.den.remove(&a);
                        } else {
                            self.den.insert(a.clone(), m - 1);
                        }
                    }
                    _ => break,
                }
            }
        }
        self
    }

    /// Numerator multiplied up to the common denominator `target`, which must
    /// contain this denominator as a sub-multiset.
    fn lift_to(&self, target: &BTreeMap<Binomial, u32>) -> LaurentPoly {
        let mut n = self.num.clone();
        for (b, m) in target {
            let have = self.den.get(b).copied().unwrap_or(0);
            for _ in have..*m {
                n = b.mul_into(&n);
            }
        }
        n
    }

    fn lcm_den(
        a: &BTreeMap<Binomial, u32>,
        b: &BTreeMap<Binomial, u32>,
    ) -> BTreeMap<Binomial, u32> {
        let mut l = a.clone();
        for (k, m) in b {
            let e = l.entry(k.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        l
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars() == other.vars() {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.vars().names().to_vec(),
                right: other.vars().names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let l = Self::lcm_den(&self.den, &other.den);
        let num = self.lift_to(&l).checked_add(&other.lift_to(&l))?;
        Ok(RationalFn { num, den: l }.reduce())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.vars()));
        }
        let num = self.num.checked_mul(&other.num)?;
        let mut den = self.den.clone();
        for (b, m) in &other.den {
            *den.entry(b.clone()).or_insert(0) += m;
        }
        Ok(RationalFn { num, den }.reduce())
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self> {
        self.checked_mul(&Self::from_poly(p.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.vars());
        for _ in 0..k {
            r = r.checked_mul(self).expect("same variables");
        }
        r
    }

    pub fn adams(&self, k: u32) -> Self {
        let vars = self.vars().clone();
        let mut r = Self::from_poly(self.num.adams(k));
        for (b, m) in &self.den {
            let f = b.to_poly(&vars).adams(k);
            r.divide_by_factor(&f, *m).expect("adams image of a binomial is a binomial");
        }
        r
    }

    /// Monomial substitution applied to numerator and denominator.
    pub fn substitute(&self, images: &[Image], out_vars: &Vars) -> Result<Self> {
        let vars = self.vars().clone();
        let mut r = Self::from_poly(self.num.substitute(images, out_vars)?);
        for (b, m) in &self.den {
            let f = b.to_poly(&vars).substitute(images, out_vars)?;
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if f.len() > 2 {
                return Err(Error::usage("substituted denominator factor is not a binomial"));
            }
            r.divide_by_factor(&f, *m)?;
        }
        Ok(r.reduce())
    }

    /// `s -> q` with `q = s^2`. Atoms odd in `s` are first multiplied by
    /// their image under `s -> -s` so every denominator factor is even.
    pub fn halve_exponents(&self, var: &str, new_name: &str) -> Result<Self> {
        let vars = self.vars().clone();
        let idx = vars
            .index_of(var)
            .ok_or_else(|| Error::usage(format!("unknown variable `{var}`")))?;
        let mut flip: Vec<Image> = (0..vars.len())
            .map(|i| {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                Image::monomial(1, &e)
            })
            .collect();
        if let Image::Monomial { sign, .. } = &mut flip[idx] {
            *sign = -1;
        }
        let mut num = self.num.clone();
        let mut factors = Vec::with_capacity(self.den.len());
        for (b, m) in &self.den {
            let f = b.to_poly(&vars);
            if b.hi[idx] % 2 == 0 && b.lo[idx] % 2 == 0 {
                factors.push((f, *m));
            } else {
                let g = f.substitute(&flip, &vars)?;
                num = &num * &g.pow(*m);
                factors.push((&f * &g, *m));
            }
        }
        let mut r = Self::from_poly(num.halve_exponents(var, new_name)?);
        for (f, m) in factors {
            r.divide_by_factor(&f.halve_exponents(var, new_name)?, m)?;
        }
        Ok(r.reduce())
    }

    /// Exact conversion to a Laurent polynomial; `Ok(None)` if the
    /// denominator does not divide the numerator.
    pub fn to_poly(&self) -> Result<Option<LaurentPoly>> {
        let r = self.clone().reduce();
        if r.den.is_empty() {
            return Ok(Some(r.num));
        }
        r.num.exact_divide(&r.den_poly())
    }

    /// Evaluates at a rational point; a vanishing denominator is an error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den_poly().eval(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_vars(other)?;
        let l = Self::lcm_den(&self.den, &other.den);
        Ok(self.lift_to(&l) == other.lift_to(&l))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let vars = self.vars().clone();
        for (i, (b, m)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", b.to_poly(&vars))?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: &RationalFn) -> RationalFn {
                self.$checked(rhs).expect("operands must share a variable list")
            }
        }
        impl std::ops::$tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                (&self).$checked(&rhs).expect("operands must share a variable list")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Vars {
        Vars::new(&["q"])
    }

    fn poly(v: &Vars, t: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(v, t)
    }

    #[test]
    fn halving_pairs_odd_atoms() {
        let s = Vars::new(&["s"]);
        // s^2 / (1 - s^2) splits into odd atoms but is a function of q = s^2.
        let r = RationalFn::new(poly(&s, &[(&[2], 1)]), &[poly(&s, &[(&[0], 1), (&[2], -1)])]).unwrap();
        let h = r.halve_exponents("s", "q").unwrap();
        let v = q();
        let expect = RationalFn::new(poly(&v, &[(&[1], 1)]), &[poly(&v, &[(&[0], 1), (&[1], -1)])]).unwrap();
        assert_eq!(h, expect);
        let odd = RationalFn::new(poly(&s, &[(&[1], 1)]), &[poly(&s, &[(&[0], 1), (&[2], -1)])]).unwrap();
        assert!(odd.halve_exponents("s", "q").is_err());
    }

    #[test]
    fn difference_of_squares_split() {
        let v = q();
        let f = poly(&v, &[(&[0], 1), (&[4], -1)]);
        let r = RationalFn::new(LaurentPoly::one(&v), std::slice::from_ref(&f)).unwrap();
        // 1 - q^4 = -(q-1)(q+1)(q^2+1)
        assert_eq!(r.den_degree(), 3);
        assert_eq!(r.den_poly().scale_int(-1), f);
    }

    #[test]
    fn sum_of_fractions_cancels() {
        let v = q();
        // 1/(1-q) - q/(1-q) = 1
        let d = poly(&v, &[(&[0], 1), (&[1], -1)]);
        let a = RationalFn::new(LaurentPoly::one(&v), std::slice::from_ref(&d)).unwrap();
        let b = RationalFn::new(poly(&v, &[(&[1], 1)]), &[d]).unwrap();
        let s = &a - &b;
        assert_eq!(s.den_degree(), 0);
        assert!(s.numerator().is_one());
    }

    #[test]
    fn cross_multiplied_equality() {
        let v = q();
        // 1/(1-q) == (1+q)/(1-q^2)
        let a = RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[0], 1), (&[1], -1)])]).unwrap();
        let b = RationalFn::new(
            poly(&v, &[(&[0], 1), (&[1], 1)]),
            &[poly(&v, &[(&[0], 1), (&[2], -1)])],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn to_poly_certifies_division() {
        let v = q();
        let r = RationalFn::new(
            poly(&v, &[(&[0], 1), (&[3], -1)]),
            &[poly(&v, &[(&[0], 1), (&[1], -1)])],
        )
        .unwrap();
        assert_eq!(r.to_poly().unwrap(), Some(poly(&v, &[(&[0], 1), (&[1], 1), (&[2], 1)])));
        let r2 = RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[0], 1), (&[1], -1)])]).unwrap();
        assert_eq!(r2.to_poly().unwrap(), None);
    }

    #[test]
    fn monomial_denominators_move_to_numerator() {
        let v = q();
        let r = RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[2], 3)])]).unwrap();
        assert_eq!(r.den_degree(), 0);
        assert_eq!(r.numerator().coeff(&[-2]), Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn substitution_into_zero_denominator_fails() {
        let v = Vars::new(&["z", "w"]);
        let r = RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[1, 0], 1), (&[0, 1], -1)])]).unwrap();
        let s = Vars::new(&["s"]);
        let imgs = [Image::monomial(1, &[1]), Image::monomial(1, &[1])];
        assert_eq!(r.substitute(&imgs, &s).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn adams_of_denominator() {
        let v = q();
        let r = RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[0], 1), (&[1], -1)])]).unwrap();
        let a = r.adams(2);
        let expect =
            RationalFn::new(LaurentPoly::one(&v), &[poly(&v, &[(&[0], 1), (&[2], -1)])]).unwrap();
        assert_eq!(a, expect);
    }
}
