//! E-polynomials, the two-variable `H̄_n`, conjectural mixed Hodge
//! polynomials, A-polynomials and the untwisted counts, all obtained from
//! the partition zeta series through the plethystic logarithm.

mod verify;

pub use verify::{verify, Check, Report};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Image, LaurentPoly, RationalFn};
use crate::hooks::{hook_norm, hook_pure, hook_two, q_vars, qt_vars, s_to_q, specialize_pure, zw_vars};
use crate::partitions::{enumerate, Partition};
use crate::plethys::{mobius, v_from_u, Coeff, TruncSeries};

/// `d_n = n^2 (2g-2) + 2`.
pub fn d_n(n: u32, g: u32) -> i64 {
    (n as i64).pow(2) * (2 * g as i64 - 2) + 2
}

/// `d̃_n = (n^2 - 1)(2g - 2)`.
pub fn d_tilde(n: u32, g: u32) -> i64 {
    ((n as i64).pow(2) - 1) * (2 * g as i64 - 2)
}

/// A pipeline output together with the dimensions it refers to.
#[derive(Clone, Debug, PartialEq)]
pub struct CharVarResult {
    pub n: u32,
    pub g: u32,
    pub d_n: i64,
    pub d_tilde: i64,
    pub payload: LaurentPoly,
}

impl CharVarResult {
    pub fn new(n: u32, g: u32, payload: LaurentPoly) -> Self {
        CharVarResult { n, g, d_n: d_n(n, g), d_tilde: d_tilde(n, g), payload }
    }
}

/// Which weight each partition contributes to a zeta series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMode {
    /// `𝓗_λ(q)^{2g-2}`.
    Univariate,
    /// `𝓗_λ(z, w)`.
    Bivariate,
}

fn series_from<C: Coeff>(zero: C, n: u32, mut weight: impl FnMut(&Partition) -> C) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(&zero, n as usize);
    for k in 0..=n {
        let mut acc = zero.clone();
        for l in enumerate(k) {
            acc = acc.add(&weight(&l));
        }
        s = s.with_coeff(k as usize, acc);
    }
    s
}

/// `𝓗_λ(q)^{2g-2}` as a polynomial in `q`; needs `g ≥ 1`.
pub fn hook_power(l: &Partition, g: u32) -> LaurentPoly {
    assert!(g >= 1);
    s_to_q(&hook_norm(l).pow(2 * g - 2)).expect("even power of the hook polynomial is integral in q")
}

/// `𝓗_λ(q)^{2g-2}` for any `g`, including the `g = 0` inverse square.
pub fn hook_power_rational(l: &Partition, g: u32) -> RationalFn {
    if g >= 1 {
        return RationalFn::from_poly(hook_power(l, g));
    }
    let v = q_vars();
    let num = LaurentPoly::monomial(&v, &[l.pairing(l) as i32], rat(1));
    let factors: Vec<_> = l
        .hooks()
        .into_iter()
        .map(|h| (LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[h as i32], -1)]), 2))
        .collect();
    RationalFn::with_powers(num, &factors).expect("hook factors are binomials")
}

/// `Σ_{|λ|≤N} 𝓗_λ(q)^{2g-2} T^{|λ|}` with polynomial coefficients; `g ≥ 1`.
pub fn zeta_q(g: u32, n: u32) -> Result<TruncSeries<LaurentPoly>> {
    if g == 0 {
        return Err(Error::usage("g = 0 has rational coefficients; use zeta_q_rational"));
    }
    Ok(series_from(LaurentPoly::zero(&q_vars()), n, |l| hook_power(l, g)))
}

/// Univariate partition zeta with rational-function coefficients, valid for every `g`.
pub fn zeta_q_rational(g: u32, n: u32) -> TruncSeries<RationalFn> {
    series_from(RationalFn::zero(&q_vars()), n, |l| hook_power_rational(l, g))
}

/// `Σ_{|λ|≤N} 𝓗_λ(z,w) T^{|λ|}`.
pub fn zeta_zw(g: u32, n: u32) -> TruncSeries<RationalFn> {
    series_from(RationalFn::zero(&zw_vars()), n, |l| hook_two(l, g))
}

/// `Σ 𝓗_λ(0, √q) T^{|λ|}` from the closed form `q^{(g-1)⟨λ,λ⟩}/b_λ(1/q)`.
pub fn zeta_pure(g: u32, n: u32) -> TruncSeries<RationalFn> {
    series_from(RationalFn::zero(&q_vars()), n, |l| hook_pure(l, g))
}

/// `Σ 𝓗_λ(0, √q) T^{|λ|}` by substituting into each two-variable hook function.
pub fn zeta_pure_specialized(g: u32, n: u32) -> Result<TruncSeries<RationalFn>> {
    let mut err = None;
    let s = series_from(RationalFn::zero(&q_vars()), n, |l| {
        specialize_pure(&hook_two(l, g)).unwrap_or_else(|e| {
            err.get_or_insert(e);
            RationalFn::zero(&q_vars())
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(s),
    }
}

/// `U_1..U_n` and `V_1..V_n` of a zeta series.
#[derive(Clone, Debug)]
pub struct UvCoeffs<C: Coeff> {
    pub u: Vec<C>,
    pub v: Vec<C>,
}

pub fn uv_from_series<C: Coeff>(zeta: &TruncSeries<C>) -> Result<UvCoeffs<C>> {
    let u = zeta.log_raw()?;
    let v = v_from_u(&u);
    Ok(UvCoeffs { u, v })
}

/// Univariate `U_k`, `V_k` for `k ≤ n`, `g ≥ 1`.
pub fn uv_coeffs(g: u32, n: u32) -> Result<UvCoeffs<LaurentPoly>> {
    uv_from_series(&zeta_q(g, n)?)
}

/// Two-variable `U_k(z,w)`, `V_k(z,w)` for `k ≤ n`.
pub fn uv_coeffs_zw(g: u32, n: u32) -> Result<UvCoeffs<RationalFn>> {
    uv_from_series(&zeta_zw(g, n))
}

/// `U_1..U_n` from the multinomial expansion
/// `U_k/k = Σ (-1)^{m-1}(m-1)! ∏_λ H_λ^{m_λ}/m_λ!` over multiplicity vectors
/// with `Σ m_λ|λ| = k`, independent of the series logarithm.
pub fn u_multinomial<C: Coeff>(zero: &C, n: u32, weight: impl Fn(&Partition) -> C) -> Vec<C> {
    let parts: Vec<(Partition, C)> = (1..=n).flat_map(enumerate).map(|l| {
        let w = weight(&l);
        (l, w)
    }).collect();
    let mut out = vec![zero.clone(); n as usize];
    let mut mults = vec![0u32; parts.len()];
    multinomial_walk(&parts, 0, 0, n, &mut mults, zero, &mut out);
    out.iter().enumerate().map(|(i, c)| c.scale(&rat(i as i64 + 1))).collect()
}

fn multinomial_walk<C: Coeff>(
    parts: &[(Partition, C)],
    idx: usize,
    size: u32,
    n: u32,
    mults: &mut Vec<u32>,
    zero: &C,
    out: &mut [C],
) {
    if idx == parts.len() {
        let m: u32 = mults.iter().sum();
        if m == 0 {
            return;
        }
        let mut coeff = ratio(if m % 2 == 1 { 1 } else { -1 }, 1) * factorial(m - 1);
        let mut term = zero.one_like();
        for (i, &k) in mults.iter().enumerate() {
            if k > 0 {
                coeff /= factorial(k);
                for _ in 0..k {
                    term = term.mul(&parts[i].1);
                }
            }
        }
        let slot = &mut out[size as usize - 1];
        *slot = slot.add(&term.scale(&coeff));
        return;
    }
    let w = parts[idx].0.size();
    let mut k = 0;
    while size + k * w <= n {
        mults[idx] = k;
        multinomial_walk(parts, idx + 1, size + k * w, n, mults, zero, out);
        k += 1;
    }
    mults[idx] = 0;
}

fn factorial(k: u32) -> crate::exact::Rational {
    (1..=k as i64).fold(rat(1), |acc, i| acc * rat(i))
}

fn q_minus_one() -> LaurentPoly {
    LaurentPoly::from_int_terms(&q_vars(), &[(&[0], -1), (&[1], 1)])
}

fn certify_integral(p: LaurentPoly, what: &str) -> Result<LaurentPoly> {
    if !p.is_integral() {
        return Err(Error::consistency(format!("{what} has non-integer coefficients: {p}")));
    }
    Ok(p)
}

/// `E_n(q) = q^{(g-1)n^2}(q-1)^2 V_n(q)`, certified to be an integer polynomial.
pub fn e_poly(n: u32, g: u32) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let v = q_vars();
    let shift = (g as i32 - 1) * (n * n) as i32;
    let e = if g == 0 {
        let uv = uv_from_series(&zeta_q_rational(0, n))?;
        let r = uv.v[n as usize - 1]
            .mul_poly(&q_minus_one().pow(2).shift(&[shift]))?;
        r.to_poly()?
            .ok_or_else(|| Error::consistency(format!("E_{n} at g=0 is not a polynomial: {r}")))?
    } else {
        let uv = uv_coeffs(g, n)?;
        &uv.v[n as usize - 1] * &q_minus_one().pow(2).shift(&[shift])
    };
    let e = certify_integral(e, &format!("E_{n}"))?;
    if !e.is_polynomial() {
        return Err(Error::consistency(format!("E_{n} has negative powers of q: {e}")));
    }
    debug_assert_eq!(e.vars(), &v);
    Ok(e)
}

/// `Ē_n(q) = q^{-d_n/2} E_n(q)`.
pub fn e_bar(n: u32, g: u32) -> Result<LaurentPoly> {
    Ok(e_poly(n, g)?.shift(&[-(d_n(n, g) / 2) as i32]))
}

/// `(z^2-1)(1-w^2) V_n(z,w)` as a rational function, before certification.
pub fn h_bar_rational(n: u32, g: u32) -> Result<RationalFn> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let uv = uv_coeffs_zw(g, n)?;
    uv.v[n as usize - 1].mul_poly(&hbar_factor())
}

fn hbar_factor() -> LaurentPoly {
    let v = zw_vars();
    &LaurentPoly::from_int_terms(&v, &[(&[2, 0], 1), (&[0, 0], -1)])
        * &LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[0, 2], -1)])
}

/// `H̄_n(z,w)`, certified polynomial by exact division. A failure is reported as
/// a consistency error naming the offending quotient.
pub fn h_bar(n: u32, g: u32) -> Result<LaurentPoly> {
    let r = h_bar_rational(n, g)?;
    r.to_poly()?
        .ok_or_else(|| Error::consistency(format!("H̄_{n} at g={g} is not a polynomial: {r}")))
}

/// Target group of the mixed Hodge polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Gl,
    Pgl,
}

/// `(t√q)^{d_n} H̄(√q, -1/(t√q))` in `(q, t)`, divided by `(1+qt)^{2g}` for [`Variant::Pgl`].
pub fn mhp_from_hbar(hbar: &LaurentPoly, n: u32, g: u32, variant: Variant) -> Result<LaurentPoly> {
    let st = crate::exact::Vars::new(&["s", "t"]);
    let d = d_n(n, g) as i32;
    let sub = hbar
        .substitute(&[Image::monomial(1, &[1, 0]), Image::monomial(-1, &[-1, -1])], &st)?
        .shift(&[d, d]);
    let h = sub.halve_exponents("s", "q")?;
    debug_assert_eq!(h.vars(), &qt_vars());
    if h.min_degree(1).unwrap_or(0) < 0 || h.max_degree(1).unwrap_or(0) > 2 * d {
        return Err(Error::consistency(format!("t-degrees of the mixed Hodge polynomial out of range: {h}")));
    }
    match variant {
        Variant::Gl => Ok(h),
        Variant::Pgl => {
            let torus = torus_factor(g);
            h.exact_divide(&torus)?
                .ok_or_else(|| Error::consistency(format!("(1+qt)^{} does not divide {h}", 2 * g)))
        }
    }
}

/// `(1 + qt)^{2g}`.
pub fn torus_factor(g: u32) -> LaurentPoly {
    LaurentPoly::from_int_terms(&qt_vars(), &[(&[0, 0], 1), (&[1, 1], 1)]).pow(2 * g)
}

/// The conjectural mixed Hodge polynomial of the twisted character variety.
pub fn mhp_conj(n: u32, g: u32, variant: Variant) -> Result<LaurentPoly> {
    mhp_from_hbar(&h_bar(n, g)?, n, g, variant)
}

/// Keeps the terms `c q^a t^{2a}` and returns `Σ c t^{2a}`.
pub fn pure_part(h: &LaurentPoly) -> LaurentPoly {
    let t = crate::exact::Vars::new(&["t"]);
    let mut out = LaurentPoly::zero(&t);
    for (e, c) in h.terms() {
        if e[1] == 2 * e[0] {
            out = &out + &LaurentPoly::monomial(&t, &[e[1]], c.clone());
        }
    }
    out
}

/// How the A-polynomial is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ARoute {
    /// Substitute `z = 0, w = √q` into every `𝓗_λ(z,w)`, then take the series logarithm.
    Specialize,
    /// Closed-form `q^{(g-1)⟨λ,λ⟩}/b_λ(1/q)` weights, then the multinomial expansion of `U_k`.
    Hua,
}

/// `A_n(q) = H̄_n(0, √q) = (q - 1) V_n(0, √q)`.
pub fn a_poly(n: u32, g: u32, route: ARoute) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let v = match route {
        ARoute::Specialize => uv_from_series(&zeta_pure_specialized(g, n)?)?.v,
        ARoute::Hua => {
            let u = u_multinomial(&RationalFn::zero(&q_vars()), n, |l| hook_pure(l, g));
            v_from_u(&u)
        }
    };
    let r = v[n as usize - 1].mul_poly(&q_minus_one())?;
    let a = r
        .to_poly()?
        .ok_or_else(|| Error::consistency(format!("A_{n} is not a polynomial: {r}")))?;
    certify_integral(a, &format!("A_{n}"))
}

/// Computes both routes and fails if they differ.
pub fn a_poly_checked(n: u32, g: u32) -> Result<LaurentPoly> {
    let a = a_poly(n, g, ARoute::Specialize)?;
    let b = a_poly(n, g, ARoute::Hua)?;
    if a != b {
        return Err(Error::consistency(format!("A_{n} routes disagree: {a} vs {b}")));
    }
    Ok(a)
}

/// Euler characteristic of the PGL character variety: `E_n/(q-1)^{2g}` at `q = 1`,
/// checked against `μ(n) n^{2g-3}`.
pub fn euler_char_pgl(n: u32, g: u32) -> Result<i64> {
    if g < 2 {
        return Err(Error::usage("the Euler characteristic formula needs g > 1"));
    }
    let e = e_poly(n, g)?;
    let quot = e
        .exact_divide(&q_minus_one().pow(2 * g))?
        .ok_or_else(|| Error::consistency(format!("(q-1)^{} does not divide E_{n}", 2 * g)))?;
    let val = quot.eval_int(&[1])?;
    if !val.is_integer() {
        return Err(Error::consistency(format!("Euler characteristic {val} is not an integer")));
    }
    let chi: i64 = val.to_integer().try_into().map_err(|_| Error::Budget("Euler characteristic overflows i64".into()))?;
    let expect = mobius(n as usize) * (n as i64).pow(2 * g - 3);
    if chi != expect {
        return Err(Error::consistency(format!("Euler characteristic {chi} differs from μ(n)n^(2g-3) = {expect}")));
    }
    Ok(chi)
}

/// `Exp((q-1) Log(Σ 𝓗_λ^{2g-2} T^{|λ|}))`, whose `T^n` coefficient is
/// `#Hom(Γ_g, GL_n(F_q)) / (q^{(g-1)n^2} |GL_n(F_q)|)`.
pub fn untwisted_series(g: u32, n: u32) -> Result<TruncSeries<LaurentPoly>> {
    if g == 0 {
        return Err(Error::usage("the untwisted count needs g ≥ 1"));
    }
    let log = zeta_q(g, n)?.log_pleth()?;
    let out = log.scale_by(&q_minus_one()).exp_pleth()?;
    for (k, c) in out.coeffs().iter().enumerate() {
        if !c.is_integral() {
            return Err(Error::consistency(format!("untwisted coefficient of T^{k} is not integral: {c}")));
        }
    }
    Ok(out)
}

/// Coefficients of `H̄_n(z, -w)` indexed by `(i, j)`.
pub fn signed_coefficients(hbar: &LaurentPoly) -> BTreeMap<(i32, i32), crate::exact::Rational> {
    hbar.substitute_var("w", Image::monomial(-1, &[0, 1]))
        .expect("w is a variable of H̄")
        .terms()
        .map(|(e, c)| ((e[0], e[1]), c.clone()))
        .collect()
}

/// Whether every coefficient of `H̄_n(z, -w)` is a nonnegative integer.
pub fn signed_nonnegative(hbar: &LaurentPoly) -> bool {
    signed_coefficients(hbar)
        .values()
        .all(|c| c.is_integer() && *c >= rat(0))
}

/// `H(1/(qt^2), t) (qt)^{d}` minus `H(q, t)`; zero exactly when curious Poincaré duality holds.
pub fn curious_pd_defect(h: &LaurentPoly, d: i64) -> Result<LaurentPoly> {
    let flipped = h
        .substitute(&[Image::monomial(1, &[-1, -2]), Image::monomial(1, &[0, 1])], h.vars())?
        .shift(&[d as i32, d as i32]);
    h.checked_sub(&flipped)
}
