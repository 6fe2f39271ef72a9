//! The cohomology ring of the rank-2 twisted character variety, presented by
//! generators `α, β, γ` and the relations `ρ_{r,s,t}`, and the mixed Hodge
//! polynomial it yields.

mod lefschetz;

pub use lefschetz::{lefschetz_check, lefschetz_sweep, LefschetzPiece};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, LaurentPoly, Rational, RationalFn, Vars};
use crate::hooks::qt_vars;

/// Exponents `(r, s, t)` of `α^r β^s γ^t`.
pub type Monomial = [u32; 3];

/// `(q, t)`-exponents of `α`, `β`, `γ`.
pub const GENERATOR_QT: [[i32; 2]; 3] = [[2, 2], [2, 4], [4, 6]];

/// `(q, t)`-exponents contributed by each primitive `ψ`-class.
pub const PSI_QT: [i32; 2] = [2, 3];

/// Cohomological degree of a monomial.
pub fn degree(m: Monomial) -> u32 {
    2 * m[0] + 4 * m[1] + 6 * m[2]
}

/// Weight of a monomial, as a power of `q`.
pub fn weight(m: Monomial) -> u32 {
    2 * m[0] + 2 * m[1] + 4 * m[2]
}

/// Polynomial in `α, β, γ` with exact coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Self::monomial(m, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest monomial in the lexicographic order `α > β > γ`.
    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }

    /// Multiplies by the monomial `m`.
    pub fn shift(&self, m: Monomial) -> Self {
        RingElement {
            terms: self.terms.iter().map(|(a, x)| ([a[0] + m[0], a[1] + m[1], a[2] + m[2]], x.clone())).collect(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (name, e) in ["a", "b", "c"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether `(r, s, t)` indexes a relation of `I^g_n`.
pub fn admissible(g: u32, n: u32, m: Monomial) -> bool {
    let [r, s, t] = m.map(|x| x as i64);
    let (g, n) = (g as i64, n as i64);
    t <= g && r + 3 * s + 3 * t > 3 * g - 3 + n && r + 2 * s + 2 * t >= 2 * g - 2 + n
}

/// Whether `α^r β^s γ^t` belongs to the monomial basis of `Q[α,β,γ]/I^g_k`.
pub fn in_basis(g: u32, k: u32, m: Monomial) -> bool {
    let [r, s, t] = m.map(|x| x as i64);
    let (g, k) = (g as i64, k as i64);
    t <= g && (r + 3 * s + 3 * t <= 3 * g - 3 + k || r + 2 * s + 2 * t < 2 * g - 2 + k)
}

/// All triples of `S^g_k`, in lexicographic order.
pub fn skg_enumerate(g: u32, k: u32) -> Vec<Monomial> {
    let bound = 3 * g + k;
    let mut out = Vec::new();
    for r in 0..=bound {
        for s in 0..=bound {
            for t in 0..=g {
                if in_basis(g, k, [r, s, t]) {
                    out.push([r, s, t]);
                }
            }
        }
    }
    out
}

fn factorial(k: i64) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * rat(i))
}

/// `ρ^{n,g}_{r,s,t} = Σ_i (c-i)! α^{r-i}/(r-i)! β^{s-i}/(s-i)! (2γ)^{t+i}/i!`
/// with `c = r + 3s + 2t - 2g + 2 - n`.
pub fn rho_relation(n: u32, g: u32, m: Monomial) -> Result<RingElement> {
    if !admissible(g, n, m) {
        return Err(Error::usage(format!("({}, {}, {}) does not index a relation for g={g}, n={n}", m[0], m[1], m[2])));
    }
    let [r, s, t] = m;
    let c = r as i64 + 3 * s as i64 + 2 * t as i64 - 2 * g as i64 + 2 - n as i64;
    let top = r.min(s).min(g - t);
    let mut out = RingElement::zero();
    for i in 0..=top {
        let ii = i as i64;
        let coeff = factorial(c - ii) / factorial(r as i64 - ii) / factorial(s as i64 - ii) / factorial(ii)
            * num_traits::pow(rat(2), (t + i) as usize);
        out.add_term([r - i, s - i, t + i], coeff);
    }
    Ok(out)
}

/// Reduces `x` modulo `I^g_n` onto the monomial basis.
///
/// Each step removes the lexicographically largest reducible monomial, either
/// dropping it (`γ`-exponent above `g`) or cancelling it against the relation
/// whose leading monomial it is.
pub fn normal_form(x: &RingElement, g: u32, n: u32) -> Result<RingElement> {
    let mut work = x.terms.clone();
    let mut out = RingElement::zero();
    let budget: u64 = 1 + work.keys().map(|m| {
        let d = degree(*m) as u64 + 1;
        d * d * d
    }).sum::<u64>();
    let mut steps = 0u64;
    while let Some((m, c)) = work.pop_last() {
        steps += 1;
        if steps > budget {
            return Err(Error::consistency("normal form reduction exceeded its step bound"));
        }
        if m[2] > g {
            continue;
        }
        if admissible(g, n, m) {
            let rho = rho_relation(n, g, m)?;
            let lead = rho.coeff(m);
            let f = c / lead;
            for (mm, cc) in rho.terms() {
                if *mm == m {
                    continue;
                }
                let e = work.entry(*mm).or_insert_with(Rational::zero);
                *e -= &f * cc;
                if e.is_zero() {
                    work.remove(mm);
                }
            }
        } else {
            out.add_term(m, c);
        }
    }
    Ok(out)
}

/// Checks that the relations and the monomials `γ^{>g}` span an ideal: every
/// generator times every relation reduces to zero, up to the top degree of the basis.
pub fn validate_reduction(g: u32, n: u32) -> Result<()> {
    let basis = skg_enumerate(g, n);
    let top = basis.iter().map(|m| degree(*m)).max().unwrap_or(0);
    let bound = 3 * g + n + 3;
    for r in 0..=bound {
        for s in 0..=bound {
            for t in 0..=g {
                let m = [r, s, t];
                if degree(m) > top || !admissible(g, n, m) {
                    continue;
                }
                let rho = rho_relation(n, g, m)?;
                for i in 0..3 {
                    let prod = rho.mul(&RingElement::generator(i));
                    let nf = normal_form(&prod, g, n)?;
                    if !nf.is_zero() {
                        return Err(Error::consistency(format!(
                            "generator {i} times ρ({r},{s},{t}) leaves {nf} for g={g}, n={n}"
                        )));
                    }
                }
            }
        }
    }
    for m in &basis {
        if normal_form(&RingElement::monomial(*m, Rational::one()), g, n)? != RingElement::monomial(*m, Rational::one()) {
            return Err(Error::consistency(format!("basis monomial {m:?} is reducible")));
        }
    }
    Ok(())
}

/// `dim Λ^k_0 = C(2g, k) - C(2g, k-2)`.
pub fn primitive_dim(g: u32, k: u32) -> i64 {
    binomial(2 * g, k) - if k >= 2 { binomial(2 * g, k - 2) } else { 0 }
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k as i64).fold(1i64, |acc, i| acc * (n as i64 - i) / (i + 1))
}

fn qt_monomial(e: [i32; 2]) -> LaurentPoly {
    LaurentPoly::monomial(&qt_vars(), &e, Rational::one())
}

/// `Σ_{S^g_k} (q²t²)^r (q²t⁴)^s (q⁴t⁶)^t`.
pub fn skg_series(g: u32, k: u32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(&qt_vars());
    for m in skg_enumerate(g, k) {
        out = &out + &qt_monomial(monomial_qt(m));
    }
    out
}

/// `(q, t)`-exponents of `α^r β^s γ^t`.
pub fn monomial_qt(m: Monomial) -> [i32; 2] {
    let mut e = [0; 2];
    for (i, x) in m.iter().enumerate() {
        e[0] += GENERATOR_QT[i][0] * *x as i32;
        e[1] += GENERATOR_QT[i][1] * *x as i32;
    }
    e
}

/// Mixed Hodge polynomial of the PGL quotient, `Σ_k dim Λ^k_0 (q²t³)^k Σ_{S^{g-k}_k}`.
pub fn mhp_m2_ring_pgl(g: u32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(&qt_vars());
    for k in 0..=g {
        let dim = primitive_dim(g, k);
        let psi = qt_monomial([PSI_QT[0] * k as i32, PSI_QT[1] * k as i32]);
        out = &out + &(&psi * &skg_series(g - k, k)).scale_int(dim);
    }
    out
}

/// Mixed Hodge polynomial assembled from the ring presentation.
pub fn mhp_m2_ring(g: u32) -> LaurentPoly {
    &mhp_m2_ring_pgl(g) * &crate::charpoly::torus_factor(g)
}

fn qt(terms: &[(&[i32], i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(&qt_vars(), terms)
}

/// Closed four-term formula for the PGL mixed Hodge polynomial at `n = 2`.
pub fn mhp2_closed_pgl(g: u32) -> Result<LaurentPoly> {
    let gi = g as i32;
    let pref = qt_monomial([2 * gi - 2, 4 * gi - 4]);
    let half = ratio(-1, 2);
    let terms = [
        RationalFn::new(
            qt(&[(&[0, 0], 1), (&[2, 3], 1)]).pow(2 * g),
            &[qt(&[(&[0, 0], -1), (&[2, 2], 1)]), qt(&[(&[0, 0], -1), (&[2, 4], 1)])],
        )?,
        RationalFn::new(
            &pref * &qt(&[(&[0, 0], 1), (&[2, 1], 1)]).pow(2 * g),
            &[qt(&[(&[0, 0], -1), (&[2, 0], 1)]), qt(&[(&[0, 0], -1), (&[2, 2], 1)])],
        )?,
        RationalFn::new(
            (&pref * &qt(&[(&[0, 0], 1), (&[1, 1], 1)]).pow(2 * g)).scale(&half),
            &[qt(&[(&[0, 0], -1), (&[1, 2], 1)]), qt(&[(&[0, 0], -1), (&[1, 0], 1)])],
        )?,
        RationalFn::new(
            (&pref * &qt(&[(&[0, 0], -1), (&[1, 1], 1)]).pow(2 * g)).scale(&half),
            &[qt(&[(&[0, 0], 1), (&[1, 0], 1)]), qt(&[(&[0, 0], 1), (&[1, 2], 1)])],
        )?,
    ];
    let mut acc = RationalFn::zero(&qt_vars());
    for t in &terms {
        acc = acc.checked_add(t)?;
    }
    acc.to_poly()?
        .ok_or_else(|| Error::consistency("closed form for n = 2 is not a polynomial"))
}

/// Closed formula times `(1 + qt)^{2g}`.
pub fn mhp2_closed(g: u32) -> Result<LaurentPoly> {
    Ok(&mhp2_closed_pgl(g)? * &crate::charpoly::torus_factor(g))
}

/// Closed form for `Σ_{S^g_k} a^r b^s c^t` in variables `a, b, c`.
pub fn skg_closed_form(g: u32, k: u32) -> Result<RationalFn> {
    let v = Vars::new(&["a", "b", "c"]);
    let (gi, ki) = (g as i32, k as i32);
    let mono = |e: [i32; 3]| LaurentPoly::monomial(&v, &e, Rational::one());
    let one = LaurentPoly::one(&v);
    let om = |e: [i32; 3]| &one - &mono(e);
    let a = [1, 0, 0];
    let b = [0, 1, 0];
    let c = [0, 0, 1];
    let c_over_b = [0, -1, 1];
    let b_over_a2 = [-2, 1, 0];
    let a2_over_b = [2, -1, 0];
    let b_over_a3 = [-3, 1, 0];
    let c_over_a3 = [-3, 0, 1];
    let t1 = RationalFn::new(om([0, 0, gi + 1]), &[om(a), om(b), om(c)])?;
    let t2 = RationalFn::new(
        &mono([ki - 2, gi, 0]) * &om([0, -(gi + 1), gi + 1]),
        &[om(a), om(c_over_b), om(b_over_a2)],
    )?;
    let t3 = RationalFn::new(
        &(&mono([0, gi + (ki + 1) / 2 - 1, 0]) + &mono([1, gi + ki / 2 - 1, 0])) * &om([0, -(gi + 1), gi + 1]),
        &[om(b), om(c_over_b), om(a2_over_b)],
    )?;
    let t4 = RationalFn::new(
        &mono([3 * gi + ki - 2, 0, 0]) * &om([-3 * gi, 0, gi]),
        &[om(a), om(c_over_a3), om(b_over_a3)],
    )?;
    let t5 = RationalFn::new(
        &mono([ki - 2, gi, 0]) * &om([0, -gi, gi]),
        &[om(a), om(c_over_b), om(b_over_a3)],
    )?;
    t1.checked_sub(&t2)?.checked_sub(&t3)?.checked_sub(&t4)?.checked_add(&t5)
}

/// The `(q, t)` closed form of `Σ_{S^{g-k}_k}` after `a = q²t², b = q²t⁴, c = q⁴t⁶`, with `g` the full genus.
pub fn skg_closed_form_qt(g: u32, k: u32) -> Result<RationalFn> {
    let v = qt_vars();
    let (gi, ki) = (g as i32, k as i32);
    let mono = |e: [i32; 2]| LaurentPoly::monomial(&v, &e, Rational::one());
    let one = LaurentPoly::one(&v);
    let om = |e: [i32; 2]| &one - &mono(e);
    let mo = |e: [i32; 2]| &mono(e) - &one;
    let po = |e: [i32; 2]| &mono(e) + &one;
    let t1 = RationalFn::new(
        &mono([2 * gi - 2, 4 * gi - 4 - 2 * ki]) * &om([4 * gi - 4 * ki + 4, 2 * gi - 2 * ki + 2]),
        &[om([4, 2]), mo([2, 0]), mo([2, 2])],
    )?;
    let t2 = RationalFn::new(
        om([4 * gi - 4 * ki + 4, 6 * gi - 6 * ki + 6]),
        &[om([4, 6]), mo([2, 2]), mo([2, 4])],
    )?;
    let tail = om([2 * gi - 2 * ki + 2, 2 * gi - 2 * ki + 2]);
    let t3 = RationalFn::new(
        (&mono([2 * gi - 2 - ki, 4 * gi - 4 - 2 * ki]) * &tail).scale(&ratio(1, 2)),
        &[om([2, 2]), mo([1, 0]), mo([1, 2])],
    )?;
    let sign = if (2 * gi - 2 - ki).rem_euclid(2) == 0 { 1 } else { -1 };
    let t4 = RationalFn::new(
        (&mono([2 * gi - 2 - ki, 4 * gi - 4 - 2 * ki]) * &tail).scale(&ratio(sign, 2)),
        &[om([2, 2]), po([1, 0]), po([1, 2])],
    )?;
    t1.checked_add(&t2)?.checked_sub(&t3)?.checked_sub(&t4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_sector_zero_is_a_point() {
        assert_eq!(skg_enumerate(1, 0), vec![[0, 0, 0]]);
    }

    #[test]
    fn rho_with_no_beta_is_one_term() {
        // (r, 0, t) collapses to c! α^r (2γ)^t / r!.
        let (g, n) = (2, 0);
        let m = [4, 0, 1];
        assert!(admissible(g, n, m));
        let rho = rho_relation(n, g, m).unwrap();
        let c = 4 + 2 - 4 + 2;
        let expect = factorial(c) / factorial(4) * rat(2);
        assert_eq!(rho, RingElement::monomial(m, expect));
    }

    #[test]
    fn inadmissible_triple_is_rejected() {
        assert!(rho_relation(0, 2, [0, 0, 0]).is_err());
        assert!(rho_relation(0, 2, [9, 0, 3]).is_err());
    }

    #[test]
    fn primitive_dims() {
        assert_eq!((0..=3).map(|k| primitive_dim(3, k)).collect::<Vec<_>>(), vec![1, 6, 14, 14]);
    }
}
