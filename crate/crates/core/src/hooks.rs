//! Hook polynomials of partitions, in one and two variables.
//!
//! Univariate values live in `s` with `s^2 = q` so the normalising factor
//! `q^{-⟨λ,λ⟩/2}` stays integral.

use crate::error::Result;
use crate::exact::{rat, Image, LaurentPoly, RationalFn, Vars};
use crate::partitions::Partition;

pub fn s_vars() -> Vars {
    Vars::new(&["s"])
}

pub fn q_vars() -> Vars {
    Vars::new(&["q"])
}

pub fn zw_vars() -> Vars {
    Vars::new(&["z", "w"])
}

pub fn qt_vars() -> Vars {
    Vars::new(&["q", "t"])
}

/// Rewrites a polynomial in `s` as one in `q = s^2`.
pub fn s_to_q(p: &LaurentPoly) -> Result<LaurentPoly> {
    p.halve_exponents("s", "q")
}

/// Rewrites a polynomial in `q` as one in `s`.
pub fn q_to_s(p: &LaurentPoly) -> LaurentPoly {
    p.double_exponents("q", "s").expect("variable q present")
}

/// `𝓗_λ(q) = q^{-⟨λ,λ⟩/2} ∏_boxes (1 - q^h)`, returned in `s`.
pub fn hook_norm(l: &Partition) -> LaurentPoly {
    let v = s_vars();
    let mut out = LaurentPoly::monomial(&v, &[-(l.pairing(l) as i32)], rat(1));
    for h in l.hooks() {
        out = &out * &LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[2 * h as i32], -1)]);
    }
    out
}

/// `H̃_λ(q) = ∏_boxes (q^h - 1)`.
pub fn hook_dim(l: &Partition) -> LaurentPoly {
    let v = q_vars();
    let mut out = LaurentPoly::one(&v);
    for h in l.hooks() {
        out = &out * &LaurentPoly::from_int_terms(&v, &[(&[0], -1), (&[h as i32], 1)]);
    }
    out
}

/// `𝓗_λ(z,w) = ∏ (z^{2a+1} - w^{2l+1})^{2g} / ((z^{2a+2} - w^{2l})(z^{2a} - w^{2l+2}))`.
pub fn hook_two(l: &Partition, g: u32) -> RationalFn {
    let v = zw_vars();
    let binom = |a: u32, b: u32| LaurentPoly::from_int_terms(&v, &[(&[a as i32, 0], 1), (&[0, b as i32], -1)]);
    let mut num = LaurentPoly::one(&v);
    let mut den = Vec::new();
    for b in l.boxes() {
        if g > 0 {
            num = &num * &binom(2 * b.arm + 1, 2 * b.leg + 1).pow(2 * g);
        }
        den.push(binom(2 * b.arm + 2, 2 * b.leg));
        den.push(binom(2 * b.arm, 2 * b.leg + 2));
    }
    RationalFn::new(num, &den).expect("hook factors are nonzero binomials")
}

/// `q^{(g-1)⟨λ,λ⟩} / b_λ(1/q)`, the value of `𝓗_λ(0, √q)`.
pub fn hook_pure(l: &Partition, g: u32) -> RationalFn {
    let v = q_vars();
    let num = LaurentPoly::monomial(&v, &[(g as i32 - 1) * l.pairing(l) as i32], rat(1));
    let mut den = Vec::new();
    for (_, m) in l.multiplicities() {
        for k in 1..=m as i32 {
            den.push(LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[-k], -1)]));
        }
    }
    RationalFn::new(num, &den).expect("nonzero binomials")
}

/// `f(z, w) ↦ f(0, s)`, then re-expressed in `q = s^2`.
pub fn specialize_pure(f: &RationalFn) -> Result<RationalFn> {
    f.substitute(&[Image::Zero, Image::monomial(1, &[1])], &s_vars())?
        .halve_exponents("s", "q")
}

/// `f(z, w) ↦ f(s, 1/s)` as a function of `s`.
pub fn specialize_diagonal(f: &RationalFn) -> Result<RationalFn> {
    f.substitute(&[Image::monomial(1, &[1]), Image::monomial(1, &[-1])], &s_vars())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sp(t: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(&s_vars(), t)
    }

    #[test]
    fn single_box() {
        assert_eq!(hook_norm(&part(&[1])), sp(&[(&[-1], 1), (&[1], -1)]));
        let v = zw_vars();
        for g in 0..3 {
            let zw = LaurentPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], -1)]);
            let expect = RationalFn::new(
                zw.pow(2 * g),
                &[
                    LaurentPoly::from_int_terms(&v, &[(&[2, 0], 1), (&[0, 0], -1)]),
                    LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[0, 2], -1)]),
                ],
            )
            .unwrap();
            assert_eq!(hook_two(&part(&[1]), g), expect);
        }
    }

    #[test]
    fn two_boxes() {
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3, scaled by q^{-1} and q^{-2}.
        assert_eq!(hook_norm(&part(&[2])), sp(&[(&[-2], 1), (&[0], -1), (&[2], -1), (&[4], 1)]));
        assert_eq!(hook_norm(&part(&[1, 1])), sp(&[(&[-4], 1), (&[-2], -1), (&[0], -1), (&[2], 1)]));
    }

    #[test]
    fn pure_single_box() {
        let v = q_vars();
        for g in 1..4 {
            let expect = RationalFn::new(
                LaurentPoly::monomial(&v, &[g], rat(1)),
                &[LaurentPoly::from_int_terms(&v, &[(&[1], 1), (&[0], -1)])],
            )
            .unwrap();
            assert_eq!(hook_pure(&part(&[1]), g as u32), expect);
        }
    }
}
