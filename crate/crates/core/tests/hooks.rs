use charvar::exact::{rat, Image, LaurentPoly, Rational, RationalFn};
use charvar::hooks::*;
use charvar::partitions::{enumerate, Partition};

fn all_up_to(n: u32) -> impl Iterator<Item = Partition> {
    (1..=n).flat_map(enumerate)
}

#[test]
fn inversion_swaps_to_conjugate() {
    let v = s_vars();
    for l in all_up_to(8) {
        let inv = hook_norm(&l).substitute(&[Image::monomial(1, &[-1])], &v).unwrap();
        let sign = if l.size() % 2 == 0 { 1 } else { -1 };
        assert_eq!(inv, hook_norm(&l.conjugate()).scale_int(sign), "{l}");
    }
}

#[test]
fn hook_dim_matches_norm() {
    // ∏(q^h - 1) = (-1)^{|λ|} q^{⟨λ,λ⟩/2} 𝓗_λ(q)
    for l in all_up_to(7) {
        let sign = if l.size() % 2 == 0 { 1 } else { -1 };
        let lifted = hook_norm(&l).shift(&[l.pairing(&l) as i32]).scale_int(sign);
        assert_eq!(q_to_s(&hook_dim(&l)), lifted, "{l}");
    }
}

#[test]
fn diagonal_specialization_gives_hook_power() {
    for g in 0..=3u32 {
        for l in all_up_to(6) {
            let lhs = specialize_diagonal(&hook_two(&l, g)).unwrap();
            let h = hook_norm(&l);
            let rhs = if g >= 1 {
                RationalFn::from_poly(h.pow(2 * g - 2))
            } else {
                inverse_square(&h)
            };
            assert_eq!(lhs, rhs, "g={g} {l}");
        }
    }
}

fn inverse_square(h: &LaurentPoly) -> RationalFn {
    // h is a monomial times a product of binomials 1 - s^{2k}; invert factor by factor.
    let v = s_vars();
    let (e, _) = h.trailing_term().unwrap();
    let shift = e[0];
    let mut rest = h.shift(&[-shift]);
    let mut factors = Vec::new();
    while !rest.is_one() {
        let k = rest.terms().find(|(e, _)| e[0] > 0).unwrap().0[0];
        let f = LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[k], -1)]);
        rest = rest.exact_divide(&f).unwrap().unwrap();
        factors.push((f, 2));
    }
    RationalFn::with_powers(LaurentPoly::monomial(&v, &[-2 * shift], Rational::from_integer(1.into())), &factors)
        .unwrap()
}

#[test]
fn symmetry_under_sign_and_swap() {
    let v = zw_vars();
    let neg = [Image::monomial(-1, &[1, 0]), Image::monomial(-1, &[0, 1])];
    let swap = [Image::monomial(1, &[0, 1]), Image::monomial(1, &[1, 0])];
    for g in 0..=2 {
        for l in all_up_to(6) {
            let h = hook_two(&l, g);
            assert_eq!(h.substitute(&neg, &v).unwrap(), h, "g={g} {l}");
            assert_eq!(h.substitute(&swap, &v).unwrap(), hook_two(&l.conjugate(), g), "g={g} {l}");
        }
    }
}

#[test]
fn pure_specialization() {
    for g in 0..=3 {
        for l in all_up_to(6) {
            let lhs = specialize_pure(&hook_two(&l, g)).unwrap();
            assert_eq!(lhs, hook_pure(&l, g), "g={g} {l}");
        }
    }
}

#[test]
fn pure_two_boxes_denominator() {
    let v = q_vars();
    let l = Partition::new(vec![1, 1]).unwrap();
    let b = LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[-1], -1)])
        * LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[-2], -1)]);
    let expect = RationalFn::new(LaurentPoly::one(&v), &[]).unwrap();
    assert_eq!(hook_pure(&l, 1).mul_poly(&b).unwrap(), expect);
}

#[test]
fn laurent_expansion_starts_at_pairing_power() {
    // w^{-(2g-2)⟨λ,λ⟩} 𝓗_λ(z, 1/u) is a power series in (z, u) with constant term 1.
    let v = zw_vars();
    let zero = Rational::from_integer(0.into());
    for g in 0..=2i32 {
        for l in all_up_to(4) {
            let top = (2 * g - 2) * l.pairing(&l) as i32;
            let shifted = hook_two(&l, g as u32)
                .mul_poly(&LaurentPoly::monomial(&v, &[0, -top], rat(1)))
                .unwrap();
            let r = shifted
                .substitute(&[Image::monomial(1, &[1, 0]), Image::monomial(1, &[0, -1])], &v)
                .unwrap();
            assert_eq!(r.eval(&[zero.clone(), zero.clone()]).unwrap(), Rational::from_integer(1.into()), "g={g} {l}");
        }
    }
}

#[test]
fn integral_exponents() {
    for l in all_up_to(8) {
        let h = hook_norm(&l);
        assert_eq!(s_to_q(&h).is_ok(), l.size() % 2 == 0, "{l}");
        for g in 1..=3 {
            assert!(s_to_q(&h.pow(2 * g - 2)).is_ok());
        }
    }
}
