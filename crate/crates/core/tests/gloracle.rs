use charvar::charpoly::{e_poly, untwisted_series};
use charvar::exact::rat;
use charvar::gloracle::*;
use num_bigint::BigUint;
use num_traits::Zero;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn eval_at(p: &charvar::exact::LaurentPoly, q: i64) -> BigUint {
    let v = p.eval_int(&[q]).unwrap();
    assert!(v.is_integer() && v >= rat(0), "{v}");
    v.to_integer().to_biguint().unwrap()
}

#[test]
fn commutator_mass_and_abelian_case() {
    for (n, p) in [(1, 5), (2, 2), (2, 3), (3, 2)] {
        let g = build_gl(n, p).unwrap();
        let f = commutator_distribution(&g).unwrap();
        assert_eq!(f.total(&g), big((g.order() * g.order()) as u64));
    }
    let g = build_gl(1, 7).unwrap();
    let f = commutator_distribution(&g).unwrap();
    assert_eq!(f.at(&g, g.identity()), &big(36));
    assert!(f.values.iter().filter(|v| !v.is_zero()).count() == 1);
}

#[test]
fn commuting_pairs_in_s3() {
    // Commuting pairs: |G| times the number of classes.
    let g = build_gl(2, 2).unwrap();
    let f = commutator_distribution(&g).unwrap();
    assert_eq!(f.at(&g, g.identity()), &big(18));
    assert_eq!(f.at(&g, g.identity()), &big((g.order() * g.num_classes()) as u64));
}

#[test]
fn convolution_matches_direct_enumeration() {
    let g = build_gl(2, 2).unwrap();
    for genus in 1..=2 {
        for z in 0..g.order() as u32 {
            if g.is_central(z) {
                assert_eq!(genus_count(&g, genus, z).unwrap(), genus_count_direct(&g, genus, z).unwrap());
            }
        }
    }
    let g = build_gl(2, 3).unwrap();
    let minus = g.scalar(2).unwrap();
    assert_eq!(genus_count(&g, 1, minus).unwrap(), genus_count_direct(&g, 1, minus).unwrap());
}

#[test]
fn twisted_genus_one_gl2_f3() {
    assert_eq!(twisted_count(2, 3, 1).unwrap(), big(96));
}

#[test]
fn twisted_matches_e_polynomial() {
    for p in [3u32, 5, 7] {
        let pgl = gl_order(2, p as u64) / (p as u64 - 1);
        for genus in 1..=2 {
            let expect = eval_at(&e_poly(2, genus).unwrap(), p as i64) * big(pgl);
            assert_eq!(twisted_count(2, p, genus).unwrap(), expect, "q={p} g={genus}");
        }
    }
}

#[test]
fn untwisted_matches_series() {
    for (n, p) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let order = gl_order(n, p as u64);
        for genus in 1..=2u32 {
            let coeff = untwisted_series(genus, n).unwrap().coeff(n as usize).clone();
            let scale = coeff.eval_int(&[p as i64]).unwrap()
                * rat(p as i64).pow(((genus - 1) * n * n) as i32)
                * rat(order as i64);
            assert!(scale.is_integer());
            let expect = scale.to_integer().to_biguint().unwrap();
            let hom = hom_count(n, p, genus).unwrap();
            assert_eq!(hom, expect, "n={n} q={p} g={genus}");
            assert!((&hom % big(order)).is_zero());
        }
    }
}

#[test]
fn hom_count_divisible_by_order() {
    let g = build_gl(2, 2).unwrap();
    assert_eq!(genus_count(&g, 1, g.identity()).unwrap(), big(18));
    for genus in 1..=3 {
        let h = genus_count(&g, genus, g.identity()).unwrap();
        assert!((h % big(6)).is_zero());
    }
}

#[test]
fn non_central_target_is_rejected() {
    let g = build_gl(2, 3).unwrap();
    let z = (0..g.order() as u32).find(|&z| !g.is_central(z)).unwrap();
    assert!(genus_count(&g, 1, z).is_err());
}
