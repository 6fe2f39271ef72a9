//! One PASS/FAIL line per acceptance criterion. The lines go straight to
//! stdout, so they show up even when the harness captures output.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use charvar::charpoly::*;
use charvar::exact::{rat, ratio, LaurentPoly, Rational, RationalFn};
use charvar::gloracle::{build_gl, genus_count, gl_order, hom_count, twisted_count};
use charvar::hooks::{q_vars, qt_vars};
use charvar::n2ring::{lefschetz_sweep, mhp2_closed, mhp_m2_ring};
use charvar::plethys::{mobius, TruncSeries};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q_lin(c0: i64, c1: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms(&q_vars(), &[(&[0], c0), (&[1], c1)])
}

fn q_pow(k: i32) -> LaurentPoly {
    LaurentPoly::monomial(&q_vars(), &[k], rat(1))
}

fn ok<T>(x: charvar::Result<T>) -> Result<T, String> {
    x.map_err(|e| e.to_string())
}

fn c1_small_rank() -> Outcome {
    for g in 0..=4 {
        ensure!(ok(e_poly(1, g))? == q_lin(1, -1).pow(2 * g), "E_1 wrong at g={g}");
    }
    for g in 1..=3u32 {
        // E/(q-1)^{2g} = (q²-1)^{2g-2} + q^{2g-2}(q²-1)^{2g-2} - ½q^{2g-2}(q-1)^{2g-2} - ½q^{2g-2}(q+1)^{2g-2}
        let q2m1 = LaurentPoly::from_int_terms(&q_vars(), &[(&[0], -1), (&[2], 1)]);
        let m = 2 * g - 2;
        let qm = q_pow(m as i32);
        let inner = &(&q2m1.pow(m) + &(&qm * &q2m1.pow(m)))
            - &(&(&qm * &q_lin(-1, 1).pow(m)) + &(&qm * &q_lin(1, 1).pow(m))).scale(&ratio(1, 2));
        let expect = &inner * &q_lin(-1, 1).pow(2 * g);
        ensure!(ok(e_poly(2, g))? == expect, "E_2 differs from the closed form at g={g}");
    }
    Ok("E_1 for g≤4, E_2 for g≤3".into())
}

fn c2_genus_one() -> Outcome {
    let uv = ok(uv_coeffs(1, 8))?;
    for (k, v) in uv.v.iter().enumerate() {
        ensure!(v.is_one(), "V_{} = {v}", k + 1);
    }
    for n in 1..=8 {
        ensure!(ok(e_poly(n, 1))? == q_lin(-1, 1).pow(2), "E_{n} at g=1");
    }
    Ok("V_n = 1 and E_n = (q-1)^2 for n≤8".into())
}

fn report(check: Check, order: u32, g: u32) -> Result<(), String> {
    let r = ok(verify(check, order, g))?;
    ensure!(r.passed, "{check} to order {order}: {}", r.failure.unwrap_or_default());
    Ok(())
}

fn c3_genus_zero() -> Outcome {
    report(Check::G0Univariate, 8, 0)?;
    report(Check::G0, 5, 0)?;
    report(Check::Gh, 5, 0)?;
    Ok("univariate to T^8, bivariate to T^5, per-size hook identity n≤5".into())
}

fn c4_genus_one_conjecture() -> Outcome {
    report(Check::G1, 6, 1)?;
    Ok("H̄_n = (z-w)^2 for n≤6".into())
}

fn c5_duality() -> Outcome {
    for g in [2, 3] {
        report(Check::Duality, 5, g)?;
        for n in 1..=5 {
            let e = ok(e_poly(n, g))?;
            let (lo, c0) = e.trailing_term().ok_or("E_n is zero")?;
            let (hi, c1) = e.leading_term().ok_or("E_n is zero")?;
            ensure!(lo[0] == 0 && *c0 == rat(1), "constant term of E_{n}, g={g}");
            ensure!(hi[0] as i64 == d_n(n, g) && *c1 == rat(1), "leading term of E_{n}, g={g}");
        }
    }
    Ok("n≤5, g∈{2,3}; E_n = 1 + … + q^{d_n}".into())
}

fn c6_euler() -> Outcome {
    for g in [2u32, 3] {
        for n in 1..=5u32 {
            let e = ok(e_poly(n, g))?;
            let reduced = ok(e.exact_divide(&q_lin(-1, 1).pow(2 * g)))?.ok_or("torus factor does not divide")?;
            let chi = ok(reduced.eval_int(&[1]))?;
            let expect = rat(mobius(n as usize) * (n as i64).pow(2 * g - 3));
            ensure!(chi == expect, "n={n} g={g}: {chi} vs {expect}");
            ensure!(rat(ok(euler_char_pgl(n, g))?) == expect, "library value n={n} g={g}");
        }
    }
    Ok("μ(n) n^{2g-3} for n≤5, g∈{2,3}".into())
}

fn c7_hbar() -> Outcome {
    let mut n3 = Vec::new();
    for g in 0..=2 {
        for n in 1..=3 {
            let r = ok(h_bar_rational(n, g))?;
            let p = ok(r.to_poly())?.ok_or(format!("H̄_{n} not polynomial at g={g}"))?;
            ensure!(p.is_integral(), "H̄_{n} not integral at g={g}");
            let signed = signed_nonnegative(&p);
            if n == 2 {
                ensure!(signed, "H̄_2(z,-w) has a negative coefficient at g={g}");
            }
            if n == 3 {
                n3.push(format!("g={g}:{}", if signed { "nonneg" } else { "NEGATIVE" }));
            }
        }
    }
    Ok(format!("polynomial for n≤3, g≤2; n=3 signs {}", n3.join(" ")))
}

fn c8_apoly() -> Outcome {
    let chi_forms: [&[(i64, i64)]; 3] = [
        &[(1, 1), (1, 2)],
        &[(1, 1), (3, 2), (1, 2)],
        &[(1, 1), (17, 6), (5, 2), (2, 3)],
    ];
    for g in 1..=3u32 {
        ensure!(ok(a_poly_checked(1, g))? == q_pow(g as i32), "A_1 at g={g}");
        let chi = rat(2 * g as i64 - 2);
        for n in 1..=4u32 {
            let a = ok(a_poly(n, g, ARoute::Specialize))?;
            let b = ok(a_poly(n, g, ARoute::Hua))?;
            ensure!(a == b, "routes differ for n={n} g={g}");
            let (lo, c) = a.trailing_term().ok_or("A_n is zero")?;
            ensure!(lo[0] as u32 == (g - 1) * n + 1 && *c == rat(1), "lowest term of A_{n} at g={g}");
            if n >= 2 {
                let form = chi_forms[n as usize - 2];
                let mut expect = Rational::zero();
                let mut pw = rat(1);
                for (num, den) in form {
                    expect += ratio(*num, *den) * &pw;
                    pw *= &chi;
                }
                let at1 = ok(a.eval_int(&[1]))?;
                ensure!(at1 == expect, "A_{n}(1) at g={g}: {at1} vs {expect}");
            }
        }
    }
    Ok("routes agree n≤4, g≤3; A_n(1) polynomials in χ for n=2,3,4".into())
}

fn c9_rank_two() -> Outcome {
    for g in [2u32, 3] {
        let ring = mhp_m2_ring(g);
        ensure!(ring == ok(mhp2_closed(g))?, "ring vs closed form at g={g}");
        ensure!(ring == ok(mhp_conj(2, g, Variant::Gl))?, "ring vs H̄ route at g={g}");
        let e = ok(e_poly(2, g))?;
        for q in [2i64, 3, 5, 11] {
            ensure!(ok(ring.eval_int(&[q, -1]))? == ok(e.eval_int(&[q]))?, "t=-1 at q={q}, g={g}");
        }
        let t = charvar::exact::Vars::new(&["t"]);
        let pure: Vec<(Vec<i32>, Rational)> = (0..g as i32).map(|k| (vec![4 * k], rat(1))).collect();
        ensure!(pure_part(&ring) == LaurentPoly::from_terms(&t, pure), "pure part at g={g}");
        let pgl = ok(mhp_conj(2, g, Variant::Pgl))?;
        ensure!(ok(curious_pd_defect(&pgl, d_tilde(2, g)))?.is_zero(), "curious PD at g={g}");
        ensure!(pgl.vars() == &qt_vars(), "variables");
    }
    Ok("g∈{2,3}: ring = closed form = H̄ route, t=-1, pure part, curious PD".into())
}

fn c10_lefschetz() -> Outcome {
    let sweep = ok(lefschetz_sweep(2))?;
    for p in &sweep {
        ensure!(p.is_isomorphism(), "g=2 l={} i={}: {}→{} rank {}", p.l, p.i, p.domain_dim, p.codomain_dim, p.rank);
    }
    Ok(format!("g=2: {} pieces, all isomorphisms", sweep.len()))
}

fn c11_oracle() -> Outcome {
    for p in [3u32, 5, 7] {
        let pgl = BigUint::from(gl_order(2, p as u64) / (p as u64 - 1));
        for g in 1..=2 {
            let e = ok(e_poly(2, g))?.eval_int(&[p as i64]).map_err(|e| e.to_string())?;
            let expect = e.to_integer().to_biguint().ok_or("negative E")? * &pgl;
            let got = ok(twisted_count(2, p, g))?;
            ensure!(got == expect, "twisted q={p} g={g}: {got} vs {expect}");
        }
    }
    for (n, p) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let order = gl_order(n, p as u64);
        for g in 1..=2u32 {
            let c = ok(untwisted_series(g, n))?.coeff(n as usize).clone();
            let v = ok(c.eval_int(&[p as i64]))? * rat(p as i64).pow(((g - 1) * n * n) as i32) * rat(order as i64);
            let hom = ok(hom_count(n, p, g))?;
            ensure!(Rational::from_integer(hom.clone().into()) == v, "untwisted GL_{n}(F_{p}) g={g}: {hom} vs {v}");
            ensure!((&hom % BigUint::from(order)).is_zero(), "|G| ∤ #Hom for GL_{n}(F_{p}) g={g}");
        }
    }
    let s3 = ok(build_gl(2, 2))?;
    ensure!(ok(genus_count(&s3, 1, s3.identity()))? == BigUint::from(18u32), "commuting pairs in GL_2(F_2)");
    Ok("twisted q∈{3,5,7}, untwisted for five groups, g∈{1,2}".into())
}

fn poly_q() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=2i32, -2i64..=2), 0..4)
        .prop_map(|ts| LaurentPoly::from_terms(&q_vars(), ts.into_iter().map(|(e, c)| (vec![e], rat(c)))))
}

fn series(n: usize) -> impl Strategy<Value = TruncSeries<LaurentPoly>> {
    prop::collection::vec(poly_q(), n).prop_map(|cs| {
        let mut v = vec![LaurentPoly::zero(&q_vars())];
        v.extend(cs);
        TruncSeries::new(v).unwrap()
    })
}

fn c12_plethystic() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&(1usize..=8).prop_flat_map(|n| (series(n), series(n))), |(v, w)| {
            let ev = v.exp_pleth().unwrap();
            prop_assert_eq!(ev.log_pleth().unwrap(), v.clone());
            let lhs = v.add(&w).unwrap().exp_pleth().unwrap();
            prop_assert_eq!(lhs, ev.mul(&w.exp_pleth().unwrap()).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner
        .run(&(0i32..4, 1usize..=8), |(a, n)| {
            let v = q_vars();
            let om = |i: i32| &LaurentPoly::one(&v) - &q_pow(i);
            let mut cs = vec![RationalFn::zero(&v); n + 1];
            cs[1] = RationalFn::new(q_pow(a), &[om(1)]).unwrap();
            let lhs = TruncSeries::new(cs).unwrap().exp_pleth().unwrap();
            for k in 0..=n {
                let den: Vec<LaurentPoly> = (1..=k as i32).map(om).collect();
                let rhs = RationalFn::new(q_pow(a * k as i32), &den).unwrap();
                prop_assert!(lhs.coeff(k).equals(&rhs).unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("Exp∘Log = id, Exp additive, Exp(q^a T/(1-q)) product form; 100 cases each, order ≤ 8".into())
}

fn emit(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("E-polynomials of rank 1 and 2", c1_small_rank),
        ("genus-one degeneration", c2_genus_one),
        ("genus-zero identities", c3_genus_zero),
        ("genus-one bivariate conjecture", c4_genus_one_conjecture),
        ("curious Poincaré duality of E", c5_duality),
        ("Euler characteristics", c6_euler),
        ("H̄ polynomiality and signs", c7_hbar),
        ("A-polynomials", c8_apoly),
        ("rank-two triple agreement", c9_rank_two),
        ("curious hard Lefschetz", c10_lefschetz),
        ("finite-group oracle bridge", c11_oracle),
        ("plethystic laws", c12_plethystic),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => emit(format!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", i + 1)),
            Err(why) => {
                emit(format!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
#[ignore = "opt-in: genus-three Lefschetz sweep"]
fn lefschetz_genus_three() {
    let sweep = lefschetz_sweep(3).unwrap();
    let bad: Vec<_> = sweep.iter().filter(|p| !p.is_isomorphism()).collect();
    emit(format!("{} 10b curious hard Lefschetz g=3 ({} pieces)", if bad.is_empty() { "PASS" } else { "FAIL" }, sweep.len()));
    assert!(bad.is_empty(), "{bad:?}");
}
