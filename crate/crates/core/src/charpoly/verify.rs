use std::fmt;
use std::str::FromStr;

use super::{e_bar, e_poly, mhp_conj, zeta_q_rational, zeta_zw, Variant};
use crate::error::{Error, Result};
use crate::exact::{Image, LaurentPoly, RationalFn, Vars};
use crate::hooks::{q_vars, zw_vars};
use crate::partitions::{enumerate, Partition};
use crate::plethys::{Coeff, TruncSeries};

/// The identities the verifier knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Bivariate genus-0 product formula, with `z^2, w^2` renamed `z, w`.
    G0,
    /// `Σ 𝓗_λ(q)^{-2} T^{|λ|} = ∏_j (1 - q^j T)^{-j}`.
    G0Univariate,
    /// Genus-1 conjecture `H̄_n(z,w) = (z-w)^2` for every `n ≤ order`.
    G1,
    /// Per-size hook identity of Garsia and Haiman.
    Gh,
    /// `Ē_n(1/q) = Ē_n(q)` for `n ≤ order`.
    Duality,
    /// The conjectural mixed Hodge polynomial at `t = -1` equals `E_n(q)`.
    TMinusOne,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::G0, Check::G0Univariate, Check::G1, Check::Gh, Check::Duality, Check::TMinusOne];

    pub fn name(self) -> &'static str {
        match self {
            Check::G0 => "g0",
            Check::G0Univariate => "g0u",
            Check::G1 => "g1",
            Check::Gh => "gh",
            Check::Duality => "duality",
            Check::TMinusOne => "t-minus-one",
        }
    }

    /// Whether the genus parameter enters the check.
    pub fn uses_genus(self) -> bool {
        matches!(self, Check::Duality | Check::TMinusOne)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g0-univariate" => Ok(Check::G0Univariate),
            _ => Check::ALL
                .into_iter()
                .find(|c| c.name() == s)
                .ok_or_else(|| Error::usage(format!("unknown check `{s}`"))),
        }
    }
}

/// Outcome of one verification run. Failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: Check,
    pub order: u32,
    pub g: u32,
    pub passed: bool,
    /// One line per compared coefficient or size.
    pub lines: Vec<String>,
    /// The first mismatch, if any.
    pub failure: Option<String>,
}

impl Report {
    fn new(check: Check, order: u32, g: u32) -> Self {
        Report { check, order, g, passed: true, lines: Vec::new(), failure: None }
    }

    fn record(&mut self, label: String, ok: bool, detail: impl FnOnce() -> String) {
        self.lines.push(format!("{label}: {}", if ok { "ok" } else { "MISMATCH" }));
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(format!("{label}: {}", detail()));
        }
    }

    fn compare_series<C: Coeff>(&mut self, lhs: &TruncSeries<C>, rhs: &TruncSeries<C>) {
        for k in 0..=lhs.order() {
            let (a, b) = (lhs.coeff(k), rhs.coeff(k));
            self.record(format!("T^{k}"), a.same(b), || format!("{a} != {b}"));
        }
    }
}

/// Runs `check` up to `order` (series order or largest `n`) at genus `g`.
pub fn verify(check: Check, order: u32, g: u32) -> Result<Report> {
    if order == 0 {
        return Err(Error::usage("order must be at least 1"));
    }
    let mut r = Report::new(check, order, g);
    match check {
        Check::G0 => {
            let lhs = g0_lhs(order);
            let v = zw_vars();
            let v1 = RationalFn::new(
                LaurentPoly::one(&v),
                &[
                    LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[1, 0], -1)]),
                    LaurentPoly::from_int_terms(&v, &[(&[0, 1], 1), (&[0, 0], -1)]),
                ],
            )?;
            let rhs = TruncSeries::zero(&v1, order as usize).with_coeff(1, v1.clone()).exp_pleth()?;
            r.compare_series(&lhs, &rhs);
        }
        Check::G0Univariate => {
            let lhs = zeta_q_rational(0, order);
            let v = q_vars();
            let v1 = RationalFn::with_powers(
                LaurentPoly::var(&v, "q"),
                &[(LaurentPoly::from_int_terms(&v, &[(&[0], 1), (&[1], -1)]), 2)],
            )?;
            let rhs = TruncSeries::zero(&v1, order as usize).with_coeff(1, v1.clone()).exp_pleth()?;
            r.compare_series(&lhs, &rhs);
        }
        Check::G1 => {
            let lhs = zeta_zw(1, order);
            let v = zw_vars();
            let v1 = RationalFn::new(
                LaurentPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], -1)]).pow(2),
                &[
                    LaurentPoly::from_int_terms(&v, &[(&[2, 0], 1), (&[0, 0], -1)]),
                    LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[0, 2], -1)]),
                ],
            )?;
            let mut vs = TruncSeries::zero(&v1, order as usize);
            for k in 1..=order as usize {
                vs = vs.with_coeff(k, v1.clone());
            }
            let rhs = vs.exp_pleth()?;
            r.compare_series(&lhs, &rhs);
        }
        Check::Gh => {
            for n in 1..=order {
                let (a, b) = gh_sides(n);
                r.record(format!("n={n}"), a.same(&b), || format!("{a} != {b}"));
            }
        }
        Check::Duality => {
            for n in 1..=order {
                let e = e_bar(n, g)?;
                let inv = e.substitute(&[Image::monomial(1, &[-1])], e.vars())?;
                r.record(format!("n={n}"), inv == e, || format!("Ē_{n}(1/q) = {inv}, Ē_{n}(q) = {e}"));
            }
        }
        Check::TMinusOne => {
            for n in 1..=order {
                let h = match mhp_conj(n, g, Variant::Gl) {
                    Ok(h) => h,
                    Err(Error::Consistency(msg)) => {
                        r.record(format!("n={n}"), false, || msg);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let at = h.substitute(&[Image::monomial(1, &[1]), Image::monomial(-1, &[0])], &q_vars())?;
                let e = e_poly(n, g)?;
                r.record(format!("n={n}"), at == e, || format!("H(q,-1) = {at}, E_{n}(q) = {e}"));
            }
        }
    }
    Ok(r)
}

fn binom(v: &Vars, a: i32, b: i32) -> LaurentPoly {
    LaurentPoly::from_int_terms(v, &[(&[a, 0], 1), (&[0, b], -1)])
}

/// `1 / ∏ (z^{a+1} - w^l)(z^a - w^{l+1})`.
fn g0_weight(l: &Partition) -> RationalFn {
    let v = zw_vars();
    let den: Vec<_> = l
        .boxes()
        .iter()
        .flat_map(|b| [binom(&v, b.arm as i32 + 1, b.leg as i32), binom(&v, b.arm as i32, b.leg as i32 + 1)])
        .collect();
    RationalFn::new(LaurentPoly::one(&v), &den).expect("nonzero binomials")
}

fn g0_lhs(order: u32) -> TruncSeries<RationalFn> {
    let v = zw_vars();
    let mut s = TruncSeries::zero(&RationalFn::zero(&v), order as usize);
    for n in 0..=order {
        let mut acc = RationalFn::zero(&v);
        for l in enumerate(n) {
            acc = acc.add(&g0_weight(&l));
        }
        s = s.with_coeff(n as usize, acc);
    }
    s
}

/// Both sides of the size-`n` Garsia–Haiman identity.
pub fn gh_sides(n: u32) -> (RationalFn, RationalFn) {
    let v = zw_vars();
    let mut lhs = RationalFn::zero(&v);
    let mut rhs = RationalFn::zero(&v);
    for l in enumerate(n) {
        let mut den = Vec::new();
        for b in l.boxes() {
            // w^l - z^{a+1} = -(z^{a+1} - w^l)
            den.push(binom(&v, b.arm as i32 + 1, b.leg as i32).scale_int(-1));
            den.push(binom(&v, b.arm as i32, b.leg as i32 + 1));
        }
        lhs = lhs.add(&RationalFn::new(LaurentPoly::one(&v), &den).expect("nonzero binomials"));
        let num = LaurentPoly::monomial(&v, &[l.conjugate().n_lambda() as i32, l.n_lambda() as i32], crate::exact::rat(1));
        let mut den = Vec::new();
        for h in l.hooks() {
            den.push(LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[h as i32, 0], -1)]));
            den.push(LaurentPoly::from_int_terms(&v, &[(&[0, 0], 1), (&[0, h as i32], -1)]));
        }
        rhs = rhs.add(&RationalFn::new(num, &den).expect("nonzero binomials"));
    }
    (lhs, rhs)
}
