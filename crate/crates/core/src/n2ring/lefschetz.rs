use num_traits::Zero;

use super::{in_basis, monomial_qt, normal_form, primitive_dim, skg_enumerate, Monomial, RingElement, PSI_QT};
use crate::error::Result;
use crate::exact::Rational;

/// Dimensions and rank of `L^l : Gr^W_{6g-6-2l} H^{i-l} → Gr^W_{6g-6+2l} H^{i+l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LefschetzPiece {
    pub g: u32,
    pub l: u32,
    pub i: i32,
    pub domain_dim: i64,
    pub codomain_dim: i64,
    pub rank: i64,
}

impl LefschetzPiece {
    pub fn is_isomorphism(&self) -> bool {
        self.rank == self.domain_dim && self.rank == self.codomain_dim
    }
}

/// Basis monomials of sector `k` with the given `(q, t)`-exponents, sector shift included.
fn sector_piece(g: u32, k: u32, qe: i32, te: i32) -> Vec<Monomial> {
    let shift = [PSI_QT[0] * k as i32, PSI_QT[1] * k as i32];
    skg_enumerate(g - k, k)
        .into_iter()
        .filter(|m| {
            let e = monomial_qt(*m);
            e[0] + shift[0] == qe && e[1] + shift[1] == te
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let d = &f * &rows[rank][c];
                    rows[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Builds the matrix of multiplication by `α^l` between the weight-graded
/// pieces and returns its exact rank together with both dimensions.
pub fn lefschetz_check(g: u32, l: u32, i: i32) -> Result<LefschetzPiece> {
    let mid = 3 * g as i32 - 3;
    let mut piece = LefschetzPiece { g, l, i, domain_dim: 0, codomain_dim: 0, rank: 0 };
    for k in 0..=g {
        let mult = primitive_dim(g, k);
        if mult == 0 {
            continue;
        }
        let dom = sector_piece(g, k, mid - l as i32, i - l as i32);
        let cod = sector_piece(g, k, mid + l as i32, i + l as i32);
        piece.domain_dim += mult * dom.len() as i64;
        piece.codomain_dim += mult * cod.len() as i64;
        if dom.is_empty() || cod.is_empty() {
            continue;
        }
        let gp = g - k;
        let mut rows = Vec::with_capacity(dom.len());
        for m in &dom {
            let image = normal_form(&RingElement::monomial(*m, Rational::from_integer(1.into())).shift([l, 0, 0]), gp, k)?;
            debug_assert!(image.terms().all(|(mm, _)| in_basis(gp, k, *mm)));
            rows.push(cod.iter().map(|c| image.coeff(*c)).collect());
        }
        piece.rank += mult * rank(rows) as i64;
    }
    Ok(piece)
}

/// Every nonempty piece for genus `g`, over all `l ≥ 0` and degrees `i`.
pub fn lefschetz_sweep(g: u32) -> Result<Vec<LefschetzPiece>> {
    let mid = 3 * g as i32 - 3;
    let top_degree = 12 * g as i32;
    let mut out = Vec::new();
    for l in 0..=mid.max(0) as u32 {
        for i in -(l as i32)..=top_degree {
            let p = lefschetz_check(g, l, i)?;
            if p.domain_dim > 0 || p.codomain_dim > 0 {
                out.push(p);
            }
        }
    }
    Ok(out)
}
