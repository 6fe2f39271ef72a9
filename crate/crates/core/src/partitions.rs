//! Integer partitions and their box statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{LaurentPoly, Vars};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// Arm, leg and hook of a single box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxStat {
    /// 1-based row, top-down.
    pub row: u32,
    /// 1-based column, left to right.
    pub col: u32,
    pub arm: u32,
    pub leg: u32,
    pub hook: u32,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<u32>) -> Result<Self, String> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err("partition parts must be weakly decreasing".into());
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Every box with its arm, leg and hook, row by row.
    pub fn boxes(&self) -> Vec<BoxStat> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &li) in self.0.iter().enumerate() {
            for j in 0..li {
                let arm = li - j - 1;
                let leg = conj.0[j as usize] - i as u32 - 1;
                out.push(BoxStat { row: i as u32 + 1, col: j + 1, arm, leg, hook: arm + leg + 1 });
            }
        }
        out
    }

    pub fn hooks(&self) -> Vec<u32> {
        self.boxes().iter().map(|b| b.hook).collect()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_lambda(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// `⟨λ, μ⟩ = Σ_j λ'_j μ'_j`.
    pub fn pairing(&self, other: &Partition) -> u64 {
        self.conjugate()
            .0
            .iter()
            .zip(other.conjugate().0.iter())
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum()
    }

    /// Multiplicities `m_i` of each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `b_λ(x) = ∏_i (1-x)(1-x^2)⋯(1-x^{m_i})` in the single variable of `vars`.
    pub fn b_lambda(&self, vars: &Vars) -> LaurentPoly {
        let mut out = LaurentPoly::one(vars);
        for (_, m) in self.multiplicities() {
            for k in 1..=m as i32 {
                out = &out * &LaurentPoly::from_int_terms(vars, &[(&[0], 1), (&[k], -1)]);
            }
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;

    fn try_from(v: Vec<u32>) -> Result<Self, String> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n` in reverse-lexicographic order, e.g. `(3), (2,1), (1,1,1)`.
pub fn enumerate(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Number of partitions of each size `0..=n`.
pub fn partition_counts(n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}
