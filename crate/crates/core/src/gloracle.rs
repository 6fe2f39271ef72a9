//! Brute-force counts in small `GL_n(F_p)`: commutator distributions and
//! solution counts of `[x_1,y_1]⋯[x_g,y_g] = z`, computed without characters.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest `|G|²` we are willing to tabulate.
pub const PAIR_BUDGET: u64 = 1 << 24;

/// Largest number of tuples [`genus_count_direct`] will walk.
pub const TUPLE_BUDGET: u64 = 50_000_000;

/// `GL_n(F_p)` with its multiplication table and conjugacy classes.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub n: usize,
    pub p: u32,
    /// Row-major matrix entries per element.
    elements: Vec<Vec<u32>>,
    /// Position of each base-`p` matrix code, if invertible.
    index: Vec<Option<u32>>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
    identity: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> u64 {
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

fn det_mod(m: &[u32], n: usize, p: u32) -> u32 {
    let p64 = p as u64;
    let mut a: Vec<u64> = m.iter().map(|&x| x as u64).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if piv != c {
            for k in 0..n {
                a.swap(piv * n + k, c * n + k);
            }
            det = (p64 - det) % p64;
        }
        let d = a[c * n + c];
        det = det * d % p64;
        let dinv = pow_mod(d, p64 - 2, p64);
        for r in c + 1..n {
            let f = a[r * n + c] * dinv % p64;
            if f == 0 {
                continue;
            }
            for k in c..n {
                a[r * n + k] = (a[r * n + k] + p64 * p64 - f * a[c * n + k] % p64) % p64;
            }
        }
    }
    det as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn matrix(&self, x: u32) -> &[u32] {
        &self.elements[x as usize]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.order() + y as usize]
    }

    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_rep(&self, c: u32) -> u32 {
        self.class_reps[c as usize]
    }

    pub fn class_size(&self, c: u32) -> u64 {
        self.class_sizes[c as usize]
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let xy = self.mul(x, y);
        self.mul(self.mul(xy, self.inv(x)), self.inv(y))
    }

    pub fn is_central(&self, z: u32) -> bool {
        self.class_size(self.class_of(z)) == 1
    }

    /// The scalar matrix `c I`, looked up in the table.
    pub fn scalar(&self, c: u32) -> Result<u32> {
        let c = c % self.p;
        if c == 0 {
            return Err(Error::usage("the zero scalar is not invertible"));
        }
        let mut m = vec![0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = c;
        }
        Ok(self.lookup(&m).expect("scalar matrices are invertible"))
    }

    pub fn lookup(&self, m: &[u32]) -> Option<u32> {
        self.index[encode(m, self.p)]
    }
}

fn encode(m: &[u32], p: u32) -> usize {
    m.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// Enumerates `GL_n(F_p)` and tabulates products, inverses and classes.
pub fn build_gl(n: u32, p: u32) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    if !is_prime(p) {
        return Err(Error::usage(format!("q = {p} is not prime; only prime fields are supported")));
    }
    let order = gl_order(n, p as u64);
    let pairs = order.saturating_mul(order);
    if pairs > PAIR_BUDGET {
        return Err(Error::Budget(format!(
            "GL_{n}(F_{p}) has {order} elements, so the table needs {pairs} products (limit {PAIR_BUDGET})"
        )));
    }
    let n = n as usize;
    let codes = (p as usize).pow((n * n) as u32);
    let mut index = vec![None; codes];
    let mut elements = Vec::with_capacity(order as usize);
    for code in 0..codes {
        let mut m = Vec::with_capacity(n * n);
        let mut c = code;
        for _ in 0..n * n {
            m.push((c % p as usize) as u32);
            c /= p as usize;
        }
        if det_mod(&m, n, p) != 0 {
            index[code] = Some(elements.len() as u32);
            elements.push(m);
        }
    }
    if elements.len() as u64 != order {
        return Err(Error::consistency(format!("found {} invertible matrices, expected {order}", elements.len())));
    }
    let size = elements.len();
    let mut mul = vec![0u32; size * size];
    let mut prod = vec![0u32; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0u64;
                    for k in 0..n {
                        s += a[r * n + k] as u64 * b[k * n + c] as u64;
                    }
                    prod[r * n + c] = (s % p as u64) as u32;
                }
            }
            mul[i * size + j] = index[encode(&prod, p)].expect("products of invertible matrices are invertible");
        }
    }
    let mut id = vec![0; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let identity = index[encode(&id, p)].expect("identity is invertible");
    let mut inv = vec![u32::MAX; size];
    for i in 0..size {
        for j in 0..size {
            if mul[i * size + j] == identity {
                inv[i] = j as u32;
                break;
            }
        }
    }
    let mut class_of = vec![u32::MAX; size];
    let mut class_reps = Vec::new();
    let mut class_sizes = Vec::new();
    for x in 0..size {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = class_reps.len() as u32;
        let mut count = 0;
        for h in 0..size {
            let y = mul[mul[h * size + x] as usize * size + inv[h] as usize] as usize;
            if class_of[y] == u32::MAX {
                class_of[y] = id;
                count += 1;
            }
        }
        class_reps.push(x as u32);
        class_sizes.push(count);
    }
    Ok(GroupTable { n, p, elements, index, mul, inv, class_of, class_reps, class_sizes, identity })
}

/// A function on the group that is constant on conjugacy classes, stored per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<BigUint>,
}

impl ClassFunction {
    pub fn at(&self, g: &GroupTable, z: u32) -> &BigUint {
        &self.values[g.class_of(z) as usize]
    }

    /// `Σ_z f(z)` over all elements.
    pub fn total(&self, g: &GroupTable) -> BigUint {
        self.values
            .iter()
            .enumerate()
            .map(|(c, v)| v * BigUint::from(g.class_size(c as u32)))
            .sum()
    }
}

/// `f(z) = #{(x, y) : [x, y] = z}`.
pub fn commutator_distribution(g: &GroupTable) -> Result<ClassFunction> {
    let size = g.order();
    let mut counts = vec![0u64; size];
    for x in 0..size as u32 {
        for y in 0..size as u32 {
            counts[g.commutator(x, y) as usize] += 1;
        }
    }
    let mut values = vec![BigUint::zero(); g.num_classes()];
    for (c, v) in values.iter_mut().enumerate() {
        *v = BigUint::from(counts[g.class_rep(c as u32) as usize]);
    }
    for (z, &k) in counts.iter().enumerate() {
        if values[g.class_of(z as u32) as usize] != BigUint::from(k) {
            return Err(Error::consistency("commutator count is not a class function"));
        }
    }
    Ok(ClassFunction { values })
}

/// `(f * h)(z) = Σ_u f(u) h(u^{-1} z)`, evaluated at class representatives.
pub fn convolve(g: &GroupTable, f: &ClassFunction, h: &ClassFunction) -> ClassFunction {
    let values = (0..g.num_classes() as u32)
        .map(|c| {
            let z = g.class_rep(c);
            (0..g.order() as u32)
                .map(|u| f.at(g, u) * h.at(g, g.mul(g.inv(u), z)))
                .sum()
        })
        .collect();
    ClassFunction { values }
}

/// `#{(x_1, y_1, …, x_g, y_g) : [x_1,y_1]⋯[x_g,y_g] = target}` by repeated convolution.
pub fn genus_count(g: &GroupTable, genus: u32, target: u32) -> Result<BigUint> {
    if genus == 0 {
        return Err(Error::usage("genus must be at least 1"));
    }
    if !g.is_central(target) {
        return Err(Error::usage("target must be central"));
    }
    let f = commutator_distribution(g)?;
    let mut acc = f.clone();
    for _ in 1..genus {
        acc = convolve(g, &acc, &f);
    }
    Ok(acc.at(g, target).clone())
}

/// Same count as [`genus_count`], walking every `2g`-tuple.
pub fn genus_count_direct(g: &GroupTable, genus: u32, target: u32) -> Result<BigUint> {
    let size = g.order() as u64;
    let tuples = size.checked_pow(2 * genus).unwrap_or(u64::MAX);
    if tuples > TUPLE_BUDGET {
        return Err(Error::Budget(format!("{tuples} tuples to enumerate (limit {TUPLE_BUDGET})")));
    }
    fn walk(g: &GroupTable, left: u32, acc: u32, target: u32) -> u64 {
        if left == 0 {
            return (acc == target) as u64;
        }
        let mut total = 0;
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                total += walk(g, left - 1, g.mul(acc, g.commutator(x, y)), target);
            }
        }
        total
    }
    Ok(BigUint::from(walk(g, genus, g.identity(), target)))
}

/// A generator of the `n`-th roots of unity in `F_p`, when `n | p - 1`.
pub fn primitive_root_of_unity(n: u32, p: u32) -> Result<u32> {
    if n == 0 || !(p - 1).is_multiple_of(n) {
        return Err(Error::usage(format!("F_{p} has no primitive {n}-th root of unity")));
    }
    (1..p)
        .find(|&z| {
            pow_mod(z as u64, n as u64, p as u64) == 1
                && (1..n).all(|k| pow_mod(z as u64, k as u64, p as u64) != 1)
        })
        .ok_or_else(|| Error::consistency("no root of unity found"))
}

/// `#{[x_1,y_1]⋯[x_g,y_g] = ζ_n I}` in `GL_n(F_p)`.
pub fn twisted_count(n: u32, p: u32, genus: u32) -> Result<BigUint> {
    let zeta = primitive_root_of_unity(n, p)?;
    let g = build_gl(n, p)?;
    genus_count(&g, genus, g.scalar(zeta)?)
}

/// `#Hom(Γ_g, GL_n(F_p))`.
pub fn hom_count(n: u32, p: u32, genus: u32) -> Result<BigUint> {
    let g = build_gl(n, p)?;
    genus_count(&g, genus, g.identity())
}
