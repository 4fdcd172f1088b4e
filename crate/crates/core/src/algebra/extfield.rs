use super::enumerate::monic_polys;
use super::factor::is_irreducible;
use super::poly::Poly;

/// F_{q^j} by log/antilog tables. Elements are indices whose base-q digits are
/// the coefficients of a residue modulo a fixed irreducible; 0 is the zero element.
#[derive(Debug, Clone)]
pub struct ExtField {
    q: u32,
    j: usize,
    size: usize,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl ExtField {
    /// Table-based field; intended for q^j up to a few million.
    pub fn new(q: u32, j: usize) -> Self {
        assert!(j >= 1);
        let size = (q as usize).pow(j as u32);
        let order = size - 1;
        let modulus = monic_polys(q, j)
            .find(|m| is_irreducible(m) && (j == 1 || generates(m, q, order)))
            .expect("a primitive polynomial exists");
        // For j = 1, search a primitive root directly.
        let gen = if j == 1 {
            (1..q)
                .map(|g| Poly::constant(q, g))
                .find(|g| multiplicative_order(g, &modulus, order) == order)
                .expect("a primitive root exists")
        } else {
            Poly::monomial(q, 1, 1)
        };
        let mut exp = vec![0u32; order];
        let mut log = vec![u32::MAX; size];
        let mut cur = Poly::one(q);
        for (k, slot) in exp.iter_mut().enumerate() {
            let idx = index_of(&cur, q) as u32;
            *slot = idx;
            log[idx as usize] = k as u32;
            cur = cur.mul(&gen).rem(&modulus);
        }
        Self { q, j, size, log, exp }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.j
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let k = (self.log[a as usize] as usize + self.log[b as usize] as usize) % order;
        self.exp[k]
    }

    /// Digit-wise addition.
    #[inline]
    pub fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let q = self.q;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.j {
            out += ((a % q + b % q) % q) * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    }

    /// Embedding of c ∈ F_q (the constant residues are exactly the indices < q).
    #[inline]
    pub fn from_base(&self, c: u32) -> u32 {
        c % self.q
    }

    /// Quadratic character η of F_{q^j}.
    #[inline]
    pub fn eta(&self, a: u32) -> i64 {
        if a == 0 {
            0
        } else if self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// f(α) by Horner.
    pub fn eval(&self, f: &Poly, alpha: u32) -> u32 {
        f.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, alpha), self.from_base(c)))
    }

    /// Σ_{α ∈ F_{q^j}} η(f(α)).
    pub fn character_sum(&self, f: &Poly) -> i64 {
        (0..self.size as u32).map(|a| self.eta(self.eval(f, a))).sum()
    }
}

fn index_of(p: &Poly, q: u32) -> usize {
    p.coeffs()
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * q as usize + c as usize)
}

fn multiplicative_order(g: &Poly, m: &Poly, order: usize) -> usize {
    let mut cur = g.rem(m);
    let mut k = 1;
    while !cur.is_one() {
        cur = cur.mul(g).rem(m);
        k += 1;
        if k > order {
            break;
        }
    }
    k
}

/// Whether x generates (F_q[x]/m)^×.
fn generates(m: &Poly, q: u32, order: usize) -> bool {
    multiplicative_order(&Poly::monomial(q, 1, 1), m, order) == order
}
