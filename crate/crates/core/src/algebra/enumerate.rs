use std::ops::Range;

use super::factor::is_squarefree;
use super::poly::Poly;

/// The monic polynomial of degree n whose lower coefficients are the base-q
/// digits of `index` (constant term fastest).
pub fn monic_from_index(q: u32, n: usize, mut index: u64) -> Poly {
    let mut coeffs = Vec::with_capacity(n + 1);
    for _ in 0..n {
        coeffs.push((index % q as u64) as u32);
        index /= q as u64;
    }
    coeffs.push(1);
    Poly::from_coeffs(q, coeffs)
}

pub fn monic_count(q: u32, n: usize) -> u64 {
    (q as u64).pow(n as u32)
}

/// Odometer over the monic polynomials of a fixed degree, restricted to an index range.
#[derive(Debug, Clone)]
pub struct MonicIter {
    q: u32,
    n: usize,
    range: Range<u64>,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        let i = self.range.next()?;
        Some(monic_from_index(self.q, self.n, i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for MonicIter {}

pub fn monic_polys(q: u32, n: usize) -> MonicIter {
    monic_range(q, n, 0..monic_count(q, n))
}

/// Re-creatable slice of the enumeration, for partitioning work.
pub fn monic_range(q: u32, n: usize, range: Range<u64>) -> MonicIter {
    let end = range.end.min(monic_count(q, n));
    MonicIter {
        q,
        n,
        range: range.start.min(end)..end,
    }
}

/// Monic square-free polynomials of degree n (the ensemble H_n).
pub fn ensemble(q: u32, n: usize) -> impl Iterator<Item = Poly> {
    ensemble_range(q, n, 0..monic_count(q, n))
}

pub fn ensemble_range(q: u32, n: usize, range: Range<u64>) -> impl Iterator<Item = Poly> {
    monic_range(q, n, range).filter(|f| is_squarefree(f).expect("monic is nonzero"))
}

/// |H_n| = (q−1)q^{n−1} for n ≥ 2 (and q for n = 1, 1 for n = 0).
pub fn ensemble_size(q: u32, n: usize) -> u64 {
    match n {
        0 => 1,
        1 => q as u64,
        _ => (q as u64 - 1) * (q as u64).pow(n as u32 - 1),
    }
}

/// Every monic polynomial of degree ≤ n_max, ascending degree.
pub fn monic_up_to(q: u32, n_max: usize) -> impl Iterator<Item = Poly> {
    (0..=n_max).flat_map(move |n| monic_polys(q, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(monic_polys(5, 0).collect::<Vec<_>>(), vec![Poly::one(5)]);
        assert_eq!(monic_polys(5, 2).count(), 25);
        let cubics: HashSet<_> = monic_polys(5, 3).collect();
        assert_eq!(cubics.len(), 125);
        assert_eq!(ensemble(5, 2).count(), 20);
        assert_eq!(ensemble(5, 4).count(), 500);
        assert_eq!(ensemble(5, 6).count(), 12_500);
    }

    #[test]
    fn ranges_partition() {
        let all: Vec<_> = monic_polys(5, 3).collect();
        let mut parts: Vec<_> = monic_range(5, 3, 0..40).collect();
        parts.extend(monic_range(5, 3, 40..1000));
        assert_eq!(all, parts);
        assert_eq!(all[1].coeffs(), &[1, 0, 0, 1]);
    }
}
