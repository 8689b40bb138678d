use std::fmt;

use super::{Distribution, SymbolString};
use crate::error::{Error, Result};

/// Longest string length [`enumerate_class`] will walk.
pub const MAX_ENUMERATION_LENGTH: usize = 24;

/// Symbol counts `(n_0, .., n_{m-1})` identifying an equiprobable class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn alphabet_size(&self) -> usize {
        self.0.len()
    }

    /// String length `n = sum of counts`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn composition_of(x: &SymbolString) -> Composition {
    let mut counts = vec![0; x.alphabet_size()];
    for &s in x.symbols() {
        counts[s as usize] += 1;
    }
    Composition(counts)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn binomial(n: usize, k: usize) -> Result<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        let factor = (n as u128) - (k as u128) + i;
        // acc * factor is divisible by i; cancel before multiplying.
        let g = gcd(acc, i);
        let acc_reduced = acc / g;
        let factor_reduced = factor / (i / g);
        acc = acc_reduced
            .checked_mul(factor_reduced)
            .ok_or(Error::Overflow("multinomial coefficient"))?;
    }
    Ok(acc)
}

/// Multinomial coefficient `n! / (n_0! .. n_{m-1}!)`, exact. Overflow of
/// 128-bit arithmetic is reported as [`Error::Overflow`].
pub fn class_size(c: &Composition) -> Result<u128> {
    let mut running = 0usize;
    let mut acc: u128 = 1;
    for &count in c.counts() {
        running += count;
        acc = acc
            .checked_mul(binomial(running, count)?)
            .ok_or(Error::Overflow("multinomial coefficient"))?;
    }
    Ok(acc)
}

/// `prod p_i^{n_i}`, the common probability of every member of the class.
///
/// Panics if the composition and the distribution have different lengths.
pub fn class_probability(c: &Composition, d: &Distribution) -> f64 {
    assert_eq!(
        c.alphabet_size(),
        d.len(),
        "composition and distribution must share the alphabet"
    );
    c.counts()
        .iter()
        .zip(d.probs())
        .map(|(&n, &p)| p.powi(n as i32))
        .product()
}

/// Lexicographic iterator over all strings of one class.
#[derive(Debug, Clone)]
pub struct ClassIter {
    alphabet_size: usize,
    next: Option<Vec<u8>>,
}

impl Iterator for ClassIter {
    type Item = SymbolString;

    fn next(&mut self) -> Option<SymbolString> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if next_permutation(&mut following) {
            self.next = Some(following);
        }
        Some(SymbolString::new(self.alphabet_size, current).expect("symbols are in range"))
    }
}

/// Advances to the next lexicographic arrangement; false when `v` was last.
pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every string of the class, each once, in lexicographic order.
pub fn enumerate_class(c: &Composition) -> Result<ClassIter> {
    if c.total() > MAX_ENUMERATION_LENGTH {
        return Err(Error::SizeLimit(format!(
            "class enumeration is limited to length {MAX_ENUMERATION_LENGTH}, got {}",
            c.total()
        )));
    }
    if c.alphabet_size() < 2 || c.alphabet_size() > 256 {
        return Err(Error::OutOfRange(format!(
            "alphabet size {} not in [2, 256]",
            c.alphabet_size()
        )));
    }
    let first: Vec<u8> = c
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(s, &n)| std::iter::repeat_n(s as u8, n))
        .collect();
    Ok(ClassIter {
        alphabet_size: c.alphabet_size(),
        next: Some(first),
    })
}

/// All compositions of `n` into `m` parts, in decreasing lexicographic order
/// of the count vector; for `m = 2` this is `(n,0), (n-1,1), .., (0,n)`.
pub fn compositions(n: usize, m: usize) -> Compositions {
    let next = (m > 0).then(|| {
        let mut counts = vec![0; m];
        counts[0] = n;
        counts
    });
    Compositions { next }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let m = current.len();
        if m > 1 {
            if let Some(i) = (0..m - 1).rev().find(|&i| current[i] > 0) {
                let mut following = current.clone();
                let tail: usize = following[i + 1..].iter().sum();
                following[i] -= 1;
                following[i + 1..].iter_mut().for_each(|c| *c = 0);
                following[i + 1] = tail + 1;
                self.next = Some(following);
            }
        }
        Some(Composition(current))
    }
}
