//! Block-level extracting functions: von Neumann's pair rule, Elias's
//! fixed-length code within each equiprobable class, and Dijkstra's rotation
//! count for prime block lengths.

use crate::alphabet::SymbolString;
use crate::error::{Error, Result};

fn require_binary(x: &SymbolString) -> Result<()> {
    if let Some((position, &s)) = x.symbols().iter().enumerate().find(|(_, &s)| s > 1) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as usize,
            position,
            alphabet: 2,
        });
    }
    Ok(())
}

/// `00 -> λ, 01 -> 0, 10 -> 1, 11 -> λ` applied pairwise; a trailing odd bit
/// is dropped.
pub fn von_neumann(x: &SymbolString) -> Result<SymbolString> {
    require_binary(x)?;
    let bits = x
        .symbols()
        .chunks_exact(2)
        .filter(|pair| pair[0] != pair[1])
        .map(|pair| pair[0])
        .collect();
    SymbolString::new(2, bits)
}

/// Largest input length accepted by [`elias`].
pub const MAX_ELIAS_LENGTH: usize = 24;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Lexicographic rank of a bit string among strings of the same weight.
pub(crate) fn weight_rank(bits: &[u8]) -> u64 {
    let n = bits.len();
    let mut ones = bits.iter().filter(|&&b| b == 1).count();
    let mut rank = 0;
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            rank += binomial(n - i - 1, ones);
            ones -= 1;
        }
    }
    rank
}

/// Elias's extracting function `E_n` on a single `n`-bit input.
///
/// Within the class of `x`, listed lexicographically, write the class size
/// as `sum 2^{a_i}` with `a_1 > a_2 > ..`. The first `2^{a_1}` members map to
/// all `a_1`-bit strings in order, the next `2^{a_2}` to all `a_2`-bit
/// strings, and so on; the member covered by `2^0` maps to λ.
pub fn elias(n: usize, x: &SymbolString) -> Result<SymbolString> {
    if !(2..=MAX_ELIAS_LENGTH).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "Elias input length {n} not in [2, {MAX_ELIAS_LENGTH}]"
        )));
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    require_binary(x)?;
    let bits = x.symbols();
    let ones = bits.iter().filter(|&&b| b == 1).count();
    let size = binomial(n, ones);
    let mut rank = weight_rank(bits);
    for a in (0..u64::BITS - size.leading_zeros()).rev() {
        if size >> a & 1 == 0 {
            continue;
        }
        let span = 1u64 << a;
        if rank < span {
            let code = (0..a).rev().map(|i| (rank >> i & 1) as u8).collect();
            return SymbolString::new(2, code);
        }
        rank -= span;
    }
    unreachable!("rank is below the class size")
}

pub fn is_prime(m: usize) -> bool {
    m >= 2
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(s: &[u8]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut failure = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = failure[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

/// Number of right cyclic shifts (last symbol moved to the front) that take
/// `bits` to the least member of its rotation orbit.
pub(crate) fn right_shifts_to_minimum(bits: &[u8]) -> usize {
    let n = bits.len();
    (n - least_rotation(bits)) % n
}

/// Dijkstra's roulette on one block of `m` coin flips, `m` prime: λ (`None`)
/// for the two constant blocks, otherwise the number of right cyclic shifts
/// reaching the orbit's lexicographic minimum, a value in `0..m`.
pub fn dijkstra_base(m: usize, x: &SymbolString) -> Result<Option<u8>> {
    if !is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    if x.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: x.len(),
        });
    }
    require_binary(x)?;
    let bits = x.symbols();
    if bits.iter().all(|&b| b == bits[0]) {
        return Ok(None);
    }
    Ok(Some(right_shifts_to_minimum(bits) as u8))
}

/// Lexicographically least representatives of the rotation orbits of the
/// non-constant binary strings of length `m`, in increasing order.
pub fn rotation_orbits(m: usize) -> Result<Vec<Vec<u8>>> {
    if !(2..=24).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "orbit length {m} not in [2, 24]"
        )));
    }
    let mut reps = Vec::new();
    for value in 1..(1u32 << m) - 1 {
        let bits: Vec<u8> = (0..m).rev().map(|i| (value >> i & 1) as u8).collect();
        if least_rotation(&bits) == 0 {
            reps.push(bits);
        }
    }
    Ok(reps)
}

/// `bits` rotated left by `k` positions.
pub(crate) fn rotate_left(bits: &[u8], k: usize) -> Vec<u8> {
    let mut out = bits.to_vec();
    out.rotate_left(k % bits.len().max(1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SymbolString {
        SymbolString::parse(text, 2).unwrap()
    }

    #[test]
    fn von_neumann_examples() {
        assert_eq!(von_neumann(&s("01")).unwrap().to_string(), "0");
        assert_eq!(von_neumann(&s("0110")).unwrap().to_string(), "01");
        assert_eq!(von_neumann(&s("011")).unwrap().to_string(), "0");
        assert_eq!(von_neumann(&s("0011")).unwrap().to_string(), "");
        assert!(von_neumann(&SymbolString::parse("012", 3).unwrap()).is_err());
    }

    #[test]
    fn elias_examples() {
        let e = |x: &str| elias(x.len(), &s(x)).unwrap().to_string();
        assert_eq!(e("001"), "0");
        assert_eq!(e("010"), "1");
        assert_eq!(e("100"), "");
        assert_eq!(e("0000"), "");
        assert_eq!(e("1111"), "");
        let k2: Vec<String> = ["0011", "0101", "0110", "1001", "1010", "1100"]
            .iter()
            .map(|x| e(x))
            .collect();
        assert_eq!(k2, ["00", "01", "10", "11", "0", "1"]);
        assert!(elias(1, &s("0")).is_err());
        assert!(elias(25, &SymbolString::new(2, vec![0; 25]).unwrap()).is_err());
    }

    #[test]
    fn weight_rank_is_lexicographic() {
        assert_eq!(weight_rank(&[0, 0, 1, 1]), 0);
        assert_eq!(weight_rank(&[1, 1, 0, 0]), 5);
        assert_eq!(weight_rank(&[1, 0, 0, 0]), 3);
    }

    #[test]
    fn dijkstra_examples() {
        assert_eq!(dijkstra_base(3, &s("010")).unwrap(), Some(1));
        assert_eq!(dijkstra_base(3, &s("100")).unwrap(), Some(2));
        assert_eq!(dijkstra_base(3, &s("000")).unwrap(), None);
        assert_eq!(dijkstra_base(3, &s("111")).unwrap(), None);
        assert_eq!(dijkstra_base(3, &s("001")).unwrap(), Some(0));
        assert_eq!(dijkstra_base(3, &s("110")).unwrap(), Some(1));
        assert_eq!(dijkstra_base(3, &s("101")).unwrap(), Some(2));
        assert_eq!(dijkstra_base(4, &s("0001")), Err(Error::NotPrime(4)));
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        for n in 1..=10usize {
            for v in 0..1u32 << n {
                let bits: Vec<u8> = (0..n).rev().map(|i| (v >> i & 1) as u8).collect();
                let brute = (0..n).map(|k| rotate_left(&bits, k)).min().unwrap();
                assert_eq!(rotate_left(&bits, least_rotation(&bits)), brute, "{bits:?}");
            }
        }
    }

    #[test]
    fn orbit_counts() {
        let counts: Vec<usize> = [3, 5, 7, 11]
            .iter()
            .map(|&m| rotation_orbits(m).unwrap().len())
            .collect();
        assert_eq!(counts, [2, 6, 18, 186]);
    }
}
