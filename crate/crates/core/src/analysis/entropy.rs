use crate::alphabet::Distribution;

/// `-sum p log_base p` with `0 log 0 = 0`.
pub(crate) fn entropy_of(probs: &[f64], base: f64) -> f64 {
    let ln_base = base.ln();
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln() / ln_base)
        .sum::<f64>()
}

/// Shannon entropy of `d` in the given base (`2` for bits, `m` for `H_m`).
pub fn shannon_entropy(d: &Distribution, base: usize) -> f64 {
    assert!(base >= 2, "entropy base must be at least 2");
    entropy_of(d.probs(), base as f64)
}
