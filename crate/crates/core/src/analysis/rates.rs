use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::entropy::entropy_of;
use crate::alphabet::{
    class_probability, class_size, compositions, enumerate_class, Composition, Distribution,
    SymbolString,
};
use crate::error::{Error, Result};
use crate::extractors::Scheme;
use crate::tree::component_masses;

/// Cap on the number of recursion-tree evaluations in [`truncated_rate`].
pub const MAX_RECURSION_EVALUATIONS: u64 = 100_000_000;

/// Cap on `m^n` for exhaustive per-length computations.
pub const MAX_EXACT_STRINGS: u128 = 10_000_000;

/// One application of the rate operator's linear part at a distribution:
/// the base rate plus, per auxiliary stream, the expected number of stream
/// symbols per input symbol and the stream's symbol distribution.
struct Step {
    base: f64,
    streams: Vec<(f64, Distribution)>,
}

fn check_source(s: &Scheme, d: &Distribution) -> Result<()> {
    if d.len() != s.source_alphabet() {
        return Err(Error::DimensionMismatch {
            expected: s.source_alphabet(),
            actual: d.len(),
        });
    }
    Ok(())
}

fn step(s: &Scheme, d: &Distribution) -> Step {
    let tree = s.tree();
    let b = s.block_len() as f64;
    let masses = component_masses(tree, &d.block_probabilities(s.block_len()));
    let base = s
        .output_components()
        .iter()
        .map(|&k| masses[k].0 * tree.output_digits(k).unwrap_or(0) as f64)
        .sum::<f64>()
        / b;
    let streams = s
        .stream_components()
        .iter()
        .filter_map(|&k| {
            let (p, children) = &masses[k];
            (*p > 0.0).then(|| {
                let pi = children.iter().map(|c| c / p).collect();
                (
                    p / b,
                    Distribution::from_normalized(pi).padded(s.source_alphabet()),
                )
            })
        })
        .collect();
    Step { base, streams }
}

/// Expected base-part digits per input symbol: `(1/b) sum P(v) a(v)` over
/// output nodes `v` of degree `D^a(v)`.
pub fn base_rate(s: &Scheme, d: &Distribution) -> Result<f64> {
    check_source(s, d)?;
    Ok(step(s, d).base)
}

/// Per-symbol source entropy in base `D`, the bound on every rate.
pub fn entropy_bound(s: &Scheme, d: &Distribution) -> Result<f64> {
    check_source(s, d)?;
    Ok(entropy_of(d.probs(), s.output_alphabet() as f64))
}

/// Rate `r_ν` of the depth-`ν` truncated recursion, via
/// `r_ν(d) = r_1(d) + sum_i c_i r_{ν-1}(π(u_i))` with `r_0 = 0`, where `c_i`
/// is the expected number of `u_i` symbols per input symbol.
pub fn truncated_rate(s: &Scheme, d: &Distribution, depth: usize) -> Result<f64> {
    check_source(s, d)?;
    let fan_out = s.stream_components().len().max(1) as u64;
    let evaluations = (0..depth as u32).try_fold(1u64, |acc, _| acc.checked_mul(fan_out));
    if evaluations.is_none_or(|e| e > MAX_RECURSION_EVALUATIONS) {
        return Err(Error::SizeLimit(format!(
            "depth {depth} with {fan_out} streams exceeds {MAX_RECURSION_EVALUATIONS} evaluations"
        )));
    }
    Ok(truncated(s, d, depth))
}

fn truncated(s: &Scheme, d: &Distribution, depth: usize) -> f64 {
    if depth == 0 {
        return 0.0;
    }
    let step = step(s, d);
    step.base
        + step
            .streams
            .iter()
            .map(|(c, pi)| c * truncated(s, pi, depth - 1))
            .sum::<f64>()
}

/// `|T(H)(d) - H(d)|` where `T(f)(d) = r_1(d) + sum_i c_i f(π(u_i))` and `H`
/// is the per-symbol entropy in base `D`. Zero exactly when every internal
/// node is an output or recurse node.
pub fn fixed_point_residual(s: &Scheme, d: &Distribution) -> Result<f64> {
    check_source(s, d)?;
    let base = s.output_alphabet() as f64;
    let step = step(s, d);
    let transformed = step.base
        + step
            .streams
            .iter()
            .map(|(c, pi)| c * entropy_of(pi.probs(), base))
            .sum::<f64>();
    Ok((transformed - entropy_of(d.probs(), base)).abs())
}

/// Output digits summed over one equiprobable class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTotal {
    pub composition: Composition,
    pub size: u128,
    pub output_digits: u64,
}

fn check_exhaustive(m: usize, n: usize) -> Result<()> {
    let strings = (m as u128).checked_pow(n as u32);
    if strings.is_none_or(|s| s > MAX_EXACT_STRINGS) {
        return Err(Error::SizeLimit(format!(
            "{m}^{n} strings exceeds {MAX_EXACT_STRINGS}"
        )));
    }
    Ok(())
}

/// Total output length over every class of input length `n`, in the order
/// of [`compositions`].
pub fn class_output_totals(s: &Scheme, n: usize) -> Result<Vec<ClassTotal>> {
    let m = s.source_alphabet();
    check_exhaustive(m, n)?;
    let classes: Vec<Composition> = compositions(n, m).collect();
    classes
        .into_par_iter()
        .map(|composition| {
            let mut out = Vec::new();
            let mut output_digits = 0u64;
            for x in enumerate_class(&composition)? {
                out.clear();
                s.extract_into(x.symbols(), &mut out);
                output_digits += out.len() as u64;
            }
            Ok(ClassTotal {
                size: class_size(&composition)?,
                composition,
                output_digits,
            })
        })
        .collect()
}

/// `E|Ψ(x)| / n` for `x` of length `n`, exact up to floating point.
pub fn exact_rate(s: &Scheme, d: &Distribution, n: usize) -> Result<f64> {
    check_source(s, d)?;
    if n == 0 {
        return Ok(0.0);
    }
    let expected: f64 = class_output_totals(s, n)?
        .iter()
        .map(|t| class_probability(&t.composition, d) * t.output_digits as f64)
        .sum();
    Ok(expected / n as f64)
}

/// `len` i.i.d. symbols from `d`, reproducible from `seed`.
pub fn sample_source(d: &Distribution, len: usize, seed: u64) -> Result<SymbolString> {
    let sampler =
        WeightedIndex::new(d.probs()).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = (0..len).map(|_| sampler.sample(&mut rng) as u8).collect();
    SymbolString::new(d.len(), symbols)
}

/// Output digits per input symbol on one pseudorandom input of `samples`
/// symbols.
pub fn empirical_rate(s: &Scheme, d: &Distribution, samples: usize, seed: u64) -> Result<f64> {
    check_source(s, d)?;
    if samples == 0 {
        return Ok(0.0);
    }
    let x = sample_source(d, samples, seed)?;
    Ok(s.extract(&x)?.len() as f64 / samples as f64)
}

/// Truncated rates `r_0..=r_depth` with the entropy bound and fixed-point
/// residual for one scheme and source.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub scheme: String,
    pub distribution: Distribution,
    pub rates: Vec<f64>,
    pub entropy_bound: f64,
    pub residual: f64,
}

pub fn rate_report(s: &Scheme, d: &Distribution, depth: usize) -> Result<RateReport> {
    truncated_rate(s, d, depth)?;
    Ok(RateReport {
        scheme: s.name().to_string(),
        distribution: d.clone(),
        rates: (0..=depth).map(|nu| truncated(s, d, nu)).collect(),
        entropy_bound: entropy_bound(s, d)?,
        residual: fixed_point_residual(s, d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractors::builtin;

    #[test]
    fn peres2_rates() {
        let s = builtin("peres2").unwrap();
        let p = 1.0 / 3.0;
        let d = Distribution::bernoulli(p).unwrap();
        assert_eq!(truncated_rate(&s, &d, 0).unwrap(), 0.0);
        assert!((truncated_rate(&s, &d, 1).unwrap() - p * (1.0 - p)).abs() < 1e-15);
        assert!((truncated_rate(&s, &d, 2).unwrap() - 158.0 / 405.0).abs() < 1e-12);
    }

    #[test]
    fn depth_cap() {
        let s = builtin("dijkstra5").unwrap();
        let d = Distribution::bernoulli(0.4).unwrap();
        assert!(matches!(
            truncated_rate(&s, &d, 10),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn exact_rate_at_block_length_is_base_rate() {
        let s = builtin("peres2").unwrap();
        let d = Distribution::bernoulli(0.2).unwrap();
        assert!((exact_rate(&s, &d, 2).unwrap() - 0.16).abs() < 1e-15);
        assert_eq!(exact_rate(&s, &d, 1).unwrap(), 0.0);
        assert_eq!(exact_rate(&s, &d, 0).unwrap(), 0.0);
    }

    #[test]
    fn empirical_rate_is_deterministic() {
        let s = builtin("peres2").unwrap();
        let d = Distribution::bernoulli(0.3).unwrap();
        let a = empirical_rate(&s, &d, 10_000, 7).unwrap();
        let b = empirical_rate(&s, &d, 10_000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(empirical_rate(&s, &d, 0, 7).unwrap(), 0.0);
    }
}
