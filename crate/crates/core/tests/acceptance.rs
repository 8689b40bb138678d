//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Two criteria expect values that contradict other data of the same
//! criterion; those are reported as FAIL together with the value actually
//! obtained and do not fail the run. Any other failure does.

use std::time::{Duration, Instant};

use peres::analysis::{
    base_rate, chi_square_uniformity, e4_base_rate_formula, entropy_bound, fixed_point_residual,
    psi_squared_base_rate_formula, sample_source, shannon_entropy, truncated_rate,
};
use peres::extractors::rotation_orbits;
use peres::tree::{apply_component, leaf_entropy_sum, merge_by_branch, parse_tree, restriction};
use peres::verify::{check_extracting, golden_tables};
use peres::{builtin, builtin_names, BinarizationTree, Distribution, Scheme, SymbolString};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose expected value is internally inconsistent.
const KNOWN_DISCREPANCIES: [usize; 2] = [1, 10];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid() -> impl Iterator<Item = f64> {
    (1..100).map(|i| i as f64 / 100.0)
}

fn bernoulli(p: f64) -> Distribution {
    Distribution::bernoulli(p).unwrap()
}

fn h2(p: f64) -> f64 {
    shannon_entropy(&bernoulli(p), 2)
}

/// `⟨p, rest⟩` with the remaining mass spread unevenly over the other symbols.
fn skewed(p: f64, m: usize) -> Distribution {
    if m == 2 {
        return bernoulli(p);
    }
    let weights: f64 = (1..m).map(|i| i as f64).sum();
    let mut probs = vec![p];
    probs.extend((1..m).map(|i| (1.0 - p) * i as f64 / weights));
    Distribution::new(probs).unwrap()
}

fn von_neumann_scheme() -> Scheme {
    let s = builtin("peres2").unwrap();
    s.without_stream(0).unwrap().without_stream(0).unwrap()
}

fn totals(s: &Scheme, n: usize) -> (Vec<u64>, bool) {
    let report = check_extracting(s, n).unwrap();
    let totals = report
        .classes_of_length(n)
        .map(|c| c.output_digits)
        .collect();
    (totals, report.passed())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (got, extracting) = totals(&von_neumann_scheme(), 6);
    let elapsed = start.elapsed();
    let expected = [0, 6, 24, 28, 24, 6, 0];
    outcome(
        got == expected && extracting && elapsed < Duration::from_secs(1),
        format!(
            "von Neumann bits per class {got:?}, expected {expected:?}; \
             the expected k=3 multiset 6·{{0,1}} + {{0,1}}^3 itself carries 36 bits; \
             extracting={extracting}; {elapsed:.2?}"
        ),
    )
}

fn criterion_2() -> Outcome {
    let (got, extracting) = totals(&builtin("peres2").unwrap(), 6);
    outcome(
        got == [0, 10, 34, 56, 34, 10, 0] && extracting,
        format!("Peres bits per class {got:?}; every class image extracting={extracting}"),
    )
}

fn criterion_3() -> Outcome {
    let caps = [
        ("peres2", 14),
        ("peres3bit", 12),
        ("peres4bit_e4", 12),
        ("dijkstra3", 12),
        ("dijkstra5", 15),
        ("dijkstra11_partial", 22),
        ("peres3face", 8),
        ("peres4face", 6),
        ("peres4face_alt", 6),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut classes = 0;
    for (name, cap) in caps {
        let report = check_extracting(&builtin(name).unwrap(), cap).unwrap();
        classes += report.classes.len();
        if !report.passed() {
            failures.push(report.to_string());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{classes} classes over 9 schemes in {elapsed:.1?} {}",
            failures.join(" ")
        ),
    )
}

fn criterion_4() -> Outcome {
    let report = golden_tables().unwrap();
    outcome(
        report.passed(),
        format!(
            "{} tables, {} cells [{}]",
            report.tables.len(),
            report.cells(),
            report.to_string().trim().replace('\n', ", ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for name in builtin_names() {
        let tree = builtin(name).unwrap().tree().clone();
        for _ in 0..100 {
            let raw: Vec<f64> = (0..tree.block_alphabet())
                .map(|_| rng.random_range(0.01..1.0))
                .collect();
            let sum: f64 = raw.iter().sum();
            let d = Distribution::new(raw.into_iter().map(|p| p / sum).collect()).unwrap();
            let gap = (leaf_entropy_sum(&tree, &d).unwrap() - shannon_entropy(&d, 2)).abs();
            worst = worst.max(gap);
        }
    }
    outcome(
        worst < 1e-9,
        format!("max gap {worst:.3e} over 100 distributions x 9 trees"),
    )
}

fn criterion_6() -> Outcome {
    let mut worst_identity: f64 = 0.0;
    for p in grid() {
        let q = 1.0 - p;
        let s = p * p + q * q;
        let rhs = p * q + 0.5 * h2(s) + 0.5 * s * h2(p * p / s);
        worst_identity = worst_identity.max((h2(p) - rhs).abs());
    }
    let optimal = [
        "peres2",
        "peres3face",
        "peres4face",
        "peres3bit",
        "peres4bit_e4",
        "dijkstra3",
        "dijkstra5",
    ];
    let mut worst: f64 = 0.0;
    for name in optimal {
        let s = builtin(name).unwrap();
        for p in grid() {
            let r = fixed_point_residual(&s, &skewed(p, s.source_alphabet())).unwrap();
            worst = worst.max(r);
        }
    }
    let partial = builtin("dijkstra11_partial").unwrap();
    let gap = grid()
        .map(|p| fixed_point_residual(&partial, &bernoulli(p)).unwrap())
        .fold(0.0, f64::max);
    outcome(
        worst_identity < 1e-12 && worst < 1e-12 && gap > 1e-3,
        format!(
            "identity {worst_identity:.2e}; generalized max {worst:.2e}; dijkstra11_partial max {gap:.4}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let s = builtin("peres2").unwrap();
    let r0 = grid().all(|p| truncated_rate(&s, &bernoulli(p), 0).unwrap() == 0.0);
    let r1 = grid()
        .all(|p| (truncated_rate(&s, &bernoulli(p), 1).unwrap() - p * (1.0 - p)).abs() < 1e-15);
    let r2 = truncated_rate(&s, &bernoulli(1.0 / 3.0), 2).unwrap();
    let r2_ok = (r2 - 158.0 / 405.0).abs() < 1e-12;
    let mut monotone = true;
    let mut bounded = true;
    for p in [0.1, 0.3, 0.5] {
        let d = bernoulli(p);
        let bound = entropy_bound(&s, &d).unwrap();
        let rates: Vec<f64> = (0..=10)
            .map(|nu| truncated_rate(&s, &d, nu).unwrap())
            .collect();
        monotone &= rates.windows(2).all(|w| w[1] >= w[0]);
        bounded &= rates.iter().all(|&r| r <= bound);
    }
    outcome(
        r0 && r1 && r2_ok && monotone && bounded,
        format!("r0=0 {r0}, r1=pq {r1}, r2(1/3)={r2:.12}, monotone {monotone}, bounded {bounded}"),
    )
}

fn criterion_8() -> Outcome {
    let bit3 = builtin("peres3bit").unwrap();
    let e4 = builtin("peres4bit_e4").unwrap();
    let mut worst3: f64 = 0.0;
    let mut worst4: f64 = 0.0;
    let mut min = (f64::INFINITY, 0.0);
    for p in grid() {
        let pq = p * (1.0 - p);
        worst3 = worst3.max((base_rate(&bit3, &bernoulli(p)).unwrap() - 2.0 * pq / 3.0).abs());
        let r = base_rate(&e4, &bernoulli(p)).unwrap();
        worst4 = worst4.max((r - e4_base_rate_formula(p)).abs());
        if r / pq < min.0 {
            min = (r / pq, p);
        }
    }
    outcome(
        worst3 < 1e-12 && worst4 < 1e-12 && (min.0 - 1.625).abs() < 1e-9 && min.1 == 0.5,
        format!(
            "3-bit error {worst3:.1e}, E4 error {worst4:.1e}, min rate/pq {:.12} at p={} (a 1.65 bound is not reached)",
            min.0, min.1
        ),
    )
}

fn criterion_9() -> Outcome {
    let peres = builtin("peres2").unwrap();
    let mut dominates = true;
    let mut agree: f64 = 0.0;
    for p in grid() {
        let psi2 = psi_squared_base_rate_formula(p);
        dominates &= psi2 >= e4_base_rate_formula(p);
        agree = agree.max((psi2 - truncated_rate(&peres, &bernoulli(p), 2).unwrap()).abs());
    }
    outcome(
        dominates && agree < 1e-12,
        format!("Ψ² >= E4 everywhere {dominates}; Ψ² formula vs depth-2 rate {agree:.1e}"),
    )
}

const TEN_LEAF: &str =
    "(R (R (L 2) (L 5)) (L 6) (R (R (L 1) (R (L 4) (L 0) (L 8) (L 9))) (L 7) (L 3)))";

fn criterion_10() -> Outcome {
    let tree = BinarizationTree::new(parse_tree(TEN_LEAF).unwrap()).unwrap();
    let dec = |s: &str| SymbolString::parse(s, 10).unwrap();
    let x = dec("207643590289787");
    let phi3 = apply_component(tree.table(2), &x).unwrap().to_string();
    let parts: Vec<String> = restriction(&tree, 2, &x)
        .unwrap()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let parts_given: Vec<Vec<u8>> = ["0490898", "777", "3"]
        .iter()
        .map(|s| dec(s).into_symbols())
        .collect();
    let merged = merge_by_branch(dec("01020000101").symbols(), &parts_given).unwrap();
    let merged = SymbolString::new(10, merged).unwrap().to_string();
    let restricted = tree.subtree_string(2, &x).unwrap().to_string();
    outcome(
        phi3 == "01020000101" && parts == ["0490898", "777", "3"] && merged == "07439890787",
        format!(
            "Φ3={phi3}; restrictions {parts:?}; reconstruction {merged}, expected 07439890787; \
             the restriction of x itself is {restricted}"
        ),
    )
}

fn criterion_11() -> Outcome {
    let counts: Vec<usize> = [3, 5, 7, 11]
        .iter()
        .map(|&m| rotation_orbits(m).unwrap().len())
        .collect();
    outcome(counts == [2, 6, 18, 186], format!("orbits {counts:?}"))
}

fn criterion_12() -> Outcome {
    let s = builtin("peres2").unwrap();
    let d = bernoulli(0.3);
    let n = 1_000_000;
    let x = sample_source(&d, n, 20260101).unwrap();
    let out = s.extract(&x).unwrap();
    let rate = out.len() as f64 / n as f64;
    let bound = h2(0.3) + 0.01;
    let chi = chi_square_uniformity(out.symbols(), 2, 8).unwrap();
    outcome(
        rate <= bound && chi.p_value > 0.001,
        format!(
            "rate {rate:.4} <= {bound:.4}; chi-square {:.1} on {} bytes, p-value {:.3}",
            chi.statistic, chi.samples, chi.p_value
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("von Neumann class totals", criterion_1),
        ("Peres class totals", criterion_2),
        ("exhaustive extraction", criterion_3),
        ("golden tables", criterion_4),
        ("leaf entropy", criterion_5),
        ("fixed point", criterion_6),
        ("rate recursion", criterion_7),
        ("base-rate formulas", criterion_8),
        ("Ψ² versus E4", criterion_9),
        ("structure worked example", criterion_10),
        ("rotation orbits", criterion_11),
        ("empirical sanity", criterion_12),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {n:>2} ({name}): {}", o.detail);
        if o.pass {
            passed += 1;
        } else if !KNOWN_DISCREPANCIES.contains(&n) {
            unexpected.push(n);
        }
    }
    println!("{passed}/12 criteria pass");
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
