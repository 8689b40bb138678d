use peres::analysis::{
    base_rate, compare_csv, compare_rows, e4_base_rate_formula, empirical_rate, entropy_bound,
    fixed_point_residual, rate_report, shannon_entropy, truncated_rate,
};
use peres::extractors::{dijkstra_base, elias};
use peres::tree::parse_tree;
use peres::verify::{check_extracting, class_multiset, golden_tables};
use peres::{
    builtin, builtin_names, BinarizationTree, Composition, Distribution, Error, Scheme,
    SymbolString,
};

fn bits(s: &str) -> SymbolString {
    SymbolString::parse(s, 2).unwrap()
}

fn run(name: &str, x: &str) -> String {
    let s = builtin(name).unwrap();
    let x = SymbolString::parse(x, s.source_alphabet()).unwrap();
    s.extract(&x).unwrap().to_string()
}

#[test]
fn extraction_examples() {
    assert_eq!(run("peres2", ""), "");
    assert_eq!(run("peres2", "100000"), "11");
    assert_eq!(run("peres2", "010000"), "01");
    assert_eq!(run("peres2", "1000001"), "11");
    assert_eq!(run("dijkstra3", "001"), "0");
    assert_eq!(run("dijkstra3", "100"), "2");
    assert_eq!(run("dijkstra3", "000"), "");
}

#[test]
fn truncation_examples() {
    let s = builtin("peres2").unwrap();
    let x = bits("100000");
    let at = |nu| s.extract_truncated(&x, nu).unwrap().to_string();
    assert_eq!(at(0), "");
    assert_eq!(at(1), "1");
    assert_eq!(at(3), "11");
    assert_eq!(at(64), s.extract(&x).unwrap().to_string());
}

#[test]
fn symbol_out_of_range_is_rejected() {
    let s = builtin("peres2").unwrap();
    let x = SymbolString::parse("0120", 3).unwrap();
    assert!(matches!(
        s.extract(&x),
        Err(Error::SymbolOutOfRange {
            symbol: 2,
            position: 2,
            alphabet: 2
        })
    ));
}

#[test]
fn base_function_examples() {
    let e = |n, x: &str| elias(n, &bits(x)).unwrap().to_string();
    assert_eq!(e(3, "001"), "0");
    assert_eq!(e(3, "010"), "1");
    assert_eq!(e(3, "100"), "");
    assert_eq!(e(4, "0000"), "");
    assert_eq!(e(4, "1111"), "");
    let k2: Vec<String> = ["0011", "0101", "0110", "1001", "1010", "1100"]
        .iter()
        .map(|x| e(4, x))
        .collect();
    assert_eq!(k2, ["00", "01", "10", "11", "0", "1"]);
    assert!(elias(25, &bits(&"0".repeat(25))).is_err());

    let d = |x: &str| dijkstra_base(3, &bits(x)).unwrap();
    assert_eq!(d("010"), Some(1));
    assert_eq!(d("100"), Some(2));
    assert_eq!(d("000"), None);
    assert!(matches!(
        dijkstra_base(4, &bits("0101")),
        Err(Error::NotPrime(4))
    ));
}

#[test]
fn builtin_cells() {
    let cell = |name: &str, k: usize, block: &str| {
        let s = builtin(name).unwrap();
        let t = s.tree();
        let b = SymbolString::parse(block, t.source_alphabet()).unwrap();
        t.table(k).get(t.block_index(b.symbols()))
    };
    // peres3face: u v w = components 0 1 2
    assert_eq!(cell("peres3face", 2, "12"), Some(0));
    assert_eq!(cell("peres3face", 2, "02"), Some(2));
    assert_eq!(cell("peres3face", 1, "22"), Some(2));
    // peres3bit: v2 = component 3
    assert_eq!(cell("peres3bit", 3, "100"), Some(0));
    assert_eq!(cell("peres3bit", 3, "110"), Some(1));
    let s = builtin("peres3bit").unwrap();
    assert!(s.base_digits(s.tree().block_index(&[1, 0, 0])).is_empty());
}

#[test]
fn golden() {
    let report = golden_tables().unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn unknown_scheme() {
    assert!(matches!(builtin("peres5"), Err(Error::UnknownScheme(_))));
}

#[test]
fn every_builtin_is_extracting_at_small_lengths() {
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        let max = match s.source_alphabet() {
            2 => 10,
            3 => 6,
            _ => 5,
        };
        let report = check_extracting(&s, max).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn dropping_a_stream_keeps_peres2_extracting() {
    let s = builtin("peres2").unwrap();
    for stream in 0..2 {
        let dropped = s.without_stream(stream).unwrap();
        assert_eq!(dropped.stream_components().len(), 1);
        let report = check_extracting(&dropped, 12).unwrap();
        assert!(report.passed(), "{report}");
    }
    let vn = s.without_stream(0).unwrap().without_stream(0).unwrap();
    let report = check_extracting(&vn, 6).unwrap();
    let totals: Vec<u64> = report
        .classes_of_length(6)
        .map(|c| c.output_digits)
        .collect();
    // k = 3: eight strings with three mixed pairs and twelve with one.
    assert_eq!(totals, [0, 6, 24, 36, 24, 6, 0]);
}

#[test]
fn von_neumann_class_images() {
    let s = builtin("peres2").unwrap();
    let vn = s.without_stream(0).unwrap().without_stream(0).unwrap();
    let image = |k: usize| {
        class_multiset(&vn, &Composition::new(vec![6 - k, k]))
            .unwrap()
            .summary(2)
    };
    assert_eq!(image(0), "1·{0,1}^0");
    assert_eq!(image(1), "3·{0,1}^1");
    assert_eq!(image(2), "3·{0,1}^0 + 3·{0,1}^2");
    assert_eq!(image(3), "6·{0,1}^1 + 1·{0,1}^3");
}

#[test]
fn identity_on_blocks_is_not_extracting() {
    // Every 2-bit block is emitted verbatim.
    let tree =
        BinarizationTree::new(parse_tree("(O (O (L 00) (L 01)) (O (L 10) (L 11)))").unwrap())
            .unwrap();
    let s = Scheme::new("identity", tree).unwrap();
    let report = check_extracting(&s, 4).unwrap();
    assert!(!report.passed());
    let bad = report.first_violation().unwrap();
    assert_eq!(bad.composition.total(), 2);
    assert!(report
        .lines()
        .iter()
        .any(|l| l.starts_with("COMPOSITION 1,1 FAIL")));
    assert!(report.lines()[0].starts_with("COMPOSITION 0,0 OK"));
}

#[test]
fn extracting_cap() {
    let s = builtin("peres2").unwrap();
    assert!(matches!(check_extracting(&s, 24), Err(Error::SizeLimit(_))));
}

#[test]
fn rate_examples() {
    let peres = builtin("peres2").unwrap();
    let third = Distribution::bernoulli(1.0 / 3.0).unwrap();
    assert_eq!(truncated_rate(&peres, &third, 0).unwrap(), 0.0);
    assert!((truncated_rate(&peres, &third, 1).unwrap() - 2.0 / 9.0).abs() < 1e-15);
    assert!((truncated_rate(&peres, &third, 2).unwrap() - 158.0 / 405.0).abs() < 1e-12);
    assert!((shannon_entropy(&third, 2) - 0.9183).abs() < 1e-3);

    let e4 = builtin("peres4bit_e4").unwrap();
    let bit3 = builtin("peres3bit").unwrap();
    for i in 1..100 {
        let p = i as f64 / 100.0;
        let d = Distribution::bernoulli(p).unwrap();
        let pq = p * (1.0 - p);
        assert!((base_rate(&bit3, &d).unwrap() - 2.0 * pq / 3.0).abs() < 1e-12);
        assert!((base_rate(&e4, &d).unwrap() - e4_base_rate_formula(p)).abs() < 1e-12);
    }
}

#[test]
fn fixed_point_examples() {
    let r = |name: &str, p: f64| {
        fixed_point_residual(
            &builtin(name).unwrap(),
            &Distribution::bernoulli(p).unwrap(),
        )
        .unwrap()
    };
    assert!(r("peres2", 0.3) < 1e-12);
    assert!(r("dijkstra3", 0.4) < 1e-12);
    assert!(r("dijkstra11_partial", 0.5) > 0.0);
}

#[test]
fn rates_are_monotone_and_bounded() {
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        let depth = if name.starts_with("dijkstra11") { 3 } else { 6 };
        let m = s.source_alphabet();
        for i in 1..10 {
            let p = i as f64 / 10.0;
            let mut probs = vec![(1.0 - p) / (m - 1) as f64; m];
            probs[0] = p;
            let d = Distribution::new(probs).unwrap();
            let report = rate_report(&s, &d, depth).unwrap();
            for w in report.rates.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "{name} at p = {p}");
            }
            let bound = entropy_bound(&s, &d).unwrap();
            assert!(
                report.rates.iter().all(|r| *r <= bound + 1e-9),
                "{name} at p = {p}"
            );
        }
    }
}

#[test]
fn empirical_rate_examples() {
    let s = builtin("peres2").unwrap();
    let fair = empirical_rate(&s, &Distribution::bernoulli(0.5).unwrap(), 1_000_000, 11).unwrap();
    assert!((0.95..=1.0).contains(&fair));
    let biased = Distribution::bernoulli(0.3).unwrap();
    let r = empirical_rate(&s, &biased, 1_000_000, 11).unwrap();
    assert!(r <= shannon_entropy(&biased, 2));
    assert_eq!(empirical_rate(&s, &biased, 0, 11).unwrap(), 0.0);
}

#[test]
fn compare_table() {
    let schemes = [builtin("peres2").unwrap(), builtin("peres4bit_e4").unwrap()];
    let grid: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
    let rows = compare_rows(&schemes, &grid, 4).unwrap();
    for &p in &grid {
        let value = |scheme: &str| {
            rows.iter()
                .find(|r| r.p == p && r.scheme == scheme && r.metric == "base_rate_formula")
                .map(|r| r.value)
                .unwrap()
        };
        assert!(value("peres2_unrolled") >= value("e4"));
    }
    let mut out = Vec::new();
    compare_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("p,scheme,metric,depth,value\n"));
    assert_eq!(text.lines().count(), rows.len() + 1);
}
