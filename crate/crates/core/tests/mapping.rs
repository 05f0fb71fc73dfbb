use mdmap::fixtures::{fixture, fixture_text, FIXTURES};
use mdmap::mapping::{
    check_propositions, hamming_distance, load_mapping, parse_mapping_file, serialize_mapping_file,
    FullMapping2D, HalfMapping2D, MdParts,
};
use mdmap::{Constellation, Error, Label, MdMapping, Parity, VectorLabeling};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn odd_twelve_bit_label_maps_to_s16_s14_s12() {
    let mapping = fixture("16qam_4d").unwrap().with_n(3).unwrap();
    let label = Label::from_bits(&[0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1]).unwrap();
    assert_eq!(label.weight(), 9);
    assert_eq!(mapping.map_label(label).unwrap(), vec![15, 13, 11]);
}

#[test]
fn single_flip_switches_family_everywhere() {
    let mapping = fixture("16qam_4d").unwrap().with_n(3).unwrap();
    let label = Label::from_bits(&[0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1]).unwrap();
    for i in 0..12 {
        let flipped = label.flip(i);
        assert_ne!(flipped.parity(), label.parity());
        let symbols = mapping.map_label(flipped).unwrap();
        let m = mapping.m();
        let first = flipped.chunk(m, 0) as usize;
        // an even label uses the even half mapping and full mapping
        assert_eq!(symbols[0], mapping.lambda_el().symbol(first));
        for (j, &s) in symbols.iter().enumerate().skip(1) {
            assert_eq!(
                s,
                mapping
                    .lambda_er()
                    .symbol(flipped.chunk(m, j as u32) as usize)
            );
        }
    }
}

#[test]
fn label_bits_are_msb_first() {
    let l = Label::new(0b1011, 4).unwrap();
    assert_eq!(l.bits(), vec![1, 0, 1, 1]);
    assert_eq!(l.flip(0).value(), 0b0011);
    assert_eq!(l.chunk(2, 0), 0b10);
    assert_eq!(l.chunk(2, 1), 0b11);
    assert!(Label::new(16, 4).is_err());
    assert!(matches!(
        hamming_distance(l, Label::new(1, 5).unwrap()),
        Err(Error::WidthMismatch { .. })
    ));
}

#[test]
fn published_tables_read_as_printed() {
    let psk = fixture("8psk_4d").unwrap();
    assert_eq!(psk.lambda_er().labels(), &[2, 7, 6, 5, 4, 1, 0, 3]);
    assert_eq!(psk.lambda_or().labels(), &[4, 1, 0, 3, 2, 7, 6, 5]);
    let qam32 = fixture("32qam_4d").unwrap();
    assert_eq!(qam32.lambda_er().label(0), 24);
    let qam16 = fixture("16qam_4d").unwrap();
    assert_eq!(qam16.chi_el(), &[0, 1, 4, 5, 8, 9, 12, 13]);
}

#[test]
fn fixtures_round_trip_byte_identical() {
    for (name, text) in FIXTURES {
        let parts = parse_mapping_file(text).unwrap();
        let out = serialize_mapping_file(&parts);
        assert_eq!(&out, text, "{name}");
        assert_eq!(parse_mapping_file(&out).unwrap(), parts);
    }
}

#[test]
fn enumeration_counts() {
    let m2 = fixture("16qam_4d").unwrap();
    assert_eq!(m2.enumerate_pairs().unwrap().count(), 256);
    let m3 = fixture("8psk_4d").unwrap().with_n(3).unwrap();
    assert_eq!(m3.enumerate_pairs().unwrap().count(), 512);
    let big = fixture("1024qam_4d").unwrap().with_n(3).unwrap();
    assert!(matches!(
        big.enumerate_pairs().err(),
        Some(Error::Guard { .. })
    ));
}

#[test]
fn vectors_are_distinct_and_demap_back() {
    for name in ["8psk_4d", "opt8qam_4d", "16qam_4d", "32qam_4d", "64qam_4d"] {
        let mapping = fixture(name).unwrap();
        let mut seen = std::collections::HashSet::new();
        for (label, symbols) in mapping.enumerate_pairs().unwrap() {
            assert!(seen.insert(symbols.clone()), "{name}: duplicate vector");
            assert_eq!(mapping.demap(&symbols), Some(label));
        }
    }
}

#[test]
fn broken_pair_is_reported_with_line() {
    let text = fixture_text("8psk_4d")
        .unwrap()
        .replace("(1,5) (0,4) (3,7)\n", "(1,4) (0,5) (3,7)\n");
    let err = parse_mapping_file(&text).unwrap_err().to_string();
    assert!(err.contains("lambda_el pair"), "{err}");
    assert!(err.contains("line 7"), "{err}");
}

#[test]
fn malformed_files_fail_to_parse() {
    let good = fixture_text("16qam_4d").unwrap();
    let cases = [
        good.replace("m=4", "m=x"),
        good.replace("lambda_or:", "lambda_xx:"),
        good.lines()
            .filter(|l| !l.starts_with("chi_el"))
            .collect::<Vec<_>>()
            .join("\n"),
        good.replacen("lambda_er: ", "lambda_er: 99 ", 1),
    ];
    for text in cases {
        assert!(load_mapping(&text).is_err(), "{text}");
    }
}

#[test]
fn continuation_lines_and_comments_parse() {
    let text =
        "# 8-PSK\nm=3\nn=2\nconstellation=psk:3\nlambda_er: 2 7 6 5 # first half\n  4 1 0 3\n\
        lambda_or: 4 1 0 3 2 7 6 5\nchi_el: 1 6 7 8\nlambda_el: (2,6) (1,5)\n (0,4) (3,7)\n\
        lambda_ol: (1,5) (0,4) (3,7) (2,6)\n";
    let parsed = parse_mapping_file(text).unwrap();
    assert_eq!(parsed, fixture("8psk_4d").unwrap().into_parts());
}

#[test]
fn corrupted_inverse_fails_bijectivity() {
    let mut parts = fixture("16qam_4d").unwrap().into_parts();
    let mut symbol_of = parts.lambda_er.symbols().to_vec();
    symbol_of.swap(0, 1);
    parts.lambda_er = FullMapping2D::from_raw_parts(symbol_of, parts.lambda_er.labels().to_vec());
    let report = check_propositions(&parts);
    assert!(!report.passed());
    assert!(!report.tables_consistent);
    assert!(MdMapping::new(parts).is_err());
}

#[test]
fn guard_reports_partial_checks() {
    let parts = fixture("1024qam_4d")
        .unwrap()
        .with_n(3)
        .unwrap()
        .into_parts();
    let report = check_propositions(&parts);
    assert!(report.guard_exceeded);
    assert!(report.bijective.is_none());
    assert!(report.tables_consistent && report.partition_ok);
}

#[test]
fn half_mapping_pairs_differ_in_first_bit() {
    let err = HalfMapping2D::from_pairs(3, &[0, 1, 2, 3], &[(0, 5), (1, 4), (2, 6), (3, 7)]);
    assert!(err.is_err());
    let ok =
        HalfMapping2D::from_pairs(3, &[0, 1, 2, 3], &[(2, 6), (1, 5), (0, 4), (3, 7)]).unwrap();
    assert_eq!(ok.symbol(6), 0);
    assert_eq!(ok.symbol(1), 1);
}

// Weight parity of a pair equals parity of their distance.
#[test]
fn weight_parity_matches_distance_parity_exhaustive() {
    for width in 1..=12u32 {
        let count = 1u64 << width;
        for a in 0..count {
            for b in 0..count {
                let (la, lb) = (Label::new(a, width).unwrap(), Label::new(b, width).unwrap());
                let lhs = (la.weight() + lb.weight()) % 2;
                assert_eq!(lhs, la.distance(lb).unwrap() % 2);
            }
        }
    }
}

fn random_mapping(m: u32, n: u32, seed: u64) -> MdMapping {
    let kind = mdmap::ConstellationKind::default_for_bits(m);
    let c = Constellation::new(kind, m).unwrap();
    MdMapping::random(&c, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chunks_reassemble_label(width_chunks in 1u32..6, m in 1u32..5, seed: u64) {
        let width = width_chunks * m;
        let value = seed & ((1u64 << width) - 1);
        let label = Label::new(value, width).unwrap();
        let mut acc = 0u64;
        for i in 0..width_chunks {
            acc = (acc << m) | label.chunk(m, i);
        }
        prop_assert_eq!(acc, value);
    }

    #[test]
    fn distance_is_a_metric(a: u32, b: u32, c: u32) {
        let w = 32;
        let (a, b, c) = (Label::new(a as u64, w).unwrap(), Label::new(b as u64, w).unwrap(), Label::new(c as u64, w).unwrap());
        prop_assert_eq!(a.distance(b).unwrap(), b.distance(a).unwrap());
        prop_assert!(a.distance(c).unwrap() <= a.distance(b).unwrap() + b.distance(c).unwrap());
        prop_assert_eq!(a.distance(a).unwrap(), 0);
    }

    // Any four valid components give a bijection.
    #[test]
    fn random_components_are_bijective(m in 2u32..6, n in 2u32..4, seed: u64) {
        prop_assume!(m * n <= 14);
        let mapping = random_mapping(m, n, seed);
        let labeling = VectorLabeling::from_md(&mapping).unwrap();
        for l in 0..labeling.len() {
            let symbols: Vec<usize> = labeling.symbols(l).iter().map(|&s| s as usize).collect();
            prop_assert_eq!(labeling.label_of(&symbols), Some(l));
        }
    }

    // Parity structure: the first symbol of an even label lies in chi_el.
    #[test]
    fn first_symbol_side_follows_parity(seed: u64) {
        let mapping = random_mapping(4, 2, seed);
        for (label, symbols) in mapping.enumerate_pairs().unwrap() {
            prop_assert_eq!(mapping.is_in_chi_el(symbols[0]), label.parity() == Parity::Even);
        }
    }

    #[test]
    fn random_mapping_files_round_trip(m in 2u32..7, seed: u64) {
        let parts: MdParts = random_mapping(m, 2, seed).into_parts();
        let text = serialize_mapping_file(&parts);
        prop_assert_eq!(parse_mapping_file(&text).unwrap(), parts);
    }
}
