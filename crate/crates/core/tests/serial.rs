use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trace_repair::code::{Codeword, LinearCode, RsCode};
use trace_repair::construct::{average_io, default_w, AvgMode, SchemeCollection};
use trace_repair::gf::{Field, Gf, SubfieldBasis};
use trace_repair::repair::RepairScheme;
use trace_repair::serial::*;
use trace_repair::subspace::Subspace;
use trace_repair::Error;

#[test]
fn collection_with_bases_round_trips() {
    let f = Arc::new(Field::prime_extension(2, 3).unwrap());
    let code = RsCode::full_length(f.clone(), 6).unwrap();
    let c = SchemeCollection::construction_iii(
        &code,
        &default_w(&f, 1).unwrap(),
        &SubfieldBasis::standard(&f),
    )
    .unwrap();
    let avg = average_io(&c, AvgMode::Exact).unwrap();
    let bases = avg.per_node.into_iter().map(|p| p.basis).collect();
    let c = SchemeCollection::new(code, c.schemes().to_vec(), Some(bases)).unwrap();
    let text = collection_to_json(&c);
    let back = collection_from_json(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(collection_to_json(&back), text);
}

#[test]
fn linear_scheme_round_trips() {
    let f = Arc::new(Field::new(2, 1, 2, Some(&[1, 1, 1])).unwrap());
    let xi = f.primitive();
    let words = vec![
        vec![Gf::ONE, Gf::ZERO, Gf::ONE, Gf::ONE],
        vec![xi, Gf::ONE, Gf::ZERO, Gf::ONE],
    ];
    let code = LinearCode::from_parity_check(f, 4, words.clone()).unwrap();
    let s = RepairScheme::from_words(code, 0, words).unwrap();
    let text = scheme_to_json(&s);
    assert!(text.contains("\"kind\": \"linear\""));
    assert!(text.contains("\"jstar\": 1"));
    assert_eq!(scheme_from_json(&text).unwrap(), s);
}

#[test]
fn subspace_and_basis_round_trip() {
    let f = Field::prime_extension(3, 3).unwrap();
    let b = SubfieldBasis::random(&f, &mut ChaCha8Rng::seed_from_u64(9));
    let (g, back) = basis_from_json(&basis_to_json(&f, &b)).unwrap();
    assert_eq!(g, f);
    assert_eq!(back, b);
    let s = Subspace::span(&f, &b.elems()[..2]);
    let (_, t) = subspace_from_json(&subspace_to_json(&f, &s)).unwrap();
    assert_eq!(t, s);
}

#[test]
fn malformed_documents_are_rejected() {
    let f = Field::prime_extension(2, 2).unwrap();
    let cw = codeword_to_json(&f, &Codeword::new(vec![Gf(1), Gf(3)]));
    let extra = cw.replacen('{', "{\n  \"extra\": 0,", 1);
    assert!(matches!(
        codeword_from_json(&extra),
        Err(Error::Parse { .. })
    ));
    let v: serde_json::Value = serde_json::from_str(&cw).unwrap();
    let mut digit = v.clone();
    digit["symbols"][0][0] = 5.into();
    assert!(matches!(
        codeword_from_json(&digit.to_string()),
        Err(Error::FieldParams(_))
    ));
    let mut reducible = v.clone();
    reducible["field"]["modulus"] = serde_json::json!([1, 0, 1]);
    assert!(codeword_from_json(&reducible.to_string()).is_err());
}

#[test]
fn out_of_range_target_is_rejected() {
    let f = Arc::new(Field::prime_extension(2, 2).unwrap());
    let code = RsCode::full_length(f.clone(), 2).unwrap();
    let s = trace_repair::construct::naive_scheme(&code, 0, &[1, 2]).unwrap();
    let text = scheme_to_json(&s);
    for bad in ["\"jstar\": 0", "\"jstar\": 5"] {
        let t = text.replace("\"jstar\": 1", bad);
        assert!(matches!(
            scheme_from_json(&t),
            Err(Error::PositionOutOfRange { .. })
        ));
    }
}

proptest! {
    #[test]
    fn codewords_round_trip(p in prop::sample::select(vec![2u32, 3, 5]), ell in 1u32..4, raw in prop::collection::vec(any::<u32>(), 0..20)) {
        let f = Field::prime_extension(p, ell).unwrap();
        let cw = Codeword::new(raw.iter().map(|v| Gf(v % f.order())).collect());
        let text = codeword_to_json(&f, &cw);
        let (g, back) = codeword_from_json(&text).unwrap();
        prop_assert_eq!(g, f);
        prop_assert_eq!(back, cw);
    }
}
