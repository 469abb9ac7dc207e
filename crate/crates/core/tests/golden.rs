//! Known pairs reproduced bit-exact from hand-checked fixtures.

use std::path::Path;

use zcap_core::arrays::{max_zcz_rect, surface, zcap_check, RootArray};
use zcap_core::constructions::{
    corollary1_combine, theorem1_combine, theorem2_direct, Theorem2Params,
};
use zcap_core::format::{parse_documents, SequenceFile};
use zcap_core::{parse_anf, Permutation};

fn fixture(name: &str) -> Vec<SequenceFile> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    parse_documents(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn arrays(name: &str) -> (RootArray, RootArray) {
    let docs = fixture(name);
    (
        docs[0].to_root_array().unwrap(),
        docs[1].to_root_array().unwrap(),
    )
}

#[test]
fn anf_array() {
    let f = parse_anf("x1*x2 + x1*y1 + y3", 2, 2, 3).unwrap();
    let expected = fixture("anf_4x8.jsonl")[0].to_root_array().unwrap();
    let got = RootArray::lift(&f.to_array(4, 8).unwrap(), 2).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn complex_combination() {
    let ab = fixture("complex_ab.jsonl");
    let cd = fixture("complex_cd.jsonl");
    let out = theorem1_combine(
        &ab[0].to_root_vector().unwrap(),
        &ab[1].to_root_vector().unwrap(),
        &cd[0].to_root_vector().unwrap(),
        &cd[1].to_root_vector().unwrap(),
    )
    .unwrap();
    let (s, t) = arrays("complex_st.jsonl");
    assert_eq!(out.s, s);
    assert_eq!(out.t, t);
    assert_eq!((out.z1, out.z2), (8, 4));
    let cert = zcap_check(&s, &t, 8, 4).unwrap();
    assert!(cert.verified);
    assert_eq!(cert.peak, 96);
    let grid = surface(&s, &t).unwrap();
    assert_eq!(grid.get(0, 0), 96.0);
    let frontier = max_zcz_rect(&s, &t).unwrap();
    assert!(frontier.admits(8, 4));
}

#[test]
fn quaternary_combination() {
    let ab = fixture("quaternary_ab.jsonl");
    let cd = fixture("quaternary_cd.jsonl");
    let out = corollary1_combine(
        &ab[0].to_zq_vector().unwrap(),
        &ab[1].to_zq_vector().unwrap(),
        &cd[0].to_zq_vector().unwrap(),
        &cd[1].to_zq_vector().unwrap(),
    )
    .unwrap();
    let (s, t) = arrays("quaternary_st.jsonl");
    assert_eq!(RootArray::lift(&out.s, 4).unwrap(), s);
    assert_eq!(RootArray::lift(&out.t, 4).unwrap(), t);
    assert!(zcap_check(&s, &t, 8, 4).unwrap().verified);
    assert_eq!(max_zcz_rect(&s, &t).unwrap().rectangles, vec![(8, 4)]);
}

#[test]
fn direct_14x4() {
    let p = Theorem2Params::new(2, 2, 0, Permutation::identity(2), vec![0, 0, 0]).unwrap();
    let out = theorem2_direct(&p).unwrap();
    let (s, t) = arrays("direct_14x4.jsonl");
    assert_eq!(RootArray::lift(&out.s, 2).unwrap(), s);
    assert_eq!(RootArray::lift(&out.t, 2).unwrap(), t);
    assert!(zcap_check(&s, &t, 12, 4).unwrap().verified);
    let grid = surface(&s, &t).unwrap();
    for (u1, u2, m) in grid.iter() {
        if (u1, u2) != (0, 0) && u1.abs() < 12 && u2.abs() < 4 {
            assert_eq!(m, 0.0, "({u1},{u2})");
        }
    }
}

#[test]
fn direct_28x2() {
    let p = Theorem2Params::new(2, 2, 1, Permutation::identity(2), vec![0, 0, 0]).unwrap();
    let out = theorem2_direct(&p).unwrap();
    assert_eq!((out.s.rows(), out.s.cols()), (28, 2));
    let s = RootArray::lift(&out.s, 2).unwrap();
    let t = RootArray::lift(&out.t, 2).unwrap();
    assert!(zcap_check(&s, &t, 24, 2).unwrap().verified);
}
