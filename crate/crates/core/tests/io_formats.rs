mod common;

use common::{random_set, rng};
use prdc::io::{read_raw, write_raw};
use prdc::{compute_prdc, load_embeddings, write_embeddings, EmbeddingFormat, EmbeddingSet, Error, Precision};
use proptest::prelude::*;

#[test]
fn csv_and_raw_fixture_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    std::fs::write(&csv, "0,0\n3,4\n").unwrap();
    let raw = dir.path().join("x.f64");
    let mut bytes = Vec::new();
    for w in [2u64, 2] {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    for v in [0.0f64, 0.0, 3.0, 4.0] {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    std::fs::write(&raw, bytes).unwrap();
    let a = load_embeddings(&csv, None).unwrap();
    assert_eq!((a.n_samples(), a.dim()), (2, 2));
    assert_eq!(a, load_embeddings(&raw, None).unwrap());
}

#[test]
fn same_matrix_in_every_format_gives_same_scores() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(21);
    let real = random_set(&mut r, 60, 7, 2.0);
    let fake = random_set(&mut r, 50, 7, 2.0);
    let expected = compute_prdc(&real, &fake, 3, 5).unwrap();
    for ext in ["csv", "f64", "npy"] {
        let rp = dir.path().join(format!("real.{ext}"));
        let fp = dir.path().join(format!("fake.{ext}"));
        write_embeddings(&rp, &real, None).unwrap();
        write_embeddings(&fp, &fake, None).unwrap();
        let (r2, f2) = (load_embeddings(&rp, None).unwrap(), load_embeddings(&fp, None).unwrap());
        assert_eq!(r2, real, "{ext}");
        assert_eq!(compute_prdc(&r2, &f2, 3, 5).unwrap(), expected, "{ext}");
    }
}

#[test]
fn f32_files_widen_identically() {
    let dir = tempfile::tempdir().unwrap();
    let set = EmbeddingSet::from_flat(vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6], 3, 2).unwrap();
    let a = dir.path().join("a.f32");
    let b = dir.path().join("b.npy");
    write_embeddings(&a, &set, None).unwrap();
    write_embeddings(&b, &set, Some(EmbeddingFormat::Npy(Precision::F32))).unwrap();
    assert_eq!(load_embeddings(&a, None).unwrap(), load_embeddings(&b, None).unwrap());
}

#[test]
fn load_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.csv");
    let err = load_embeddings(&missing, None).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("nope.csv"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1,2\n3,inf\n").unwrap();
    let msg = load_embeddings(&bad, None).unwrap_err().to_string();
    assert!(msg.contains("bad.csv") && msg.contains("row 1, column 1"), "{msg}");

    let unknown = dir.path().join("x.parquet");
    std::fs::write(&unknown, "").unwrap();
    assert!(load_embeddings(&unknown, None).is_err());
    // Explicit format overrides the extension.
    std::fs::write(&unknown, "1\n2\n").unwrap();
    assert_eq!(load_embeddings(&unknown, Some(EmbeddingFormat::Csv)).unwrap().n_samples(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn raw_f64_round_trip_is_bit_exact(n in 1usize..40, d in 1usize..70, seed in any::<u64>()) {
        let set = random_set(&mut rng(seed), n, d, 1e6);
        let back = read_raw(&write_raw(&set, Precision::F64), Precision::F64).unwrap();
        prop_assert!(set.as_slice().iter().zip(back.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}

#[test]
fn large_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let set = random_set(&mut rng(22), 100, 64, 10.0);
    for ext in ["f64", "npy", "csv"] {
        let p = dir.path().join(format!("big.{ext}"));
        write_embeddings(&p, &set, None).unwrap();
        let back = load_embeddings(&p, None).unwrap();
        assert!(set.as_slice().iter().zip(back.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits()), "{ext}");
    }
}
