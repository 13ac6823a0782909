use std::ffi::{CStr, CString};
use std::ptr;

use prdc_ffi::*;

fn last_error() -> String {
    let p = prdc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn handle(data: &[f64], n: usize, dim: usize) -> *mut PrdcEmbeddings {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prdc_embeddings_from_f64(data.as_ptr(), n, dim, &mut out) }, PrdcStatus::Ok);
    out
}

#[test]
fn compute_hand_fixture() {
    let real = handle(&[0.0, 1.0, 3.0], 3, 1);
    let fake = handle(&[0.5, 10.0], 2, 1);
    unsafe {
        assert_eq!(prdc_embeddings_n_samples(real), 3);
        assert_eq!(prdc_embeddings_dim(real), 1);
        let mut s = PrdcScores::default();
        assert_eq!(prdc_compute(real, fake, 1, 1, 0, &mut s), PrdcStatus::Ok);
        assert_eq!((s.precision, s.recall, s.density), (0.5, 1.0, 1.0));
        assert!((s.coverage - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!((s.n_real, s.n_fake, s.k_pr, s.k_dc), (3, 2, 1, 1));
        assert!(prdc_last_error().is_null());
        prdc_embeddings_free(real);
        prdc_embeddings_free(fake);
        prdc_embeddings_free(ptr::null_mut());
    }
}

#[test]
fn matches_the_rust_api() {
    let real: Vec<f64> = (0..120).map(|i| ((i * 37) % 101) as f64 / 7.0 + (i as f64).sin()).collect();
    let fake: Vec<f64> = (0..90).map(|i| ((i * 53) % 97) as f64 / 6.0 + (i as f64).cos()).collect();
    let expected = prdc::compute_prdc(
        &prdc::EmbeddingSet::from_flat(real.clone(), 40, 3).unwrap(),
        &prdc::EmbeddingSet::from_flat(fake.clone(), 30, 3).unwrap(),
        3,
        5,
    )
    .unwrap();
    let (r, f) = (handle(&real, 40, 3), handle(&fake, 30, 3));
    let mut s = PrdcScores::default();
    unsafe {
        assert_eq!(prdc_compute(r, f, 3, 5, 2, &mut s), PrdcStatus::Ok);
        prdc_embeddings_free(r);
        prdc_embeddings_free(f);
    }
    assert_eq!(
        [s.precision, s.recall, s.density, s.coverage],
        [expected.precision, expected.recall, expected.density, expected.coverage]
    );
}

#[test]
fn single_and_double_precision_agree() {
    let data: Vec<f64> = (0..200).map(|i| (i as f64 * 1.7).sin() * 3.0).collect();
    let other: Vec<f64> = (0..120).map(|i| (i as f64 * 2.9).cos() * 3.0).collect();
    let narrow: Vec<f32> = data.iter().map(|&v| v as f32).collect();
    let mut h32 = ptr::null_mut();
    unsafe {
        assert_eq!(prdc_embeddings_from_f32(narrow.as_ptr(), 50, 4, &mut h32), PrdcStatus::Ok);
    }
    let h64 = handle(&data, 50, 4);
    let fake = handle(&other, 30, 4);
    let (mut a, mut b) = (PrdcScores::default(), PrdcScores::default());
    unsafe {
        assert_eq!(prdc_compute(h32, fake, 3, 5, 0, &mut a), PrdcStatus::Ok);
        assert_eq!(prdc_compute(h64, fake, 3, 5, 0, &mut b), PrdcStatus::Ok);
        for h in [h32, h64, fake] {
            prdc_embeddings_free(h);
        }
    }
    for (x, y) in [(a.precision, b.precision), (a.recall, b.recall), (a.density, b.density), (a.coverage, b.coverage)] {
        assert!((x - y).abs() <= 1e-5, "{x} vs {y}");
    }
}

#[test]
fn analytic_functions() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(prdc_expected_coverage(10_000, 10_000, 5, &mut v), PrdcStatus::Ok);
        assert_eq!(format!("{v:.3}"), "0.969");
        assert_eq!(prdc_expected_coverage(2, 1, 1, &mut v), PrdcStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(prdc_expected_coverage(5, 5, 5, &mut v), PrdcStatus::ParameterError);

        let (mut k, mut cov) = (0u64, 0.0);
        assert_eq!(prdc_select_k(10_000, 10_000, 0.05, &mut k, &mut cov), PrdcStatus::Ok);
        assert_eq!(k, 5);
        assert!(cov > 0.95);
        assert_eq!(prdc_select_k(10_000, 10_000, 0.05, &mut k, ptr::null_mut()), PrdcStatus::Ok);
        assert_eq!(prdc_select_k(10, 10, 0.0, &mut k, ptr::null_mut()), PrdcStatus::ParameterError);
    }
}

#[test]
fn errors_set_status_and_message() {
    let tiny = handle(&[0.0, 1.0, 3.0], 3, 1);
    let mut s = PrdcScores::default();
    unsafe {
        assert_eq!(prdc_compute(tiny, tiny, 3, 1, 0, &mut s), PrdcStatus::ParameterError);
        assert!(last_error().contains("k = 3"));
        assert_eq!(prdc_compute(tiny, ptr::null(), 1, 1, 0, &mut s), PrdcStatus::NullPointer);
        assert_eq!(prdc_compute(tiny, tiny, 1, 1, 0, ptr::null_mut()), PrdcStatus::NullPointer);

        let other = handle(&[0.0, 1.0, 2.0, 3.0], 2, 2);
        assert_eq!(prdc_compute(tiny, other, 1, 1, 0, &mut s), PrdcStatus::DataError);
        prdc_embeddings_free(other);

        let bad = [0.0, f64::NAN];
        let mut out = ptr::null_mut();
        assert_eq!(prdc_embeddings_from_f64(bad.as_ptr(), 2, 1, &mut out), PrdcStatus::DataError);
        assert!(out.is_null());
        assert_eq!(prdc_embeddings_from_f64(ptr::null(), 2, 1, &mut out), PrdcStatus::NullPointer);
        prdc_embeddings_free(tiny);

        assert_eq!(prdc_embeddings_n_samples(ptr::null()), 0);
    }
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    std::fs::write(&path, "0,0\n3,4\n6,8\n").unwrap();
    let c = CString::new(path.to_str().unwrap()).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(prdc_embeddings_load(c.as_ptr(), &mut h), PrdcStatus::Ok);
        assert_eq!((prdc_embeddings_n_samples(h), prdc_embeddings_dim(h)), (3, 2));
        prdc_embeddings_free(h);

        let missing = CString::new(dir.path().join("gone.npy").to_str().unwrap()).unwrap();
        assert_eq!(prdc_embeddings_load(missing.as_ptr(), &mut h), PrdcStatus::DataError);
        assert!(last_error().contains("gone.npy"));
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(prdc_version()) }.to_str().unwrap();
    assert_eq!(v, prdc::VERSION);
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/prdc.h")).unwrap();
    for name in ["prdc_compute", "prdc_select_k", "prdc_embeddings_free", "PRDC_STATUS_PARAMETER_ERROR", "PrdcScores"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
