use std::ffi::CString;
use std::ptr;

use nlqc_ffi::*;

fn catalog(name: &str) -> *mut NlqcGate {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { nlqc_gate_from_catalog(name.as_ptr(), &mut g) }, NlqcStatus::Ok);
    g
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { nlqc_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn cnot_bounds_through_handles() {
    let g = catalog("CNOT");
    unsafe {
        let mut cc = ptr::null_mut();
        assert_eq!(nlqc_cc_bound(g, 1, 8, &mut cc), NlqcStatus::Ok);
        let mut b = 0.0;
        assert_eq!(nlqc_report_bound(cc, &mut b), NlqcStatus::Ok);
        assert!((b - 0.5).abs() < 1e-6);
        let mut flag = NlqcFlag::NotControllablyEntangled;
        assert_eq!(nlqc_report_flag(cc, &mut flag), NlqcStatus::Ok);
        assert_eq!(flag, NlqcFlag::None);

        let mut ce = ptr::null_mut();
        assert_eq!(nlqc_ce_bound(g, 1, 0, &mut ce), NlqcStatus::Ok);
        let (mut l1, mut l2) = (0.0, 1.0);
        nlqc_report_lambda1(ce, &mut l1);
        nlqc_report_lambda2(ce, &mut l2);
        assert!(l1 >= 1.0 - 1e-9);
        assert_eq!(l2, 0.0);
        let mut five = 0.0;
        assert_eq!(nlqc_parallel_repetition(ce, 5, &mut five), NlqcStatus::Ok);
        assert!((five - 5.0).abs() < 5e-3);
        let (mut p1, mut p2) = ([9.0; 3], [9.0; 3]);
        assert_eq!(nlqc_report_witnesses(ce, p1.as_mut_ptr(), p2.as_mut_ptr()), NlqcStatus::Ok);
        assert!(p1.iter().map(|x| x * x).sum::<f64>() <= 1.0 + 1e-12);
        nlqc_report_free(cc);
        nlqc_report_free(ce);
        nlqc_gate_free(g);
    }
}

#[test]
fn swap_is_flagged() {
    let g = catalog("swap");
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(nlqc_cc_bound(g, 3, 8, &mut r), NlqcStatus::Ok);
        let mut flag = NlqcFlag::None;
        nlqc_report_flag(r, &mut flag);
        assert_eq!(flag, NlqcFlag::NotControllablyCorrelated);
        nlqc_report_free(r);
        nlqc_gate_free(g);
    }
}

#[test]
fn error_codes_and_messages() {
    let name = CString::new("NotAGate").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { nlqc_gate_from_catalog(name.as_ptr(), &mut g) }, NlqcStatus::UnknownGate);
    assert!(g.is_null());
    assert!(last_error().contains("NotAGate"));

    assert_eq!(unsafe { nlqc_gate_from_catalog(ptr::null(), &mut g) }, NlqcStatus::NullPointer);

    let re = [1.0; 16];
    let im = [0.0; 16];
    assert_eq!(unsafe { nlqc_gate_from_matrix(re.as_ptr(), im.as_ptr(), &mut g) }, NlqcStatus::InvalidMatrix);

    let mut x = 0.0;
    assert_eq!(unsafe { nlqc_noisy_cc_bound(1.0, 0.0, 0.3, 1, &mut x) }, NlqcStatus::InvalidArgument);
    assert_eq!(unsafe { nlqc_noisy_ce_bound(1.0, 2.0, 0.0, &mut x) }, NlqcStatus::NotApplicable);
    assert_eq!(unsafe { nlqc_delta_correction(0.0, 1, &mut x) }, NlqcStatus::Ok);
    assert_eq!(x, 0.0);
    unsafe {
        nlqc_gate_free(ptr::null_mut());
        nlqc_report_free(ptr::null_mut());
    }
}

#[test]
fn identity_matrix_gate() {
    let mut re = [0.0; 16];
    for i in 0..4 {
        re[5 * i] = 1.0;
    }
    let im = [0.0; 16];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nlqc_gate_from_matrix(re.as_ptr(), im.as_ptr(), &mut g), NlqcStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(nlqc_cc_bound(g, 0, 8, &mut r), NlqcStatus::Ok);
        let mut b = 1.0;
        nlqc_report_bound(r, &mut b);
        assert_eq!(b, 0.0);
        nlqc_report_free(r);
        nlqc_gate_free(g);
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/nlqc.h")).unwrap();
    for sym in ["nlqc_gate_from_catalog", "nlqc_cc_bound", "nlqc_ce_bound", "nlqc_report_free", "NLQC_STATUS_OK", "typedef struct NlqcGate NlqcGate"] {
        assert!(header.contains(sym), "missing {sym}");
    }
    let Ok(cc) = which_cc() else { return };
    let tmp = tempdir();
    let src = tmp.join("use.c");
    std::fs::write(
        &src,
        "#include \"nlqc.h\"\nint main(void) { NlqcGate *g = 0; return nlqc_gate_from_catalog(\"CNOT\", &g) == NLQC_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .unwrap();
    let _ = std::fs::remove_dir_all(&tmp);
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("nlqc-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
