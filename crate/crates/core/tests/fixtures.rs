use std::path::PathBuf;

use orbitflag::construct::fixtures;
use orbitflag::{FieldParams, FlagFile};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Compares the stored file with the builder output. Setting
/// `ORBITFLAG_WRITE_FIXTURES` rewrites the file instead.
fn check_file(name: &str, file: &FlagFile) {
    let path = fixture_path(name);
    let text = file.to_json() + "\n";
    if std::env::var_os("ORBITFLAG_WRITE_FIXTURES").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let stored = std::fs::read_to_string(&path).unwrap();
    assert_eq!(FlagFile::from_json(&stored).unwrap(), *file, "{name} is stale");
}

#[test]
fn n16_fixture() {
    let ctx = FieldParams::for_q(2, 16).unwrap().build().unwrap();
    let file = FlagFile::from_exponents(&ctx, &fixtures::n16_exponents(&ctx));
    check_file("flag_n16.json", &file);
    let flag = file.to_flag(&ctx).unwrap();
    assert_eq!(flag, fixtures::flag_n16(&ctx).unwrap());
    assert_eq!(flag.type_vector().as_slice(), &[2, 4, 8, 11, 13]);
    assert_eq!(flag.best_friend_vector().as_slice(), &[2, 4, 8, 1, 1]);
}

#[test]
fn n12_fixture() {
    let ctx = FieldParams::for_q(2, 12).unwrap().build().unwrap();
    let file = FlagFile::from_exponents(&ctx, &fixtures::n12_exponents(&ctx));
    check_file("flag_n12.json", &file);
    let flag = file.to_flag(&ctx).unwrap();
    assert_eq!(flag, fixtures::flag_n12(&ctx).unwrap());
    assert_eq!(flag.type_vector().as_slice(), &[3, 8, 9]);
    assert_eq!(flag.best_friend_vector().as_slice(), &[3, 2, 1]);
}
