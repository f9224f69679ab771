//! The checked-in fuzz seeds must run through the parsers without panicking.

use std::fs;
use std::path::PathBuf;

use rootpoly::exact::{fmt_rat, parse_rat};
use rootpoly::io::{parse_polytope, parse_polytope_file};
use rootpoly::roots::RootSystem;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| String::from_utf8_lossy(&fs::read(e.unwrap().path()).unwrap()).into_owned())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn parse_rat_seeds() {
    let ok = seeds("parse_rat")
        .iter()
        .filter_map(|s| parse_rat(s).ok())
        .inspect(|x| {
            assert_eq!(&parse_rat(&fmt_rat(x)).unwrap(), x);
        })
        .count();
    assert!(ok > 0);
}

#[test]
fn root_system_seeds() {
    let mut ok = 0;
    for s in seeds("root_system_spec") {
        if let Ok(rs) = s.parse::<RootSystem>() {
            let again: RootSystem = rs.name().parse().unwrap();
            assert_eq!(again.roots(), rs.roots());
            ok += 1;
        }
    }
    assert!(ok > 0);
}

#[test]
fn polytope_seeds() {
    let mut ok = 0;
    for s in seeds("polytope_json") {
        if parse_polytope_file(&s).is_ok() && parse_polytope(&s).is_ok() {
            ok += 1;
        }
    }
    assert!(ok >= 5);
}
