#![no_main]

use libfuzzer_sys::fuzz_target;
use rootpoly::io::{parse_polytope_file, polytope_to_json};
use rootpoly::lattice::DualPair;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_polytope_file(text) else { return };
    // Hull computations are exponential in the dimension; keep inputs small.
    let n = file.vertices.as_ref().map_or(0, Vec::len) + file.inequalities.as_ref().map_or(0, Vec::len);
    if file.lattice.ambient_dim > 5 || n > 16 {
        return;
    }
    if let Ok(p) = file.to_polytope() {
        let pair = DualPair::from_m(p.lattice().clone());
        let out = polytope_to_json(&p, &pair).expect("own dual pair");
        let back = rootpoly::io::parse_polytope(&out.to_string()).expect("output reads back");
        assert!(p.lattice_isomorphic(&back));
    }
});
