#![no_main]

use libfuzzer_sys::fuzz_target;
use rootpoly::roots::RootSystem;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else { return };
    if let Ok(rs) = spec.parse::<RootSystem>() {
        // The canonical name parses to the same system.
        let again: RootSystem = rs.name().parse().expect("name reparses");
        assert_eq!(again.roots(), rs.roots());
        assert_eq!(rs.m().rank(), rs.rank());
    }
});
