#![no_main]

use libfuzzer_sys::fuzz_target;

use kch::ncpoly::{Alphabet, NcPoly, PolyRepr};

// Untrusted serialized polynomials: deserialization plus validation must
// never panic, and anything accepted must re-serialize canonically.
fuzz_target!(|data: &[u8]| {
    let Ok(repr) = serde_json::from_slice::<PolyRepr>(data) else {
        return;
    };
    for alphabet in [Alphabet::tilde(3), Alphabet::final_ring(3, 2)] {
        let Ok(poly) = NcPoly::from_repr(alphabet, &repr) else {
            continue;
        };
        let canonical = poly.to_repr();
        let back = NcPoly::from_repr(alphabet, &canonical).expect("canonical form re-parses");
        assert_eq!(back, poly);
        assert_eq!(
            serde_json::to_string(&canonical).unwrap(),
            serde_json::to_string(&back.to_repr()).unwrap()
        );
    }
});
