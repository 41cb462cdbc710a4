#![no_main]

use libfuzzer_sys::fuzz_target;

// First byte picks the strand count, the rest is the braid-word text.
// Parsing must never panic; accepted words must survive the bookkeeping
// operations and display round-trip.
fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let n = u32::from(first % 10) + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let Ok(word) = kch::braid::parse_braid(text, n) else {
        return;
    };
    let reparsed = kch::braid::parse_braid(&word.to_string(), n).expect("display round-trips");
    assert_eq!(reparsed, word);

    let cm = word.components();
    assert!(cm.component_count() >= 1 && cm.component_count() <= n);
    let _ = word.closure_permutation();
    let _ = word.inverse_word();
    let _ = word.free_reduce();
    let _ = word.stabilize_zero();
});
