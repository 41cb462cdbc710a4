#![no_main]

use libfuzzer_sys::fuzz_target;

use kch::docs::DgaDocument;

// Cached documents are read back from disk; parsing plus semantic
// validation of arbitrary bytes must never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<DgaDocument>(data) else {
        return;
    };
    let _ = doc.validate();
});
