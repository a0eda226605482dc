#![no_main]

use libfuzzer_sys::fuzz_target;
use qmonty_core::gates::text::{from_text, to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = from_text(src) else {
        return;
    };
    // Whatever parses must export and parse back to the same text.
    let text = to_text(&c).expect("parsed circuits use named gates");
    let again = from_text(&text).expect("exported text parses");
    assert_eq!(to_text(&again).unwrap(), text);
    if c.n_qubits() <= 10 {
        let s = c.simulate().expect("parsed circuits simulate");
        assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }
});
