#![no_main]

use libfuzzer_sys::fuzz_target;
use qmonty_core::game::{GameSession, Phase};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(s) = GameSession::from_blob(src) else {
        return;
    };
    let view = s.view();
    if s.phase != Phase::Revealed {
        assert!(view.prize.is_none() && view.seed.is_none());
    }
    let back = GameSession::from_blob(&s.to_blob()).expect("re-encoded blob decodes");
    assert_eq!(back, s);
});
