#![no_main]

use libfuzzer_sys::fuzz_target;
use qmonty_core::game::{Engine, GameSession};
use qmonty_service::MoveBody;

fuzz_target!(|data: &[u8]| {
    let Ok(mv) = serde_json::from_slice::<MoveBody>(data) else {
        return;
    };
    // A move either applies or is rejected; the session stays consistent.
    for engine in Engine::ALL {
        let mut s = GameSession::new(engine, data.len() as u64);
        let _ = mv.apply(&mut s);
        let _ = mv.apply(&mut s);
        s.validate().expect("session stays consistent");
    }
});
