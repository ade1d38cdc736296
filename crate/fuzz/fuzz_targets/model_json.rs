#![no_main]

use libfuzzer_sys::fuzz_target;
use treechar::milp::{emit_json, emit_lp, emit_mps, MilpModel};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = MilpModel::from_json(text) {
        // Validated models must serialize in every format.
        let _ = emit_lp(&model);
        let _ = emit_mps(&model);
        assert_eq!(MilpModel::from_json(&emit_json(&model)).expect("round trip"), model);
    }
});
