#![no_main]

use libfuzzer_sys::fuzz_target;
use treechar::problem::SideConstraints;

fuzz_target!(|data: &[u8]| {
    if let Ok(sc) = serde_json::from_slice::<SideConstraints>(data) {
        for n in [2, 5, 12] {
            let _ = sc.validate(n);
        }
    }
});
