#![no_main]

use libfuzzer_sys::fuzz_target;
use treechar::milp::SolutionAssignment;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = SolutionAssignment::parse(text) {
        assert_eq!(SolutionAssignment::parse(&s.to_sol_lines()).expect("sol lines parse"), s);
    }
});
