#![no_main]

use libfuzzer_sys::fuzz_target;
use treechar::PruferCode;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let n = usize::from(first % 30);
    let seq: Vec<usize> = rest.iter().map(|&b| usize::from(b)).collect();
    if let Ok(code) = PruferCode::new(n, seq) {
        let tree = code.decode();
        assert!(tree.is_tree());
        assert_eq!(PruferCode::encode(&tree).expect("decoded trees encode"), code);
        if n <= 12 {
            assert_eq!(PruferCode::from_index(n, code.index()).expect("index in range"), code);
        }
    }
});
