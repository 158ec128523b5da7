#![no_main]

use libfuzzer_sys::fuzz_target;
use sumset::LunarNumber;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = text.parse::<LunarNumber>() {
        let printed = x.to_string();
        assert_eq!(printed.parse::<LunarNumber>().unwrap(), x, "{printed}");
    }
});
