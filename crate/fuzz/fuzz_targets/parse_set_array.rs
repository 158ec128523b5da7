#![no_main]

use libfuzzer_sys::fuzz_target;
use sumset::multiset::beta_b;
use sumset::SetArray;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = text.parse::<SetArray>() {
        assert_eq!(x.to_string().parse::<SetArray>().unwrap(), x);
        assert_eq!(SetArray::from_lunar(&beta_b(&x)).unwrap(), x);
    }
});
