//! Fuzzes the structured polynomial decoder: malformed documents must fail
//! cleanly, accepted ones must re-serialize to an equivalent document.

#![no_main]
use libfuzzer_sys::fuzz_target;
use poldif::structured;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((poly, vars)) = structured::from_structured_polynomial(text) {
        let reserialized = structured::to_structured_polynomial(&poly, &vars);
        let (back, back_vars) =
            structured::from_structured_polynomial(&reserialized).expect("own output decodes");
        assert_eq!(back, poly, "round trip changed the polynomial");
        assert_eq!(back_vars, vars, "round trip changed the variables");
    }
});
