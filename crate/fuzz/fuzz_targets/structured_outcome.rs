//! Fuzzes the structured solve-outcome decoder end to end.

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
    if let Ok((outcome, vars)) = structured::from_structured_outcome(text) {
        let reserialized = structured::to_structured_outcome(&outcome, &vars);
        let (back, back_vars) =
            structured::from_structured_outcome(&reserialized).expect("own output decodes");
        assert_eq!(back, outcome, "round trip changed the outcome");
        assert_eq!(back_vars, vars, "round trip changed the variables");
    }
});
