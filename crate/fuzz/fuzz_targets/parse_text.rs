//! Fuzzes the expression parser: arbitrary bytes must never panic, every
//! rejection must carry an in-range position, and anything that parses must
//! survive the format/parse round trip unchanged.

#![no_main]
use libfuzzer_sys::fuzz_target;
use poldif::expr::{self, ExprAst, VariableSet};

/// The library already caps expansion at `expr::MAX_TOTAL_DEGREE`; this much
/// tighter bound just keeps per-input work small so the fuzzer iterates
/// quickly.
const MAX_DEGREE: u64 = 64;

fn degree_bound(ast: &ExprAst) -> Option<u64> {
    match ast {
        ExprAst::Number(_) => Some(0),
        ExprAst::Variable(_) => Some(1),
        ExprAst::Add(a, b) | ExprAst::Sub(a, b) => {
            Some(degree_bound(a)?.max(degree_bound(b)?))
        }
        ExprAst::Neg(a) => degree_bound(a),
        ExprAst::Mul(a, b) => degree_bound(a)?.checked_add(degree_bound(b)?),
        ExprAst::Pow(a, e) => degree_bound(a)?.checked_mul(u64::from(*e)),
    }
}

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let vars = VariableSet::default();
    match expr::parse_ast(text, &vars) {
        Err(err) => {
            assert!(err.position() <= text.len());
        }
        Ok(ast) => {
            if degree_bound(&ast).is_some_and(|d| d <= MAX_DEGREE) {
                let f = ast.expand(vars.arity());
                let printed = expr::format(&f, &vars);
                let reparsed =
                    expr::parse(&printed, &vars).expect("canonical output must reparse");
                assert_eq!(reparsed, f, "round trip changed the polynomial");
            }
        }
    }
});
