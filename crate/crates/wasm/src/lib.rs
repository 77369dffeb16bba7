//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and returns a JSON document: the same
//! envelope the CLI prints, or `{"error": "..."}`.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use svir::algebra::bracket_elements;
use svir::findim::TwoDimModule;
use svir::report::{ActResult, BracketResult, Envelope, FindimResult, KernelResult, VectorRecord};
use svir::solver;
use svir::{expr, Error, Rational, Sector, WhittakerData, WhittakerModule};

/// Largest doubled truncation the page will solve; keeps the tab responsive.
pub const MAX_FDEG: i64 = 10;

fn sector(s: &str) -> Result<Sector, String> {
    match s {
        "ns" => Ok(Sector::NS),
        "r" => Ok(Sector::R),
        _ => Err(format!("unknown sector '{s}' (expected ns or r)")),
    }
}

fn rational(name: &str, s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|_| format!("{name} = '{s}' is not a rational number"))
}

fn data(s: &str, a: &str, b: &str, c: &str) -> Result<WhittakerData, String> {
    Ok(WhittakerData::new(sector(s)?, rational("a", a)?, rational("b", b)?, rational("c", c)?))
}

fn text(e: Error) -> String {
    e.to_string()
}

fn finish(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e }).to_string())
}

/// Super-bracket of two algebra elements such as `L(2)` and `G(-1/2)`.
#[wasm_bindgen]
pub fn bracket(sector_name: &str, left: &str, right: &str) -> String {
    finish((|| {
        let d = data(sector_name, "0", "0", "0")?;
        let x = expr::parse(left, d.sector).and_then(|e| e.to_lie_element()).map_err(text)?;
        let y = expr::parse(right, d.sector).and_then(|e| e.to_lie_element()).map_err(text)?;
        let value = bracket_elements(&x, &y).map_err(text)?;
        Ok(serde_json::to_string(&Envelope::new(&d, BracketResult::new(&x, &y, &value))).expect("serialisable"))
    })())
}

/// Normal form of a module expression such as `G(3/2)G(1/2)w`.
#[wasm_bindgen]
pub fn act(sector_name: &str, a: &str, b: &str, c: &str, src: &str) -> String {
    finish((|| {
        let d = data(sector_name, a, b, c)?;
        let module = WhittakerModule::new(d.clone());
        let v = expr::parse(src, d.sector).and_then(|e| e.to_module_vector(&module)).map_err(text)?;
        let results = ActResult { input: src.to_string(), result: VectorRecord::from(&v) };
        Ok(serde_json::to_string(&Envelope::new(&d, results)).expect("serialisable"))
    })())
}

/// Whittaker vectors in the truncation at doubled `fdeg_max`.
#[wasm_bindgen]
pub fn kernel(sector_name: &str, a: &str, b: &str, c: &str, fdeg_max: i32) -> String {
    finish((|| {
        let d = data(sector_name, a, b, c)?;
        let f = i64::from(fdeg_max);
        if f > MAX_FDEG {
            return Err(format!("fdeg_max is capped at {MAX_FDEG} in the browser"));
        }
        let report = solver::whittaker_kernel(&WhittakerModule::new(d.clone()), f).map_err(text)?;
        let expected = solver::expected_kernel(&d);
        let results = KernelResult::new(&report, expected.as_deref());
        Ok(serde_json::to_string(&Envelope::new(&d, results)).expect("serialisable"))
    })())
}

/// The two-dimensional module: action table and invariant subspaces.
#[wasm_bindgen]
pub fn findim(sector_name: &str, a: &str, b: &str, index_bound: i32) -> String {
    finish((|| {
        let d = data(sector_name, a, b, "0")?;
        let n = i64::from(index_bound.clamp(1, 12));
        let module = TwoDimModule::build(&d, n);
        let results = FindimResult::new(&module, n, module.verify_axioms(n));
        Ok(serde_json::to_string(&Envelope::new(&d, results)).expect("serialisable"))
    })())
}
