//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON document; failures come back as `{"error": "..."}`.

use cogrowth::counting::growth_values;
use cogrowth::groebner::{complete_with, CompletionLimits};
use cogrowth::langword::{word_obstructions, WordSource};
use cogrowth::rauzy::{entropy_regulator, rauzy_graph};
use cogrowth::text::RelationFile;
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

pub const MAX_WORD_LEN: usize = 2000;
pub const MAX_RAUZY_N: usize = 64;
pub const MAX_ALGEBRA_LEN: usize = 12;

#[derive(Serialize)]
struct Failure {
    error: String,
}

#[derive(Serialize)]
struct WordReport {
    alphabet: String,
    obstructions: Vec<String>,
    cogrowth: Vec<usize>,
}

#[derive(Serialize)]
struct GraphEdge {
    from: usize,
    to: usize,
    label: String,
}

#[derive(Serialize)]
struct RauzyReport {
    n: usize,
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
    out_degrees: Vec<usize>,
    er: String,
}

#[derive(Serialize)]
struct AlgebraReport {
    alphabet: String,
    basis: Vec<String>,
    obstructions: Vec<String>,
    cogrowth: Vec<usize>,
    growth: Vec<String>,
    completion: String,
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .expect("reports serialize")
}

fn source(descriptor: &str) -> Result<WordSource, String> {
    if descriptor.trim_start().starts_with("prefix:") {
        return Err("prefix files are not available in the browser".into());
    }
    WordSource::parse(descriptor).map_err(|e| e.to_string())
}

fn check_range(name: &str, v: usize, max: usize) -> Result<(), String> {
    if v == 0 || v > max {
        return Err(format!("{name} must be between 1 and {max}"));
    }
    Ok(())
}

/// Obstructions and cogrowth of an infinite word given by a descriptor.
#[wasm_bindgen]
pub fn word_report(descriptor: &str, max_len: usize) -> String {
    respond((|| {
        check_range("max_len", max_len, MAX_WORD_LEN)?;
        let src = source(descriptor)?;
        let r = word_obstructions(&src, max_len).map_err(|e| e.to_string())?;
        let a = src.alphabet();
        Ok(WordReport {
            alphabet: a.letters().iter().collect(),
            obstructions: r.obstructions.iter().map(|w| a.render(w)).collect(),
            cogrowth: r.cogrowth,
        })
    })())
}

/// The Rauzy graph `R_n` of a word with its entropy regulator.
#[wasm_bindgen]
pub fn rauzy_report(descriptor: &str, n: usize) -> String {
    respond((|| {
        check_range("n", n, MAX_RAUZY_N)?;
        let g = rauzy_graph(&source(descriptor)?, n).map_err(|e| e.to_string())?;
        Ok(RauzyReport {
            n,
            vertices: g.vertices().to_vec(),
            edges: (0..g.edge_count())
                .map(|i| GraphEdge {
                    from: g.edges()[i].from,
                    to: g.edges()[i].to,
                    label: g.edge_name(i),
                })
                .collect(),
            out_degrees: g.out_degrees(),
            er: entropy_regulator(&g).to_string(),
        })
    })())
}

/// Basis, obstructions, cogrowth and growth of an algebra given as relation-file text.
#[wasm_bindgen]
pub fn algebra_report(relations: &str, max_len: usize) -> String {
    respond((|| {
        check_range("max_len", max_len, MAX_ALGEBRA_LEN)?;
        let file = RelationFile::parse(relations).map_err(|e| e.to_string())?;
        let a = &file.alphabet;
        let top = file
            .relations
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        let limits = CompletionLimits {
            max_basis: 2000,
            max_queue: 200_000,
            max_steps: 500_000,
        };
        let out = complete_with(&file.relations, (2 * max_len).max(top), &limits)
            .map_err(|e| cogrowth::Error::from(e).to_string())?;
        let obs = out.obstructions_up_to(max_len);
        let growth = growth_values(&obs, a, max_len).map_err(|e| e.to_string())?;
        Ok(AlgebraReport {
            alphabet: a.letters().iter().collect(),
            basis: out
                .basis
                .iter()
                .filter(|p| p.degree().unwrap_or(0) <= max_len)
                .map(|p| p.display(a).to_string())
                .collect(),
            obstructions: obs.iter().map(|w| a.render(w)).collect(),
            cogrowth: (1..=max_len)
                .map(|k| obs.iter().filter(|w| w.len() <= k).count())
                .collect(),
            growth: growth.iter().map(|v| v.to_string()).collect(),
            completion: out.status.to_string(),
        })
    })())
}
