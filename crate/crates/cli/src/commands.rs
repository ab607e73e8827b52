use std::fmt::Write as _;
use std::path::Path;

use cogrowth::counting::AvoidanceAutomaton;
use cogrowth::groebner::{
    certify_finite_basis_with, complete_with, CompletionError, CompletionLimits, CompletionOutcome,
    Verdict,
};
use cogrowth::langword::{check_period_bounds, colength, word_obstructions, WordSource};
use cogrowth::rauzy::{
    check_del_edge_lemma, entropy_regulator, random_strongly_connected, rauzy_graph, Digraph,
};
use cogrowth::text::{parse_poly, RelationFile};
use cogrowth::{normal_form, Alphabet, Error, Poly, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{AlgebraArgs, AlgebraCmd, Format, RauzyCmd, SourceArgs, WordCmd};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Partial output printed before the error on resource limits.
    pub partial: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
            partial: None,
        }
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
            partial: None,
        }
    }
}

type CmdResult = Result<Output, Failure>;
type PartialFailure = (Failure, Option<Box<CompletionOutcome>>);

fn check_format(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| format!("{f:?}").to_lowercase())
            .collect();
        Err(Failure::usage(format!(
            "format {} is not available here; use one of: {}",
            format!("{format:?}").to_lowercase(),
            names.join(", ")
        )))
    }
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn render_all(a: &Alphabet, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| a.render(w)).collect()
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

fn tsv<T: std::fmt::Display>(rows: impl IntoIterator<Item = (usize, T)>) -> String {
    rows.into_iter()
        .map(|(n, v)| format!("{n}\t{v}\n"))
        .collect()
}

fn read_relations(path: &Path) -> Result<RelationFile, Failure> {
    RelationFile::read(path).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!(
            "{}:{}",
            path.display(),
            f.message.trim_start_matches("usage error: ")
        );
        f
    })
}

fn max_degree(relations: &[Poly]) -> usize {
    relations.iter().filter_map(Poly::degree).max().unwrap_or(0)
}

fn limits(args: &AlgebraArgs) -> CompletionLimits {
    CompletionLimits {
        max_basis: args.limit_basis,
        ..Default::default()
    }
}

/// Obstructions up to `n` via completion to `max(2n, m)`; a limit failure
/// carries the partial outcome.
fn algebra_obstructions(
    file: &RelationFile,
    args: &AlgebraArgs,
    n: usize,
) -> Result<(CompletionOutcome, Vec<Word>), PartialFailure> {
    if n == 0 {
        return Err((Failure::usage("--max-len must be at least 1"), None));
    }
    let bound = (2 * n).max(max_degree(&file.relations));
    match complete_with(&file.relations, bound, &limits(args)) {
        Ok(out) => {
            let obs = out.obstructions_up_to(n);
            Ok((out, obs))
        }
        Err(CompletionError::Usage(m)) => Err((Failure::usage(m), None)),
        Err(CompletionError::Limit { limit, partial }) => Err((
            Failure {
                code: 2,
                message: format!("resource limit exceeded: {limit}"),
                partial: None,
            },
            Some(partial),
        )),
    }
}

pub fn algebra(cmd: AlgebraCmd) -> CmdResult {
    match cmd {
        AlgebraCmd::Obstructions {
            algebra,
            max_len,
            format,
        } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let file = read_relations(&algebra.relations)?;
            let a = &file.alphabet;
            let render = |obs: &[Word], out: Option<&CompletionOutcome>, partial: bool| match format
            {
                Format::Json => to_json(json!({
                    "max_len": max_len,
                    "obstructions": render_all(a, obs),
                    "completion": out.map(|o| o.status.to_string()),
                    "processed_word_bound": out.map(|o| o.processed_word_bound),
                    "partial": partial,
                })),
                _ => {
                    let mut s = String::new();
                    if partial {
                        s.push_str("# partial\n");
                    }
                    s + &lines(&render_all(a, obs))
                }
            };
            match algebra_obstructions(&file, &algebra, max_len) {
                Ok((out, obs)) => Ok(Output::ok(render(&obs, Some(&out), false))),
                Err((mut f, partial)) => {
                    if let Some(p) = partial {
                        f.partial = Some(render(&p.obstructions_up_to(max_len), Some(&p), true));
                    }
                    Err(f)
                }
            }
        }
        AlgebraCmd::Cogrowth {
            algebra,
            max_len,
            format,
        } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let file = read_relations(&algebra.relations)?;
            let render = |obs: &[Word], partial: bool| {
                let counts = cumulative(obs, max_len);
                match format {
                    Format::Json => to_json(
                        json!({ "max_len": max_len, "cogrowth": counts, "partial": partial }),
                    ),
                    _ => {
                        let body = tsv(counts.into_iter().enumerate().map(|(i, c)| (i + 1, c)));
                        if partial {
                            format!("# partial\n{body}")
                        } else {
                            body
                        }
                    }
                }
            };
            match algebra_obstructions(&file, &algebra, max_len) {
                Ok((_, obs)) => Ok(Output::ok(render(&obs, false))),
                Err((mut f, partial)) => {
                    if let Some(p) = partial {
                        f.partial = Some(render(&p.obstructions_up_to(max_len), true));
                    }
                    Err(f)
                }
            }
        }
        AlgebraCmd::Growth {
            algebra,
            max_len,
            limit_states,
            matrix,
            format,
        } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let file = read_relations(&algebra.relations)?;
            let (_, obs) =
                algebra_obstructions(&file, &algebra, max_len.max(1)).map_err(|(f, _)| f)?;
            let automaton = AvoidanceAutomaton::new(&obs, &file.alphabet)?;
            if automaton.live_states() > limit_states {
                return Err(Failure {
                    code: 2,
                    message: format!(
                        "resource limit exceeded: automaton has {} live states, limit is {limit_states}",
                        automaton.live_states()
                    ),
                    partial: None,
                });
            }
            if matrix {
                return Ok(Output::ok(automaton.transfer_matrix_tsv()));
            }
            let values = automaton.growth(max_len);
            Ok(Output::ok(match format {
                Format::Json => to_json(json!({
                    "max_len": max_len,
                    "growth": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "live_states": automaton.live_states(),
                })),
                _ => tsv(values.iter().enumerate()),
            }))
        }
        AlgebraCmd::Nf {
            algebra,
            echo,
            poly,
            max_len,
        } => {
            let file = read_relations(&algebra.relations)?;
            if echo {
                return Ok(Output::ok(file.to_text()));
            }
            let src = poly.expect("clap requires --poly without --echo");
            let p = parse_poly(&file.alphabet, &src)
                .map_err(|e| Failure::usage(format!("--poly {e}")))?;
            let m = max_degree(&file.relations).max(p.degree().unwrap_or(0));
            let bound = max_len.unwrap_or(2 * m).max(max_degree(&file.relations));
            let out = complete_with(&file.relations, bound, &limits(&algebra))
                .map_err(|e| Failure::from(Error::from(e)))?;
            let r = normal_form(&p, &out.basis);
            Ok(Output::ok(format!("{}\n", r.display(&file.alphabet))))
        }
        AlgebraCmd::Certify { algebra, n, format } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let file = read_relations(&algebra.relations)?;
            let cert = certify_finite_basis_with(&file.relations, n, &limits(&algebra))
                .map_err(|e| Failure::from(Error::from(e)))?;
            let a = &file.alphabet;
            let stdout = match format {
                Format::Json => to_json(json!({
                    "verdict": cert.verdict.to_string(),
                    "N": cert.n,
                    "m": cert.max_degree,
                    "completion": cert.status.to_string(),
                    "basis": cert.basis.iter().map(|p| p.display(a).to_string()).collect::<Vec<_>>(),
                    "obstruction_lengths": cert.segment_lengths,
                })),
                _ => cert.to_text(a),
            };
            let code = if cert.verdict == Verdict::Certified {
                0
            } else {
                3
            };
            Ok(Output { stdout, code })
        }
    }
}

fn cumulative(obs: &[Word], n: usize) -> Vec<usize> {
    (1..=n)
        .map(|k| obs.iter().filter(|w| w.len() <= k).count())
        .collect()
}

fn source(args: &SourceArgs) -> Result<WordSource, Failure> {
    let s = WordSource::parse(&args.source)
        .map_err(|e| Failure {
            message: format!("--source: {e}"),
            ..Failure::from(e)
        })?
        .with_prefix_cap(args.seed_cap);
    match &args.alphabet {
        Some(letters) => Ok(s.with_alphabet(Alphabet::from_letters(letters)?)?),
        None => Ok(s),
    }
}

pub fn word(cmd: WordCmd) -> CmdResult {
    match cmd {
        WordCmd::Obstructions {
            source: args,
            max_len,
            format,
        } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let src = source(&args)?;
            let report = word_obstructions(&src, max_len)?;
            let words = render_all(src.alphabet(), &report.obstructions);
            Ok(Output::ok(match format {
                Format::Json => to_json(json!({ "max_len": max_len, "obstructions": words })),
                _ => lines(&words),
            }))
        }
        WordCmd::Cogrowth {
            source: args,
            max_len,
            format,
        } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let src = source(&args)?;
            let report = word_obstructions(&src, max_len)?;
            Ok(Output::ok(match format {
                Format::Json => to_json(json!({ "max_len": max_len, "cogrowth": report.cogrowth })),
                _ => tsv(report.cogrowth.iter().enumerate().map(|(i, c)| (i + 1, c))),
            }))
        }
        WordCmd::Colength {
            period,
            alphabet,
            format,
        } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let alphabet = alphabet.map(|s| Alphabet::from_letters(&s)).transpose()?;
            let r = colength(&period, alphabet.as_ref())?;
            let words = render_all(&r.alphabet, &r.obstructions);
            Ok(Output::ok(match format {
                Format::Json => to_json(json!({
                    "period": period,
                    "minimal_period": r.minimal_period,
                    "colength": r.colength,
                    "obstructions": words,
                })),
                _ => format!("colength={}\n{}", r.colength, lines(&words)),
            }))
        }
        WordCmd::Bounds { max_len, format } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let r = check_period_bounds(max_len)?;
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| json!({ "period": v.period, "colength": v.colength, "bound": format!("{:?}", v.bound).to_lowercase() }))
                .collect();
            Ok(Output::ok(match format {
                Format::Json => to_json(json!({
                    "max_len": max_len,
                    "checked_per_len": r.checked_per_len,
                    "min_colength_per_len": r.min_colength_per_len,
                    "violations": violations,
                })),
                _ => {
                    let mut s = String::from("# length\tperiods\tmin_colength\n");
                    for (i, (c, m)) in r
                        .checked_per_len
                        .iter()
                        .zip(&r.min_colength_per_len)
                        .enumerate()
                    {
                        writeln!(s, "{}\t{c}\t{m}", i + 1).unwrap();
                    }
                    writeln!(s, "violations={}", r.violations.len()).unwrap();
                    for v in &r.violations {
                        writeln!(s, "{}\t{}\t{:?}", v.period, v.colength, v.bound).unwrap();
                    }
                    s
                }
            }))
        }
    }
}

fn graph_json(g: &Digraph) -> Value {
    json!({
        "vertices": g.vertices(),
        "edges": g.edges().iter().map(|e| json!({ "from": e.from, "to": e.to, "label": e.label })).collect::<Vec<_>>(),
    })
}

pub fn rauzy(cmd: RauzyCmd) -> CmdResult {
    match cmd {
        RauzyCmd::Graph {
            source: args,
            n,
            format,
        } => {
            let src = source(&args)?;
            let g = rauzy_graph(&src, n)?;
            Ok(Output::ok(match format {
                Format::Dot => g.to_dot(),
                Format::Json => to_json(graph_json(&g)),
                Format::Text => {
                    let mut s = String::new();
                    for i in 0..g.edge_count() {
                        let e = &g.edges()[i];
                        writeln!(
                            s,
                            "{}\t{}\t{}",
                            g.vertices()[e.from],
                            g.vertices()[e.to],
                            g.edge_name(i)
                        )
                        .unwrap();
                    }
                    s
                }
                Format::Tsv => {
                    return Err(Failure::usage(
                        "format tsv is not available here; use one of: dot, json, text",
                    ))
                }
            }))
        }
        RauzyCmd::Er {
            source: args,
            n,
            from,
            format,
        } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let src = source(&args)?;
            let from = from.unwrap_or(n);
            if from == 0 || from > n {
                return Err(Failure::usage("need 1 <= --from <= --n"));
            }
            let rows: Vec<(usize, String)> = (from..=n)
                .map(|k| Ok((k, entropy_regulator(&rauzy_graph(&src, k)?).to_string())))
                .collect::<Result<_, Error>>()?;
            Ok(Output::ok(match format {
                Format::Json => to_json(json!(rows
                    .iter()
                    .map(|(k, v)| json!({ "n": k, "er": v }))
                    .collect::<Vec<_>>())),
                _ => tsv(rows),
            }))
        }
        RauzyCmd::LemmaCheck {
            source: desc,
            n,
            seed_cap,
            random,
            seed,
            vertices,
            max_er,
            size_cap,
            format,
        } => {
            check_format(format, &[Format::Tsv, Format::Json])?;
            let mut graphs = Vec::new();
            if let Some(k) = random {
                if vertices < 2 || max_er == 0 {
                    return Err(Failure::usage(
                        "random graphs need --vertices >= 2 and --max-er >= 1",
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in 0..k {
                    let v = rng.gen_range(2..=vertices);
                    graphs.push((
                        format!("random{i}"),
                        random_strongly_connected(&mut rng, v, max_er),
                    ));
                }
            } else {
                let desc = desc.expect("clap requires --source without --random");
                let args = SourceArgs {
                    source: desc.clone(),
                    alphabet: None,
                    seed_cap,
                };
                graphs.push((format!("R_{n}({desc})"), rauzy_graph(&source(&args)?, n)?));
            }
            let mut rows = Vec::new();
            let mut over_cap = 0;
            for (name, g) in &graphs {
                match check_del_edge_lemma(g, size_cap) {
                    Ok(r) => rows.push(json!({
                        "graph": name,
                        "er": r.er,
                        "bound": r.bound,
                        "h1_vertices": r.h1_vertices,
                        "h1_edges": r.h1_edges,
                        "failures": r.failures().map(|c| c.edge.clone()).collect::<Vec<_>>(),
                        "status": if r.all_passed() { "pass" } else { "fail" },
                    })),
                    Err(Error::Resource(m)) => {
                        over_cap += 1;
                        rows.push(json!({ "graph": name, "status": "over_cap", "detail": m }));
                    }
                    Err(e) if random.is_none() => return Err(e.into()),
                    Err(e) => rows
                        .push(json!({ "graph": name, "status": "error", "detail": e.to_string() })),
                }
            }
            let stdout = match format {
                Format::Json => to_json(json!({ "size_cap": size_cap, "graphs": rows })),
                _ => {
                    let mut s = format!("# size_cap={size_cap}\n# graph\tstatus\ter\tbound\th1_vertices\th1_edges\tfailed_edges\n");
                    for r in &rows {
                        let get = |k: &str| r.get(k).map_or(String::from("-"), |v| v.to_string());
                        let failed = r.get("failures").and_then(Value::as_array).map_or(
                            String::from("-"),
                            |f| {
                                f.iter()
                                    .filter_map(Value::as_str)
                                    .collect::<Vec<_>>()
                                    .join(",")
                            },
                        );
                        writeln!(
                            s,
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                            r["graph"].as_str().unwrap(),
                            r["status"].as_str().unwrap(),
                            get("er"),
                            get("bound"),
                            get("h1_vertices"),
                            get("h1_edges"),
                            if failed.is_empty() {
                                "-".into()
                            } else {
                                failed
                            }
                        )
                        .unwrap();
                    }
                    s
                }
            };
            if over_cap > 0 {
                return Err(Failure {
                    code: 2,
                    message: format!(
                        "resource limit exceeded: {over_cap} graph(s) over the size cap {size_cap}"
                    ),
                    partial: Some(stdout),
                });
            }
            Ok(Output::ok(stdout))
        }
    }
}
