//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p cogrowth-core --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use cogrowth::counting::growth_values;
use cogrowth::groebner::{
    certify_finite_basis, nonzero_composition_residues, obstructions_of_algebra,
    stable_reducible_oracle, Verdict,
};
use cogrowth::langword::{check_period_bounds, cogrowth_word, word_obstructions, WordSource};
use cogrowth::rauzy::{
    check_del_edge_lemma, entropy_regulator, line_graph, random_strongly_connected, rauzy_graph,
    Digraph, ErResult,
};
use cogrowth::text::parse_poly;
use cogrowth::{Alphabet, Poly, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xy() -> Alphabet {
    Alphabet::from_letters("xy").unwrap()
}

fn rel(src: &str) -> Poly {
    parse_poly(&xy(), src).unwrap()
}

fn fib_obstructions_max_len_5() -> Outcome {
    let r = word_obstructions(&WordSource::fibonacci(), 5).map_err(|e| e.to_string())?;
    let a = WordSource::fibonacci().alphabet().clone();
    let got: Vec<String> = r.obstructions.iter().map(|w| a.render(w)).collect();
    ensure(got == ["bb", "aaa", "babab"], || format!("got {got:?}"))?;
    Ok(got.join(", "))
}

fn fib_obstruction_lengths_to_1000() -> Outcome {
    let r = word_obstructions(&WordSource::fibonacci(), 1000).map_err(|e| e.to_string())?;
    let lengths: Vec<usize> = r.obstructions.iter().map(Word::len).collect();
    let expected = [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987];
    ensure(lengths == expected, || format!("lengths {lengths:?}"))?;
    let o = r.cogrowth[999];
    let log_phi = 1000f64.ln() / ((1.0 + 5f64.sqrt()) / 2.0).ln();
    ensure(o == 14 && (o as f64 - log_phi).abs() <= 1.0, || {
        format!("O_F(1000) = {o}")
    })?;
    Ok(format!("O_F(1000) = {o}, log_phi(1000) = {log_phi:.2}"))
}

fn fib_cogrowth_log3() -> Outcome {
    let n_max = 10_000;
    let c = cogrowth_word(&WordSource::fibonacci(), n_max).map_err(|e| e.to_string())?;
    // O_F(n) >= log3(n)  <=>  3^O_F(n) >= n
    let violations: Vec<usize> = (2..=n_max)
        .filter(|&n| 3u128.saturating_pow(c[n - 1] as u32) < n as u128)
        .collect();
    ensure(violations.is_empty(), || {
        format!(
            "violations at {:?}",
            &violations[..violations.len().min(10)]
        )
    })?;
    Ok(format!("n in 2..={n_max}, O_F({n_max}) = {}", c[n_max - 1]))
}

fn lavrov_bound() -> Outcome {
    period_bound(cogrowth::langword::PeriodBound::Lavrov)
}

fn chelnokov_bound() -> Outcome {
    period_bound(cogrowth::langword::PeriodBound::Chelnokov)
}

fn period_bound(which: cogrowth::langword::PeriodBound) -> Outcome {
    let r = check_period_bounds(12).map_err(|e| e.to_string())?;
    let bad: Vec<_> = r.violations.iter().filter(|v| v.bound == which).collect();
    ensure(bad.is_empty(), || {
        format!("{} violations, first {:?}", bad.len(), bad[0])
    })?;
    let total: usize = r.checked_per_len.iter().sum();
    Ok(format!(
        "{total} periods, min colength per length {:?}",
        r.min_colength_per_len
    ))
}

fn random_system(rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let count = rng.gen_range(1..=2);
    let mut out = Vec::new();
    while out.len() < count {
        let mut src = String::new();
        for _ in 0..rng.gen_range(1..=3) {
            let c: i32 = loop {
                let c = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            let len = rng.gen_range(0..=3);
            let word: String = (0..len)
                .map(|_| if rng.gen_bool(0.5) { 'x' } else { 'y' })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if word.is_empty() {
                src.push_str(&format!(" {sign} {}", c.abs()));
            } else {
                src.push_str(&format!(" {sign} {}*{word}", c.abs()));
            }
        }
        let p = rel(&src);
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

fn completion_vs_oracle() -> Outcome {
    let a = xy();
    let mut systems: Vec<Vec<Poly>> =
        vec![vec![rel("yx - xy")], vec![rel("yy - xy")], vec![rel("xx")]];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        systems.push(random_system(&mut rng));
    }
    let n = 6;
    let mut max_slack = 0;
    for (i, sys) in systems.iter().enumerate() {
        let obs = obstructions_of_algebra(sys, n).map_err(|e| format!("system {i}: {e}"))?;
        let from_completion: BTreeSet<Word> = a
            .words_up_to(n)
            .into_iter()
            .filter(|w| obs.iter().any(|o| w.contains(o)))
            .collect();
        let (oracle, slack) =
            stable_reducible_oracle(sys, &a, n, 1 << 16).map_err(|e| format!("system {i}: {e}"))?;
        max_slack = max_slack.max(slack);
        ensure(from_completion == oracle, || {
            let shown: Vec<String> = sys.iter().map(|p| p.display(&a).to_string()).collect();
            format!(
                "system {i} {shown:?}: completion {} words, oracle {} words",
                from_completion.len(),
                oracle.len()
            )
        })?;
    }
    Ok(format!(
        "{} systems, degree <= {n}, max stable slack {max_slack}",
        systems.len()
    ))
}

fn certificates() -> Outcome {
    let a = xy();
    let c = certify_finite_basis(&[rel("yx - xy")], 3).map_err(|e| e.to_string())?;
    let basis: Vec<String> = c.basis.iter().map(|p| p.display(&a).to_string()).collect();
    ensure(
        c.verdict == Verdict::Certified && basis == ["yx - xy"],
        || format!("{c:?}"),
    )?;
    let mut report = Vec::new();
    for n in 2..=6 {
        let c = certify_finite_basis(&[rel("yy - xy")], n).map_err(|e| e.to_string())?;
        ensure(
            c.verdict == Verdict::NotCertified && !c.segment_lengths.is_empty(),
            || format!("{{yy - xy}} at N = {n}: {:?}", c.verdict),
        )?;
        report.push(format!("N={n}:{:?}", c.segment_lengths));
    }
    Ok(format!("comm certified at N=3; yy-xy {}", report.join(" ")))
}

fn confluence() -> Outcome {
    let mut checked = 0;
    let systems: [&[&str]; 5] = [
        &["yx - xy"],
        &["xx"],
        &["yx - xx"],
        &["xy - 1"],
        &["yx - xy", "xx - 1"],
    ];
    for srcs in systems {
        let src = srcs.join(", ");
        let rels: Vec<Poly> = srcs.iter().map(|s| rel(s)).collect();
        let n = 3;
        let c = certify_finite_basis(&rels, n).map_err(|e| e.to_string())?;
        if c.verdict != Verdict::Certified {
            continue;
        }
        let residues = nonzero_composition_residues(&c.basis, 2 * n);
        ensure(residues.is_empty(), || {
            format!("{src}: {} nonzero residues", residues.len())
        })?;
        checked += 1;
    }
    ensure(checked == systems.len(), || {
        format!("only {checked} certified bases")
    })?;
    Ok(format!("{checked} certified bases, zero residues"))
}

fn edge_labels(g: &Digraph) -> Vec<String> {
    (0..g.edge_count()).map(|i| g.edge_name(i)).collect()
}

fn rauzy_chain() -> Outcome {
    for desc in ["fib", "periodic:aab"] {
        let src = WordSource::parse(desc).map_err(|e| e.to_string())?;
        let obs = word_obstructions(&src, 52).map_err(|e| e.to_string())?;
        let mut r = rauzy_graph(&src, 1).map_err(|e| e.to_string())?;
        for n in 1..=50 {
            let next = rauzy_graph(&src, n + 1).map_err(|e| e.to_string())?;
            ensure(next.vertices() == edge_labels(&r).as_slice(), || {
                format!("{desc}: vertices of R_{} differ from edges of R_{n}", n + 1)
            })?;
            let deleted = line_graph(&r).edge_count() - next.edge_count();
            let expected = obs.obstructions.iter().filter(|w| w.len() == n + 2).count();
            ensure(deleted == expected, || {
                format!(
                    "{desc} n={n}: deleted {deleted}, obstructions of length {} = {expected}",
                    n + 2
                )
            })?;
            r = next;
        }
    }
    Ok("fib, periodic:aab, n <= 50".into())
}

fn er_bound() -> Outcome {
    let fib = WordSource::fibonacci();
    let c = cogrowth_word(&fib, 200).map_err(|e| e.to_string())?;
    let mut worst = (0, 0usize, 0usize);
    for n in 1..=200 {
        let er = match entropy_regulator(&rauzy_graph(&fib, n).map_err(|e| e.to_string())?) {
            ErResult::Finite(v) => v,
            ErResult::Infinite => return Err(format!("er(R_{n}) infinite")),
        };
        let bound = 1usize << c[n - 1];
        ensure(er <= bound, || format!("n={n}: er {er} > 2^{}", c[n - 1]))?;
        if er * worst.2 > worst.1 * bound || worst.0 == 0 {
            worst = (n, er, bound);
        }
    }
    Ok(format!(
        "n <= 200, tightest at n={} (er {} vs {})",
        worst.0, worst.1, worst.2
    ))
}

fn lemma_check() -> Outcome {
    let cap = 200_000;
    let fib = WordSource::fibonacci();
    let mut graphs = Vec::new();
    for n in 1..=3 {
        graphs.push((
            format!("R_{n}(fib)"),
            rauzy_graph(&fib, n).map_err(|e| e.to_string())?,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10 {
        let v = rng.gen_range(2..=6);
        graphs.push((
            format!("random#{i}"),
            random_strongly_connected(&mut rng, v, 2),
        ));
    }
    let mut largest = 0;
    let mut skipped = Vec::new();
    for (name, g) in &graphs {
        match check_del_edge_lemma(g, cap) {
            Ok(report) => {
                let failed: Vec<&str> = report.failures().map(|c| c.edge.as_str()).collect();
                ensure(failed.is_empty(), || {
                    format!("{name}: failing deletions {failed:?}")
                })?;
                largest = largest.max(report.h1_edges);
            }
            Err(cogrowth::Error::Resource(_)) => skipped.push(name.clone()),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!(
        "{} graphs, size cap {cap} edges, largest H1 {largest} edges, over cap: {}",
        graphs.len(),
        if skipped.is_empty() {
            "none".to_string()
        } else {
            skipped.join(",")
        }
    ))
}

fn growth_counting() -> Outcome {
    let a = xy();
    let v = growth_values(&[a.word("yx").unwrap()], &a, 10).map_err(|e| e.to_string())?;
    for (n, val) in v.iter().enumerate() {
        let n = n as u64;
        let val = u64::try_from(val).unwrap();
        ensure(
            val == (n + 1) * (n + 2) / 2 && val >= n * (n + 3) / 2,
            || format!("V({n}) = {val}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut sets = 0;
    for letters in ["ab", "abc"] {
        let alpha = Alphabet::from_letters(letters).unwrap();
        let k = alpha.len() as u8;
        for _ in 0..30 {
            let mut set: Vec<Word> = Vec::new();
            let mut total = 0;
            while total < 12 {
                let len = rng.gen_range(1..=4).min(12 - total);
                let w = Word::new((0..len).map(|_| rng.gen_range(0..k)).collect());
                total += len;
                if rng.gen_bool(0.25) {
                    break;
                }
                set.push(w);
            }
            set.sort();
            set.dedup();
            let minimal: Vec<Word> = set
                .iter()
                .filter(|w| !set.iter().any(|o| o != *w && w.contains(o)))
                .cloned()
                .collect();
            let got = growth_values(&minimal, &alpha, 10).map_err(|e| e.to_string())?;
            let mut acc = 0u64;
            for (n, value) in got.iter().enumerate() {
                acc += alpha
                    .words_of_len(n)
                    .iter()
                    .filter(|w| !minimal.iter().any(|o| w.contains(o)))
                    .count() as u64;
                ensure(u64::try_from(value).unwrap() == acc, || {
                    format!("set {minimal:?} over {letters}: V({n}) mismatch")
                })?;
            }
            sets += 1;
        }
    }
    Ok(format!(
        "V({{yx}}) = (n+1)(n+2)/2 for n <= 10; {sets} sets brute-forced"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "fibonacci obstructions up to length 5",
            fib_obstructions_max_len_5,
        ),
        (
            "fibonacci obstruction lengths up to 1000",
            fib_obstruction_lengths_to_1000,
        ),
        ("fibonacci cogrowth >= log3 n", fib_cogrowth_log3),
        ("lavrov period bound", lavrov_bound),
        ("chelnokov period bound", chelnokov_bound),
        (
            "completion agrees with the linear-algebra oracle",
            completion_vs_oracle,
        ),
        ("finite basis certificates", certificates),
        ("confluence of certified bases", confluence),
        ("rauzy chain and deletion accounting", rauzy_chain),
        ("entropy regulator bound", er_bound),
        ("edge-deletion lemma", lemma_check),
        ("growth counting", growth_counting),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[{:>2}] FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
