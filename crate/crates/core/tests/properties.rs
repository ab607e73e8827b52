use cogrowth::counting::growth_values;
use cogrowth::groebner::{
    certify_finite_basis, cogrowth_algebra, complete, obstructions_of_algebra,
    stable_reducible_oracle, Verdict,
};
use cogrowth::langword::{word_obstructions, WordSource};
use cogrowth::rauzy::{entropy_regulator, rauzy_graph, ErResult};
use cogrowth::text::parse_poly;
use cogrowth::{Alphabet, Poly, Word};

fn xy() -> Alphabet {
    Alphabet::from_letters("xy").unwrap()
}

fn rel(src: &str) -> Poly {
    parse_poly(&xy(), src).unwrap()
}

#[test]
fn cogrowth_is_constant_or_at_least_logarithmic() {
    let infinite = cogrowth_algebra(&[rel("yy - xy")], 12).unwrap();
    for n in 1..=12usize {
        // O_A(n) >= log2(n) - 1
        assert!(
            1usize << (infinite[n - 1] + 1) >= n,
            "n = {n}: {infinite:?}"
        );
    }
    assert!(infinite.windows(2).all(|w| w[1] > w[0]), "{infinite:?}");

    let finite = cogrowth_algebra(&[rel("yx - xy")], 12).unwrap();
    assert_eq!(finite[0], 0);
    assert!(finite[1..].iter().all(|&c| c == 1), "{finite:?}");
}

#[test]
fn monomial_relations_from_a_word_are_their_own_basis() {
    let n = 9;
    for desc in ["fib", "periodic:aab", "morphic:a->ab,b->ba;seed=a"] {
        let src = WordSource::parse(desc).unwrap();
        let a = src.alphabet().clone();
        let obs = word_obstructions(&src, n).unwrap().obstructions;
        let rels: Vec<Poly> = obs.iter().map(|w| Poly::monomial(w.clone())).collect();
        let from_algebra = obstructions_of_algebra(&rels, n).unwrap();
        assert_eq!(from_algebra, obs, "{desc}");
        let rendered: Vec<String> = obs.iter().map(|w| a.render(w)).collect();
        assert!(!rendered.is_empty());
    }
}

#[test]
fn word_obstructions_are_minimal_on_both_sides() {
    let tm = WordSource::parse("morphic:a->ab,b->ba;seed=a").unwrap();
    let n = 20;
    let report = word_obstructions(&tm, n).unwrap();
    let factors = |k: usize| tm.factors(k).unwrap();
    for w in &report.obstructions {
        let l = w.len();
        assert!(!factors(l).contains(w));
        if l > 1 {
            assert!(factors(l - 1).contains(&w.slice(1, l)));
            assert!(factors(l - 1).contains(&w.slice(0, l - 1)));
        }
    }
    assert!(!report.obstructions.is_empty());
}

#[test]
fn certified_bases_reproduce_oracle_growth() {
    let a = xy();
    let n = 6;
    for src in ["yx - xy", "yx - xx", "xy - 1", "xx"] {
        let relations = [rel(src)];
        let cert = certify_finite_basis(&relations, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified, "{src}");
        let leads: Vec<Word> = cert
            .basis
            .iter()
            .map(|p| p.lead().unwrap().clone())
            .collect();
        let counted = growth_values(&leads, &a, n).unwrap();
        let (reducible, _) = stable_reducible_oracle(&relations, &a, n, 1 << 16).unwrap();
        for (k, value) in counted.iter().enumerate() {
            let irreducible = a
                .words_up_to(k)
                .into_iter()
                .filter(|w| !reducible.contains(w))
                .count();
            assert_eq!(
                u64::try_from(value).unwrap(),
                irreducible as u64,
                "{src} V({k})"
            );
        }
    }
}

#[test]
fn completion_obstructions_are_subword_minimal() {
    for srcs in [
        &["yy - xy"][..],
        &["yx - xy", "xx - y"],
        &["xyx - yy", "yxy - x"],
    ] {
        let rels: Vec<Poly> = srcs.iter().map(|s| rel(s)).collect();
        let out = complete(&rels, 10).unwrap();
        for (i, u) in out.obstructions.iter().enumerate() {
            for (j, v) in out.obstructions.iter().enumerate() {
                assert!(i == j || !v.contains(u), "{srcs:?}: {u:?} inside {v:?}");
            }
        }
    }
}

#[test]
fn growth_gap_samples() {
    let ab = Alphabet::from_letters("ab").unwrap();
    let w = |s: &str| ab.word(s).unwrap();
    let constant = growth_values(&[w("a"), w("b")], &ab, 8).unwrap();
    assert!(constant.iter().all(|v| *v == 1u32.into()));
    let linear = growth_values(&[w("aa"), w("bb")], &ab, 8).unwrap();
    for (n, v) in linear.iter().enumerate() {
        assert_eq!(*v, (2 * n as u64 + 1).into());
    }
    let quadratic = growth_values(&[w("ba")], &ab, 20).unwrap();
    for (n, v) in quadratic.iter().enumerate() {
        let n = n as u64;
        assert!(*v >= (n * (n + 3) / 2).into());
    }
}

#[test]
fn periodic_rauzy_graphs_are_cycles() {
    let src = WordSource::periodic("aab").unwrap();
    for n in 3..=12 {
        let g = rauzy_graph(&src, n).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.out_degrees().iter().all(|&d| d == 1));
        assert!(g.is_strongly_connected());
        assert_eq!(entropy_regulator(&g), ErResult::Infinite);
    }
}
