//! Acceptance run: one PASS/FAIL line per criterion.

#[path = "../../core/tests/support/goldens.rs"]
mod goldens;
#[path = "support/runs.rs"]
mod runs;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use realize_core::classify::{
    double_negate_primes, in_gamma1, in_gamma2, is_exists_free, is_negative, Mode,
};
use realize_core::dialectica::{d_translate, d_types};
use realize_core::eval::{decide_qf, eval_nat, EvalConfig};
use realize_core::frontend::{
    parse_document, parse_formula, parse_formula_in, parse_term, ItemBody, SourceText,
};
use realize_core::generate::{exists_free_corpus, formula_corpus, Generator};
use realize_core::mr::mr_translate;
use realize_core::sequentialize::sequential_form;
use realize_core::syntax::{
    alpha_eq, check_formula, erase_dummy_foralls, to_combinators, FiniteType, Term,
};
use realize_core::witness::{check_witness, Range, Verdict};
use realize_core::Formula;

const SEED: u64 = 0x5eed_2024;
const CORPUS_SIZE: usize = 1000;
const MAX_DEPTH: usize = 6;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{} ({:.2}s)", o.detail, took.as_secs_f64());
    if let Some(limit) = limit {
        if took > limit {
            o.ok = false;
            o.detail = format!("{}; over the {}s limit", o.detail, limit.as_secs());
        }
    }
    o
}

fn workspace() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

/// Formulas of the bundled corpus files.
fn bundled_corpus() -> Vec<Formula> {
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(workspace().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_document(&SourceText::new(text, path.display().to_string())).unwrap();
        out.extend(doc.items.into_iter().filter_map(|it| match it.body {
            ItemBody::Formula(a) => Some(a),
            ItemBody::Term(_) => None,
        }));
    }
    out
}

fn mr_fixpoint() -> Outcome {
    let corpus = exists_free_corpus(SEED, CORPUS_SIZE, MAX_DEPTH);
    let bad: Vec<_> = corpus
        .iter()
        .filter(|a| {
            let r = mr_translate(a);
            !r.realizers.is_empty()
                || !alpha_eq(&erase_dummy_foralls(&r.formula), &erase_dummy_foralls(a))
        })
        .collect();
    let detail = match bad.first() {
        None => format!("{} ∃-free formulas, all fixed", corpus.len()),
        Some(a) => format!("{} of {} not fixed, e.g. `{a}`", bad.len(), corpus.len()),
    };
    outcome(corpus.len() >= CORPUS_SIZE && bad.is_empty(), detail)
}

fn dialectica_shape() -> Outcome {
    let corpus = formula_corpus(SEED + 1, CORPUS_SIZE, MAX_DEPTH);
    let bad: Vec<_> = corpus
        .iter()
        .filter(|a| {
            let d = d_translate(a);
            let mut ctx: Vec<_> = a.free_vars().into_iter().collect();
            ctx.extend_from_slice(d.exists_tuple.vars());
            ctx.extend_from_slice(d.forall_tuple.vars());
            let (e, u) = d_types(a);
            !d.matrix.is_quantifier_free()
                || check_formula(&d.matrix, &ctx).is_err()
                || d.exists_tuple.types() != e
                || d.forall_tuple.types() != u
        })
        .collect();
    let detail = match bad.first() {
        None => format!(
            "{} formulas, quantifier-free well-typed matrices",
            corpus.len()
        ),
        Some(a) => format!("{} of {} bad, e.g. `{a}`", bad.len(), corpus.len()),
    };
    outcome(corpus.len() >= CORPUS_SIZE && bad.is_empty(), detail)
}

fn translation_goldens() -> Outcome {
    let all = goldens::stanzas();
    let failures: Vec<String> = all.iter().filter_map(|s| goldens::check(s).err()).collect();
    let mr = all.iter().filter(|s| s.kind.starts_with("mr")).count();
    let d = all.iter().filter(|s| s.kind.starts_with('d')).count();
    let detail = match failures.first() {
        None => format!(
            "{} hand-derived stanzas ({mr} mr, {d} dialectica) match",
            all.len()
        ),
        Some(f) => format!("{} of {} mismatch: {f}", failures.len(), all.len()),
    };
    outcome(all.len() >= 12 && failures.is_empty(), detail)
}

fn class_containments() -> Outcome {
    let mut corpus = formula_corpus(SEED + 2, CORPUS_SIZE, MAX_DEPTH);
    corpus.extend(exists_free_corpus(SEED + 3, CORPUS_SIZE / 4, MAX_DEPTH));
    corpus.extend(bundled_corpus());
    let ef_not_g1 = corpus
        .iter()
        .filter(|a| is_exists_free(a, Mode::Strict) && !in_gamma1(a, Mode::Strict))
        .count();
    let g2_not_g1 = corpus
        .iter()
        .filter(|a| in_gamma2(a) && !in_gamma1(a, Mode::Liberal))
        .count();
    let proper = corpus
        .iter()
        .filter(|a| in_gamma1(a, Mode::Strict) && !in_gamma2(a))
        .count();
    outcome(
        ef_not_g1 == 0 && g2_not_g1 == 0 && proper > 0,
        format!(
            "{} formulas: ∃-free outside Γ1 {ef_not_g1}, Γ2 outside Γ1 {g2_not_g1}, Γ1 \\ Γ2 witnesses {proper}",
            corpus.len()
        ),
    )
}

type Step = fn(u64, u64) -> u64;

fn recursor_oracle(n: u64, base: u64, step: Step) -> u64 {
    let mut acc = base;
    for k in 0..n {
        acc = step(k, acc);
    }
    acc
}

fn evaluator_oracles() -> Outcome {
    let cfg = EvalConfig::with_max_steps(std::num::NonZeroU64::new(50_000_000).unwrap());
    let steps: [(&str, Step); 3] = [
        (r"\k:0. \r:0. r + 2", |_, r| r + 2),
        (r"\k:0. \r:0. k + r", |k, r| k + r),
        (r"\k:0. \r:0. S k * r", |k, r| (k + 1) * r),
    ];
    let mut mismatches = Vec::new();
    let mut rec_checked = 0;
    for (text, oracle) in steps {
        let f = parse_term(text).unwrap();
        for n in 0..=8 {
            for base in 0..=5 {
                let t = Term::apps(
                    Term::Rec(FiniteType::Nat),
                    [Term::numeral(n), Term::numeral(base), f.clone()],
                );
                let want = recursor_oracle(n, base, oracle);
                rec_checked += 1;
                match eval_nat(&t, cfg) {
                    Ok(got) if got == want => {}
                    other => mismatches.push(format!("{t}: {other:?}, want {want}")),
                }
            }
        }
    }
    let mut g = Generator::new(SEED + 4);
    let mut compared = 0;
    let mut attempts = 0;
    let default = EvalConfig::default();
    while compared < 200 && attempts < 2000 {
        attempts += 1;
        let t = g.closed_nat_term(5);
        let Ok(v) = eval_nat(&t, default) else {
            continue;
        };
        compared += 1;
        match to_combinators(&t).and_then(|c| eval_nat(&c, cfg)) {
            Ok(w) if w == v => {}
            other => mismatches.push(format!("combinators of {t}: {other:?}, want {v}")),
        }
    }
    let detail = match mismatches.first() {
        None => format!("{rec_checked} recursor values, {compared} λ/combinator pairs agree"),
        Some(m) => format!("{} mismatches, e.g. {m}", mismatches.len()),
    };
    outcome(mismatches.is_empty() && compared >= 200, detail)
}

fn sequentialization() -> Outcome {
    let s = parse_formula("!x:0. ?y:0. y = x + x").unwrap();
    let t = parse_term(r"\x:0. x + x").unwrap();
    let range = Range::new(0, 20).unwrap();
    let cfg = EvalConfig::default();
    let report = check_witness(&s, &t, range, cfg).unwrap();
    let seq = sequential_form(&s).unwrap();
    let xs = parse_term(r"\n:0. n").unwrap();
    let ys = parse_term(r"\n:0. n + n").unwrap();
    let pointwise = range
        .iter()
        .all(|n| decide_qf(&seq.instance(&xs, &ys, &Term::numeral(n)), cfg) == Ok(true));
    outcome(
        report.verdict == Verdict::Pass && report.checked == 21 && pointwise,
        format!(
            "witness {} on {range} ({} instances); sequential instances pointwise {}",
            report.verdict.as_str(),
            report.checked,
            if pointwise { "true" } else { "false" }
        ),
    )
}

fn round_trips() -> Outcome {
    let corpus = formula_corpus(SEED + 5, 400, MAX_DEPTH);
    let mut nodes = 0;
    let mut bad = Vec::new();
    for a in &corpus {
        nodes += a.size();
        let ctx: Vec<_> = a.free_vars().into_iter().collect();
        match parse_formula_in(&a.to_string(), &ctx) {
            Ok(b) if alpha_eq(a, &b) => {}
            _ => bad.push(a.to_string()),
        }
    }
    let mut cli_bad = Vec::new();
    for (name, args) in runs::GOLDEN_RUNS {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_realize"))
                .current_dir(workspace())
                .args(*args)
                .output()
                .unwrap()
                .stdout
        };
        let (first, second) = (run(), run());
        let golden = std::fs::read(runs::golden_path(name)).unwrap_or_default();
        if first != second || first != golden {
            cli_bad.push(*name);
        }
    }
    outcome(
        nodes >= 1000 && bad.is_empty() && cli_bad.is_empty(),
        format!(
            "{nodes} nodes, {} round-trip failures; {} CLI goldens, unstable: [{}]",
            bad.len(),
            runs::GOLDEN_RUNS.len(),
            cli_bad.join(", ")
        ),
    )
}

fn negative_translation() -> Outcome {
    let mut corpus = exists_free_corpus(SEED + 6, CORPUS_SIZE, MAX_DEPTH);
    corpus.extend(
        bundled_corpus()
            .into_iter()
            .filter(|a| is_exists_free(a, Mode::Strict)),
    );
    let bad: Vec<_> = corpus
        .iter()
        .filter(|a| !double_negate_primes(a).is_ok_and(|n| is_negative(&n)))
        .collect();
    let detail = match bad.first() {
        None => format!(
            "{} ∃-free formulas, all negative after translation",
            corpus.len()
        ),
        Some(a) => format!("{} of {} not negative, e.g. `{a}`", bad.len(), corpus.len()),
    };
    outcome(bad.is_empty(), detail)
}

fn main() {
    // Deep generated formulas recurse; run on a roomy stack.
    let worker = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(|| {
            let criteria: [Criterion; 8] = [
                ("mr fixes ∃-free formulas", Some(10), mr_fixpoint),
                (
                    "Dialectica matrices are quantifier-free and typed",
                    Some(30),
                    dialectica_shape,
                ),
                (
                    "hand-derived translation goldens",
                    None,
                    translation_goldens,
                ),
                ("class containments", None, class_containments),
                ("evaluator agrees with oracles", Some(30), evaluator_oracles),
                ("sequentialization semantic check", None, sequentialization),
                ("round trips and stable CLI goldens", None, round_trips),
                (
                    "double negation of primes is negative",
                    None,
                    negative_translation,
                ),
            ];
            let mut failed = 0;
            for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
                let o = timed(limit.map(Duration::from_secs), check);
                let verdict = if o.ok { "PASS" } else { "FAIL" };
                println!("{verdict} criterion {}: {name}: {}", i + 1, o.detail);
                if !o.ok {
                    failed += 1;
                }
            }
            failed
        })
        .unwrap();
    let failed = worker.join().unwrap();
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
