use std::io::{Read, Write};
use std::path::Path;

use realize_core::classify::{classify, Flag, Mode};
use realize_core::dialectica::{d_translate, d_types};
use realize_core::eval::{decide_qf, format_trace, normalize_traced, EvalConfig};
use realize_core::frontend::{parse_document, parse_term_in, Document, Item, ItemBody, SourceText};
use realize_core::mr::{gamma1_soundness_formula, mr_apply_terms, mr_translate, mr_types};
use realize_core::sequentialize::{applicable_theorems, decompose_forall_exists, sequential_form};
use realize_core::witness::{check_mr_witness, check_witness, WitnessReport};
use realize_core::{Error, Formula, Term};
use serde_json::{json, Value};

use crate::render::{tuple_human, tuple_json, types_human, types_json, Diagnostic, Fields};
use crate::{Options, Which};

/// What one item produced.
struct Entry {
    item: Option<String>,
    result: Option<Fields>,
    diagnostics: Vec<Diagnostic>,
    code: u8,
}

impl Entry {
    fn failed(item: Option<String>, d: Diagnostic) -> Entry {
        Entry {
            item,
            result: None,
            code: d.exit_code(),
            diagnostics: vec![d],
        }
    }
}

struct Ctx<'a> {
    opts: &'a Options,
    mode: Mode,
    cfg: EvalConfig,
}

pub fn run(which: Which, opts: &Options) -> u8 {
    let ctx = Ctx {
        opts,
        mode: if opts.liberal_qf {
            Mode::Liberal
        } else {
            Mode::Strict
        },
        cfg: EvalConfig {
            max_steps: opts.max_steps,
            trace: opts.trace,
        },
    };
    let mut entries = Vec::new();
    let mut item_found = opts.item.is_none();
    for path in &opts.files {
        let (origin, text) = match read_input(path) {
            Ok(pair) => pair,
            Err((origin, e)) => {
                entries.push(Entry::failed(
                    None,
                    Diagnostic::usage(&origin, e.to_string()),
                ));
                continue;
            }
        };
        let src = SourceText::new(text, origin.clone());
        let doc = match parse_document(&src) {
            Ok(doc) => doc,
            Err(e) => {
                entries.push(Entry::failed(
                    None,
                    Diagnostic::from_error(&origin, 1, 1, &e),
                ));
                continue;
            }
        };
        for item in &doc.items {
            if opts.item.as_deref().is_some_and(|want| want != item.name) {
                continue;
            }
            item_found = true;
            let explicit = opts.item.is_some();
            if let Some(entry) = process(which, &ctx, &doc, item, explicit) {
                entries.push(entry);
            }
        }
    }
    if !item_found {
        let name = opts.item.as_deref().unwrap_or_default();
        entries.push(Entry::failed(
            None,
            Diagnostic::usage("realize", format!("no item named `{name}`")),
        ));
    }
    emit(which, &ctx, &entries);
    entries.iter().map(|e| e.code).max().unwrap_or(0)
}

fn read_input(path: &Path) -> Result<(String, String), (String, std::io::Error)> {
    if path == Path::new("-") {
        let origin = "<stdin>".to_string();
        let mut text = String::new();
        return match std::io::stdin().read_to_string(&mut text) {
            Ok(_) => Ok((origin, text)),
            Err(e) => Err((origin, e)),
        };
    }
    let origin = path.display().to_string();
    match std::fs::read_to_string(path) {
        Ok(text) => Ok((origin, text)),
        Err(e) => Err((origin, e)),
    }
}

fn emit(which: Which, ctx: &Ctx, entries: &[Entry]) {
    let stderr = std::io::stderr();
    let mut err = stderr.lock();
    for d in entries.iter().flat_map(|e| &e.diagnostics) {
        let _ = writeln!(err, "{d}");
    }
    let mut out = String::new();
    if ctx.opts.json {
        let records: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "item": e.item,
                    "subcommand": which.name(),
                    "mode": ctx.mode.as_str(),
                    "result": e.result.as_ref().map(Fields::to_json),
                    "diagnostics": e.diagnostics.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        out = serde_json::to_string_pretty(&Value::Array(records)).expect("serializable");
        out.push('\n');
    } else {
        for e in entries {
            if let (Some(name), Some(fields)) = (&e.item, &e.result) {
                out.push_str(name);
                out.push_str(":\n");
                fields.write_human(&mut out);
            }
        }
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(out.as_bytes());
    let _ = lock.flush();
}

fn wants_term(which: Which) -> Option<bool> {
    match which {
        Which::Check => None,
        Which::Eval => Some(true),
        _ => Some(false),
    }
}

/// Runs `which` on one item. Items of the wrong kind are skipped unless
/// they were asked for by name.
fn process(which: Which, ctx: &Ctx, doc: &Document, item: &Item, explicit: bool) -> Option<Entry> {
    let is_term = matches!(item.body, ItemBody::Term(_));
    if let Some(want) = wants_term(which) {
        if want != is_term {
            if !explicit {
                return None;
            }
            let expected = if want { "a term" } else { "a formula" };
            let d = Diagnostic::usage(
                &doc.origin,
                format!(
                    "`{}` expects {expected}; item `{}` is not one",
                    which.name(),
                    item.name
                ),
            );
            return Some(Entry::failed(Some(item.name.clone()), d));
        }
    }
    let outcome = match &item.body {
        ItemBody::Term(t) => term_command(which, ctx, t),
        ItemBody::Formula(a) => formula_command(which, ctx, doc, a),
    };
    let name = Some(item.name.clone());
    Some(match outcome {
        Ok((fields, code)) => Entry {
            item: name,
            result: Some(fields),
            diagnostics: vec![],
            code,
        },
        Err(Failure::Core(e)) => {
            Entry::failed(name, Diagnostic::from_error(&doc.origin, item.line, 1, &e))
        }
        Err(Failure::Usage(msg)) => Entry::failed(name, Diagnostic::usage(&doc.origin, msg)),
    })
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

type Outcome = Result<(Fields, u8), Failure>;

fn term_command(which: Which, ctx: &Ctx, t: &Term) -> Outcome {
    let ty = t.type_of()?;
    let fields = match which {
        Which::Check => Fields::new()
            .text("kind", "term")
            .text("term", t)
            .text("type", &ty),
        _ => {
            let n = normalize_traced(t, ctx.cfg)?;
            let value = n.term.as_numeral();
            let mut fields = Fields::new()
                .text("term", t)
                .text("type", &ty)
                .text("normal_form", &n.term)
                .put("steps", json!(n.steps), n.steps.to_string())
                .put(
                    "value",
                    json!(value),
                    value.map_or_else(|| "none".to_string(), |v| v.to_string()),
                );
            if ctx.opts.trace {
                let steps: Vec<Value> = n
                    .trace
                    .iter()
                    .map(|s| Value::String(s.to_string()))
                    .collect();
                fields = fields.put("trace", Value::Array(steps), format_trace(&n.trace));
            }
            fields
        }
    };
    Ok((fields, 0))
}

/// Resolves `--realizer` arguments: names of term items, else term text.
fn realizers(ctx: &Ctx, doc: &Document) -> Result<Vec<Term>, Failure> {
    ctx.opts
        .realizers
        .iter()
        .map(|r| match doc.item(r) {
            Some(Item {
                body: ItemBody::Term(t),
                ..
            }) => Ok(t.clone()),
            _ => parse_term_in(r, &doc.vars).map_err(|e| match e.unlocated() {
                Error::Syntax { message, .. } => {
                    Failure::Usage(format!("--realizer `{r}`: {message}"))
                }
                _ => Failure::Core(e),
            }),
        })
        .collect()
}

fn formula_command(which: Which, ctx: &Ctx, doc: &Document, a: &Formula) -> Outcome {
    let fields = match which {
        Which::Check => Fields::new().text("kind", "formula").text("formula", a),
        Which::Classify => classify_fields(a, ctx.mode),
        Which::Mr => {
            let r = mr_translate(a);
            let mut fields = Fields::new()
                .put(
                    "realizers",
                    tuple_json(r.realizers.vars()),
                    tuple_human(r.realizers.vars()),
                )
                .text("formula", &r.formula);
            if !ctx.opts.realizers.is_empty() {
                let terms = realizers(ctx, doc)?;
                let applied = mr_apply_terms(a, &terms)?;
                fields = fields.text("applied", &applied);
                fields = match gamma1_soundness_formula(a, &terms, ctx.mode) {
                    Ok(s) => fields.text("soundness", s),
                    Err(Error::NotGamma1 { .. }) => {
                        fields.put("soundness", Value::Null, "none (not in Γ1)")
                    }
                    Err(e) => return Err(e.into()),
                };
            }
            fields
        }
        Which::MrTypes => {
            let types = mr_types(a);
            Fields::new().put("types", types_json(&types), types_human(&types))
        }
        Which::Dialectica => {
            let d = d_translate(a);
            Fields::new()
                .put(
                    "exists",
                    tuple_json(d.exists_tuple.vars()),
                    tuple_human(d.exists_tuple.vars()),
                )
                .put(
                    "forall",
                    tuple_json(d.forall_tuple.vars()),
                    tuple_human(d.forall_tuple.vars()),
                )
                .text("matrix", &d.matrix)
                .text("formula", d.to_formula())
        }
        Which::DTypes => {
            let (e, u) = d_types(a);
            Fields::new()
                .put("exists", types_json(&e), types_human(&e))
                .put("forall", types_json(&u), types_human(&u))
        }
        Which::Seq => {
            let d = decompose_forall_exists(a)?;
            let s = sequential_form(a)?;
            Fields::new()
                .put(
                    "x",
                    tuple_json(std::slice::from_ref(&d.x)),
                    tuple_human(std::slice::from_ref(&d.x)),
                )
                .put(
                    "y",
                    tuple_json(std::slice::from_ref(&d.y)),
                    tuple_human(std::slice::from_ref(&d.y)),
                )
                .text("matrix", &d.matrix)
                .text("sequential", s.formula())
        }
        Which::Report => {
            let r = applicable_theorems(a, ctx.mode)?;
            let names: Vec<&str> = r.applicable.iter().map(|t| t.as_str()).collect();
            Fields::new()
                .flag("gamma1", r.gamma1)
                .flag("gamma2", r.gamma2)
                .flag("second_order_fragment", r.second_order_fragment)
                .flag("uses_full_recursors", r.uses_full_recursors)
                .put(
                    "applicable",
                    json!(names),
                    format!("[{}]", names.join(", ")),
                )
                .flag("rca_replacement", r.rca_replacement)
        }
        Which::Decide => {
            let v = decide_qf(a, ctx.cfg)?;
            Fields::new().flag("value", v)
        }
        Which::Witness => return witness(ctx, doc, a),
        Which::Eval => unreachable!("eval only runs on terms"),
    };
    Ok((fields, 0))
}

fn classify_fields(a: &Formula, mode: Mode) -> Fields {
    let report = classify(a, mode);
    let mut fields = Fields::new();
    for flag in Flag::ALL {
        fields = fields.flag(flag.as_str(), report.flag(flag));
    }
    let mut json = serde_json::Map::new();
    let mut human = Vec::new();
    for (flag, w) in &report.witnesses {
        let path = realize_core::classify::format_path(&w.path);
        json.insert(
            flag.as_str().to_string(),
            json!({ "path": path, "subformula": w.subformula.to_string() }),
        );
        human.push(format!("{}: {path} `{}`", flag.as_str(), w.subformula));
    }
    let human = if human.is_empty() {
        "none".to_string()
    } else {
        human.join("\n")
    };
    fields.put("witnesses", Value::Object(json), human)
}

fn witness(ctx: &Ctx, doc: &Document, a: &Formula) -> Outcome {
    let terms = realizers(ctx, doc)?;
    let report = if ctx.opts.mr {
        check_mr_witness(a, &terms, ctx.opts.range, ctx.cfg)?
    } else {
        let [t] = terms.as_slice() else {
            return Err(Failure::Usage(format!(
                "`witness` needs exactly one --realizer, got {}",
                terms.len()
            )));
        };
        check_witness(a, t, ctx.opts.range, ctx.cfg)?
    };
    let code = if report.failures.is_empty() { 0 } else { 1 };
    Ok((witness_fields(&report), code))
}

fn witness_fields(r: &WitnessReport) -> Fields {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            let inputs: Vec<Value> = f
                .inputs
                .iter()
                .map(|(n, v)| json!({ "name": n, "value": v }))
                .collect();
            json!({ "inputs": inputs, "instance": f.instance.to_string(), "decision": f.decision })
        })
        .collect();
    let human: Vec<String> = r
        .failures
        .iter()
        .map(|f| {
            let inputs: Vec<String> = f.inputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
            if inputs.is_empty() {
                f.instance.to_string()
            } else {
                format!("{}: {}", inputs.join(" "), f.instance)
            }
        })
        .collect();
    Fields::new()
        .text("verdict", r.verdict.as_str())
        .text("range", r.range)
        .put("checked", json!(r.checked), r.checked.to_string())
        .put(
            "failures",
            Value::Array(failures),
            if human.is_empty() {
                "none".to_string()
            } else {
                human.join("\n")
            },
        )
}
