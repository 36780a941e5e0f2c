//! Hand-derived translation goldens, shared by the golden test and the
//! acceptance run.

use std::collections::BTreeMap;

use realize_core::classify::Mode;
use realize_core::dialectica::{d_translate, d_types};
use realize_core::frontend::{parse_formula, parse_formula_in, parse_term_in, parse_type};
use realize_core::mr::{gamma1_soundness_formula, mr_apply_terms, mr_translate, mr_types};
use realize_core::syntax::{alpha_eq, FiniteType, Formula, Name};

const GOLDEN: &str = include_str!("../golden/translations.golden");

pub struct Stanza {
    pub kind: String,
    fields: BTreeMap<String, String>,
}

pub fn stanzas() -> Vec<Stanza> {
    let mut out: Vec<Stanza> = Vec::new();
    for line in GOLDEN.lines() {
        let line = line.trim_end();
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        if let Some(kind) = line.strip_prefix("== ") {
            out.push(Stanza {
                kind: kind.to_string(),
                fields: BTreeMap::new(),
            });
            continue;
        }
        let (key, value) = line.split_once(':').expect("key: value");
        out.last_mut()
            .expect("stanza header")
            .fields
            .insert(key.to_string(), value.trim().to_string());
    }
    out
}

fn split_list(s: &str, sep: &str) -> Vec<String> {
    if s.is_empty() {
        vec![]
    } else {
        s.split(sep).map(|p| p.trim().to_string()).collect()
    }
}

fn types(s: &str) -> Vec<FiniteType> {
    split_list(s, ",")
        .iter()
        .map(|t| parse_type(t).unwrap())
        .collect()
}

fn tuple(s: &str) -> Vec<(Name, FiniteType)> {
    split_list(s, ",")
        .iter()
        .map(|entry| {
            let (n, t) = entry.split_once(':').expect("name : type");
            (n.trim().to_string(), parse_type(t.trim()).unwrap())
        })
        .collect()
}

impl Stanza {
    fn get(&self, key: &str) -> &str {
        self.fields
            .get(key)
            .unwrap_or_else(|| panic!("{} stanza lacks `{key}`", self.kind))
    }

    fn input(&self) -> Formula {
        parse_formula(self.get("input")).unwrap()
    }

    /// Parses `key` with the input's free variables and `extra` in scope.
    fn formula(&self, key: &str, extra: &[(Name, FiniteType)]) -> Formula {
        let mut ctx: Vec<_> = self.input().free_vars().into_iter().collect();
        ctx.extend_from_slice(extra);
        parse_formula_in(self.get(key), &ctx).unwrap()
    }
}

pub fn check(stanza: &Stanza) -> Result<(), String> {
    let input = stanza.input();
    let free: Vec<_> = input.free_vars().into_iter().collect();
    let mismatch = |what: &str, got: &dyn std::fmt::Display, want: &dyn std::fmt::Display| {
        Err(format!(
            "{}: {what}: got `{got}`, want `{want}`",
            stanza.get("input")
        ))
    };
    match stanza.kind.as_str() {
        "mr-types" => {
            let want = types(stanza.get("types"));
            let got = mr_types(&input);
            if got != want {
                return mismatch("types", &format!("{got:?}"), &format!("{want:?}"));
            }
        }
        "mr" => {
            let want_tuple = tuple(stanza.get("realizers"));
            let want = Formula::exists_block(&want_tuple, stanza.formula("formula", &want_tuple));
            let r = mr_translate(&input);
            if r.realizers.types()
                != want_tuple
                    .iter()
                    .map(|(_, t)| t.clone())
                    .collect::<Vec<_>>()
            {
                return mismatch("realizer types", &r.realizers, &format!("{want_tuple:?}"));
            }
            let got = Formula::exists_block(r.realizers.vars(), r.formula.clone());
            if !alpha_eq(&got, &want) {
                return mismatch("formula", &r.formula, &stanza.get("formula"));
            }
        }
        "mr-apply" | "mr-soundness" => {
            let terms: Vec<_> = split_list(stanza.get("terms"), ";")
                .iter()
                .map(|t| parse_term_in(t, &free).unwrap())
                .collect();
            let got = if stanza.kind == "mr-apply" {
                mr_apply_terms(&input, &terms).map_err(|e| e.to_string())?
            } else {
                gamma1_soundness_formula(&input, &terms, Mode::Strict).map_err(|e| e.to_string())?
            };
            let want = stanza.formula("formula", &[]);
            if !alpha_eq(&got, &want) {
                return mismatch("formula", &got, &want);
            }
        }
        "d-types" => {
            let want = (types(stanza.get("exists")), types(stanza.get("forall")));
            let got = d_types(&input);
            if got != want {
                return mismatch("types", &format!("{got:?}"), &format!("{want:?}"));
            }
        }
        "d" => {
            let (e, a) = (tuple(stanza.get("exists")), tuple(stanza.get("forall")));
            let scope = [e.clone(), a.clone()].concat();
            let want = Formula::exists_block(
                &e,
                Formula::forall_block(&a, stanza.formula("matrix", &scope)),
            );
            let d = d_translate(&input);
            let type_list =
                |v: &[(Name, FiniteType)]| v.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>();
            if d.exists_tuple.types() != type_list(&e) || d.forall_tuple.types() != type_list(&a) {
                return mismatch(
                    "tuples",
                    &format!("{} {}", d.exists_tuple, d.forall_tuple),
                    &format!("{e:?} {a:?}"),
                );
            }
            if !alpha_eq(&d.to_formula(), &want) {
                return mismatch("matrix", &d.matrix, &stanza.get("matrix"));
            }
        }
        other => return Err(format!("unknown stanza kind `{other}`")),
    }
    Ok(())
}
