//! One function per subcommand, each returning a [`Report`].

use anyhow::{Context, Result};
use serde_json::{json, Value};

use hallgebra::exactmath::{format_rat, Rat};
use hallgebra::hall::{hall_constants, hall_constants_via_ses, span_route_mismatches, HallTable};
use hallgebra::protoab::ProtoAbelianInstance;
use hallgebra::schurweyl::schur_weyl_report;
use hallgebra::waldhausen::mutations::{pointed_corpus, segal_corpus, MutationTarget};
use hallgebra::waldhausen::{
    check_2segal_degree3, check_pointed, check_simplicial_identities, hecke_algebra, hecke_module, hecke_waldhausen,
    s_construction, DoubleCoset, SegalVerdict, TruncatedSimplicialGroupoid,
};
use hallgebra::wreath::{check_ch_multiplicative, wreath_character_table, FiniteGroup};

use crate::report::Report;
use crate::{Construction, FamilyArg, InstanceArgs, Route};

fn group(spec: &str) -> Result<FiniteGroup> {
    FiniteGroup::parse(spec).with_context(|| format!("group {spec:?}"))
}

fn subgroup(g: &FiniteGroup, spec: &str) -> Result<Vec<u32>> {
    g.parse_subgroup(spec)
        .with_context(|| format!("subgroup {spec:?} of {}", g.name()))
}

fn instance(a: &InstanceArgs) -> Result<ProtoAbelianInstance> {
    Ok(match a.family {
        FamilyArg::Vect => ProtoAbelianInstance::vect(a.q, a.bound)?,
        FamilyArg::F1Free => ProtoAbelianInstance::f1_free(group(&a.group)?, a.bound),
        FamilyArg::AbGroups => ProtoAbelianInstance::p_groups(a.p, a.bound)?,
    })
}

fn cosets_json(cs: &[DoubleCoset]) -> Value {
    cs.iter()
        .map(|c| json!({"representative": c.representative, "size": c.size()}))
        .collect()
}

fn cube_entries(cube: &[Vec<Vec<Rat>>]) -> Vec<[String; 4]> {
    let mut out = Vec::new();
    for (i, plane) in cube.iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if *v != Rat::default() {
                    out.push([i.to_string(), j.to_string(), k.to_string(), format_rat(v)]);
                }
            }
        }
    }
    out
}

pub fn hall_table(args: &InstanceArgs, route: Route, budget: usize) -> Result<Report> {
    let inst = instance(args)?;
    let table: HallTable = match route {
        Route::Ses => hall_constants_via_ses(&inst, args.bound, budget)?,
        Route::Subobjects | Route::Span => hall_constants(&inst, args.bound)?,
    };
    let assoc = table.check_associativity();
    let unital = table.check_unit();
    let graded = table.check_grading();
    let mismatches = match route {
        Route::Span => Some(span_route_mismatches(&table, budget)?),
        _ => None,
    };
    let rows: Vec<Vec<String>> = table
        .entries()
        .map(|((n, l, m), v)| vec![n.to_string(), l.to_string(), m.to_string(), format_rat(v)])
        .collect();
    let pass = assoc.pass && unital && graded && mismatches.as_ref().is_none_or(|m| m.is_empty());
    let mut j = json!({
        "instance": inst.tag(),
        "bound": args.bound,
        "basis": table.basis().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "constants": rows.iter().map(|r| json!({"n": r[0], "l": r[1], "m": r[2], "value": r[3]})).collect::<Vec<_>>(),
        "associativity": assoc,
        "unital": unital,
        "graded": graded,
        "pass": pass,
    });
    if let Some(m) = &mismatches {
        j["span_mismatches"] = m.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
    }
    Ok(Report::new(pass, j)
        .table(&["n", "l", "m", "value"], rows)
        .line(format!("instance {} bound {}", inst.tag(), args.bound))
        .line(format!("basis size {}", table.basis().len()))
        .line(format!("associative ({} triples): {}", assoc.triples_checked, assoc.pass))
        .line(format!("unital: {unital}")))
}

pub fn hecke_table_cmd(g: &str, h: &str, budget: usize) -> Result<Report> {
    let g = group(g)?;
    let h = subgroup(&g, h)?;
    let t = hecke_algebra(&g, &h, budget)?;
    let (assoc, unital, integral) = (t.is_associative(), t.is_unital(), t.is_integral());
    let pass = assoc && unital && integral;
    let entries = cube_entries(&t.constants);
    let j = json!({
        "group": t.group,
        "subgroup": t.subgroup,
        "double_cosets": cosets_json(&t.cosets),
        "constants": entries.iter().map(|e| json!({"i": e[0], "j": e[1], "k": e[2], "value": e[3]})).collect::<Vec<_>>(),
        "associative": assoc,
        "unital": unital,
        "integral": integral,
        "pass": pass,
    });
    Ok(Report::new(pass, j)
        .table(&["i", "j", "k", "value"], entries.into_iter().map(Vec::from).collect())
        .line(format!("Hecke algebra of {} over a subgroup of order {}", g.name(), h.len()))
        .line(format!("dimension {}", t.dim()))
        .line(format!("associative: {assoc}, unital: {unital}, integral: {integral}")))
}

pub fn hecke_module_cmd(g: &str, h: &str, p: &str, budget: usize) -> Result<Report> {
    let g = group(g)?;
    let h = subgroup(&g, h)?;
    let p = subgroup(&g, p)?;
    let m = hecke_module(&g, &h, &p, budget)?;
    let (assoc, unital) = (m.is_associative(), m.is_unital());
    let pass = assoc && unital;
    let entries = cube_entries(&m.action);
    let j = json!({
        "group": m.algebra.group,
        "subgroup": m.algebra.subgroup,
        "module_subgroup": m.module_subgroup,
        "algebra_double_cosets": cosets_json(&m.algebra.cosets),
        "module_double_cosets": cosets_json(&m.cosets),
        "action": entries.iter().map(|e| json!({"i": e[0], "a": e[1], "b": e[2], "value": e[3]})).collect::<Vec<_>>(),
        "associative": assoc,
        "unital": unital,
        "pass": pass,
    });
    Ok(Report::new(pass, j)
        .table(&["i", "a", "b", "value"], entries.into_iter().map(Vec::from).collect())
        .line(format!("algebra dimension {}, module dimension {}", m.algebra.dim(), m.dim()))
        .line(format!("associative: {assoc}, unital: {unital}")))
}

fn verdict_rows(kind: &str, v: &SegalVerdict) -> Vec<Vec<String>> {
    v.witnesses
        .iter()
        .map(|w| {
            vec![
                kind.to_string(),
                w.square.clone(),
                w.reason.clone().unwrap_or_else(|| "not an equivalence".into()),
            ]
        })
        .collect()
}

fn check_structure(name: String, x: &TruncatedSimplicialGroupoid, budget: usize) -> Result<Report> {
    let simplicial = check_simplicial_identities(x);
    let segal = check_2segal_degree3(x, budget)?;
    let pointed = check_pointed(x, budget)?;
    let pass = simplicial.pass && segal.pass && pointed.pass;
    let witnesses: Vec<_> = segal.witnesses.iter().chain(&pointed.witnesses).cloned().collect();
    let mut rows = verdict_rows("segal", &segal);
    rows.extend(verdict_rows("pointed", &pointed));
    let j = json!({
        "structure": name,
        "pass": pass,
        "simplicial": simplicial,
        "segal": segal,
        "pointed": pointed,
        "witnesses": witnesses,
    });
    Ok(Report::new(pass, j)
        .table(&["check", "square", "reason"], rows)
        .line(name)
        .line(format!("simplicial identities: {}", simplicial.pass))
        .line(format!("2-Segal ({} squares): {}", segal.squares_checked, segal.pass))
        .line(format!("unital ({} squares): {}", pointed.squares_checked, pointed.pass)))
}

pub fn segal_check(c: Construction, args: &InstanceArgs, h: &str, budget: usize) -> Result<Report> {
    match c {
        Construction::S => {
            let inst = instance(args)?;
            let s = s_construction(&inst, args.bound, 3, budget)?;
            check_structure(format!("S-construction of {} bound {}", inst.tag(), args.bound), s.simplicial(), budget)
        }
        Construction::Hecke => {
            let g = group(&args.group)?;
            let sub = subgroup(&g, h)?;
            let x = hecke_waldhausen(&g, &sub, 3, budget)?;
            check_structure(format!("Hecke-Waldhausen of {} over {h}", g.name()), x.simplicial(), budget)
        }
        Construction::Mutations => mutations(budget),
    }
}

fn mutations(budget: usize) -> Result<Report> {
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let corpus = segal_corpus(budget)?.into_iter().chain(pointed_corpus(budget)?);
    for m in corpus {
        let (target, v) = match m.target {
            MutationTarget::Segal => ("segal", check_2segal_degree3(&m.structure, budget)?),
            MutationTarget::Pointed => ("pointed", check_pointed(&m.structure, budget)?),
        };
        let detected = !v.pass && !v.witnesses.is_empty();
        rows.push(vec![m.name.clone(), target.to_string(), detected.to_string()]);
        entries.push(json!({
            "name": m.name,
            "target": target,
            "detected": detected,
            "witnesses": v.witnesses,
        }));
    }
    let pass = entries.iter().all(|e| e["detected"] == json!(true));
    let witnesses: Vec<Value> = entries.iter().flat_map(|e| e["witnesses"].as_array().cloned().unwrap_or_default()).collect();
    let n = entries.len();
    Ok(Report::new(pass, json!({"structure": "mutation corpus", "pass": pass, "entries": entries, "witnesses": witnesses}))
        .table(&["mutation", "target", "detected"], rows)
        .line(format!("{n} mutations, each must fail its check")))
}

pub fn wreath_char_table(g: &str, n: usize, budget: usize) -> Result<Report> {
    let g = group(g)?;
    let t = wreath_character_table(&g, n, budget)?;
    let orth = t.check_orthogonality();
    let classes: Vec<String> = t.class_labels.iter().map(|l| l.to_string()).collect();
    let irreps: Vec<String> = t.irreducible_labels.iter().map(|l| l.to_string()).collect();
    let values = t.value_strings();
    let m = t.conductor.max(1);
    let coefficients: Vec<Vec<Vec<String>>> = t
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.lift(m).coeffs().iter().map(format_rat).collect()).collect())
        .collect();
    let j = json!({
        "group": t.group,
        "n": n,
        "order": t.order,
        "conductor": t.conductor,
        "base_class_labels": t.wreath().class_labels(),
        "base_character_labels": t.character_labels(),
        "class_labels": classes,
        "class_sizes": t.class_sizes,
        "irreducible_labels": irreps,
        "values": values,
        "value_coefficients": coefficients,
        "orthogonality": orth,
        "pass": orth.pass,
    });
    let mut header = vec!["irreducible".to_string()];
    header.extend(classes.iter().cloned());
    let rows = irreps
        .iter()
        .zip(&values)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().cloned()).collect())
        .collect();
    let mut report = Report::new(orth.pass, j)
        .line(format!("{}≀S_{n}: order {}, {} classes, values over ζ_{m} (z = ζ_{m})", g.name(), t.order, classes.len()))
        .line(format!("orthogonality: {}", orth.pass));
    report.header = header;
    report.rows = rows;
    Ok(report)
}

pub fn ch_verify(g: &str, max_total: usize, budget: usize) -> Result<Report> {
    let g = group(g)?;
    let v = check_ch_multiplicative(&g, max_total, budget)?;
    let rows = v
        .failures
        .iter()
        .map(|f| vec![f.lambda.clone(), f.mu.clone()])
        .collect();
    let j = json!({
        "group": g.name(),
        "max_total": max_total,
        "pass": v.pass,
        "pairs_checked": v.pairs_checked,
        "failures": v.failures,
    });
    Ok(Report::new(v.pass, j)
        .table(&["lambda", "mu"], rows)
        .line(format!("{}: {} pairs with total ≤ {max_total}", g.name(), v.pairs_checked))
        .line(format!("failures: {}", v.failures.len())))
}

pub fn schurweyl(g: &str, n: usize, d: usize, budget: usize) -> Result<Report> {
    let g = group(g)?;
    let r = schur_weyl_report(&g, n, d, budget)?;
    let rows = r
        .rows
        .iter()
        .map(|x| vec![x.label.to_string(), x.dim_x.clone(), x.dim_r.clone(), x.kernel.to_string()])
        .collect();
    let lines = [
        format!("{}≀S_{n} against d = {d}", g.name()),
        format!("dim O^n = {}", r.dim_poly_fns),
        format!("sum of squares: {} = {} ({})", r.sum_of_squares.lhs, r.sum_of_squares.rhs, r.sum_of_squares.pass),
        format!("total dimension: {} = {} ({})", r.total_dimension.lhs, r.total_dimension.rhs, r.total_dimension.pass),
    ];
    let pass = r.pass;
    let mut report = Report::new(pass, serde_json::to_value(&r)?).table(&["label", "dim_x", "dim_r", "kernel"], rows);
    for l in lines {
        report = report.line(l);
    }
    Ok(report)
}
