use std::collections::BTreeSet;

use glr_core::generalized::{evaluate, f_sun, f_sun_partitions, level1_f, ChainKind, ChainProblem, LevelOneSpec};
use glr_core::hive::{build_linear_system, count_sun_hives, lp_feasible_with, positivity, Backend};
use glr_core::horn::{
    facets_2_6_generated, facets_2_6_golden, factorization_check, generate_t, saturation_report, t_set_with_budget,
    tuple_count, underline_lambda, wall_search, HornInequality, RationalTuple, SubsetTuple, Variant,
};
use glr_core::lr::{lr_coefficient, lr_hive_count, rectangular_lr, LrTriple};
use glr_core::partitions::{partitions_in_box, IntSequence, Partition};
use glr_core::quiver::{dim_si_sun, weight_sigma1, SunQuiver};
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::problem::{subsets_json, variant_name, CliError, Kind, ProblemFile};

pub struct Options {
    pub cross_check: bool,
    pub variant: Option<Variant>,
    pub budget: u128,
}

/// A finished report; `disagreement` marks a failed consistency check.
pub struct Report {
    pub body: Map<String, Value>,
    pub disagreement: bool,
}

impl Report {
    fn new(p: &ProblemFile) -> Self {
        let mut body = Map::new();
        body.insert("command".into(), json!(p.kind.name()));
        body.insert("input".into(), p.canonical());
        Report { body, disagreement: false }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.into(), v);
    }

    fn cross(&mut self, methods: Map<String, Value>, agree: bool) {
        self.disagreement |= !agree;
        self.set("cross_check", json!({ "agree": agree, "methods": methods }));
    }

    fn check(&mut self, passed: bool) {
        self.disagreement |= !passed;
        self.set("passed", json!(passed));
    }
}

pub fn run(p: &ProblemFile, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new(p);
    match p.kind {
        Kind::Lr => lr(p, opts, &mut r)?,
        Kind::FSun => chain(p, opts, ChainKind::FSun, &mut r)?,
        Kind::F1 => chain(p, opts, ChainKind::F1, &mut r)?,
        Kind::F2 => chain(p, opts, ChainKind::F2, &mut r)?,
        Kind::Positivity => positive(p, opts, &mut r)?,
        Kind::Cone => cone(p, opts, &mut r)?,
        Kind::HornGen => horn_gen(p, opts, &mut r)?,
        Kind::Stretch => stretch(p, opts, &mut r)?,
        Kind::Factorize => factorize(p, opts, &mut r)?,
        Kind::Facets26 => facets26(&mut r)?,
        Kind::Selftest => selftest(&mut r),
    }
    Ok(r)
}

fn variant(p: &ProblemFile, opts: &Options) -> Variant {
    opts.variant.or(p.variant).unwrap_or(Variant::EqualOne)
}

fn check_budget(n: usize, m: usize, budget: u128) -> Result<(), CliError> {
    let needed = tuple_count(n, m).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(glr_core::Error::BudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

fn partitions(seqs: &[IntSequence]) -> Option<Vec<Partition>> {
    seqs.iter().map(IntSequence::to_partition).collect()
}

fn lr(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    let s = p.sequences()?;
    let t = LrTriple::new(s[0].clone(), s[1].clone(), s[2].clone(), p.n)?;
    let value = lr_coefficient(&t)?;
    r.set("value", json!(value));
    r.set("method", json!("tableaux"));
    if opts.cross_check {
        let hives = lr_hive_count(&t)?;
        let mut m = Map::new();
        m.insert("tableaux".into(), json!(value));
        m.insert("hives".into(), json!(hives));
        r.cross(m, hives == value);
    }
    Ok(())
}

fn sun_oracles(seqs: &[IntSequence], n: usize, m: usize) -> Result<Option<Map<String, Value>>, CliError> {
    if partitions(seqs).is_none() {
        return Ok(None);
    }
    let mut out = Map::new();
    out.insert("sun_hives".into(), json!(count_sun_hives(seqs, n, m)?));
    let q = SunQuiver::new(n, m / 2)?;
    out.insert("dim_si".into(), json!(dim_si_sun(&q, &weight_sigma1(seqs, n)?)?));
    out.insert("lp_positive".into(), json!(positivity(seqs, n, m)?));
    Ok(Some(out))
}

fn chain(p: &ProblemFile, opts: &Options, kind: ChainKind, r: &mut Report) -> Result<(), CliError> {
    let seqs = p.sequences()?;
    let cp = ChainProblem::new(kind, p.n, seqs.clone())?;
    let value = evaluate(&cp)?;
    r.set("value", json!(value));
    r.set("method", json!("chain_sum"));
    if !opts.cross_check {
        return Ok(());
    }
    let mut methods = Map::new();
    methods.insert("chain_sum".into(), json!(value));
    let agree = match kind {
        ChainKind::FSun => match sun_oracles(&seqs, p.n, p.m)? {
            Some(o) => {
                let ok = o["sun_hives"] == json!(value)
                    && o["dim_si"] == json!(value)
                    && o["lp_positive"] == json!(value > 0);
                methods.extend(o);
                ok
            }
            None => {
                methods.insert("note".into(), json!("negative entries: only the chain sum applies"));
                true
            }
        },
        ChainKind::F2 if p.m == 3 => {
            let c = lr_coefficient(&LrTriple::new(seqs[0].clone(), seqs[2].clone(), seqs[1].clone(), p.n)?)?;
            methods.insert("lr".into(), json!(c));
            c == value
        }
        _ => {
            methods.insert("note".into(), json!("no independent method for this shape"));
            true
        }
    };
    r.cross(methods, agree);
    Ok(())
}

fn horn_check(t: &RationalTuple, v: Variant, budget: u128) -> Result<(bool, Option<HornInequality>), CliError> {
    if !t.imbalance().is_zero() {
        return Ok((false, None));
    }
    let tuples = t_set_with_budget(t.n(), t.m(), v, budget)?;
    let violated = tuples.iter().map(|i| HornInequality::new(i.clone())).find(|h| h.slack(t.lambdas()).is_negative());
    Ok((violated.is_none(), violated))
}

fn positive(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    let seqs = p.sequences()?;
    let Some(ps) = partitions(&seqs) else {
        return Err(CliError::new("invalid_input", "positivity needs partitions (nonnegative entries)"));
    };
    let pos = positivity(&seqs, p.n, p.m)?;
    r.set("positive", json!(pos));
    r.set("method", json!("lp_simplex"));
    if opts.cross_check {
        let f = f_sun_partitions(&ps);
        let mut methods = Map::new();
        methods.insert("lp_simplex".into(), json!(pos));
        methods.insert("chain_sum_nonzero".into(), json!(f > 0));
        let mut agree = pos == (f > 0);
        if tuple_count(p.n, p.m).is_some_and(|c| c <= opts.budget) {
            let t = RationalTuple::from_sequences(p.n, &seqs)?;
            let (inside, _) = horn_check(&t, Variant::EqualOne, opts.budget)?;
            methods.insert("in_cone".into(), json!(inside));
            agree &= inside == pos;
        }
        let s = build_linear_system(&seqs, p.n, p.m)?;
        if s.var_count() <= 32 {
            let fm = lp_feasible_with(&s, Backend::FourierMotzkin);
            methods.insert("lp_fourier_motzkin".into(), json!(fm));
            agree &= fm == pos;
        }
        r.cross(methods, agree);
    }
    Ok(())
}

fn cone(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    let t = RationalTuple::new(p.n, p.lambdas.clone())?;
    let v = variant(p, opts);
    let (inside, violated) = horn_check(&t, v, opts.budget)?;
    r.set("in_cone", json!(inside));
    r.set("balanced", json!(t.imbalance().is_zero()));
    r.set("variant", json!(variant_name(v)));
    r.set("violated", violated.map_or(Value::Null, |h| json!(h.to_string())));
    if opts.cross_check {
        let other = match v {
            Variant::EqualOne => Variant::Nonzero,
            Variant::Nonzero => Variant::EqualOne,
        };
        let (inside_other, _) = horn_check(&t, other, opts.budget)?;
        let mut methods = Map::new();
        methods.insert(format!("in_cone_{}", variant_name(v)), json!(inside));
        methods.insert(format!("in_cone_{}", variant_name(other)), json!(inside_other));
        let mut agree = inside == inside_other;
        let integral = p.lambdas.iter().flatten().all(|x| x.is_integer() && !x.is_negative());
        if integral {
            let ps = partitions(&p.sequences()?).expect("nonnegative integral sequences are partitions");
            let f = f_sun_partitions(&ps);
            methods.insert("chain_sum_nonzero".into(), json!(f > 0));
            agree &= inside == (f > 0);
        }
        r.cross(methods, agree);
    }
    Ok(())
}

fn tuple_json(t: &SubsetTuple) -> Value {
    json!({ "subsets": subsets_json(t), "inequality": HornInequality::new(t.clone()).to_string() })
}

fn horn_gen(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = variant(p, opts);
    let tuples = generate_t(p.n, p.m, v, opts.budget)?;
    r.set("variant", json!(variant_name(v)));
    r.set("count", json!(tuples.len()));
    r.set("tuples", Value::Array(tuples.iter().map(tuple_json).collect()));
    if opts.cross_check {
        let mut bad = Vec::new();
        for t in &tuples {
            let under = underline_lambda(t);
            let f = count_sun_hives(&under, p.n, p.m)?;
            let ok = match v {
                Variant::EqualOne => f == 1,
                Variant::Nonzero => f != 0,
            };
            if !ok {
                bad.push(subsets_json(t));
            }
        }
        let mut methods = Map::new();
        methods.insert("sun_hive_recount_failures".into(), Value::Array(bad.clone()));
        r.cross(methods, bad.is_empty());
    }
    Ok(())
}

fn stretch(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    let seqs = p.sequences()?;
    let cp = ChainProblem::new(ChainKind::FSun, p.n, seqs)?;
    let r_max = p.r_max.or(p.n_max).unwrap_or(3).max(2);
    let rep = saturation_report(&cp, r_max)?;
    r.set("values", json!(rep.values));
    r.set("witnesses", json!(rep.witnesses));
    r.check(rep.passed);
    if opts.cross_check {
        let mut hives = Vec::new();
        for k in 1..=i64::from(r_max) {
            let s = cp.stretched(k)?;
            hives.push(match partitions(&s.lambdas) {
                Some(_) => count_sun_hives(&s.lambdas, p.n, p.m)?,
                None => f_sun(&s)?,
            });
        }
        let mut methods = Map::new();
        methods.insert("chain_sum".into(), json!(rep.values));
        methods.insert("sun_hives".into(), json!(hives));
        r.cross(methods, hives == rep.values);
    }
    Ok(())
}

fn factorize(p: &ProblemFile, opts: &Options, r: &mut Report) -> Result<(), CliError> {
    check_budget(p.n, p.m, opts.budget)?;
    let cp = ChainProblem::new(ChainKind::FSun, p.n, p.sequences()?)?;
    let walls = match &p.subsets {
        Some(t) => vec![t.clone()],
        None => wall_search(&cp)?,
    };
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    for w in &walls {
        let rep = factorization_check(&cp, w)?;
        if !rep.passed {
            witnesses.push(subsets_json(w));
        }
        values.push(json!({
            "subsets": subsets_json(w),
            "f": rep.values[0],
            "f_star": rep.values[1],
            "f_sharp": rep.values[2],
            "star": rep.star.iter().map(|x| x.parts().to_vec()).collect::<Vec<_>>(),
            "sharp": rep.sharp.iter().map(|x| x.parts().to_vec()).collect::<Vec<_>>(),
        }));
    }
    r.set("values", Value::Array(values));
    r.set("witnesses", Value::Array(witnesses.clone()));
    r.check(witnesses.is_empty());
    Ok(())
}

fn facets26(r: &mut Report) -> Result<(), CliError> {
    let g = facets_2_6_golden();
    let generated: BTreeSet<SubsetTuple> = facets_2_6_generated()?.into_iter().collect();
    let closure = g.closure();
    let q = SunQuiver::new(2, 3)?;
    let entries: Vec<Value> = g
        .tuples()
        .iter()
        .map(|t| {
            let b = glr_core::quiver::beta_from_subsets(t, &q).expect("golden shape");
            json!({ "subsets": subsets_json(t), "inequality": HornInequality::new(t.clone()).to_string(), "beta1": g.printed(&b) })
        })
        .collect();
    r.set("schemas", json!(entries.len()));
    r.set("closure_size", json!(closure.len()));
    r.set("generated_size", json!(generated.len()));
    r.set("inequalities", Value::Array(entries));
    r.check(generated == closure);
    Ok(())
}

struct Suite {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

fn tuples_of(shapes: &[Partition], m: usize) -> Vec<Vec<Partition>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                shapes.iter().map(move |s| {
                    let mut t = t.clone();
                    t.push(s.clone());
                    t
                })
            })
            .collect()
    })
}

fn suite_oracles() -> Suite {
    let mut cases = 0;
    for (n, entries) in [(1usize, 2u32), (2, 1)] {
        for ps in tuples_of(&partitions_in_box(n, entries), 4) {
            let seqs: Vec<IntSequence> = ps.iter().map(IntSequence::from).collect();
            let f = f_sun_partitions(&ps);
            let found = sun_oracles(&seqs, n, 4).ok().flatten();
            let ok = found.is_some_and(|o| {
                o["sun_hives"] == json!(f) && o["dim_si"] == json!(f) && o["lp_positive"] == json!(f > 0)
            });
            if !ok {
                return Suite { name: "sun_oracles", cases, failure: Some(format!("n={n} {ps:?}")) };
            }
            cases += 1;
        }
    }
    Suite { name: "sun_oracles", cases, failure: None }
}

fn suite_lr() -> Suite {
    let shapes = partitions_in_box(2, 3);
    let mut cases = 0;
    for a in &shapes {
        for b in &shapes {
            for c in &partitions_in_box(2, 6) {
                let t = LrTriple::from_partitions(a, b, c, 2);
                if lr_coefficient(&t).ok() != lr_hive_count(&t).ok() {
                    return Suite { name: "lr_tableaux_vs_hives", cases, failure: Some(format!("{a} {b} {c}")) };
                }
                cases += 1;
            }
        }
        for c in &shapes {
            let direct = lr_coefficient(&LrTriple::from_partitions(a, c, &Partition::rectangle(3, 2), 2)).ok();
            if direct != Some(rectangular_lr(a, c, 3, 2)) {
                return Suite { name: "lr_tableaux_vs_hives", cases, failure: Some(format!("rectangle {a} {c}")) };
            }
            cases += 1;
        }
    }
    Suite { name: "lr_tableaux_vs_hives", cases, failure: None }
}

fn suite_f2() -> Suite {
    let shapes = partitions_in_box(2, 2);
    let mut cases = 0;
    for a in &shapes {
        for b in &partitions_in_box(2, 4) {
            for c in &shapes {
                let f = ChainProblem::from_partitions(ChainKind::F2, 2, &[a.clone(), b.clone(), c.clone()])
                    .and_then(|p| evaluate(&p));
                if f.ok() != lr_coefficient(&LrTriple::from_partitions(a, c, b, 2)).ok() {
                    return Suite { name: "f2_is_lr", cases, failure: Some(format!("{a} {b} {c}")) };
                }
                cases += 1;
            }
        }
    }
    Suite { name: "f2_is_lr", cases, failure: None }
}

fn suite_level1() -> Suite {
    let mut cases = 0;
    for code in 0..81usize {
        let jumps: Vec<usize> = (0..4).map(|i| code / 3usize.pow(i) % 3).collect();
        let spec = LevelOneSpec::new(jumps.clone());
        for big_n in 1..=3u32 {
            let f = spec.problem(big_n, 2).and_then(|p| f_sun(&p));
            if f.ok() != level1_f(&spec, big_n.into(), 4).ok() {
                return Suite { name: "level1_closed_form", cases, failure: Some(format!("j={jumps:?} N={big_n}")) };
            }
            cases += 1;
        }
    }
    Suite { name: "level1_closed_form", cases, failure: None }
}

fn suite_facets() -> Suite {
    let g = facets_2_6_golden();
    let ok = facets_2_6_generated().is_ok_and(|v| v.into_iter().collect::<BTreeSet<_>>() == g.closure());
    Suite { name: "facets_2_6", cases: g.entries.len(), failure: (!ok).then(|| "generated facets differ".into()) }
}

fn selftest(r: &mut Report) {
    let suites = [suite_oracles(), suite_lr(), suite_f2(), suite_level1(), suite_facets()];
    let passed = suites.iter().all(|s| s.failure.is_none());
    let list: Vec<Value> = suites
        .iter()
        .map(|s| json!({ "name": s.name, "cases": s.cases, "passed": s.failure.is_none(), "failure": s.failure }))
        .collect();
    r.set("suites", Value::Array(list));
    r.check(passed);
}
