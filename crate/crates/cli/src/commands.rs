use std::fmt::Write as _;

use serde_json::{json, Value};
use zeta_core::counting::Counter;
use zeta_core::datasets::{self, IdealData};
use zeta_core::monodromy::{acampo_zeta, actual_poles, check_conjecture};
use zeta_core::motivic::{hodge_deligne_class, motivic_poincare_series, motivic_zeta, specialize_motivic};
use zeta_core::parse::parse_poly;
use zeta_core::resolution::{denef_zeta, ResolutionData};
use zeta_core::series::{fit_rational, poincare_series, transform_check, zeta_series, DenomFactor, FitOptions};
use zeta_core::{MultiPoly, NumericZeta, QPoly, QSeries, Result, ZetaError};

use crate::output::{rat, rats, Out};
use crate::{Command, Common, PolyArgs, ResArgs};

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}

fn parse_with_vars(src: &str, vars: Option<&str>) -> Result<MultiPoly> {
    match vars {
        Some(v) => {
            let names = split_list(v);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            parse_poly(src, Some(&refs))
        }
        None => parse_poly(src, None),
    }
}

fn poly(args: &PolyArgs) -> Result<MultiPoly> {
    parse_with_vars(&args.poly, args.vars.as_deref())
}

fn resolution(args: &ResArgs) -> Result<ResolutionData> {
    let res = datasets::load_resolution(&args.resolution)?;
    res.validate()
        .structural
        .first()
        .map_or(Ok(()), |p| Err(ZetaError::InvalidResolution(p.clone())))?;
    Ok(res)
}

/// "1:1,6:5" -> [(1,1), (6,5)]
pub fn parse_factors(s: &str) -> Result<Vec<DenomFactor>> {
    split_list(s)
        .iter()
        .map(|item| {
            let bad = || ZetaError::InvalidArgument(format!("factor `{item}` is not of the form N:nu"));
            let (n, nu) = item.split_once(':').ok_or_else(bad)?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            let nu: i64 = nu.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(DenomFactor::new(n, nu))
        })
        .collect()
}

pub fn run(cmd: Command, common: &Common) -> Result<(String, u8)> {
    let counter = Counter::new(common.budget);
    let (out, status) = match cmd {
        Command::Count { poly: args, levels } => (count(&counter, &args, levels)?, 0),
        Command::Jets { poly: args, levels } => (jets(&counter, &args, levels)?, 0),
        Command::Series { poly: args, levels } => series(&counter, &args, levels)?,
        Command::Fit {
            poly: args,
            levels,
            factors,
            degree_bound,
            margin,
        } => {
            let f = poly(&args)?;
            let factors = parse_factors(&factors)?;
            let z = zeta_series(&counter, &f, args.prime, levels)?;
            let opts = FitOptions { degree_bound, margin };
            (zeta_out(&fit_rational(&z, &factors, args.prime, opts)?), 0)
        }
        Command::Denef { res, prime } => (zeta_out(&denef_zeta(&resolution(&res)?, prime)?), 0),
        Command::Motivic { res, levels, prime } => (motivic(&resolution(&res)?, levels, prime)?, 0),
        Command::Specialize { res, prime } => specialize(&resolution(&res)?, prime)?,
        Command::Acampo { res, point } => (acampo(&resolution(&res)?, point.as_deref())?, 0),
        Command::Poles { res, prime } => (poles(&denef_zeta(&resolution(&res)?, prime)?), 0),
        Command::Check { res, prime } => check(&resolution(&res)?, prime)?,
        Command::Validate { res } => validate(&datasets::load_resolution(&res.resolution)?),
        Command::Measure {
            ideal,
            gens,
            order,
            vars,
            prime,
            level,
        } => {
            let data = match ideal {
                Some(name) => datasets::load_ideal(&name)?,
                None => ideal_from_flags(gens.as_deref().unwrap_or(""), order, vars.as_deref())?,
            };
            (measure(&counter, &data, prime, level)?, 0)
        }
    };
    Ok((out.render(common.format), status))
}

fn count(counter: &Counter, args: &PolyArgs, levels: u32) -> Result<Out> {
    let f = poly(args)?;
    let mut tsv = String::new();
    let mut pretty = format!("f = {f}, p = {}\n", args.prime);
    let mut rows = Vec::new();
    for m in 1..=levels {
        let n = counter.count_congruence(&f, args.prime, m)?;
        writeln!(tsv, "{m}\t{n}").unwrap();
        writeln!(pretty, "N_{m} = {n}").unwrap();
        rows.push(json!({"m": m, "count": n}));
    }
    let json = json!({"poly": f.to_string(), "prime": args.prime, "counts": rows});
    Ok(Out { tsv, json, pretty })
}

fn jets(counter: &Counter, args: &PolyArgs, levels: u32) -> Result<Out> {
    let f = poly(args)?;
    let mut tsv = String::new();
    let mut pretty = format!("f = {f}, p = {}\n", args.prime);
    let mut rows = Vec::new();
    for m in 0..=levels {
        let n = counter.count_jets(&f, args.prime, m)?;
        writeln!(tsv, "{m}\t{n}").unwrap();
        writeln!(pretty, "|L_{m}(F_{})| = {n}", args.prime).unwrap();
        rows.push(json!({"m": m, "count": n}));
    }
    let json = json!({"poly": f.to_string(), "prime": args.prime, "jets": rows});
    Ok(Out { tsv, json, pretty })
}

fn truncated(s: &QSeries) -> String {
    let body = QPoly::new(s.coeffs().to_vec()).display("t").to_string();
    format!("{body} + O(t^{})", s.precision())
}

fn series(counter: &Counter, args: &PolyArgs, levels: u32) -> Result<(Out, u8)> {
    let f = poly(args)?;
    let p = args.prime;
    let q = poincare_series(counter, &f, p, levels)?;
    let z = zeta_series(counter, &f, p, levels)?;
    let ok = transform_check(&q, &z, p, f.arity())?;
    let mut tsv = String::new();
    for (i, c) in q.coeffs().iter().enumerate() {
        writeln!(tsv, "Q\t{i}\t{c}").unwrap();
    }
    for (i, c) in z.coeffs().iter().enumerate() {
        writeln!(tsv, "Z\t{i}\t{c}").unwrap();
    }
    let verdict = if ok { "ok" } else { "FAILED" };
    writeln!(tsv, "identity\t{verdict}").unwrap();
    let pretty = format!(
        "f = {f}, p = {p}\nQ(t) = {}\nZ(t) = {}\nQ(p^-d t)(1 - t) = t(1 - Z): {verdict}\n",
        truncated(&q),
        truncated(&z)
    );
    let json = json!({
        "poly": f.to_string(),
        "prime": p,
        "poincare": rats(q.coeffs()),
        "zeta": rats(z.coeffs()),
        "identity": ok,
    });
    Ok((Out { tsv, json, pretty }, if ok { 0 } else { 1 }))
}

fn factors_json(fs: &[DenomFactor]) -> Value {
    Value::Array(fs.iter().map(|f| json!({"N": f.n, "nu": f.nu})).collect())
}

fn zeta_out(z: &NumericZeta) -> Out {
    let (num, den) = z.to_fraction();
    let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
    let reduced = format!(
        "{} / {}",
        wrap(num.display("t").to_string()),
        wrap(den.display("t").to_string())
    );
    let tsv = format!("zeta\t{z}\nreduced\t{reduced}\n");
    let pretty = format!("Z(s) = {z}\n     = {reduced}\nt = {}^-s\n", z.prime());
    let json = json!({
        "prime": z.prime(),
        "numerator": rats(z.numerator().coeffs()),
        "factors": factors_json(z.factors()),
        "reduced": {"numerator": rats(num.coeffs()), "denominator": rats(den.coeffs())},
        "text": z.to_string(),
    });
    Out { tsv, json, pretty }
}

fn motivic(res: &ResolutionData, levels: Option<usize>, prime: Option<u64>) -> Result<Out> {
    let z = motivic_zeta(res)?;
    let mut tsv = format!("zeta\t{z}\n");
    let mut pretty = format!("Z_mot(s) = {z}\nT = L^-s\n");
    let numerator: Vec<Value> = z.numerator().coeffs().iter().map(|c| json!(c.to_string())).collect();
    let mut json = json!({"numerator": numerator, "factors": factors_json(z.factors()), "text": z.to_string()});
    if let Some(m) = levels {
        let classes = motivic_poincare_series(&z, res.ambient_dim, m);
        let counts = match prime {
            Some(p) => Some(zeta_core::motivic::motivic_poincare_predict(&z, res.ambient_dim, p, m)?),
            None => None,
        };
        let mut rows = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            let hd = hodge_deligne_class(c);
            let n = counts.as_ref().map(|v| v[i].to_string());
            match &n {
                Some(n) => {
                    writeln!(tsv, "{i}\t{c}\t{hd}\t{n}").unwrap();
                    writeln!(pretty, "[L_{i}] = {c}    HD = {hd}    |L_{i}(F_p)| = {n}").unwrap();
                }
                None => {
                    writeln!(tsv, "{i}\t{c}\t{hd}").unwrap();
                    writeln!(pretty, "[L_{i}] = {c}    HD = {hd}").unwrap();
                }
            }
            let mut row = json!({"m": i, "class": c.to_string(), "hodge_deligne": hd.to_string()});
            if let Some(n) = n {
                row["count"] = json!(n);
            }
            rows.push(row);
        }
        json["jets"] = Value::Array(rows);
        if let Some(p) = prime {
            json["prime"] = json!(p);
        }
    }
    Ok(Out { tsv, json, pretty })
}

fn specialize(res: &ResolutionData, prime: u64) -> Result<(Out, u8)> {
    let special = specialize_motivic(&motivic_zeta(res)?, prime)?;
    let denef = denef_zeta(res, prime)?;
    let matched = special == denef;
    let word = if matched { "MATCH" } else { "MISMATCH" };
    let mut tsv = format!("{word}\nzeta\t{special}\n");
    let mut pretty = format!("{word} at p = {prime}\nZ(s) = {special}\n");
    if !matched {
        writeln!(tsv, "denef\t{denef}").unwrap();
        writeln!(pretty, "Denef: {denef}").unwrap();
    }
    let json = json!({
        "prime": prime,
        "match": matched,
        "specialized": special.to_string(),
        "denef": denef.to_string(),
    });
    Ok((Out { tsv, json, pretty }, if matched { 0 } else { 1 }))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn acampo(res: &ResolutionData, point: Option<&str>) -> Result<Out> {
    let points: Vec<String> = match point {
        Some(p) => vec![p.to_string()],
        None => res.fiber_points.keys().cloned().collect(),
    };
    let mut tsv = String::new();
    let mut pretty = String::new();
    let mut rows = Vec::new();
    for name in points {
        let z = acampo_zeta(res, &name)?;
        let orders = z.eigenvalue_orders();
        writeln!(tsv, "{name}\t{z}\t{}", join(&orders)).unwrap();
        writeln!(pretty, "zeta_{name}(T) = {z}\n  eigenvalue orders: {}", join(&orders)).unwrap();
        let factors: Vec<Value> = z.factors().iter().map(|(a, e)| json!({"N": a, "exponent": e})).collect();
        rows.push(json!({"point": name, "factors": factors, "eigenvalue_orders": orders, "text": z.to_string()}));
    }
    Ok(Out {
        tsv,
        json: Value::Array(rows),
        pretty,
    })
}

fn poles(z: &NumericZeta) -> Out {
    let report = actual_poles(z);
    let rows: Vec<Value> = report
        .entries
        .iter()
        .map(|e| json!({"real_part": rat(&e.real_part), "multiplicity": e.multiplicity}))
        .collect();
    let mut pretty = format!("actual poles of Z at p = {}\n", z.prime());
    for e in &report.entries {
        writeln!(pretty, "  Re(s) = {}  multiplicity {}", e.real_part, e.multiplicity).unwrap();
    }
    Out {
        tsv: report.to_string(),
        json: json!({"prime": z.prime(), "poles": rows}),
        pretty,
    }
}

fn check(res: &ResolutionData, prime: u64) -> Result<(Out, u8)> {
    let report = check_conjecture(res, &denef_zeta(res, prime)?)?;
    let passed = report.passed();
    let mut tsv = String::from("pole\tmultiplicity\td\twitness\n");
    let mut rows = Vec::new();
    for v in &report.verdicts {
        let w = v.witness.clone().unwrap_or_else(|| "FAIL".into());
        writeln!(tsv, "{}\t{}\t{}\t{w}", v.pole, v.multiplicity, v.order).unwrap();
        rows.push(json!({
            "pole": rat(&v.pole),
            "multiplicity": v.multiplicity,
            "order": v.order,
            "witness": v.witness,
        }));
    }
    writeln!(tsv, "candidates\t{}", join(&report.candidates)).unwrap();
    writeln!(tsv, "actual\t{}", join(&report.actual)).unwrap();
    writeln!(tsv, "result\t{}", if passed { "PASS" } else { "FAIL" }).unwrap();
    let orders: serde_json::Map<String, Value> =
        report.orders.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let json = json!({
        "prime": prime,
        "poles": rows,
        "candidates": rats(&report.candidates),
        "actual": rats(&report.actual),
        "eigenvalue_orders": orders,
        "pass": passed,
    });
    let out = Out {
        tsv,
        json,
        pretty: report.to_string(),
    };
    Ok((out, if passed { 0 } else { 1 }))
}

fn validate(res: &ResolutionData) -> (Out, u8) {
    let report = res.validate();
    let mut tsv = String::new();
    for s in &report.structural {
        writeln!(tsv, "structural\t{s}").unwrap();
    }
    for s in &report.consistency {
        writeln!(tsv, "consistency\t{s}").unwrap();
    }
    let strata: Vec<String> = report
        .nonzero_strata
        .iter()
        .map(|k| format!("{{{}}}", k.join(",")))
        .collect();
    writeln!(tsv, "candidate_poles\t{}", join(&report.candidate_poles)).unwrap();
    writeln!(tsv, "nonzero_strata\t{}", strata.join(" ")).unwrap();
    let verdict = if report.ok() { "ok" } else { "invalid" };
    writeln!(tsv, "result\t{verdict}").unwrap();
    let json = json!({
        "structural": report.structural,
        "consistency": report.consistency,
        "candidate_poles": rats(&report.candidate_poles),
        "nonzero_strata": report.nonzero_strata,
        "ok": report.ok(),
    });
    let mut pretty = String::new();
    for s in report.structural.iter().chain(&report.consistency) {
        writeln!(pretty, "problem: {s}").unwrap();
    }
    writeln!(pretty, "candidate poles: {}", join(&report.candidate_poles)).unwrap();
    writeln!(pretty, "nonzero strata: {}", strata.join(" ")).unwrap();
    writeln!(pretty, "{verdict}").unwrap();
    (Out { tsv, json, pretty }, if report.ok() { 0 } else { 1 })
}

fn ideal_from_flags(gens: &str, order: Option<u32>, vars: Option<&str>) -> Result<IdealData> {
    let order = order.ok_or_else(|| ZetaError::InvalidArgument("--gens needs --order".into()))?;
    let sources = split_list(gens);
    if sources.is_empty() {
        return Err(ZetaError::InvalidArgument("no generators given".into()));
    }
    let parsed = sources
        .iter()
        .map(|g| parse_with_vars(g, vars))
        .collect::<Result<Vec<_>>>()?;
    let mut names: Vec<String> = Vec::new();
    for g in &parsed {
        for v in g.vars() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
    }
    let generators = parsed.iter().map(|g| g.with_vars(&names)).collect::<Result<Vec<_>>>()?;
    Ok(IdealData {
        ambient_dim: names.len(),
        generators,
        order,
    })
}

fn measure(counter: &Counter, data: &IdealData, prime: u64, level: Option<u32>) -> Result<Out> {
    let level = level.unwrap_or(data.order);
    let m = counter.ideal_order_measure(&data.generators, data.order, prime, level)?;
    let gens = join(&data.generators);
    let tsv = format!("{level}\t{}\n", m.value);
    let pretty = format!(
        "mu(ord_t({gens}) = {}) = {} at p = {prime}, level {level}\n",
        data.order, m.value
    );
    let json = json!({
        "generators": data.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "order": data.order,
        "prime": prime,
        "level": level,
        "measure": rat(&m.value),
    });
    Ok(Out { tsv, json, pretty })
}
