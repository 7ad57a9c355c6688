use crate::checks::{self, CaseOutcome};
use crate::commands::{field_or_prime, finite_only, germ_arg, scalars_arg, series_arg};
use crate::sample::{self, PQ_PAIRS};
use crate::{CliError, Report, SweepArgs, VerifyCommand};
use parabolic_core::closed_forms::{main_lemma_window, reduced_form_series};
use parabolic_core::rings::{FiniteField, Ring};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

type CaseResult = parabolic_core::error::Result<CaseOutcome>;

/// One sweep configuration: its label in the output and its stream block.
struct Config {
    label: Value,
    id: u64,
}

/// Runs `cases` seeded cases per configuration in parallel and aggregates them in case order.
fn sweep<F>(name: &str, sw: &SweepArgs, configs: Vec<Config>, case: F) -> Result<Report, CliError>
where
    F: Fn(&Config, &mut ChaCha8Rng) -> CaseResult + Sync,
{
    let seed = sw.seed.ok_or_else(|| {
        CliError::Usage("random sweeps need --seed (or give an explicit input)".into())
    })?;
    let mut summaries = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    for cfg in &configs {
        let outcomes: Vec<CaseResult> = (0..sw.cases as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample::rng_for(seed, (cfg.id << 32) | i);
                case(cfg, &mut rng)
            })
            .collect();
        let mut failures = Vec::new();
        let mut ok = 0;
        for (i, out) in outcomes.into_iter().enumerate() {
            let out = out?;
            if out.pass {
                ok += 1;
            } else {
                let mut detail = out.detail;
                detail
                    .as_object_mut()
                    .map(|o| o.insert("case".into(), json!(i)));
                failures.push(detail);
            }
        }
        passed += ok;
        failed += sw.cases - ok;
        let mut summary = cfg.label.clone();
        let obj = summary.as_object_mut().unwrap();
        obj.insert("cases".into(), json!(sw.cases));
        obj.insert("passed".into(), json!(ok));
        obj.insert("failures".into(), Value::Array(failures));
        summaries.push(summary);
    }
    Ok(Report {
        doc: json!({
            "command": format!("verify {name}"),
            "seed": seed,
            "cases_per_config": sw.cases,
            "configs": summaries,
            "passed": passed,
            "failed": failed,
            "pass": failed == 0,
        }),
        pass: failed == 0,
    })
}

fn single(name: &str, field: &FiniteField, head: Value, out: CaseOutcome) -> Report {
    let mut doc = json!({
        "command": format!("verify {name}"),
        "field": crate::parse::Field::Finite(*field).literal(),
    });
    let obj = doc.as_object_mut().unwrap();
    if let Value::Object(head) = head {
        obj.extend(head);
    }
    if let Value::Object(detail) = out.detail {
        obj.extend(detail);
    }
    obj.insert("pass".into(), json!(out.pass));
    Report {
        doc,
        pass: out.pass,
    }
}

fn pairs(p: Option<u64>, q: Option<u64>) -> Vec<(u64, u64)> {
    PQ_PAIRS
        .iter()
        .copied()
        .filter(|&(pp, qq)| p.is_none_or(|x| x == pp) && q.is_none_or(|x| x == qq))
        .collect()
}

fn prime(p: u64) -> FiniteField {
    FiniteField::prime(p).expect("sweep primes are prime")
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required with an explicit input")))
}

pub(crate) fn run(cmd: &VerifyCommand) -> Result<Report, CliError> {
    match cmd {
        VerifyCommand::MainLemma {
            field,
            p,
            q,
            n,
            coeffs,
            trunc,
            sweep: sw,
        } => {
            if let Some(coeffs) = coeffs {
                let f = finite_only(field_or_prime(field, *p)?, "verify main-lemma")?;
                let (q, n) = (need(*q, "q")?, need(*n, "n")?);
                let gamma = f.root_of_unity(q)?;
                let a = scalars_arg(&f, "coeffs", coeffs)?;
                let window = main_lemma_window(f.p(), q, n);
                let out = checks::main_lemma(&f, &gamma, n, &a, trunc.unwrap_or(window))?;
                return Ok(single(
                    "main-lemma",
                    &f,
                    json!({"p": f.p(), "q": q, "n": n}),
                    out,
                ));
            }
            let levels: Vec<u32> = n.map_or(vec![1, 2], |n| vec![n]);
            let mut configs = Vec::new();
            for (idx, (pp, qq)) in pairs(*p, *q).into_iter().enumerate() {
                for &nn in &levels {
                    configs.push(Config {
                        label: json!({"p": pp, "q": qq, "n": nn}),
                        id: (idx as u64) << 8 | nn as u64,
                    });
                }
            }
            sweep("main-lemma", sw, configs, |cfg, rng| {
                let (pp, qq, nn) = label3(&cfg.label);
                let f = prime(pp);
                let window = main_lemma_window(pp, qq, nn as u32);
                let a = sample::elements(&f, (window - 2) / qq as usize, rng);
                checks::main_lemma(&f, &f.root_of_unity(qq)?, nn as u32, &a, window)
            })
        }
        VerifyCommand::Semiconj {
            field,
            p,
            q,
            coeffs,
            m,
            trunc,
            sweep: sw,
        } => {
            if let Some(coeffs) = coeffs {
                let f = finite_only(field_or_prime(field, *p)?, "verify semiconj")?;
                let q = need(*q, "q")?;
                let gamma = f.root_of_unity(q)?;
                let a = scalars_arg(&f, "coeffs", coeffs)?;
                let n = trunc.unwrap_or(6 * q as usize + 2);
                let g = ParabolicGerm::new(reduced_form_series(&f, &gamma, q, &a, n))?;
                let ms = m.map_or(vec![q, q * f.p()], |m| vec![m]);
                let results: Vec<CaseOutcome> = ms
                    .iter()
                    .map(|&m| checks::semiconjugacy(&g, m))
                    .collect::<Result<_, _>>()?;
                let pass = results.iter().all(|r| r.pass);
                let doc = json!({
                    "command": "verify semiconj",
                    "field": crate::parse::Field::Finite(f).literal(),
                    "q": q,
                    "series": g.series().format(),
                    "results": results.into_iter().map(|r| r.detail).collect::<Vec<_>>(),
                    "pass": pass,
                });
                return Ok(Report { doc, pass });
            }
            let mut configs = Vec::new();
            for (idx, (pp, qq)) in pairs(*p, *q).into_iter().enumerate() {
                for (j, mm) in m
                    .map_or(vec![qq, qq * pp], |m| vec![m])
                    .into_iter()
                    .enumerate()
                {
                    configs.push(Config {
                        label: json!({"p": pp, "q": qq, "m": mm}),
                        id: (idx as u64) << 8 | j as u64,
                    });
                }
            }
            sweep("semiconj", sw, configs, |cfg, rng| {
                let (pp, qq, mm) = label3(&cfg.label);
                let f = prime(pp);
                let n = trunc.unwrap_or(6 * qq as usize + 2);
                let a = sample::elements(&f, (n - 2) / qq as usize, rng);
                let g =
                    ParabolicGerm::new(reduced_form_series(&f, &f.root_of_unity(qq)?, qq, &a, n))?;
                checks::semiconjugacy(&g, mm)
            })
        }
        VerifyCommand::DeltaTower {
            field,
            p,
            series,
            trunc,
            sweep: sw,
        } => {
            if let Some(series) = series {
                let f = finite_only(field_or_prime(field, *p)?, "verify delta-tower")?;
                let s = series_arg(&f, "series", series)?;
                let s = trunc.map_or(s.clone(), |n| s.truncate(n));
                if s.trunc().is_none() {
                    return Err(CliError::Usage("give --N or 'mod z^N'".into()));
                }
                let out = checks::delta_tower_identity(&s)?;
                return Ok(single("delta-tower", &f, json!({"p": f.p()}), out));
            }
            let primes: Vec<u64> = p.map_or(vec![2, 3, 5], |p| vec![p]);
            let configs = primes
                .iter()
                .map(|&pp| Config {
                    label: json!({"p": pp}),
                    id: pp,
                })
                .collect();
            sweep("delta-tower", sw, configs, |cfg, rng| {
                let f = prime(cfg.label["p"].as_u64().unwrap());
                let n = trunc.unwrap_or(24);
                let mut coeffs = vec![f.zero(), sample::nonzero_element(&f, rng)];
                coeffs.extend(sample::elements(&f, n - 2, rng));
                checks::delta_tower_identity(&TruncatedSeries::new(f, coeffs, n))
            })
        }
        VerifyCommand::QuasiInvariance {
            field,
            p,
            q,
            series,
            h,
            nmax,
            trunc,
            sweep: sw,
        } => {
            if let Some(series) = series {
                let f = finite_only(field_or_prime(field, *p)?, "verify quasi-invariance")?;
                let h = h
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("--h is required with --series".into()))?;
                let germ = germ_arg(&f, series, *trunc)?;
                let hs = series_arg(&f, "h", h)?;
                let out = checks::quasi_invariance(&germ, &hs, *nmax)?;
                return Ok(single(
                    "quasi-invariance",
                    &f,
                    json!({"p": f.p(), "q": germ.q(), "nmax": nmax}),
                    out,
                ));
            }
            let configs = pairs(*p, *q)
                .into_iter()
                .enumerate()
                .map(|(idx, (pp, qq))| Config {
                    label: json!({"p": pp, "q": qq}),
                    id: idx as u64,
                })
                .collect();
            let nmax = *nmax;
            sweep("quasi-invariance", sw, configs, |cfg, rng| {
                let (pp, qq) = (
                    cfg.label["p"].as_u64().unwrap(),
                    cfg.label["q"].as_u64().unwrap(),
                );
                let f = prime(pp);
                let n = trunc.unwrap_or(sample::quasi_truncation(pp, qq, nmax));
                let (germ, _) = sample::germ_with_exact_levels(&f, qq, n, nmax, rng);
                let hs = sample::tangent_change(&f, n, rng);
                checks::quasi_invariance(&germ, &hs, nmax)
            })
        }
    }
}

fn label3(v: &Value) -> (u64, u64, u64) {
    let vals: Vec<u64> = v
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_u64().unwrap())
        .collect();
    (vals[0], vals[1], vals[2])
}
