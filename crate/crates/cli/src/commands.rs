use crate::json;
use crate::parse::{parse_field, parse_scalar_list, parse_series, Field};
use crate::{CliError, Command, GermArgs, Report};
use parabolic_core::closed_forms::{chi_xi, ell_iterate_quadratic, iterate_q_closed};
use parabolic_core::normal_form::{mq_evaluate, to_normal_form};
use parabolic_core::ramification::{
    is_minimally_ramified, ramification_profile, resit, MinimalityMode,
};
use parabolic_core::rings::{FiniteField, LaurentField, Ring};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries};
use parabolic_core::valuation::{cycle_valuations, newton_polygon, periodic_valuation_bound};
use serde_json::{json, Value};

/// Degree limit for exact iterates computed on behalf of an untruncated literal.
const EXACT_DEGREE_LIMIT: u64 = 4096;

/// Runs `$body` with `$r` bound to the concrete ring of `$field`.
macro_rules! with_ring {
    ($field:expr, |$r:ident| $body:expr) => {
        match $field {
            Field::Finite(ref $r) => $body,
            Field::Laurent(ref $r) => $body,
        }
    };
}

pub(crate) fn field_arg(input: &str, tprec: Option<i64>) -> Result<Field, CliError> {
    parse_field(input, tprec).map_err(|err| CliError::Parse {
        flag: "field",
        input: input.to_string(),
        err,
    })
}

/// `--field` when given, otherwise `GF(p)`.
pub(crate) fn field_or_prime(field: &Option<String>, p: Option<u64>) -> Result<Field, CliError> {
    match (field, p) {
        (Some(s), _) => field_arg(s, None),
        (None, Some(p)) => Ok(Field::Finite(FiniteField::prime(p)?)),
        (None, None) => Err(CliError::Usage("one of --field or --p is required".into())),
    }
}

pub(crate) fn finite_only(field: Field, what: &str) -> Result<FiniteField, CliError> {
    match field {
        Field::Finite(f) => Ok(f),
        Field::Laurent(_) => Err(CliError::Usage(format!("{what} needs a finite field"))),
    }
}

fn laurent_only(field: Field, what: &str) -> Result<LaurentField, CliError> {
    match field {
        Field::Laurent(k) => Ok(k),
        Field::Finite(_) => Err(CliError::Usage(format!("{what} needs a Laurent field"))),
    }
}

pub(crate) fn series_arg<R: Ring>(
    ring: &R,
    flag: &'static str,
    input: &str,
) -> Result<TruncatedSeries<R>, CliError> {
    parse_series(ring, input).map_err(|err| CliError::Parse {
        flag,
        input: input.to_string(),
        err,
    })
}

pub(crate) fn scalars_arg<R: Ring>(
    ring: &R,
    flag: &'static str,
    input: &str,
) -> Result<Vec<R::Elem>, CliError> {
    parse_scalar_list(ring, input).map_err(|err| CliError::Parse {
        flag,
        input: input.to_string(),
        err,
    })
}

pub(crate) fn germ_arg<R: Ring>(
    ring: &R,
    series: &str,
    trunc: Option<usize>,
) -> Result<ParabolicGerm<R>, CliError> {
    let s = series_arg(ring, "series", series)?;
    let s = match trunc {
        Some(n) => s.truncate(n),
        None => s,
    };
    Ok(ParabolicGerm::new(s)?)
}

/// Rejects exact literals whose `iterations`-th iterate would be too large.
fn require_manageable<R: Ring>(f: &ParabolicGerm<R>, iterations: u64) -> Result<(), CliError> {
    if f.trunc().is_some() {
        return Ok(());
    }
    let d = f.series().degree().unwrap_or(1) as u64;
    let fits = u32::try_from(iterations)
        .ok()
        .and_then(|k| d.checked_pow(k))
        .is_some_and(|deg| deg <= EXACT_DEGREE_LIMIT);
    if fits {
        Ok(())
    } else {
        Err(CliError::Usage(
            "the exact iterates of this polynomial are too large; give --N or 'mod z^N'".into(),
        ))
    }
}

fn require_truncated<R: Ring>(f: &ParabolicGerm<R>) -> Result<usize, CliError> {
    f.trunc().ok_or_else(|| {
        CliError::Usage("this command needs a truncated series; give --N or 'mod z^N'".into())
    })
}

fn trunc_json(t: Option<usize>) -> Value {
    t.map_or(Value::Null, |n| json!(n))
}

fn ramify<R: Ring>(ring: &R, field: &Field, g: &GermArgs, nmax: u32) -> Result<Report, CliError> {
    let f = germ_arg(ring, &g.series, g.trunc)?;
    require_manageable(&f, f.q() * f.p().pow(nmax))?;
    let prof = ramification_profile(&f, nmax)?;
    let (i, delta) = json::profile(ring, &prof);
    let (resit_value, resit_error) = match resit(&f) {
        Ok(r) => (json::scalar(ring, &r), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    Ok(Report::ok(json!({
        "command": "ramify",
        "field": field.literal(),
        "series": f.series().format(),
        "p": f.p(),
        "q": f.q(),
        "truncation": trunc_json(f.trunc()),
        "i": i,
        "delta": delta,
        "resit": resit_value,
        "resit_error": resit_error,
    })))
}

fn minimal<R: Ring>(
    ring: &R,
    field: &Field,
    g: &GermArgs,
    nmax: u32,
    mode: &str,
) -> Result<Report, CliError> {
    let f = germ_arg(ring, &g.series, g.trunc)?;
    let (crit, defn) = match mode {
        "criterion" => (true, false),
        "definitional" => (false, true),
        "both" => (true, true),
        other => {
            return Err(CliError::Usage(format!(
                "--mode must be criterion, definitional or both, not '{other}'"
            )))
        }
    };
    let mut doc = json!({
        "command": "minimal",
        "field": field.literal(),
        "series": f.series().format(),
        "p": f.p(),
        "q": f.q(),
    });
    let obj = doc.as_object_mut().unwrap();
    let mut verdicts = Vec::new();
    if crit {
        let v = is_minimally_ramified(&f, MinimalityMode::Criterion)?;
        obj.insert("criterion".into(), json::verdict(ring, &v));
        verdicts.push(v.verdict);
    }
    if defn {
        let v = is_minimally_ramified(&f, MinimalityMode::Definitional { n_max: nmax })?;
        obj.insert("definitional".into(), json::verdict(ring, &v));
        verdicts.push(v.verdict);
    }
    if crit && defn {
        obj.insert("agree".into(), json!(verdicts[0] == verdicts[1]));
    }
    match mq_evaluate(&f) {
        Ok(m) => obj.insert("mq".into(), json::scalar(ring, &m)),
        Err(e) => obj.insert("mq_error".into(), json!(e.to_string())),
    };
    Ok(Report::ok(doc))
}

fn normalize<R: Ring>(ring: &R, field: &Field, g: &GermArgs) -> Result<Report, CliError> {
    let f = germ_arg(ring, &g.series, g.trunc)?;
    let n = require_truncated(&f)?;
    let nf = to_normal_form(&f, n)?;
    Ok(Report::ok(json!({
        "command": "normalize",
        "field": field.literal(),
        "series": f.series().format(),
        "q": nf.q,
        "gamma": json::scalar(ring, &nf.gamma),
        "truncation": n,
        "h": nf.h.format(),
        "g": nf.g.format(),
        "a": json::scalars(ring, &nf.a_list()),
    })))
}

fn closed_form<R: Ring>(
    ring: &R,
    field: &Field,
    q: u64,
    n: Option<u32>,
    coeffs: &str,
    ell: Option<u64>,
) -> Result<Report, CliError> {
    let a = scalars_arg(ring, "coeffs", coeffs)?;
    let zero = ring.zero();
    let a1 = a.first().unwrap_or(&zero);
    let a2 = a.get(1).unwrap_or(&zero);
    let mut doc = json!({
        "command": "closed-form",
        "field": field.literal(),
        "q": q,
        "coeffs": json::scalars(ring, &a),
    });
    let obj = doc.as_object_mut().unwrap();
    if let Some(n) = n {
        let pair = chi_xi(ring, q, n, a1, a2)?;
        obj.insert("n".into(), json!(n));
        obj.insert("chi".into(), json::scalar(ring, &pair.chi));
        obj.insert("xi".into(), json::scalar(ring, &pair.xi));
    }
    obj.insert(
        "q_iterate".into(),
        json::scalars(ring, &iterate_q_closed(ring, q, a1, a2)?),
    );
    if let Some(l) = ell {
        let (c2, c3) = ell_iterate_quadratic(ring, l, a1, a2);
        obj.insert(
            "ell_iterate".into(),
            json!({"ell": l, "z2": json::scalar(ring, &c2), "z3": json::scalar(ring, &c3)}),
        );
    }
    Ok(Report::ok(doc))
}

fn bounds(k: &LaurentField, field: &Field, g: &GermArgs, n: u32) -> Result<Report, CliError> {
    let f = germ_arg(k, &g.series, g.trunc)?;
    let cert = periodic_valuation_bound(&f, n)?;
    let resit_val = match &cert.resit {
        Some(r) => r
            .valuation()?
            .map_or(Value::Null, |v| json!(format!("{v}/1"))),
        None => Value::Null,
    };
    Ok(Report::ok(json!({
        "command": "bounds",
        "field": field.literal(),
        "series": f.series().format(),
        "p": cert.p,
        "q": cert.q,
        "n": cert.n,
        "branch": cert.branch.label(),
        "delta0_valuation": format!("{}/1", cert.delta0_valuation),
        "resit": json::opt_scalar(k, cert.resit.as_ref()),
        "resit_valuation": resit_val,
        "bound_valuation": json::rational(cert.bound_valuation),
        "lemma_bound": cert.lemma_bound.map_or(Value::Null, |b| json!(json::rational(b))),
        "equality_condition": json::tri(cert.equality_condition),
    })))
}

fn cycles(
    k: &LaurentField,
    field: &Field,
    g: &GermArgs,
    n: u32,
    max_degree: usize,
) -> Result<Report, CliError> {
    let f = germ_arg(k, &g.series, g.trunc)?;
    let rep = cycle_valuations(&f, n, max_degree)?;
    Ok(Report::ok(json!({
        "command": "cycle-valuations",
        "field": field.literal(),
        "series": f.series().format(),
        "p": rep.p,
        "q": rep.q,
        "n": rep.n,
        "quotient_degree": rep.quotient.degree(),
        "quotient": rep.quotient.format(),
        "integral": rep.integral,
        "polygon": json::polygon(&rep.polygon),
        "positive_valuations": json::valuations(&rep.positive_valuations),
        "max_positive_valuation": rep.max_positive_valuation.map_or(Value::Null, |v| json!(json::rational(v))),
        "lemma_bound": json::rational(rep.lemma_bound),
        "wideg": json::wideg(rep.wideg),
        "target_wideg": rep.target,
        "equality_condition": json::tri(rep.equality_condition),
        "bound_attained": rep.bound_attained,
    })))
}

fn newton(k: &LaurentField, field: &Field, poly: &str) -> Result<Report, CliError> {
    let a = series_arg(k, "poly", poly)?;
    let np = newton_polygon(&a)?;
    Ok(Report::ok(json!({
        "command": "newton",
        "field": field.literal(),
        "poly": a.format(),
        "polygon": json::polygon(&np),
        "root_valuations": json::valuations(&np.root_valuations()),
    })))
}

pub(crate) fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Ramify { germ, nmax } => {
            let field = field_arg(&germ.field, germ.tprec)?;
            with_ring!(field, |r| ramify(r, &field, germ, *nmax))
        }
        Command::Minimal { germ, nmax, mode } => {
            let field = field_arg(&germ.field, germ.tprec)?;
            with_ring!(field, |r| minimal(r, &field, germ, *nmax, mode))
        }
        Command::Normalize { germ } => {
            let field = field_arg(&germ.field, germ.tprec)?;
            with_ring!(field, |r| normalize(r, &field, germ))
        }
        Command::ClosedForm {
            field,
            p,
            q,
            n,
            coeffs,
            ell,
        } => {
            let field = field_or_prime(field, *p)?;
            with_ring!(field, |r| closed_form(r, &field, *q, *n, coeffs, *ell))
        }
        Command::Bounds { germ, n } => {
            let field = field_arg(&germ.field, germ.tprec)?;
            let k = laurent_only(field, "bounds")?;
            bounds(&k, &field, germ, *n)
        }
        Command::CycleValuations {
            germ,
            n,
            max_degree,
        } => {
            let field = field_arg(&germ.field, germ.tprec)?;
            let k = laurent_only(field, "cycle-valuations")?;
            cycles(&k, &field, germ, *n, *max_degree)
        }
        Command::Newton { field, poly, tprec } => {
            let field = field_arg(field, *tprec)?;
            let k = laurent_only(field, "newton")?;
            newton(&k, &field, poly)
        }
        Command::Verify { .. } => unreachable!("dispatched separately"),
    }
}
