//! JSON renderings. Scalars are literals, valuations are `"num/den"` strings.

use parabolic_core::closed_forms::Mismatch;
use parabolic_core::ramification::{
    LowerRamification, MinimalityVerdict, MinimalityWitness, RamificationProfile,
};
use parabolic_core::rings::{Ring, TriState};
use parabolic_core::series::Wideg;
use parabolic_core::valuation::{NewtonPolygon, Rational};
use serde_json::{json, Value};

pub fn rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn scalar<R: Ring>(ring: &R, e: &R::Elem) -> Value {
    Value::String(ring.format(e))
}

pub fn scalars<R: Ring>(ring: &R, es: &[R::Elem]) -> Value {
    Value::Array(es.iter().map(|e| scalar(ring, e)).collect())
}

pub fn opt_scalar<R: Ring>(ring: &R, e: Option<&R::Elem>) -> Value {
    e.map_or(Value::Null, |e| scalar(ring, e))
}

pub fn ramification(i: LowerRamification) -> Value {
    match i {
        LowerRamification::Finite(k) => json!(k),
        other => Value::String(other.to_string()),
    }
}

pub fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Indeterminate => "indeterminate",
    }
}

pub fn wideg(w: Wideg) -> Value {
    match w {
        Wideg::Finite(k) => json!(k),
        Wideg::Infinite => json!("inf"),
        Wideg::Indeterminate => json!("indeterminate"),
    }
}

pub fn mismatch<R: Ring>(ring: &R, m: &Option<Mismatch<R::Elem>>) -> Value {
    match m {
        None => Value::Null,
        Some(m) => json!({
            "exponent": m.exponent,
            "expected": scalar(ring, &m.expected),
            "actual": scalar(ring, &m.actual),
        }),
    }
}

pub fn profile<R: Ring>(ring: &R, prof: &RamificationProfile<R>) -> (Value, Value) {
    let i = prof.entries.iter().map(|e| ramification(e.i)).collect();
    let delta = prof
        .entries
        .iter()
        .map(|e| opt_scalar(ring, e.delta.as_ref()))
        .collect();
    (Value::Array(i), Value::Array(delta))
}

pub fn verdict<R: Ring>(ring: &R, v: &MinimalityVerdict<R::Elem>) -> Value {
    let witness = match &v.witness {
        MinimalityWitness::AllLevelsMinimal { n_max } => {
            json!({"kind": "all-levels-minimal", "n_max": n_max})
        }
        MinimalityWitness::LevelNotMinimal { n, i, least } => {
            json!({"kind": "level-not-minimal", "n": n, "i": ramification(*i), "least": least})
        }
        MinimalityWitness::LevelZeroNotMinimal { i0 } => {
            json!({"kind": "level-zero-not-minimal", "i0": i0})
        }
        MinimalityWitness::ResitZero => json!({"kind": "resit-zero"}),
        MinimalityWitness::ResitOne => json!({"kind": "resit-one"}),
        MinimalityWitness::ResitNonDegenerate { resit } => {
            json!({"kind": "resit-non-degenerate", "resit": scalar(ring, resit)})
        }
        MinimalityWitness::Undecided { reason } => json!({"kind": "undecided", "reason": reason}),
    };
    json!({"verdict": tri(v.verdict), "witness": witness})
}

pub fn polygon(np: &NewtonPolygon) -> Value {
    let vertices: Vec<Value> = np
        .vertices
        .iter()
        .map(|&(i, v)| json!([i, rational(v)]))
        .collect();
    let segments: Vec<Value> = np
        .segments
        .iter()
        .map(|s| json!({"slope": rational(s.slope), "length": s.length, "root_valuation": rational(s.root_valuation())}))
        .collect();
    json!({
        "vertices": vertices,
        "segments": segments,
        "zero_roots": np.ord(),
    })
}

pub fn valuations(vs: &[(Rational, usize)]) -> Value {
    Value::Array(
        vs.iter()
            .map(|&(v, m)| json!({"valuation": rational(v), "multiplicity": m}))
            .collect(),
    )
}
