//! JSON encodings. Rationals and polynomials are always strings.

use jacpoisson::cohomology::CohomologyReport;
use jacpoisson::exterior::{Graded, Kind, RationalVectorField};
use jacpoisson::poisson::GlueReport;
use jacpoisson::singularity::RealBound;
use jacpoisson::symbolic::fmt_q;
use jacpoisson::{FormalImage, IMatrix, MapGerm, PoissonBivector, SingularLocus, Q};
use serde_json::{json, Value};

pub fn rational(v: &Q) -> Value {
    Value::String(fmt_q(v))
}

pub fn point(p: &[Q]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

/// `[{"indices": [...], "coef": "..."}]` in canonical term order.
pub fn terms<K: Kind>(a: &Graded<K>) -> Value {
    a.terms()
        .map(|(ix, c)| json!({"indices": ix.to_vec(), "coef": c.to_string()}))
        .collect()
}

pub fn bivector(pi: &PoissonBivector) -> Value {
    let provenance = match pi.provenance() {
        Some(p) => json!({"F": p.f.to_string(), "G": p.g.to_string(), "k": p.k().to_string()}),
        None => Value::Null,
    };
    json!({"terms": terms(pi.body()), "provenance": provenance})
}

pub fn vector_field(x: &RationalVectorField) -> Value {
    x.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({"index": i, "coef": c.to_string()}))
        .collect()
}

pub fn cohomology(r: &CohomologyReport) -> Value {
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| json!({"p": b.p, "d": b.d, "ker": b.ker, "im": b.im, "h": b.h}))
        .collect();
    json!({"cutoff": r.cutoff, "blocks": blocks, "flags": r.flags})
}

pub fn germ(g: &MapGerm) -> Value {
    json!({
        "kind": g.kind.name(),
        "f1": g.f1.to_string(),
        "f2": g.f2.to_string(),
        "s": g.s.as_ref().map(rational),
    })
}

pub fn locus(g: &MapGerm, l: &SingularLocus) -> Value {
    let bound = match &l.bound {
        RealBound::Empty => json!({"kind": "empty"}),
        RealBound::Within(vs) => json!({"kind": "within", "zero_coordinates": vs}),
        RealBound::Unknown => json!({"kind": "unknown"}),
    };
    json!({
        "germ": germ(g),
        "generators": l.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "samples": l.samples.iter().map(|p| point(p)).collect::<Vec<_>>(),
        "bound": bound,
    })
}

pub fn matrix(m: &IMatrix) -> Value {
    json!(m.to_rows())
}

pub fn image(f: &FormalImage) -> Value {
    json!({"symbol": f.symbol, "terms": terms(&f.body), "flags": f.flags})
}

pub fn glue(r: &GlueReport) -> Value {
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|(region, f)| json!({"region": region.name(), "symbol": region.weight_symbol(), "factor": f.to_string()}))
        .collect();
    json!({"factors": factors, "expression": r.expression, "relation": r.relation})
}
