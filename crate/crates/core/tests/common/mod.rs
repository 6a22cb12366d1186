#![allow(dead_code)]

use jacpoisson::exterior::Kind;
use jacpoisson::exterior::{Graded, Indices};
use jacpoisson::symbolic::{Monomial, Poly, VarSet, Q};
use proptest::prelude::*;

pub fn vars() -> VarSet {
    VarSet::txyz()
}

pub fn parse(s: &str) -> Poly {
    jacpoisson::parse_expr(s, &vars()).unwrap()
}

fn coeff() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

/// Polynomial with up to `terms` terms and exponents below `max_exp`.
pub fn poly(terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..max_exp, 4), coeff()), 0..=terms).prop_map(|ts| {
        Poly::from_terms(&vars(), ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

pub fn small_poly() -> impl Strategy<Value = Poly> {
    poly(3, 3)
}

/// Homogeneous element of grade `p` with up to three terms.
pub fn graded<K: Kind + 'static>(p: usize) -> impl Strategy<Value = Graded<K>> {
    let sets = Indices::all(4, p);
    prop::collection::vec((0..sets.len(), poly(2, 3)), 0..=3).prop_map(move |ts| {
        Graded::<K>::from_terms(&vars(), p, ts.into_iter().map(|(i, c)| (sets[i], c)))
    })
}

pub fn any_graded<K: Kind + 'static>(max: usize) -> impl Strategy<Value = Graded<K>> {
    (0..=max).prop_flat_map(graded::<K>)
}

pub fn rational_point() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-5i64..=5, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into())), 4)
}
