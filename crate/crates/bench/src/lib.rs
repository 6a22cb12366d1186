//! Fixtures shared by the benchmarks.

use jacpoisson::poisson::build_fr_bivector;
use jacpoisson::{parse_expr, CasimirPair, PoissonBivector, Poly, TwistWord, VarSet};

pub fn expr(s: &str) -> Poly {
    parse_expr(s, &VarSet::txyz()).expect("fixture expression")
}

pub fn fr(f: &str, g: &str, k: &str) -> PoissonBivector {
    build_fr_bivector(&CasimirPair::new(expr(f), expr(g), expr(k)).expect("four variables"))
}

pub fn fold() -> PoissonBivector {
    fr("t", "-x^2 + y^2 + z^2", "1")
}

pub fn cusp() -> PoissonBivector {
    fr("t", "x^3 + t*x + y^2 - z^2", "1 + x^2")
}

/// A dense Casimir pair of degree three.
pub fn dense() -> PoissonBivector {
    fr("t*x*y + x^2 - z^3 + 2*y", "x*y*z - t^3 + y^2*x + 3", "1 + x^2")
}

/// `(T_{a_1} T_{b_1} ⋯ T_{a_g} T_{b_g})^reps` on genus `g`.
pub fn chain_word(g: usize, reps: usize) -> TwistWord {
    let mut letters = Vec::new();
    for _ in 0..reps {
        for i in 0..2 * g {
            let mut c = vec![0; 2 * g];
            c[i] = 1;
            letters.push((c, 1));
        }
    }
    TwistWord::new(letters)
}
