//! Worked problems from the classical dimensional-analysis literature.
//!
//! Base dimensions are `L T M` unless noted otherwise.

use crate::engine::{KappaPolicy, Problem};

/// `q0^kappa = Phi(q1, q2, q3)` over two abstract base dimensions.
pub fn example_two() -> Problem {
    Problem::new(["E1", "E2"])
        .with_var("q0", &[2, 1])
        .with_var("q1", &[1, 0])
        .with_var("q2", &[2, 0])
        .with_var("q3", &[1, 1])
        .with_dependent("q0")
}

/// Every variable dimensionless.
pub fn all_dimensionless() -> Problem {
    Problem::new(["L", "T", "M"])
        .with_var("q0", &[0, 0, 0])
        .with_var("q1", &[0, 0, 0])
        .with_var("q2", &[0, 0, 0])
        .with_var("q3", &[0, 0, 0])
        .with_dependent("q0")
}

/// Slant height `H` of a cone from base area `a` and height `h` (base `L`).
pub fn cone() -> Problem {
    Problem::new(["L"])
        .with_var("H", &[1])
        .with_var("a", &[2])
        .with_var("h", &[1])
        .with_dependent("H")
}

/// Period of a pendulum.
pub fn pendulum() -> Problem {
    Problem::new(["L", "T", "M"])
        .with_var("t", &[0, 1, 0])
        .with_var("l", &[1, 0, 0])
        .with_var("m", &[0, 0, 1])
        .with_var("theta", &[0, 0, 0])
        .with_var("g", &[1, -2, 0])
        .with_dependent("t")
}

/// Combined mass `c` of two bodies with masses `a` and `b` (base `M`).
pub fn mass_addition() -> Problem {
    Problem::new(["M"])
        .with_var("c", &[1])
        .with_var("a", &[1])
        .with_var("b", &[1])
        .with_dependent("c")
        .with_kappa(KappaPolicy::Auto)
}

/// Electromagnetic energy density over `L T M I`.
pub fn energy_density() -> Problem {
    Problem::new(["L", "T", "M", "I"])
        .with_var("u", &[-1, -2, 1, 0])
        .with_var("E", &[1, -3, 1, -1])
        .with_var("H", &[-1, 0, 0, 1])
        .with_var("eps", &[-3, 4, -1, 2])
        .with_var("mu", &[1, -2, 1, -2])
        .with_dependent("u")
}

/// Energy density with the composites `Ep = eps E^2`, `Hp = mu H^2` and
/// the symmetry `Ep <-> Hp`.
pub fn energy_density_composite() -> Problem {
    energy_density()
        .with_substitution("Ep", &[("eps", 1), ("E", 2)])
        .with_substitution("Hp", &[("mu", 1), ("H", 2)])
        .with_symmetry("Ep", "Hp")
}

/// Orbital period `t` of two bodies with masses `M`, `m` at distance `d`.
pub fn two_body() -> Problem {
    Problem::new(["L", "T", "M"])
        .with_var("t", &[0, 1, 0])
        .with_var("M", &[0, 0, 1])
        .with_var("m", &[0, 0, 1])
        .with_var("d", &[1, 0, 0])
        .with_var("G", &[3, -2, -1])
        .with_dependent("t")
}

/// The two-body problem without the gravitational constant: not
/// precomplete.
pub fn two_body_without_g() -> Problem {
    Problem::new(["L", "T", "M"])
        .with_var("t", &[0, 1, 0])
        .with_var("M", &[0, 0, 1])
        .with_var("m", &[0, 0, 1])
        .with_var("d", &[1, 0, 0])
        .with_dependent("t")
}
