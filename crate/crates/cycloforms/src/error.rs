use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} must be positive")]
    ZeroArgument(&'static str),

    #[error("{0} is not a totient")]
    NotTotient(u64),

    #[error("index n = {0} is below the smallest admissible value {1}")]
    IndexTooSmall(u64, u64),

    #[error("the zero form is not a valid binary form")]
    ZeroForm,

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("the length bound is stated for n >= 2; n = {0} is excluded")]
    BatemanExcluded(u64),

    #[error("{0} = {1} is not an odd prime")]
    NotOddPrime(&'static str, u64),

    #[error("{0} = {1} is not prime")]
    NotPrime(&'static str, u64),

    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),

    #[error("modulus {0} exceeds the grid guard {1}")]
    ModulusTooLarge(u64, u64),

    #[error("modulus {0} must be at least 2")]
    ModulusTooSmall(u64),

    #[error("congruence asserted by the lemma fails at p = {p}, a = {a}, b = {b}")]
    CongruenceViolated { p: u64, a: i64, b: i64 },

    #[error("varpi is undefined for n = {0}: no prime >= 5 divides it and it is not 3^k (k >= 2) or 2^h 3^k (h >= 2)")]
    VarpiUndefined(u64),

    #[error("index {index}: {source}")]
    FactorRejected {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("m = {0} must be a prime power p^s with p = 3 mod 4 when a factor has varpi = 4")]
    BadConfinementTarget(u64),

    #[error("inconsistent confinement inputs: {0}")]
    BadConfinementInput(String),

    #[error("degree of Phi_{0} is {1}; at least {2} required")]
    DegreeTooSmall(u64, u64, u64),

    #[error("sieve limit {0} exceeds configured cap {1}")]
    SieveCapExceeded(u64, u64),

    #[error("box bound {0} exceeds configured cap {1}")]
    BoxCapExceeded(u64, u64),

    #[error("expected {expected} lattice determinants for {kind}, got {got}")]
    BadDeterminantCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("lattice determinant must be nonzero")]
    ZeroDeterminant,

    #[error("automorphism candidate fails the defining identity for n = {0}")]
    AutomorphismRejected(u64),

    #[error("quadrature did not reach tolerance {tol:e} within {budget} evaluations (error estimate {achieved:e})")]
    QuadratureBudget {
        tol: f64,
        budget: usize,
        achieved: f64,
    },

    #[error("tolerance {0:e} is below the supported floor {1:e}")]
    ToleranceTooTight(f64, f64),

    #[error("2d = {0} is not a power of two; the closed form needs phi_2d(t) = 1 + t^d")]
    NotPowerOfTwo(u64),

    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(f64),

    #[error("computed area {area} falls outside the square sandwich [{lower}, {upper}] for n = {n}")]
    SandwichViolated {
        n: u64,
        area: f64,
        lower: f64,
        upper: f64,
    },

    #[error("minimum search did not converge for n = {0}")]
    MinSearchFailed(u64),
}
