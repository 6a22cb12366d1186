use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("invalid variable name '{0}'")]
    InvalidVariableName(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },
    #[error("grade {grade} exceeds dimension {dim}")]
    GradeOverflow { grade: usize, dim: usize },
    #[error("conformal factor of a volume form must be nonzero")]
    ZeroVolumeFactor,
    #[error("variable set mismatch")]
    VariableMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("singular point of the foliation: anchor rank {rank} at the given point, expected 2")]
    SingularPoint { rank: usize },
    #[error("{0} is not tangent to the leaf")]
    NotTangent(&'static str),
    #[error("not in normal position: the bivector has d/dt components")]
    NotNormalPosition,
    #[error("cannot glue: piece on region {0} is not a polynomial multiple of the base bivector")]
    CannotGlue(String),
    #[error("regions U_C and U_Gamma are declared to overlap")]
    OverlappingRegions,
    #[error("unknown region '{0}' (expected W, U_C or U_Gamma)")]
    UnknownRegion(String),
    #[error("region {0} has more than one piece")]
    DuplicateRegion(String),
    #[error("bivector must have grade 2, got {0}")]
    NotBivector(usize),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exterior calculus: {0}")]
    Exterior(#[from] ExteriorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the bivector is not Poisson: [pi, pi] has {0} nonzero terms")]
    NotPoisson(usize),
    #[error("block (p={p}, d={d}) has {size} basis elements, above the cap {cap}")]
    BlockOverflow {
        p: usize,
        d: i64,
        size: usize,
        cap: usize,
    },
    #[error("regions {0} and {1} are declared to intersect; the connecting map is not computed")]
    NonemptyIntersection(String, String),
    #[error("expected {expected} basis forms, got {got}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("transverse covectors are linearly dependent")]
    DependentTransversals,
    #[error("weight vector has {got} entries, expected {expected}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("exterior calculus: {0}")]
    Exterior(#[from] ExteriorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("invalid sign pattern for {kind}: {detail}")]
    InvalidSigns { kind: String, detail: String },
    #[error("point is not on the singular locus")]
    NotOnLocus,
    #[error("unknown germ kind '{0}'")]
    UnknownKind(String),
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("curve class is not primitive (gcd {0})")]
    NotPrimitive(String),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix does not preserve the intersection form")]
    NotSymplectic,
    #[error("twist exponent must be +1 or -1, got {0}")]
    BadExponent(i64),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

/// Any error raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl Error {
    /// Name of the module the error originated in.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Algebra(_) => "symbolic_core",
            Error::Exterior(_) => "exterior_calculus",
            Error::Poisson(_) => "jacobian_poisson",
            Error::Cohomology(_) => "cohomology_engine",
            Error::Singularity(_) => "singularity_catalog",
            Error::Lattice(_) => "mapping_class",
        }
    }
}
