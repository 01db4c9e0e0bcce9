//! Crate-wide error type.

use core::fmt;

/// Errors shared by all modules. Variant names follow the operation
/// contracts; `msg`-free variants carry enough context in their name.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix with zero determinant cannot represent an isometry.
    SingularMatrix,
    /// Cross ratio of the form 0/0.
    DegenerateCrossRatio,
    /// The isometry is parabolic, elliptic or the identity.
    NotLoxodromic,
    /// Supplied axis endpoints are not fixed by the isometry.
    WrongAxis,
    /// The third geodesic of a double cross is not perpendicular to the
    /// other two.
    NotPerpendicular,
    /// Two geodesics share an endpoint at infinity; no common perpendicular.
    SharedEndpoint,
    /// Fixed points of the identity are undefined.
    IdentityInput,
    /// The two geodesics do not intersect in hyperbolic space.
    NoIntersection,
    /// A polygon side width has vanishing `sinh`, so the solver would divide
    /// by zero.
    DegenerateSide,
    /// Widths do not satisfy the hexagon laws, or a realization does not
    /// reproduce them.
    InconsistentWidths,
    /// Matrix is outside the image of the five-factor parametrization.
    NotFactorizable,
    /// `|delta|` too close to pi/2 for the factorization branch to be chosen
    /// reliably.
    AmbiguousBranch,
    /// The axis of the parametrized isometry degenerates (endpoint at 0 or
    /// infinity), so the hexagon construction has no solution.
    AxisDegenerate,
    /// Hypotheses of an estimate are violated by the supplied parameters.
    HypothesisViolated,
    /// Flow vector is not indexed compatibly with the tileset graph.
    IndexMismatch,
    /// The vector does not satisfy the flow equations.
    NotAFlow,
    /// The flow has non-integer entries where an integral flow is required.
    NotIntegral,
    /// The quotient/morphism pair fails tiling verification.
    InvalidTiling,
    /// Argument outside the operation's domain.
    OutOfDomain,
    /// Collar angle at or beyond pi/2; shear deviation undefined.
    AlphaTooLarge,
    /// The designated hexagon side is not a short side.
    NotShortSide,
    /// A case configuration could not be realized at the given parameters.
    ConstructionFailed,
    /// Invalid nearly-symmetric specification.
    InvalidSpec,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Error::SingularMatrix => "matrix has zero determinant",
            Error::DegenerateCrossRatio => "cross ratio is indeterminate (0/0)",
            Error::NotLoxodromic => "isometry is not loxodromic",
            Error::WrongAxis => "endpoints are not the fixed points of the isometry",
            Error::NotPerpendicular => "geodesic is not perpendicular to the given geodesics",
            Error::SharedEndpoint => "geodesics share an endpoint; no common perpendicular",
            Error::IdentityInput => "identity isometry has no distinguished fixed points",
            Error::NoIntersection => "geodesics do not intersect",
            Error::DegenerateSide => "side width has vanishing sinh",
            Error::InconsistentWidths => "widths violate the polygon laws",
            Error::NotFactorizable => "matrix is not in the image of the factorization",
            Error::AmbiguousBranch => "factorization branch ambiguous (|delta| near pi/2)",
            Error::AxisDegenerate => "axis degenerates; hexagon construction impossible",
            Error::HypothesisViolated => "estimate hypotheses violated",
            Error::IndexMismatch => "flow vector incompatible with graph",
            Error::NotAFlow => "vector does not satisfy the flow equations",
            Error::NotIntegral => "flow is not integral",
            Error::InvalidTiling => "quotient/morphism is not a valid tiling",
            Error::OutOfDomain => "argument outside the operation domain",
            Error::AlphaTooLarge => "collar angle at or beyond pi/2",
            Error::NotShortSide => "index does not designate a short side",
            Error::ConstructionFailed => "case configuration could not be realized",
            Error::InvalidSpec => "invalid nearly-symmetric specification",
        };
        f.write_str(s)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
