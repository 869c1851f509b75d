use thiserror::Error;

/// Failures of the geometric kernel (points, lines, maps, conics, involutions).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all three homogeneous coordinates are zero")]
    ZeroVector,
    #[error("cannot join a point with itself")]
    IdenticalPoints,
    #[error("cannot meet a line with itself")]
    IdenticalLines,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("degenerate tuple: a pair of the cross-ratio coincides")]
    DegenerateTuple,
    #[error("point coincides with an endpoint of the harmonic pair")]
    CoincidesWithEndpoint,
    #[error("invalid homology pair: {0}")]
    InvalidPair(&'static str),
    #[error("homology is singular")]
    DegenerateHomology,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("five points do not determine a unique conic")]
    NotUnique,
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("polar undefined: point is a singular point of the conic")]
    PolarUndefined,
    #[error("point is not on the conic")]
    NotOnConic,
    #[error("hexagon has coincident adjacent vertices")]
    DegenerateHexagon,
    #[error("opposite-side meets do not determine a line")]
    PascalLineUndetermined,
    #[error("opposite-side meets are not collinear")]
    PascalViolation,
    #[error("point is not on the line")]
    NotOnLine,
    #[error("no projectivity fits the given pairs")]
    InconsistentPairs,
    #[error("fitted map fails the involution law")]
    NotInvolution,
}
