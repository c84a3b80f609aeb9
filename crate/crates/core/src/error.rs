use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point id {id} out of range for a set of {n} points")]
    InvalidId { id: usize, n: usize },

    #[error("invalid piece: {0}")]
    InvalidPiece(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("points {0}, {1}, {2} are collinear")]
    NotGeneralPosition(usize, usize, usize),

    #[error("coordinate ({x}, {y}) exceeds the 2^30 bound")]
    CoordinateRange { x: i64, y: i64 },

    #[error("general position not reached after {attempts} re-draws")]
    RepairFailed { attempts: usize },

    #[error("alpha = {requested} is infeasible: achieved ratio/sqrt(n) = {achieved:.6}")]
    InfeasibleAlpha { requested: f64, achieved: f64 },

    #[error("point set is not alpha-dense for alpha = {alpha}: ratio/sqrt(n) = {achieved:.6}")]
    NotDense { alpha: f64, achieved: f64 },

    #[error("skip budget B = {budget} leaves {uncovered} edges uncovered; the set is too sparse for this alpha")]
    DenseBudget { budget: usize, uncovered: usize },

    #[error("points are not in convex position in index order (failure at index {0})")]
    NotConvex(usize),

    #[error("no five-path zig-zag decomposition of the six points {0:?}")]
    NoDecomposition([usize; 6]),

    #[error("exact K6 decomposition of K_{n} unavailable: {reason}")]
    PackingInfeasible { n: usize, reason: String },

    #[error("{what}: n = {n} exceeds the limit {limit}")]
    SizeGuard { what: &'static str, n: usize, limit: usize },

    #[error("constant c = {c} gives fewer than one direction for n = {n}")]
    FanTooCoarse { n: usize, c: f64 },

    #[error("direction {0:?} has projection ties; use a cell-interior direction")]
    Tie(crate::geom::Direction),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
