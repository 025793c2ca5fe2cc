use thiserror::Error;

use crate::lp::LpError;
use crate::model::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("complexes C{first} and C{second} have identical composition")]
    DuplicateComplex { first: usize, second: usize },
    #[error("stoichiometric coefficient {value} of complex C{complex} is not a nonnegative integer")]
    InvalidExponent { complex: usize, value: f64 },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("the kinetic system has no realization on the given complex set")]
    NotRealizable,
    #[error("edge {0} is not part of the dense structure")]
    EdgeOutsideDense(Edge),
    #[error("structure omits core edge {0}")]
    MissingCoreEdge(Edge),
    #[error("bit sequence has length {found}, ordering expects {expected}")]
    SequenceLength { expected: usize, found: usize },
    #[error("{edges} free edges exceed the brute-force cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("column {0} admits no dynamically equivalent realization")]
    EmptyColumn(usize),
    #[error("constraint couples several Kirchhoff columns or the scaling; not supported column-wise")]
    CoupledConstraint,
    #[error("non-finite state at t = {time}; reduce the step size")]
    NonFiniteState { time: f64 },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("enumeration aborted after {emitted} structures: {source}")]
    Interrupted {
        emitted: usize,
        #[source]
        source: Box<Error>,
    },
}
