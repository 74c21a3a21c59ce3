use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A real-dynamics formula was evaluated outside the parameter range where it is defined.
    #[error("{op}: argument {value} outside its domain ({requirement})")]
    Domain {
        op: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("non-finite hyperbolic number ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    /// The parameter lies on a characteristic axis; use [`crate::axis_julia`].
    #[error("parameter c = ({c_x}, {c_y}) lies on a characteristic axis; use axis_julia")]
    AxisParameter { c_x: f64, c_y: f64 },

    #[error("parameter c = ({c_x}, {c_y}) is not on exactly one characteristic axis")]
    NotOnAxis { c_x: f64, c_y: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid escape config: {0}")]
    InvalidConfig(String),

    #[error("pixel ({i}, {j}) outside a {width}x{height} grid")]
    PixelOutOfRange {
        i: usize,
        j: usize,
        width: usize,
        height: usize,
    },

    #[error("analytic masks need a characteristic-frame grid")]
    AnalyticNeedsCharacteristicFrame,
}
