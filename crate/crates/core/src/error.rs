use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop requested at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("budget exceeded: {what} cap of {cap} reached")]
    Budget { what: &'static str, cap: u64 },
    #[error("graph is disconnected ({components} components); apply per component")]
    Disconnected { components: usize },
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
