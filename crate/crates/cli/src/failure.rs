use metarep::Error;

use crate::output::Output;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Internal,
    Input,
    Resource,
    NotApplicable,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Internal => 1,
            Kind::Input => 2,
            Kind::Resource => 3,
            Kind::NotApplicable => 4,
        }
    }
}

pub struct Failure {
    pub kind: Kind,
    pub stage: String,
    pub message: String,
    /// Report up to the failing stage, printed before exiting.
    pub partial: Option<Box<Output>>,
}

impl Failure {
    pub fn new(kind: Kind, stage: &str, message: impl Into<String>) -> Self {
        Failure {
            kind,
            stage: stage.to_string(),
            message: message.into(),
            partial: None,
        }
    }

    pub fn input(stage: &str, message: impl Into<String>) -> Self {
        Failure::new(Kind::Input, stage, message)
    }

    pub fn from_error(stage: &str, e: Error) -> Self {
        let kind = match e {
            Error::Parse(_)
            | Error::MultiComponentLink { .. }
            | Error::InvalidPd(_)
            | Error::NotCoprime { .. }
            | Error::UnknownKnot(_)
            | Error::InvalidPresentation(_)
            | Error::MissingLongitude
            | Error::NormalizationFailure(_) => Kind::Input,
            Error::Intractable { .. } => Kind::Resource,
            Error::InfiniteFamily { .. }
            | Error::NotRegular(_)
            | Error::ObstructionNonzero { .. }
            | Error::SingularDenominator
            | Error::WrongOrder(_) => Kind::NotApplicable,
            _ => Kind::Internal,
        };
        Failure::new(kind, stage, e.to_string())
    }

    pub fn with_partial(mut self, out: Output) -> Self {
        self.partial = Some(Box::new(out));
        self
    }
}

/// Tag library errors with the stage they came from.
pub trait Stage<T> {
    fn stage(self, name: &str) -> Result<T, Failure>;
}

impl<T> Stage<T> for metarep::Result<T> {
    fn stage(self, name: &str) -> Result<T, Failure> {
        self.map_err(|e| Failure::from_error(name, e))
    }
}
