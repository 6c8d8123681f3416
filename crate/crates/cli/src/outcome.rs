//! Process exit codes and their mapping from error chains.

use std::fmt;
use touchdown_cert::Error;

/// Exit code when a theorem's hypotheses do not hold.
pub const EXIT_HYPOTHESIS: u8 = 2;
/// Exit code when no admissible parameter point exists.
pub const EXIT_NO_CANDIDATE: u8 = 3;
/// Exit code when a bound hits a numerical singularity.
pub const EXIT_SINGULAR: u8 = 4;
/// Exit code for every other failure.
pub const EXIT_OTHER: u8 = 1;

/// The hypotheses of the requested theorem are violated.
#[derive(Debug)]
pub struct HypothesisFailure(pub String);

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hypotheses violated: {}", self.0)
    }
}

impl std::error::Error for HypothesisFailure {}

/// Exit code for an error, from the first recognised cause in its chain.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<HypothesisFailure>() {
            return EXIT_HYPOTHESIS;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::NoFeasibleCandidate(_) | Error::Infeasible(_) => EXIT_NO_CANDIDATE,
                Error::SingularityReached(_) => EXIT_SINGULAR,
                _ => EXIT_OTHER,
            };
        }
    }
    EXIT_OTHER
}

#[cfg(test)]
mod tests {
    use super::*;
    use anyhow::Context;

    #[test]
    fn maps_through_context() {
        let e = Err::<(), _>(Error::SingularityReached("x".into()))
            .context("outer")
            .unwrap_err();
        assert_eq!(exit_code(&e), EXIT_SINGULAR);
        let e = anyhow::Error::new(HypothesisFailure("mu".into())).context("certify");
        assert_eq!(exit_code(&e), EXIT_HYPOTHESIS);
        assert_eq!(
            exit_code(&anyhow::Error::new(Error::NoFeasibleCandidate("x".into()))),
            EXIT_NO_CANDIDATE
        );
        assert_eq!(exit_code(&anyhow::anyhow!("plain")), EXIT_OTHER);
    }
}
