//! Labeled cycle counts and the LSBM-versus-ER test built on them.
//!
//! Under the labeled ER model the number of `k`-cycles with canonical label
//! sequence `s` is asymptotically Poisson with mean `lambda(s)`, under the
//! LSBM with mean `xi(s)`. The statistic `X_k = sum_s count(s) eta(s)`,
//! `eta = xi / lambda - 1`, separates the two when `tau > 1`.

mod census;
mod hypothesis;
mod means;

pub use census::{count_labeled_cycles, CycleCensus, CENSUS_CSV_HEADER, DEFAULT_KMAX, MAX_KMAX, MIN_CYCLE_LEN};
pub use hypothesis::{hypothesis_test, test_statistic, TestReport, Verdict, LOW_POWER_LAMBDA};
pub use means::{poisson_means, sequence_eta, ExcludedSequence, PoissonMeans, SequenceMeans, MAX_SEQUENCES};
