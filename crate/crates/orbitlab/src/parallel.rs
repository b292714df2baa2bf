//! Threaded front ends for the exhaustive searches.
//!
//! Work is split over the first tuple coordinate; chunk results are merged
//! by `(value, witness)` so the answer matches a serial run exactly.

use orbitlab_core::oracle::{
    check_support_input, merge_first, merge_support, search_min_generators, support_result,
    FullGroupElements, GeneratorSearch, OracleError, SupportSearch, MAX_GENERATOR_POINTS,
};
use orbitlab_core::Partition;
use rayon::prelude::*;

pub const THREADS_ENV: &str = "ORBITLAB_THREADS";

/// Thread cap from `ORBITLAB_THREADS`, or the machine's parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

pub fn min_generating_support(
    relation: &Partition,
    t: usize,
    threads: usize,
) -> Result<SupportSearch, OracleError> {
    check_support_input(relation, t)?;
    let elements = FullGroupElements::new(relation);
    let count = elements.elements().len();
    let chunks: Vec<_> = pool(threads).install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| elements.min_support_chunk(t, i..i + 1))
            .collect()
    });
    let best = if t == 0 {
        elements.min_support_chunk(0, 0..count)
    } else {
        merge_support(chunks)
    };
    Ok(support_result(&elements, t, best))
}

pub fn min_generators(
    relation: &Partition,
    threads: usize,
) -> Result<GeneratorSearch, OracleError> {
    if relation.space_size() > MAX_GENERATOR_POINTS {
        return Err(OracleError::TooLarge {
            n: relation.space_size(),
            max: MAX_GENERATOR_POINTS,
        });
    }
    let elements = FullGroupElements::new(relation);
    let pool = pool(threads);
    search_min_generators(&elements, |t, reps| {
        if t == 0 {
            return elements.first_generating_tuple_chunk(0, 0..reps);
        }
        let chunks: Vec<_> = pool.install(|| {
            (0..reps)
                .into_par_iter()
                .map(|k| elements.first_generating_tuple_chunk(t, k..k + 1))
                .collect()
        });
        merge_first(chunks)
    })
}
