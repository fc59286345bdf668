//! Wall-clock timing for repeated runs.

use std::time::Instant;

/// Runs `f` `repeats` times and returns the last result together with the
/// mean and population standard deviation of the per-run times in seconds.
/// A single repeat reports a standard deviation of zero.
pub fn time_runs<T>(repeats: usize, mut f: impl FnMut() -> T) -> (T, f64, f64) {
    assert!(repeats > 0);
    let mut times = Vec::with_capacity(repeats);
    let mut result = None;
    for _ in 0..repeats {
        let start = Instant::now();
        result = Some(f());
        times.push(start.elapsed().as_secs_f64());
    }
    let mean = times.iter().sum::<f64>() / repeats as f64;
    let var = times.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / repeats as f64;
    (result.unwrap(), mean, var.sqrt())
}
