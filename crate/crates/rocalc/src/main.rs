use std::process::ExitCode;

fn main() -> ExitCode {
    // optional bound on worker parallelism; output is deterministic either way
    if let Ok(v) = std::env::var("RO_CALC_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    rocalc::cli::run()
}
