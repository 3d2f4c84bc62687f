mod output;
mod run;

use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    run::cli_main()
}

/// WRIGHT_LAB_THREADS caps worker parallelism for grid evaluation.
fn configure_threads() -> Result<(), String> {
    match std::env::var("WRIGHT_LAB_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw
                .parse()
                .map_err(|_| format!("WRIGHT_LAB_THREADS must be a positive integer, got '{raw}'"))?;
            if n == 0 {
                return Err("WRIGHT_LAB_THREADS must be a positive integer, got '0'".into());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("thread pool: {e}"))
        }
    }
}
