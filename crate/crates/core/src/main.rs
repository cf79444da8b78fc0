use std::process::ExitCode;

use uniform_attachment::cli::{run, EXIT_CONFIG, THREADS_ENV};

fn main() -> ExitCode {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads = match v.parse::<usize>() {
            Ok(t) if t > 0 => t,
            _ => {
                eprintln!("error: {THREADS_ENV} must be a positive integer, got '{v}'");
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        };
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("thread pool");
    }
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
