use clap::Parser;

use twnf::cli::Cli;
use twnf::matrix;

fn main() {
    let cli = Cli::parse();

    // One BLAS thread: reproducible reductions and stable benchmark numbers.
    matrix::set_blas_threads(1);
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global();

    match cli.run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
