fn main() {
    std::process::exit(ep_prover::cli::run(std::env::args_os()));
}
