fn main() {
    std::process::exit(symplectic_pi1::cli::run_cli(std::env::args_os()));
}
