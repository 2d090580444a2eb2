fn main() {
    std::process::exit(stabsim::cli::run_cli(std::env::args_os()));
}
