fn main() {
    std::process::exit(gentle::cli::run(std::env::args_os()));
}
