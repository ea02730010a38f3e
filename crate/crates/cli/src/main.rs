fn main() {
    std::process::exit(cv_epr_cli::run(std::env::args_os()));
}
