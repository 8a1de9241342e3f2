fn main() {
    std::process::exit(thermoplan::cli::run_from(std::env::args_os()));
}
