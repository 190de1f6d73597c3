fn main() {
    std::process::exit(geophase::cli::run_cli(std::env::args_os()));
}
