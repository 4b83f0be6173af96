fn main() {
    std::process::exit(polyshift_cli::run(std::env::args_os()));
}
