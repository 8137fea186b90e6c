fn main() {
    std::process::exit(brody_cli::run(std::env::args_os()));
}
