fn main() {
    std::process::exit(ginibre_cli::run(std::env::args_os()));
}
