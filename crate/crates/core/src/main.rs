fn main() {
    std::process::exit(aisemiring::cli::run(std::env::args_os()));
}
