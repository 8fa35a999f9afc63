fn main() {
    std::process::exit(stablesurf::cli::run(std::env::args().collect()));
}
