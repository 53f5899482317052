fn main() {
    std::process::exit(dnss::cli::run(std::env::args().collect()));
}
