fn main() {
    std::process::exit(equidyn::cli::run_from(std::env::args()));
}
