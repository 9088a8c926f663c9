fn main() {
    std::process::exit(wythoffian::cli::cli(std::env::args()));
}
