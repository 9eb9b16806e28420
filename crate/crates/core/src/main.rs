fn main() {
    std::process::exit(bwtkit::cli::run(std::env::args_os()));
}
