fn main() {
    std::process::exit(saf::cli::run(std::env::args_os()));
}
