fn main() {
    std::process::exit(ptk::cli::run(std::env::args_os()));
}
