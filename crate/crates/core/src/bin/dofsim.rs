fn main() {
    std::process::exit(dofsim::cli::run(std::env::args_os()));
}
