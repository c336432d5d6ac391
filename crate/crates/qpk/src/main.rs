fn main() {
    std::process::exit(qpk::cli::run(std::env::args_os()));
}
