fn main() {
    std::process::exit(hypabel::cli::run(std::env::args_os()));
}
