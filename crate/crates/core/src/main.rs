fn main() {
    std::process::exit(mistp::cli::run(std::env::args_os()));
}
