fn main() {
    std::process::exit(senlab::cli::run(std::env::args_os()));
}
