fn main() {
    std::process::exit(sodcheck::cli::run(std::env::args_os()));
}
