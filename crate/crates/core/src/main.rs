fn main() {
    std::process::exit(galdual::cli::run(std::env::args_os()));
}
