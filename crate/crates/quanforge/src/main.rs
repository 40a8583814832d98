fn main() {
    std::process::exit(quanforge::cli::run(std::env::args_os()));
}
