fn main() {
    std::process::exit(keypoly::cli::run(std::env::args_os()));
}
