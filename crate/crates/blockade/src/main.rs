fn main() {
    std::process::exit(blockade::cli::run(std::env::args_os()));
}
