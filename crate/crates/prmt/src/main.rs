fn main() {
    std::process::exit(prmt::cli::run_from(std::env::args_os()));
}
