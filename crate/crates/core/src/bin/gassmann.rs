fn main() {
    std::process::exit(gassmann::cli::run(std::env::args_os()));
}
