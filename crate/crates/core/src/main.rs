fn main() {
    std::process::exit(ksgraph::cli::run(std::env::args_os()));
}
