fn main() {
    std::process::exit(collapse_lab_cli::run(std::env::args_os()));
}
