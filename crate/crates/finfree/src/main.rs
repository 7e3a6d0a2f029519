fn main() {
    std::process::exit(finfree::cli::main_with_args(std::env::args_os()));
}
