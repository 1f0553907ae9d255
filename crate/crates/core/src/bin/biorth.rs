fn main() {
    std::process::exit(biorth::cli::main_with_args(std::env::args_os()));
}
