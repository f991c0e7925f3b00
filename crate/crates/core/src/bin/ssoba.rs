fn main() {
    std::process::exit(ssoba::cli::main_with_args(std::env::args_os()));
}
