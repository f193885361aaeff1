fn main() {
    std::process::exit(parabolic::cli::main_with_args(std::env::args_os()));
}
