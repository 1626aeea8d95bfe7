fn main() {
    std::process::exit(twoslit::cli::main_with_args(std::env::args_os()));
}
