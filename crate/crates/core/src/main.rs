fn main() {
    std::process::exit(qorrelate::cli::main_with_args(std::env::args_os()));
}
