fn main() {
    std::process::exit(schubert::cli::main_with_args(std::env::args_os()));
}
