fn main() {
    std::process::exit(boundary_lab::cli::main_with_args(std::env::args_os()));
}
