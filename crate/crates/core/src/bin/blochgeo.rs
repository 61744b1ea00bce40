fn main() {
    std::process::exit(bloch_geometry::cli::main_with_args(std::env::args_os()));
}
