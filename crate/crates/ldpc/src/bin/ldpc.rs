fn main() {
    std::process::exit(ldpc_tools::cli::main_with_args(std::env::args_os()));
}
