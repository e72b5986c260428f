fn main() {
    std::process::exit(hbt_cli::main_with_args(std::env::args_os()));
}
