fn main() {
    std::process::exit(pivotal_workbench::cli::main_with_args(std::env::args_os()));
}
