fn main() {
    std::process::exit(pgroup_cli::main_dispatch(std::env::args_os()));
}
