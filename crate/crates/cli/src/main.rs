fn main() {
    std::process::exit(cmtorus_cli::run_cli(std::env::args_os()));
}
