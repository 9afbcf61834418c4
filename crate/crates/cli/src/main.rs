fn main() {
    std::process::exit(ffcount_cli::run(std::env::args_os()));
}
