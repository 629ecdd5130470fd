fn main() {
    std::process::exit(baker_cli::run(std::env::args_os()));
}
