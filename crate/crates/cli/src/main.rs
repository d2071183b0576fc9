fn main() {
    std::process::exit(floer_cli::run(std::env::args_os()));
}
