fn main() {
    std::process::exit(modlyap_cli::run(std::env::args_os()));
}
