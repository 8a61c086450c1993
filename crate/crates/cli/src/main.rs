fn main() {
    std::process::exit(polyrec_cli::run(std::env::args_os()));
}
