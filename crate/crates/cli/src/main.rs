fn main() {
    std::process::exit(dqeig_cli::run(std::env::args_os()));
}
