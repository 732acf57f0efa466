fn main() {
    std::process::exit(rydberg_renyi_cli::run(std::env::args_os()));
}
