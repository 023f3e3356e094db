fn main() {
    std::process::exit(toda_mass::cli::run(std::env::args_os()));
}
