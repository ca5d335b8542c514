fn main() {
    std::process::exit(bentforge::cli::run());
}
