fn main() {
    std::process::exit(hhl::cli::run());
}
