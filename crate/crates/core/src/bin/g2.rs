fn main() {
    std::process::exit(g2::cli::run());
}
