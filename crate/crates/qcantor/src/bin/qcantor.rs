fn main() {
    std::process::exit(qcantor::cli::run());
}
