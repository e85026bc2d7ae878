fn main() {
    std::process::exit(pronyq::cli::run());
}
