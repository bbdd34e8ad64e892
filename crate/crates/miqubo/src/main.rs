fn main() {
    std::process::exit(miqubo::cli::run());
}
