fn main() {
    std::process::exit(currycomb::cli::run());
}
