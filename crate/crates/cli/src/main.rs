fn main() {
    std::process::exit(collatz_bits_cli::run());
}
