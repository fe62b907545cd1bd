fn main() {
    std::process::exit(desir::cli::main());
}
