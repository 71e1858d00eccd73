fn main() {
    std::process::exit(supermat::frontend::cli::main());
}
