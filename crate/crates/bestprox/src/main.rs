fn main() {
    std::process::exit(bestprox::cli::main_entry());
}
