fn main() {
    std::process::exit(dowker_rips::cli::main_entry());
}
