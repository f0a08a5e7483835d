fn main() {
    std::process::exit(cyclic_lie::cli::run());
}
