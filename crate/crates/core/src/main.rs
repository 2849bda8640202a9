fn main() {
    std::process::exit(cvsep::cli::main());
}
