fn main() {
    std::process::exit(speckle::cli::run(std::env::args_os()));
}
