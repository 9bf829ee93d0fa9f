fn main() {
    std::process::exit(flagsob::cli::run(std::env::args_os()));
}
