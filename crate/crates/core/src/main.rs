fn main() {
    std::process::exit(ddseries::cli::run(std::env::args_os()));
}
