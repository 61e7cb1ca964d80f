fn main() {
    std::process::exit(polyprime::cli::dispatch(std::env::args_os()));
}
