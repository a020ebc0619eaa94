fn main() {
    std::process::exit(setft::cli::dispatch(std::env::args_os()));
}
