fn main() {
    std::process::exit(ripple_gauss::cli::dispatch(std::env::args_os()));
}
