fn main() {
    std::process::exit(cusp_einstein::cli::run(std::env::args_os()));
}
