fn main() {
    std::process::exit(real_moduli::cli::run(std::env::args_os()));
}
