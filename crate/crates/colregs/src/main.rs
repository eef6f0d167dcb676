fn main() {
    std::process::exit(colregs::cli::run(std::env::args_os()));
}
