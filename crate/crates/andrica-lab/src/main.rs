fn main() {
    std::process::exit(andrica_lab::cli::run(std::env::args_os()));
}
