fn main() {
    std::process::exit(hopf_critical::cli::run(std::env::args_os()));
}
