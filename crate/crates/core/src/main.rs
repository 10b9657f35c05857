fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(symsig::cli::run(&args));
}
