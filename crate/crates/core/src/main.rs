fn main() {
    std::process::exit(strange_reps::cli::run(std::env::args_os()));
}
